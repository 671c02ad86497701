"""Multitypes, block mergings with Moebius weights, and level-restricted sums.

A multitype is a multiset of blocks (d, multipartition); its semisimple
shadow keeps only (d, size vector).  A merging groups the blocks of a
semisimple multitype and assigns each group a common divisor of its degrees;
summing fiber * P(coarse) * moebius over mergings whose coarse blocks all lie
in a set V gives the level-V contribution of that multitype.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from math import factorial, gcd, prod
from typing import Callable, Collection, Iterator, Sequence

from .exact_algebra import RatFun, var
from .lambda_series import FROBENIUS, GradedSeries, divisors, moebius, plexp
from .partitions import (
    MultiPartition,
    hook_polynomial,
    lr_coefficient,
    mp_is_zero,
    mp_n,
    mp_size,
    multipartitions,
    n_stat,
    partitions,
)

Vector = tuple[int, ...]
Block = tuple[int, MultiPartition]
SSBlock = tuple[int, Vector]


def _weight(blocks: Sequence) -> int:
    return prod(b[0] ** m * factorial(m) for b, m in Counter(blocks).items())


@dataclass(frozen=True)
class SemisimpleMultiType:
    blocks: tuple[SSBlock, ...]

    def __post_init__(self):
        for d, beta in self.blocks:
            if d < 1 or not any(beta):
                raise ValueError(f"bad semisimple block {(d, beta)}")
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks)))

    @property
    def size(self) -> Vector:
        dim = len(self.blocks[0][1])
        return tuple(sum(d * beta[i] for d, beta in self.blocks) for i in range(dim))

    def weight(self) -> int:
        return _weight(self.blocks)

    def adams(self, d: int) -> "SemisimpleMultiType":
        return SemisimpleMultiType(tuple((d * e, beta) for e, beta in self.blocks))

    def __mul__(self, other: "SemisimpleMultiType") -> "SemisimpleMultiType":
        return SemisimpleMultiType(self.blocks + other.blocks)

    def is_of_level(self, level: Callable[[Vector], bool]) -> bool:
        return all(level(beta) for _, beta in self.blocks)


def unit_type(beta: Sequence[int]) -> SemisimpleMultiType:
    """The one-block semisimple type (1, beta)."""
    return SemisimpleMultiType(((1, tuple(beta)),))


@dataclass(frozen=True)
class MultiType:
    blocks: tuple[Block, ...]

    def __post_init__(self):
        for d, mp in self.blocks:
            if d < 1 or mp_is_zero(mp):
                raise ValueError(f"bad block {(d, mp)}")
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks)))

    @property
    def size(self) -> Vector:
        dim = len(self.blocks[0][1])
        return tuple(sum(d * mp_size(mp)[i] for d, mp in self.blocks) for i in range(dim))

    def weight(self) -> int:
        return _weight(self.blocks)

    def semisimple(self) -> SemisimpleMultiType:
        return SemisimpleMultiType(tuple((d, mp_size(mp)) for d, mp in self.blocks))

    def adams(self, d: int) -> "MultiType":
        return MultiType(tuple((d * e, mp) for e, mp in self.blocks))

    def __mul__(self, other: "MultiType") -> "MultiType":
        return MultiType(self.blocks + other.blocks)


def weight(omega: MultiType | SemisimpleMultiType) -> int:
    return omega.weight()


def P_poly(nu: SemisimpleMultiType, t: RatFun | None = None) -> RatFun:
    """prod over blocks of (t^d - 1)."""
    t = var("t") if t is None else t
    return prod((t ** d - 1 for d, _ in nu.blocks), start=RatFun(1))


def C_o(nu: SemisimpleMultiType) -> int:
    """mu(d) d^{r-1} (-1)^{r-1} (r-1)! when all r blocks have degree d, else 0."""
    degrees = {d for d, _ in nu.blocks}
    if len(degrees) != 1:
        return 0
    d = degrees.pop()
    r = len(nu.blocks)
    return moebius(d) * d ** (r - 1) * (-1) ** (r - 1) * factorial(r - 1)


# enumeration


def _leq(a: Vector, b: Vector) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _atoms(alpha: Vector) -> list[Block]:
    out = []
    top = max(alpha)
    for d in range(1, top + 1):
        bound = tuple(a // d for a in alpha)
        for beta in product(*(range(b + 1) for b in bound)):
            if any(beta):
                for mp in multipartitions(beta):
                    out.append((d, mp))
    return sorted(out)


@lru_cache(maxsize=None)
def enumerate_multitypes(alpha: Vector) -> tuple[MultiType, ...]:
    """All multitypes of size alpha, sorted."""
    alpha = tuple(alpha)
    if not any(alpha):
        raise ValueError("alpha must be nonzero")
    atoms = _atoms(alpha)
    sizes = [tuple(d * x for x in mp_size(mp)) for d, mp in atoms]
    out: list[MultiType] = []

    def rec(start: int, left: Vector, chosen: list[Block]):
        if not any(left):
            out.append(MultiType(tuple(chosen)))
            return
        for i in range(start, len(atoms)):
            if _leq(sizes[i], left):
                rec(i, tuple(a - b for a, b in zip(left, sizes[i])), chosen + [atoms[i]])

    rec(0, alpha, [])
    return tuple(sorted(out, key=lambda w: w.blocks))


@lru_cache(maxsize=None)
def enumerate_semisimple(alpha: Vector) -> tuple[SemisimpleMultiType, ...]:
    """All semisimple multitypes of size alpha."""
    return tuple(sorted({w.semisimple() for w in enumerate_multitypes(alpha)}, key=lambda v: v.blocks))


# mergings


@dataclass(frozen=True)
class Merging:
    groups: tuple[tuple[int, ...], ...]
    divisors: tuple[int, ...]
    coarse: SemisimpleMultiType
    fiber: int
    moebius: int


def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in set_partitions(rest):
        yield [[first]] + smaller
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1:]


@lru_cache(maxsize=None)
def enumerate_mergings(nu: SemisimpleMultiType) -> tuple[Merging, ...]:
    """Every grouping of the blocks of nu with a common divisor per group."""
    blocks = nu.blocks
    out = []
    for groups in set_partitions(list(range(len(blocks)))):
        groups = sorted(tuple(g) for g in groups)
        options = [divisors(reduce(gcd, (blocks[h][0] for h in g))) for g in groups]
        for ds in product(*options):
            coarse, fiber, mob = [], 1, 1
            for g, dj in zip(groups, ds):
                beta = tuple(sum(blocks[h][0] // dj * blocks[h][1][i] for h in g)
                             for i in range(len(blocks[0][1])))
                coarse.append((dj, beta))
                fiber *= dj ** (len(g) - 1)
                mob *= C_o(SemisimpleMultiType(tuple((blocks[h][0] // dj, blocks[h][1]) for h in g)))
            out.append(Merging(tuple(groups), tuple(ds), SemisimpleMultiType(tuple(coarse)), fiber, mob))
    return tuple(out)


def _as_level(V) -> Callable[[Vector], bool]:
    if V is None:
        return lambda beta: True
    if callable(V):
        return V
    members = {tuple(v) for v in V}
    return lambda beta: beta in members


def merging_sum(nu: SemisimpleMultiType, V=None, t: RatFun | None = None) -> RatFun:
    """sum over mergings with coarse type of level V of fiber * P(coarse) * moebius."""
    level = _as_level(V)
    t = var("t") if t is None else t
    total = RatFun(0)
    for m in enumerate_mergings(nu):
        if m.moebius and m.coarse.is_of_level(level):
            total = total + P_poly(m.coarse, t) * (m.fiber * m.moebius)
    return total


# characters data and families


def H_dual(omega: MultiType, t: RatFun | None = None) -> RatFun:
    """(-1)^f t^{-(sum a_i(a_i-1)/2 - n(omega))} / prod_j H_{lam_j}(t^{d_j})."""
    t = var("t") if t is None else t
    alpha = omega.size
    f = sum(sum(mp_size(mp)) for _, mp in omega.blocks)
    n_omega = sum(d * mp_n(mp) for d, mp in omega.blocks)
    exponent = sum(a * (a - 1) // 2 for a in alpha) - n_omega
    hooks = RatFun(1)
    for d, mp in omega.blocks:
        for lam in mp:
            hooks = hooks * hook_polynomial(lam, t ** d)
    return RatFun((-1) ** f) / (t ** exponent * hooks)


@dataclass(frozen=True)
class DualLogFamily:
    name: str
    evaluate: Callable[[MultiType], RatFun]

    def __call__(self, omega: MultiType) -> RatFun:
        return self.evaluate(omega)


def family_unit() -> DualLogFamily:
    return DualLogFamily("unit", lambda omega: RatFun(1))


def family_genus(g: int) -> DualLogFamily:
    """H_dual^{2-2g} t^{-(g-1) sum alpha_i^2}."""
    t = var("t")

    def evaluate(omega: MultiType) -> RatFun:
        sq = sum(a * a for a in omega.size)
        return H_dual(omega, t) ** (2 - 2 * g) * t ** (-(g - 1) * sq)

    return DualLogFamily(f"genus-{g}", evaluate)


@lru_cache(maxsize=None)
def kronecker_C(lam: tuple, mu: tuple, t: RatFun | None = None) -> RatFun:
    """The two-partition function attached to one Kronecker block."""
    t = var("t") if t is None else t
    a, b = sum(lam), sum(mu)
    if a < b:
        return RatFun(0)
    total = RatFun(0)
    for nu in partitions(a - b):
        c = lr_coefficient(lam, mu, nu)
        if c:
            m = sum(nu)
            total = total + RatFun(c * (-1) ** m) / (t ** (m * (m - 1) // 2 - n_stat(nu)) * hook_polynomial(nu, t))
    return total * t ** (-(a * b - a * a - b * b))


def family_kronecker() -> DualLogFamily:
    """Vertex 0 receives the arrow from vertex 1."""
    t = var("t")

    def evaluate(omega: MultiType) -> RatFun:
        if len(omega.size) != 2:
            raise ValueError("kronecker family needs exactly two vertices")
        out = RatFun(1)
        for d, mp in omega.blocks:
            td = t ** d
            out = out * kronecker_C(mp[0], mp[1], td) * H_dual(MultiType(((1, mp),)), td)
            if out.is_zero():
                break
        return out

    return DualLogFamily("kronecker", evaluate)


# the two sides of the Plexp identity


def F_level(family: DualLogFamily, alpha: Sequence[int], V, t: RatFun | None = None) -> RatFun:
    """sum over multitypes of size alpha of family/weight times the level-V merging sum."""
    t = var("t") if t is None else t
    level = _as_level(V)
    total = RatFun(0)
    cache: dict[SemisimpleMultiType, RatFun] = {}
    for omega in enumerate_multitypes(tuple(alpha)):
        nu = omega.semisimple()
        if nu not in cache:
            cache[nu] = merging_sum(nu, level, t)
        if cache[nu].is_zero():
            continue
        c = family(omega)
        if c:
            total = total + c * cache[nu] / omega.weight()
    return total


def F_gen(family: DualLogFamily, alpha: Sequence[int], t: RatFun | None = None) -> RatFun:
    """Closed form of the level-{alpha} sum: (t-1) sum family * C_o(ss) / weight."""
    t = var("t") if t is None else t
    total = RatFun(0)
    for omega in enumerate_multitypes(tuple(alpha)):
        co = C_o(omega.semisimple())
        if co:
            total = total + family(omega) * Fraction(co, omega.weight())
    return total * (t - 1)


def box_vectors(box: Sequence[int]) -> list[Vector]:
    return [v for v in product(*(range(b + 1) for b in box)) if any(v)]


def plexp_side(family: DualLogFamily, box: Sequence[int], V: Collection[Sequence[int]]) -> GradedSeries:
    box = tuple(box)
    terms = {tuple(beta): F_gen(family, beta) for beta in V if _leq(tuple(beta), box) and any(beta)}
    return plexp(GradedSeries(box, terms, RatFun(1), FROBENIUS))


def verify_plexp_identity(family: DualLogFamily, box: Sequence[int], V: Collection[Sequence[int]]) -> list[dict]:
    """Compare the Plexp coefficient with the direct level-V sum for all 0 < alpha <= box."""
    V = [tuple(v) for v in V]
    series = plexp_side(family, box, V)
    report = []
    for alpha in box_vectors(box):
        lhs = series.coefficient(alpha)
        rhs = F_level(family, alpha, V)
        report.append({"alpha": list(alpha), "plexp": lhs, "direct": rhs, "pass": lhs == rhs})
    return report


def char_sum_vs_plexp(family: DualLogFamily, alpha: Sequence[int], eta_level: Collection[Sequence[int]]) -> dict:
    alpha = tuple(alpha)
    V = [tuple(v) for v in eta_level]
    lhs = plexp_side(family, alpha, V).coefficient(alpha)
    rhs = F_level(family, alpha, V)
    return {"alpha": list(alpha), "plexp": lhs, "direct": rhs, "pass": lhs == rhs}


def regular_count(nu: SemisimpleMultiType, q: int) -> Fraction:
    """Unrestricted merging sum evaluated at t = q."""
    return merging_sum(nu).evaluate(t=q)
