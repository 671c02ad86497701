"""Symmetric functions in one or more alphabets with rational-function coefficients.

Every basis change goes through the power-sum basis using exact transition
tables over Q.  Modified Macdonald polynomials are built from Gram-Schmidt
on monomials under the (q,t) scalar product.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import prod
from typing import Callable, Iterable, Mapping, Sequence

from .exact_algebra import RatFun, var
from .partitions import (
    Partition,
    cell_stats,
    conjugate,
    make_partition,
    n_stat,
    partitions,
    z_stat,
)

BASES = ("p", "m", "h", "e", "s")

Table = dict[Partition, dict[Partition, Fraction]]


# characters and transition tables


def _remove_rim_hooks(lam: Partition, k: int) -> Iterable[tuple[Partition, int]]:
    """Partitions obtained by removing a rim hook of length k, with leg length."""
    # beta-numbers: removing a k-rim hook = moving a bead from b to b-k
    n = len(lam)
    beta = [lam[i] + n - 1 - i for i in range(n)]
    occupied = set(beta)
    for b in beta:
        if b - k >= 0 and b - k not in occupied:
            leg = sum(1 for c in beta if b - k < c < b)
            new = sorted((c if c != b else b - k for c in beta), reverse=True)
            yield make_partition([new[i] - (n - 1 - i) for i in range(n)]), leg


@lru_cache(maxsize=None)
def character(lam: Partition, rho: Partition) -> int:
    """Irreducible S_n character chi^lam at cycle type rho (Murnaghan-Nakayama)."""
    if not rho:
        return 1 if not lam else 0
    k, rest = rho[0], rho[1:]
    return sum((-1) ** leg * character(mu, rest) for mu, leg in _remove_rim_hooks(lam, k))


def _power_sum_monomial_coeff(rho: Partition, lam: Partition) -> int:
    """Coefficient of x^lam in p_rho: ways to distribute parts of rho into rows of lam."""
    counts: Counter = Counter({tuple(0 for _ in lam): 1})
    for r in rho:
        nxt: Counter = Counter()
        for state, c in counts.items():
            for j in range(len(lam)):
                if state[j] + r <= lam[j]:
                    s = list(state)
                    s[j] += r
                    nxt[tuple(s)] += c
        counts = nxt
    return counts.get(tuple(lam), 0)


def _invert(table: Table, n: int) -> Table:
    """Exact inverse of a square transition table on partitions of n."""
    keys = list(partitions(n))
    size = len(keys)
    a = [[Fraction(table[r].get(c, 0)) for c in keys] + [Fraction(int(i == j)) for j in range(size)]
         for i, r in enumerate(keys)]
    for col in range(size):
        piv = next(r for r in range(col, size) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(size):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return {r: {c: a[i][size + j] for j, c in enumerate(keys) if a[i][size + j] != 0}
            for i, r in enumerate(keys)}


@lru_cache(maxsize=None)
def to_power_sums(basis: str, n: int) -> Table:
    """table[lam][rho] = coefficient of p_rho in basis_lam."""
    keys = partitions(n)
    if basis == "p":
        return {lam: {lam: Fraction(1)} for lam in keys}
    if basis == "s":
        return {lam: {rho: Fraction(character(lam, rho), z_stat(rho)) for rho in keys if character(lam, rho)}
                for lam in keys}
    if basis in ("h", "e"):
        single = {}
        for k in range(1, n + 1):
            sign = (lambda rho: 1) if basis == "h" else (lambda rho, k=k: (-1) ** (k - len(rho)))
            single[k] = {rho: Fraction(sign(rho), z_stat(rho)) for rho in partitions(k)}
        out = {}
        for lam in keys:
            acc = {(): Fraction(1)}
            for part in lam:
                nxt: dict = defaultdict(Fraction)
                for a, x in acc.items():
                    for b, y in single[part].items():
                        nxt[make_partition(a + b)] += x * y
                acc = nxt
            out[lam] = {k: v for k, v in acc.items() if v}
        return out
    if basis == "m":
        # p_rho = sum_lam R[rho][lam] m_lam, so m = R^{-1} applied to p
        forward = {rho: {lam: Fraction(_power_sum_monomial_coeff(rho, lam)) for lam in keys} for rho in keys}
        forward = {r: {c: v for c, v in row.items() if v} for r, row in forward.items()}
        return _invert(forward, n)
    raise ValueError(f"unsupported basis tag {basis!r}")


@lru_cache(maxsize=None)
def from_power_sums(basis: str, n: int) -> Table:
    """table[rho][lam] = coefficient of basis_lam in p_rho."""
    if basis == "p":
        return to_power_sums("p", n)
    return _invert(to_power_sums(basis, n), n)


# SymFunc


@dataclass(frozen=True)
class SymFunc:
    """Element of Sym(x_1) x ... x Sym(x_k) with RatFun coefficients.

    `terms` maps a tuple of partitions (one per alphabet) to its coefficient,
    read in the per-alphabet basis given by `basis`.
    """

    basis: tuple[str, ...]
    terms: Mapping[tuple[Partition, ...], RatFun] = field(default_factory=dict)

    def __post_init__(self):
        for b in self.basis:
            if b not in BASES:
                raise ValueError(f"unsupported basis tag {b!r}")
        clean = {k: v for k, v in self.terms.items() if not v.is_zero()}
        object.__setattr__(self, "terms", clean)

    @property
    def alphabets(self) -> int:
        return len(self.basis)

    @classmethod
    def single(cls, basis: str, lam: Sequence[int], coef=1) -> "SymFunc":
        return cls((basis,), {(make_partition(lam),): RatFun._coerce(coef)})

    @classmethod
    def one(cls, k: int, basis: str = "p") -> "SymFunc":
        return cls((basis,) * k, {((),) * k: RatFun(1)})

    @classmethod
    def zero(cls, k: int, basis: str = "p") -> "SymFunc":
        return cls((basis,) * k, {})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> tuple[int, ...] | None:
        degs = {tuple(sum(l) for l in key) for key in self.terms}
        return degs.pop() if len(degs) == 1 else None

    # basis change

    def convert(self, target: str | Sequence[str]) -> "SymFunc":
        if isinstance(target, str):
            target = (target,) * self.alphabets
        target = tuple(target)
        if len(target) != self.alphabets:
            raise ValueError("alphabet mismatch")
        cur = self
        for i, (src, dst) in enumerate(zip(self.basis, target)):
            if src != dst:
                cur = cur._convert_one(i, dst)
        return cur

    def _convert_one(self, i: int, dst: str) -> "SymFunc":
        src = self.basis[i]
        out: dict = defaultdict(lambda: RatFun(0))
        for key, c in self.terms.items():
            lam = key[i]
            n = sum(lam)
            via_p = to_power_sums(src, n)[lam]
            back = from_power_sums(dst, n)
            acc: dict = defaultdict(Fraction)
            for rho, a in via_p.items():
                for mu, b in back[rho].items():
                    acc[mu] += a * b
            for mu, v in acc.items():
                if v:
                    nk = key[:i] + (mu,) + key[i + 1:]
                    out[nk] = out[nk] + c * v
        basis = self.basis[:i] + (dst,) + self.basis[i + 1:]
        return SymFunc(basis, dict(out))

    # arithmetic

    def _aligned(self, other: "SymFunc") -> "SymFunc":
        if other.alphabets != self.alphabets:
            raise ValueError("alphabet mismatch")
        return other if other.basis == self.basis else other.convert(self.basis)

    def __add__(self, other: "SymFunc") -> "SymFunc":
        other = self._aligned(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return SymFunc(self.basis, out)

    def __neg__(self) -> "SymFunc":
        return SymFunc(self.basis, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        c = RatFun._coerce(c)
        return SymFunc(self.basis, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other) -> "SymFunc":
        if not isinstance(other, SymFunc):
            return self.scale(other)
        if other.alphabets != self.alphabets:
            raise ValueError("alphabet mismatch")
        a = self.convert("p")
        b = other.convert("p")
        out: dict = {}
        for ka, va in a.terms.items():
            for kb, vb in b.terms.items():
                key = tuple(make_partition(x + y) for x, y in zip(ka, kb))
                v = va * vb
                out[key] = out[key] + v if key in out else v
        res = SymFunc(a.basis, out)
        return res if self.basis == res.basis else res.convert(self.basis)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymFunc):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.convert("p").terms.items()))

    def map_coefficients(self, f: Callable[[RatFun], RatFun]) -> "SymFunc":
        return SymFunc(self.basis, {k: f(v) for k, v in self.terms.items()})

    def substitute(self, assignments: Mapping[str, RatFun]) -> "SymFunc":
        return self.map_coefficients(lambda c: c.substitute(assignments))

    def adams(self, d: int, coefficients: bool = False) -> "SymFunc":
        """p_k -> p_{kd} in every alphabet; optionally coefficient variables -> d-th powers."""
        p = self.convert("p")
        out = {}
        for key, c in p.terms.items():
            nk = tuple(tuple(d * r for r in lam) for lam in key)
            out[nk] = c.adams(d) if coefficients else c
        res = SymFunc(p.basis, out)
        return res if res.basis == self.basis else res.convert(self.basis)

    def coefficient(self, key: Sequence[Sequence[int]]) -> RatFun:
        return self.terms.get(tuple(make_partition(l) for l in key), RatFun(0))

    def to_json(self) -> dict:
        return {
            "alphabets": self.alphabets,
            "basis": list(self.basis),
            "terms": [[[list(l) for l in k], v.to_json()] for k, v in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SymFunc":
        terms = {tuple(make_partition(l) for l in k): RatFun.from_json(v) for k, v in data["terms"]}
        return cls(tuple(data["basis"]), terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items()):
            mono = "*".join(f"{b}{list(l)}" for b, l in zip(self.basis, key))
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def hall_pairing(f: SymFunc, g: SymFunc) -> RatFun:
    """Hall scalar product: <p_lam, p_mu> = delta * z_lam in each alphabet."""
    if f.alphabets != g.alphabets:
        raise ValueError("alphabet mismatch")
    a, b = f.convert("p"), g.convert("p")
    total = RatFun(0)
    for key, c in a.terms.items():
        if key in b.terms:
            total = total + c * b.terms[key] * prod(z_stat(l) for l in key)
    return total


def diag_pleth_transform(f: SymFunc, c: Callable[[int], RatFun]) -> SymFunc:
    """Algebra map p_k -> c(k) p_k applied in every alphabet."""
    p = f.convert("p")
    cache: dict[int, RatFun] = {}

    def factor(k: int) -> RatFun:
        if k not in cache:
            cache[k] = RatFun._coerce(c(k))
        return cache[k]

    out = {}
    for key, v in p.terms.items():
        w = v
        for lam in key:
            for r in lam:
                w = w * factor(r)
        out[key] = w
    res = SymFunc(p.basis, out)
    return res if res.basis == f.basis else res.convert(f.basis)


# Schur products through Pieri rules


def _horizontal_strips(lam: Partition, k: int) -> Iterable[Partition]:
    """Partitions nu containing lam with nu/lam a horizontal strip of size k."""
    rows = list(lam) + [0]

    def rec(i: int, left: int, acc: list[int]):
        if i == len(rows):
            if left == 0:
                yield make_partition(acc)
            return
        # interlacing: row i may grow up to the old length of row i-1
        upper = left if i == 0 else min(left, rows[i - 1] - rows[i])
        for add in range(upper, -1, -1):
            yield from rec(i + 1, left - add, acc + [rows[i] + add])

    yield from rec(0, k, [])


def pieri_h(lam: Partition, k: int) -> list[Partition]:
    """h_k * s_lam as a list of Schur indices (all multiplicity one)."""
    if k == 0:
        return [lam]
    return list(_horizontal_strips(lam, k))


@lru_cache(maxsize=None)
def schur_product(lam: Partition, mu: Partition) -> dict[Partition, int]:
    """s_lam * s_mu in the Schur basis, via Jacobi-Trudi for s_mu and Pieri."""
    l = len(mu)
    total: Counter = Counter()
    for perm in permutations(range(l)):
        degrees = [mu[i] - i + perm[i] for i in range(l)]
        if any(d < 0 for d in degrees):
            continue
        sign = _perm_sign(perm)
        current: Counter = Counter({lam: 1})
        for d in degrees:
            nxt: Counter = Counter()
            for nu, c in current.items():
                for rho in pieri_h(nu, d):
                    nxt[rho] += c
            current = nxt
        for nu, c in current.items():
            total[nu] += sign * c
    return {nu: c for nu, c in total.items() if c}


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


# Macdonald polynomials


def _qt_weight(rho: Partition, q: RatFun, t: RatFun) -> RatFun:
    w = RatFun(z_stat(rho))
    for r in rho:
        w = w * (1 - q ** r) / (1 - t ** r)
    return w


def dominance_extension(n: int, order: str = "lex") -> list[Partition]:
    """Linear extension of dominance, smallest first."""
    keys = list(partitions(n))
    if order == "lex":
        return keys[::-1]
    if order == "nstat":
        return sorted(keys, key=lambda lam: (-n_stat(lam), conjugate(lam)))
    raise ValueError(order)


@lru_cache(maxsize=None)
def qt_gram_schmidt(n: int, order: str = "lex") -> dict[Partition, SymFunc]:
    """Macdonald P_mu(x;q,t) for mu |- n in the monomial basis."""
    q, t = var("q"), var("t")
    weights = {rho: _qt_weight(rho, q, t) for rho in partitions(n)}
    to_p = to_power_sums("m", n)

    def pair(a: dict, b: dict) -> RatFun:
        total = RatFun(0)
        for rho, x in a.items():
            if rho in b:
                total = total + x * b[rho] * weights[rho]
        return total

    done: list[tuple[Partition, dict, RatFun]] = []
    out = {}
    for mu in dominance_extension(n, order):
        vec = {rho: RatFun(c) for rho, c in to_p[mu].items()}
        for nu, pvec, norm in done:
            coef = pair(vec, pvec) / norm
            if coef:
                for rho, x in pvec.items():
                    vec[rho] = vec.get(rho, RatFun(0)) - coef * x
        vec = {rho: x for rho, x in vec.items() if x}
        done.append((mu, vec, pair(vec, vec)))
        out[mu] = SymFunc(("p",), {(rho,): x for rho, x in vec.items()}).convert("m")
    return out


@lru_cache(maxsize=None)
def modified_macdonald_qt(mu: Partition) -> SymFunc:
    """H~_mu(x;q,t) in the Schur basis, coefficients in Q(q,t)."""
    n = sum(mu)
    if n == 0:
        return SymFunc.one(1, "s")
    q, t = var("q"), var("t")
    c_mu = RatFun(1)
    for cell in cell_stats(mu):
        c_mu = c_mu * (1 - q ** cell.arm * t ** (cell.leg + 1))
    j_mu = qt_gram_schmidt(n)[mu].scale(c_mu)
    # J[X/(1-t)], then t -> 1/t, then times t^n(mu)
    transformed = diag_pleth_transform(j_mu, lambda k: 1 / (1 - t ** k))
    inv_t = {"t": 1 / t}
    shift = t ** n_stat(mu)
    return transformed.map_coefficients(lambda c: c.substitute(inv_t) * shift).convert("s")


_MACDONALD_CACHE: dict = {}


def modified_macdonald(mu: Sequence[int], q_arg: RatFun | None = None, t_arg: RatFun | None = None) -> SymFunc:
    """H~_mu with the given arguments substituted for its two parameters."""
    mu = make_partition(mu)
    key = (mu, q_arg, t_arg)
    if key not in _MACDONALD_CACHE:
        base = modified_macdonald_qt(mu)
        sub = {}
        if q_arg is not None:
            sub["q"] = q_arg
        if t_arg is not None:
            sub["t"] = t_arg
        _MACDONALD_CACHE[key] = base.substitute(sub) if sub else base
    return _MACDONALD_CACHE[key]


def tensor(factors: Sequence[SymFunc]) -> SymFunc:
    """Outer product of single-alphabet functions into a multi-alphabet one."""
    basis = tuple(f.basis[0] for f in factors)
    out: dict = {}
    for combo in product(*(f.terms.items() for f in factors)):
        key = tuple(k[0] for k, _ in combo)
        c = RatFun(1)
        for _, v in combo:
            c = c * v
        out[key] = c
    return SymFunc(basis, out)
