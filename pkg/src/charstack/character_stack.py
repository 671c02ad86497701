"""Puncture data, the star quiver it determines, and the E-series / mixed series.

Eigenvalues live in an abstract abelian group Z^r / L, where L is the lattice
of multiplicative relations.  An element is an integer exponent vector; it
is the identity iff the vector lies in L.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Sequence

from .exact_algebra import RatFun, var
from .hlrv import hlrv_H
from .lambda_series import FROBENIUS, GradedSeries, plexp
from .partitions import MultiPartition, make_partition

log = logging.getLogger(__name__)

Vector = tuple[int, ...]


def hermite_normal_form(rows: Sequence[Sequence[int]], rank: int) -> list[list[int]]:
    """Row-style HNF: echelon rows with positive pivots and reduced entries above them."""
    m = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    col = 0
    while m and col < rank:
        m = [r for r in m if any(r)]
        live = [r for r in m if r[col] != 0]
        if not live:
            col += 1
            continue
        # Euclid on column col until a single row has a nonzero entry there
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            for r in live[1:]:
                f = r[col] // piv[col]
                for j in range(rank):
                    r[j] -= f * piv[j]
            live = [r for r in live if r[col] != 0]
        piv = live[0]
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        m = [r for r in m if r is not piv]
        out.append(piv)
        col += 1
    for i, row in enumerate(out):
        c = next(j for j, x in enumerate(row) if x)
        for prev in out[:i]:
            f = prev[c] // row[c]
            if f:
                prev[:] = [a - f * b for a, b in zip(prev, row)]
    return out


@dataclass(frozen=True)
class EigenGroup:
    rank: int
    relations: tuple[Vector, ...] = ()

    def __post_init__(self):
        for r in self.relations:
            if len(r) != self.rank:
                raise ValueError(f"relation {r} has wrong length for rank {self.rank}")

    @cached_property
    def hnf(self) -> tuple[Vector, ...]:
        return tuple(tuple(r) for r in hermite_normal_form(self.relations, self.rank))

    def is_identity(self, v: Sequence[int]) -> bool:
        v = list(v)
        for row in self.hnf:
            c = next(j for j, x in enumerate(row) if x)
            if v[c] % row[c]:
                return False
            f = v[c] // row[c]
            v = [a - f * b for a, b in zip(v, row)]
        return not any(v)

    def equal(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return self.is_identity([x - y for x, y in zip(a, b)])


@dataclass(frozen=True)
class PunctureSpec:
    eigenvalues: tuple[tuple[Vector, int], ...]

    @property
    def n(self) -> int:
        return sum(m for _, m in self.eigenvalues)


@dataclass(frozen=True)
class CharStackConfig:
    genus: int
    punctures: tuple[PunctureSpec, ...]
    group: EigenGroup

    def __post_init__(self):
        if not self.punctures:
            raise ValueError("at least one puncture required; use an identity class for closed surfaces")
        ns = {p.n for p in self.punctures}
        if len(ns) != 1:
            raise ValueError("multiplicity-sum mismatch across punctures")
        for i, p in enumerate(self.punctures):
            if any(m < 1 for _, m in p.eigenvalues):
                raise ValueError(f"puncture {i}: multiplicities must be positive")
            vals = [e for e, _ in p.eigenvalues]
            for a in range(len(vals)):
                for b in range(a):
                    if self.group.equal(vals[a], vals[b]):
                        raise ValueError(f"puncture {i}: repeated eigenvalue")

    @property
    def n(self) -> int:
        return self.punctures[0].n

    @classmethod
    def from_json(cls, data: dict) -> "CharStackConfig":
        grp = data.get("eigen_group", {"rank": 0, "relations": []})
        group = EigenGroup(int(grp["rank"]), tuple(tuple(int(x) for x in r) for r in grp.get("relations", [])))
        punctures = tuple(
            PunctureSpec(tuple((tuple(int(x) for x in ev["exp"]), int(ev["mult"])) for ev in p["eigenvalues"]))
            for p in data.get("punctures", [])
        )
        if not punctures:
            n = int(data.get("n", 0))
            if n < 1:
                raise ValueError("no punctures given and no rank 'n' for the identity class")
            punctures = (identity_puncture(n, group.rank),)
        return cls(int(data.get("genus", 0)), punctures, group)

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "eigen_group": {"rank": self.group.rank, "relations": [list(r) for r in self.group.relations]},
            "punctures": [{"eigenvalues": [{"exp": list(e), "mult": m} for e, m in p.eigenvalues]}
                          for p in self.punctures],
        }


def identity_puncture(n: int, rank: int) -> PunctureSpec:
    return PunctureSpec((((0,) * rank, n),))


def twisted_config(n: int, d: int, genus: int) -> CharStackConfig:
    """One central class zeta^d I_n with zeta a primitive n-th root of unity."""
    return CharStackConfig(genus, (PunctureSpec((((d % n,), n),)),), EigenGroup(1, ((n,),)))


def four_punctured_sphere(relation: bool = True) -> CharStackConfig:
    """Four classes diag(l_i, 1/l_i); with relation, l_1 l_2 l_3 l_4 = 1."""
    punct = tuple(PunctureSpec(((tuple(int(j == i) for j in range(4)), 1),
                                (tuple(-int(j == i) for j in range(4)), 1))) for i in range(4))
    rel = ((1, 1, 1, 1),) if relation else ()
    return CharStackConfig(0, punct, EigenGroup(4, rel))


@dataclass(frozen=True)
class StarQuiverData:
    """Central vertex 0 with `genus` loops and legs [i,1..s_i] pointing towards it."""

    config: CharStackConfig
    legs: tuple[int, ...]
    alpha: Vector
    gamma: tuple[Vector, ...]
    vertices: tuple = field(compare=False)

    @property
    def genus(self) -> int:
        return self.config.genus

    @property
    def group(self) -> EigenGroup:
        return self.config.group

    def arrows(self) -> list[tuple[int, int]]:
        """(tail, head) vertex indices."""
        out = []
        idx = 1
        for s in self.legs:
            prev = 0
            for _ in range(s):
                out.append((idx, prev))
                prev = idx
                idx += 1
        return out

    def leg_slices(self) -> list[list[int]]:
        out, idx = [], 1
        for s in self.legs:
            out.append(list(range(idx, idx + s)))
            idx += s
        return out


def build(config: CharStackConfig) -> StarQuiverData:
    rank = config.group.rank
    zero = (0,) * rank
    legs, alpha, gamma, vertices = [], [config.n], [], ["0"]
    g0 = list(zero)
    for p in config.punctures:
        for r in range(rank):
            g0[r] -= p.eigenvalues[0][0][r]
    gamma.append(tuple(g0))
    for i, p in enumerate(config.punctures, start=1):
        evs = p.eigenvalues
        legs.append(len(evs) - 1)
        for j in range(1, len(evs)):
            alpha.append(sum(m for _, m in evs[j:]))
            gamma.append(tuple(a - b for a, b in zip(evs[j - 1][0], evs[j][0])))
            vertices.append(f"[{i},{j}]")
    return StarQuiverData(config, tuple(legs), tuple(alpha), tuple(gamma), tuple(vertices))


def euler_form(data: StarQuiverData, a: Sequence[int], b: Sequence[int]) -> int:
    val = sum(x * y for x, y in zip(a, b))
    val -= sum(a[t] * b[h] for t, h in data.arrows())
    return val - data.genus * a[0] * b[0]


def gamma_power(data: StarQuiverData, delta: Sequence[int]) -> Vector:
    rank = data.group.rank
    return tuple(sum(d * g[r] for d, g in zip(delta, data.gamma)) for r in range(rank))


def is_leg_monotone(data: StarQuiverData, delta: Sequence[int]) -> bool:
    for leg in data.leg_slices():
        prev = delta[0]
        for v in leg:
            if delta[v] > prev:
                return False
            prev = delta[v]
    return True


class InconsistentParameters(ValueError):
    pass


def h_star(data: StarQuiverData, allow_empty: bool = False) -> list[Vector]:
    """Nonzero leg-monotone delta <= alpha with gamma^delta = 1."""
    if not data.group.is_identity(gamma_power(data, data.alpha)):
        if allow_empty:
            return []
        raise InconsistentParameters("inconsistent parameters: determinant product of the classes is not 1")
    out = []
    for delta in product(*(range(a + 1) for a in data.alpha)):
        if any(delta) and is_leg_monotone(data, delta) and data.group.is_identity(gamma_power(data, delta)):
            out.append(tuple(delta))
    return out


@dataclass(frozen=True)
class GenericityReport:
    generic: bool
    nontrivial: tuple[Vector, ...]
    complementary_pairs: tuple[tuple[Vector, Vector], ...]


def is_generic(data: StarQuiverData) -> GenericityReport:
    members = h_star(data)
    others = tuple(d for d in members if d != data.alpha)
    pairs = tuple((a, b) for a in others for b in others
                  if a <= b and all(x + y == z for x, y, z in zip(a, b, data.alpha)))
    return GenericityReport(not others, others, pairs)


def leg_multipartition(data: StarQuiverData, beta: Sequence[int]) -> MultiPartition:
    if not is_leg_monotone(data, beta):
        raise ValueError(f"{tuple(beta)} increases along a leg")
    out = []
    for leg in data.leg_slices():
        chain = [beta[0]] + [beta[v] for v in leg]
        parts = [chain[i] - chain[i + 1] for i in range(len(chain) - 1)] + [chain[-1]]
        out.append(make_partition(parts))
    return tuple(out)


S, T = var("s"), var("t")


def _hlrv_special(data: StarQuiverData, beta: Vector, z: RatFun, w: RatFun) -> RatFun:
    return hlrv_H(leg_multipartition(data, beta), data.genus).substitute({"z": z, "w": w})


def _coefficient(data: StarQuiverData, terms: dict) -> RatFun:
    f = GradedSeries(data.alpha, terms, RatFun(1), FROBENIUS)
    return plexp(f).coefficient(data.alpha)


def eseries_in_s(data: StarQuiverData, allow_empty: bool = False) -> RatFun:
    """E-series with sqrt(q) kept as s, before the parity check."""
    members = h_star(data, allow_empty)
    if not members:
        log.warning("gamma^alpha != 1: the variety is empty, returning 0")
        return RatFun(0)
    q = S ** 2
    terms = {beta: q * _hlrv_special(data, beta, S, 1 / S) / (q - 1) for beta in members}
    return q ** (-euler_form(data, data.alpha, data.alpha)) * _coefficient(data, terms)


def eseries(data: StarQuiverData, allow_empty: bool = False) -> RatFun:
    e = eseries_in_s(data, allow_empty)
    if not e.is_even_in("s"):
        raise AssertionError(f"E-series has odd powers of sqrt(q): {e}")
    return e.fold_square("s", "q")


def mixed_unsigned(data: StarQuiverData, allow_empty: bool = False) -> RatFun:
    """The Plexp side in q,t, before t -> -t."""
    members = h_star(data, allow_empty)
    if not members:
        return RatFun(0)
    qt2 = S ** 2 * T ** 2
    terms = {beta: qt2 * _hlrv_special(data, beta, T * S, 1 / S) / (qt2 - 1) for beta in members}
    out = qt2 ** (-euler_form(data, data.alpha, data.alpha)) * _coefficient(data, terms)
    return out.fold_square("s", "q")


def mixed_poincare(data: StarQuiverData, allow_empty: bool = False) -> RatFun:
    """Mixed series in (q, t), sign convention: t = -1 gives the E-series."""
    return mixed_unsigned(data, allow_empty).substitute({"t": -T})


def summary(data: StarQuiverData, allow_empty: bool = False) -> dict:
    members = h_star(data, allow_empty)
    return {
        "alpha": list(data.alpha),
        "gamma_exponents": [list(g) for g in data.gamma],
        "h_star": [list(m) for m in members],
        "generic": members == [data.alpha],
        "E": eseries(data, allow_empty),
        "H_c": mixed_poincare(data, allow_empty),
    }
