"""Truncated multigraded power series with Adams operations.

A GradedSeries holds coefficients of y^alpha for alpha in a box of N^I.  The
coefficient ring is anything supporting +, *, scaling by Fraction and
is_zero(); its Adams operations are supplied as an AdamsAction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd
from typing import Any, Callable, Iterable, Mapping

from .exact_algebra import RatFun
from .partitions import partitions, z_stat

Key = tuple[int, ...]


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def moebius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


@dataclass(frozen=True)
class AdamsAction:
    """psi_d on coefficients; must be a ring map with psi_a psi_b = psi_ab."""

    name: str
    apply: Callable[[Any, int], Any]

    def __call__(self, c, d: int):
        return c if d == 1 else self.apply(c, d)


TRIVIAL = AdamsAction("trivial", lambda c, d: c)
FROBENIUS = AdamsAction("frobenius", lambda c, d: c.adams(d))
SYM_X_ONLY = AdamsAction("sym-x-only", lambda c, d: c.adams(d, coefficients=False))
SYM_FULL = AdamsAction("sym-full", lambda c, d: c.adams(d, coefficients=True))


class TruncationError(ValueError):
    pass


@dataclass(frozen=True)
class GradedSeries:
    box: Key
    terms: Mapping[Key, Any]
    one: Any = field(default_factory=lambda: RatFun(1))
    action: AdamsAction = FROBENIUS
    truncated: bool = False

    def __post_init__(self):
        clean = {}
        for k, v in self.terms.items():
            if len(k) != len(self.box):
                raise ValueError(f"key {k} does not match box {self.box}")
            if all(a <= b for a, b in zip(k, self.box)) and not _is_zero(v):
                clean[tuple(k)] = v
        object.__setattr__(self, "terms", clean)

    @property
    def zero_key(self) -> Key:
        return (0,) * len(self.box)

    def _like(self, terms: Mapping[Key, Any], truncated: bool = False) -> "GradedSeries":
        return GradedSeries(self.box, terms, self.one, self.action, truncated or self.truncated)

    def constant_term(self):
        return self.terms.get(self.zero_key, self.one * 0)

    def coefficient(self, alpha: Iterable[int]):
        alpha = tuple(alpha)
        if len(alpha) != len(self.box) or any(a > b or a < 0 for a, b in zip(alpha, self.box)):
            raise TruncationError("beyond truncation")
        return self.terms.get(alpha, self.one * 0)

    # ring structure

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return self._like(out, other.truncated)

    def __neg__(self):
        return self._like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GradedSeries":
        return self._like({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GradedSeries):
            return self.scale(other)
        out: dict = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                if any(x > b for x, b in zip(k, self.box)):
                    continue
                v = va * vb
                out[k] = out[k] + v if k in out else v
        return self._like(out, other.truncated)

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return self.box == other.box and _is_zero_series(self - other)

    __hash__ = None

    def adams(self, d: int) -> "GradedSeries":
        if d < 1:
            raise ValueError("Adams operation needs d >= 1")
        out, dropped = {}, False
        for k, v in self.terms.items():
            nk = tuple(d * a for a in k)
            if any(x > b for x, b in zip(nk, self.box)):
                dropped = True
                continue
            out[nk] = self.action(v, d)
        return self._like(out, dropped)

    def _nilpotency(self) -> int:
        return sum(self.box) + 1

    def exp(self) -> "GradedSeries":
        """exp of a series in the augmentation ideal."""
        _require_augmented(self)
        result = self._like({self.zero_key: self.one})
        power = result
        for n in range(1, self._nilpotency()):
            power = (power * self).scale(Fraction(1, n))
            if not power.terms:
                break
            result = result + power
        return result

    def log(self) -> "GradedSeries":
        """log of a series with constant term one."""
        _require_unit(self)
        g = self - self._like({self.zero_key: self.one})
        result = self._like({})
        power = self._like({self.zero_key: self.one})
        for n in range(1, self._nilpotency()):
            power = power * g
            if not power.terms:
                break
            result = result + power.scale(Fraction((-1) ** (n + 1), n))
        return result


def _is_zero(v) -> bool:
    if isinstance(v, (int, Fraction)):
        return v == 0
    return v.is_zero()


def _is_zero_series(f: GradedSeries) -> bool:
    return not f.terms


def _require_augmented(f: GradedSeries) -> None:
    if not _is_zero(f.constant_term()):
        raise ValueError("not in augmentation ideal")


def _require_unit(f: GradedSeries) -> None:
    c = f.constant_term()
    if _is_zero(c) or not _is_zero(c - f.one):
        raise ValueError("log requires unit constant term")


def adams(f: GradedSeries, d: int) -> GradedSeries:
    return f.adams(d)


def plexp(f: GradedSeries) -> GradedSeries:
    """exp(sum_n psi_n(f)/n), truncated to the box."""
    _require_augmented(f)
    acc = f._like({})
    for n in range(1, max(f.box, default=0) + 1):
        acc = acc + f.adams(n).scale(Fraction(1, n))
    return acc.exp()


def plelog(f: GradedSeries) -> GradedSeries:
    """Inverse of plexp on series with constant term one."""
    _require_unit(f)
    log_f = f.log()
    # U_alpha = gcd(alpha) * (log f)_alpha
    u = {k: v * _content(k) for k, v in log_f.terms.items()}
    out = {}
    for alpha in _box_keys(f.box):
        c = _content(alpha)
        if c == 0:
            continue
        total = None
        for d in divisors(c):
            mu = moebius(d)
            if mu == 0:
                continue
            sub = tuple(a // d for a in alpha)
            if sub not in u:
                continue
            term = f.action(u[sub], d) * Fraction(mu, c)
            total = term if total is None else total + term
        if total is not None and not _is_zero(total):
            out[alpha] = total
    return f._like(out)


def plexp_sigma(f: GradedSeries) -> GradedSeries:
    """Plexp through sum_n sigma_n(f) with sigma_n = sum_{lam |- n} psi_lam / z_lam."""
    _require_augmented(f)
    one = f._like({f.zero_key: f.one})
    result = one
    top = sum(f.box)
    adams_cache = {d: f.adams(d) for d in range(1, max(f.box, default=0) + 1)}
    for n in range(1, top + 1):
        for lam in partitions(n):
            if lam[0] not in adams_cache:
                continue
            term = one
            for part in lam:
                term = term * adams_cache[part]
            result = result + term.scale(Fraction(1, z_stat(lam)))
    return result


def coefficient(f: GradedSeries, alpha: Iterable[int]):
    return f.coefficient(alpha)


def _content(k: Key) -> int:
    return reduce(gcd, k, 0)


def _box_keys(box: Key) -> Iterable[Key]:
    return product(*(range(b + 1) for b in box))


def series(box: Iterable[int], terms: Mapping[Key, Any], action: AdamsAction = FROBENIUS, one=None) -> GradedSeries:
    """Convenience constructor; keys may be ints for a single grading."""
    box = tuple(box) if not isinstance(box, int) else (box,)
    fixed = {(k,) if isinstance(k, int) else tuple(k): v for k, v in terms.items()}
    return GradedSeries(box, fixed, RatFun(1) if one is None else one, action)
