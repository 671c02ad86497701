"""Exact rational functions in a fixed set of named variables.

Values are canonical: numerator and denominator are coprime polynomials over
Q and the denominator's leading coefficient (degree-lex order) is 1, so two
equal functions always have identical representations.  Laurent polynomials
are the special case of a monomial denominator.  Polynomial arithmetic and
GCDs are delegated to FLINT.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Union

import flint

VARIABLES: tuple[str, ...] = ("q", "t", "s", "z", "w", "u", "v")
_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_CTX = flint.fmpq_mpoly_ctx.get(VARIABLES, "deglex")
_NV = len(VARIABLES)

Scalar = Union[int, Fraction, flint.fmpq]


class PoleError(ZeroDivisionError):
    """A substitution or evaluation sent a denominator to zero."""


def _poly(x) -> flint.fmpq_mpoly:
    if isinstance(x, flint.fmpq_mpoly):
        return x
    if isinstance(x, Fraction):
        x = flint.fmpq(x.numerator, x.denominator)
    return _CTX.constant(x)


def _to_fraction(c) -> Fraction:
    c = flint.fmpq(c)
    return Fraction(int(c.p), int(c.q))


def _var_index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise ValueError(f"unknown variable {name!r}; known: {VARIABLES}") from None


class RatFun:
    """Canonical quotient of two coprime polynomials over Q."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        if isinstance(num, RatFun) or isinstance(den, RatFun):
            r = RatFun._coerce(num) / RatFun._coerce(den)
            self.num, self.den, self._hash = r.num, r.den, None
            return
        num, den = _poly(num), _poly(den)
        if den.is_zero():
            raise ZeroDivisionError("division by zero")
        if num.is_zero():
            num, den = _CTX.constant(0), _CTX.constant(1)
        elif not den.is_constant():
            g = num.gcd(den)
            if not g.is_one():
                num, den = num / g, den / g
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num, den) -> "RatFun":
        # caller guarantees canonical form
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    # construction helpers

    @classmethod
    def var(cls, name: str) -> "RatFun":
        return cls._raw(_CTX.gens()[_var_index(name)], _CTX.constant(1))

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coef: Scalar = 1) -> "RatFun":
        """Laurent monomial coef * prod name**e (negative e allowed)."""
        up = [0] * _NV
        down = [0] * _NV
        for name, e in exps.items():
            (up if e >= 0 else down)[_var_index(name)] += abs(e)
        return cls(_CTX.from_dict({tuple(up): _poly(coef).leading_coefficient()}),
                   _CTX.from_dict({tuple(down): 1}))

    @classmethod
    def from_terms(cls, variables: Iterable[str], terms: Mapping[tuple, Scalar]) -> "RatFun":
        """Laurent polynomial from {exponent vector: coefficient}."""
        variables = list(variables)
        idx = [_var_index(v) for v in variables]
        shift = [0] * _NV
        for e in terms:
            for i, k in zip(idx, e):
                shift[i] = min(shift[i], k)
        out = {}
        for e, c in terms.items():
            full = [-m for m in shift]
            for i, k in zip(idx, e):
                full[i] += k
            out[tuple(full)] = _poly(c).leading_coefficient() if c else 0
        num = _CTX.from_dict({k: v for k, v in out.items() if v != 0})
        den = _CTX.from_dict({tuple(-m for m in shift): 1})
        return cls(num, den)

    # predicates and accessors

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_laurent(self) -> bool:
        return len(self.den) == 1

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return _to_fraction(self.num.leading_coefficient()) if not self.is_zero() else Fraction(0)

    def variables(self) -> tuple[str, ...]:
        used = set()
        for p in (self.num, self.den):
            for i, d in enumerate(p.degrees()):
                if d > 0:
                    used.add(i)
        return tuple(VARIABLES[i] for i in sorted(used))

    # arithmetic

    @staticmethod
    def _coerce(other) -> "RatFun":
        if isinstance(other, RatFun):
            return other
        if isinstance(other, (int, Fraction, flint.fmpq, flint.fmpq_mpoly)):
            return RatFun._raw(_poly(other), _CTX.constant(1))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            if self.den.is_one():
                return RatFun._raw(self.num + other.num, self.den)
            return RatFun(self.num + other.num, self.den)
        if self.den.is_one():
            return RatFun._raw(self.num * other.den + other.num, other.den)
        if other.den.is_one():
            return RatFun._raw(self.num + other.num * self.den, self.den)
        g = self.den.gcd(other.den)
        a, b = self.den / g, other.den / g
        return RatFun(self.num * b + other.num * a, a * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFun._raw(_CTX.constant(0), _CTX.constant(1))
        if self.den.is_one() and other.den.is_one():
            return RatFun._raw(self.num * other.num, self.den)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        g = n1.gcd(d2)
        if not g.is_one():
            n1, d2 = n1 / g, d2 / g
        g = n2.gcd(d1)
        if not g.is_one():
            n2, d1 = n2 / g, d1 / g
        num, den = n1 * n2, d1 * d2
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return RatFun._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFun._raw(self.num ** e, self.den ** e)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(sorted((k, str(v)) for k, v in self.num.to_dict().items())),
                               tuple(sorted((k, str(v)) for k, v in self.den.to_dict().items()))))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # ring maps

    def adams(self, d: int) -> "RatFun":
        """Image under every variable x -> x**d (preserves canonical form)."""
        if d == 1 or self.is_constant():
            return self
        return RatFun._raw(self.num.inflate([d] * _NV), self.den.inflate([d] * _NV))

    def substitute(self, assignments: Mapping[str, "RatFun | Scalar"]) -> "RatFun":
        """Compose with the given images; unassigned variables are kept."""
        images = {_var_index(k): self._coerce(v) for k, v in assignments.items()}
        if all(img.is_constant() for img in images.values()):
            return self._subs_numbers({i: img.constant_value() for i, img in images.items()})
        num_n, num_d = _compose(self.num, images)
        den_n, den_d = _compose(self.den, images)
        if den_n.is_zero():
            raise PoleError("pole hit")
        return RatFun(num_n * den_d, num_d * den_n)

    def _subs_numbers(self, values: Mapping[int, Fraction]) -> "RatFun":
        vals = {VARIABLES[i]: flint.fmpq(v.numerator, v.denominator) for i, v in values.items()}
        den = self.den.subs(vals)
        if den.is_zero():
            raise PoleError("pole hit")
        return RatFun(self.num.subs(vals), den)

    def evaluate(self, **values: Scalar) -> Fraction | "RatFun":
        """Numeric specialization; returns a Fraction once no variables remain."""
        r = self._subs_numbers({_var_index(k): Fraction(v) for k, v in values.items()})
        return r.constant_value() if r.is_constant() else r

    def fold_square(self, src: str, dst: str) -> "RatFun":
        """Replace src**2 by dst; every src exponent must be even."""
        i, j = _var_index(src), _var_index(dst)

        def conv(p):
            out = {}
            for e, c in p.to_dict().items():
                if e[i] % 2:
                    raise ValueError(f"odd power of {src}")
                e = list(e)
                e[j] += e[i] // 2
                e[i] = 0
                out[tuple(e)] = c
            return _CTX.from_dict(out)

        return RatFun(conv(self.num), conv(self.den))

    def is_even_in(self, name: str) -> bool:
        """True iff invariant under name -> -name."""
        return self.substitute({name: -RatFun.var(name)}) == self

    # rendering

    def integer_parts(self) -> tuple[flint.fmpz_mpoly, flint.fmpz_mpoly]:
        """Numerator and denominator scaled to coprime-content integer polynomials."""
        coeffs = list(self.num.coeffs()) + list(self.den.coeffs())
        m = reduce(lcm, (int(flint.fmpq(c).q) for c in coeffs), 1)
        num, den = self.num * m, self.den * m
        g = reduce(gcd, (int(flint.fmpq(c).p) for c in den.coeffs()), 0)
        g = reduce(gcd, (int(flint.fmpq(c).p) for c in num.coeffs()), g) or 1
        return num / g, den / g

    def __str__(self):
        num, den = self.integer_parts()
        if den.is_one():
            return str(num)
        if den == -1:
            return str(-num)
        n = str(num) if len(num) <= 1 else f"({num})"
        d = str(den) if len(den) <= 1 and "*" not in str(den) else f"({den})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFun({self})"

    def to_json(self) -> dict:
        used = self.variables()
        idx = [_var_index(v) for v in used]

        def terms(p):
            return [[[int(e[i]) for i in idx], str(_to_fraction(c))] for e, c in sorted(p.to_dict().items(), reverse=True)]

        return {"vars": list(used), "numerator": terms(self.num), "denominator": terms(self.den)}

    @classmethod
    def from_json(cls, data: Mapping) -> "RatFun":
        names = data["vars"]

        def poly(terms):
            out = {}
            for exps, coef in terms:
                full = [0] * _NV
                for name, e in zip(names, exps):
                    full[_var_index(name)] = e
                c = Fraction(coef)
                out[tuple(full)] = flint.fmpq(c.numerator, c.denominator)
            return _CTX.from_dict(out)

        return cls(poly(data["numerator"]), poly(data["denominator"]))


def _compose(p: flint.fmpq_mpoly, images: Mapping[int, RatFun]):
    """Return (N, D) polynomials with p(images) = N / D."""
    if p.is_zero():
        return p, _CTX.constant(1)
    degs = p.degrees()
    if all(img.den.is_one() for img in images.values()):
        gens = list(_CTX.gens())
        for i, img in images.items():
            gens[i] = img.num
        return p.compose(*gens), _CTX.constant(1)
    # homogenize each substituted variable by its image denominator
    active = [i for i in images if degs[i] > 0]
    num_pows = {i: [_CTX.constant(1)] for i in active}
    den_pows = {i: [_CTX.constant(1)] for i in active}
    for i in active:
        for _ in range(degs[i]):
            num_pows[i].append(num_pows[i][-1] * images[i].num)
            den_pows[i].append(den_pows[i][-1] * images[i].den)
    total = _CTX.constant(0)
    for e, c in p.to_dict().items():
        term = _CTX.from_dict({tuple(0 if i in images else k for i, k in enumerate(e)): c})
        for i in active:
            term *= num_pows[i][e[i]] * den_pows[i][degs[i] - e[i]]
        total += term
    denom = _CTX.constant(1)
    for i in active:
        denom *= den_pows[i][degs[i]]
    return total, denom


def normalize(num, den) -> RatFun:
    """Canonical form of num/den; num and den may be RatFun or scalars."""
    return RatFun(num, den)


def substitute(f: RatFun, assignments: Mapping[str, RatFun | Scalar]) -> RatFun:
    return f.substitute(assignments)


def even_part_check(f: RatFun, var: str) -> bool:
    return f.is_even_in(var)


def var(name: str) -> RatFun:
    return RatFun.var(name)


def const(c: Scalar) -> RatFun:
    return RatFun._coerce(c)


ZERO = RatFun(0)
ONE = RatFun(1)
