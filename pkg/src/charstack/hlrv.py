"""Hook function, the partition-sum kernel and its plethystic logarithm.

The kernel is the series over partitions lam of hook_function(lam) times the
product of modified Macdonald polynomials H~_lam(x_i; z^2, w^2), one per
alphabet.  Its plethystic logarithm, paired against h_mu, gives the rational
functions that feed the E-series and the mixed series.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .exact_algebra import RatFun, var
from .lambda_series import SYM_FULL, SYM_X_ONLY, AdamsAction, GradedSeries, plelog
from .partitions import MultiPartition, Partition, cell_stats, make_partition, partitions
from .symmetric_functions import SymFunc, _power_sum_monomial_coeff, modified_macdonald, tensor

Z, W, S, T, Q = var("z"), var("w"), var("s"), var("t"), var("q")

ADAMS_CONVENTIONS: dict[str, AdamsAction] = {"full": SYM_FULL, "x-only": SYM_X_ONLY}
DEFAULT_CONVENTION = "full"


@dataclass(frozen=True)
class KernelParams:
    genus: int
    punctures: int
    degree: int

    def __post_init__(self):
        if self.punctures < 1:
            raise ValueError("kernel needs at least one puncture")
        if self.degree < 0 or self.genus < 0:
            raise ValueError("genus and degree must be nonnegative")


@lru_cache(maxsize=None)
def hook_function(lam: Partition, genus: int) -> RatFun:
    """prod over cells of (z^{2a+1}-w^{2l+1})^{2g} / ((z^{2a+2}-w^{2l})(z^{2a}-w^{2l+2}))."""
    lam = make_partition(lam)
    if not lam:
        raise ValueError("hook function of the empty partition")
    out = RatFun(1)
    for c in cell_stats(lam):
        a, l = c.arm, c.leg
        num = (Z ** (2 * a + 1) - W ** (2 * l + 1)) ** (2 * genus)
        out = out * num / ((Z ** (2 * a + 2) - W ** (2 * l)) * (Z ** (2 * a) - W ** (2 * l + 2)))
    return out


@lru_cache(maxsize=None)
def _macdonald_zw(lam: Partition) -> SymFunc:
    return modified_macdonald(lam, Z ** 2, W ** 2).convert("p")


@lru_cache(maxsize=None)
def omega_series(params: KernelParams, convention: str = DEFAULT_CONVENTION) -> GradedSeries:
    """The kernel truncated at T^degree, coefficients in the p-basis of k alphabets."""
    k = params.punctures
    one = SymFunc.one(k, "p")
    terms = {(0,): one}
    for m in range(1, params.degree + 1):
        acc = SymFunc.zero(k, "p")
        for lam in partitions(m):
            acc = acc + tensor([_macdonald_zw(lam)] * k).scale(hook_function(lam, params.genus))
        terms[(m,)] = acc
    return GradedSeries((params.degree,), terms, one, ADAMS_CONVENTIONS[convention])


@lru_cache(maxsize=None)
def log_omega(params: KernelParams, convention: str = DEFAULT_CONVENTION) -> GradedSeries:
    return plelog(omega_series(params, convention))


def pair_with_h(f: SymFunc, mus: Sequence[Partition]) -> RatFun:
    """<f, h_mu^1 ... h_mu^k>: the coefficient of m_mu, read off the p-expansion."""
    p = f.convert("p")
    total = RatFun(0)
    for key, c in p.terms.items():
        weight = 1
        for rho, mu in zip(key, mus):
            weight *= _power_sum_monomial_coeff(rho, mu)
            if not weight:
                break
        if weight:
            total = total + c * weight
    return total


def _check_multipartition(mus: Sequence[Sequence[int]]) -> tuple[MultiPartition, int]:
    mp = tuple(make_partition(m) for m in mus)
    if not mp:
        raise ValueError("need at least one component")
    sizes = {sum(m) for m in mp}
    if len(sizes) != 1:
        raise ValueError(f"size mismatch among components of {mus!r}")
    n = sizes.pop()
    if n == 0:
        raise ValueError("components must be nonempty")
    return mp, n


def hlrv_H(mus: Sequence[Sequence[int]], genus: int, degree: int | None = None,
           convention: str = DEFAULT_CONVENTION) -> RatFun:
    """(z^2-1)(1-w^2) <Coeff_{T^n} Plelog(kernel), h_mu>."""
    mp, n = _check_multipartition(mus)
    params = KernelParams(genus, len(mp), n if degree is None else max(degree, n))
    coeff = log_omega(params, convention).coefficient((n,))
    return (Z ** 2 - 1) * (1 - W ** 2) * pair_with_h(coeff, mp)


def halve_exponent(f: RatFun, src: str = "s", dst: str = "q") -> RatFun:
    """Rewrite a function even in src as a function of dst = src^2."""
    if not f.is_even_in(src):
        raise ValueError("not rational in q")
    return f.fold_square(src, dst)


def specialize_E(H: RatFun) -> RatFun:
    """H(sqrt q, 1/sqrt q) as a function of q."""
    return halve_exponent(H.substitute({"z": S, "w": 1 / S}))


def specialize_mixed(H: RatFun, sign: int = 1) -> RatFun:
    """H(sign * t sqrt q, 1/sqrt q) as a function of q and t."""
    return halve_exponent(H.substitute({"z": sign * T * S, "w": 1 / S}))
