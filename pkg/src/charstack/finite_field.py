"""Brute-force point counts over prime fields.

Matrices are row-major tuples of ints mod p.  Products of many constrained
factors are counted exactly by building the value distribution of each
factor and joining the two halves at the end (meet in the middle), which
keeps every count exhaustive while avoiding a full nested loop.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import prod
from typing import Iterable, Sequence

from .character_stack import CharStackConfig, StarQuiverData, build, h_star

Mat = tuple[int, ...]

MAX_PRIME = 101
ENUMERATION_GUARD = 10 ** 8


class GuardExceeded(RuntimeError):
    pass


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p > MAX_PRIME:
            raise GuardExceeded(f"prime {self.p} above bound {MAX_PRIME}")

    def inv(self, a: int) -> int:
        return pow(a, self.p - 2, self.p)

    @lru_cache(maxsize=None)
    def primitive_root(self) -> int:
        p = self.p
        if p == 2:
            return 1
        factors = {d for d in range(2, p) if (p - 1) % d == 0 and is_prime(d)}
        return next(g for g in range(2, p) if all(pow(g, (p - 1) // f, p) != 1 for f in factors))


# small matrix arithmetic


def mat_mul(a: Mat, b: Mat, n: int, m: int, k: int, p: int) -> Mat:
    """(n x m) times (m x k)."""
    return tuple(sum(a[i * m + l] * b[l * k + j] for l in range(m)) % p for i in range(n) for j in range(k))


def identity(n: int) -> Mat:
    return tuple(int(i == j) for i in range(n) for j in range(n))


def scalar(n: int, c: int, p: int) -> Mat:
    return tuple(c % p if i == j else 0 for i in range(n) for j in range(n))


def mat_add(a: Mat, b: Mat, p: int) -> Mat:
    return tuple((x + y) % p for x, y in zip(a, b))


def det(a: Mat, n: int, p: int) -> int:
    if n == 0:
        return 1
    if n == 1:
        return a[0] % p
    if n == 2:
        return (a[0] * a[3] - a[1] * a[2]) % p
    if n == 3:
        return (a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6])
                + a[2] * (a[3] * a[7] - a[4] * a[6])) % p
    raise GuardExceeded("matrix size above 3")


def inverse(a: Mat, n: int, p: int) -> Mat:
    """Gauss-Jordan inverse mod p; raises ZeroDivisionError if singular."""
    rows = [list(a[i * n:(i + 1) * n]) + [int(i == j) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] % p), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        rows[c], rows[piv] = rows[piv], rows[c]
        iv = pow(rows[c][c], p - 2, p)
        rows[c] = [x * iv % p for x in rows[c]]
        for r in range(n):
            if r != c and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[c])]
    return tuple(x for r in rows for x in r[n:])


def rank(a: Mat, n: int, m: int, p: int) -> int:
    rows = [list(a[i * m:(i + 1) * m]) for i in range(n)]
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        iv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * iv % p for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def all_matrices(n: int, m: int, p: int) -> Iterable[Mat]:
    if p ** (n * m) > ENUMERATION_GUARD:
        raise GuardExceeded(f"{n}x{m} matrices over F_{p}")
    return product(range(p), repeat=n * m)


@lru_cache(maxsize=None)
def gl(n: int, p: int) -> tuple[Mat, ...]:
    if n > 3:
        raise GuardExceeded("n above 3")
    return tuple(a for a in all_matrices(n, n, p) if det(a, n, p))


def gl_order(n: int, q: int) -> int:
    return prod(q ** n - q ** i for i in range(n))


# distributions of group-valued factors


def convolve(a: Counter, b: Counter, n: int, p: int) -> Counter:
    out: Counter = Counter()
    for x, cx in a.items():
        for y, cy in b.items():
            out[mat_mul(x, y, n, n, n, p)] += cx * cy
    return out


def count_product_equal(factors: Sequence[Counter], target: Mat, n: int, p: int) -> int:
    """Number of tuples (f_1,...,f_r), weighted, with f_1 ... f_r = target."""
    if not factors:
        return int(target == identity(n))
    half = len(factors) // 2
    left: Counter = Counter({identity(n): 1})
    for f in factors[:half]:
        left = convolve(left, f, n, p)
    right: Counter = Counter({identity(n): 1})
    for f in factors[half:]:
        right = convolve(right, f, n, p)
    total = 0
    for x, cx in left.items():
        # need x * y = target, i.e. y = x^{-1} target
        y = mat_mul(inverse(x, n, p), target, n, n, n, p)
        total += cx * right.get(y, 0)
    return total


@lru_cache(maxsize=None)
def commutator_distribution(n: int, p: int) -> Counter:
    """Distribution of A B A^{-1} B^{-1} over GL_n x GL_n."""
    g = gl(n, p)
    if len(g) ** 2 > ENUMERATION_GUARD:
        raise GuardExceeded("commutator enumeration")
    invs = dict(gl_with_inverses(n, p))
    out: Counter = Counter()
    for a in g:
        ai = invs[a]
        for b in g:
            ab = mat_mul(a, b, n, n, n, p)
            out[mat_mul(mat_mul(ab, ai, n, n, n, p), invs[b], n, n, n, p)] += 1
    return out


@lru_cache(maxsize=None)
def gl_with_inverses(n: int, p: int) -> tuple[tuple[Mat, Mat], ...]:
    return tuple((a, inverse(a, n, p)) for a in gl(n, p))


def conjugacy_class(rep: Mat, n: int, p: int) -> frozenset[Mat]:
    return frozenset(mat_mul(mat_mul(g, rep, n, n, n, p), gi, n, n, n, p) for g, gi in gl_with_inverses(n, p))


# realization of the eigenvalue group in F_q^*


@dataclass(frozen=True)
class RealizedParams:
    q: int
    generators: tuple[int, ...]
    gamma: tuple[int, ...]
    eigenvalues: tuple[tuple[tuple[int, int], ...], ...]


def _box(alpha: Sequence[int]) -> Iterable[tuple[int, ...]]:
    return (d for d in product(*(range(a + 1) for a in alpha)) if any(d))


def realize(config: CharStackConfig, q: int) -> RealizedParams | None:
    """First assignment of generators in F_q^* that matches the level set on the whole box."""
    field = PrimeField(q)
    data = build(config)
    group = config.group
    order = q - 1
    g = field.primitive_root()
    box = list(_box(data.alpha))
    wanted = [group.is_identity(_gpow(data, d)) for d in box]
    for logs in product(range(order), repeat=group.rank):
        if any(sum(r * a for r, a in zip(rel, logs)) % order for rel in group.relations):
            continue
        ev_logs = [[sum(e * a for e, a in zip(exp, logs)) % order for exp, _ in pnc.eigenvalues]
                   for pnc in config.punctures]
        if any(len(set(ev)) != len(ev) for ev in ev_logs):
            continue
        gamma_logs = [sum(x * a for x, a in zip(vec, logs)) % order for vec in data.gamma]
        if all((sum(d * gl_ for d, gl_ in zip(delta, gamma_logs)) % order == 0) == w
               for delta, w in zip(box, wanted)):
            gens = tuple(pow(g, a, q) for a in logs)
            evs = tuple(tuple((pow(g, lg, q), m) for lg, (_, m) in zip(ev, pnc.eigenvalues))
                        for ev, pnc in zip(ev_logs, config.punctures))
            return RealizedParams(q, gens, tuple(pow(g, a, q) for a in gamma_logs), evs)
    return None


def _gpow(data: StarQuiverData, delta) -> tuple[int, ...]:
    return tuple(sum(d * gv[r] for d, gv in zip(delta, data.gamma)) for r in range(data.group.rank))


def class_representative(eigenvalues: Sequence[tuple[int, int]], n: int) -> Mat:
    diag = [v for v, m in eigenvalues for _ in range(m)]
    return tuple(diag[i] if i == j else 0 for i in range(n) for j in range(n))


def count_char_variety(params: RealizedParams, config: CharStackConfig) -> int:
    """#{(A_i, B_i, X_j) : prod [A_i, B_i] prod X_j = 1, X_j in the realized classes}."""
    n, p = config.n, params.q
    if n > 3 or (n == 3 and p != 2):
        raise GuardExceeded("count_char_variety needs n <= 2, or n = 3 with q = 2")
    factors: list[Counter] = [commutator_distribution(n, p)] * config.genus if config.genus else []
    for evs in params.eigenvalues:
        factors.append(Counter(conjugacy_class(class_representative(evs, n), n, p)))
    return count_product_equal(factors, identity(n), n, p)


def stack_count(params: RealizedParams, config: CharStackConfig) -> Fraction:
    return Fraction(count_char_variety(params, config), gl_order(config.n, params.q))


# quiver moment-map fibers


def _maps(rows: int, cols: int, p: int, injective: bool = False) -> list[Mat]:
    out = list(all_matrices(rows, cols, p))
    if injective:
        out = [a for a in out if rank(a, rows, cols, p) == cols]
    return out


def count_kronecker(q: int, alpha: tuple[int, int], eta: tuple[int, int]) -> Fraction:
    """m_alpha(eta)/|GL_alpha|; vertex 0 receives the arrow from vertex 1."""
    a0, a1 = alpha
    if a0 > 3 or a1 > 3 or q > 5:
        raise GuardExceeded("kronecker count limited to dims <= 3 and q <= 5")
    p = PrimeField(q).p
    target0 = scalar(a0, eta[0], p)
    target1 = scalar(a1, PrimeField(q).inv(eta[1]), p)
    n = 0
    costar = _maps(a1, a0, p)
    for f in _maps(a0, a1, p, injective=True):
        for fs in costar:
            if mat_add(identity(a0), mat_mul(f, fs, a0, a1, a0, p), p) != target0:
                continue
            if mat_add(identity(a1), mat_mul(fs, f, a1, a0, a1, p), p) == target1:
                n += 1
    euler = a0 * a0 + a1 * a1 - a0 * a1
    return Fraction(n * q ** euler, gl_order(a0, q) * gl_order(a1, q))


def kronecker_level(q: int, alpha: tuple[int, int], eta: tuple[int, int]) -> list[tuple[int, int]]:
    """Nonzero delta <= alpha with eta_0^delta_0 eta_1^delta_1 = 1 in F_q."""
    return [d for d in _box(alpha) if pow(eta[0], d[0], q) * pow(eta[1], d[1], q) % q == 1]


def _loop_distribution(n: int, p: int) -> Counter:
    """Distribution of (1+ee*)(1+e*e)^{-1} over invertible e and all e* with both factors invertible."""
    out: Counter = Counter()
    one = identity(n)
    mats = list(all_matrices(n, n, p))
    if len(gl(n, p)) * len(mats) > ENUMERATION_GUARD:
        raise GuardExceeded("loop enumeration")
    for e in gl(n, p):
        for es in mats:
            u = mat_add(one, mat_mul(e, es, n, n, n, p), p)
            v = mat_add(one, mat_mul(es, e, n, n, n, p), p)
            if det(u, n, p) and det(v, n, p):
                out[mat_mul(u, inverse(v, n, p), n, n, n, p)] += 1
    return out


def _leg_distribution(dims: Sequence[int], sigmas: Sequence[int], p: int) -> Counter:
    """Distribution of 1 + x_0 x_0^* over leg data satisfying all leg-vertex equations.

    dims = (alpha_0, alpha_[h,1], ..., alpha_[h,s]); x_j maps dims[j+1] -> dims[j].
    """
    s = len(dims) - 1
    n0 = dims[0]
    if s == 0:
        return Counter({identity(n0): 1})
    # states: (count, value of 1 + x_j x_j^* at vertex j) built from the tail inwards
    inv = lambda c: pow(c, p - 2, p)
    states: Counter = Counter({identity(dims[s]): 1})  # x_s = 0 at the tail
    for j in range(s - 1, -1, -1):
        hi, lo = dims[j + 1], dims[j]
        sigma = sigmas[j]  # parameter at vertex j+1
        nxt: Counter = Counter()
        xs = _maps(lo, hi, p, injective=True)
        xss = _maps(hi, lo, p)
        if len(xs) * len(xss) * max(1, len(states)) > ENUMERATION_GUARD:
            raise GuardExceeded("leg enumeration")
        for prev, c in states.items():
            need = tuple(x * inv(sigma) % p for x in prev)  # 1 + x_j^* x_j must equal sigma^{-1} prev
            for x in xs:
                for xst in xss:
                    inner = mat_add(identity(hi), mat_mul(xst, x, hi, lo, hi, p), p)
                    if inner != need:
                        continue
                    outer = mat_add(identity(lo), mat_mul(x, xst, lo, hi, lo, p), p)
                    if det(outer, lo, p) and det(inner, hi, p):
                        nxt[outer] += c
        states = nxt
    return states


def count_star_moment_fiber(params: RealizedParams, data: StarQuiverData) -> Fraction:
    """#fiber of the multiplicative moment map over the realized parameter, divided by |GL_alpha|."""
    p = params.q
    n0 = data.alpha[0]
    factors: list[Counter] = [_loop_distribution(n0, p)] * data.genus if data.genus else []
    for leg in data.leg_slices():
        dims = [n0] + [data.alpha[v] for v in leg]
        sigmas = [params.gamma[v] for v in leg]
        factors.append(_leg_distribution(dims, sigmas, p))
    count = count_product_equal(factors, scalar(n0, params.gamma[0], p), n0, p)
    return Fraction(count, prod(gl_order(a, p) for a in data.alpha))


def verify_ff(config: CharStackConfig, qs: Sequence[int], E=None) -> list[dict]:
    """Per-q comparison of the brute-force stack count with E(q)."""
    from .character_stack import eseries

    data = build(config)
    h_star(data)
    E = eseries(data) if E is None else E
    report = []
    for q in qs:
        params = realize(config, q)
        if params is None:
            report.append({"q": q, "realized": False, "X_count": None, "stack_count": None,
                           "E_at_q": None, "match": None})
            continue
        x = count_char_variety(params, config)
        sc = Fraction(x, gl_order(config.n, q))
        e = E.evaluate(q=q)
        report.append({"q": q, "realized": True, "X_count": x, "stack_count": sc, "E_at_q": e,
                       "match": sc == e})
    return report


def first_realizable_primes(config: CharStackConfig, count: int, start: int = 2,
                            limit: int = MAX_PRIME) -> list[int]:
    out = []
    for q in range(start, limit + 1):
        if is_prime(q) and realize(config, q) is not None:
            out.append(q)
            if len(out) == count:
                break
    return out
