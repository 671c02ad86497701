"""Acceptance criteria 1-10; each test prints one PASS/FAIL line with timing."""

import json
import random
import time
from itertools import chain, combinations, product
from pathlib import Path

import pytest

from charstack.character_stack import CharStackConfig, build, eseries, eseries_in_s, four_punctured_sphere, mixed_poincare, twisted_config
from charstack.exact_algebra import RatFun, var
from charstack.finite_field import count_kronecker, first_realizable_primes, kronecker_level, verify_ff
from charstack.hlrv import hlrv_H
from charstack.lambda_series import plelog, plexp, series
from charstack.multitypes import (
    F_level,
    enumerate_semisimple,
    family_genus,
    family_kronecker,
    family_unit,
    regular_count,
    verify_plexp_identity,
)
from charstack.partitions import conjugate, partitions
from charstack.symmetric_functions import SymFunc, modified_macdonald_qt

q, t, z, w = var("q"), var("t"), var("z"), var("w")
CONFIGS = Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, started: float, budget: float | None = None, detail: str = ""):
        elapsed = time.perf_counter() - started
        within = budget is None or elapsed < budget
        status = "PASS" if ok and within else "FAIL"
        limit = f" (limit {budget:.0f}s)" if budget else ""
        with capsys.disabled():
            print(f"\ncriterion {n}: {status} in {elapsed:.2f}s{limit} {detail}".rstrip())
        assert ok, detail
        assert within, f"took {elapsed:.1f}s, limit {budget}s"

    return emit


def test_criterion_01_nongeneric_sphere(report):
    start = time.perf_counter()
    data = build(four_punctured_sphere(True))
    H = mixed_poincare(data)
    E = eseries(data)
    target = (q ** 3 * t ** 6 + 4 * q ** 2 * t ** 4 + q * t ** 4 - 4 * q * t ** 2 - t ** 2) / (q * t ** 2 - 1) ** 2
    ok = H == target and E == (q ** 3 + 4 * q ** 2 - 3 * q - 1) / (q - 1) ** 2 and E == H.substitute({"t": -1})
    report(1, ok, start, 10, f"H_c = {H}")


def test_criterion_02_generic_sphere(report):
    start = time.perf_counter()
    H = mixed_poincare(build(four_punctured_sphere(False)))
    ok = H == (q ** 2 * t ** 4 + 4 * q * t ** 2 + t ** 2) / (q * t ** 2 - 1)
    report(2, ok, start, 10, f"H_c = {H}")


def test_criterion_03_kernel_values(report):
    start = time.perf_counter()
    ok = hlrv_H([[1]] * 4, 0) == 1 and all(hlrv_H([[1]], g) == (z - w) ** (2 * g) for g in range(4))
    report(3, ok, start)


def test_criterion_04_finite_field_counts(report):
    start = time.perf_counter()
    cases = [
        ("M_2,0 g=1", twisted_config(2, 0, 1), [2, 3, 5]),
        ("M_2,1 g=1", twisted_config(2, 1, 1), [3, 5]),
    ]
    for label, cfg in [("sphere non-generic", four_punctured_sphere(True)),
                       ("sphere generic", four_punctured_sphere(False))]:
        cases.append((label, cfg, first_realizable_primes(cfg, 3)))
    failures, slowest = [], 0.0
    for label, cfg, qs in cases:
        if len(qs) < 2:
            failures.append(f"{label}: too few primes")
        for qq in qs:
            t0 = time.perf_counter()
            row = verify_ff(cfg, [qq])[0]
            slowest = max(slowest, time.perf_counter() - t0)
            if not row["match"]:
                failures.append(f"{label} q={qq}: {row}")
    ok = not failures and slowest < 120
    report(4, ok, start, None, f"slowest count {slowest:.1f}s; primes {[c[2] for c in cases[2:]]} {failures}")


def _subsets(items):
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def test_criterion_05_plexp_identity(report):
    start = time.perf_counter()
    families = [family_unit(), family_genus(0), family_genus(2)]
    failures = 0
    checks = 0
    for fam in families:
        for V in _subsets(range(1, 5)):
            rows = verify_plexp_identity(fam, (4,), [(v,) for v in V])
            checks += len(rows)
            failures += sum(not r["pass"] for r in rows)
        for V in TWO_VERTEX_LEVELS:
            rows = verify_plexp_identity(fam, (2, 2), V)
            checks += len(rows)
            failures += sum(not r["pass"] for r in rows)
    report(5, failures == 0, start, 60, f"{checks} coefficients, {failures} failures")


TWO_VERTEX_LEVELS = [
    [v for v in product(range(3), repeat=2) if any(v)],
    [(1, 1), (2, 2)],
    [(1, 0), (2, 0), (0, 1), (0, 2)],
    [(1, 0), (0, 1), (1, 1), (2, 1)],
]


def _random_series(rng: random.Random, box):
    keys = [k for k in product(*(range(b + 1) for b in box)) if any(k)]
    terms = {}
    for k in rng.sample(keys, rng.randint(1, 4)):
        coeffs = {(rng.randint(0, 3),): rng.randint(-5, 5) for _ in range(rng.randint(1, 3))}
        c = RatFun.from_terms(("q",), coeffs)
        if not c.is_zero():
            terms[k] = c
    return series(box, terms)


def test_criterion_06_plethystic_round_trip(report):
    start = time.perf_counter()
    rng = random.Random(20240601)
    failures = 0
    for i in range(50):
        box = (6,) if i < 25 else (3, 3)
        f = _random_series(rng, box)
        one = series(box, {(0,) * len(box): RatFun(1)})
        if plelog(plexp(f)) != f or plexp(plelog(one + f)) != one + f:
            failures += 1
    report(6, failures == 0, start, None, f"50 series, {failures} failures")


def test_criterion_07_macdonald(report):
    start = time.perf_counter()
    failures = []
    for n in range(1, 6):
        for mu in partitions(n):
            H = modified_macdonald_qt(mu)
            if H.coefficient([(n,)]) != 1:
                failures.append(f"s_({n}) coefficient of {mu}")
            if H != modified_macdonald_qt(conjugate(mu)).substitute({"q": t, "t": q}):
                failures.append(f"symmetry at {mu}")
    s2, s11 = SymFunc.single("s", (2,)), SymFunc.single("s", (1, 1))
    if modified_macdonald_qt((2,)) != s2 + s11.scale(q) or modified_macdonald_qt((1, 1)) != s2 + s11.scale(t):
        failures.append("degree-2 closed forms")
    report(7, not failures, start, 120, str(failures) if failures else "")


def corpus():
    configs = [CharStackConfig.from_json(json.loads(p.read_text())) for p in sorted(CONFIGS.glob("*.json"))]
    configs += [twisted_config(n, d, g) for n in (1, 2, 3) for d in range(n) for g in (0, 1, 2)
                if not (g == 0 and n > 1)]
    return configs


def test_criterion_08_parity(report):
    start = time.perf_counter()
    bad = [cfg for cfg in corpus() if not eseries_in_s(build(cfg)).is_even_in("s")]
    report(8, not bad, start, None, f"{len(corpus())} configs, {len(bad)} odd")


def test_criterion_09_kronecker(report):
    start = time.perf_counter()
    fam = family_kronecker()
    failures, levels_seen = [], {}
    for alpha in [(1, 1), (2, 1)]:
        for qq in (2, 3):
            for eta in product(range(1, qq), repeat=2):
                level = kronecker_level(qq, alpha, eta)
                levels_seen.setdefault(alpha, set()).add(tuple(level))
                brute = count_kronecker(qq, alpha, eta)
                char_sum = F_level(fam, alpha, level).evaluate(t=qq)
                if brute != char_sum:
                    failures.append((alpha, qq, eta, brute, char_sum))
    enough = all(len(v) >= 2 for v in levels_seen.values())
    detail = f"level sets per alpha {[len(v) for v in levels_seen.values()]}; mismatches {failures}"
    report(9, enough and not failures, start, 300, detail)


def test_criterion_10_regular_positivity(report):
    start = time.perf_counter()
    sizes = [(1,), (2,), (3,)] + [v for v in product(range(3), range(2)) if any(v)]
    bad = []
    for size in sizes:
        for nu in enumerate_semisimple(size):
            for qq in (2, 3, 4, 5):
                value = regular_count(nu, qq)
                if value.denominator != 1 or value < 0:
                    bad.append((nu, qq, value))
    report(10, not bad, start, None, f"{len(bad)} failures")
