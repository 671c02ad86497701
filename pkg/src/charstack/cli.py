"""Batch command-line interface.

Exit codes: 0 success, 1 verification mismatch, 2 input or guard error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Sequence

from .character_stack import CharStackConfig, build, eseries, h_star, mixed_poincare
from .exact_algebra import RatFun
from .finite_field import GuardExceeded, count_kronecker, gl_order, kronecker_level, realize, count_char_variety
from .hlrv import hlrv_H, specialize_E
from .multitypes import (
    F_level,
    box_vectors,
    family_genus,
    family_kronecker,
    family_unit,
    verify_plexp_identity,
)

TASKS = ("eseries", "mixed", "hlrv", "verify-ff", "verify-plethystic", "kronecker-check")
EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class JobConfig:
    task: str
    input: str | None = None
    qs: tuple[int, ...] = ()
    box: tuple[int, ...] = ()
    emit: str = "text"
    threads: int = 1
    allow_empty: bool = False
    mu: tuple[tuple[int, ...], ...] = ()
    genus: int = 0
    family: str = "unit"
    levels: tuple[tuple[int, ...], ...] | None = None
    alpha: tuple[int, ...] = ()
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.task not in TASKS:
            raise InputError(f"unknown task {self.task!r}")
        if self.emit not in ("json", "text"):
            raise InputError("emit must be json or text")
        if self.threads < 1:
            raise InputError("threads must be positive")
        if any(b < 1 for b in self.box) or any(q < 2 for q in self.qs):
            raise InputError("caps and field sizes must be positive")
        needs = {"eseries": "input", "mixed": "input", "verify-ff": "input", "hlrv": "mu",
                 "verify-plethystic": "box", "kronecker-check": "alpha"}[self.task]
        if not getattr(self, needs):
            raise InputError(f"task {self.task} requires --{needs}")
        if self.task in ("verify-ff", "kronecker-check") and not self.qs:
            raise InputError(f"task {self.task} requires --q")

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("extra")
        return out

    @classmethod
    def from_json(cls, data: dict) -> "JobConfig":
        def tup(x):
            return tuple(tup(y) for y in x) if isinstance(x, list) else x

        return cls(**{k: tup(v) for k, v in data.items()})


def _ints(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.replace("+", ",").split(",") if x.strip())
    except ValueError as exc:
        raise InputError(f"expected a comma-separated integer list, got {text!r}") from exc


def _json_arg(text: str | None, what: str):
    if text is None:
        return None
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(value, list):
        raise InputError(f"{what}: expected a JSON list")
    return tuple(tuple(int(x) for x in v) for v in value)


def parse_args(argv: Sequence[str]) -> JobConfig:
    ap = argparse.ArgumentParser(prog="charstack", description="E-series and mixed series of character stacks")
    ap.add_argument("task", choices=TASKS)
    ap.add_argument("--input", help="character stack config (JSON)")
    ap.add_argument("--q", help="comma-separated field sizes")
    ap.add_argument("--box", help="degree or dimension-vector cap, e.g. 4 or 2,2")
    ap.add_argument("--emit", choices=("json", "text"), default="text")
    ap.add_argument("--threads", type=int, default=None)
    ap.add_argument("--allow-empty", action="store_true", help="return 0 instead of failing when gamma^alpha != 1")
    ap.add_argument("--mu", help="JSON list of partitions, one per puncture")
    ap.add_argument("--genus", type=int, default=0)
    ap.add_argument("--family", default="unit", help="unit, genus, or kronecker")
    ap.add_argument("--levels", help="JSON list of dimension vectors forming the level set")
    ap.add_argument("--alpha", help="dimension vector for kronecker-check")
    ns = ap.parse_args(list(argv))
    threads = ns.threads if ns.threads is not None else int(os.environ.get("CHARSTACK_THREADS", "1"))
    return JobConfig(task=ns.task, input=ns.input, qs=_ints(ns.q), box=_ints(ns.box), emit=ns.emit,
                     threads=threads, allow_empty=ns.allow_empty, mu=_json_arg(ns.mu, "--mu") or (),
                     genus=ns.genus, family=ns.family, levels=_json_arg(ns.levels, "--levels"),
                     alpha=_ints(ns.alpha))


def load_config(path: str) -> CharStackConfig:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    try:
        return CharStackConfig.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: missing or malformed field {exc}") from exc


def _render(value: Any) -> Any:
    if isinstance(value, (RatFun, Fraction)):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _render(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_render(v) for v in value]
    return value


# tasks


def _series_task(job: JobConfig) -> tuple[dict, int]:
    config = load_config(job.input)
    data = build(config)
    members = h_star(data, job.allow_empty)
    report = {"config": config.to_json(), "alpha": list(data.alpha), "h_star": [list(m) for m in members],
              "generic": members == [data.alpha]}
    if job.task == "eseries":
        report["E"] = eseries(data, job.allow_empty)
    else:
        report["H_c"] = mixed_poincare(data, job.allow_empty)
    return report, EXIT_OK


def _hlrv_task(job: JobConfig) -> tuple[dict, int]:
    degree = job.box[0] if job.box else None
    H = hlrv_H(job.mu, job.genus, degree)
    return {"mu": [list(m) for m in job.mu], "genus": job.genus, "H": H, "E": specialize_E(H)}, EXIT_OK


def _ff_one(args: tuple[dict, int, str]) -> dict:
    config_json, q, e_json = args
    config = CharStackConfig.from_json(config_json)
    params = realize(config, q)
    if params is None:
        return {"q": q, "realized": False, "X_count": None, "stack_count": None, "E_at_q": None, "match": None}
    x = count_char_variety(params, config)
    sc = Fraction(x, gl_order(config.n, q))
    e = RatFun.from_json(json.loads(e_json)).evaluate(q=q)
    return {"q": q, "realized": True, "X_count": x, "stack_count": sc, "E_at_q": e, "match": sc == e}


def _map(job: JobConfig, fn, items: list) -> list:
    if job.threads == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=job.threads) as pool:
        return list(pool.map(fn, items))


def _verify_ff_task(job: JobConfig) -> tuple[dict, int]:
    config = load_config(job.input)
    data = build(config)
    E = eseries(data, job.allow_empty)
    e_json = json.dumps(E.to_json())
    rows = _map(job, _ff_one, [(config.to_json(), q, e_json) for q in job.qs])
    ok = all(r["match"] is not False for r in rows)
    return {"config": config.to_json(), "E": E, "rows": rows, "all_match": ok}, EXIT_OK if ok else EXIT_MISMATCH


def _family(job: JobConfig):
    if job.family == "unit":
        return family_unit()
    if job.family == "genus":
        return family_genus(job.genus)
    if job.family == "kronecker":
        return family_kronecker()
    raise InputError(f"unknown family {job.family!r}")


def _plethystic_task(job: JobConfig) -> tuple[dict, int]:
    levels = job.levels if job.levels is not None else tuple(box_vectors(job.box))
    if any(len(v) != len(job.box) for v in levels):
        raise InputError("level vectors must match the box length")
    rows = verify_plexp_identity(_family(job), job.box, levels)
    ok = all(r["pass"] for r in rows)
    return ({"family": job.family, "box": list(job.box), "levels": [list(v) for v in levels], "rows": rows,
             "all_pass": ok}, EXIT_OK if ok else EXIT_MISMATCH)


def _kronecker_one(args: tuple[int, tuple[int, int], tuple[int, int]]) -> dict:
    q, alpha, eta = args
    level = kronecker_level(q, alpha, eta)
    brute = count_kronecker(q, alpha, eta)
    char_sum = F_level(family_kronecker(), alpha, level).evaluate(t=q)
    return {"q": q, "eta": list(eta), "level": [list(v) for v in level], "brute_force": brute,
            "char_sum": char_sum, "match": brute == char_sum}


def _kronecker_task(job: JobConfig) -> tuple[dict, int]:
    if len(job.alpha) != 2:
        raise InputError("kronecker-check needs a two-entry --alpha")
    alpha = tuple(job.alpha)
    items = [(q, alpha, eta) for q in job.qs for eta in product(range(1, q), repeat=2)]
    rows = _map(job, _kronecker_one, items)
    ok = all(r["match"] for r in rows)
    return {"alpha": list(alpha), "rows": rows, "all_match": ok}, EXIT_OK if ok else EXIT_MISMATCH


HANDLERS = {
    "eseries": _series_task,
    "mixed": _series_task,
    "hlrv": _hlrv_task,
    "verify-ff": _verify_ff_task,
    "verify-plethystic": _plethystic_task,
    "kronecker-check": _kronecker_task,
}


def _text(report: dict) -> str:
    lines = []
    for key in sorted(report):
        value = report[key]
        if key == "rows":
            lines.extend(json.dumps(_render(r), sort_keys=True) for r in value)
        else:
            lines.append(f"{key}: {json.dumps(_render(value), sort_keys=True) if not isinstance(value, RatFun) else value}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        job = parse_args(sys.argv[1:] if argv is None else argv)
        report, code = HANDLERS[job.task](job)
    except GuardExceeded as exc:
        print(f"error: guard exceeded: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if job.emit == "json":
        print(json.dumps(_render(report), sort_keys=True, indent=2), file=out)
    else:
        print(_text(report), file=out)
    return code


def main() -> None:
    sys.exit(run())
