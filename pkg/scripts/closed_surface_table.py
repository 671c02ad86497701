"""E-series of GL_n character stacks of closed surfaces with a central twist, with optional brute-force checks."""

import argparse

from charstack.character_stack import build, eseries, twisted_config
from charstack.finite_field import GuardExceeded, verify_ff


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--max-genus", type=int, default=2)
    ap.add_argument("--check", default="", help="comma-separated field sizes to brute-force at")
    args = ap.parse_args()
    qs = [int(x) for x in args.check.split(",") if x]
    for n in range(1, args.max_n + 1):
        for d in range(n):
            for g in range(1, args.max_genus + 1):
                cfg = twisted_config(n, d, g)
                line = f"n={n} d={d} g={g}: {eseries(build(cfg))}"
                if qs:
                    try:
                        rows = verify_ff(cfg, qs)
                        line += "  " + " ".join(f"q={r['q']}:{r['match']}" for r in rows if r["realized"])
                    except GuardExceeded as exc:
                        line += f"  (skipped: {exc})"
                print(line)


if __name__ == "__main__":
    main()
