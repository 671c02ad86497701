"""E-series, mixed series and finite-field counts for GL_2 classes diag(l_i, 1/l_i) on a 4-punctured sphere."""

import argparse

from charstack.character_stack import build, eseries, four_punctured_sphere, h_star, mixed_poincare
from charstack.finite_field import count_star_moment_fiber, first_realizable_primes, realize, verify_ff


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, default=3, help="number of realizable primes to count at")
    args = ap.parse_args()
    for relation in (True, False):
        cfg = four_punctured_sphere(relation)
        data = build(cfg)
        label = "l1 l2 l3 l4 = 1" if relation else "no relation"
        print(f"[{label}] level members {h_star(data)}")
        print(f"  E   = {eseries(data)}")
        print(f"  H_c = {mixed_poincare(data)}")
        primes = first_realizable_primes(cfg, args.primes)
        for row in verify_ff(cfg, primes):
            fiber = count_star_moment_fiber(realize(cfg, row["q"]), data)
            print(f"  q={row['q']}: #X/|GL_2| = {row['stack_count']}, E(q) = {row['E_at_q']}, "
                  f"quiver fiber = {fiber}, match = {row['match'] and fiber == row['stack_count']}")


if __name__ == "__main__":
    main()
