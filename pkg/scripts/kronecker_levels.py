"""Kronecker quiver: brute-force moment-map counts against the char-sum for every central eta."""

import argparse
from itertools import product

from charstack.finite_field import count_kronecker
from charstack.multitypes import F_level, box_vectors, family_kronecker


def level(q, alpha, eta, invert_second):
    e1 = pow(eta[1], q - 2, q) if invert_second else eta[1]
    return [d for d in box_vectors(alpha) if pow(eta[0], d[0], q) * pow(e1, d[1], q) % q == 1]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", default="2,3,5")
    ap.add_argument("--alpha", default="1,1;2,1")
    args = ap.parse_args()
    fam = family_kronecker()
    for alpha in [tuple(int(x) for x in a.split(",")) for a in args.alpha.split(";")]:
        for q in [int(x) for x in args.q.split(",")]:
            agree = {False: 0, True: 0}
            total = 0
            for eta in product(range(1, q), repeat=2):
                brute = count_kronecker(q, alpha, eta)
                total += 1
                for inv in (False, True):
                    agree[inv] += F_level(fam, alpha, level(q, alpha, eta, inv)).evaluate(t=q) == brute
            print(f"alpha={alpha} q={q}: level via eta_1 agrees {agree[False]}/{total}, "
                  f"via eta_1^-1 agrees {agree[True]}/{total}")


if __name__ == "__main__":
    main()
