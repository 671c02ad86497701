"""Compare the two Adams actions on the kernel against brute-force counts of twisted GL_2 torus stacks."""

from charstack.finite_field import realize, stack_count
from charstack.character_stack import twisted_config
from charstack.hlrv import ADAMS_CONVENTIONS, Q, hlrv_H, specialize_E


def main():
    cfg = twisted_config(2, 1, 1)
    counts = {q: stack_count(realize(cfg, q), cfg) for q in (3, 5)}
    print(f"brute force #{{[A,B] = -I}}/|GL_2|: {counts}")
    for name in ADAMS_CONVENTIONS:
        H = hlrv_H([[2]], 1, convention=name)
        print(f"[{name}] H = {H}")
        if H.is_polynomial():
            # generic level set on a torus: (alpha, alpha) = 0, so E = q H(sqrt q, 1/sqrt q)/(q - 1)
            E = Q * specialize_E(H) / (Q - 1)
            print(f"  E = {E}; at counted q: {[E.evaluate(q=q) for q in counts]}")
        else:
            print("  not a polynomial in z, w")


if __name__ == "__main__":
    main()
