"""Independent reference computations shared by the test modules."""
from fractions import Fraction

import numpy as np


def brute_force(p, q):
    """Exact minimum over all partial matchings, in rational arithmetic.

    Independent of the augmented-matrix construction: each point of p is
    either matched to a distinct unused point of q or sent to the diagonal,
    and leftover points of q go to the diagonal.
    """
    P = [(Fraction(b), Fraction(d)) for b, d in p]
    Q = [(Fraction(b), Fraction(d)) for b, d in q]
    half = lambda x: (x[1] - x[0]) / 2
    best = None

    def rec(i, used, acc):
        nonlocal best
        if best is not None and acc >= best:
            return
        if i == len(P):
            total = acc + sum(half(Q[j]) for j in range(len(Q)) if j not in used)
            if best is None or total < best:
                best = total
            return
        rec(i + 1, used, acc + half(P[i]))
        for j in range(len(Q)):
            if j not in used:
                c = max(abs(P[i][0] - Q[j][0]), abs(P[i][1] - Q[j][1]))
                rec(i + 1, used | {j}, acc + c)

    rec(0, frozenset(), Fraction(0))
    return best


def dyadic_diagram(rng, k):
    # multiples of 1/8 keep every float operation exact
    b = rng.integers(0, 24, size=k) / 8
    return np.column_stack([b, b + rng.integers(0, 16, size=k) / 8])
