"""Independent reference values, computed with sympy and numpy.

The Rust test suites freeze the output of this script. Run it with
`python3 oracle.py`; the full run takes a few minutes.
"""
import cmath
import itertools
import math
import sys

import numpy as np
from sympy.combinatorics.fp_groups import FpGroup, low_index_subgroups
from sympy.combinatorics.free_groups import free_group


def order(F, rels):
    return len(FpGroup(F, rels).coset_enumeration([]).table)


def comm(g, h):
    return g**-1 * h**-1 * g * h


def seifert(p, q, r):
    for b1, b2, b3 in itertools.product(range(p), range(q), range(r)):
        n = b1 * q * r + b2 * p * r + b3 * p * q - 1
        if n % (p * q * r) == 0:
            return b1, b2, b3, n // (p * q * r)


def group_values():
    F1, x = free_group("x")
    for n in range(1, 13):
        print(f"order cyclic {n} = {order(F1, [x**n])}")

    F2, a, b = free_group("a b")
    print(f"order s3 = {order(F2, [a**2, b**2, (a*b)**3])}")
    mu = a * b**-1
    print(f"order trefoil_mu2 = {order(F2, [a**2 * b**-3, mu**2])}")

    u = b**-1 * a
    g = u**5 * a * u**-5 * a**-1
    syllables = len(g.array_form)
    print(f"section syllables = {syllables}")
    G = FpGroup(F2, [a**2, b**3, g])
    for n in range(1, 9):
        witness = None
        for C in low_index_subgroups(G, n):
            C.compress()
            C.standardize()
            pa = [row[0] for row in C.table]
            pb = [row[2] for row in C.table]
            if any(pb[pa[i]] != pa[pb[i]] for i in range(len(pa))):
                witness = len(pa)
                break
        if witness:
            print(f"section witness degree = {witness}")
            break

    free = FpGroup(F2, [])
    counts = {}
    for C in low_index_subgroups(free, 3):
        counts[len(C.table)] = counts.get(len(C.table), 0) + 1
    print(f"low index free2 3 = {sorted(counts.items())}")

    F3, a, b, c = free_group("a b c")
    tri = FpGroup(F3, [a**2, b**3, c**7, a*b*c])
    counts = {}
    for C in low_index_subgroups(tri, 7):
        counts[len(C.table)] = counts.get(len(C.table), 0) + 1
    print(f"low index triangle237 7 = {sorted(counts.items())}")
    print(f"order triangle235 = {order(F3, [a**2, b**3, c**5, a*b*c])}")

    F4, a, b, c, z = free_group("a b c z")

    def y(q, r):
        h, k = (q + 1) // 2, (r + 1) // 2
        return c**k * b**h * a * b**-h * c**-k * a

    def brieskorn(q, r):
        b1, b2, b3, e = seifert(2, q, r)
        return [comm(a, z), comm(b, z), comm(c, z),
                a**2 * z**b1, b**q * z**b2, c**r * z**b3, a*b*c * z**e]

    print(f"order brieskorn235 = {order(F4, brieskorn(3, 5))}")
    for q, r in [(3, 5), (3, 7), (3, 13), (5, 7)]:
        print(f"seifert 2 {q} {r} = {seifert(2, q, r)}")
        dy = [a**2, b**q, c**r, a*b*c, y(q, r), z]
        print(f"order triangle_mod_y {q} {r} = {order(F4, dy)}")
        central = brieskorn(q, r) + [comm(gen, y(q, r)) for gen in (a, b, c, z)]
        print(f"order brieskorn_y_central {q} {r} = {order(F4, central)}")


def rotation(p, theta):
    s = 1 / math.sqrt(1 - abs(p) ** 2)
    t = np.array([[s, p * s], [np.conj(p) * s, s]])
    r0 = np.array([[cmath.exp(1j * theta / 2), 0], [0, cmath.exp(-1j * theta / 2)]])
    return t @ r0 @ np.linalg.inv(t)


def geometry_values():
    for q, r in [(3, 7), (3, 13), (3, 19), (5, 7)]:
        right, aq, ar = math.pi / 2, math.pi / q, math.pi / r
        A = math.acosh(math.cos(ar) / math.sin(aq))
        B = math.acosh(math.cos(aq) / math.sin(ar))
        C = math.acosh((math.cos(aq) * math.cos(ar)) / (math.sin(aq) * math.sin(ar)))
        gens = {
            "a": rotation(0, math.pi),
            "b": rotation(1j * math.tanh(A / 2), 2 * math.pi / q),
            "c": rotation(math.tanh(B / 2), 2 * math.pi / r),
        }

        def evaluate(word):
            m = np.eye(2, dtype=complex)
            for gen, e in word:
                x = np.linalg.matrix_power(gens[gen] if e > 0 else np.linalg.inv(gens[gen]), abs(e))
                m = x @ m
            return m

        def length(m):
            t = abs((m[0, 0] + m[1, 1]).real)
            return 2 * math.acosh(t / 2)

        h, k = (q + 1) // 2, (r + 1) // 2
        y = evaluate([("c", k), ("b", h), ("a", 1), ("b", -h), ("c", -k), ("a", 1)])
        mirror = evaluate([("c", -k), ("b", -h), ("a", 1), ("b", h), ("c", k), ("a", 1)])
        print(f"geometry {q} {r} cosh_a = {math.cosh(A)!r} a = {A!r} 2(A+B+C) = {2 * (A + B + C)!r}")
        print(f"geometry {q} {r} y_length = {length(y)!r} y_axis_dev = {float(max(abs(y[0, 0].imag), abs(y[0, 1].imag)))!r}")
        print(f"geometry {q} {r} mirror_length = {length(mirror)!r}")


if __name__ == "__main__":
    geometry_values()
    if "--geometry-only" not in sys.argv:
        group_values()
