#!/usr/bin/env python3
"""Regenerate tests/data/reference_root_numbers.csv with PARI/GP.

Requires cypari2. Every row is an elliptic curve y^2 = x^3 + A x + B obtained
by twisting a base curve; W is PARI's global root number (ellrootno), W2/W3
are its local root numbers at 2 and 3. The C++ suite uses these rows as an
oracle that shares no code with the library.
"""
import random
import sys
from math import gcd

import cypari2

pari = cypari2.Pari()


def val(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def powerfree(t, k):
    if t == 0:
        return False
    n, p = abs(t), 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e >= k:
            return False
        p += 1
    return True


def local(A, B):
    e = pari.ellinit([A, B])
    return (int(pari.ellrootno(e)), int(pari.ellrootno(e, 2)),
            int(pari.ellrootno(e, 3)))


def samples(rng, k, count):
    out = set(range(-40, 41))
    out |= {2 ** i * 3 ** j * s for i in range(k) for j in range(k) for s in (1, -1, 5, -7)}
    while len(out) < count:
        out.add(rng.randint(-10 ** 6, 10 ** 6))
    return sorted(t for t in out if powerfree(t, k))


def main(path):
    rng = random.Random(20240611)
    rows = []
    for b in (1, 6, 16, -432, 7, 2, -3):
        for t in samples(rng, 6, 160):
            rows.append(("sextic", 0, b, t) + local(0, b * t))
    for a in (1, -1, -49, 2, 3, -12):
        for t in samples(rng, 4, 160):
            rows.append(("quartic", a, 0, t) + local(a * t, 0))
    quad = [
        # special at both 2 and 3
        (-91, 182), (-91, -182), (-35, -98), (-108, -1890), (-324, -486),
        (-144, -1872), (-363, -934), (-364, -1616), (-288, -432),
        # special at 2 and 3 with multiplicative / I_m* / III places
        (-200, -398), (-200, -250), (-176, -242), (-140, -350), (-100, -250),
        # not special at 2 or 3
        (-1, 1), (5, -7), (-3, 5), (-7, 10), (2, 3), (-43, 166),
    ]
    for a, b in quad:
        for t in samples(rng, 2, 120):
            rows.append(("quadratic", a, b, t) + local(a * t * t, b * t ** 3))
    with open(path, "w") as f:
        f.write("family,a,b,t,W,W2,W3\n")
        for r in rows:
            f.write(",".join(str(x) for x in r) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/reference_root_numbers.csv")
