#!/usr/bin/env python3
"""Regenerate the bundled b-file fixtures under ../fixtures.

The terms are produced with sympy and plain Python sums, independently of the
Rust generators they are used to check. Each fixture is also checked against
the leading terms published on the OEIS before it is written.
"""

import os
import sys
from math import comb

from sympy import (bell, bernoulli, catalan, divisor_sigma, euler, fibonacci,
                   lucas, subfactorial)
from sympy.functions.combinatorial.numbers import partition
from sympy.functions.combinatorial.numbers import stirling

TERMS = 60
OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "fixtures")


def cb(n):
    return comb(2 * n, n)


def apery(n):
    return sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))


def apery2(n):
    return sum(comb(n, k) ** 2 * comb(n + k, k) for k in range(n + 1))


def delannoy(n):
    return sum(comb(n, k) * comb(n + k, k) for k in range(n + 1))


def franel(n, r):
    return sum(comb(n, k) ** r for k in range(n + 1))


def dsum(n, r, s, t):
    return sum(comb(n, k) ** r * cb(k) ** s * cb(n - k) ** t for k in range(n + 1))


def clf(n):
    return 2 ** n * sum(comb(n, 2 * k) * cb(k) ** 2 * 4 ** (n - 2 * k) for k in range(n // 2 + 1))


def trinomial(n):
    # coefficient of x^n in (1 + x + x^2)^n, by repeated convolution
    poly = [1]
    for _ in range(n):
        nxt = [0] * (len(poly) + 2)
        for i, c in enumerate(poly):
            nxt[i] += c
            nxt[i + 1] += c
            nxt[i + 2] += c
        poly = nxt
    return poly[n]


def motzkin(n):
    return sum(comb(n, 2 * k) * int(catalan(k)) for k in range(n // 2 + 1))


def schroder(n):
    return sum(comb(n + k, 2 * k) * int(catalan(k)) for k in range(n + 1))


def little_schroder(n):
    if n == 0:
        return 1
    return sum(comb(n, k) * comb(n, k - 1) // n * 2 ** (k - 1) for k in range(1, n + 1))


def quadrinomial(n):
    return sum(comb(n, k) * comb(n, 2 * k) for k in range(n // 2 + 1))


def genocchi(n):
    # G_n = 2(1 - 2^n) B_n with the B_1 = -1/2 convention
    if n == 1:
        return 1
    return int(2 * (1 - 2 ** n) * bernoulli(n))


def bern_div(n):
    return bernoulli(2 * n) / (2 * n)


FIXTURES = {
    # a-number: (offset, term function, published leading terms)
    "A000032": (0, lambda n: int(lucas(n)), [2, 1, 3, 4, 7, 11, 18, 29]),
    "A000041": (0, lambda n: int(partition(n)), [1, 1, 2, 3, 5, 7, 11, 15, 22]),
    "A000045": (0, lambda n: int(fibonacci(n)), [0, 1, 1, 2, 3, 5, 8, 13]),
    "A000079": (0, lambda n: 2 ** n, [1, 2, 4, 8, 16]),
    "A000108": (0, lambda n: int(catalan(n)), [1, 1, 2, 5, 14, 42, 132]),
    "A000110": (0, lambda n: int(bell(n)), [1, 1, 2, 5, 15, 52, 203]),
    "A000166": (0, lambda n: int(subfactorial(n)), [1, 0, 1, 2, 9, 44, 265]),
    "A000172": (0, lambda n: franel(n, 3), [1, 2, 10, 56, 346, 2252]),
    "A000203": (1, lambda n: int(divisor_sigma(n, 1)), [1, 3, 4, 7, 6, 12, 8, 15]),
    "A000225": (0, lambda n: 2 ** n - 1, [0, 1, 3, 7, 15, 31]),
    "A000244": (0, lambda n: 3 ** n, [1, 3, 9, 27, 81]),
    "A000254": (0, lambda n: int(stirling(n + 1, 2, kind=1)), [0, 1, 3, 11, 50, 274, 1764]),
    "A000364": (0, lambda n: abs(int(euler(2 * n))), [1, 1, 5, 61, 1385, 50521]),
    "A000984": (0, cb, [1, 2, 6, 20, 70, 252]),
    "A001003": (0, little_schroder, [1, 1, 3, 11, 45, 197, 903]),
    "A001006": (0, motzkin, [1, 1, 2, 4, 9, 21, 51, 127]),
    "A001067": (1, lambda n: int(bern_div(n).p), [1, -1, 1, -1, 1, -691, 1, -3617]),
    "A001157": (1, lambda n: int(divisor_sigma(n, 2)), [1, 5, 10, 21, 26, 50]),
    "A001158": (1, lambda n: int(divisor_sigma(n, 3)), [1, 9, 28, 73, 126, 252]),
    "A001850": (0, delannoy, [1, 3, 13, 63, 321, 1683]),
    "A002426": (0, trinomial, [1, 1, 3, 7, 19, 51, 141]),
    "A002445": (0, lambda n: int(bernoulli(2 * n).q), [1, 6, 30, 42, 30, 66, 2730]),
    "A002893": (0, lambda n: dsum(n, 2, 1, 0), [1, 3, 15, 93, 639, 4653]),
    "A002895": (0, lambda n: dsum(n, 2, 1, 1), [1, 4, 28, 256, 2716, 31504]),
    "A005258": (0, apery2, [1, 3, 19, 147, 1251, 11253]),
    "A005259": (0, apery, [1, 5, 73, 1445, 33001, 819005]),
    "A005260": (0, lambda n: franel(n, 4), [1, 2, 18, 164, 1810, 21252]),
    "A005725": (0, quadrinomial, [1, 1, 3, 10, 31, 101, 336]),
    "A006318": (0, schroder, [1, 2, 6, 22, 90, 394, 1806]),
    "A006953": (1, lambda n: int(bern_div(n).q), [12, 120, 252, 240, 132, 32760]),
    "A053175": (0, clf, [1, 8, 80, 896, 10816, 137728]),
    "A054783": (0, lambda n: int(fibonacci(n * n)), [0, 1, 3, 34, 987, 75025]),
    "A062510": (0, lambda n: abs((-2) ** n - 1), [0, 3, 3, 9, 15, 33, 63]),
    "A081085": (0, lambda n: dsum(n, 1, 1, 1), [1, 4, 20, 112, 676, 4304]),
    "A122045": (0, lambda n: int(euler(n)), [1, 0, -1, 0, 5, 0, -61]),
    "A226158": (0, genocchi, [0, 1, -1, 0, 1, 0, -3, 0, 17]),
}

# entries indexed at 2n need twice as many terms
LONG = {"A226158": 2 * TERMS, "A122045": 2 * TERMS}


def main():
    os.makedirs(OUT, exist_ok=True)
    for anum, (offset, fn, head) in sorted(FIXTURES.items()):
        count = LONG.get(anum, TERMS)
        terms = [fn(n) for n in range(offset, offset + count)]
        if terms[: len(head)] != head:
            sys.exit(f"{anum}: leading terms {terms[:len(head)]} != published {head}")
        path = os.path.join(OUT, f"b{anum[1:]}.txt")
        with open(path, "w") as fh:
            fh.write(f"# {anum}: {count} terms from offset {offset}\n")
            for i, v in enumerate(terms):
                fh.write(f"{offset + i} {v}\n")
    print(f"wrote {len(FIXTURES)} fixtures to {os.path.normpath(OUT)}")


if __name__ == "__main__":
    main()
