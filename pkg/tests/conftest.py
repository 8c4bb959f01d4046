"""Shared test fixtures: independent oracles and exhaustive corpora."""

from itertools import product

import pytest

from plumbcalc.intmat import IntMatrix

# The even unimodular rank-8 positive definite form (chain of seven nodes
# with the eighth attached to the fifth).  Leading principal minors are
# 2,3,4,5,6,7,8,1: positive definite, determinant 1.
E8_ROWS = [
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, 0],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, -1],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, 0, 0, -1, 0, 0, 2],
]

HYPERBOLIC_PLANE_ROWS = [[0, 1], [1, 0]]


@pytest.fixture
def e8() -> IntMatrix:
    return IntMatrix.from_rows(E8_ROWS)


def cofactor_det(rows) -> int:
    """Independent determinant oracle: Laplace expansion along the first row."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j, head in enumerate(rows[0]):
        if head == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = head * cofactor_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def all_strings(max_len: int, lo: int, hi: int):
    """Every tuple of entries in [lo, hi] with length 1..max_len."""
    for n in range(1, max_len + 1):
        yield from product(range(lo, hi + 1), repeat=n)


def hyperbolic_strings(max_len: int, max_entry: int):
    """Strings with all entries >= 2 and at least one >= 3 (the hyperbolic
    normal forms), up to the given length and entry bound."""
    for s in all_strings(max_len, 2, max_entry):
        if any(x >= 3 for x in s):
            yield s


def family_parameter_space(max_k: int, max_x: int):
    """All (k, xs) with k <= max_k and every x_i <= max_x."""
    from plumbcalc.strings import FamilyParams

    for k in range(max_k + 1):
        for xs in product(range(max_x + 1), repeat=2 * k + 1):
            yield FamilyParams(k, xs)


def random_unimodular(rng, n: int, steps: int = 12) -> IntMatrix:
    """Random determinant +-1 matrix: a product of integer elementary
    row operations and sign flips applied to the identity."""
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n == 1:
            if rng.randrange(2):
                rows[0][0] = -rows[0][0]
            continue
        kind = rng.randrange(3)
        i, j = rng.sample(range(n), 2)
        if kind == 0:
            c = rng.choice([-2, -1, 1, 2])
            for col in range(n):
                rows[i][col] += c * rows[j][col]
        elif kind == 1:
            rows[i], rows[j] = rows[j], rows[i]
        else:
            rows[i] = [-x for x in rows[i]]
    return IntMatrix.from_rows(rows)
