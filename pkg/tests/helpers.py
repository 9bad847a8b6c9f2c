"""Shared test utilities: small associative algebras and basis changes."""

from fractions import Fraction

from algforge.linalg import rref
from algforge.systems import BinaryAlgebra


def upper_triangular_2x2() -> BinaryAlgebra:
    """The 3-dimensional algebra of upper-triangular 2x2 matrices."""
    prod = {
        (0, 0): [1, 0, 0], (0, 1): [0, 1, 0],
        (1, 2): [0, 1, 0], (2, 2): [0, 0, 1],
    }
    return BinaryAlgebra(
        3, ["p", "q", "r"], {k: list(map(Fraction, v)) for k, v in prod.items()}
    )


def full_2x2_matrices() -> BinaryAlgebra:
    """The 4-dimensional full matrix algebra on e11, e12, e21, e22."""
    names = ["m11", "m12", "m21", "m22"]
    prod = {}
    idx = {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                vec = [Fraction(0)] * 4
                vec[idx[(i, l)]] = Fraction(1)
                prod[(a, b)] = vec
    return BinaryAlgebra(4, names, prod)


def invert(mat):
    n = len(mat)
    aug = [
        list(row) + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(mat)
    ]
    red, pivots = rref(aug)
    assert pivots == list(range(n))
    return [row[n:] for row in red]


def random_basis_change(algebra: BinaryAlgebra, rng) -> BinaryAlgebra:
    """Conjugate the structure constants by a random invertible matrix."""
    n = algebra.dim
    while True:
        mat = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        _, pivots = rref(mat)
        if len(pivots) == n:
            break
    inv = invert(mat)
    new = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            w = algebra.product(mat[i], mat[j])
            new[i][j] = [
                sum(w[k] * inv[k][t] for k in range(n)) for t in range(n)
            ]
    return BinaryAlgebra(n, algebra.basis, new)
