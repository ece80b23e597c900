"""
Random inputs for the property tests.
"""
import random
from typing import List

from src.models.forms import TernaryForm, VariableFamily, monomials_of_degree


def random_form(rng: random.Random, n: int, family: VariableFamily = VariableFamily.PRIMAL,
                bound: int = 3) -> TernaryForm:
    """A form of degree n with integer coefficients in [-bound, bound]; never zero."""
    while True:
        coeffs = {m: rng.randint(-bound, bound) for m in monomials_of_degree(n)}
        form = TernaryForm(family, n, coeffs)
        if not form.is_zero:
            return form


def random_unimodular(rng: random.Random, steps: int = 6) -> List[List[int]]:
    """A product of elementary integer matrices, hence of determinant 1."""
    matrix = [[int(r == c) for c in range(3)] for r in range(3)]
    for _ in range(steps):
        r, c = rng.sample(range(3), 2)
        k = rng.choice([-2, -1, 1, 2])
        # row r += k·row c
        matrix[r] = [a + k * b for a, b in zip(matrix[r], matrix[c])]
    return matrix


PERMUTATIONS = (
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
    [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
    [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
    [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
    [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
)
