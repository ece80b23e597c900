"""
Harmonia Apolarity
This module contains the polar pairing, the bilinear map J_n in its two
constructions, the harmonic contravariant h_n, the trilinear form t_n and the
invariant A_n.

J_n(q1, q2) substitutes the operators
    X = w∂y - v∂z,   Y = u∂z - w∂x,   Z = v∂x - u∂y
into q1 and applies the result to q2. The combinatorial construction reads
the coefficient of every monomial pair off a closed binomial sum instead.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from src.engine.combinatorics import binomial, monomial_factorial
from src.errors import DegreeMismatchError, FamilyMismatchError, FormError
from src.models.forms import (
    Monomial, TernaryForm, VariableFamily, complement_monomial, monomials_of_degree,
)

# Initialize logger
logger = logging.getLogger(__name__)

PRIMAL = VariableFamily.PRIMAL
DUAL = VariableFamily.DUAL

# Six-variable exponents (x, y, z, u, v, w) for the operator expansion
_Mixed = Tuple[int, int, int, int, int, int]

# Each operator is a list of (derivative index, dual index, sign):
# the term contributes sign·(dual)·∂(primal).
_OPERATORS = (
    ((1, 5, 1), (2, 4, -1)),   # X = w∂y - v∂z
    ((2, 3, 1), (0, 5, -1)),   # Y = u∂z - w∂x
    ((0, 4, 1), (1, 3, -1)),   # Z = v∂x - u∂y
)


def _require(f: TernaryForm, family: VariableFamily, role: str) -> None:
    if f.family is not family:
        raise FamilyMismatchError(f"{role} must be a {family.value} form, got {f.family.value}")


def _require_same_degree(*forms: TernaryForm) -> int:
    degrees = {f.degree for f in forms}
    if len(degrees) != 1:
        raise DegreeMismatchError(f"Forms must share a degree, got {sorted(degrees)}")
    return degrees.pop()


def polar_pair(p: TernaryForm, q: TernaryForm) -> Fraction:
    """
    The polar pairing ⟨p, q⟩ of a dual form with a primal form.

    ⟨u^a v^b w^c, x^a y^b z^c⟩ = a!·b!·c!, and distinct monomials pair to 0.
    """
    _require(p, DUAL, "First argument")
    _require(q, PRIMAL, "Second argument")
    _require_same_degree(p, q)
    total = Fraction(0)
    small, large = (p, q) if len(p.coeffs) <= len(q.coeffs) else (q, p)
    for m, c in small.coeffs.items():
        other = large.coeffs.get(m)
        if other:
            total += c * other * monomial_factorial(m)
    return total


@lru_cache(maxsize=None)
def _coco(m1: Monomial, m2: Monomial, n: int) -> int:
    a3, b3, c3 = complement_monomial(m1, m2, n)
    if min(a3, b3, c3) < 0:
        return 0
    a1, b1, c1 = m1
    a2, b2, c2 = m2
    total = 0
    for alpha in range(min(a2, c1) + 1):
        term = binomial(a2, alpha) * binomial(b2, c1 - alpha) * binomial(c2, b3 - alpha)
        total += -term if alpha % 2 else term
    total *= monomial_factorial(m1)
    return -total if (a2 + b3 + c1) % 2 else total


def coco(m1, m2, n: int) -> int:
    """
    The integer ⟨m1, m2⟩: the coefficient of J_n(m1, m2) at the complement monomial.

    Args:
        m1: Exponent triple of degree n
        m2: Exponent triple of degree n
        n: The common degree

    Returns:
        The signed binomial sum; 0 when (xyz)^n/(m1·m2) is not a monomial
    """
    return _coco(Monomial.of(m1), Monomial.of(m2), n)


def _apply_operator(poly: Dict[_Mixed, int], operator) -> Dict[_Mixed, int]:
    result: Dict[_Mixed, int] = {}
    for e, c in poly.items():
        for derivative, dual, sign in operator:
            k = e[derivative]
            if not k:
                continue
            image = list(e)
            image[derivative] -= 1
            image[dual] += 1
            image = tuple(image)
            value = result.get(image, 0) + sign * k * c
            if value:
                result[image] = value
            else:
                result.pop(image, None)
    return result


def jn_operator(q1: TernaryForm, q2: TernaryForm) -> TernaryForm:
    """
    J_n(q1, q2) by applying the differential operator q1(X, Y, Z) to q2.

    Kept as the reference construction for jn_combinatorial.
    """
    _require(q1, PRIMAL, "First argument")
    _require(q2, PRIMAL, "Second argument")
    n = _require_same_degree(q1, q2)
    lifted = {(m.i, m.j, m.k, 0, 0, 0): c for m, c in q2.coeffs.items()}
    coeffs: Dict[Monomial, Fraction] = {}
    for m1, c1 in q1.terms():
        poly = lifted
        for operator, times in zip(_OPERATORS, m1):
            for _ in range(times):
                poly = _apply_operator(poly, operator)
        for e, c in poly.items():
            # all primal exponents are used up after n derivatives
            m = Monomial(e[3], e[4], e[5])
            coeffs[m] = coeffs.get(m, 0) + c1 * c
    return TernaryForm(DUAL, n, coeffs)


def jn_combinatorial(q1: TernaryForm, q2: TernaryForm) -> TernaryForm:
    """
    J_n(q1, q2) as the bilinear extension of (m1, m2) ↦ coco(m1, m2)·u^a3 v^b3 w^c3.

    Args:
        q1: Primal form of degree n
        q2: Primal form of degree n

    Returns:
        The dual form of degree n
    """
    _require(q1, PRIMAL, "First argument")
    _require(q2, PRIMAL, "Second argument")
    n = _require_same_degree(q1, q2)
    coeffs: Dict[Monomial, Fraction] = {}
    for m1, c1 in q1.coeffs.items():
        for m2, c2 in q2.coeffs.items():
            value = _coco(m1, m2, n)
            if not value:
                continue
            m3 = complement_monomial(m1, m2, n).as_monomial()
            coeffs[m3] = coeffs.get(m3, 0) + value * c1 * c2
    return TernaryForm(DUAL, n, coeffs)


jn = jn_combinatorial


def harmonic(q: TernaryForm) -> TernaryForm:
    """The harmonic contravariant h_n(q) = J_n(q, q); zero for odd n."""
    _require(q, PRIMAL, "Argument")
    if q.degree % 2:
        return TernaryForm.zero(q.degree, DUAL)
    return jn_combinatorial(q, q)


def trilinear(q1: TernaryForm, q2: TernaryForm, q3: TernaryForm) -> Fraction:
    """t_n(q1, q2, q3) = ⟨J_n(q1, q2), q3⟩."""
    _require(q3, PRIMAL, "Third argument")
    _require_same_degree(q1, q2, q3)
    return polar_pair(jn_combinatorial(q1, q2), q3)


def invariant_a(q: TernaryForm) -> Fraction:
    """A_n(q) = t_n(q, q, q) = ⟨h_n(q), q⟩."""
    return polar_pair(harmonic(q), q)


def dual_conic(q: TernaryForm) -> TernaryForm:
    """
    The dual conic u^T adj(A) u of the conic q = x^T A x.

    h_2 sends a conic to four times its dual conic.
    """
    _require(q, PRIMAL, "Argument")
    if q.degree != 2:
        raise FormError(f"dual_conic needs a conic, got degree {q.degree}")
    a = [[Fraction(0)] * 3 for _ in range(3)]
    for m, c in q.coeffs.items():
        indices = [r for r in range(3) for _ in range(m[r])]
        r, s = indices
        if r == s:
            a[r][r] = c
        else:
            a[r][s] = a[s][r] = c / 2

    def cofactor(r: int, s: int) -> Fraction:
        rows = [i for i in range(3) if i != r]
        cols = [j for j in range(3) if j != s]
        minor = a[rows[0]][cols[0]] * a[rows[1]][cols[1]] - a[rows[0]][cols[1]] * a[rows[1]][cols[0]]
        return minor if (r + s) % 2 == 0 else -minor

    coeffs: Dict[Monomial, Fraction] = {}
    for m in monomials_of_degree(2):
        indices = [r for r in range(3) for _ in range(m[r])]
        r, s = indices
        # adj(A)[r][s] = cofactor(s, r); A is symmetric so adj(A) is too
        coeffs[m] = cofactor(r, s) if r == s else 2 * cofactor(r, s)
    return TernaryForm(DUAL, 2, coeffs)
