"""
Harmonia Jacobian Invariant
This module contains the symmetric matrix R_n(q) with entries t_n(q, m1, m2),
the constant κ_n and the invariant ρ_n = det R_n / κ_n.

Rows and columns are indexed by monomials_of_degree(n): graded-lex descending,
x > y > z.
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple, Union

import numpy as np
from sympy import factorint

from src.engine import linalg
from src.engine.apolarity import harmonic, jn_combinatorial
from src.engine.combinatorics import monomial_factorial
from src.errors import FormError, InvariantViolation, ParseError
from src.models.forms import (
    Monomial, TernaryForm, VariableFamily, add, monomials_of_degree, scale,
)
from src.models.reports import RhoReport, exact

# Initialize logger
logger = logging.getLogger(__name__)

# t-linear coefficient of h_n(q + t·d) over the polar image of R_n(q)·d
DIFFERENTIAL_CONSTANT = 2


@dataclass(frozen=True, eq=False)
class RnMatrix:
    """R_n(q): entry (m1, m2) = t_n(q, m1, m2)."""
    n: int
    monomials: Tuple[Monomial, ...]
    entries: np.ndarray

    def entry(self, m1, m2) -> Fraction:
        index = {m: i for i, m in enumerate(self.monomials)}
        return self.entries[index[Monomial(*m1)], index[Monomial(*m2)]]

    @property
    def size(self) -> int:
        return len(self.monomials)

    def is_symmetric(self) -> bool:
        return bool(np.all(self.entries == self.entries.T))

    def det(self) -> Fraction:
        return linalg.det(self.entries)

    def apply(self, direction: TernaryForm) -> TernaryForm:
        """
        R_n(q)·d read as a dual form through the polar pairing.

        The coefficient at m is (Σ_m1 R[m1, m]·d_m1) / m!, which is J_n(q, d).
        """
        if direction.degree != self.n:
            raise FormError(f"Direction of degree {direction.degree} for R_{self.n}")
        vector = np.array(direction.vector(), dtype=object)
        image = vector.dot(self.entries)
        coeffs = {
            m: Fraction(value) / monomial_factorial(m)
            for m, value in zip(self.monomials, image)
        }
        return TernaryForm(VariableFamily.DUAL, self.n, coeffs)


def rn_matrix(q: TernaryForm) -> RnMatrix:
    """
    Build R_n(q) for a primal form of even degree.

    Raises:
        FormError: For odd n, where R_n vanishes identically
        InvariantViolation: If the matrix comes out non-symmetric
    """
    if q.family is not VariableFamily.PRIMAL:
        raise FormError("R_n is defined on primal forms")
    n = q.degree
    if n % 2:
        raise FormError(f"R_n vanishes identically for odd n = {n}")
    monomials = monomials_of_degree(n)
    size = len(monomials)
    entries = np.empty((size, size), dtype=object)
    for r, m1 in enumerate(monomials):
        image = jn_combinatorial(q, TernaryForm.from_monomial(m1))
        for c, m2 in enumerate(monomials):
            entries[r, c] = image.coefficient(m2) * monomial_factorial(m2)
    matrix = RnMatrix(n, monomials, entries)
    if not matrix.is_symmetric():
        raise InvariantViolation(f"R_{n} is not symmetric at {q}")
    logger.debug(f"Built R_{n} of size {size}")
    return matrix


def kappa(n: int) -> int:
    """κ_n = Π i!·j!·k! over the monomials of degree n."""
    if n < 0:
        raise FormError(f"Degree must be non-negative, got {n}")
    result = 1
    for m in monomials_of_degree(n):
        result *= monomial_factorial(m)
    return result


def rho(q: TernaryForm) -> Fraction:
    """ρ_n(q) = det R_n(q) / κ_n, exactly."""
    value = rn_matrix(q).det() / kappa(q.degree)
    logger.info(f"ρ_{q.degree}({q}) = {value}")
    return value


def differential_check(q: TernaryForm, direction: TernaryForm) -> Tuple[TernaryForm, TernaryForm]:
    """
    Compare the differential of h_n with R_n(q).

    Returns:
        (linear coefficient in t of h_n(q + t·d), polar image of R_n(q)·d); the
        first is DIFFERENTIAL_CONSTANT times the second

    Raises:
        InvariantViolation: If the two computations disagree
    """
    if direction.family is not VariableFamily.PRIMAL or direction.degree != q.degree:
        raise FormError("The direction must be a primal form of the same degree as q")
    # h is quadratic, so the odd part in t is exactly the linear term
    plus = harmonic(add(q, direction))
    minus = harmonic(add(q, scale(-1, direction)))
    linear = scale(Fraction(1, 2), add(plus, scale(-1, minus)))
    image = rn_matrix(q).apply(direction)
    if linear != scale(DIFFERENTIAL_CONSTANT, image):
        raise InvariantViolation(
            f"d h_{q.degree} at {q} along {direction} is {linear}, R_n image is {image}"
        )
    return linear, image


# ---- factorizations ----

def factorize(value: Union[int, Fraction]) -> Dict[int, int]:
    """
    Prime factorization of a nonzero rational: numerator primes get positive
    exponents, denominator primes negative ones, and -1 marks the sign.
    """
    value = Fraction(value)
    if not value:
        raise FormError("Cannot factor 0")
    factors = dict(factorint(value.numerator))
    for p, e in factorint(value.denominator).items():
        factors[p] = -e
    factors.pop(1, None)
    return dict(sorted(factors.items()))


def format_factorization(factors: Dict[int, int]) -> str:
    """Render a factorization as "2^25 * 3^15"."""
    parts = []
    for p, e in sorted(factors.items()):
        if p == -1:
            continue
        parts.append(str(p) if e == 1 else f"{p}^{e}")
    text = " * ".join(parts) if parts else "1"
    return f"-{text}" if factors.get(-1) else text


_FACTOR = re.compile(r"\s*(\d+)(?:\^(-?\d+))?\s*")


def parse_factorization(text: str) -> Fraction:
    """Inverse of format_factorization."""
    body = text.strip()
    sign = 1
    if body.startswith("-"):
        sign, body = -1, body[1:]
    value = Fraction(1)
    position = len(text) - len(body)
    for part in body.split("*"):
        match = _FACTOR.fullmatch(part)
        if not match:
            raise ParseError("Malformed factor", text, position)
        base, exponent = int(match.group(1)), int(match.group(2) or 1)
        value *= Fraction(base) ** exponent
        position += len(part) + 1
    return sign * value


def rho_report(q: TernaryForm, factor: bool = True) -> RhoReport:
    value = rho(q)
    factorization = None
    if factor and value:
        factorization = {str(p): e for p, e in factorize(value).items()}
    return RhoReport(n=q.degree, form=str(q), rho=exact(value), factorization=factorization)
