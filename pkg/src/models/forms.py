"""
Harmonia Form Models
This module contains the sparse exact-coefficient ternary forms and their arithmetic.

Forms are immutable: every operation returns a new canonical form (no zero
coefficients stored, every monomial of the declared degree).
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, NamedTuple, Sequence, Tuple, Union

from src.errors import DegreeMismatchError, FamilyMismatchError, FormError

# Initialize logger
logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]

_UNITS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


class VariableFamily(str, Enum):
    """The two variable families: coordinates and dual coordinates."""
    PRIMAL = "primal"  # x, y, z
    DUAL = "dual"      # u, v, w

    @property
    def variables(self) -> Tuple[str, str, str]:
        return ("x", "y", "z") if self is VariableFamily.PRIMAL else ("u", "v", "w")

    @property
    def other(self) -> "VariableFamily":
        return VariableFamily.DUAL if self is VariableFamily.PRIMAL else VariableFamily.PRIMAL


class Monomial(NamedTuple):
    """Exponent triple (i, j, k) of x^i y^j z^k (or u^i v^j w^k)."""
    i: int
    j: int
    k: int

    @property
    def degree(self) -> int:
        return self.i + self.j + self.k

    def times(self, other: "Monomial") -> "Monomial":
        return Monomial(self.i + other.i, self.j + other.j, self.k + other.k)

    @classmethod
    def of(cls, exponents: Sequence[int]) -> "Monomial":
        i, j, k = exponents
        if min(i, j, k) < 0:
            raise FormError(f"Negative exponent in monomial {tuple(exponents)}")
        return cls(i, j, k)


class LaurentMonomial(NamedTuple):
    """Exponent triple that may carry negative entries."""
    a: int
    b: int
    c: int

    @property
    def is_monomial(self) -> bool:
        return min(self) >= 0

    def as_monomial(self) -> Monomial:
        if not self.is_monomial:
            raise FormError(f"{tuple(self)} has a negative exponent")
        return Monomial(*self)


def graded_lex_key(m: Monomial) -> Tuple[int, int, int, int]:
    """Sort key of the graded-lex order with x > y > z (larger key = larger monomial)."""
    return (m.degree, m.i, m.j, m.k)


@lru_cache(maxsize=None)
def monomials_of_degree(n: int) -> Tuple[Monomial, ...]:
    """All C(n+2, 2) monomials of degree n, in descending graded-lex order."""
    if n < 0:
        raise FormError(f"Degree must be non-negative, got {n}")
    return tuple(
        Monomial(i, j, n - i - j)
        for i in range(n, -1, -1)
        for j in range(n - i, -1, -1)
    )


def complement_monomial(m1: Monomial, m2: Monomial, n: int) -> LaurentMonomial:
    """The Laurent monomial (xyz)^n / (m1 m2)."""
    if m1.degree != n or m2.degree != n:
        raise DegreeMismatchError(f"Monomials {tuple(m1)}, {tuple(m2)} are not both of degree {n}")
    return LaurentMonomial(n - m1.i - m2.i, n - m1.j - m2.j, n - m1.k - m2.k)


def _as_fraction(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise FormError(f"Coefficients must be exact rationals, got {type(value).__name__}")


def format_monomial(exponents: Sequence[int], names: Sequence[str]) -> str:
    """Render a monomial as "x^2*y"; the empty monomial is ""."""
    factors = []
    for name, e in zip(names, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_terms(terms: Iterable[Tuple[Sequence[int], Fraction]], names: Sequence[str]) -> str:
    """
    Render (exponents, coefficient) terms, already in display order.

    Args:
        terms: The terms, highest first
        names: Variable names matching the exponent positions

    Returns:
        The canonical text, "0" for no terms
    """
    out = []
    for index, (exponents, c) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        magnitude = -c if c < 0 else c
        body = format_monomial(exponents, names)
        if not body:
            text = format_coefficient(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{format_coefficient(magnitude)}*{body}"
        if index == 0:
            out.append(f"-{text}" if sign == "-" else text)
        else:
            out.append(f" {sign} {text}")
    return "".join(out) if out else "0"


@dataclass(frozen=True)
class TernaryForm:
    """A homogeneous ternary form with exact rational coefficients."""
    family: VariableFamily
    degree: int
    coeffs: Mapping[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.degree < 0:
            raise FormError(f"Degree must be non-negative, got {self.degree}")
        clean: Dict[Monomial, Fraction] = {}
        for m, c in self.coeffs.items():
            m = Monomial.of(m)
            if m.degree != self.degree:
                raise DegreeMismatchError(
                    f"Monomial {tuple(m)} has degree {m.degree}, form has degree {self.degree}"
                )
            c = _as_fraction(c)
            if c:
                clean[m] = c
        object.__setattr__(self, "coeffs", MappingProxyType(clean))

    def __hash__(self) -> int:
        return hash((self.family, self.degree, frozenset(self.coeffs.items())))

    # ---- constructors ----

    @classmethod
    def zero(cls, degree: int, family: VariableFamily = VariableFamily.PRIMAL) -> "TernaryForm":
        return cls(family, degree, {})

    @classmethod
    def from_monomial(cls, m: Sequence[int], coefficient: Rational = 1,
                      family: VariableFamily = VariableFamily.PRIMAL) -> "TernaryForm":
        m = Monomial.of(m)
        return cls(family, m.degree, {m: coefficient})

    # ---- access ----

    def coefficient(self, m: Sequence[int]) -> Fraction:
        return self.coeffs.get(Monomial(*m), Fraction(0))

    def terms(self) -> Tuple[Tuple[Monomial, Fraction], ...]:
        """Terms in descending graded-lex order."""
        return tuple(sorted(self.coeffs.items(), key=lambda t: graded_lex_key(t[0]), reverse=True))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def vector(self) -> Tuple[Fraction, ...]:
        """Coefficients over monomials_of_degree(degree)."""
        return tuple(self.coefficient(m) for m in monomials_of_degree(self.degree))

    def reinterpret(self, family: VariableFamily) -> "TernaryForm":
        """The same coefficients read in another variable family."""
        return TernaryForm(family, self.degree, dict(self.coeffs))

    # ---- arithmetic ----

    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        return add(self, other)

    def __neg__(self) -> "TernaryForm":
        return scale(-1, self)

    def __sub__(self, other: "TernaryForm") -> "TernaryForm":
        return add(self, scale(-1, other))

    def __rmul__(self, c: Rational) -> "TernaryForm":
        return scale(c, self)

    def __str__(self) -> str:
        return format_terms(self.terms(), self.family.variables)

    def __repr__(self) -> str:
        return f"TernaryForm({self.family.value}, {self.degree}, {str(self)!r})"


def _check_compatible(f: TernaryForm, g: TernaryForm) -> None:
    if f.family is not g.family:
        raise FamilyMismatchError(f"Cannot combine {f.family.value} and {g.family.value} forms")
    if f.degree != g.degree:
        raise DegreeMismatchError(f"Cannot combine forms of degree {f.degree} and {g.degree}")


def add(f: TernaryForm, g: TernaryForm) -> TernaryForm:
    """Coefficientwise sum of two forms of the same family and degree."""
    _check_compatible(f, g)
    coeffs = dict(f.coeffs)
    for m, c in g.coeffs.items():
        coeffs[m] = coeffs.get(m, 0) + c
    return TernaryForm(f.family, f.degree, coeffs)


def scale(c: Rational, f: TernaryForm) -> TernaryForm:
    """Multiply every coefficient by c."""
    c = _as_fraction(c)
    if not c:
        return TernaryForm.zero(f.degree, f.family)
    return TernaryForm(f.family, f.degree, {m: c * a for m, a in f.coeffs.items()})


def linear_combination(coefficients: Sequence[Rational], forms: Sequence[TernaryForm]) -> TernaryForm:
    """Σ c_i f_i over forms sharing family and degree."""
    if not forms:
        raise FormError("Empty linear combination")
    total = TernaryForm.zero(forms[0].degree, forms[0].family)
    for c, f in zip(coefficients, forms):
        total = add(total, scale(c, f))
    return total


def multiply(f: TernaryForm, g: TernaryForm) -> TernaryForm:
    """Product of two forms of the same family."""
    if f.family is not g.family:
        raise FamilyMismatchError(f"Cannot multiply {f.family.value} and {g.family.value} forms")
    coeffs: Dict[Monomial, Fraction] = {}
    for m1, c1 in f.coeffs.items():
        for m2, c2 in g.coeffs.items():
            m = m1.times(m2)
            coeffs[m] = coeffs.get(m, 0) + c1 * c2
    return TernaryForm(f.family, f.degree + g.degree, coeffs)


def power(f: TernaryForm, e: int) -> TernaryForm:
    result = TernaryForm(f.family, 0, {Monomial(0, 0, 0): 1})
    for _ in range(e):
        result = multiply(result, f)
    return result


def substitute(q: TernaryForm, matrix: Sequence[Sequence[Rational]]) -> TernaryForm:
    """
    The linear substitution action (q∘g)(x) = q(g·x).

    Args:
        q: The form to transform
        matrix: 3×3 exact matrix g; variable r becomes Σ_c g[r][c]·(variable c)

    Returns:
        The transformed form, of the same family and degree
    """
    if len(matrix) != 3 or any(len(row) != 3 for row in matrix):
        raise FormError("Substitution needs a 3×3 matrix")
    images = [
        TernaryForm(q.family, 1, {Monomial.of(unit): matrix[r][c] for c, unit in enumerate(_UNITS)})
        for r in range(3)
    ]
    powers = [[power(image, e) for e in range(q.degree + 1)] for image in images]
    result = TernaryForm.zero(q.degree, q.family)
    for m, c in q.coeffs.items():
        term = multiply(multiply(powers[0][m.i], powers[1][m.j]), powers[2][m.k])
        result = add(result, scale(c, term))
    return result

