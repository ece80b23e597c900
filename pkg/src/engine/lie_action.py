"""
Harmonia Lie Action
Derivations of the polynomial ring acting on ternary forms, and the sl_3
invariance identity ⟨h_n(q), g·q⟩ = 0 with the linear constraints it yields.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from src.engine import linalg
from src.engine.apolarity import harmonic, polar_pair
from src.errors import FamilyMismatchError, FormError
from src.models.forms import (
    Monomial, Rational, TernaryForm, VariableFamily, format_terms, monomials_of_degree,
)

# Initialize logger
logger = logging.getLogger(__name__)

_NAMES = ("x", "y", "z")


@dataclass(frozen=True)
class Derivation:
    """
    A gl_3 derivation: entry (r, c) weights (variable r)·∂/∂(variable c).
    """
    matrix: Tuple[Tuple[int, int, int], ...]
    label: str = ""

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(rows) != 3 or any(len(row) != 3 for row in rows):
            raise FormError("A derivation needs a 3×3 matrix")
        object.__setattr__(self, "matrix", rows)
        if not self.label:
            object.__setattr__(self, "label", self._describe())

    @property
    def trace(self) -> int:
        return sum(self.matrix[i][i] for i in range(3))

    @property
    def is_traceless(self) -> bool:
        return self.trace == 0

    @classmethod
    def elementary(cls, r: int, c: int, label: str = "") -> "Derivation":
        """The derivation (variable r)·∂/∂(variable c)."""
        matrix = [[0] * 3 for _ in range(3)]
        matrix[r][c] = 1
        return cls(tuple(map(tuple, matrix)), label)

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.matrix, other.matrix)
        ))

    def __rmul__(self, c: int) -> "Derivation":
        return Derivation(tuple(tuple(c * a for a in row) for row in self.matrix))

    def _describe(self) -> str:
        parts = []
        for r in range(3):
            for c in range(3):
                e = self.matrix[r][c]
                if not e:
                    continue
                body = f"{_NAMES[r]}∂{_NAMES[c]}"
                magnitude = f"{abs(e)}" if abs(e) != 1 else ""
                sign = "-" if e < 0 else "+"
                parts.append((sign, f"{magnitude}{body}"))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return text + "".join(f"{sign}{body}" for sign, body in parts[1:])


def _diagonal(a: int, b: int, c: int, label: str) -> Derivation:
    return Derivation(((a, 0, 0), (0, b, 0), (0, 0, c)), label)


# Basis of sl_3 in a fixed order (test fixtures depend on it)
SL3_BASIS: Tuple[Derivation, ...] = (
    _diagonal(1, -1, 0, "x∂x-y∂y"),
    _diagonal(0, 1, -1, "y∂y-z∂z"),
    Derivation.elementary(1, 0, "y∂x"),
    Derivation.elementary(2, 0, "z∂x"),
    Derivation.elementary(0, 1, "x∂y"),
    Derivation.elementary(2, 1, "z∂y"),
    Derivation.elementary(0, 2, "x∂z"),
    Derivation.elementary(1, 2, "y∂z"),
)


def derivation_by_label(label: str) -> Derivation:
    for g in SL3_BASIS:
        if g.label == label:
            return g
    raise FormError(f"Unknown basis derivation {label!r}")


def apply_derivation(g: Derivation, q: TernaryForm) -> TernaryForm:
    """
    The action g·q = Σ g[r][c]·(variable r)·∂q/∂(variable c).

    Args:
        g: The derivation
        q: A primal form

    Returns:
        A primal form of the same degree
    """
    if q.family is not VariableFamily.PRIMAL:
        raise FamilyMismatchError("Derivations act on primal forms")
    coeffs: Dict[Monomial, Fraction] = {}
    for m, c in q.coeffs.items():
        for r in range(3):
            for col in range(3):
                weight = g.matrix[r][col]
                if not weight or not m[col]:
                    continue
                image = list(m)
                image[col] -= 1
                image[r] += 1
                image = Monomial(*image)
                coeffs[image] = coeffs.get(image, 0) + weight * m[col] * c
    return TernaryForm(q.family, q.degree, coeffs)


def check_lie_identity(q: TernaryForm, g: Derivation) -> Fraction:
    """
    Evaluate ⟨h_n(q), g·q⟩, which is exactly 0 for every traceless g.

    Raises:
        FormError: If g is not traceless
    """
    if not g.is_traceless:
        raise FormError(f"Derivation {g.label} has trace {g.trace}; the identity holds on sl_3 only")
    return polar_pair(harmonic(q), apply_derivation(g, q))


@dataclass(frozen=True)
class LinearFunctional:
    """A linear form in the coefficients a_ijk of degree-n primal forms."""
    label: str
    degree: int
    coefficients: Tuple[Fraction, ...]

    def evaluate(self, q: TernaryForm) -> Fraction:
        return sum((c * a for c, a in zip(self.coefficients, q.vector())), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __str__(self) -> str:
        named = [
            (c, f"a{m.i}{m.j}{m.k}")
            for m, c in zip(monomials_of_degree(self.degree), self.coefficients) if c
        ]
        if not named:
            return "0"
        # one pseudo-variable per coefficient name
        names = [name for _, name in named]
        terms = [
            (tuple(int(k == i) for k in range(len(named))), c)
            for i, (c, _) in enumerate(named)
        ]
        return format_terms(terms, names)


def sl3_linear_constraints(target: TernaryForm) -> List[LinearFunctional]:
    """
    The 8 conditions ⟨target, g·q⟩ = 0, g over SL3_BASIS.

    Args:
        target: A dual form of degree n

    Returns:
        One functional per basis derivation, in basis order
    """
    if target.family is not VariableFamily.DUAL:
        raise FamilyMismatchError("The target of the constraints must be a dual form")
    n = target.degree
    basis = [TernaryForm.from_monomial(m) for m in monomials_of_degree(n)]
    constraints = []
    for g in SL3_BASIS:
        row = tuple(polar_pair(target, apply_derivation(g, m)) for m in basis)
        constraints.append(LinearFunctional(g.label, n, row))
    return constraints


def constraint_kernel(target: TernaryForm) -> List[TernaryForm]:
    """
    Primal forms spanning the common kernel of the sl_3 constraints.

    Basis vectors are primitive integer vectors, one per free column of the
    echelon form, columns in graded-lex order.
    """
    constraints = sl3_linear_constraints(target)
    monomials = monomials_of_degree(target.degree)
    rows = [list(c.coefficients) for c in constraints]
    kernel = linalg.nullspace(rows, n_cols=len(monomials))
    logger.info(f"sl_3 constraints of rank {linalg.rank(rows)}, kernel of dimension {len(kernel)}")
    return [
        TernaryForm(VariableFamily.PRIMAL, target.degree, dict(zip(monomials, vector)))
        for vector in kernel
    ]


def lie_values(q: TernaryForm, derivations: Sequence[Derivation] = SL3_BASIS) -> List[Tuple[str, Fraction]]:
    """check_lie_identity over several derivations, labelled."""
    return [(g.label, check_lie_identity(q, g)) for g in derivations]


def combine(coefficients: Sequence[Rational], derivations: Sequence[Derivation]) -> Derivation:
    """Integer linear combination of derivations."""
    total = Derivation(((0, 0, 0), (0, 0, 0), (0, 0, 0)))
    for c, g in zip(coefficients, derivations):
        total = total + int(c) * g
    return total
