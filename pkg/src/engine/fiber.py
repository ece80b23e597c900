"""
Harmonia Fiber Lab
This module builds the fiber scheme of h_4 over a dual target quartic and
replays the computation of the fiber over the Fermat quartic.

The quartics q with h_4(q) proportional to the target satisfy the sl_3
constraints, so the fiber lives in the kernel of those constraints. Writing
q = Σ c_i B_i over a kernel basis B turns proportionality into quadratic
equations in the coordinates c_i.
"""
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from src.engine import linalg
from src.engine.apolarity import harmonic, jn_combinatorial
from src.engine.groebner import (
    FIBER_ORDER, RHO, SIGMA2, SIGMA3, TAU1, TAU2,
    Exponents, InitialIdeal, OrderedPoly, Quotient, WeightedOrder,
    buchberger, grevlex, parse_poly, reduce, standard_monomials, standard_monomials_affine,
    verify_groebner,
)
from src.engine.lie_action import constraint_kernel, sl3_linear_constraints
from src.engine.parser import parse_form
from src.engine.quartics import named_quartic, quartic
from src.errors import DeadlineExceeded, FamilyMismatchError, FormError
from src.models.forms import (
    Monomial, TernaryForm, VariableFamily, graded_lex_key, linear_combination, monomials_of_degree,
)
from src.models.reports import FiberPoint, FiberReport, FiberStatus, exact, exact_list

# Initialize logger
logger = logging.getLogger(__name__)

# Kernel basis matching the coordinates ρ, σ1, σ2, σ3, τ1, τ2, τ3 of the
# family ρ(x^4+y^4+z^4) + σ3x²y² + σ2x²z² + σ1y²z² + xyz(τ1x + τ2y + τ3z)
FERMAT_FAMILY: Tuple[str, ...] = (
    "x^4 + y^4 + z^4", "y^2*z^2", "x^2*z^2", "x^2*y^2", "x^2*y*z", "x*y^2*z", "x*y*z^2",
)

FERMAT_G0: Tuple[Tuple[str, str], ...] = (
    ("A1", "s3^2 - s2^2"),
    ("A2", "s3^2 - s1^2"),
    ("s1t2", "s1*t2"),
    ("s2t1", "s2*t1"),
    ("s3t1", "s3*t1"),
    ("s1t3", "s1*t3"),
    ("s2t3", "s2*t3"),
    ("s3t2", "s3*t2"),
    ("S1", "12*r*s1 + 2*s2*s3 + t1^2"),
    ("S2", "12*r*s2 + 2*s1*s3 + t2^2"),
    ("S3", "12*r*s3 + 2*s1*s2 + t3^2"),
    ("T1", "4*s1*t1 - t2*t3"),
    ("T2", "4*s2*t2 - t1*t3"),
    ("T3", "4*s3*t3 - t1*t2"),
)

FERMAT_G1: Tuple[str, ...] = (
    "6*r*s2*s1 + s3^3",
    "6*r*s3*s1 + s3^2*s2",
    "6*r*s3*s2 + s3^2*s1",
    "s3^2*t3",
)

# Leading monomials of G0 ∪ G1 under FIBER_ORDER
FERMAT_INITIAL_IDEAL: Tuple[str, ...] = (
    "s3^3", "s3^2*s2", "s3^2*s1", "s3^2*t3", "s2^2", "s1^2",
    "s3*t1", "s2*t3", "s1*t2", "s3*t2", "s2*t1", "s1*t3",
    "t1^2", "t2^2", "t3^2", "t1*t2", "t1*t3", "t2*t3",
)

# The list as usually printed: s3^2*t2 and s3^2*t1 in place of s3^2*s2 and s3^2*s1
PRINTED_INITIAL_IDEAL: Tuple[str, ...] = (
    "s3^3", "s3^2*t2", "s3^2*t1", "s3^2*t3", "s2^2", "s1^2",
    "s3*t1", "s2*t3", "s1*t2", "s3*t2", "s2*t1", "s1*t3",
    "t1^2", "t2^2", "t3^2", "t1*t2", "t1*t3", "t2*t3",
)

FERMAT_STANDARD_MONOMIALS: Tuple[str, ...] = (
    "1", "s1", "s2", "s3", "t1", "t2", "t3",
    "s3^2", "s2*s3", "s1*s3", "s1*s2", "s3*t3", "s2*t2", "s1*t1", "s1*s2*s3",
)

FERMAT_POINTS: Tuple[Tuple[int, ...], ...] = (
    (1, 0, 0, 0, 0, 0, 0),
    (1, -6, -6, -6, 0, 0, 0),
    (1, -6, 6, 6, 0, 0, 0),
    (1, 6, -6, 6, 0, 0, 0),
    (1, 6, 6, -6, 0, 0, 0),
)

FERMAT_FIBER_DEGREE = 15
D_FIBER_DEGREE = 15
D_FIBER_DISTINCT = 14

# named quartics the Fermat fiber points are matched against
_FIBER_NAMES = ("Fer", "C0", "C1", "C2", "C3")


def fermat_family() -> List[TernaryForm]:
    return [parse_form(text, VariableFamily.PRIMAL, 4) for text in FERMAT_FAMILY]


def fermat_g0(order: WeightedOrder = FIBER_ORDER) -> Dict[str, OrderedPoly]:
    """The 14 generators of the Fermat fiber ideal, by label."""
    return {label: parse_poly(text, order) for label, text in FERMAT_G0}


def fermat_g1(g0: Optional[Dict[str, OrderedPoly]] = None) -> List[OrderedPoly]:
    """
    The 4 completing generators, built as combinations of G0 members.
    """
    g = g0 if g0 is not None else fermat_g0()
    order = g["S1"].order
    s2, s3 = OrderedPoly.variable(SIGMA2, order), OrderedPoly.variable(SIGMA3, order)
    t1, t2 = OrderedPoly.variable(TAU1, order), OrderedPoly.variable(TAU2, order)
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    return [
        half * (s2 * g["S1"] + 2 * (s3 * g["A1"]) - t1 * g["s2t1"]),
        half * (s3 * g["S1"] - t1 * g["s3t1"]),
        half * (s3 * g["S2"] - t2 * g["s3t2"]),
        quarter * (s3 * g["T3"] + t2 * g["s3t1"]),
    ]


def fermat_basis(order: WeightedOrder = FIBER_ORDER) -> List[OrderedPoly]:
    """G0 followed by G1: the 18-element Gröbner basis of the Fermat fiber ideal."""
    g0 = fermat_g0(order)
    return list(g0.values()) + fermat_g1(g0)


# ========== Fiber systems ==========

def _order_for(nvars: int, order: Optional[WeightedOrder]) -> WeightedOrder:
    if order is not None:
        if order.nvars != nvars:
            raise FormError(f"Order on {order.nvars} variables for {nvars} coordinates")
        return order
    return FIBER_ORDER if nvars == FIBER_ORDER.nvars else grevlex(0, nvars)


def _unit(i: int, nvars: int) -> Exponents:
    return tuple(int(k == i) for k in range(nvars))


def symbolic_harmonic(basis: Sequence[TernaryForm], order: Optional[WeightedOrder] = None) -> Dict[Monomial, OrderedPoly]:
    """
    h_n(Σ c_i B_i) coefficientwise, as quadratic polynomials in the c_i.

    Args:
        basis: Primal forms B_i of a common even degree n
        order: Order for the coordinate ring; defaults by number of coordinates

    Returns:
        Map from every dual monomial of degree n to its coefficient polynomial
    """
    if not basis:
        raise FormError("symbolic_harmonic needs at least one basis form")
    k = len(basis)
    order = _order_for(k, order)
    n = basis[0].degree
    coeffs: Dict[Monomial, Dict[Exponents, Fraction]] = {m: {} for m in monomials_of_degree(n)}
    for i in range(k):
        for j in range(i, k):
            product = jn_combinatorial(basis[i], basis[j])
            if i != j:
                product = product + jn_combinatorial(basis[j], basis[i])
            e = tuple(a + b for a, b in zip(_unit(i, k), _unit(j, k)))
            for m, c in product.coeffs.items():
                coeffs[m][e] = coeffs[m].get(e, 0) + c
    return {m: OrderedPoly.from_dict(d, order) for m, d in coeffs.items()}


@dataclass(frozen=True, eq=False)
class FiberSystem:
    """Proportionality equations of h_n(q) with a target, q in the sl_3 kernel."""
    target: TernaryForm
    coordinates: Tuple[TernaryForm, ...]
    pivot: Optional[Monomial]
    harmonic_coefficients: Dict[Monomial, OrderedPoly]
    equations: Tuple[OrderedPoly, ...]
    order: Optional[WeightedOrder]

    @property
    def dimension(self) -> int:
        return len(self.coordinates)

    @property
    def is_empty(self) -> bool:
        return not self.coordinates

    def quartic(self, point: Sequence) -> TernaryForm:
        """The form Σ c_i B_i at a coordinate vector."""
        return linear_combination([Fraction(c) for c in point], list(self.coordinates))

    def residuals(self, point: Sequence) -> List[Fraction]:
        return [e.evaluate(point) for e in self.equations]

    def satisfied_at(self, point: Sequence) -> bool:
        return not any(self.residuals(point))

    def locate(self, q: TernaryForm) -> Optional[List[Fraction]]:
        """Coordinates of q in the kernel basis, or None if q is outside the span."""
        columns = [c.vector() for c in self.coordinates]
        rows = [[col[r] for col in columns] for r in range(len(columns[0]))]
        solution = linalg.solve(rows, q.vector())
        if solution is None or self.quartic(solution) != q:
            return None
        return solution


def build_fiber_system(target: TernaryForm, coordinates: Optional[Sequence[TernaryForm]] = None,
                       order: Optional[WeightedOrder] = None) -> FiberSystem:
    """
    The fiber system of h_n over a dual target.

    Args:
        target: Nonzero dual form of even degree
        coordinates: Kernel basis to use; must span the kernel of the sl_3 constraints
        order: Monomial order for the equations

    Returns:
        The system; equations are t[p]·h[m] - t[m]·h[p] over dual monomials m,
        where p is the target's largest monomial in graded-lex
    """
    if target.family is not VariableFamily.DUAL:
        raise FamilyMismatchError("The fiber target must be a dual form")
    if target.is_zero:
        raise FormError("The fiber target must be nonzero")
    kernel = constraint_kernel(target)
    if coordinates is None:
        coordinates = kernel
    else:
        coordinates = list(coordinates)
        _check_spans_kernel(target, coordinates, len(kernel))
    if not coordinates:
        logger.warning(f"Empty sl_3 kernel for target {target}")
        return FiberSystem(target, (), None, {}, (), None)

    order = _order_for(len(coordinates), order)
    h = symbolic_harmonic(coordinates, order)
    pivot = max(target.coeffs, key=graded_lex_key)
    t_p = target.coefficient(pivot)
    equations = []
    for m in monomials_of_degree(target.degree):
        if m == pivot:
            continue
        equation = h[m].scale(t_p) - h[pivot].scale(target.coefficient(m))
        if not equation.is_zero:
            equations.append(equation)
    logger.info(f"Fiber system over {target}: {len(coordinates)} coordinates, {len(equations)} equations")
    return FiberSystem(target, tuple(coordinates), pivot, h, tuple(equations), order)


def _check_spans_kernel(target: TernaryForm, coordinates: List[TernaryForm], dimension: int) -> None:
    constraints = sl3_linear_constraints(target)
    for form in coordinates:
        if form.family is not VariableFamily.PRIMAL or form.degree != target.degree:
            raise FormError(f"Coordinate form {form} is not a primal form of degree {target.degree}")
        if any(c.evaluate(form) for c in constraints):
            raise FormError(f"Coordinate form {form} violates the sl_3 constraints")
    if len(coordinates) != dimension or linalg.rank([f.vector() for f in coordinates]) != dimension:
        raise FormError(f"Coordinate forms do not form a basis of the {dimension}-dimensional kernel")


@dataclass(frozen=True)
class Correspondence:
    """How one derived equation relates to a reference generator list."""
    equation: OrderedPoly
    reference_index: Optional[int]
    scalar: Optional[Fraction]


def correspondence(system: FiberSystem, reference: Sequence[OrderedPoly],
                   compare_ideals: bool = False) -> Tuple[List[Correspondence], Optional[bool]]:
    """
    Match each equation of the system with a reference generator it is a scalar multiple of.

    Args:
        system: The derived fiber system
        reference: Generators to match against (same order as the system)
        compare_ideals: Also decide whether both lists generate the same ideal,
            by comparing reduced Gröbner bases

    Returns:
        (one Correspondence per equation, ideal equality or None if not compared)
    """
    matches = []
    for equation in system.equations:
        found = Correspondence(equation, None, None)
        for index, g in enumerate(reference):
            if g.is_zero or g.lead_monomial != equation.lead_monomial:
                continue
            scalar = equation.lead_coefficient / g.lead_coefficient
            if equation == g.scale(scalar):
                found = Correspondence(equation, index, scalar)
                break
        matches.append(found)
    same = None
    if compare_ideals:
        left = buchberger(system.equations, system.order)
        right = buchberger(reference, system.order)
        same = left.generators == right.generators
        logger.info(f"Derived system and reference generate {'the same' if same else 'different'} ideals")
    return matches, same


def jacobian_rank(G: Sequence[OrderedPoly], point: Sequence) -> int:
    """Rank of the Jacobian matrix (∂g/∂c_j) of G at a point."""
    if not G:
        return 0
    nvars = G[0].order.nvars
    rows = [[g.derivative(j).evaluate(point) for j in range(nvars)] for g in G]
    return linalg.rank(rows)


# ========== Fiber points ==========

@dataclass(frozen=True)
class PointCertificate:
    """
    Evidence for verify_point_on_fiber: the constant c with h(q) = c·target,
    or the first pair of monomials whose 2×2 minor does not vanish.
    """
    on_fiber: bool
    constant: Optional[Fraction] = None
    minor: Optional[Tuple[Monomial, Monomial, Fraction]] = None

    def __bool__(self) -> bool:
        return self.on_fiber


def verify_point_on_fiber(q: TernaryForm, target: TernaryForm) -> PointCertificate:
    """
    Decide whether h_n(q) is a nonzero multiple of the target.

    Every 2×2 minor of the 2×(N+1) matrix of coefficients of h_n(q) and target
    is checked. q with h_n(q) = 0 is not on any fiber.
    """
    if q.is_zero:
        raise FormError("verify_point_on_fiber needs a nonzero form")
    if target.family is not VariableFamily.DUAL:
        raise FamilyMismatchError("The fiber target must be a dual form")
    if target.is_zero:
        raise FormError("The fiber target must be nonzero")
    h = harmonic(q)
    monomials = monomials_of_degree(target.degree)
    for a, m1 in enumerate(monomials):
        for m2 in monomials[a + 1:]:
            minor = h.coefficient(m1) * target.coefficient(m2) - h.coefficient(m2) * target.coefficient(m1)
            if minor:
                return PointCertificate(False, minor=(m1, m2, minor))
    if h.is_zero:
        return PointCertificate(False, constant=Fraction(0))
    pivot = max(target.coeffs, key=graded_lex_key)
    return PointCertificate(True, constant=h.coefficient(pivot) / target.coefficient(pivot))


def normalize_point(point: Sequence) -> List[Fraction]:
    """Scale a projective point so that its first nonzero coordinate is 1."""
    lead = next((Fraction(c) for c in point if c), None)
    if lead is None:
        raise FormError("The zero vector is not a projective point")
    return [Fraction(c) / lead for c in point]


def _identify(form: TernaryForm, names: Sequence[str]) -> Optional[str]:
    for name in names:
        candidate = quartic(name)
        if candidate.family is form.family and linalg.rank([candidate.vector(), form.vector()]) == 1:
            return name
    return None


def _fiber_point(system: FiberSystem, G: Sequence[OrderedPoly], point: Sequence,
                 multiplicity: Optional[int], names: Sequence[str] = ()) -> FiberPoint:
    full_rank = system.dimension - 1
    rank = jacobian_rank(G, point)
    q = system.quartic(point)
    certificate = verify_point_on_fiber(q, system.target)
    return FiberPoint(
        coords=exact_list(point),
        multiplicity=multiplicity,
        reduced=rank == full_rank,
        jacobian_rank=rank,
        quartic=str(q),
        name=_identify(q, names),
        on_fiber=certificate.on_fiber,
        proportionality=exact(certificate.constant) if certificate.constant is not None else None,
    )


def fermat_fiber(threads: int = 1) -> FiberReport:
    """
    Replay the computation of the fiber over the dual Fermat quartic.

    Steps: build G1 from G0, verify G0 ∪ G1 is a Gröbner basis, count the
    standard monomials, check the five support points and their Jacobian
    ranks, and give the one non-reduced point the remaining multiplicity.
    Failed steps are recorded in the report.
    """
    target = quartic("Fer'")
    report = FiberReport(target=str(target))
    system = build_fiber_system(target, fermat_family())

    g0 = fermat_g0()
    g1 = fermat_g1(g0)
    if g1 != [parse_poly(text) for text in FERMAT_G1]:
        report.fail("G1 combinations do not reproduce the completing generators")
    G = list(g0.values()) + g1

    verification = verify_groebner(G, threads=threads)
    if not verification.passed:
        report.fail(f"Buchberger criterion: {len(verification.failures)} S-pairs do not reduce to 0")
    I0 = InitialIdeal.of(G)
    if I0 != InitialIdeal.parse(FERMAT_INITIAL_IDEAL):
        report.fail("initial ideal differs from the expected 18 monomials")

    standard = standard_monomials_affine(I0, RHO)
    if not standard.zero_dimensional:
        report.fail(f"fiber is positive-dimensional in {', '.join(standard.unbounded)}")
        return report
    report.standard_monomials = standard.count
    report.degree = standard.count

    for equation in system.equations:
        if not reduce(equation, G).is_zero:
            report.fail(f"derived equation {equation} is not in the ideal of G0")
            break

    generators = list(g0.values())
    points = []
    for point in FERMAT_POINTS:
        if any(g.evaluate(point) for g in generators):
            report.fail(f"point {list(point)} does not satisfy G0")
            continue
        points.append(_fiber_point(system, generators, point, None, _FIBER_NAMES))

    reduced = [p for p in points if p.reduced]
    non_reduced = [p for p in points if not p.reduced]
    for p in reduced:
        p.multiplicity = 1
    if len(non_reduced) == 1:
        non_reduced[0].multiplicity = report.degree - len(reduced)
    else:
        report.notes.append(f"{len(non_reduced)} non-reduced points; multiplicities not split by degree")
        if report.status is FiberStatus.COMPLETE:
            report.status = FiberStatus.PARTIAL
    for p in points:
        if not p.on_fiber:
            report.fail(f"h_4 of point {p.coords} is not proportional to the target")
    report.points = points
    report.distinct_points = len(points)
    logger.info(f"Fermat fiber: degree {report.degree}, multiplicities {report.multiplicities}")
    return report


def _chart_candidates(point: Sequence[Fraction]) -> List[int]:
    return [i for i, c in enumerate(point) if c]


def d_fiber_check(deadline: int = 0) -> FiberReport:
    """
    Check the fiber over the quartic D.

    Q is always verified to lie on the fiber. With a positive deadline (in
    seconds) the fiber system is also solved: a grevlex Gröbner basis in a
    chart containing Q gives the degree, and the rank of the Hermite trace
    form gives the number of distinct points. Running out of time yields a
    partial report, never a guess.
    """
    target = quartic("D")
    q = quartic("Q")
    report = FiberReport(target=str(target), status=FiberStatus.PARTIAL)

    certificate = verify_point_on_fiber(q, target)
    if not certificate:
        report.fail("Q is not on the fiber over D")
        return report

    system = build_fiber_system(target)
    located = system.locate(q)
    if located is None:
        report.fail("Q is outside the sl_3 kernel of D")
        return report
    point = normalize_point(located)
    if not system.satisfied_at(point):
        report.fail("Q does not satisfy the fiber equations")
        return report
    q_point = _fiber_point(system, system.equations, point, None, ("Q",))
    report.points = [q_point]

    if deadline <= 0:
        report.notes.append("full solve skipped: no deadline given")
        return report

    stop = time.monotonic() + deadline
    try:
        for chart in _chart_candidates(point):
            remaining = stop - time.monotonic()
            if remaining <= 0:
                raise DeadlineExceeded("no time left for another chart")
            order = grevlex(chart, system.dimension)
            logger.info(f"Solving the D fiber in the chart c{chart} = 1")
            gb = buchberger(system.equations, order, timeout=remaining)
            I0 = gb.initial_ideal()
            if any(m[chart] for m in I0.generators):
                report.notes.append(f"chart c{chart} misses points at infinity")
                continue
            finite, monomials, _ = standard_monomials(I0, chart)
            if not finite:
                report.fail("the fiber over D is positive-dimensional")
                return report
            quotient = Quotient.of(gb, chart)
            report.standard_monomials = len(monomials)
            report.degree = len(monomials)
            report.distinct_points = quotient.distinct_points()
            break
        else:
            report.notes.append("no chart covers every point of the fiber")
            return report
    except DeadlineExceeded as e:
        report.notes.append(f"full solve interrupted: {e}")
        return report

    extra = report.degree - report.distinct_points
    if extra == 1 and not q_point.reduced:
        q_point.multiplicity = 2
        report.notes.append(f"{report.distinct_points - 1} reduced points and one double point at Q")
        report.status = FiberStatus.COMPLETE
    elif extra == 0:
        report.notes.append("every point of the fiber is reduced")
        q_point.multiplicity = 1 if q_point.reduced else None
        report.status = FiberStatus.COMPLETE
    else:
        report.notes.append(f"degree {report.degree} over {report.distinct_points} distinct points")
    logger.info(f"D fiber: degree {report.degree}, {report.distinct_points} distinct points")
    return report


def named_fiber_point(name: str, target_name: str = "Fer'") -> PointCertificate:
    """verify_point_on_fiber on two named quartics."""
    return verify_point_on_fiber(named_quartic(name).form, named_quartic(target_name).form)
