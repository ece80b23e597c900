"""
Harmonia Gröbner Engine
This module contains a Buchberger engine over exact rationals in the fiber
coordinates ρ, σ1, σ2, σ3, τ1, τ2, τ3 (text names r, s1, s2, s3, t1, t2, t3).

Monomials are dense exponent tuples indexed 0..6 in that order. An order is
fixed by a weight per variable and a tie-break over a chain of variables
listed from the smallest to the largest.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.engine import linalg
from src.engine.parser import PolynomialParser
from src.errors import DeadlineExceeded, FormError, InvariantViolation
from src.models.forms import Rational, format_terms
from src.models.reports import GroebnerReport, StandardMonomialReport

# Initialize logger
logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]

FIBER_VARIABLES: Tuple[str, ...] = ("r", "s1", "s2", "s3", "t1", "t2", "t3")
RHO, SIGMA1, SIGMA2, SIGMA3, TAU1, TAU2, TAU3 = range(7)


def variable_index(name: str) -> int:
    try:
        return FIBER_VARIABLES.index(name)
    except ValueError:
        raise FormError(f"Unknown fiber variable {name!r}; expected one of {', '.join(FIBER_VARIABLES)}")


# ========== Monomial Orders ==========

class TieBreak(str, Enum):
    """How monomials of equal weight are compared along the chain."""
    REVLEX = "revlex"  # scan from the smallest variable, smaller exponent wins
    LEX = "lex"        # scan from the largest variable, larger exponent wins


@dataclass(frozen=True)
class WeightedOrder:
    weights: Tuple[int, ...]
    # variable indices from the smallest to the largest
    chain: Tuple[int, ...]
    tiebreak: TieBreak = TieBreak.REVLEX
    name: str = ""

    def __post_init__(self):
        if sorted(self.chain) != list(range(len(self.weights))):
            raise FormError(f"Tie-break chain {self.chain} is not a permutation of the variables")
        if min(self.weights) <= 0:
            raise FormError("Weights must be positive")

    @property
    def nvars(self) -> int:
        return len(self.weights)

    def weight(self, m: Exponents) -> int:
        return sum(w * e for w, e in zip(self.weights, m))

    def key(self, m: Exponents) -> Tuple:
        """Sort key: a larger key is a larger monomial."""
        if self.tiebreak is TieBreak.REVLEX:
            return self.weight(m), tuple(-m[v] for v in self.chain)
        return self.weight(m), tuple(m[v] for v in reversed(self.chain))


# Weights ρ:1, σ3:3, σ2:4, σ1:4, τ:5; chain ρ < σ3 < σ2 < σ1 < τ1 < τ2 < τ3
FIBER_ORDER = WeightedOrder(
    weights=(1, 4, 4, 3, 5, 5, 5),
    chain=(RHO, SIGMA3, SIGMA2, SIGMA1, TAU1, TAU2, TAU3),
    tiebreak=TieBreak.REVLEX,
    name="weighted-revlex",
)

FIBER_LEX_ORDER = WeightedOrder(
    weights=FIBER_ORDER.weights,
    chain=FIBER_ORDER.chain,
    tiebreak=TieBreak.LEX,
    name="weighted-lex",
)


def grevlex(smallest: int = RHO, nvars: int = 7) -> WeightedOrder:
    """Graded reverse lex with `smallest` last; the others keep index order."""
    others = [v for v in range(nvars - 1, -1, -1) if v != smallest]
    return WeightedOrder((1,) * nvars, (smallest, *others), TieBreak.REVLEX, f"grevlex({smallest})")


def compare(m1: Exponents, m2: Exponents, order: WeightedOrder = FIBER_ORDER) -> int:
    """-1, 0 or 1 as m1 is smaller than, equal to or larger than m2."""
    k1, k2 = order.key(m1), order.key(m2)
    return (k1 > k2) - (k1 < k2)


def divides(m1: Exponents, m2: Exponents) -> bool:
    return all(a <= b for a, b in zip(m1, m2))


def monomial_lcm(m1: Exponents, m2: Exponents) -> Exponents:
    return tuple(max(a, b) for a, b in zip(m1, m2))


def format_monomial_text(m: Exponents, names: Sequence[str] = FIBER_VARIABLES) -> str:
    return format_terms([(m, Fraction(1))], names)


# ========== Polynomials ==========

@dataclass(frozen=True)
class OrderedPoly:
    """
    A polynomial with exact rational coefficients, terms sorted descending
    under its order. The first term is the leading term.
    """
    terms: Tuple[Tuple[Exponents, Fraction], ...]
    order: WeightedOrder = FIBER_ORDER

    @classmethod
    def from_dict(cls, coeffs: Dict[Exponents, Rational], order: WeightedOrder = FIBER_ORDER) -> "OrderedPoly":
        clean = [(tuple(m), Fraction(c)) for m, c in coeffs.items() if c]
        for m, _ in clean:
            if len(m) != order.nvars or min(m) < 0:
                raise FormError(f"Bad exponent vector {m} for {order.nvars} variables")
        clean.sort(key=lambda t: order.key(t[0]), reverse=True)
        return cls(tuple(clean), order)

    @classmethod
    def zero(cls, order: WeightedOrder = FIBER_ORDER) -> "OrderedPoly":
        return cls((), order)

    @classmethod
    def monomial(cls, m: Exponents, c: Rational = 1, order: WeightedOrder = FIBER_ORDER) -> "OrderedPoly":
        return cls.from_dict({tuple(m): c}, order)

    @classmethod
    def variable(cls, index: int, order: WeightedOrder = FIBER_ORDER) -> "OrderedPoly":
        m = [0] * order.nvars
        m[index] = 1
        return cls.monomial(tuple(m), 1, order)

    # ---- access ----

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def lead_monomial(self) -> Exponents:
        if not self.terms:
            raise FormError("The zero polynomial has no leading monomial")
        return self.terms[0][0]

    @property
    def lead_coefficient(self) -> Fraction:
        if not self.terms:
            raise FormError("The zero polynomial has no leading coefficient")
        return self.terms[0][1]

    def as_dict(self) -> Dict[Exponents, Fraction]:
        return dict(self.terms)

    def coefficient(self, m: Exponents) -> Fraction:
        return self.as_dict().get(tuple(m), Fraction(0))

    @property
    def total_degree(self) -> int:
        return max((sum(m) for m, _ in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m, _ in self.terms}) <= 1

    def with_order(self, order: WeightedOrder) -> "OrderedPoly":
        return OrderedPoly.from_dict(self.as_dict(), order)

    # ---- arithmetic ----

    def __add__(self, other: "OrderedPoly") -> "OrderedPoly":
        coeffs = self.as_dict()
        for m, c in other.terms:
            coeffs[m] = coeffs.get(m, 0) + c
        return OrderedPoly.from_dict(coeffs, self.order)

    def __neg__(self) -> "OrderedPoly":
        return OrderedPoly(tuple((m, -c) for m, c in self.terms), self.order)

    def __sub__(self, other: "OrderedPoly") -> "OrderedPoly":
        return self + (-other)

    def __rmul__(self, c: Rational) -> "OrderedPoly":
        return self.scale(c)

    def scale(self, c: Rational) -> "OrderedPoly":
        c = Fraction(c)
        if not c:
            return OrderedPoly.zero(self.order)
        return OrderedPoly(tuple((m, c * a) for m, a in self.terms), self.order)

    def mul_term(self, m: Exponents, c: Rational = 1) -> "OrderedPoly":
        """Multiply by the term c·m; the order is preserved so no re-sort is needed."""
        c = Fraction(c)
        if not c:
            return OrderedPoly.zero(self.order)
        return OrderedPoly(
            tuple((tuple(a + b for a, b in zip(e, m)), c * a_c) for e, a_c in self.terms),
            self.order,
        )

    def __mul__(self, other: "OrderedPoly") -> "OrderedPoly":
        coeffs: Dict[Exponents, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = tuple(a + b for a, b in zip(m1, m2))
                coeffs[m] = coeffs.get(m, 0) + c1 * c2
        return OrderedPoly.from_dict(coeffs, self.order)

    def monic(self) -> "OrderedPoly":
        if self.is_zero:
            return self
        return self.scale(1 / self.lead_coefficient)

    def evaluate(self, point: Sequence[Rational]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms:
            value = c
            for x, e in zip(point, m):
                if e:
                    value *= Fraction(x) ** e
            total += value
        return total

    def derivative(self, index: int) -> "OrderedPoly":
        coeffs: Dict[Exponents, Fraction] = {}
        for m, c in self.terms:
            if m[index]:
                image = list(m)
                image[index] -= 1
                coeffs[tuple(image)] = coeffs.get(tuple(image), 0) + c * m[index]
        return OrderedPoly.from_dict(coeffs, self.order)

    def specialize(self, index: int, value: Rational = 1) -> "OrderedPoly":
        """Substitute a constant for one variable (the variable's exponent becomes 0)."""
        value = Fraction(value)
        coeffs: Dict[Exponents, Fraction] = {}
        for m, c in self.terms:
            image = list(m)
            e = image[index]
            image[index] = 0
            coeffs[tuple(image)] = coeffs.get(tuple(image), 0) + c * value ** e
        return OrderedPoly.from_dict(coeffs, self.order)

    def __str__(self) -> str:
        names = FIBER_VARIABLES if self.order.nvars == len(FIBER_VARIABLES) else [
            f"c{i}" for i in range(self.order.nvars)
        ]
        return format_terms(self.terms, names)


def parse_poly(text: str, order: WeightedOrder = FIBER_ORDER) -> OrderedPoly:
    """Parse a polynomial in r, s1, s2, s3, t1, t2, t3."""
    polynomial = PolynomialParser(FIBER_VARIABLES).parse(text)
    return OrderedPoly.from_dict(polynomial, order)


def format_poly(f: OrderedPoly) -> str:
    return str(f)


# ========== Division and S-polynomials ==========

def reduce(f: OrderedPoly, G: Sequence[OrderedPoly]) -> OrderedPoly:
    """
    Full normal form of f modulo G.

    The highest reducible term is always reduced first, by the first member
    of G (in list order) whose leading monomial divides it.
    """
    divisors = [(g.lead_monomial, g) for g in G if not g.is_zero]
    order = f.order
    pending = f.as_dict()
    remainder: Dict[Exponents, Fraction] = {}
    while pending:
        m = max(pending, key=order.key)
        c = pending.pop(m)
        for lm, g in divisors:
            if divides(lm, m):
                quotient = tuple(a - b for a, b in zip(m, lm))
                factor = c / g.lead_coefficient
                for e, a in g.terms[1:]:
                    image = tuple(x + y for x, y in zip(e, quotient))
                    value = pending.get(image, 0) - factor * a
                    if value:
                        pending[image] = value
                    else:
                        pending.pop(image, None)
                break
        else:
            remainder[m] = c
    return OrderedPoly.from_dict(remainder, order)


def s_polynomial(f: OrderedPoly, g: OrderedPoly) -> OrderedPoly:
    """lcm/LT(f)·f - lcm/LT(g)·g for nonzero f and g."""
    if f.is_zero or g.is_zero:
        raise FormError("S-polynomial of a zero polynomial")
    lcm = monomial_lcm(f.lead_monomial, g.lead_monomial)
    left = f.mul_term(tuple(a - b for a, b in zip(lcm, f.lead_monomial)), 1 / f.lead_coefficient)
    right = g.mul_term(tuple(a - b for a, b in zip(lcm, g.lead_monomial)), 1 / g.lead_coefficient)
    return left - right


# ========== Initial Ideals ==========

def _minimalize(monomials: Iterable[Exponents]) -> Tuple[Exponents, ...]:
    unique = sorted(set(map(tuple, monomials)), key=lambda m: (sum(m), m))
    minimal: List[Exponents] = []
    for m in unique:
        if not any(divides(g, m) for g in minimal):
            minimal.append(m)
    return tuple(minimal)


@dataclass(frozen=True)
class InitialIdeal:
    """A monomial ideal, stored by its minimal generators."""
    generators: Tuple[Exponents, ...]
    nvars: int = 7

    def __post_init__(self):
        object.__setattr__(self, "generators", _minimalize(self.generators))

    @classmethod
    def of(cls, G: Sequence[OrderedPoly]) -> "InitialIdeal":
        polys = [g for g in G if not g.is_zero]
        nvars = polys[0].order.nvars if polys else 7
        return cls(tuple(g.lead_monomial for g in polys), nvars)

    @classmethod
    def parse(cls, texts: Iterable[str]) -> "InitialIdeal":
        monomials = []
        for text in texts:
            poly = parse_poly(text)
            if len(poly.terms) != 1:
                raise FormError(f"{text!r} is not a monomial")
            monomials.append(poly.lead_monomial)
        return cls(tuple(monomials))

    def contains(self, m: Exponents) -> bool:
        return any(divides(g, m) for g in self.generators)

    def as_set(self) -> frozenset:
        return frozenset(self.generators)

    def __eq__(self, other) -> bool:
        return isinstance(other, InitialIdeal) and self.as_set() == other.as_set()

    def __hash__(self) -> int:
        return hash(self.as_set())

    def strings(self, order: WeightedOrder = FIBER_ORDER) -> List[str]:
        ordered = sorted(self.generators, key=order.key, reverse=True)
        return [format_monomial_text(m) for m in ordered]


def _unit(index: int, nvars: int) -> Exponents:
    return tuple(int(i == index) for i in range(nvars))


def standard_monomials(I0: InitialIdeal, dehomogenizing_variable: int = RHO) -> Tuple[bool, List[Exponents], List[int]]:
    """
    Monomials free of the dehomogenizing variable and outside I0.

    Returns:
        (finite, monomials sorted by degree, unbounded variables)
    """
    nvars = I0.nvars
    # only generators free of the dehomogenizing variable can divide such monomials
    relevant = [g for g in I0.generators if not g[dehomogenizing_variable]]
    others = [v for v in range(nvars) if v != dehomogenizing_variable]
    unbounded = [
        v for v in others
        if not any(g[v] and sum(g) == g[v] for g in relevant)
    ]
    if unbounded:
        return False, [], unbounded
    found = {(0,) * nvars}
    frontier = [(0,) * nvars]
    while frontier:
        next_frontier = []
        for m in frontier:
            for v in others:
                image = tuple(e + (i == v) for i, e in enumerate(m))
                if image in found or any(divides(g, image) for g in relevant):
                    continue
                found.add(image)
                next_frontier.append(image)
        frontier = next_frontier
    return True, sorted(found, key=lambda m: (sum(m), tuple(-e for e in m))), []


def standard_monomials_affine(I0: InitialIdeal, dehomogenizing_variable: int = RHO) -> StandardMonomialReport:
    """
    The standard monomials after setting the dehomogenizing variable to 1.

    A variable without a pure power in I0 makes the set infinite; that case
    is reported as positive-dimensional instead of enumerated.
    """
    finite, monomials, unbounded = standard_monomials(I0, dehomogenizing_variable)
    names = FIBER_VARIABLES if I0.nvars == len(FIBER_VARIABLES) else [f"c{i}" for i in range(I0.nvars)]
    report = StandardMonomialReport(
        dehomogenizing_variable=names[dehomogenizing_variable],
        zero_dimensional=finite,
        monomials=[format_monomial_text(m, names) for m in monomials],
        unbounded=[names[v] for v in unbounded],
    )
    if finite:
        logger.info(f"{len(monomials)} standard monomials")
    else:
        logger.info(f"Positive-dimensional: no pure power of {', '.join(report.unbounded)}")
    return report


def hilbert_count(I0: InitialIdeal, degree: int) -> int:
    """Number of monomials of the given total degree outside I0."""
    def count(prefix: List[int], remaining: int, index: int) -> int:
        if index == I0.nvars - 1:
            m = tuple(prefix + [remaining])
            return 0 if I0.contains(m) else 1
        return sum(count(prefix + [e], remaining - e, index + 1) for e in range(remaining + 1))
    return count([], degree, 0)


# ========== Buchberger ==========

def verify_groebner(G: Sequence[OrderedPoly], threads: int = 1) -> GroebnerReport:
    """
    Buchberger's criterion: reduce the S-polynomial of every pair modulo G.

    Failure is data: the report lists the pairs (i, j) whose S-polynomial has a
    nonzero normal form.
    """
    polys = list(G)
    pairs = [(i, j) for i, j in combinations(range(len(polys)), 2)
             if not polys[i].is_zero and not polys[j].is_zero]

    def check(pair: Tuple[int, int]) -> bool:
        i, j = pair
        return reduce(s_polynomial(polys[i], polys[j]), polys).is_zero

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(check, pairs))
    else:
        results = [check(pair) for pair in pairs]
    failures = [list(pair) for pair, ok in zip(pairs, results) if not ok]
    order = polys[0].order if polys else FIBER_ORDER
    report = GroebnerReport(
        pairs=len(pairs),
        failures=failures,
        initial_ideal=InitialIdeal.of(polys).strings(order),
    )
    logger.info(f"Checked {len(pairs)} S-pairs, {len(failures)} failures")
    return report


@dataclass(frozen=True)
class GroebnerBasis:
    generators: Tuple[OrderedPoly, ...]
    order: WeightedOrder = FIBER_ORDER

    def initial_ideal(self) -> InitialIdeal:
        return InitialIdeal.of(self.generators)

    @property
    def leading_monomials(self) -> List[Exponents]:
        return [g.lead_monomial for g in self.generators]

    def reduce(self, f: OrderedPoly) -> OrderedPoly:
        return reduce(f.with_order(self.order) if f.order != self.order else f, self.generators)

    def contains(self, f: OrderedPoly) -> bool:
        return self.reduce(f).is_zero

    def __len__(self) -> int:
        return len(self.generators)


def _check_deadline(deadline: Optional[float]) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise DeadlineExceeded("Gröbner basis computation ran past its deadline")


def interreduce(G: Sequence[OrderedPoly]) -> List[OrderedPoly]:
    """Minimal, monic, tail-reduced version of a Gröbner basis."""
    polys = [g.monic() for g in G if not g.is_zero]
    minimal = []
    for i, g in enumerate(polys):
        lm = g.lead_monomial
        dominated = any(
            divides(h.lead_monomial, lm) and (h.lead_monomial != lm or j < i)
            for j, h in enumerate(polys) if j != i
        )
        if not dominated:
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = reduce(OrderedPoly(g.terms[1:], g.order), others)
        reduced.append(OrderedPoly.monomial(g.lead_monomial, 1, g.order) + tail)
    return sorted(reduced, key=lambda g: g.order.key(g.lead_monomial))


def buchberger(F: Sequence[OrderedPoly], order: Optional[WeightedOrder] = None,
               timeout: Optional[float] = None) -> GroebnerBasis:
    """
    Reduced Gröbner basis of the ideal generated by F.

    Pairs are processed smallest lcm first; pairs with coprime leading
    monomials are skipped.

    Args:
        F: Generators (zero polynomials are ignored)
        order: Monomial order; defaults to the order of F's members
        timeout: Seconds before DeadlineExceeded is raised; None means no limit

    Returns:
        The inter-reduced, monic basis sorted by leading monomial
    """
    polys = [f for f in F if not f.is_zero]
    if order is None:
        order = polys[0].order if polys else FIBER_ORDER
    deadline = time.monotonic() + timeout if timeout else None
    basis = [f.with_order(order).monic() for f in polys]
    pairs = set(combinations(range(len(basis)), 2))
    processed = 0
    while pairs:
        _check_deadline(deadline)
        i, j = min(pairs, key=lambda p: (
            order.key(monomial_lcm(basis[p[0]].lead_monomial, basis[p[1]].lead_monomial)), p
        ))
        pairs.remove((i, j))
        li, lj = basis[i].lead_monomial, basis[j].lead_monomial
        if all(not (a and b) for a, b in zip(li, lj)):
            continue
        remainder = reduce(s_polynomial(basis[i], basis[j]), basis)
        processed += 1
        if remainder.is_zero:
            continue
        basis.append(remainder.monic())
        k = len(basis) - 1
        pairs.update((m, k) for m in range(k))
        logger.debug(f"New generator {k} with lead {format_monomial_text(remainder.lead_monomial)}")
    result = interreduce(basis)
    logger.info(f"Buchberger: {processed} S-polynomials reduced, {len(result)} generators")
    return GroebnerBasis(tuple(result), order)


# ========== Zero-dimensional quotients ==========

def dehomogenize(G: Sequence[OrderedPoly], variable: int = RHO) -> List[OrderedPoly]:
    return [g.specialize(variable, 1) for g in G]


@dataclass(frozen=True, eq=False)
class Quotient:
    """
    The finite-dimensional algebra k[x]/I for a zero-dimensional affine ideal,
    with the standard monomials as basis.
    """
    basis: Tuple[OrderedPoly, ...]
    monomials: Tuple[Exponents, ...]
    order: WeightedOrder
    index: Dict[Exponents, int] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {m: i for i, m in enumerate(self.monomials)})

    @classmethod
    def of(cls, gb: GroebnerBasis, dehomogenizing_variable: int = RHO) -> "Quotient":
        finite, monomials, unbounded = standard_monomials(gb.initial_ideal(), dehomogenizing_variable)
        if not finite:
            raise FormError(f"Quotient is not finite: variables {unbounded} are unbounded")
        affine = dehomogenize(gb.generators, dehomogenizing_variable)
        return cls(tuple(affine), tuple(monomials), gb.order)

    @property
    def dimension(self) -> int:
        return len(self.monomials)

    def coordinates(self, f: OrderedPoly) -> List[Fraction]:
        normal = reduce(f, self.basis)
        vector = [Fraction(0)] * self.dimension
        for m, c in normal.terms:
            if m not in self.index:
                raise InvariantViolation(f"Normal form term {format_monomial_text(m)} is not a standard monomial")
            vector[self.index[m]] = c
        return vector

    def multiplication_matrix(self, f: OrderedPoly) -> np.ndarray:
        """Matrix of multiplication by f; column j is the image of the j-th standard monomial."""
        columns = [self.coordinates(f.mul_term(m)) for m in self.monomials]
        return np.array(columns, dtype=object).T

    def trace(self, m: Exponents) -> Fraction:
        total = Fraction(0)
        for j, b in enumerate(self.monomials):
            product = OrderedPoly.monomial(tuple(x + y for x, y in zip(m, b)), 1, self.order)
            total += self.coordinates(product)[j]
        return total

    def hermite_form(self) -> np.ndarray:
        """The trace form Tr(b_i·b_j); its rank counts the distinct points."""
        size = self.dimension
        cache: Dict[Exponents, Fraction] = {}
        matrix = np.empty((size, size), dtype=object)
        for i in range(size):
            for j in range(i, size):
                m = tuple(a + b for a, b in zip(self.monomials[i], self.monomials[j]))
                if m not in cache:
                    cache[m] = self.trace(m)
                matrix[i, j] = matrix[j, i] = cache[m]
        return matrix

    def distinct_points(self) -> int:
        return linalg.rank(self.hermite_form())
