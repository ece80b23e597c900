"""
Unit tests for the Gröbner engine.
"""
import random
import unittest
from fractions import Fraction

from src.engine.fiber import (
    FERMAT_INITIAL_IDEAL, FERMAT_STANDARD_MONOMIALS, PRINTED_INITIAL_IDEAL, fermat_basis, fermat_g0,
)
from src.engine.groebner import (
    FIBER_LEX_ORDER, FIBER_ORDER, RHO, SIGMA1, SIGMA2, SIGMA3, InitialIdeal, OrderedPoly,
    Quotient, WeightedOrder, buchberger, compare, divides, grevlex, hilbert_count, interreduce,
    parse_poly, reduce, s_polynomial, standard_monomials_affine, variable_index, verify_groebner,
)
from src.errors import DeadlineExceeded, FormError


def _monomial(text: str):
    return parse_poly(text).lead_monomial


class TestOrders(unittest.TestCase):
    """Test cases for the weighted monomial orders."""

    def test_revlex_tie_break(self):
        """Test that σ3^3 beats ρσ1σ2 at equal weight under REVLEX."""
        self.assertEqual(compare(_monomial("s3^3"), _monomial("r*s1*s2")), 1)
        self.assertEqual(compare(_monomial("s3^3"), _monomial("r*s1*s2"), FIBER_LEX_ORDER), -1)

    def test_weights(self):
        """Test that weight decides before the tie-break."""
        self.assertEqual(compare(_monomial("s2^2"), _monomial("s3^2")), 1)
        self.assertEqual(compare(_monomial("t1^2"), _monomial("r*s1")), 1)
        self.assertEqual(compare(_monomial("s1"), _monomial("s1")), 0)

    def test_invalid_order(self):
        """Test that the chain must be a permutation and weights positive."""
        with self.assertRaises(FormError):
            WeightedOrder((1, 1), (0, 0))
        with self.assertRaises(FormError):
            WeightedOrder((1, 0), (0, 1))

    def test_grevlex(self):
        """Test that the chosen variable is the smallest under grevlex."""
        order = grevlex(SIGMA1)
        low = [0] * 7
        low[SIGMA1] = 1
        for v in range(7):
            if v != SIGMA1:
                high = [0] * 7
                high[v] = 1
                self.assertEqual(compare(tuple(high), tuple(low), order), 1)

    def test_variable_index(self):
        """Test the variable name lookup."""
        self.assertEqual(variable_index("t2"), 5)
        with self.assertRaises(FormError):
            variable_index("q")


class TestPolynomials(unittest.TestCase):
    """Test cases for ordered polynomials."""

    def test_parse_and_lead(self):
        """Test parsing, sorting and the leading term."""
        f = parse_poly("12*r*s1 + 2*s2*s3 + t1^2")
        self.assertEqual(str(f), "t1^2 + 2*s2*s3 + 12*r*s1")
        self.assertEqual(f.lead_coefficient, 1)
        self.assertTrue(f.is_homogeneous())

    def test_arithmetic(self):
        """Test sums, products and scaling."""
        f, g = parse_poly("s1 + s2"), parse_poly("s1 - s2")
        self.assertEqual(f * g, parse_poly("s1^2 - s2^2"))
        self.assertEqual(f - f, OrderedPoly.zero())
        self.assertEqual(Fraction(1, 2) * (f + g), parse_poly("s1"))

    def test_evaluate_and_derivative(self):
        """Test evaluation and partial derivatives."""
        f = parse_poly("s3^2*t3 + 6*r*s1*s2")
        self.assertEqual(f.evaluate([1, 2, 3, 4, 5, 6, 7]), 16 * 7 + 36)
        self.assertEqual(f.derivative(SIGMA3), parse_poly("2*s3*t3"))
        self.assertEqual(f.specialize(RHO, 1), parse_poly("s3^2*t3") + parse_poly("6*s1*s2"))

    def test_zero_has_no_lead(self):
        """Test that the zero polynomial has no leading monomial."""
        with self.assertRaises(FormError):
            OrderedPoly.zero().lead_monomial


class TestReduction(unittest.TestCase):
    """Test cases for division and S-polynomials."""

    def test_reduce(self):
        """Test a full normal form."""
        G = [parse_poly("s1^2 - s2^2"), parse_poly("s1*s2")]
        self.assertTrue(reduce(parse_poly("s1^3"), G).is_zero)
        self.assertEqual(reduce(parse_poly("s1^2 + t1"), G), parse_poly("s2^2 + t1"))

    def test_reduce_edge_cases(self):
        """Test reduction of zero and reduction by an empty list."""
        G = fermat_basis()
        self.assertTrue(reduce(OrderedPoly.zero(), G).is_zero)
        f = parse_poly("3*s1^2*t1 - r*t2 + 5")
        self.assertEqual(reduce(f, []), f)

    def test_reduce_idempotent(self):
        """Test that a normal form is its own normal form."""
        G = fermat_basis()
        for text in ("s1^3", "r^2*s1 + t1^3", "s1*s2*s3 - 7*t1*t2*t3", "r^4 + s2^2*t2^2 + 1"):
            remainder = reduce(parse_poly(text), G)
            self.assertEqual(reduce(remainder, G), remainder, text)

    def test_s_polynomial(self):
        """Test the S-polynomial of a non-Gröbner pair."""
        f, g = parse_poly("s1^2 - s2^2"), parse_poly("s1*s2")
        self.assertEqual(s_polynomial(f, g), parse_poly("-s2^3"))

    def test_s_polynomial_zero(self):
        """Test that the S-polynomial of 0 is refused."""
        with self.assertRaises(FormError):
            s_polynomial(OrderedPoly.zero(), parse_poly("s1"))


class TestBuchberger(unittest.TestCase):
    """Test cases for Buchberger's algorithm and criterion."""

    def test_small_ideal(self):
        """Test that the basis of (s1^2 - s2^2, s1*s2) gains s2^3."""
        order = grevlex(RHO)
        gb = buchberger([parse_poly("s1^2 - s2^2", order), parse_poly("s1*s2", order)])
        self.assertEqual(len(gb), 3)
        self.assertEqual(
            gb.initial_ideal(),
            InitialIdeal((_monomial("s1^2"), _monomial("s1*s2"), _monomial("s2^3"))),
        )
        self.assertTrue(gb.contains(parse_poly("s1^3", order)))
        self.assertTrue(verify_groebner(gb.generators).passed)

    def test_criterion_failure_is_data(self):
        """Test that a non-basis reports its failing pair."""
        report = verify_groebner([parse_poly("s1^2 - s2^2"), parse_poly("s1*s2")])
        self.assertFalse(report.passed)
        self.assertEqual(report.failures, [[0, 1]])
        self.assertEqual(report.pairs, 1)

    def test_fermat_basis(self):
        """Test the criterion on the 18-element Fermat fiber basis."""
        basis = fermat_basis()
        self.assertEqual(len(basis), 18)
        report = verify_groebner(basis)
        self.assertTrue(report.passed)
        self.assertEqual(report.pairs, 18 * 17 // 2)

    def test_fermat_basis_threads(self):
        """Test that the threaded criterion agrees."""
        self.assertTrue(verify_groebner(fermat_basis(), threads=4).passed)

    def test_g0_alone_fails(self):
        """Test that G0 alone is not a Gröbner basis."""
        self.assertFalse(verify_groebner(list(fermat_g0().values())).passed)

    def test_buchberger_completes_g0(self):
        """Test that Buchberger on G0 gives the reduced form of G0 ∪ G1."""
        gb = buchberger(list(fermat_g0().values()))
        self.assertEqual(list(gb.generators), interreduce(fermat_basis()))

    def test_deadline(self):
        """Test that an exhausted deadline raises."""
        with self.assertRaises(DeadlineExceeded):
            buchberger(list(fermat_g0().values()), timeout=1e-9)

    def test_univariate_gcd(self):
        """Test that in one variable the reduced basis is the monic gcd."""
        gb = buchberger([parse_poly("r^3 - 7*r + 6"), parse_poly("r^3 - 8*r^2 + 17*r - 10")])
        self.assertEqual(list(gb.generators), [parse_poly("r^2 - 3*r + 2")])

    def test_already_groebner(self):
        """Test that Buchberger on a Gröbner basis only inter-reduces it."""
        basis = fermat_basis()
        gb = buchberger(basis)
        self.assertEqual(gb.initial_ideal(), InitialIdeal.of(basis))
        self.assertEqual(list(gb.generators), interreduce(basis))


class TestMembership(unittest.TestCase):
    """Test cases for ideal membership modulo the Fermat fiber basis."""

    def setUp(self):
        self.basis = fermat_basis()
        self.g0 = list(fermat_g0().values())

    def test_combinations_reduce_to_zero(self):
        """Test that random rational combinations of G0 lie in the ideal."""
        rng = random.Random(53)
        for _ in range(20):
            f = OrderedPoly.zero()
            for _ in range(3):
                m = tuple(rng.randint(0, 1) for _ in range(7))
                c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                f = f + OrderedPoly.monomial(m, c) * rng.choice(self.g0)
            self.assertTrue(reduce(f, self.basis).is_zero, str(f))

    def test_non_members(self):
        """Test that 1, σ1 and τ1 are not in the ideal."""
        for text in ("1", "s1", "t1"):
            remainder = reduce(parse_poly(text), self.basis)
            self.assertFalse(remainder.is_zero, text)
            self.assertEqual(remainder, parse_poly(text))


class TestInitialIdeal(unittest.TestCase):
    """Test cases for initial ideals and standard monomials."""

    def setUp(self):
        self.I0 = InitialIdeal.of(fermat_basis())

    def test_fermat_initial_ideal(self):
        """Test the 18 leading monomials."""
        self.assertEqual(len(self.I0.generators), 18)
        self.assertEqual(self.I0, InitialIdeal.parse(FERMAT_INITIAL_IDEAL))

    def test_printed_list_differs(self):
        """Test that the printed list is not the initial ideal and is not minimal."""
        printed = InitialIdeal.parse(PRINTED_INITIAL_IDEAL)
        self.assertNotEqual(self.I0, printed)
        self.assertTrue(printed.contains(_monomial("s3^2*t2")))
        self.assertFalse(printed.contains(_monomial("s3^2*s2")))
        self.assertEqual(len(printed.generators), 16)

    def test_lex_leads_differ(self):
        """Test that the LEX tie-break does not reproduce the leading monomials."""
        lex_leads = InitialIdeal.of([g.with_order(FIBER_LEX_ORDER) for g in fermat_basis()])
        self.assertNotEqual(lex_leads, self.I0)

    def test_standard_monomials(self):
        """Test the 15 standard monomials after setting ρ = 1."""
        report = standard_monomials_affine(self.I0, RHO)
        self.assertTrue(report.zero_dimensional)
        self.assertEqual(report.count, 15)
        self.assertEqual(set(report.monomials), set(FERMAT_STANDARD_MONOMIALS))

    def test_positive_dimensional(self):
        """Test that a missing pure power is reported."""
        report = standard_monomials_affine(InitialIdeal((_monomial("s1^2"),)), RHO)
        self.assertFalse(report.zero_dimensional)
        self.assertIsNone(report.count)
        self.assertIn("t1", report.unbounded)

    def test_hilbert_count(self):
        """Test the Hilbert function of the Fermat fiber ideal."""
        self.assertEqual([hilbert_count(self.I0, d) for d in range(6)], [1, 7, 14, 15, 15, 15])

    def test_divides(self):
        """Test monomial divisibility."""
        self.assertTrue(divides(_monomial("s1"), _monomial("s1^2*t1")))
        self.assertFalse(divides(_monomial("t2"), _monomial("s1^2*t1")))


class TestQuotient(unittest.TestCase):
    """Test cases for the zero-dimensional quotient algebra."""

    def test_fermat_quotient(self):
        """Test the dimension and the distinct points of the Fermat fiber."""
        gb = buchberger(fermat_basis(), FIBER_ORDER)
        quotient = Quotient.of(gb, RHO)
        self.assertEqual(quotient.dimension, 15)
        self.assertEqual(quotient.trace((0,) * 7), 15)
        self.assertEqual(quotient.distinct_points(), 5)

    def test_multiplication_matrix(self):
        """Test that multiplication by 1 is the identity."""
        gb = buchberger(fermat_basis(), FIBER_ORDER)
        quotient = Quotient.of(gb, RHO)
        matrix = quotient.multiplication_matrix(OrderedPoly.monomial((0,) * 7))
        for i in range(quotient.dimension):
            for j in range(quotient.dimension):
                self.assertEqual(matrix[i, j], int(i == j))


if __name__ == "__main__":
    unittest.main()
