"""
Unit tests for the polynomial parser.
"""
import unittest
from fractions import Fraction

from src.engine.parser import PolynomialParser, parse_form, print_form
from src.errors import FamilyMismatchError, FormError, ParseError
from src.models.forms import VariableFamily


class TestParseForm(unittest.TestCase):
    """Test cases for parse_form and print_form."""

    def test_rational_coefficients(self):
        """Test integer and fractional coefficients with implicit products."""
        form = parse_form("2x^2 - 3/4 y z")
        self.assertEqual(form.coefficient((2, 0, 0)), 2)
        self.assertEqual(form.coefficient((0, 1, 1)), Fraction(-3, 4))
        self.assertEqual(print_form(form), "2*x^2 - 3/4*y*z")

    def test_parentheses_and_powers(self):
        """Test expansion of a parenthesized power."""
        self.assertEqual(print_form(parse_form("(x+y)^2")), "x^2 + 2*x*y + y^2")

    def test_round_trip(self):
        """Test that printed forms parse back to the same form."""
        for text in ("x^4 + y^4 + z^4", "x^3*y + y^3*z + x*z^3", "-x*y*z + 1/2*z^3"):
            form = parse_form(text)
            self.assertEqual(parse_form(print_form(form)), form)

    def test_dual_family(self):
        """Test parsing in the dual variables."""
        form = parse_form("u^3(v + w)", VariableFamily.DUAL)
        self.assertEqual(form.family, VariableFamily.DUAL)
        self.assertEqual(print_form(form), "u^3*v + u^3*w")

    def test_foreign_variable(self):
        """Test that a variable of the other family is a family mismatch."""
        with self.assertRaises(FamilyMismatchError):
            parse_form("u^2 + x^2")

    def test_non_homogeneous(self):
        """Test that mixed degrees are rejected."""
        with self.assertRaises(FormError):
            parse_form("x^2 + y")

    def test_declared_degree(self):
        """Test the declared degree check and the degree of the zero form."""
        with self.assertRaises(FormError):
            parse_form("x^3", degree=4)
        zero = parse_form("0", degree=3)
        self.assertTrue(zero.is_zero)
        self.assertEqual(zero.degree, 3)

    def test_cancelled_form(self):
        """Test that text cancelling to zero needs an explicit degree."""
        with self.assertRaises(FormError):
            parse_form("x^4-x^4")
        with self.assertRaises(FormError):
            parse_form("0")
        zero = parse_form("x^4 - x^4", degree=4)
        self.assertTrue(zero.is_zero)
        self.assertEqual(zero.degree, 4)

    def test_trailing_operator(self):
        """Test that a dangling operator reports its position."""
        with self.assertRaises(ParseError) as context:
            parse_form("x^2 +")
        self.assertEqual(context.exception.position, 5)

    def test_unexpected_character(self):
        """Test that an unknown character reports its position."""
        with self.assertRaises(ParseError) as context:
            parse_form("x^2 $ y")
        self.assertEqual(context.exception.position, 4)
        self.assertIn("at position 4", str(context.exception))

    def test_zero_denominator(self):
        """Test that 1/0 is rejected."""
        with self.assertRaises(ParseError):
            parse_form("1/0 x")

    def test_empty(self):
        """Test that empty text is rejected."""
        with self.assertRaises(ParseError):
            parse_form("   ")

    def test_unknown_variable(self):
        """Test that a name outside both families is rejected."""
        with self.assertRaises(ParseError):
            parse_form("x*q")


class TestPolynomialParser(unittest.TestCase):
    """Test cases for the parser over arbitrary variable names."""

    def test_indexed_names(self):
        """Test names with a numeric suffix."""
        parser = PolynomialParser(("r", "s1", "s2"))
        polynomial = parser.parse("12*r*s1 + s2^2 - s2^2")
        self.assertEqual(polynomial, {(1, 1, 0): Fraction(12)})

    def test_constant(self):
        """Test that a bare constant parses."""
        parser = PolynomialParser(("a",))
        self.assertEqual(parser.parse("7"), {(0,): Fraction(7)})


if __name__ == "__main__":
    unittest.main()
