"""
Unit tests for the named quartics.
"""
import unittest

from src.engine.apolarity import harmonic
from src.engine.parser import parse_form
from src.engine.quartics import QUARTIC_NAMES, named_quartic, quartic
from src.errors import HarmoniaError, UnknownQuartic
from src.models.forms import VariableFamily, scale, substitute


class TestNamedQuartics(unittest.TestCase):
    """Test cases for the quartic registry."""

    def test_names(self):
        """Test that every registered name resolves to a quartic."""
        self.assertIn("Klein", QUARTIC_NAMES)
        for name in QUARTIC_NAMES:
            entry = named_quartic(name)
            self.assertEqual(entry.name, name)
            self.assertEqual(entry.form.degree, 4)

    def test_families(self):
        """Test that Fer' and D are dual quartics."""
        self.assertEqual(quartic("Fer'").family, VariableFamily.DUAL)
        self.assertEqual(quartic("D").family, VariableFamily.DUAL)
        self.assertEqual(quartic("Q").family, VariableFamily.PRIMAL)

    def test_unknown(self):
        """Test that an unknown name raises a KeyError subclass."""
        with self.assertRaises(UnknownQuartic):
            named_quartic("Trott")
        with self.assertRaises(KeyError):
            quartic("Trott")
        with self.assertRaises(HarmoniaError):
            quartic("Trott")

    def test_c0(self):
        """Test the expansion of C0."""
        self.assertEqual(
            quartic("C0"),
            parse_form("x^4 + y^4 + z^4 - 6*x^2*y^2 - 6*x^2*z^2 - 6*y^2*z^2"),
        )

    def test_permutations_relate_c1_c2_c3(self):
        """Test that coordinate swaps carry C1 to C3 and to C2."""
        swap_xz = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
        swap_yz = [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
        self.assertEqual(substitute(quartic("C1"), swap_xz), quartic("C3"))
        self.assertEqual(substitute(quartic("C1"), swap_yz), quartic("C2"))

    def test_harmonic_of_fermat_points(self):
        """Test h_4 on the Fermat quartic and on C0."""
        fermat_dual = quartic("Fer'")
        self.assertEqual(harmonic(quartic("Fer")), scale(48, fermat_dual))
        self.assertEqual(harmonic(quartic("C0")), scale(192, fermat_dual))

    def test_d_is_symmetric(self):
        """Test that D is fixed by every coordinate swap."""
        swap_xy = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
        self.assertEqual(substitute(quartic("D"), swap_xy), quartic("D"))
        self.assertEqual(substitute(quartic("Q"), swap_xy), quartic("Q"))


if __name__ == "__main__":
    unittest.main()
