"""
Tests for the command-line front end.
"""
import json
import unittest
from unittest.mock import patch

from click.testing import CliRunner

from src.cli import cli, run
from src.engine.jacobian import parse_factorization
from src.engine.parser import parse_form
from src.models.forms import VariableFamily


class TestCommands(unittest.TestCase):
    """Test cases for each command's output."""

    def setUp(self):
        self.runner = CliRunner()

    def invoke(self, *args):
        return self.runner.invoke(cli, list(args))

    def test_harmonic(self):
        """Test h_4 of the Fermat quartic."""
        result = self.invoke("harmonic", "--form", "x^4+y^4+z^4")
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(result.output, "48*u^4 + 48*v^4 + 48*w^4\n")
        parsed = parse_form(result.output.strip(), VariableFamily.DUAL)
        self.assertEqual(parsed.coefficient((4, 0, 0)), 48)

    def test_harmonic_named_json(self):
        """Test the JSON report for a named quartic."""
        result = self.invoke("harmonic", "--named", "C0", "--json")
        self.assertEqual(result.exit_code, 0, result.output)
        data = json.loads(result.stdout)
        self.assertEqual(data["value"], "192*u^4 + 192*v^4 + 192*w^4")
        self.assertEqual(data["n"], 4)

    def test_trilinear(self):
        """Test t_2 on three copies of a conic."""
        result = self.invoke("trilinear", "--form", "x^2+y^2+z^2", "--form", "x^2+y^2+z^2",
                             "--form", "x^2+y^2+z^2")
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(result.output, "24\n")

    def test_invariant_a(self):
        """Test A_4 of the Fermat quartic."""
        result = self.invoke("invariant-a", "--form", "x^4+y^4+z^4")
        self.assertEqual(result.output, f"{3 * 48 * 24}\n")

    def test_rho(self):
        """Test ρ_4 of the Klein quartic, factored then as an integer."""
        result = self.invoke("rho", "--form", "x^3*y+y^3*z+z^3*x")
        self.assertEqual(result.exit_code, 0, result.output)
        factored, integer = result.output.splitlines()
        self.assertEqual(factored, "2^25 * 3^15")
        self.assertEqual(int(integer), 2 ** 25 * 3 ** 15)
        self.assertEqual(parse_factorization(factored), int(integer))

    def test_rho_zero(self):
        """Test a vanishing ρ."""
        result = self.invoke("rho", "--form", "x^4")
        self.assertEqual(result.output, "0\n0\n")

    def test_kappa(self):
        """Test κ_2."""
        result = self.invoke("kappa", "--n", "2")
        self.assertEqual(result.output, "2^3\n8\n")

    def test_lie_check(self):
        """Test that every sl_3 value vanishes."""
        result = self.invoke("lie-check", "--form", "x^4 + 2*x^3*y - 3*y^2*z^2 + x*y*z^2")
        self.assertEqual(result.exit_code, 0, result.output)
        lines = result.output.splitlines()
        self.assertEqual(len(lines), 8)
        self.assertTrue(all(line.endswith(": 0") for line in lines))

    def test_gb_verify_default(self):
        """Test the Fermat fiber basis."""
        result = self.invoke("gb-verify")
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn("153 S-pairs", result.output)

    def test_gb_verify_failure(self):
        """Test that a non-basis exits with 1."""
        result = self.invoke("gb-verify", "--form", "s1^2 - s2^2", "--form", "s1*s2", "--json")
        self.assertEqual(result.exit_code, 1)
        self.assertEqual(json.loads(result.stdout)["failures"], [[0, 1]])

    def test_fiber_fermat(self):
        """Test the Fermat fiber report as JSON."""
        result = self.invoke("fiber-fermat", "--json")
        self.assertEqual(result.exit_code, 0, result.output)
        data = json.loads(result.stdout)
        self.assertEqual(data["degree"], 15)
        self.assertEqual([p["multiplicity"] for p in data["points"]], [11, 1, 1, 1, 1])
        self.assertEqual(data["status"], "complete")

    def test_fiber_d_default(self):
        """Test that the default D check is partial and succeeds."""
        result = self.invoke("fiber-d")
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn("partial", result.output)
        self.assertIn("Q", result.output)

    def test_named(self):
        """Test the named quartic listing and lookup."""
        listing = self.invoke("named")
        self.assertIn("Klein", listing.output)
        single = self.invoke("named", "--named", "Fer")
        self.assertEqual(single.output, "x^4 + y^4 + z^4\n")

    def test_deterministic(self):
        """Test that identical arguments give identical output."""
        first = self.invoke("fiber-fermat")
        second = self.invoke("fiber-fermat")
        self.assertEqual(first.output, second.output)


class TestUsageErrors(unittest.TestCase):
    """Test cases for the exit-code contract on bad input."""

    def setUp(self):
        self.runner = CliRunner()

    def test_malformed_form(self):
        """Test that a parse error is a usage error."""
        result = self.runner.invoke(cli, ["harmonic", "--form", "x^2 +"])
        self.assertEqual(result.exit_code, 2)

    def test_missing_form(self):
        """Test that a form is required."""
        self.assertEqual(self.runner.invoke(cli, ["harmonic"]).exit_code, 2)

    def test_unknown_named(self):
        """Test that an unknown quartic name is a usage error."""
        self.assertEqual(self.runner.invoke(cli, ["rho", "--named", "Trott"]).exit_code, 2)

    def test_dual_named(self):
        """Test that a dual quartic is refused where a primal form is needed."""
        self.assertEqual(self.runner.invoke(cli, ["harmonic", "--named", "D"]).exit_code, 2)

    def test_trilinear_count(self):
        """Test that trilinear needs three forms."""
        result = self.runner.invoke(cli, ["trilinear", "--form", "x^2", "--form", "y^2"])
        self.assertEqual(result.exit_code, 2)

    def test_odd_rho(self):
        """Test that ρ of an odd-degree form is a usage error."""
        self.assertEqual(self.runner.invoke(cli, ["rho", "--form", "x^3"]).exit_code, 2)

    def test_unknown_command(self):
        """Test an unknown command."""
        self.assertEqual(self.runner.invoke(cli, ["frobnicate"]).exit_code, 2)

    def test_zero_form_needs_degree(self):
        """Test that a form cancelling to zero needs --n."""
        self.assertEqual(self.runner.invoke(cli, ["harmonic", "--form", "x^4-x^4"]).exit_code, 2)
        result = self.runner.invoke(cli, ["harmonic", "--form", "x^4-x^4", "--n", "4"])
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(result.output, "0\n")

    @patch("src.cli.harmonic", side_effect=RuntimeError("boom"))
    def test_internal_error(self, _harmonic):
        """Test that an unexpected exception exits with 3, not the verification code."""
        result = self.runner.invoke(cli, ["harmonic", "--form", "x^4"])
        self.assertEqual(result.exit_code, 3)
        self.assertIn("boom", result.output)


class TestRun(unittest.TestCase):
    """Test cases for run(argv)."""

    def test_exit_codes(self):
        """Test that run returns the exit code instead of raising."""
        self.assertEqual(run(["kappa", "--n", "2"]), 0)
        self.assertEqual(run(["harmonic", "--form", "x^2 +"]), 2)
        self.assertEqual(run(["frobnicate"]), 2)
        self.assertEqual(run(["gb-verify", "--form", "s1^2 - s2^2", "--form", "s1*s2"]), 1)

    @patch("src.cli.harmonic", side_effect=RuntimeError("boom"))
    def test_internal_error_code(self, _harmonic):
        """Test that run returns 3 on an unexpected exception."""
        self.assertEqual(run(["harmonic", "--form", "x^4"]), 3)


if __name__ == "__main__":
    unittest.main()
