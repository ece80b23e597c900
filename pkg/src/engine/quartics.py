"""
Harmonia Named Quartics
The plane quartics the fiber computations refer to, by name.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple

from src.engine.parser import parse_form
from src.errors import UnknownQuartic
from src.models.forms import TernaryForm, VariableFamily

# Initialize logger
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NamedQuartic:
    name: str
    form: TernaryForm
    description: str = ""


# name -> (family, equation, description)
_EQUATIONS: Dict[str, Tuple[VariableFamily, str, str]] = {
    "Fer": (VariableFamily.PRIMAL, "x^4 + y^4 + z^4", "Fermat quartic"),
    "Fer'": (VariableFamily.DUAL, "u^4 + v^4 + w^4", "dual Fermat quartic"),
    "C0": (VariableFamily.PRIMAL, "(x^4+y^4+z^4) - 6(x^2y^2 + x^2z^2 + y^2z^2)",
           "reduced point of the Fermat fiber"),
    "C1": (VariableFamily.PRIMAL, "(x^4+y^4+z^4) - 6(x^2y^2 - x^2z^2 - y^2z^2)",
           "reduced point of the Fermat fiber"),
    "C2": (VariableFamily.PRIMAL, "(x^4+y^4+z^4) - 6(-x^2y^2 + x^2z^2 - y^2z^2)",
           "reduced point of the Fermat fiber"),
    "C3": (VariableFamily.PRIMAL, "(x^4+y^4+z^4) - 6(-x^2y^2 - x^2z^2 + y^2z^2)",
           "reduced point of the Fermat fiber"),
    "D": (VariableFamily.DUAL, "u^3(v + w) + v^3(u + w) + w^3(u + v)",
          "dual quartic whose fiber has a single double point"),
    "Q": (VariableFamily.PRIMAL,
          "(x^4+y^4+z^4) - 4(x^3(y+z) + y^3(x+z) + z^3(x+y)) + 6(x^2y^2 + x^2z^2 + y^2z^2) - 12xyz(x+y+z)",
          "the double point of the fiber over D"),
    "Klein": (VariableFamily.PRIMAL, "x^3y + y^3z + z^3x", "Klein quartic"),
}

QUARTIC_NAMES: Tuple[str, ...] = tuple(_EQUATIONS)


@lru_cache(maxsize=None)
def named_quartic(name: str) -> NamedQuartic:
    """
    Look up a named quartic.

    Raises:
        UnknownQuartic: If no quartic is registered under this name
    """
    if name not in _EQUATIONS:
        raise UnknownQuartic(f"Unknown quartic {name!r}; known names: {', '.join(QUARTIC_NAMES)}")
    family, equation, description = _EQUATIONS[name]
    return NamedQuartic(name, parse_form(equation, family, 4), description)


def quartic(name: str) -> TernaryForm:
    return named_quartic(name).form
