"""
Harmonia Report Models
This module contains Pydantic models for the results the CLI serializes.

Exact rationals are carried as strings ("-6", "3/4"); no report holds a float.
"""
import logging
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Union

from pydantic import BaseModel, Field

# Initialize logger
logger = logging.getLogger(__name__)


def exact(value: Union[int, Fraction]) -> str:
    """Serialize an exact rational."""
    return str(Fraction(value))


def exact_list(values: Sequence[Union[int, Fraction]]) -> List[str]:
    return [exact(v) for v in values]


# ========== Invariant Reports ==========

class ValueReport(BaseModel):
    """A single exact result: a form, a pairing value or an invariant."""
    command: str
    inputs: List[str] = Field(default_factory=list)
    n: Optional[int] = None
    value: str
    factorization: Optional[Dict[str, int]] = None

class RhoReport(BaseModel):
    """ρ_n evaluated at a concrete form."""
    n: int
    form: str
    rho: str
    factorization: Optional[Dict[str, int]] = None


class LieCheckReport(BaseModel):
    """⟨h_n(q), g·q⟩ for each basis derivation g."""
    form: str
    values: Dict[str, str] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(Fraction(v) == 0 for v in self.values.values())


# ========== Gröbner Reports ==========

class GroebnerReport(BaseModel):
    """Outcome of Buchberger's criterion over every pair of a generator list."""
    pairs: int
    failures: List[List[int]] = Field(default_factory=list)
    initial_ideal: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


class StandardMonomialReport(BaseModel):
    """Standard monomials of a dehomogenized initial ideal."""
    dehomogenizing_variable: str
    zero_dimensional: bool
    monomials: List[str] = Field(default_factory=list)
    # variables with no pure power in the initial ideal
    unbounded: List[str] = Field(default_factory=list)

    @property
    def count(self) -> Optional[int]:
        return len(self.monomials) if self.zero_dimensional else None


# ========== Fiber Reports ==========

class FiberStatus(str, Enum):
    COMPLETE = "complete"
    PARTIAL = "partial"
    FAILED = "failed"


class FiberPoint(BaseModel):
    """A support point of a fiber, normalized so its first nonzero coordinate is 1."""
    coords: List[str]
    # None when the computation did not determine it
    multiplicity: Optional[int] = None
    reduced: bool
    jacobian_rank: Optional[int] = None
    quartic: str
    name: Optional[str] = None
    on_fiber: bool = True
    proportionality: Optional[str] = None


class FiberReport(BaseModel):
    """Support, multiplicities and degree of a fiber scheme of h_4, with the evidence."""
    target: str
    degree: Optional[int] = None
    points: List[FiberPoint] = Field(default_factory=list)
    status: FiberStatus = FiberStatus.COMPLETE
    standard_monomials: Optional[int] = None
    distinct_points: Optional[int] = None
    failures: List[str] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @property
    def multiplicities(self) -> List[Optional[int]]:
        return [p.multiplicity for p in self.points]

    def fail(self, step: str) -> None:
        """Record a failed verification step and downgrade the status."""
        logger.warning(f"Fiber verification failed: {step}")
        self.failures.append(step)
        self.status = FiberStatus.FAILED
