"""
Harmonia Models Package
Provides the exact form types and the Pydantic report models.
"""

from src.models.forms import LaurentMonomial, Monomial, TernaryForm, VariableFamily
from src.models.reports import (
    FiberPoint, FiberReport, FiberStatus, GroebnerReport, LieCheckReport, RhoReport,
    StandardMonomialReport, ValueReport,
)

__all__ = [
    'LaurentMonomial', 'Monomial', 'TernaryForm', 'VariableFamily',
    'FiberPoint', 'FiberReport', 'FiberStatus', 'GroebnerReport', 'LieCheckReport', 'RhoReport',
    'StandardMonomialReport', 'ValueReport',
]
