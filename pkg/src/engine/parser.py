"""
Harmonia Polynomial Parser
This module reads and writes polynomial text.

Grammar (whitespace ignored):
    form   := term (("+"|"-") term)* | "0"
    term   := [coeff] ["*"] factor ("*" factor)*     ; leading sign allowed
    factor := var ["^" uint] | "(" form ")"
    coeff  := integer | integer "/" positive-integer

"*" is optional between a coefficient and a factor and between factors. A
bare coefficient is accepted as a term so that constants parse.
"""
import logging
import re
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from src.errors import FamilyMismatchError, FormError, ParseError
from src.models.forms import TernaryForm, VariableFamily

# Initialize logger
logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]
Polynomial = Dict[Exponents, Fraction]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z]\d*)|(?P<op>[-+*/^()]))")


class _Token:
    __slots__ = ("kind", "text", "position")

    def __init__(self, kind: str, text: str, position: int):
        self.kind = kind
        self.text = text
        self.position = position


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN.match(text, position)
        if not match:
            start = len(text) - len(text[position:].lstrip())
            raise ParseError(f"Unexpected character {text[start]!r}", text, start)
        kind = match.lastgroup
        tokens.append(_Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


def _add_into(target: Polynomial, source: Polynomial, sign: int = 1) -> None:
    for e, c in source.items():
        value = target.get(e, 0) + sign * c
        if value:
            target[e] = value
        else:
            target.pop(e, None)


def _multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    result: Polynomial = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            value = result.get(e, 0) + c1 * c2
            if value:
                result[e] = value
            else:
                result.pop(e, None)
    return result


class PolynomialParser:
    """
    Recursive descent parser over a fixed list of variable names.

    Names in `foreign` belong to a different variable family: they are
    recognized so that the error says so instead of "unknown variable".
    """

    def __init__(self, names: Sequence[str], foreign: Sequence[str] = ()):
        self.names = tuple(names)
        self.index = {name: i for i, name in enumerate(self.names)}
        self.foreign = frozenset(foreign)

    def parse(self, text: str) -> Polynomial:
        """
        Parse text into a sparse map exponents -> coefficient.

        Args:
            text: The polynomial text

        Returns:
            The polynomial, with zero coefficients removed
        """
        self._text = text
        self._tokens = _tokenize(text)
        self._pos = 0
        if self._peek().kind == "end":
            raise ParseError("Empty polynomial", text, 0)
        result = self._form()
        token = self._peek()
        if token.kind != "end":
            raise ParseError(f"Unexpected {token.text!r}", text, token.position)
        return result

    # ---- token helpers ----

    def _peek(self) -> _Token:
        return self._tokens[self._pos]

    def _next(self) -> _Token:
        token = self._tokens[self._pos]
        self._pos += 1
        return token

    def _accept(self, op: str) -> bool:
        token = self._peek()
        if token.kind == "op" and token.text == op:
            self._pos += 1
            return True
        return False

    def _expect_int(self, what: str) -> int:
        token = self._next()
        if token.kind != "int":
            raise ParseError(f"Expected {what}", self._text, token.position)
        return int(token.text)

    # ---- grammar ----

    def _form(self) -> Polynomial:
        result: Polynomial = {}
        sign = -1 if self._accept("-") else 1
        if sign == 1:
            self._accept("+")
        _add_into(result, self._term(), sign)
        while True:
            if self._accept("+"):
                sign = 1
            elif self._accept("-"):
                sign = -1
            else:
                return result
            _add_into(result, self._term(), sign)

    def _starts_factor(self) -> bool:
        token = self._peek()
        return token.kind == "name" or (token.kind == "op" and token.text == "(")

    def _term(self) -> Polynomial:
        token = self._peek()
        coefficient = Fraction(1)
        has_coefficient = False
        if token.kind == "int":
            has_coefficient = True
            numerator = int(self._next().text)
            if self._accept("/"):
                position = self._peek().position
                denominator = self._expect_int("a denominator")
                if denominator == 0:
                    raise ParseError("Zero denominator", self._text, position)
                coefficient = Fraction(numerator, denominator)
            else:
                coefficient = Fraction(numerator)
        elif not self._starts_factor():
            raise ParseError("Expected a term", self._text, token.position)

        result: Polynomial = {(0,) * len(self.names): coefficient} if coefficient else {}
        if self._accept("*") and not self._starts_factor():
            raise ParseError("Expected a factor after '*'", self._text, self._peek().position)
        while self._starts_factor():
            result = _multiply(result, self._factor())
            if self._accept("*") and not self._starts_factor():
                raise ParseError("Expected a factor after '*'", self._text, self._peek().position)
        if not has_coefficient and token is self._peek():
            raise ParseError("Expected a term", self._text, token.position)
        return result

    def _factor(self) -> Polynomial:
        token = self._next()
        if token.kind == "op" and token.text == "(":
            base = self._form()
            closing = self._next()
            if not (closing.kind == "op" and closing.text == ")"):
                raise ParseError("Expected ')'", self._text, closing.position)
        elif token.text in self.index:
            exponents = [0] * len(self.names)
            exponents[self.index[token.text]] = 1
            base = {tuple(exponents): Fraction(1)}
        elif token.text in self.foreign:
            raise FamilyMismatchError(
                f"Variable {token.text!r} belongs to another family at position {token.position}"
            )
        else:
            raise ParseError(f"Unknown variable {token.text!r}", self._text, token.position)

        if self._accept("^"):
            e = self._expect_int("an exponent")
            result: Polynomial = {(0,) * len(self.names): Fraction(1)}
            for _ in range(e):
                result = _multiply(result, base)
            return result
        return base


def parse_form(text: str, family: VariableFamily = VariableFamily.PRIMAL,
               degree: Optional[int] = None) -> TernaryForm:
    """
    Parse a homogeneous ternary form.

    Args:
        text: The form text, e.g. "x^4+y^4+z^4"
        family: The variable family the text must use
        degree: Declared degree; required when the text is the zero form

    Returns:
        The canonical sparse form
    """
    parser = PolynomialParser(family.variables, family.other.variables)
    polynomial = parser.parse(text)
    degrees = {sum(e) for e in polynomial}
    if len(degrees) > 1:
        raise FormError(f"Non-homogeneous form: terms of degrees {sorted(degrees)}")
    found = degrees.pop() if degrees else None
    if degree is not None and found is not None and found != degree:
        raise FormError(f"Form has degree {found}, expected {degree}")
    if found is None and degree is None:
        raise FormError(f"{text!r} is the zero form; give its degree explicitly")
    n = found if found is not None else degree
    return TernaryForm(family, n, polynomial)


def print_form(f: TernaryForm) -> str:
    """Canonical text of a form: terms in descending graded-lex order, "0" for zero."""
    return str(f)
