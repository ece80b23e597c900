"""
Harmonia Combinatorics
Memoized factorials and binomials over Python integers.
"""
import math
from functools import lru_cache


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    return math.factorial(n)


@lru_cache(maxsize=None)
def binomial(a: int, b: int) -> int:
    """C(a, b), zero when b < 0 or b > a."""
    if a < 0:
        raise ValueError(f"binomial with negative top argument {a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def monomial_factorial(exponents) -> int:
    """a!·b!·c! for the exponent triple (a, b, c)."""
    result = 1
    for e in exponents:
        result *= factorial(e)
    return result
