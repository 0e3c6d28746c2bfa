"""The four starred multiplicative functions entering the closed formula
for the representation count.

All four take a :class:`~dimfactor.arith.Factorization`, never a bare
integer: they are only computable with the factorization in hand, and the
signature keeps that dependency explicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import Factorization, kronecker_m3, kronecker_m4


def s0_star(f: Factorization) -> Fraction:
    """prod (1 - 1/p^2) over primes dividing N to exponent >= 2.

    Equals 1 exactly when N is squarefree; always lies in (0, 1].
    """
    out = Fraction(1)
    for p, e in f:
        if e >= 2:
            out *= 1 - Fraction(1, p * p)
    return out


def nu_inf_star(f: Factorization) -> int:
    """prod (p-1) * p^floor(e/2 - 1) over primes with exponent e >= 2.

    Equals phi(D) for the largest D with D^2 | N; 1 on squarefree N.
    """
    out = 1
    for p, e in f:
        if e >= 2:
            # floor(e/2 - 1) == (e - 2) // 2 since e >= 2
            out *= (p - 1) * p ** ((e - 2) // 2)
    return out


def _quotient_exponents_squarefree(f: Factorization, p0: int, drop: int) -> bool:
    """Is N / p0^drop squarefree, judging from the factorization of N?"""
    for p, e in f:
        cap = 1 + (drop if p == p0 else 0)
        if e > cap:
            return False
    return True


def nu2_star(f: Factorization) -> int:
    """Twisted Kronecker value at -4: (-4|N) on squarefree N,
    -(-4|N/4) when 4 | N with N/4 squarefree, otherwise 0."""
    n = f.value()
    if f.is_squarefree():
        return kronecker_m4(n)
    if n % 4 == 0 and _quotient_exponents_squarefree(f, 2, 2):
        return -kronecker_m4(n // 4)
    return 0


def nu3_star(f: Factorization) -> int:
    """Twisted Kronecker value at -3: (-3|N) on squarefree N,
    -(-3|N/9) when 9 | N with N/9 squarefree, otherwise 0."""
    n = f.value()
    if f.is_squarefree():
        return kronecker_m3(n)
    if n % 9 == 0 and _quotient_exponents_squarefree(f, 3, 2):
        return -kronecker_m3(n // 9)
    return 0


@dataclass(frozen=True)
class StarValues:
    """Bundle of the four starred values at one level."""

    s0: Fraction
    nu_inf: int
    nu2: int
    nu3: int

    def __post_init__(self):
        if not 0 < self.s0 <= 1:
            raise ValueError("s0 must lie in (0, 1]")
        if self.nu_inf < 1:
            raise ValueError("nu_inf must be a positive integer")


def star_values(f: Factorization) -> StarValues:
    return StarValues(
        s0=s0_star(f), nu_inf=nu_inf_star(f), nu2=nu2_star(f), nu3=nu3_star(f)
    )
