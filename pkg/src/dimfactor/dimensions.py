"""The dimension oracle: exact counts of automorphic representations and
newform dimensions, plus the derived sharp multiplicative values at prime
powers.

Two kinds of quantity live here.  ``dim_G`` and ``dim_H`` take a bare
integer level because they are computable from residues alone; ``dim_A``,
``dim_B`` and ``dim_delta`` take a :class:`Factorization` because they
genuinely need one.  Detectors and factoring reductions consume these
numbers only through :class:`DimensionOracle` values, never by factoring
the level themselves.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .arith import (
    Factorization,
    factor_trial,
    kronecker_m3,
    kronecker_m4,
    weight_class,
)
from .errors import InternalInconsistencyError
from .multfuncs import nu2_star, nu3_star, nu_inf_star, s0_star


def level_one_newform_dim(k: int) -> int:
    """B(k, 1) in closed form: (k-7)/12 + c2 + c3 + delta2.

    This is the dimension of the full cusp space at level one; it is a
    nonnegative integer for every positive even weight.
    """
    wc = weight_class(k)
    val = Fraction(k - 7, 12) + wc.c2 + wc.c3 + wc.delta2
    if val.denominator != 1 or val < 0:
        raise InternalInconsistencyError(f"level-one dimension {val} for k={k}")
    return int(val)


def dim_G(k: int, n: int) -> Fraction:
    """(k-1)/12 * N - 1/2 + c2(k)(-4|N) + c3(k)(-3|N), exactly.

    Computable without factoring N; the denominator always divides 12.
    """
    if n < 1:
        raise ValueError(f"level must be positive, got {n}")
    wc = weight_class(k)
    return (
        Fraction(k - 1, 12) * n
        - Fraction(1, 2)
        + wc.c2 * kronecker_m4(n)
        + wc.c3 * kronecker_m3(n)
    )


def dim_H(k: int, n: int) -> Fraction:
    """dim_G minus the closed-form level-one dimension; equals the
    newform dimension exactly when N is prime (with small-N exceptions)."""
    return dim_G(k, n) - level_one_newform_dim(k)


def dim_A(k: int, f: Factorization) -> int:
    """Number of automorphic representations at weight k, level N = f.value().

    Evaluates the explicit linear combination of the starred
    multiplicative functions; the rational parts must cancel to a
    nonnegative integer, and we insist they do.  Level 1 is defined to be
    the level-one newform dimension so divisor sums extend to N = 1.
    """
    n = f.value()
    if n == 1:
        return level_one_newform_dim(k)
    wc = weight_class(k)
    val = (
        Fraction(k - 1, 12) * n * s0_star(f)
        - Fraction(nu_inf_star(f), 2)
        + wc.c2 * nu2_star(f)
        + wc.c3 * nu3_star(f)
    )
    if val.denominator != 1 or val < 0:
        raise InternalInconsistencyError(
            f"representation count A({k},{n}) = {val} is not a nonnegative integer"
        )
    return int(val)


def dim_delta(k: int, f: Factorization) -> Fraction:
    """The gap dim_G - dim_A; its sign encodes the squarefree trichotomy."""
    n = f.value()
    if n < 2:
        raise ValueError(f"level must be >= 2, got {n}")
    return dim_G(k, n) - dim_A(k, f)


def delta_decomposition(k: int, f: Factorization) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Diagnostic four-term split of the gap:

    (k-1)/12 N (1 - s0*) + (nu_inf* - 1)/2
        + c2 ((-4|N) - nu2*) + c3 ((-3|N) - nu3*).

    The terms sum exactly to :func:`dim_delta`.
    """
    n = f.value()
    if n < 2:
        raise ValueError(f"level must be >= 2, got {n}")
    wc = weight_class(k)
    t1 = Fraction(k - 1, 12) * n * (1 - s0_star(f))
    t2 = Fraction(nu_inf_star(f) - 1, 2)
    t3 = wc.c2 * (kronecker_m4(n) - nu2_star(f))
    t4 = wc.c3 * (kronecker_m3(n) - nu3_star(f))
    return t1, t2, t3, t4


def _mobius_divisor_terms(f: Factorization):
    """Yield (sign, divisor factorization) over divisors d | N whose
    cofactor N/d is squarefree, i.e. the nonzero terms of the Mobius
    inversion.  Each prime keeps exponent e or drops to e - 1."""
    per_prime = [((p, e), (p, e - 1)) for p, e in f]
    for combo in product(*per_prime):
        reduced = sum(1 for (p, e), (_, e0) in zip(combo, f) if e < e0)
        pairs = tuple((p, e) for p, e in combo if e > 0)
        yield (-1) ** reduced, Factorization(pairs)


def dim_B(k: int, f: Factorization) -> int:
    """Newform dimension at weight k and level N = f.value().

    Obtained by Mobius inversion of the divisor-sum identity relating
    the representation count to newform dimensions over divisors of N.
    The result must be a nonnegative integer.
    """
    total = 0
    for sign, d in _mobius_divisor_terms(f):
        total += sign * dim_A(k, d)
    if total < 0:
        raise InternalInconsistencyError(
            f"newform dimension B({k},{f.value()}) = {total} is negative"
        )
    return total


# --- sharp values at prime powers --------------------------------------

# Weights used to extract the sharp multiplicative values from newform
# dimensions at a prime power.  14 and 26 share both Kronecker
# coefficients, so their difference isolates the leading term, and none
# of the four weights is 2, so the Mobius term drops out.
_EXTRACTION_WEIGHTS = (12, 14, 16, 26)


@dataclass(frozen=True)
class SharpPrimePowerValues:
    """Sharp multiplicative data at p^e: x = p^e * s0#(p^e),
    w = nu_inf#(p^e), y = nu2#(p^e), z = nu3#(p^e)."""

    p: int
    e: int
    x: int
    w: int
    y: int
    z: int


def _as_int(val: Fraction, what: str) -> int:
    if val.denominator != 1:
        raise InternalInconsistencyError(f"{what} = {val} is not an integer")
    return int(val)


@lru_cache(maxsize=4096)
def sharp_values_at_prime_power(p: int, e: int) -> SharpPrimePowerValues:
    """Solve for the sharp multiplicative values at p^e from newform
    dimensions at the four extraction weights.

    The system is triangular: B(26)-B(14) gives x, then w, y, z follow.
    All four solutions must be integral, and at e = 1 they must agree
    with the known prime values (x = p-1, w = 0, y = (-4|p)-1,
    z = (-3|p)-1).
    """
    if e < 1:
        raise ValueError(f"exponent must be >= 1, got {e}")
    f = Factorization(((p, e),))
    b12, b14, b16, b26 = (dim_B(k, f) for k in _EXTRACTION_WEIGHTS)
    x = b26 - b14
    w = 2 * x - b12 - b14
    y = _as_int(4 * (b16 - Fraction(5, 4) * x + Fraction(w, 2)), f"nu2#({p}^{e})")
    z = _as_int(
        3 * (b12 - Fraction(11, 12) * x + Fraction(w, 2) - Fraction(y, 4)),
        f"nu3#({p}^{e})",
    )
    if y not in (0, 1, -1, 2, -2) or z not in (0, 1, -1, 2, -2):
        raise InternalInconsistencyError(
            f"sharp Kronecker values at {p}^{e} out of range: y={y}, z={z}"
        )
    if e == 1:
        ok = (
            x == p - 1
            and w == 0
            and y == kronecker_m4(p) - 1
            and z == kronecker_m3(p) - 1
        )
        if not ok:
            raise InternalInconsistencyError(
                f"sharp values at prime {p} disagree with the known closed forms"
            )
    return SharpPrimePowerValues(p=p, e=e, x=x, w=w, y=y, z=z)


def sharp_s0_on_squarefull(L: Factorization) -> int:
    """L * s0#(L) for squarefull L, by multiplicativity over prime powers.

    Returns 1 for L = 1.  The extraction produces integers at every prime
    power, so the product is an exact integer.
    """
    if not L.is_squarefull():
        raise ValueError(f"{L.value()} is not squarefull")
    out = 1
    for p, e in L:
        out *= sharp_values_at_prime_power(p, e).x
    return out


# --- the oracle boundary ------------------------------------------------


@dataclass(frozen=True)
class OracleSample:
    """One tagged dimension value; the only currency the reduction
    algorithms may consume."""

    kind: str  # "A" or "B"
    k: int
    n: int
    value: int

    def __post_init__(self):
        if self.kind not in ("A", "B"):
            raise ValueError(f"kind must be 'A' or 'B', got {self.kind!r}")
        if self.value < 0:
            raise ValueError("dimension values are nonnegative")


class DimensionOracle:
    """Interface for anything that can answer dimension queries.

    Implementations must be deterministic per (kind, k, N) and safe to
    share across threads.
    """

    def query_A(self, k: int, n: int) -> OracleSample:
        raise NotImplementedError

    def query_B(self, k: int, n: int) -> OracleSample:
        raise NotImplementedError


class DefaultOracle(DimensionOracle):
    """Oracle backed by trial factorization plus the explicit formulas.

    This stands in for the hypothetical fast algorithm the reductions
    assume; it is honest but slow, since it factors the level.  The
    memo cache is guarded by a lock so concurrent queries are safe.
    """

    def __init__(self, cache: bool = True):
        self._cache: dict[tuple[str, int, int], OracleSample] | None = (
            {} if cache else None
        )
        self._lock = threading.Lock()

    def _answer(self, kind: str, k: int, n: int) -> OracleSample:
        if n < 1:
            raise ValueError(f"level must be positive, got {n}")
        if self._cache is not None:
            with self._lock:
                hit = self._cache.get((kind, k, n))
            if hit is not None:
                return hit
        f = factor_trial(n)
        value = dim_A(k, f) if kind == "A" else dim_B(k, f)
        sample = OracleSample(kind=kind, k=k, n=n, value=value)
        if self._cache is not None:
            with self._lock:
                self._cache[(kind, k, n)] = sample
        return sample

    def query_A(self, k: int, n: int) -> OracleSample:
        return self._answer("A", k, n)

    def query_B(self, k: int, n: int) -> OracleSample:
        return self._answer("B", k, n)


class StaticOracle(DimensionOracle):
    """Oracle that serves only preloaded samples; used to prove the
    reductions touch nothing but oracle values."""

    def __init__(self, samples):
        self._table = {(s.kind, s.k, s.n): s for s in samples}

    def _lookup(self, kind: str, k: int, n: int) -> OracleSample:
        try:
            return self._table[(kind, k, n)]
        except KeyError:
            raise LookupError(f"no preloaded sample for {kind}({k},{n})") from None

    def query_A(self, k: int, n: int) -> OracleSample:
        return self._lookup("A", k, n)

    def query_B(self, k: int, n: int) -> OracleSample:
        return self._lookup("B", k, n)
