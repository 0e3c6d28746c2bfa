"""Probabilistic factoring reductions driven by oracle dimension values.

The black-box discipline is strict: nothing here reads the factorization
of the input level except through the supplied oracle values, O(1)
divisibility checks by 4, 8, 9 and 27, and trial division by primes the
algorithms themselves discover.  In particular the ground-truth
factorizer is never imported.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .arith import Factorization, is_probable_prime, kronecker_m3, kronecker_m4, weight_class
from .dimensions import dim_G, sharp_s0_on_squarefull
from .errors import FactoringFailureError, InconsistentInputsError

DEFAULT_RETRY_BUDGET = 128

# Starred Kronecker pairs (nu2*, nu3*) for levels up to 37, where the
# identity tests used for larger levels are not yet conclusive.
_SMALL_NU23 = {
    1: (1, 1), 2: (0, -1), 3: (-1, 0), 4: (-1, 0), 5: (1, -1), 6: (0, 0),
    7: (-1, 1), 8: (0, 0), 9: (0, -1), 10: (0, 1), 11: (-1, -1), 12: (1, 0),
    13: (1, 1), 14: (0, -1), 15: (-1, 0), 16: (0, 0), 17: (1, -1), 18: (0, 1),
    19: (-1, 1), 20: (-1, 0), 21: (1, 0), 22: (0, 1), 23: (-1, -1), 24: (0, 0),
    25: (0, 0), 26: (0, -1), 27: (0, 0), 28: (1, 0), 29: (1, -1), 30: (0, 0),
    31: (-1, 1), 32: (0, 0), 33: (1, 0), 34: (0, 1), 35: (-1, -1), 36: (0, 0),
    37: (1, 1),
}


@dataclass(frozen=True)
class SquarefullSplit:
    """N = E * L with E squarefree, L squarefull and gcd(E, L) = 1.

    E's squarefreeness is guaranteed by true invariant inputs; it is not
    independently certified here (that happens when E is factored)."""

    E: int
    L: Factorization

    def __post_init__(self):
        if self.E < 1:
            raise ValueError("squarefree part must be positive")
        if not self.L.is_squarefull():
            raise ValueError("squarefull part has an exponent below 2")
        if math.gcd(self.E, self.L.value()) != 1:
            raise ValueError("parts are not coprime")

    def n(self) -> int:
        return self.E * self.L.value()


# --- factoring d from a totient multiple --------------------------------


def _iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) by Newton iteration, exact for any size."""
    if n < 2 or k == 1:
        return n
    x = 1 << ((n.bit_length() - 1) // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _exact_power_base(n: int) -> tuple[int, int] | None:
    """(r, j) with r**j == n and j >= 2 minimal, or None."""
    for j in range(2, n.bit_length() + 1):
        r = _iroot(n, j)
        if r < 2:
            return None
        if r**j == n:
            return r, j
    return None


def _sqrt1_split(c: int, m: int, rng: random.Random, budget: int) -> int:
    """A nontrivial proper factor of odd composite non-prime-power c,
    found through a nontrivial square root of 1 along the 2-power chain
    of the exponent m (a multiple of phi(c)).

    A base coprime to c with base**m != 1 (mod c) proves that m is not a
    totient multiple, so that situation aborts immediately.
    """
    t = m
    s = 0
    while t % 2 == 0:
        t //= 2
        s += 1
    for _ in range(budget):
        a = rng.randrange(2, c - 1)
        g = math.gcd(a, c)
        if 1 < g:
            return g  # free split; g < c since a < c
        x = pow(a, t, c)
        if x == 1:
            continue
        reached_one = False
        for _ in range(s):
            y = x * x % c
            if y == 1:
                if x != c - 1:
                    g = math.gcd(x - 1, c)
                    if 1 < g < c:
                        return g
                    g = math.gcd(x + 1, c)
                    if 1 < g < c:
                        return g
                reached_one = True
                break
            x = y
        if not reached_one and x != 1:
            raise FactoringFailureError(
                f"{m} is not a multiple of phi({c}): witness base {a}"
            )
    raise FactoringFailureError(f"failed to split {c} within {budget} rounds")


def _phi_factor_into(
    c: int, m: int, rng: random.Random, budget: int, counts: dict[int, int]
) -> None:
    while c % 2 == 0:
        counts[2] = counts.get(2, 0) + 1
        c //= 2
    if c == 1:
        return
    if is_probable_prime(c, rng):
        counts[c] = counts.get(c, 0) + 1
        return
    power = _exact_power_base(c)
    if power is not None:
        r, j = power
        sub: dict[int, int] = {}
        _phi_factor_into(r, m, rng, budget, sub)
        for p, e in sub.items():
            counts[p] = counts.get(p, 0) + e * j
        return
    f = _sqrt1_split(c, m, rng, budget)
    _phi_factor_into(f, m, rng, budget, counts)
    _phi_factor_into(c // f, m, rng, budget, counts)


def factor_given_phi_multiple(
    d: int, m: int, rng: random.Random, retry_budget: int = DEFAULT_RETRY_BUDGET
) -> Factorization:
    """Complete factorization of d from any multiple m of phi(d).

    Classic construction: random bases are walked along the 2-power chain
    of m to expose nontrivial square roots of 1 modulo composite factors,
    which split d by gcds; prime powers are handled by exact root
    extraction.  The output is verified by recomposition and per-prime
    primality checks before returning.
    """
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if d == 1:
        return Factorization(())
    counts: dict[int, int] = {}
    _phi_factor_into(d, m, rng, retry_budget, counts)
    fac = Factorization(tuple(sorted(counts.items())))
    if fac.value() != d:
        raise FactoringFailureError(f"recomposition mismatch while factoring {d}")
    return fac


# --- starred Kronecker values from one oracle value ----------------------


def recover_nu23_star(N: int, k: int, a_value: int) -> tuple[int, int]:
    """(nu2*, nu3*) of N from the single oracle value a_value = A(k, N).

    Uses only divisibility of N by 4, 8, 9 and 27, the squarefree
    characterization, and two exact identity tests on the known value;
    levels up to 37 come from a lookup table.
    """
    if N < 1:
        raise ValueError(f"level must be positive, got {N}")
    if N <= 37:
        return _SMALL_NU23[N]
    wc = weight_class(k)
    by4, by9 = N % 4 == 0, N % 9 == 0
    if not by4 and not by9:
        if dim_G(k, N) == a_value:  # squarefree exactly here (N >= 38)
            return kronecker_m4(N), kronecker_m3(N)
        return 0, 0
    nu2 = nu3 = 0
    if by9 and N % 27 != 0:
        # identity satisfied exactly when N/9 is squarefree
        rhs = Fraction(2 * (k - 1), 27) * N - 1 - wc.c3 * kronecker_m3(N // 9)
        if rhs == a_value:
            nu3 = -kronecker_m3(N // 9)
    if by4 and N % 8 != 0:
        # identity satisfied exactly when N/4 is squarefree
        rhs = Fraction(k - 1, 16) * N - Fraction(1, 2) - wc.c2 * kronecker_m4(N // 4)
        if rhs == a_value:
            nu2 = -kronecker_m4(N // 4)
    return nu2, nu3


# --- squarefull part from invariants -------------------------------------


def factor_squarefull_from_invariants(
    N: int,
    s0star: Fraction,
    nuinfstar: int,
    rng: random.Random,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
) -> SquarefullSplit:
    """SquarefullSplit of N from the true values of the two starred
    invariants.

    Repeatedly factors the denominator of the current s0* value (its
    product with the current nu_inf* value is a totient multiple), peels
    the discovered primes out of N, divides the invariants down by the
    peeled part, and recurses until the residual s0* value is 1.
    """
    if N < 1:
        raise ValueError(f"level must be positive, got {N}")
    s0 = Fraction(s0star)
    if not 0 < s0 <= 1:
        raise InconsistentInputsError(f"s0* = {s0} outside (0, 1]")
    if nuinfstar < 1:
        raise InconsistentInputsError(f"nu_inf* = {nuinfstar} is not positive")
    nu = nuinfstar
    n_left = N
    pairs: list[tuple[int, int]] = []
    while s0 != 1:
        d = s0.denominator  # > 1 since s0 < 1 in lowest terms
        fac_d = factor_given_phi_multiple(d, d * nu, rng, retry_budget)
        peel_s0 = Fraction(1)
        peel_nu = 1
        for p, _ in fac_d:
            e = 0
            while n_left % p == 0:
                n_left //= p
                e += 1
            if e < 2:
                raise InconsistentInputsError(
                    f"prime {p} from the s0* denominator does not divide {N} squarely"
                )
            pairs.append((p, e))
            peel_s0 *= 1 - Fraction(1, p * p)
            peel_nu *= (p - 1) * p ** ((e - 2) // 2)
        s0 /= peel_s0
        if not 0 < s0 <= 1:
            raise InconsistentInputsError("residual s0* left (0, 1]")
        if nu % peel_nu != 0:
            raise InconsistentInputsError("nu_inf* not divisible by the peeled part")
        nu //= peel_nu
    if nu != 1:
        raise InconsistentInputsError(f"residual nu_inf* = {nu} after peeling")
    return SquarefullSplit(E=n_left, L=Factorization(tuple(sorted(pairs))))


def factor_squarefull_two_values(
    N: int,
    k1: int,
    a1: int,
    k2: int,
    a2: int,
    rng: random.Random,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
) -> SquarefullSplit:
    """SquarefullSplit of N from two oracle values A(k1, N), A(k2, N).

    Recovers the starred Kronecker values from each oracle value, strips
    them off, solves the remaining 2x2 linear system for the two starred
    invariants exactly, and hands those to
    :func:`factor_squarefull_from_invariants`.
    """
    if k1 == k2:
        raise ValueError("the two weights must be distinct")
    if N < 1:
        raise ValueError(f"level must be positive, got {N}")
    if N == 1:
        # the explicit formula starts at level 2; level 1 splits trivially
        return SquarefullSplit(E=1, L=Factorization(()))
    nu23_1 = recover_nu23_star(N, k1, a1)
    nu23_2 = recover_nu23_star(N, k2, a2)
    if nu23_1 != nu23_2:
        raise InconsistentInputsError(
            f"oracle values disagree about the starred Kronecker pair: "
            f"{nu23_1} vs {nu23_2}"
        )
    nu2, nu3 = nu23_1
    wc1, wc2 = weight_class(k1), weight_class(k2)
    a1_star = a1 - wc1.c2 * nu2 - wc1.c3 * nu3
    a2_star = a2 - wc2.c2 * nu2 - wc2.c3 * nu3
    s0 = 12 * (a2_star - a1_star) / ((k2 - k1) * N)
    nu_inf = 2 * (a2_star * (k1 - 1) - a1_star * (k2 - 1)) / (k2 - k1)
    if nu_inf.denominator != 1 or nu_inf <= 0:
        raise InconsistentInputsError(f"solved nu_inf* = {nu_inf} is not a positive integer")
    if not 0 < s0 <= 1:
        raise InconsistentInputsError(f"solved s0* = {s0} outside (0, 1]")
    return factor_squarefull_from_invariants(N, s0, int(nu_inf), rng, retry_budget)


# --- full factorization from three oracle values --------------------------


@dataclass(frozen=True)
class SharpGuess:
    """One candidate triple for the sharp Kronecker values and the Mobius
    value of the level."""

    nu2_sharp: int
    nu3_sharp: int
    mu: int


def _sharp_guesses(N: int, squarefull_part: int):
    """Candidate triples in increasing magnitude, consistent Mobius
    values first (mu = 0 is forced when the squarefull part exceeds 1)."""
    vals = [0]
    power = 1
    while power <= N:
        vals.append(power)
        vals.append(-power)
        power <<= 1
    mus = (0,) if squarefull_part > 1 else (1, -1, 0)
    for mu in mus:
        for y in vals:
            for z in vals:
                yield SharpGuess(nu2_sharp=y, nu3_sharp=z, mu=mu)


def full_factor_three_values(
    N: int,
    k1: int,
    a1: int,
    k2: int,
    a2: int,
    k: int,
    b_value: int,
    rng: random.Random,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
) -> Factorization:
    """Complete factorization of N from A(k1, N), A(k2, N) and B(k, N).

    The squarefull part comes from the two-value reduction.  For the
    squarefree part E, each guess of the sharp Kronecker/Mobius triple
    turns the newform dimension into a candidate totient of E (the sharp
    infinity value vanishes as soon as E > 1); the totient-multiple
    factorizer then either produces a factorization, which is accepted
    iff it recomposes to N with all factors prime, or fails fast.
    """
    if N < 1:
        raise ValueError(f"level must be positive, got {N}")
    if N == 1:
        return Factorization(())
    split = factor_squarefull_two_values(N, k1, a1, k2, a2, rng, retry_budget)
    if split.E == 1:
        return split.L
    wc = weight_class(k)
    l_sharp = sharp_s0_on_squarefull(split.L)  # L * s0#(L), an exact integer
    tried: set[int] = set()
    for guess in _sharp_guesses(N, split.L.value()):
        rhs = (
            b_value
            - wc.c2 * guess.nu2_sharp
            - wc.c3 * guess.nu3_sharp
            - wc.delta2 * guess.mu
        )
        n_sharp = Fraction(12, k - 1) * rhs  # candidate N * s0#(N)
        if n_sharp.denominator != 1 or n_sharp <= 0:
            continue
        phi_e = Fraction(int(n_sharp), l_sharp)  # candidate phi(E)
        if phi_e.denominator != 1:
            continue
        cand = int(phi_e)
        if not 1 <= cand < split.E or (split.E > 2 and cand % 2 != 0):
            continue
        if cand in tried:
            continue
        tried.add(cand)
        try:
            fac_e = factor_given_phi_multiple(split.E, cand, rng, retry_budget)
        except FactoringFailureError:
            continue
        merged: dict[int, int] = dict(split.L.factors)
        ok = True
        for p, e in fac_e:
            if p in merged:
                ok = False  # parts must be coprime; a collision means bad inputs
                break
            merged[p] = e
        if not ok:
            continue
        result = Factorization(tuple(sorted(merged.items())))
        if result.value() == N:
            return result
    raise FactoringFailureError(
        f"no sharp-value guess produced a verified factorization of {N}"
    )
