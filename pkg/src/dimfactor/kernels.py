"""Hot sieve/sweep kernels over contiguous level ranges.

Everything here works in 64-bit integers on values scaled by 12, which
keeps the arithmetic exact for the ranges the sweeps cover (the largest
intermediate is far below 2^63 for limits up to 10^7 and weights up to a
few hundred).  Two implementations are provided: numba-jitted loops and
a vectorized pure-numpy fallback.  Selection order: the environment
variable DIMFACTOR_KERNELS (values "numba" or "numpy") wins, otherwise
numba is used when importable.

The exact-rational code paths elsewhere in the package do not depend on
this module; cross-validation of the two lives in the test suite.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

_ENV_CHOICE = os.environ.get("DIMFACTOR_KERNELS", "auto").strip().lower()

HAVE_NUMBA = False
if _ENV_CHOICE != "numpy":
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:
        if _ENV_CHOICE == "numba":
            raise

USING_NUMBA = HAVE_NUMBA

_KRON4 = np.array([0, 1, 0, -1], dtype=np.int64)
_KRON3 = np.array([0, 1, -1], dtype=np.int64)


# --- numba path ---------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _spf_sieve_nb(limit):
        spf = np.zeros(limit + 1, dtype=np.int64)
        for i in range(2, limit + 1):
            if spf[i] == 0:
                for j in range(i, limit + 1, i):
                    if spf[j] == 0:
                        spf[j] = i
        return spf

    @njit(cache=True)
    def _star_tables_nb(limit):
        spf = _spf_sieve_nb(limit)
        ns0 = np.zeros(limit + 1, dtype=np.int64)
        nu_inf = np.zeros(limit + 1, dtype=np.int64)
        nu2 = np.zeros(limit + 1, dtype=np.int64)
        nu3 = np.zeros(limit + 1, dtype=np.int64)
        mu = np.zeros(limit + 1, dtype=np.int64)
        if limit >= 1:
            ns0[1] = 1
            nu_inf[1] = 1
            mu[1] = 1
            nu2[1] = 1
            nu3[1] = 1
        for n in range(2, limit + 1):
            m = n
            ns0_v = np.int64(1)
            nuinf_v = np.int64(1)
            omega = 0
            squarefree = True
            while m > 1:
                p = spf[m]
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                omega += 1
                pe = np.int64(1)
                for _ in range(e):
                    pe *= p
                if e >= 2:
                    squarefree = False
                    ns0_v *= pe - pe // (p * p)
                    t = np.int64(p - 1)
                    for _ in range((e - 2) // 2):
                        t *= p
                    nuinf_v *= t
                else:
                    ns0_v *= pe
            ns0[n] = ns0_v
            nu_inf[n] = nuinf_v
            if squarefree:
                mu[n] = 1 if omega % 2 == 0 else -1
                r4 = n % 4
                nu2[n] = 1 if r4 == 1 else (-1 if r4 == 3 else 0)
                r3 = n % 3
                nu3[n] = 1 if r3 == 1 else (-1 if r3 == 2 else 0)
        # twisted values at non-squarefree levels
        for n in range(4, limit + 1, 4):
            if mu[n] == 0 and mu[n // 4] != 0:
                q = n // 4
                r4 = q % 4
                nu2[n] = -(1 if r4 == 1 else (-1 if r4 == 3 else 0))
        for n in range(9, limit + 1, 9):
            if mu[n] == 0 and mu[n // 9] != 0:
                q = n // 9
                r3 = q % 3
                nu3[n] = -(1 if r3 == 1 else (-1 if r3 == 2 else 0))
        return spf, ns0, nu_inf, nu2, nu3, mu

    @njit(cache=True)
    def _mobius_invert_nb(values, mu):
        limit = len(values) - 1
        out = np.zeros(limit + 1, dtype=np.int64)
        for d in range(1, limit + 1):
            v = values[d]
            if v == 0:
                continue
            j = 1
            for m in range(d, limit + 1, d):
                if mu[j] != 0:
                    out[m] += mu[j] * v
                j += 1
        return out


# --- numpy fallback ------------------------------------------------------


def _spf_sieve_np(limit: int) -> np.ndarray:
    spf = np.arange(limit + 1, dtype=np.int64)
    for i in range(2, int(limit**0.5) + 1):
        if spf[i] == i:
            sl = spf[i * i :: i]
            np.minimum(sl, i, out=sl)
    if limit >= 0:
        spf[0] = 0
    if limit >= 1:
        spf[1] = 0
    return spf


def _star_tables_np(limit: int):
    spf = _spf_sieve_np(limit)
    idx = np.arange(limit + 1, dtype=np.int64)
    ns0 = idx.copy()
    nu_inf = np.ones(limit + 1, dtype=np.int64)
    mu = np.ones(limit + 1, dtype=np.int64)
    if limit >= 0:
        nu_inf[0] = 0
        mu[0] = 0

    primes = np.flatnonzero((spf == idx) & (idx >= 2))
    for p in primes:
        p = int(p)
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p :: p * p] = 0

    for p in primes:
        p = int(p)
        if p * p > limit:
            break
        e, pe = 2, p * p
        while pe <= limit:
            # levels with p-exponent exactly e
            hits = np.arange(pe, limit + 1, pe, dtype=np.int64)
            hits = hits[(hits // pe) % p != 0]
            ns0[hits] = ns0[hits] // pe * (pe - pe // (p * p))
            nu_inf[hits] *= (p - 1) * p ** ((e - 2) // 2)
            e += 1
            pe *= p

    squarefree = mu != 0
    nu2 = np.where(squarefree, _KRON4[idx % 4], 0)
    nu3 = np.where(squarefree, _KRON3[idx % 3], 0)
    if limit >= 4:
        m4 = np.arange(4, limit + 1, 4, dtype=np.int64)
        q = m4 // 4
        nu2[m4] = np.where(squarefree[q], -_KRON4[q % 4], 0)
    if limit >= 9:
        m9 = np.arange(9, limit + 1, 9, dtype=np.int64)
        q = m9 // 9
        nu3[m9] = np.where(squarefree[q], -_KRON3[q % 3], 0)
    if limit >= 1:
        nu2[1] = 1
        nu3[1] = 1
    return spf, ns0, nu_inf, nu2, nu3, mu


def _mobius_invert_np(values: np.ndarray, mu: np.ndarray) -> np.ndarray:
    limit = len(values) - 1
    out = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        v = int(values[d])
        if v == 0:
            continue
        out[d::d] += v * mu[1 : limit // d + 1]
    return out


# --- public surface -------------------------------------------------------


@dataclass(frozen=True)
class StarTables:
    """Sieve output over levels 0..limit: smallest prime factors, the
    integer N*s0*(N), the three other starred values, and the Mobius
    function."""

    limit: int
    spf: np.ndarray
    ns0: np.ndarray
    nu_inf: np.ndarray
    nu2: np.ndarray
    nu3: np.ndarray
    mu: np.ndarray


def build_star_tables(limit: int, force: str | None = None) -> StarTables:
    """Sieve all multiplicative data up to ``limit``.

    ``force`` overrides the module-level path selection ("numba" or
    "numpy"); tests and the benchmark use it to compare both.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    use_numba = USING_NUMBA if force is None else force == "numba"
    if use_numba and not HAVE_NUMBA:
        raise RuntimeError("numba path requested but numba is unavailable")
    fn = _star_tables_nb if use_numba else _star_tables_np
    spf, ns0, nu_inf, nu2, nu3, mu = fn(limit)
    return StarTables(limit=limit, spf=spf, ns0=ns0, nu_inf=nu_inf, nu2=nu2, nu3=nu3, mu=mu)


@lru_cache(maxsize=4)
def star_tables(limit: int) -> StarTables:
    """Cached :func:`build_star_tables` on the default path."""
    return build_star_tables(limit)


def mobius_invert(values: np.ndarray, mu: np.ndarray, force: str | None = None) -> np.ndarray:
    """out[n] = sum over d | n of mu(n/d) * values[d], for all n at once."""
    use_numba = USING_NUMBA if force is None else force == "numba"
    if use_numba and not HAVE_NUMBA:
        raise RuntimeError("numba path requested but numba is unavailable")
    if use_numba:
        return _mobius_invert_nb(
            np.ascontiguousarray(values, dtype=np.int64),
            np.ascontiguousarray(mu, dtype=np.int64),
        )
    return _mobius_invert_np(values, mu)


def _twelve_c2(k: int) -> int:
    return 3 if k % 4 == 0 else -3


def _twelve_c3(k: int) -> int:
    r = k % 3
    return 4 if r == 0 else (0 if r == 1 else -4)


@dataclass(frozen=True)
class DimensionTables:
    """12 times the four dimension quantities at one weight, for every
    level up to the limit.  Scaling by 12 keeps everything in int64."""

    k: int
    limit: int
    G12: np.ndarray
    A12: np.ndarray
    B12: np.ndarray
    H12: np.ndarray


def dimension_tables(k: int, tables: StarTables, force: str | None = None) -> DimensionTables:
    """All four dimension quantities (times 12) at weight k from sieved
    star tables.  Index 1 of A12/B12 carries the level-one dimension so
    the divisor-sum identity holds across the whole range."""
    if k < 2 or k % 2 != 0:
        raise ValueError(f"weight must be a positive even integer, got {k}")
    limit = tables.limit
    idx = np.arange(limit + 1, dtype=np.int64)
    c2_12 = _twelve_c2(k)
    c3_12 = _twelve_c3(k)
    G12 = (k - 1) * idx - 6 + c2_12 * _KRON4[idx % 4] + c3_12 * _KRON3[idx % 3]
    A12 = (
        (k - 1) * tables.ns0
        - 6 * tables.nu_inf
        + c2_12 * tables.nu2
        + c3_12 * tables.nu3
    )
    b1_12 = (k - 7) + c2_12 + c3_12 + (12 if k == 2 else 0)
    if limit >= 1:
        A12[1] = b1_12
    B12 = mobius_invert(A12, tables.mu, force=force)
    H12 = G12 - b1_12
    if limit >= 0:
        G12[0] = A12[0] = B12[0] = H12[0] = 0
    return DimensionTables(k=k, limit=limit, G12=G12, A12=A12, B12=B12, H12=H12)
