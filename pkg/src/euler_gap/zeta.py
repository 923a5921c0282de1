"""Rational enclosures of zeta(2) and of its reciprocal 6/pi^2.

With ``S_N = sum_{m<=N} 1/m^2`` the tail satisfies
``1/(N+1) < sum_{m>N} 1/m^2 < 1/N``, so ``[S_N + 1/(N+1), S_N + 1/N]``
encloses zeta(2) with width exactly ``1/(N(N+1))``.  The reciprocal constant
is obtained by exact interval inversion; pi never enters the computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .numerics import RationalInterval, interval_invert

DEFAULT_MAX_TERMS = 1 << 20


@dataclass(frozen=True)
class ZetaEnclosure:
    terms: int
    zeta2: RationalInterval
    six_over_pi2: RationalInterval


@lru_cache(maxsize=128)
def partial_sum(N: int) -> Fraction:
    """Exact ``sum_{m=1}^N 1/m^2``, summed over a common denominator ``lcm(1..N)^2``."""
    if N < 1:
        raise ValueError(f"number of terms must be >= 1, got {N}")
    L = math.lcm(*range(1, N + 1))
    return Fraction(sum((L // m) ** 2 for m in range(1, N + 1)), L * L)


def _enclosure_from_sum(N: int, s: Fraction) -> ZetaEnclosure:
    zeta2 = RationalInterval(s + Fraction(1, N + 1), s + Fraction(1, N))
    return ZetaEnclosure(N, zeta2, interval_invert(zeta2))


def zeta2_enclosure(N: int) -> ZetaEnclosure:
    """Enclosures of zeta(2) and 6/pi^2 from the first ``N`` terms of the series."""
    if isinstance(N, bool) or not isinstance(N, int):
        raise TypeError("N must be an integer")
    if N < 1:
        raise ValueError(f"number of terms must be >= 1, got {N}")
    return _cached_enclosure(N)


@lru_cache(maxsize=128)
def _cached_enclosure(N: int) -> ZetaEnclosure:
    return _enclosure_from_sum(N, partial_sum(N))


def iter_enclosures(N_max: int) -> Iterator[ZetaEnclosure]:
    """Enclosures for ``N = 1 .. N_max`` built with a running sum."""
    s = Fraction(0)
    for N in range(1, N_max + 1):
        s += Fraction(1, N * N)
        yield _enclosure_from_sum(N, s)


def adaptive_enclosure(target: Fraction, max_terms: int = DEFAULT_MAX_TERMS) -> ZetaEnclosure:
    """Smallest ``N`` among ``1, 2, 4, ...`` whose 6/pi^2 enclosure is narrower than ``target``."""
    target = Fraction(target)
    if target <= 0:
        raise ValueError("target width must be positive")
    N = 1
    while True:
        enc = zeta2_enclosure(N)
        if enc.six_over_pi2.width < target:
            return enc
        if 2 * N > max_terms:
            raise RuntimeError(f"width {target} not reached within {max_terms} terms")
        N *= 2
