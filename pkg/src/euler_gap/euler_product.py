"""Reduced partial Euler products ``a_n/b_n = prod_{k<=n} (1 - p_k^-2)``."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .numerics import RationalInterval, Status
from .primes import PrimeTable, default_table
from .zeta import DEFAULT_MAX_TERMS, ZetaEnclosure, zeta2_enclosure


class InvariantViolation(RuntimeError):
    """A structural property that must always hold was found broken."""


@dataclass(frozen=True)
class PartialProduct:
    n: int
    value: Fraction
    primorial: int

    @property
    def a(self) -> int:
        return self.value.numerator

    @property
    def b(self) -> int:
        return self.value.denominator


BASE = PartialProduct(1, Fraction(3, 4), 2)


def extend(pp: PartialProduct, table: PrimeTable | None = None) -> PartialProduct:
    """Multiply in the factor ``(p^2 - 1)/p^2`` for the next prime and reduce."""
    p = (table or default_table()).nth(pp.n + 1)
    return PartialProduct(pp.n + 1, pp.value * Fraction(p * p - 1, p * p), pp.primorial * p)


class _Trajectory:
    # shared memo of states 1..N; appended under a lock, read freely
    def __init__(self):
        self.states: list[PartialProduct] = [BASE]
        self.lock = threading.Lock()

    def get(self, n: int) -> PartialProduct:
        states = self.states
        if n <= len(states):
            return states[n - 1]
        with self.lock:
            pp = self.states[-1]
            fresh = []
            while pp.n < n:
                pp = extend(pp)
                fresh.append(pp)
            self.states.extend(fresh)
        return self.states[n - 1]


_TRAJECTORY = _Trajectory()


def partial_product(n: int) -> PartialProduct:
    """State after the first ``n`` primes (memoized on the shared prime table)."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError("n must be an integer")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return _TRAJECTORY.get(n)


def trajectory(n_max: int) -> list[PartialProduct]:
    partial_product(n_max)
    return _TRAJECTORY.states[:n_max]


class DenominatorStructure(NamedTuple):
    b_n: int
    primorial_sq: int
    cofactor: int


def denominator_structure(n: int) -> DenominatorStructure:
    """``(b_n, primorial^2, primorial^2 / b_n)``; the division must be exact."""
    pp = partial_product(n)
    sq = pp.primorial * pp.primorial
    cofactor, rem = divmod(sq, pp.b)
    if rem:
        raise InvariantViolation(f"b_{n} = {pp.b} does not divide primorial^2 = {sq}")
    return DenominatorStructure(pp.b, sq, cofactor)


def bracketing_check(n: int, enclosure: RationalInterval | ZetaEnclosure) -> Status:
    """Check ``6/pi^2 < a_n/b_n < 1`` against an enclosure of 6/pi^2.

    A too-coarse enclosure yields ``INCONCLUSIVE``; ``FALSIFIED`` is reserved
    for ``a_n/b_n >= 1``, which would be a genuine counterexample.
    """
    if isinstance(enclosure, ZetaEnclosure):
        enclosure = enclosure.six_over_pi2
    value = partial_product(n).value
    if value >= 1:
        return Status.FALSIFIED
    if enclosure.hi < value:
        return Status.CERTIFIED
    return Status.INCONCLUSIVE


def certify_bracketing(
    n: int, initial_terms: int = 1, max_terms: int = DEFAULT_MAX_TERMS
) -> tuple[Status, ZetaEnclosure]:
    """Double the number of series terms until the bracketing is decided."""
    N = initial_terms
    while True:
        enc = zeta2_enclosure(N)
        status = bracketing_check(n, enc)
        if status is not Status.INCONCLUSIVE or 2 * N > max_terms:
            return status, enc
        N *= 2


def trajectory_rows(n_max: int) -> list[dict[str, str]]:
    """CSV-ready rows ``n, a_n, b_n, primorial, cofactor`` as decimal strings."""
    rows = []
    for pp in trajectory(n_max):
        ds = denominator_structure(pp.n)
        rows.append(
            {
                "n": str(pp.n),
                "a_n": str(pp.a),
                "b_n": str(pp.b),
                "primorial": str(pp.primorial),
                "cofactor": str(ds.cofactor),
            }
        )
    return rows
