"""Prime table backed by an append-only segmented sieve.

The table grows on demand.  Extensions are built off to the side and then
published with a single ``list.extend`` under a lock, so a reader indexing
below ``len(table)`` never sees a half-written segment.
"""

from __future__ import annotations

import logging
import math
import os
import threading
from dataclasses import dataclass
from itertools import compress

log = logging.getLogger(__name__)

DEFAULT_SIEVE_CAP = 10**7
SIEVE_CAP_ENV = "EULER_GAP_SIEVE_CAP"
SEGMENT_SIZE = 1 << 18


class SieveCapExceeded(RuntimeError):
    """Materializing the request would sieve past the configured bound."""


def _cap_from_env() -> int:
    raw = os.environ.get(SIEVE_CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_SIEVE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{SIEVE_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 2:
        raise ValueError(f"{SIEVE_CAP_ENV} must be at least 2")
    return cap


def _nth_prime_upper(n: int) -> int:
    # Rosser: p_n < n(ln n + ln ln n) for n >= 6
    if n < 6:
        return 13
    return int(n * (math.log(n) + math.log(math.log(n)))) + 1


class PrimeTable:
    """Ascending primes ``p_1 = 2, p_2 = 3, ...`` with memoized primorials."""

    def __init__(self, cap: int | None = None):
        self.cap = _cap_from_env() if cap is None else cap
        self._primes: list[int] = []
        self._bound = 1
        self._primorials: list[int] = [1]
        self._lock = threading.RLock()

    def __len__(self) -> int:
        return len(self._primes)

    @property
    def limit(self) -> int:
        """Largest integer already sieved."""
        return self._bound

    def ensure_bound(self, bound: int) -> None:
        """Sieve every integer up to ``bound`` (inclusive)."""
        if bound <= self._bound:
            return
        if bound > self.cap:
            raise SieveCapExceeded(
                f"sieve bound {bound} exceeds cap {self.cap} (set {SIEVE_CAP_ENV} to raise it)"
            )
        with self._lock:
            if bound <= self._bound:
                return
            root = math.isqrt(bound)
            if root > self._bound:
                self.ensure_bound(root)
            lo = self._bound + 1
            while lo <= bound:
                hi = min(bound, lo + SEGMENT_SIZE - 1)
                found = self._sieve_segment(lo, hi)
                self._primes.extend(found)
                self._bound = hi
                lo = hi + 1
            log.debug("sieved to %d (%d primes)", self._bound, len(self._primes))

    def _sieve_segment(self, lo: int, hi: int) -> list[int]:
        size = hi - lo + 1
        seg = bytearray(b"\x01") * size
        for p in self._primes:
            if p * p > hi:
                break
            start = max(p * p, -(-lo // p) * p)
            if start > hi:
                continue
            count = (hi - start) // p + 1
            seg[start - lo :: p] = bytes(count)
        for k in range(lo, min(2, hi + 1)):
            seg[k - lo] = 0
        return list(compress(range(lo, hi + 1), seg))

    def ensure_count(self, n: int) -> None:
        """Materialize at least ``n`` primes."""
        if n <= len(self._primes):
            return
        bound = max(self._bound, _nth_prime_upper(n))
        while len(self._primes) < n:
            self.ensure_bound(min(bound, self.cap))
            if len(self._primes) >= n:
                break
            if bound >= self.cap:
                raise SieveCapExceeded(f"prime #{n} lies beyond sieve cap {self.cap}")
            bound *= 2

    def nth(self, n: int) -> int:
        if n < 1:
            raise ValueError(f"prime index must be >= 1, got {n}")
        self.ensure_count(n)
        return self._primes[n - 1]

    def first(self, n: int) -> list[int]:
        """The primes ``p_1 .. p_n`` as a fresh list."""
        if n < 0:
            raise ValueError("count must be non-negative")
        self.ensure_count(n)
        return self._primes[:n]

    def slice(self, start: int, stop: int) -> list[int]:
        """Primes with 1-based indices ``start .. stop`` inclusive."""
        self.ensure_count(stop)
        return self._primes[start - 1 : stop]

    def primorial(self, n: int) -> int:
        if n < 1:
            raise ValueError(f"primorial index must be >= 1, got {n}")
        memo = self._primorials
        if n < len(memo):
            return memo[n]
        self.ensure_count(n)
        with self._lock:
            acc = memo[-1]
            fresh = []
            for k in range(len(memo), n + 1):
                acc *= self._primes[k - 1]
                fresh.append(acc)
            memo.extend(fresh)
        return memo[n]


_DEFAULT: PrimeTable | None = None
_DEFAULT_LOCK = threading.Lock()


def default_table() -> PrimeTable:
    """Process-wide shared table (cap read from the environment on first use)."""
    global _DEFAULT
    if _DEFAULT is None:
        with _DEFAULT_LOCK:
            if _DEFAULT is None:
                _DEFAULT = PrimeTable()
    return _DEFAULT


def nth_prime(n: int, table: PrimeTable | None = None) -> int:
    return (table or default_table()).nth(n)


def primorial(n: int, table: PrimeTable | None = None) -> int:
    """Exact product ``p_1 * ... * p_n``."""
    return (table or default_table()).primorial(n)


@dataclass(frozen=True)
class BertrandRow:
    n: int
    p_n: int
    p_next: int
    holds: bool


def bertrand_check(n_max: int, table: PrimeTable | None = None) -> list[BertrandRow]:
    """Rows ``(n, p_n, p_{n+1}, p_{n+1} < 2 p_n)`` for ``n = 1 .. n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    ps = (table or default_table()).first(n_max + 1)
    return [BertrandRow(n, ps[n - 1], ps[n], ps[n] < 2 * ps[n - 1]) for n in range(1, n_max + 1)]
