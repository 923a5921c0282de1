"""Empirical irrationality exponents of the partial Euler products.

For the ``n``-th product the exponent ``mu_n = ln(1/gap_n) / ln(b_n)`` is the
value of ``mu`` at which ``1/b_n^mu = gap_n``.  Link 1 of the chain holds for
``mu > mu_n`` and fails for ``mu < mu_n``.  The exponent is reported as a
certified rational enclosure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chain import gap_enclosure
from .euler_product import partial_product
from .numerics import RationalInterval, log_enclosure

DEFAULT_INITIAL_TERMS = 16
DEFAULT_MAX_TERMS = 1 << 16
DEFAULT_MAX_BITS = 1 << 12


@dataclass(frozen=True)
class ExponentRecord:
    n: int
    mu_n: RationalInterval
    gap: RationalInterval
    b_n: int
    terms: int
    bits: int
    converged: bool

    @property
    def midpoint(self) -> float:
        """Decimal midpoint for display only; not certified."""
        return float(self.mu_n.midpoint)


def exponent_enclosure(n: int, gap: RationalInterval, bits: int) -> RationalInterval:
    """``[ln(1/gap.hi), ln(1/gap.lo)] / ln(b_n)`` rounded outward to ``2**-bits``."""
    if gap.lo <= 0:
        raise ValueError(f"gap enclosure {gap} is not strictly positive")
    b = partial_product(n).b
    numer = -log_enclosure(gap, bits)
    denom = log_enclosure(b, bits)
    return (numer / denom).round_outward(bits)


def _bits_for(precision: Fraction) -> int:
    # resolve the log error well below the requested width
    return max(64, (precision.denominator // max(precision.numerator, 1)).bit_length() + 32)


def empirical_exponent(
    n: int,
    precision: Fraction,
    *,
    initial_terms: int = DEFAULT_INITIAL_TERMS,
    max_terms: int = DEFAULT_MAX_TERMS,
    max_bits: int = DEFAULT_MAX_BITS,
) -> ExponentRecord:
    precision = Fraction(precision)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if precision <= 0:
        raise ValueError("precision must be positive")
    N = initial_terms
    bits = min(_bits_for(precision), max_bits)
    while True:
        gap = gap_enclosure(n, N)
        if gap.lo > 0:
            mu = exponent_enclosure(n, gap, bits)
            if mu.width < precision:
                return ExponentRecord(n, mu, gap, partial_product(n).b, N, bits, True)
        if 2 * N > max_terms:
            break
        N *= 2
        bits = min(bits + 8, max_bits)
    if gap.lo <= 0:
        raise RuntimeError(f"n={n}: gap not separated from zero within {max_terms} terms")
    return ExponentRecord(n, mu, gap, partial_product(n).b, N, bits, False)


@dataclass(frozen=True)
class ScanResult:
    records: list[ExponentRecord]
    running_max: list[Fraction]

    @property
    def max_hi(self) -> Fraction:
        return self.running_max[-1]

    @property
    def argmax(self) -> int:
        return max(self.records, key=lambda r: r.mu_n.hi).n


def scan(n_max: int, precision: Fraction, *, start: int = 1, **kwargs) -> ScanResult:
    """Exponent records for ``n = start .. n_max`` with the running maximum of ``mu_n.hi``."""
    if n_max < 1 or start < 1 or start > n_max:
        raise ValueError(f"empty or invalid range {start}..{n_max}")
    records = [empirical_exponent(n, precision, **kwargs) for n in range(start, n_max + 1)]
    running, best = [], None
    for r in records:
        best = r.mu_n.hi if best is None else max(best, r.mu_n.hi)
        running.append(best)
    return ScanResult(records, running)
