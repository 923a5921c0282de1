"""Per-instance certification of the inequality chain behind the prime bound

    1/b_n^mu  <  a_n/b_n - 6/pi^2  =  (a_n/b_n)(1 - prod_{k>n}(1 - p_k^-2))
              <  1 - prod_{k>n}(1 - p_k^-2)
              <  sum_{k>n} p_k^-2
              <  1/p_{n+1}

and of the resulting bound ``p_{n+1} < (p_1 ... p_n)^(2 mu)``.

Every infinite tail is truncated at a prime index ``K`` with rigorous
remainders, 6/pi^2 comes from :mod:`euler_gap.zeta`, and each strict
inequality is decided by one exact comparison between conservative
endpoints.  Verdicts are three-valued so that insufficient precision is never
reported as a counterexample.
"""

from __future__ import annotations

import logging
import math
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .euler_product import partial_product
from .numerics import RationalInterval, Status, log_enclosure, log_int_fixed, parse_rational
from .primes import PrimeTable, default_table
from .zeta import zeta2_enclosure

log = logging.getLogger(__name__)

LINK_NAMES = ("L1", "L2", "L3", "L4", "identity")


class SoundnessViolation(RuntimeError):
    """Two independent enclosures of the same real number are disjoint."""


@dataclass(frozen=True)
class MuCandidate:
    """A candidate irrationality measure ``mu = P/Q`` (exact, positive)."""

    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        if v <= 0:
            raise ValueError(f"mu must be positive, got {v}")
        object.__setattr__(self, "value", v)

    @classmethod
    def parse(cls, text: str) -> MuCandidate:
        return cls(parse_rational(text))

    @property
    def P(self) -> int:
        return self.value.numerator

    @property
    def Q(self) -> int:
        return self.value.denominator

    @property
    def below_two(self) -> bool:
        # genuine measures exceed 2; smaller candidates are still accepted
        return self.value <= 2

    def __str__(self) -> str:
        return f"{self.P}/{self.Q}"


@dataclass(frozen=True)
class TailBounds:
    """Truncation of the tails beyond prime index ``n`` at index ``K``.

    ``sum_lo``/``prod_hi`` are the exact finite sum and product over
    ``n < k <= K``; ``sum_hi`` adds ``1/p_K`` (since the rest is dominated by
    ``sum_{m > p_K} 1/m^2``) and ``prod_lo`` multiplies by ``1 - 1/p_K``.
    """

    n: int
    K: int
    p_K: int
    sum_lo: Fraction
    sum_hi: Fraction
    prod_lo: Fraction
    prod_hi: Fraction


@dataclass(frozen=True)
class LinkVerdict:
    status: Status
    witnesses: dict = field(default_factory=dict)
    mode: str | None = None


@dataclass(frozen=True)
class ChainOptions:
    """Truncation and enclosure policy.  ``K``/``N`` of ``None`` mean auto."""

    K: int | None = None
    N: int | None = None
    K_offset: int = 64
    K_ceiling_offset: int = 10**6
    N_initial: int = 16
    N_ceiling: int = 1 << 20
    exact_threshold: int = 40
    log_bits: int = 64
    log_bits_ceiling: int = 1 << 14


@dataclass(frozen=True)
class ChainReport:
    n: int
    mu: MuCandidate
    K: int
    N: int
    gap: RationalInterval
    links: dict[str, LinkVerdict]
    theorem: LinkVerdict
    a_n: int
    b_n: int
    primorial: int
    elapsed: float = 0.0

    def statuses(self) -> list[Status]:
        return [v.status for v in self.links.values()] + [self.theorem.status]

    @property
    def all_certified(self) -> bool:
        return all(s is Status.CERTIFIED for s in self.statuses())


# ---------------------------------------------------------------------------
# tails and gap
# ---------------------------------------------------------------------------


def _split_sums(ps: list[int]) -> tuple[int, int, int]:
    # binary splitting: returns (D, prod_num, sum_num) with
    # D = prod p^2, prod (1 - 1/p^2) = prod_num/D, sum 1/p^2 = sum_num/D
    if len(ps) == 1:
        sq = ps[0] * ps[0]
        return sq, sq - 1, 1
    mid = len(ps) // 2
    d1, n1, s1 = _split_sums(ps[:mid])
    d2, n2, s2 = _split_sums(ps[mid:])
    return d1 * d2, n1 * n2, s1 * d2 + s2 * d1


def tail_bounds(n: int, K: int, table: PrimeTable | None = None) -> TailBounds:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if K <= n:
        raise ValueError(f"truncation index K={K} must exceed n={n}")
    table = table or default_table()
    ps = table.slice(n + 1, K)
    D, prod_num, sum_num = _split_sums(ps)
    p_K = ps[-1]
    sum_lo = Fraction(sum_num, D)
    prod_hi = Fraction(prod_num, D)
    return TailBounds(
        n=n,
        K=K,
        p_K=p_K,
        sum_lo=sum_lo,
        sum_hi=sum_lo + Fraction(1, p_K),
        prod_lo=prod_hi * Fraction(p_K - 1, p_K),
        prod_hi=prod_hi,
    )


def gap_enclosure(n: int, N: int) -> RationalInterval:
    """Enclosure of ``a_n/b_n - 6/pi^2`` using ``N`` series terms for the constant."""
    value = partial_product(n).value
    return value - zeta2_enclosure(N).six_over_pi2


# ---------------------------------------------------------------------------
# links
# ---------------------------------------------------------------------------


# exact powers beyond this many bits are replaced by certified logarithms
EXACT_POWER_BITS = 1 << 22


def _l1_log_bounds(b: int, P: int, Q: int, gap: RationalInterval, bits: int) -> tuple[Fraction, Fraction]:
    # lower bound of Q ln(gap_lo) + P ln(b_n), upper bound of Q ln(gap_hi) + P ln(b_n)
    lb = log_enclosure(b, bits)
    lo = Q * log_enclosure(gap.lo, bits).lo + P * lb.lo if gap.lo > 0 else None
    hi = Q * log_enclosure(gap.hi, bits).hi + P * lb.hi if gap.hi > 0 else None
    return lo, hi


def link1_check(n: int, mu: MuCandidate, gap: RationalInterval, *, max_log_bits: int = 1 << 10) -> LinkVerdict:
    """``1/b_n^mu < gap``, decided as ``gap^Q * b_n^P > 1``.

    Exact when the powers stay below ``EXACT_POWER_BITS``; otherwise the sign of
    ``Q ln gap + P ln b_n`` is decided from certified log enclosures.
    """
    b = partial_product(n).b
    P, Q = mu.P, mu.Q
    w = {"gap_lo": gap.lo, "gap_hi": gap.hi}
    size = Q * max(abs(gap.hi.numerator).bit_length(), gap.lo.denominator.bit_length()) + P * b.bit_length()
    if size <= EXACT_POWER_BITS:
        bP = b**P
        if gap.lo > 0 and gap.lo**Q * bP > 1:
            return LinkVerdict(Status.CERTIFIED, w)
        if gap.hi <= 0 or gap.hi**Q * bP <= 1:
            return LinkVerdict(Status.FALSIFIED, w)
        return LinkVerdict(Status.INCONCLUSIVE, w)
    if gap.hi <= 0:
        return LinkVerdict(Status.FALSIFIED, w, mode="log")
    bits = 64
    while True:
        lo, hi = _l1_log_bounds(b, P, Q, gap, bits)
        w = {"gap_lo": gap.lo, "gap_hi": gap.hi, "log_hi": hi}
        if lo is not None:
            w["log_lo"] = lo
        if lo is not None and lo > 0:
            return LinkVerdict(Status.CERTIFIED, w, mode="log")
        if hi <= 0:
            return LinkVerdict(Status.FALSIFIED, w, mode="log")
        if bits >= max_log_bits:
            return LinkVerdict(Status.INCONCLUSIVE, w, mode="log")
        bits *= 2


def link2_check(n: int) -> LinkVerdict:
    """``(a_n/b_n)(1 - tail) < 1 - tail`` reduces to ``a_n < b_n`` since the tail factor is positive."""
    pp = partial_product(n)
    status = Status.CERTIFIED if pp.a < pp.b else Status.FALSIFIED
    return LinkVerdict(status, {"a_n": pp.a, "b_n": pp.b})


def link_identity_check(n: int, tb: TailBounds, gap: RationalInterval) -> LinkVerdict:
    """Cross-check the rewriting ``gap = (a_n/b_n)(1 - tail product)``.

    Both sides are enclosures of one real number, so they must overlap;
    anything else is an arithmetic bug and raises.
    """
    value = partial_product(n).value
    scaled = RationalInterval(value * (1 - tb.prod_hi), value * (1 - tb.prod_lo))
    w = {
        "prod_lo": tb.prod_lo,
        "prod_hi": tb.prod_hi,
        "gap_lo": gap.lo,
        "gap_hi": gap.hi,
    }
    if not scaled.intersects(gap):
        raise SoundnessViolation(f"n={n}: product side {scaled} is disjoint from gap {gap}")
    return LinkVerdict(Status.CERTIFIED, w)


def link3_check(n: int, tb: TailBounds) -> LinkVerdict:
    """``1 - prod_{k>n}(1 - x_k) < sum_{k>n} x_k`` with ``x_k = p_k^-2``.

    First the plain endpoint test ``1 - prod_lo < sum_lo``.  When the
    truncation is too coarse for that, a coupled certificate is used: writing
    ``T`` for the beyond-``K`` sum, ``R >= 1 - T`` for the beyond-``K``
    product and ``P, S`` for the finite parts,

        RHS - LHS >= (S + P - 1) + T(1 - P) >= S + P - 1,

    so ``1 - prod_hi < sum_lo`` suffices whatever ``T >= 0`` is.
    """
    w = {
        "prod_lo": tb.prod_lo,
        "prod_hi": tb.prod_hi,
        "sum_lo": tb.sum_lo,
        "sum_hi": tb.sum_hi,
    }
    if 1 - tb.prod_lo < tb.sum_lo:
        return LinkVerdict(Status.CERTIFIED, w, mode="endpoint")
    if 1 - tb.prod_hi < tb.sum_lo:
        return LinkVerdict(Status.CERTIFIED, w, mode="coupled")
    if 1 - tb.prod_hi >= tb.sum_hi:
        return LinkVerdict(Status.FALSIFIED, w)
    return LinkVerdict(Status.INCONCLUSIVE, w)


def link4_check(n: int, tb: TailBounds, table: PrimeTable | None = None) -> LinkVerdict:
    """``sum_{k>n} p_k^-2 < 1/p_{n+1}``."""
    p_next = (table or default_table()).nth(n + 1)
    bound = Fraction(1, p_next)
    w = {"sum_lo": tb.sum_lo, "sum_hi": tb.sum_hi, "p_next": p_next}
    if tb.sum_hi < bound:
        return LinkVerdict(Status.CERTIFIED, w)
    if tb.sum_lo >= bound:
        return LinkVerdict(Status.FALSIFIED, w)
    return LinkVerdict(Status.INCONCLUSIVE, w)


# ---------------------------------------------------------------------------
# theorem bound
# ---------------------------------------------------------------------------


class _LogPrimorials:
    # prefix sums of fixed-point ln(p_k) bounds, one list pair per precision
    def __init__(self):
        self._by_prec: dict[int, tuple[list[int], list[int]]] = {}
        self._lock = threading.Lock()

    def get(self, n: int, prec: int, table: PrimeTable) -> tuple[int, int]:
        with self._lock:
            lo, hi = self._by_prec.setdefault(prec, ([0], [0]))
            if len(lo) <= n:
                ps = table.first(n)
                acc_lo, acc_hi = lo[-1], hi[-1]
                for k in range(len(lo), n + 1):
                    l, h = log_int_fixed(ps[k - 1], prec)
                    acc_lo += l
                    acc_hi += h
                    lo.append(acc_lo)
                    hi.append(acc_hi)
            return lo[n], hi[n]


_LOG_PRIMORIALS = _LogPrimorials()


def log_primorial_fixed(n: int, prec: int, table: PrimeTable | None = None) -> tuple[int, int]:
    """Fixed-point bounds on ``ln(p_1 ... p_n)`` at scale ``2**prec``."""
    return _LOG_PRIMORIALS.get(n, prec, table or default_table())


def theorem_check(
    n: int,
    mu: MuCandidate,
    *,
    mode: str = "auto",
    exact_threshold: int = 40,
    log_bits: int = 64,
    log_bits_ceiling: int = 1 << 14,
    table: PrimeTable | None = None,
) -> LinkVerdict:
    """``p_{n+1} < primorial_n^(2 mu)``.

    Exact mode compares ``p_{n+1}^Q`` with ``primorial^(2P)``; auto mode uses
    it for ``n <= exact_threshold`` unless the powers get too large.  Log mode
    compares ``Q ln p_{n+1}`` against ``2P ln primorial`` with certified
    logarithms, doubling the working precision until the comparison resolves.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if mode not in ("auto", "exact", "log"):
        raise ValueError(f"unknown theorem mode {mode!r}")
    table = table or default_table()
    P, Q = mu.P, mu.Q
    p_next = table.nth(n + 1)
    small = max(Q * p_next.bit_length(), 2 * P * table.primorial(n).bit_length()) <= EXACT_POWER_BITS
    if mode == "exact" or (mode == "auto" and n <= exact_threshold and small):
        ok = p_next**Q < table.primorial(n) ** (2 * P)
        return LinkVerdict(
            Status.CERTIFIED if ok else Status.FALSIFIED, {"p_next": p_next}, mode="exact"
        )
    bits = log_bits
    while True:
        plo, phi = log_int_fixed(p_next, bits)
        rlo, rhi = log_primorial_fixed(n, bits, table)
        scale = 1 << bits
        w = {
            "p_next": p_next,
            "lhs_lo": Fraction(Q * plo, scale),
            "lhs_hi": Fraction(Q * phi, scale),
            "rhs_lo": Fraction(2 * P * rlo, scale),
            "rhs_hi": Fraction(2 * P * rhi, scale),
        }
        if Q * phi < 2 * P * rlo:
            return LinkVerdict(Status.CERTIFIED, w, mode="log")
        if Q * plo >= 2 * P * rhi:
            return LinkVerdict(Status.FALSIFIED, w, mode="log")
        if 2 * bits > log_bits_ceiling:
            return LinkVerdict(Status.INCONCLUSIVE, w, mode="log")
        bits *= 2


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


def verify_chain(n: int, mu: MuCandidate, options: ChainOptions | None = None) -> ChainReport:
    """Run every link and the theorem check for one ``n``, tightening as needed.

    Inconclusive links trigger doubling of the enclosure budget ``N``
    (link 1) or of the truncation offset ``K - n`` (links 3 and 4) when the
    corresponding option is auto; the parameters finally used are reported.
    """
    opts = options or ChainOptions()
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    t0 = time.perf_counter()
    K = opts.K if opts.K is not None else n + opts.K_offset
    if K <= n:
        raise ValueError(f"truncation index K={K} must exceed n={n}")
    N = opts.N if opts.N is not None else opts.N_initial

    while True:
        tb = tail_bounds(n, K)
        gap = gap_enclosure(n, N)
        l1 = link1_check(n, mu, gap)
        l3 = link3_check(n, tb)
        l4 = link4_check(n, tb)
        again = False
        if l1.status is Status.INCONCLUSIVE and opts.N is None and 2 * N <= opts.N_ceiling:
            N *= 2
            again = True
        inconclusive_tail = Status.INCONCLUSIVE in (l3.status, l4.status)
        if inconclusive_tail and opts.K is None and 2 * (K - n) <= opts.K_ceiling_offset:
            K = n + 2 * (K - n)
            again = True
        if not again:
            break
        log.debug("n=%d: tightening to K=%d N=%d", n, K, N)

    links = {
        "L1": l1,
        "L2": link2_check(n),
        "L3": l3,
        "L4": l4,
        "identity": link_identity_check(n, tb, gap),
    }
    theorem = theorem_check(
        n,
        mu,
        exact_threshold=opts.exact_threshold,
        log_bits=opts.log_bits,
        log_bits_ceiling=opts.log_bits_ceiling,
    )
    pp = partial_product(n)
    return ChainReport(
        n=n,
        mu=mu,
        K=K,
        N=N,
        gap=gap,
        links=links,
        theorem=theorem,
        a_n=pp.a,
        b_n=pp.b,
        primorial=pp.primorial,
        elapsed=time.perf_counter() - t0,
    )


def first_certified_n0(reports: list[ChainReport]) -> int | None:
    """Smallest tested ``n0`` with link 1 certified for every tested ``n >= n0``."""
    n0 = None
    for r in sorted(reports, key=lambda r: r.n, reverse=True):
        if r.links["L1"].status is not Status.CERTIFIED:
            break
        n0 = r.n
    return n0


def bound_digits(
    n: int,
    mu: MuCandidate,
    *,
    exact_threshold: int = 40,
    bits: int = 64,
    max_bits: int = 1 << 12,
    table: PrimeTable | None = None,
) -> tuple[str, str]:
    """Decimal digit count of ``floor(primorial_n^(2 mu))`` and how it was obtained.

    Exact mode finds the largest ``j`` with ``10^(jQ) <= primorial^(2P)``.  Log
    mode brackets ``2 mu log10(primorial)`` and returns a range ``"lo..hi"``
    when the bracket straddles an integer at the precision ceiling.
    """
    table = table or default_table()
    P, Q = mu.P, mu.Q
    prim_bits = table.primorial(n).bit_length()
    if n <= exact_threshold and 2 * P * prim_bits + 4 * Q <= EXACT_POWER_BITS:
        X = table.primorial(n) ** (2 * P)
        j = (X.bit_length() * 30103) // (100000 * Q)
        while 10 ** ((j + 1) * Q) <= X:
            j += 1
        while j > 0 and 10 ** (j * Q) > X:
            j -= 1
        return str(j + 1), "exact"
    while True:
        rlo, rhi = log_primorial_fixed(n, bits, table)
        tlo, thi = log_int_fixed(10, bits)
        lo = Fraction(2 * P * rlo, Q * thi)
        hi = Fraction(2 * P * rhi, Q * tlo)
        dlo, dhi = math.floor(lo) + 1, math.floor(hi) + 1
        if dlo == dhi:
            return str(dlo), "log"
        if 2 * bits > max_bits:
            return f"{dlo}..{dhi}", "log"
        bits *= 2
