"""Phase-condition checkers and the assembled phase report.

Each checker decides a *sufficient* condition for one regime of the random
(coin-tossing) construction with retention parameter p:

- interval containment: p * CS > 1 for every column sum CS of every digit
  matrix, plus a finite matrix product with a strictly positive row;
- empty interior: some digit matrix has rho(p * A_a) < 1;
- positive Lebesgue measure: p^L times the product over digits of the U-th
  column sums exceeds 1 for every type U, plus a positive row in every
  single digit matrix.

All verdicts are three-valued (holds / fails / boundary) because the
underlying conditions are strict inequalities that say nothing at equality.
Thresholds involving roots are kept as exact power predicates; floats appear
only in rendered output.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .spectral import SpectralEnclosure, spectral_radius
from .type_system import TypeSystem, Word, column_sums


@dataclass(frozen=True)
class RootThreshold:
    """The algebraic number base**(-1/root), kept as an exact predicate."""

    base: int
    root: int

    @property
    def value_float(self) -> float:
        return self.base ** (-1.0 / self.root)

    def exact_str(self) -> str:
        if self.root == 1:
            return f"1/{self.base}"
        return f"({self.base})^(-1/{self.root})"

    def above(self, p) -> bool:
        """Exact test p > base**(-1/root), i.e. p^root * base > 1."""
        return Fraction(p) ** self.root * self.base > 1

    def below(self, p) -> bool:
        """Exact test p < base**(-1/root)."""
        return Fraction(p) ** self.root * self.base < 1


@dataclass(frozen=True)
class IntervalCheck:
    verdict: str  # "holds" | "fails" | "boundary"
    min_cs: int
    row_witness: Word | None
    inconclusive: bool  # witness search hit its budget


@dataclass(frozen=True)
class NoIntervalCheck:
    verdict: str
    witness_digit: int | None
    enclosures: tuple[SpectralEnclosure, ...]


@dataclass(frozen=True)
class PositiveMeasureCheck:
    verdict: str
    column_products: tuple[int, ...]  # prod over digits of CS_{a,U}, per U
    exponent: int  # the L in p^L * product > 1
    per_matrix_rows: tuple[bool, ...]  # digit a has a strictly positive row


def positive_row_witness(ts: TypeSystem, max_patterns: int = 10**6):
    """Shortest word w with a strictly positive row in A_w, by BFS.

    Works on the finite semigroup of boolean zero-patterns (at most 2^(N^2)
    elements), so either a witness is found, absence is certified
    (semigroup exhausted), or the budget is hit.

    Returns (word_or_None, inconclusive_flag).
    """
    N, L = ts.N, ts.L

    def pattern(mat) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(x > 0 for x in row) for row in mat)

    def has_positive_row(pat) -> bool:
        return any(all(row) for row in pat)

    def mul(p1, p2):
        return tuple(
            tuple(any(p1[i][k] and p2[k][j] for k in range(N)) for j in range(N))
            for i in range(N)
        )

    gens = [pattern(A) for A in ts.matrices]
    seen = set()
    queue: deque[tuple[tuple, tuple[int, ...]]] = deque()
    for a in range(L):
        if gens[a] not in seen:
            seen.add(gens[a])
            queue.append((gens[a], (a,)))
    while queue:
        pat, word = queue.popleft()
        if has_positive_row(pat):
            return Word(word, L), False
        if len(seen) >= max_patterns:
            return None, True
        for a in range(L):
            nxt = mul(pat, gens[a])
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, word + (a,)))
    return None, False


def check_interval_sufficient(
    ts: TypeSystem, p, max_patterns: int = 10**6
) -> IntervalCheck:
    """Sufficient condition for the survived set to contain an interval."""
    p = Fraction(p)
    min_cs = min(min(column_sums(ts, a)) for a in range(ts.L))
    witness, inconclusive = positive_row_witness(ts, max_patterns)
    if p * min_cs == 1:
        verdict = "boundary"
    elif p * min_cs > 1 and witness is not None:
        verdict = "holds"
    elif inconclusive:
        verdict = "boundary"  # cannot certify either way
    else:
        verdict = "fails"
    return IntervalCheck(verdict, min_cs, witness, inconclusive)


def check_no_interval(
    ts: TypeSystem, p, tol: Fraction = Fraction(1, 10**9)
) -> NoIntervalCheck:
    """Sufficient condition for empty interior: rho(p * A_a) < 1 for some a."""
    p = Fraction(p)
    encs = tuple(spectral_radius(A, tol) for A in ts.matrices)
    best = min(range(ts.L), key=lambda a: encs[a].upper)
    if p * encs[best].upper < 1:
        return NoIntervalCheck("holds", best, encs)
    if all(p * e.lower > 1 for e in encs):
        return NoIntervalCheck("fails", None, encs)
    if all(p * e.lower >= 1 for e in encs):
        # exact equality for the minimizing digit, or an enclosure pinned at 1
        return NoIntervalCheck("boundary", None, encs)
    return NoIntervalCheck("boundary", best, encs)


def check_positive_measure(ts: TypeSystem, p) -> PositiveMeasureCheck:
    """Sufficient condition for positive Lebesgue measure given survival."""
    p = Fraction(p)
    N, L = ts.N, ts.L
    products = []
    for U in range(N):
        prod = 1
        for a in range(L):
            prod *= column_sums(ts, a)[U]
        products.append(prod)
    rows = tuple(
        any(all(x > 0 for x in row) for row in A) for A in ts.matrices
    )
    pl = p**L
    if any(pl * g < 1 for g in products):
        verdict = "fails"
    elif any(pl * g == 1 for g in products):
        verdict = "boundary"
    elif all(rows):
        verdict = "holds"
    else:
        verdict = "fails"
    return PositiveMeasureCheck(verdict, tuple(products), L, rows)


def similarity_dimension(M: int, L: int, p: float) -> float:
    """log(M*p) / log(L); exceeds 1 exactly when p > L/M."""
    if not 0 < p <= 1:
        raise ValueError("p must be in (0, 1]")
    return math.log(M * p) / math.log(L)


def extinction_probability(M: int, p: float, tol: float = 1e-12) -> float:
    """Smallest root in [0, 1] of q = (1 - p + p*q)^M.

    Uses the monotone fixed-point iteration q <- (1 - p + p*q)^M from 0,
    which increases to the smallest fixed point.
    """
    if not 0 <= p <= 1:
        raise ValueError("p must be in [0, 1]")
    if M * p <= 1:
        return 1.0
    q = 0.0
    for _ in range(10**6):
        nxt = (1 - p + p * q) ** M
        if nxt - q < tol:
            return nxt
        q = nxt
    return q


@dataclass(frozen=True)
class DisconnectionThreshold:
    """Face-interface subcriticality threshold 1/sqrt(8) for the sponge."""

    threshold: RootThreshold = field(default=RootThreshold(8, 2))

    def holds(self, p) -> bool:
        """Exact test 8 * p^2 < 1 (subcritical interface process)."""
        return self.threshold.below(p)


def menger_disconnection_threshold() -> DisconnectionThreshold:
    return DisconnectionThreshold()


@dataclass(frozen=True)
class PhaseReport:
    """All p-thresholds derivable from one type system."""

    ts: TypeSystem
    p_extinction: Fraction  # below: a.s. extinction
    p_dim1: Fraction  # similarity dimension exceeds 1 above this
    interval_threshold: Fraction | None  # 1 / min CS (None if min CS = 0)
    interval_witness: Word | None
    interval_inconclusive: bool
    no_interval_threshold: SpectralEnclosure  # enclosure of 1 / min_a rho(A_a)
    positive_measure_threshold: RootThreshold  # (min_U prod)^(-1/L)
    positive_measure_rows_ok: bool
    zero_measure_estimate: object | None = None
    notes: tuple[str, ...] = ()


def phase_report(ts: TypeSystem, zero_measure_estimate=None) -> PhaseReport:
    """Assemble every threshold with its witnesses and enclosures."""
    M, L = ts.M, ts.L
    min_cs = min(min(column_sums(ts, a)) for a in range(ts.L))
    witness, inconclusive = positive_row_witness(ts)
    interval_threshold = Fraction(1, min_cs) if min_cs > 0 else None

    encs = [spectral_radius(A) for A in ts.matrices]
    best = min(encs, key=lambda e: e.upper)
    # threshold 1 / min_a rho(A_a), capped at 1 (p never exceeds 1)
    cap = Fraction(1)
    lo = min(cap, 1 / best.upper) if best.upper > 0 else cap
    hi = min(cap, 1 / best.lower) if best.lower > 0 else cap
    no_int = SpectralEnclosure(lo, hi)

    products = []
    for U in range(ts.N):
        prod = 1
        for a in range(L):
            prod *= column_sums(ts, a)[U]
        products.append(prod)
    pos_thr = RootThreshold(min(products), L)
    rows_ok = all(
        any(all(x > 0 for x in row) for row in A) for A in ts.matrices
    )

    notes = []
    if interval_threshold is None:
        notes.append(
            "some digit matrix has a zero column; the interval-containment "
            "condition cannot hold in this representation"
        )
    if interval_threshold is not None and interval_threshold >= 1:
        notes.append(
            "interval-containment condition requires p > 1; vacuous for "
            "this system (min column sum is 1)"
        )
    if not rows_ok:
        notes.append(
            "not every digit matrix has a strictly positive row; the "
            "positive-measure condition cannot hold in this representation"
        )
    if inconclusive:
        notes.append("positive-row witness search hit its pattern budget")

    return PhaseReport(
        ts=ts,
        p_extinction=Fraction(1, M),
        p_dim1=Fraction(L, M),
        interval_threshold=interval_threshold,
        interval_witness=witness,
        interval_inconclusive=inconclusive,
        no_interval_threshold=no_int,
        positive_measure_threshold=pos_thr,
        positive_measure_rows_ok=rows_ok,
        zero_measure_estimate=zero_measure_estimate,
        notes=tuple(notes),
    )
