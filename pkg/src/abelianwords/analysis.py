"""Abelian complexity profiles, balance measurement, Abelian power
detection, repetitivity and recurrence scans, and overlap checking.

All scans work over an explicitly materialized prefix, so every measured
quantity is a lower bound (complexity) or window-certified value (balance,
avoidance) relative to the infinite word; callers choose horizons and, where
exactness matters, re-scan at a doubled horizon and require stabilization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .words import PrefixStream, Word, as_stream


def _counts(stream: PrefixStream, prefix_len: int) -> np.ndarray:
    return stream.factor_index(prefix_len).counts[:prefix_len + 1]


def abelian_complexity(stream, n: int, prefix_len: int) -> int:
    """Number of distinct Parikh vectors among the length-``n`` factors of
    the first ``prefix_len`` letters.

    Counts distinct vectors by deduplication; since all vectors of a fixed
    length share their coordinate sum, the first coordinate is dropped
    before deduplicating (exact, and collapses the binary case to a single
    column).
    """
    stream = as_stream(stream)
    if not 0 <= n <= prefix_len:
        raise ValueError(f"need 0 <= n <= prefix_len, got n={n}, prefix_len={prefix_len}")
    if n == 0:
        return 1
    counts = _counts(stream, prefix_len)
    windows = counts[n:, 1:] - counts[:-n, 1:]
    if windows.shape[1] == 1:
        return int(np.unique(windows[:, 0]).size)
    return int(np.unique(windows, axis=0).shape[0])


@dataclass(frozen=True)
class ComplexityProfile:
    """Distinct-Parikh counts per factor length, over a fixed scan prefix."""

    prefix_len: int
    values: dict

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def rows(self):
        return [(n, self.values[n]) for n in sorted(self.values)]


def complexity_profile(stream, n_max: int, prefix_len: int,
                       n_min: int = 1) -> ComplexityProfile:
    stream = as_stream(stream)
    values = {n: abelian_complexity(stream, n, prefix_len)
              for n in range(n_min, n_max + 1)}
    return ComplexityProfile(prefix_len=prefix_len, values=values)


def subword_complexity(stream, n: int, prefix_len: int) -> int:
    """Number of distinct length-``n`` factors of the scanned prefix."""
    stream = as_stream(stream)
    if not 0 <= n <= prefix_len:
        raise ValueError(f"need 0 <= n <= prefix_len, got n={n}, prefix_len={prefix_len}")
    if n == 0:
        return 1
    stream.ensure(prefix_len)
    buf = stream._buf
    return len({tuple(buf[i:i + n]) for i in range(prefix_len - n + 1)})


@dataclass(frozen=True)
class BalanceWitness:
    n: int
    letter: object
    max_position: int
    min_position: int
    spread: int


@dataclass(frozen=True)
class BalanceReport:
    """Least c such that every pair of equal-length factors in the scanned
    window differs by at most c in every letter count, with a witness pair
    achieving the spread."""

    c: int
    n_max: int
    prefix_len: int
    witness: BalanceWitness | None


def balance(stream, n_max: int, prefix_len: int) -> BalanceReport:
    stream = as_stream(stream)
    if n_max > prefix_len:
        raise ValueError("n_max cannot exceed prefix_len")
    counts = _counts(stream, prefix_len)
    best = 0
    witness = None
    for n in range(1, n_max + 1):
        windows = counts[n:] - counts[:-n]
        for col in range(windows.shape[1]):
            hi = int(np.argmax(windows[:, col]))
            lo = int(np.argmin(windows[:, col]))
            spread = int(windows[hi, col] - windows[lo, col])
            if spread > best:
                best = spread
                witness = BalanceWitness(n=n, letter=stream.alphabet.letters[col],
                                         max_position=hi, min_position=lo,
                                         spread=spread)
    return BalanceReport(c=best, n_max=n_max, prefix_len=prefix_len,
                         witness=witness)


@dataclass(frozen=True)
class AbelianPowerWitness:
    """Start position, exponent and block length of a detected Abelian power:
    the ``k`` consecutive length-``period`` blocks starting at ``position``
    are pairwise Abelian equivalent."""

    position: int
    k: int
    period: int

    def __post_init__(self):
        if self.period < 1 or self.k < 2 or self.position < 0:
            raise ValueError("witness needs position >= 0, k >= 2, period >= 1")

    @property
    def length(self) -> int:
        return self.k * self.period

    def blocks(self, stream) -> list:
        stream = as_stream(stream)
        p, ell = self.position, self.period
        return [stream.factor(p + i * ell, p + (i + 1) * ell) for i in range(self.k)]


def verify_power(stream, witness: AbelianPowerWitness) -> bool:
    """Recheck a witness against the stream: consecutive blocks must have
    identical Parikh vectors."""
    stream = as_stream(stream)
    p, k, ell = witness.position, witness.k, witness.period
    idx = stream.factor_index(p + k * ell)
    first = idx.parikh(p, p + ell)
    return all(idx.parikh(p + i * ell, p + (i + 1) * ell) == first
               for i in range(1, k))


def shortest_abelian_power_at(stream, pos: int, k: int,
                              max_period: int) -> AbelianPowerWitness | None:
    """Minimal-period Abelian ``k``-power starting at ``pos`` with period at
    most ``max_period``, or None if there is none in that range.

    Blocks are compared through cumulative counts: period ``p`` works iff
    counts[pos + (i+2)p] - 2*counts[pos + (i+1)p] + counts[pos + i*p] is zero
    for every i < k-1.
    """
    stream = as_stream(stream)
    if k < 2:
        raise ValueError("exponent k must be at least 2")
    if max_period < 1:
        return None
    stream.ensure(pos + k * max_period)
    counts = stream.factor_index(pos + k * max_period).counts
    periods = np.arange(1, max_period + 1)
    ok = np.ones(max_period, dtype=bool)
    for i in range(k - 1):
        second_diff = (counts[pos + (i + 2) * periods]
                       - 2 * counts[pos + (i + 1) * periods]
                       + counts[pos + i * periods])
        ok &= ~(second_diff != 0).any(axis=1)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    return AbelianPowerWitness(position=pos, k=k, period=int(hits[0]) + 1)


def avoids_abelian_squares_at(stream, pos: int, max_period: int) -> bool:
    """Bounded certificate: no Abelian square of period <= ``max_period``
    starts at ``pos``."""
    return shortest_abelian_power_at(stream, pos, 2, max_period) is None


@dataclass(frozen=True)
class RepetitivityReport:
    repetitive: bool
    k: int
    window: int
    prefix_len: int
    witness_position: int | None
    witness_factor: Word | None

    def __bool__(self) -> bool:
        return self.repetitive


def everywhere_k_repetitive(stream, k: int, n: int,
                            prefix_len: int) -> RepetitivityReport:
    """Does every length-``n`` factor of the scanned prefix begin with an
    Abelian ``k``-power?  The power must fit inside the factor, so only
    periods up to n // k qualify."""
    stream = as_stream(stream)
    if not 1 <= n <= prefix_len:
        raise ValueError("need 1 <= n <= prefix_len")
    counts = _counts(stream, prefix_len)
    starts = np.arange(prefix_len - n + 1)
    found = np.zeros(starts.size, dtype=bool)
    for period in range(1, n // k + 1):
        ok = np.ones(starts.size, dtype=bool)
        for i in range(k - 1):
            second_diff = (counts[starts + (i + 2) * period]
                           - 2 * counts[starts + (i + 1) * period]
                           + counts[starts + i * period])
            ok &= ~(second_diff != 0).any(axis=1)
        found |= ok
        if found.all():
            return RepetitivityReport(True, k, n, prefix_len, None, None)
    if found.all():
        return RepetitivityReport(True, k, n, prefix_len, None, None)
    p = int(np.flatnonzero(~found)[0])
    return RepetitivityReport(False, k, n, prefix_len, p, stream.factor(p, p + n))


@dataclass(frozen=True)
class RecurrenceReport:
    """Largest gap between consecutive occurrences of any length-``n``
    factor of the scanned prefix.  Factors seen only once cannot witness a
    gap; they are excluded and counted in ``singletons``."""

    n: int
    prefix_len: int
    max_gap: int | None
    distinct_factors: int
    singletons: int


def recurrence_gap(stream, n: int, prefix_len: int) -> RecurrenceReport:
    stream = as_stream(stream)
    if not 1 <= n <= prefix_len:
        raise ValueError("need 1 <= n <= prefix_len")
    stream.ensure(prefix_len)
    buf = stream._buf
    last_seen: dict = {}
    gaps: dict = {}
    for p in range(prefix_len - n + 1):
        key = tuple(buf[p:p + n])
        if key in last_seen:
            gap = p - last_seen[key]
            if key not in gaps or gap > gaps[key]:
                gaps[key] = gap
        last_seen[key] = p
    singletons = len(last_seen) - len(gaps)
    max_gap = max(gaps.values()) if gaps else None
    return RecurrenceReport(n=n, prefix_len=prefix_len, max_gap=max_gap,
                            distinct_factors=len(last_seen),
                            singletons=singletons)


def _overlap_ending_at(letters, end: int) -> bool:
    # An overlap of period p occupies [end - 2p, end]; it needs
    # letters[t] == letters[t + p] across that range.
    for p in range(1, end // 2 + 1):
        i = end - 2 * p
        if all(letters[i + t] == letters[i + t + p] for t in range(p + 1)):
            return True
    return False


def is_overlap_free(w) -> bool:
    """True iff no factor has the shape (letter)(x)(letter)(x)(letter), i.e.
    a block repeated twice plus its leading letter again."""
    letters = tuple(w)
    return not any(_overlap_ending_at(letters, e) for e in range(2, len(letters)))


@dataclass(frozen=True)
class PositionSet:
    """Sorted certified positions below a horizon, each carrying the period
    bound up to which avoidance was checked."""

    positions: tuple
    horizon: int
    period_bounds: tuple

    def __post_init__(self):
        if self.horizon <= 0:
            raise ValueError("horizon must be positive")
        if len(self.period_bounds) != len(self.positions):
            raise ValueError("one period bound per position required")
        prev = -1
        for p in self.positions:
            if p <= prev:
                raise ValueError("positions must be strictly increasing")
            if p >= self.horizon:
                raise ValueError(f"position {p} not below horizon {self.horizon}")
            prev = p


def density(ps: PositionSet) -> Fraction:
    """Fraction of indices below the horizon that belong to the set."""
    return Fraction(len(ps.positions), ps.horizon)
