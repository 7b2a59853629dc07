"""Alphabets, finite words, lazily materialized infinite words, and
cumulative letter-count indexing.

Words are stored as tuples of letters (not letter indices); the alphabet
fixes the letter ordering used by Parikh vectors.  A Parikh vector is a
plain tuple of per-letter counts in alphabet order.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np


class InsufficientPrefixError(ValueError):
    """A query needs more letters than the stream can materialize."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered collection of pairwise distinct letters.

    Letters are usually integers (0/1 for binary words, arbitrary integers
    for summable words).  The position of a letter in ``letters`` is its
    stable 0-based index, which also fixes the coordinate order of Parikh
    vectors.
    """

    letters: tuple

    def __post_init__(self):
        if len(self.letters) == 0:
            raise ValueError("alphabet needs at least one letter")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("alphabet letters must be pairwise distinct")
        object.__setattr__(self, "_pos", {a: i for i, a in enumerate(self.letters)})

    @property
    def size(self) -> int:
        return len(self.letters)

    def __contains__(self, letter) -> bool:
        return letter in self._pos

    def index(self, letter) -> int:
        try:
            return self._pos[letter]
        except KeyError:
            raise ValueError(f"letter {letter!r} not in alphabet {self.letters}") from None

    def value(self, letter) -> int:
        """Integer value carried by a letter (the letter itself when integral)."""
        if letter not in self._pos:
            raise ValueError(f"letter {letter!r} not in alphabet {self.letters}")
        if not isinstance(letter, int):
            raise ValueError(f"letter {letter!r} carries no integer value")
        return letter

    @property
    def is_integer(self) -> bool:
        return all(isinstance(a, int) for a in self.letters)


BINARY = Alphabet((0, 1))


@dataclass(frozen=True)
class Word(Sequence):
    """Finite word over an alphabet.  Immutable and hashable."""

    alphabet: Alphabet
    letters: tuple

    def __post_init__(self):
        for a in self.letters:
            if a not in self.alphabet:
                raise ValueError(f"letter {a!r} not in alphabet {self.alphabet.letters}")

    def __len__(self) -> int:
        return len(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.alphabet, self.letters[i])
        return self.letters[i]

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise ValueError("cannot concatenate words over different alphabets")
        return Word(self.alphabet, self.letters + other.letters)

    def __str__(self) -> str:
        return "".join(str(a) for a in self.letters)

    def __repr__(self) -> str:
        return f"Word({self})"

    def parikh(self) -> tuple:
        return parikh(self)


def binary_word(letters) -> Word:
    """Build a binary word from a 0/1 string or an iterable of 0/1 ints."""
    if isinstance(letters, str):
        return Word(BINARY, tuple(int(c) for c in letters))
    return Word(BINARY, tuple(letters))


def word(letters, alphabet: Alphabet | None = None) -> Word:
    """Build a word from any letter iterable, deriving the alphabet if absent."""
    letters = tuple(letters)
    if alphabet is None:
        seen = []
        for a in letters:
            if a not in seen:
                seen.append(a)
        alphabet = Alphabet(tuple(seen)) if seen else BINARY
    return Word(alphabet, letters)


def parikh(w: Word) -> tuple:
    """Per-letter occurrence counts of ``w``, in alphabet order."""
    counts = [0] * w.alphabet.size
    for a in w.letters:
        counts[w.alphabet.index(a)] += 1
    return tuple(counts)


def abelian_equivalent(x: Word, y: Word) -> bool:
    """True iff ``x`` and ``y`` have identical Parikh vectors."""
    if x.alphabet != y.alphabet:
        raise ValueError("abelian comparison requires a common alphabet")
    if len(x) != len(y):
        return False
    return parikh(x) == parikh(y)


def block_sum(w, i: int, j: int) -> int:
    """Sum of the integer letter values of ``w`` over positions [i, j)."""
    n = len(w)
    if not 0 <= i <= j <= n:
        raise IndexError(f"block [{i}, {j}) out of range for length {n}")
    return sum(int(a) for a in w[i:j])


class FactorIndex:
    """Cumulative Parikh vectors of a word prefix, for O(1) factor queries.

    Row ``k`` of ``counts`` is the Parikh vector of the first ``k`` letters,
    so the Parikh vector of any factor [i, j) is one row subtraction.  For
    integer alphabets, ``sums`` additionally holds cumulative letter-value
    sums.  Memory is O(n * alphabet size); alphabets here are tiny.
    """

    def __init__(self, alphabet: Alphabet, letters):
        self.alphabet = alphabet
        letters = list(letters)
        n = len(letters)
        d = alphabet.size
        cols = np.full(n, -1, dtype=np.int64)
        arr = np.asarray(letters, dtype=object) if n else np.empty(0, dtype=object)
        for k, a in enumerate(alphabet.letters):
            cols[arr == a] = k
        if n and cols.min() < 0:
            bad = letters[int(np.argmin(cols))]
            raise ValueError(f"letter {bad!r} not in alphabet {alphabet.letters}")
        counts = np.zeros((n + 1, d), dtype=np.int64)
        for k in range(d):
            counts[1:, k] = np.cumsum(cols == k)
        self.counts = counts
        if alphabet.is_integer:
            sums = np.zeros(n + 1, dtype=np.int64)
            if n:
                np.cumsum(np.asarray(letters, dtype=np.int64), out=sums[1:])
            self.sums = sums
        else:
            self.sums = None

    @property
    def length(self) -> int:
        return self.counts.shape[0] - 1

    def _check(self, i: int, j: int):
        if not 0 <= i <= j <= self.length:
            raise IndexError(f"factor [{i}, {j}) out of range for length {self.length}")

    def parikh(self, i: int, j: int) -> tuple:
        """Parikh vector of the factor spanning [i, j)."""
        self._check(i, j)
        return tuple(int(v) for v in self.counts[j] - self.counts[i])

    def block_sum(self, i: int, j: int) -> int:
        self._check(i, j)
        if self.sums is None:
            raise ValueError("letter-value sums need an integer alphabet")
        return int(self.sums[j] - self.sums[i])


def factor_parikh(idx: FactorIndex, i: int, j: int) -> tuple:
    """Parikh vector of the indexed factor [i, j), via cumulative rows."""
    return idx.parikh(i, j)


class PrefixStream:
    """Deterministic, lazily grown prefix of an infinite word.

    The buffer only ever appends; a letter never changes once produced, so
    repeated reads are identical.  Growth is amortized doubling.  Reads of
    the materialized region are safe from concurrent readers; extension is
    single-writer.

    Subclasses implement ``_extend_to(target)``, growing the buffer to at
    least ``target`` letters (or as far as a finite underlying source
    allows).
    """

    def __init__(self, alphabet: Alphabet, finite_length: int | None = None):
        self.alphabet = alphabet
        self._buf: list = []
        self._finite = finite_length
        self._index: FactorIndex | None = None

    def _extend_to(self, target: int) -> None:
        raise NotImplementedError

    @property
    def materialized_length(self) -> int:
        return len(self._buf)

    @property
    def finite_length(self) -> int | None:
        return self._finite

    def ensure(self, n: int) -> None:
        """Materialize at least the first ``n`` letters."""
        if n <= len(self._buf):
            return
        if self._finite is not None and n > self._finite:
            raise InsufficientPrefixError(
                f"stream ends at length {self._finite}, cannot reach {n}")
        target = max(n, 2 * len(self._buf), 16)
        if self._finite is not None:
            target = min(target, self._finite)
        self._extend_to(target)
        if len(self._buf) < n:
            raise InsufficientPrefixError(
                f"stream stalled at length {len(self._buf)}, cannot reach {n}")

    def letter(self, i: int):
        self.ensure(i + 1)
        return self._buf[i]

    def __getitem__(self, i: int):
        return self.letter(i)

    def prefix(self, n: int) -> Word:
        self.ensure(n)
        return Word(self.alphabet, tuple(self._buf[:n]))

    def factor(self, i: int, j: int) -> Word:
        self.ensure(j)
        return Word(self.alphabet, tuple(self._buf[i:j]))

    def factor_index(self, n: int) -> FactorIndex:
        """Cumulative index covering at least the first ``n`` letters, cached.

        Rebuilds grow geometrically so that interleaved queries with rising
        horizons stay amortized linear.
        """
        if self._index is None or self._index.length < n:
            target = n if self._index is None else max(n, 2 * self._index.length)
            if self._finite is not None:
                target = min(target, self._finite)
            target = max(target, n)
            self.ensure(target)
            self._index = FactorIndex(self.alphabet, self._buf[:target])
        return self._index


class RuleStream(PrefixStream):
    """Stream whose letter at index ``i`` is ``rule(i)``."""

    def __init__(self, alphabet: Alphabet, rule):
        super().__init__(alphabet)
        self._rule = rule

    def _extend_to(self, target: int) -> None:
        rule = self._rule
        self._buf.extend(rule(i) for i in range(len(self._buf), target))


class PeriodicStream(PrefixStream):
    """Periodic repetition of a finite block of letters."""

    def __init__(self, alphabet: Alphabet, block):
        super().__init__(alphabet)
        self._block = tuple(block)
        if not self._block:
            raise ValueError("period block must be nonempty")

    def _extend_to(self, target: int) -> None:
        block, p = self._block, len(self._block)
        while len(self._buf) < target:
            k = len(self._buf)
            self._buf.append(block[k % p])


class PrependStream(PrefixStream):
    """A fixed finite block followed by another stream."""

    def __init__(self, head, tail: PrefixStream):
        head = tuple(head)
        finite = None if tail.finite_length is None else tail.finite_length + len(head)
        super().__init__(tail.alphabet, finite_length=finite)
        self._buf.extend(head)
        self._head_len = len(head)
        self._tail = tail

    def _extend_to(self, target: int) -> None:
        need = target - self._head_len
        try:
            self._tail.ensure(need)
        except InsufficientPrefixError:
            pass
        avail = self._tail.materialized_length
        self._buf[self._head_len:] = self._tail._buf[:avail]


class FiniteStream(PrefixStream):
    """Finite word exposed through the stream interface."""

    def __init__(self, w: Word):
        super().__init__(w.alphabet, finite_length=len(w))
        self._buf.extend(w.letters)

    def _extend_to(self, target: int) -> None:
        pass


def as_stream(source) -> PrefixStream:
    """Coerce a stream, a Word, or a letter sequence to a PrefixStream."""
    if isinstance(source, PrefixStream):
        return source
    if isinstance(source, Word):
        return FiniteStream(source)
    return FiniteStream(word(source))
