"""Thue-Morse specific machinery: the bit-parity letter rule, the
binary-expansion identity behind the cube period bound, cube
desubstitution through the doubling morphism, the period lower bound at
positions of the form 2**(n+2) - 1, and the constructive suffix k-power
witness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import AbelianPowerWitness, shortest_abelian_power_at, verify_power
from .morphisms import MU, ImageStream, fixed_point
from .words import BINARY, PrefixStream, RuleStream, Word


def tm_letter(n: int) -> int:
    """Letter at index ``n`` of the Thue-Morse word: parity of the number of
    one bits of ``n``."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    return n.bit_count() & 1


def thue_morse_stream() -> PrefixStream:
    """The Thue-Morse word as the fixed point of 0 -> 01, 1 -> 10."""
    return fixed_point(MU, 0)


def thue_morse_arithmetic_stream() -> PrefixStream:
    """The Thue-Morse word from the bit-parity rule; an independent
    construction used to cross-check the fixed point."""
    return RuleStream(BINARY, tm_letter)


_tm_cache: PrefixStream | None = None


def _tm() -> PrefixStream:
    global _tm_cache
    if _tm_cache is None:
        _tm_cache = thue_morse_stream()
    return _tm_cache


@dataclass(frozen=True)
class BinaryExpansion:
    """Most-significant-first bits of a positive integer, no leading zeros."""

    bits: tuple

    def __post_init__(self):
        if not self.bits or self.bits[0] != 1:
            raise ValueError("expansion must be nonempty and start with bit 1")

    @classmethod
    def of(cls, x: int) -> "BinaryExpansion":
        if x <= 0:
            raise ValueError("expansion defined for positive integers")
        return cls(tuple(int(c) for c in bin(x)[2:]))

    @property
    def value(self) -> int:
        v = 0
        for b in self.bits:
            v = 2 * v + b
        return v

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


def expansion_lemma_check(n: int, k: int) -> tuple[bool, Word]:
    """For 1 <= n and 0 <= k < 2**n, the expansions of 2**(n+1) + k and of
    2**(n+1) + 2k + 1 are 10u and 1u1 for one shared u of length n.

    Returns (holds, u).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if not 0 <= k < 2 ** n:
        raise ValueError(f"need 0 <= k < 2**{n}, got {k}")
    first = BinaryExpansion.of(2 ** (n + 1) + k).bits
    u = first[2:]
    ok = (len(first) == n + 2 and first[:2] == (1, 0)
          and BinaryExpansion.of(2 ** (n + 1) + 2 * k + 1).bits == (1,) + u + (1,))
    return ok, Word(BINARY, u)


@dataclass(frozen=True)
class CubeDesubstitution:
    """Preimage data of an Abelian cube found at an odd position of a
    doubled word: the cube's period is 2 * half_period, and the preimage
    carries the same letter at block_index, block_index + half_period and
    block_index + 2 * half_period."""

    block_index: int
    half_period: int

    @property
    def period(self) -> int:
        return 2 * self.half_period


def cube_desubstitute(z: PrefixStream, pos: int,
                      witness: AbelianPowerWitness) -> CubeDesubstitution:
    """Pull anAbelian cube of the doubled word (image of ``z`` under
    0 -> 01, 1 -> 10) at odd position ``pos`` back to an equally spaced
    letter triple in ``z``.

    Raises if the witness does not validate, if its period is odd (which
    cannot happen at an odd position), or if the pulled-back letters
    disagree (which would mean the desubstitution argument is broken).
    """
    if pos < 1 or pos % 2 == 0:
        raise ValueError(f"position must be odd, got {pos}")
    if witness.k != 3 or witness.position != pos:
        raise ValueError("witness must be an exponent-3 power at the given position")
    doubled = ImageStream(MU, z)
    if not verify_power(doubled, witness):
        raise ValueError("witness is not an Abelian cube of the doubled word")
    if witness.period % 2 != 0:
        raise ValueError(
            f"odd period {witness.period} at odd position {pos}: impossible "
            "for an image under the doubling morphism")
    n = (pos - 1) // 2
    half = witness.period // 2
    a, b, c = z.letter(n), z.letter(n + half), z.letter(n + 2 * half)
    if not a == b == c:
        raise ValueError(
            f"desubstituted letters differ at {n}, {n + half}, {n + 2 * half}: "
            f"{a}, {b}, {c}")
    return CubeDesubstitution(block_index=n, half_period=half)


@dataclass(frozen=True)
class SpecialPositionCubeScan:
    """Minimal Abelian-cube period found at Thue-Morse position
    2**(n+2) - 1, with the proven lower bound 2**(n+1)."""

    n: int
    position: int
    lower_bound: int
    minimal_period: int | None
    searched_to: int

    @property
    def bound_holds(self) -> bool:
        return self.minimal_period is None or self.minimal_period >= self.lower_bound


def special_position_cube_period(n: int, max_period: int) -> SpecialPositionCubeScan:
    """Scan Thue-Morse position 2**(n+2) - 1 for its minimal Abelian-cube
    period up to ``max_period`` (which must cover the 2**(n+1) bound)."""
    if n < 1:
        raise ValueError("need n >= 1")
    bound = 2 ** (n + 1)
    if max_period < bound:
        raise ValueError(f"max_period must be at least {bound}")
    pos = 2 ** (n + 2) - 1
    witness = shortest_abelian_power_at(_tm(), pos, 3, max_period)
    return SpecialPositionCubeScan(
        n=n, position=pos, lower_bound=bound,
        minimal_period=None if witness is None else witness.period,
        searched_to=max_period)


def suffix_kpower_witness(pos: int, k: int) -> AbelianPowerWitness:
    """Abelian ``k``-power starting at Thue-Morse position ``pos``, built
    constructively rather than by search.

    With m = 2**(floor(log2(k+1)) + 1) + 1, the letters at indices
    0, m, 2m, ..., (k+1)m all equal 0 (multiplying by m doubles the number
    of one bits of any index below m - 1).  Blowing the resulting prefix
    0 x_1 0 x_2 ... 0 x_k 0 up through the doubling morphism n times, where
    2**n exceeds ``pos``, yields k Abelian-equivalent blocks of length
    m * 2**n starting exactly at ``pos``.  The witness is not minimal; it is
    verified before being returned.
    """
    if pos < 0:
        raise ValueError("position must be nonnegative")
    if k < 2:
        raise ValueError("exponent k must be at least 2")
    m = 2 ** ((k + 1).bit_length()) + 1
    n = max(1, pos.bit_length())
    tm = _tm()
    for i in range(k + 1):
        if tm.letter(i * m) != 0:
            raise RuntimeError(f"expected letter 0 at index {i * m}")
    witness = AbelianPowerWitness(position=pos, k=k, period=m * 2 ** n)
    if not verify_power(tm, witness):
        raise RuntimeError("constructed witness failed validation")
    return witness
