"""Named word constructions and the executable pieces of their
correctness arguments: the square-free-prefix fixed point, the suffix
chain of square-avoiding positions built from two expanding morphisms,
and the encoding bridge between integer words with pairwise distinct
adjacent block sums and binary words with square-avoiding positions.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

import numpy as np

from .analysis import avoids_abelian_squares_at, PositionSet, _overlap_ending_at
from .morphisms import F, FIBONACCI, G, H, MU, ImageStream, fixed_point
from .thuemorse import thue_morse_stream
from .words import (
    BINARY,
    Alphabet,
    FiniteStream,
    PeriodicStream,
    PrefixStream,
    PrependStream,
    Word,
    abelian_equivalent,
    as_stream,
    word,
)


class _BlockPowersStream(PrefixStream):
    """0 1 00 11 000 111 ...: increasing same-letter blocks, the standard
    unbalanced binary word."""

    def __init__(self):
        super().__init__(BINARY)
        self._i = 0

    def _extend_to(self, target: int) -> None:
        while len(self._buf) < target:
            self._i += 1
            self._buf.extend([0] * self._i)
            self._buf.extend([1] * self._i)


class _CarrierStream(PrefixStream):
    """Binary stream lifted to integers: letter i becomes
    u_i * 2**modulus + ruler_i, where the ruler is the power-periodic word
    of the given modulus."""

    def __init__(self, u: PrefixStream, modulus: int):
        if u.alphabet != BINARY:
            raise ValueError("carrier construction needs a binary source")
        block = _ruler_block(modulus)
        values = tuple(b + o for o in (0, 2 ** modulus) for b in block)
        seen = tuple(dict.fromkeys(values))
        super().__init__(Alphabet(seen), finite_length=u.finite_length)
        self._u = u
        self._modulus = modulus
        self._block = block

    def _extend_to(self, target: int) -> None:
        self._u.ensure(target)
        shift = 2 ** self._modulus
        block, m = self._block, self._modulus
        for i in range(len(self._buf), target):
            self._buf.append(self._u.letter(i) * shift + block[i % m])


def _ruler_block(modulus: int) -> tuple:
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    return tuple(2 ** n for n in range(modulus - 1)) + (1 - 2 ** (modulus - 1),)


def v_stream(modulus: int) -> PeriodicStream:
    """Periodic integer word of the given period: 1, 2, 4, ..., then a
    closing letter that cancels the block sum down to zero.

    Its prefix sums are 2**(i mod modulus) - 1, so equal factor sums force
    congruent factor lengths.
    """
    block = _ruler_block(modulus)
    return PeriodicStream(Alphabet(block), block)


def w_stream(u, modulus: int) -> PrefixStream:
    """Integer word combining a binary word (scaled by 2**modulus) with the
    periodic ruler of that modulus."""
    return _CarrierStream(as_stream(u), modulus)


def w_word(u, modulus: int, length: int) -> list:
    s = w_stream(u, modulus)
    s.ensure(length)
    return list(s._buf[:length])


def builtin_stream(name: str) -> PrefixStream:
    """Resolve a named word.

    Plain names: tm, 0tm, 1tm, fib, g_fp, w_h, f_wh, pow_seq.
    Parameterized: ``v:M`` (periodic integer ruler) and ``w:<name>:M``
    (binary word lifted over the ruler).
    """
    if name == "tm":
        return thue_morse_stream()
    if name == "0tm":
        return PrependStream((0,), thue_morse_stream())
    if name == "1tm":
        return PrependStream((1,), thue_morse_stream())
    if name == "fib":
        return fixed_point(FIBONACCI, 0)
    if name == "g_fp":
        return fixed_point(G, 0)
    if name == "w_h":
        return fixed_point(H, 0)
    if name == "f_wh":
        return ImageStream(F, fixed_point(H, 0))
    if name == "pow_seq":
        return _BlockPowersStream()
    if name.startswith("v:"):
        return v_stream(_int_param(name[2:], name))
    if name.startswith("w:"):
        rest = name[2:]
        sub, _, m = rest.rpartition(":")
        if not sub:
            raise ValueError(f"word spec {name!r} needs the form w:<name>:<modulus>")
        return w_stream(builtin_stream(sub), _int_param(m, name))
    raise ValueError(f"unknown built-in word {name!r}")


def _int_param(text: str, spec: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"bad integer parameter in word spec {spec!r}") from None


PATTERN_KINDS = ("0x0y0", "010x0y0", "hn01")


@dataclass(frozen=True)
class PrefixPatternReport:
    """Result of scanning for a prefix of the shape (head) 0 x 0 y 0 with
    |x| = |y|: the witness pair if one exists below the bound."""

    kind: str
    power: int | None
    bound: int
    head_present: bool
    witness: tuple | None

    @property
    def found(self) -> bool:
        return self.witness is not None


def scan_prefix_pattern(stream, kind: str, bound: int,
                        power: int | None = None) -> PrefixPatternReport:
    """Search the first ``bound`` letters for a prefix of the given kind.

    Kinds: ``0x0y0`` (three equally spaced zero anchors from position 0),
    ``010x0y0`` (the same after a 01 head), and ``hn01`` (the same after
    the ``power``-fold image of 01 under the 8-uniform built-in morphism).
    Only the three anchor letters are constrained; x and y are arbitrary
    equal-length blocks.
    """
    stream = as_stream(stream)
    if stream.alphabet != BINARY:
        raise ValueError("pattern scan is defined for binary words")
    if kind == "0x0y0":
        head: tuple = ()
    elif kind == "010x0y0":
        head = (0, 1)
    elif kind == "hn01":
        if power is None or power < 0:
            raise ValueError("kind 'hn01' needs a nonnegative power")
        head = H.power(power).apply(Word(BINARY, (0, 1))).letters
    else:
        raise ValueError(f"unknown pattern kind {kind!r}; choose from {PATTERN_KINDS}")
    base = len(head)
    if stream.finite_length is not None:
        bound = min(bound, stream.finite_length)
    stream.ensure(bound)
    buf = stream._buf
    if base + 3 > bound or tuple(buf[:base]) != head or buf[base] != 0:
        return PrefixPatternReport(kind, power, bound, head_present=False, witness=None)
    arr = np.asarray(buf[:bound], dtype=np.int64)
    zeros = arr == 0
    t_max = (bound - 3 - base) // 2
    ts = np.arange(t_max + 1)
    hits = zeros[base + 1 + ts] & zeros[base + 2 + 2 * ts]
    found = np.flatnonzero(hits)
    if found.size == 0:
        return PrefixPatternReport(kind, power, bound, head_present=True, witness=None)
    t = int(found[0])
    x = stream.factor(base + 1, base + 1 + t)
    y = stream.factor(base + t + 2, base + 2 * t + 2)
    return PrefixPatternReport(kind, power, bound, head_present=True, witness=(x, y))


def descend_square_g(uv: Word) -> tuple[Word, Word]:
    """One step of the square-shrinking descent for the expanding morphism
    with images 0111110 and 01110.

    Input: a hypothetical Abelian square u v written as an image of that
    morphism.  Output: the halves (w1, w2) of the preimage, which are again
    Abelian equivalent and strictly shorter.  Raises when the input is not
    an Abelian square or not decomposable into images (which is exactly
    what the two even-count observations rule out for genuine prefixes).
    """
    if uv.alphabet != BINARY:
        raise ValueError("descent is defined for binary words")
    if len(uv) % 2 != 0:
        raise ValueError("an Abelian square has even length")
    half = len(uv) // 2
    u, v = uv[:half], uv[half:]
    if not abelian_equivalent(u, v):
        raise ValueError("input halves are not Abelian equivalent")
    preimage = _parse_g_blocks(uv)
    if len(preimage) % 2 != 0:
        raise ValueError("preimage has odd length; the one-count of an "
                         "Abelian square image must be even")
    w1 = Word(BINARY, tuple(preimage[:len(preimage) // 2]))
    w2 = Word(BINARY, tuple(preimage[len(preimage) // 2:]))
    if G.apply(w1) != u or G.apply(w2) != v:
        raise ValueError("image split does not align with the square halves")
    if not abelian_equivalent(w1, w2):
        raise ValueError("preimage halves are not Abelian equivalent")
    return w1, w2


def _parse_g_blocks(uv: Word) -> list:
    # Images are 0 1^5 0 and 0 1^3 0; the run of ones determines the letter.
    letters = uv.letters
    out = []
    p = 0
    n = len(letters)
    while p < n:
        if letters[p] != 0:
            raise ValueError(f"expected image start 0 at position {p}")
        q = p + 1
        while q < n and letters[q] == 1:
            q += 1
        run = q - p - 1
        if q >= n or letters[q] != 0:
            raise ValueError(f"unterminated image at position {p}")
        if run == 5:
            out.append(0)
        elif run == 3:
            out.append(1)
        else:
            raise ValueError(f"run of {run} ones at position {p + 1} matches no image")
        p = q + 1
    return out


def replay_f_square_lemma(w, u: Word, v: Word) -> tuple[Word, Word]:
    """Given that the 5-uniform image of ``w`` starts 0001 u v with u, v
    nonempty Abelian-equivalent blocks, recover the witness pair (x, y)
    such that 0 x 0 y 0 with |x| = |y| is a prefix of ``w``.

    Of the five residues of |u| mod 5, only 0 is consistent with Abelian
    equivalence; any other residue raises, as does a zero anchor missing
    from ``w`` (either would contradict the block-alignment argument).
    """
    w = as_stream(w)
    if len(u) == 0:
        raise ValueError("u must be nonempty")
    if not abelian_equivalent(u, v):
        raise ValueError("u and v are not Abelian equivalent")
    image = ImageStream(F, w)
    expected = (0, 0, 0, 1) + u.letters + v.letters
    got = image.prefix(len(expected))
    if got.letters != expected:
        raise ValueError("the image of w does not start with 0001 u v")
    m, r = divmod(len(u), 5)
    if r != 0:
        raise ValueError(
            f"|u| = {len(u)} is {r} mod 5: a block alignment with Abelian "
            "equivalent halves is impossible")
    if w.letter(m) != 0 or w.letter(2 * m) != 0:
        raise ValueError("zero anchors missing in the preimage: the "
                         "alignment argument is violated")
    x = w.factor(1, m)
    y = w.factor(m + 1, 2 * m)
    assembled = (0,) + x.letters + (0,) + y.letters + (0,)
    if w.prefix(2 * m + 1).letters != assembled:
        raise ValueError("recovered pair does not assemble to a prefix of w")
    return x, y


@dataclass(frozen=True)
class LemmaCheck:
    """Outcome of an exhaustive finite check: ``ok`` with the number of
    configurations examined, or a counterexample witness."""

    ok: bool
    checked: int
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_sum_length_congruence(letters, modulus: int) -> LemmaCheck:
    """Do all factor pairs of ``letters`` with equal sums have lengths
    congruent mod ``modulus``?  Exhaustive over all factors."""
    letters = list(letters)
    n = len(letters)
    sums = [0] * (n + 1)
    for i, a in enumerate(letters):
        sums[i + 1] = sums[i] + int(a)
    seen: dict = {}
    checked = 0
    for i in range(n):
        for j in range(i + 1, n + 1):
            s = sums[j] - sums[i]
            length_class = (j - i) % modulus
            checked += 1
            if s in seen:
                cls, span = seen[s]
                if cls != length_class:
                    return LemmaCheck(False, checked, witness=(span, (i, j)))
            else:
                seen[s] = (length_class, (i, j))
    return LemmaCheck(True, checked)


def check_v_sum_lemma(modulus: int, horizon: int) -> LemmaCheck:
    """Equal-sum factors of the periodic ruler have congruent lengths."""
    v = v_stream(modulus)
    v.ensure(horizon)
    return check_sum_length_congruence(v._buf[:horizon], modulus)


def check_adjacent_sum_property(w_letters, u_letters, modulus: int) -> LemmaCheck:
    """Exhaustively check that adjacent factor pairs of ``w_letters`` with
    equal sums have lengths congruent mod ``modulus`` and equal sums of the
    corresponding ``u_letters``."""
    n = len(w_letters)
    sums = [0] * (n + 1)
    u_sums = [0] * (n + 1)
    for i in range(n):
        sums[i + 1] = sums[i] + int(w_letters[i])
        u_sums[i + 1] = u_sums[i] + int(u_letters[i])
    positions: dict = {}
    for p, s in enumerate(sums):
        positions.setdefault(s, []).append(p)
    checked = 0
    for i in range(n):
        for j in range(i + 1, n + 1):
            target = 2 * sums[j] - sums[i]
            if target not in positions:
                continue
            cand = positions[target]
            for t in range(bisect.bisect_right(cand, j), len(cand)):
                k = cand[t]
                checked += 1
                if ((j - i) - (k - j)) % modulus != 0:
                    return LemmaCheck(False, checked, witness=(i, j, k, "length"))
                if u_sums[j] - u_sums[i] != u_sums[k] - u_sums[j]:
                    return LemmaCheck(False, checked, witness=(i, j, k, "source sum"))
    return LemmaCheck(True, checked)


def check_w_lemma(u, modulus: int, horizon: int) -> LemmaCheck:
    """For the lifted word over a binary source: adjacent factor pairs with
    equal sums have lengths congruent mod ``modulus`` and carry equal
    source-letter sums.  Exhaustive over all adjacent pairs in the horizon.

    Also verifies the spread bound that drives the argument: every factor
    of the ruler part sums to less than 2**(modulus-1) in absolute value.
    """
    u = as_stream(u)
    u.ensure(horizon)
    block = _ruler_block(modulus)
    u_letters = u._buf[:horizon]
    w_letters = [u_letters[i] * 2 ** modulus + block[i % modulus]
                 for i in range(horizon)]
    ruler_sums = [0] * (horizon + 1)
    for i in range(horizon):
        ruler_sums[i + 1] = ruler_sums[i] + block[i % modulus]
    if max(ruler_sums) - min(ruler_sums) > 2 ** (modulus - 1) - 1:
        return LemmaCheck(False, 0, witness=("ruler factor sum out of range",))
    return check_adjacent_sum_property(w_letters, u_letters, modulus)


def z_stream(u, positions, window: int) -> list:
    """Block sums of the lifted word between consecutive marked positions.

    The i-th position must lie in [i*window, (i+1)*window); a violation is
    rejected with its index.  Returns one integer per consecutive position
    pair.
    """
    if isinstance(positions, PositionSet):
        positions = positions.positions
    positions = list(positions)
    if window < 1:
        raise ValueError("window must be positive")
    for i, p in enumerate(positions):
        if not i * window <= p < (i + 1) * window:
            raise ValueError(
                f"window condition violated at index {i}: position {p} not in "
                f"[{i * window}, {(i + 1) * window})")
    if len(positions) < 2:
        return []
    modulus = 2 * window
    carrier = w_word(u, modulus, positions[-1])
    out = []
    for a, b in zip(positions, positions[1:]):
        out.append(sum(carrier[a:b]))
    return out


def pvhh_check(x, max_block: int) -> tuple | None:
    """First (start, block_length) where two adjacent equal-length blocks of
    the integer word have equal sums, scanning block lengths up to
    ``max_block``; None if there is none."""
    letters = [int(a) for a in x]
    n = len(letters)
    sums = [0] * (n + 1)
    for i, a in enumerate(letters):
        sums[i + 1] = sums[i] + a
    for i in range(n):
        for ell in range(1, min(max_block, (n - i) // 2) + 1):
            if sums[i + ell] - sums[i] == sums[i + 2 * ell] - sums[i + ell]:
                return (i, ell)
    return None


def tau_encode(x) -> Word:
    """Encode an integer word with odd positive letters as binary blocks
    0 1^a 0 per letter ``a``."""
    out = []
    for a in x:
        a = int(a)
        if a <= 0 or a % 2 == 0:
            raise ValueError(f"letter {a} is not an odd positive integer")
        out.append(0)
        out.extend([1] * a)
        out.append(0)
    return Word(BINARY, tuple(out))


def tau_block_boundaries(x) -> tuple:
    """Start position of each encoded block within the encoding of ``x``."""
    starts = [0]
    for a in x:
        starts.append(starts[-1] + int(a) + 2)
    return tuple(starts[:-1])


def search_pvhh_word(alphabet, target_len: int, max_block: int | None = None,
                     max_nodes: int | None = None) -> list:
    """Longest-found integer word over ``alphabet`` in which no two adjacent
    equal-length blocks have equal sums.

    Depth-first with prefix-sum pruning; letters are tried in ascending
    value order and the first word reaching each new length is retained, so
    the result is deterministic.  Stops at ``target_len``, at search-space
    exhaustion, or at the node budget.
    """
    letters = sorted(set(int(a) for a in alphabet))
    if not letters:
        raise ValueError("alphabet must be nonempty")
    best: list = []
    stack: list = []
    sums = [0]
    nodes = 0

    def violates_at_end() -> bool:
        n = len(stack)
        limit = n // 2 if max_block is None else min(max_block, n // 2)
        for ell in range(1, limit + 1):
            if sums[n - ell] - sums[n - 2 * ell] == sums[n] - sums[n - ell]:
                return True
        return False

    def dfs() -> bool:
        nonlocal nodes
        if len(stack) > len(best):
            best[:] = stack
        if len(stack) >= target_len:
            return True
        for a in letters:
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                return True
            stack.append(a)
            sums.append(sums[-1] + a)
            if not violates_at_end() and dfs():
                return True
            stack.pop()
            sums.pop()
        return False

    dfs()
    return list(best)


@dataclass(frozen=True)
class BlockBoundaryInstance:
    """A finite binary word with horizon-certified square-avoiding
    positions spaced one per window, built by encoding an integer word with
    pairwise distinct adjacent block sums."""

    source: tuple
    encoded: Word
    positions: PositionSet
    window: int


def tau_boundary_instance(letters) -> BlockBoundaryInstance:
    """Encode a block-sum-distinct integer word and certify its block
    boundaries as square-avoiding positions.

    The boundary gaps are at most max(letter) + 2, so with that window
    width every window [i*N, (i+1)*N) up to the last boundary contains a
    boundary; the first one in each window is selected.  Every selected
    position is then re-certified by a direct scan over the encoded word.
    """
    letters = [int(a) for a in letters]
    if pvhh_check(letters, len(letters) // 2) is not None:
        raise ValueError("source word has two adjacent equal-length blocks "
                         "with equal sums")
    encoded = tau_encode(letters)
    boundaries = tau_block_boundaries(letters)
    window = max(letters) + 2
    chosen = []
    i = 0
    while True:
        lo = i * window
        pos = bisect.bisect_left(boundaries, lo)
        if pos >= len(boundaries):
            break
        p = boundaries[pos]
        if p >= lo + window:
            raise RuntimeError("boundary gap exceeded the window width")
        chosen.append(p)
        i += 1
    horizon = len(encoded)
    stream = FiniteStream(encoded)
    bounds = []
    for p in chosen:
        limit = (horizon - p) // 2
        if not avoids_abelian_squares_at(stream, p, limit):
            raise ValueError(f"boundary {p} does not avoid squares in-horizon")
        bounds.append(limit)
    ps = PositionSet(tuple(chosen), horizon=horizon, period_bounds=tuple(bounds))
    return BlockBoundaryInstance(source=tuple(letters), encoded=encoded,
                                 positions=ps, window=window)


def enumerate_overlap_free(n: int) -> list:
    """All binary words of length ``n`` containing no factor of the shape
    (letter)(x)(letter)(x)(letter), by pruned depth-first extension."""
    if n < 1:
        raise ValueError("length must be positive")
    if n > 20:
        raise ValueError("length capped at 20 to keep the enumeration small")
    out: list = []
    stack: list = []

    def dfs():
        if len(stack) == n:
            out.append(Word(BINARY, tuple(stack)))
            return
        for b in (0, 1):
            stack.append(b)
            if not _overlap_ending_at(stack, len(stack) - 1):
                dfs()
            stack.pop()

    dfs()
    return out
