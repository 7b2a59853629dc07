"""Letter-to-word substitutions: application, fixed points, incidence
matrices, the bounded-complexity-forcing certificate, and the constructive
bound on the Abelian complexity of a morphic image.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from pathlib import Path

import numpy as np

from .words import (
    BINARY,
    Alphabet,
    InsufficientPrefixError,
    PrefixStream,
    Word,
    parikh,
)


@dataclass(frozen=True)
class Morphism:
    """Substitution sending each domain letter to a finite codomain word.

    ``images[i]`` is the image of ``domain.letters[i]`` as a letter tuple.
    Empty images (erasing morphisms) are allowed.
    """

    domain: Alphabet
    codomain: Alphabet
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.domain.size:
            raise ValueError("one image per domain letter required")
        for img in self.images:
            for a in img:
                if a not in self.codomain:
                    raise ValueError(f"image letter {a!r} not in codomain")

    def image(self, letter) -> Word:
        return Word(self.codomain, self.images[self.domain.index(letter)])

    def image_letters(self, letter) -> tuple:
        return self.images[self.domain.index(letter)]

    @property
    def image_lengths(self) -> tuple:
        return tuple(len(img) for img in self.images)

    @property
    def is_uniform(self) -> bool:
        return len(set(self.image_lengths)) == 1

    @property
    def is_erasing(self) -> bool:
        return any(len(img) == 0 for img in self.images)

    def apply(self, w: Word) -> Word:
        return apply(self, w)

    def __call__(self, w):
        """Apply to a finite word, or lazily to a stream."""
        if isinstance(w, PrefixStream):
            return ImageStream(self, w)
        return apply(self, w)

    def power(self, n: int) -> "Morphism":
        """n-fold self-composition (domain must equal codomain)."""
        if self.domain != self.codomain:
            raise ValueError("power needs matching domain and codomain")
        if n < 0:
            raise ValueError("power must be nonnegative")
        result = Morphism(self.domain, self.codomain,
                          tuple((a,) for a in self.domain.letters))
        for _ in range(n):
            result = Morphism(
                self.domain, self.codomain,
                tuple(tuple(c for b in img for c in self.image_letters(b))
                      for img in result.images))
        return result


def apply(m: Morphism, w: Word) -> Word:
    """Concatenation of the images of the letters of ``w``."""
    if w.alphabet != m.domain:
        raise ValueError("word alphabet does not match morphism domain")
    out = []
    for a in w.letters:
        out.extend(m.image_letters(a))
    return Word(m.codomain, tuple(out))


def incidence_matrix(m: Morphism) -> np.ndarray:
    """Matrix whose entry [b][a] counts letter ``b`` in the image of ``a``."""
    mat = np.zeros((m.codomain.size, m.domain.size), dtype=np.int64)
    for col, img in enumerate(m.images):
        for a in img:
            mat[m.codomain.index(a), col] += 1
    return mat


def is_primitive(m: Morphism) -> bool:
    """True iff some power (up to alphabet size squared) of the incidence
    matrix is entrywise positive."""
    if m.domain != m.codomain:
        raise ValueError("primitivity needs matching domain and codomain")
    base = incidence_matrix(m) > 0
    d = m.domain.size
    reach = base.copy()
    for _ in range(d * d):
        if reach.all():
            return True
        reach = (reach.astype(np.int64) @ base.astype(np.int64)) > 0
    return bool(reach.all())


@dataclass(frozen=True)
class BoundednessCertificate:
    """Common direction of all image Parikh vectors, with per-letter
    multipliers: image Parikh of letter ``a`` equals multiplier[a] times
    ``direction`` exactly."""

    direction: tuple
    multipliers: tuple


def forces_bounded_complexity(m: Morphism) -> BoundednessCertificate | None:
    """Certificate iff every image of an infinite word has bounded Abelian
    complexity; equivalently, iff the image Parikh vectors are pairwise
    proportional.

    Proportionality is tested by exact integer cross-multiplication
    (len(f(b)) * Psi(f(a)) == len(f(a)) * Psi(f(b))), never floats.  Empty
    images get multiplier 0 and are compatible with any direction.
    """
    vectors = [parikh(m.image(a)) for a in m.domain.letters]
    nonzero = [v for v in vectors if any(v)]
    if not nonzero:
        direction = (1,) * m.codomain.size
        return BoundednessCertificate(direction, (0,) * m.domain.size)
    ref = nonzero[0]
    ref_len = sum(ref)
    for v in nonzero[1:]:
        v_len = sum(v)
        if any(v_len * r != ref_len * c for r, c in zip(ref, v)):
            return None
    g = gcd(*ref)
    direction = tuple(c // g for c in ref)
    unit = sum(direction)
    multipliers = tuple(sum(v) // unit for v in vectors)
    return BoundednessCertificate(direction, multipliers)


class MorphicStream(PrefixStream):
    """Fixed point of a prolongable morphism, grown by substituting the
    already materialized letters in place."""

    def __init__(self, m: Morphism, seed):
        if m.domain != m.codomain:
            raise ValueError("fixed point needs matching domain and codomain")
        img = m.image_letters(seed)
        if len(img) < 2 or img[0] != seed:
            raise ValueError(
                f"morphism is not prolongable on {seed!r}: image must start "
                "with the seed and have length at least 2")
        _check_divergence(m, seed)
        super().__init__(m.domain)
        self.morphism = m
        self.seed = seed
        self._buf.extend(img)
        self._src = 1

    def _extend_to(self, target: int) -> None:
        buf = self._buf
        m = self.morphism
        while len(buf) < target:
            if self._src >= len(buf):
                raise InsufficientPrefixError("fixed point iteration stalled")
            buf.extend(m.image_letters(buf[self._src]))
            self._src += 1


def _check_divergence(m: Morphism, seed) -> None:
    # Iterate Parikh vectors through the incidence matrix; lengths must
    # strictly grow within 2*|A| steps or the fixed point is finite.
    mat = incidence_matrix(m)
    vec = np.zeros(m.domain.size, dtype=np.int64)
    vec[m.domain.index(seed)] = 1
    prev = 1
    for _ in range(2 * m.domain.size):
        vec = mat @ vec
        cur = int(vec.sum())
        if cur <= prev:
            raise ValueError("iteration lengths do not diverge from this seed")
        prev = cur


def fixed_point(m: Morphism, seed) -> MorphicStream:
    """Stream of the infinite word fixed by ``m`` and starting with ``seed``."""
    return MorphicStream(m, seed)


class ImageStream(PrefixStream):
    """Lazy image of a stream under a morphism."""

    _STALL_LIMIT = 1_000_000  # consumed source letters without output growth

    def __init__(self, m: Morphism, source: PrefixStream):
        if source.alphabet != m.domain:
            raise ValueError("source alphabet does not match morphism domain")
        super().__init__(m.codomain)
        self.morphism = m
        self.source = source
        self._src = 0

    def _extend_to(self, target: int) -> None:
        buf = self._buf
        m = self.morphism
        stalled = 0
        while len(buf) < target:
            try:
                a = self.source.letter(self._src)
            except InsufficientPrefixError:
                self._finite = len(buf)
                return
            img = m.image_letters(a)
            if img:
                stalled = 0
                buf.extend(img)
            else:
                stalled += 1
                if stalled > self._STALL_LIMIT:
                    raise InsufficientPrefixError(
                        "image stream stalled: the morphism erases every "
                        "letter the source produces")
            self._src += 1


@dataclass(frozen=True)
class ImageBoundReport:
    """Constants bounding the Abelian complexity of a morphic image.

    Given a source word that is c-balanced with Abelian complexity at most
    k, the image under the morphism has Abelian complexity at most k3 for
    window lengths of at least m_max, where

        k1 = c * sum of image lengths,
        m_max = max image length,
        k2 = max length of a source factor whose image length is <= k1 + m_max,
        k3 = k * (m_max * domain size)**2 * (k2 + 1).

    ``exhausted`` records whether the scan proved no longer factor can enter
    the k2 set (always provable for non-erasing morphisms once the minimal
    image length over a window size passes k1 + m_max; never claimed for
    erasing ones).  ``degenerate`` flags an all-erasing morphism, whose
    image is finite and trivially bounded.
    """

    c: int
    k: int
    k1: int
    m_max: int
    k2: int
    k3: int
    horizon: int
    exhausted: bool
    degenerate: bool


def image_complexity_bound(m: Morphism, source: PrefixStream, c: int, k: int,
                           horizon: int) -> ImageBoundReport:
    """Compute the image-complexity constants by scanning source factors up
    to ``horizon``; see ImageBoundReport for the formulas."""
    if c < 1 or k < 1:
        raise ValueError("balance and complexity bounds must be positive")
    lengths = np.asarray(m.image_lengths, dtype=np.int64)
    m_max = int(lengths.max()) if lengths.size else 0
    k1 = c * int(lengths.sum())
    if m_max == 0:
        return ImageBoundReport(c=c, k=k, k1=0, m_max=0, k2=0, k3=0,
                                horizon=horizon, exhausted=True, degenerate=True)
    idx = source.factor_index(horizon)
    counts = idx.counts[:horizon + 1]
    budget = k1 + m_max
    k2 = 0
    exhausted = False
    for ell in range(1, horizon + 1):
        windows = counts[ell:] - counts[:-ell]
        min_image = int((windows @ lengths).min())
        if min_image <= budget:
            k2 = ell
        elif not m.is_erasing:
            # Non-erasing: the minimal image length strictly grows with the
            # window size, so no longer factor can fit the budget.
            exhausted = True
            break
    k3 = k * (m_max * m.domain.size) ** 2 * (k2 + 1)
    return ImageBoundReport(c=c, k=k, k1=k1, m_max=m_max, k2=k2, k3=k3,
                            horizon=horizon, exhausted=exhausted,
                            degenerate=False)


def _parse_letter(token: str):
    try:
        return int(token)
    except ValueError:
        return token


def parse_morphism_text(text: str) -> Morphism:
    """Parse a morphism definition.

    Format: a ``domain:`` line listing the letters, an optional
    ``codomain:`` line, and one ``letter -> image`` rule per line (image is
    the concatenation of single-character letters; an absent right side is
    the empty image).  Lines starting with ``#`` are ignored.
    """
    domain_letters = None
    codomain_letters = None
    rules: dict = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#") or line == "rules:":
            continue
        if line.startswith("domain:"):
            domain_letters = tuple(_parse_letter(t) for t in line[7:].split())
        elif line.startswith("codomain:"):
            codomain_letters = tuple(_parse_letter(t) for t in line[9:].split())
        elif "->" in line:
            left, right = line.split("->", 1)
            letter = _parse_letter(left.strip())
            image = tuple(_parse_letter(c) for c in right.strip())
            if letter in rules:
                raise ValueError(f"duplicate rule for letter {letter!r}")
            rules[letter] = image
        else:
            raise ValueError(f"unrecognized morphism line: {raw!r}")
    if domain_letters is None:
        raise ValueError("morphism definition needs a 'domain:' line")
    domain = Alphabet(domain_letters)
    codomain = Alphabet(codomain_letters) if codomain_letters else domain
    missing = [a for a in domain.letters if a not in rules]
    if missing:
        raise ValueError(f"missing rules for letters {missing}")
    extra = [a for a in rules if a not in domain]
    if extra:
        raise ValueError(f"rules for letters outside the domain: {extra}")
    images = tuple(rules[a] for a in domain.letters)
    return Morphism(domain, codomain, images)


def load_morphism(path) -> Morphism:
    return parse_morphism_text(Path(path).read_text())


def _binary_morphism(img0: str, img1: str) -> Morphism:
    return Morphism(BINARY, BINARY, (tuple(int(c) for c in img0),
                                     tuple(int(c) for c in img1)))


#: Doubling map 0 -> 01, 1 -> 10 whose fixed point is the Thue-Morse word.
MU = _binary_morphism("01", "10")

#: Expanding map whose fixed point has no Abelian square prefix.
G = _binary_morphism("0111110", "01110")

#: 5-uniform map with both image Parikh vectors equal to (3, 2).
F = _binary_morphism("00011", "01100")

#: 8-uniform map whose fixed point carries the square-avoiding suffix chain.
H = _binary_morphism("01011111", "11101111")

#: Map whose fixed point is the Fibonacci word, the standard Sturmian example.
FIBONACCI = _binary_morphism("01", "0")

BUILTIN_MORPHISMS = {"mu": MU, "g": G, "f": F, "h": H}


def resolve_morphism(spec: str) -> Morphism:
    """Look up a built-in morphism by name, or load one from a file path."""
    if spec in BUILTIN_MORPHISMS:
        return BUILTIN_MORPHISMS[spec]
    p = Path(spec)
    if p.exists():
        return load_morphism(p)
    raise ValueError(f"unknown morphism {spec!r} (not a built-in name or file)")
