"""Braid words, closures, Stallings homogenization and fiber stabilization.

Strand positions are 1-based in generator names: ``σ_i`` crosses positions
``i`` and ``i + 1``.  A positive letter ``σ_i`` passes the strand at position
``i`` over the strand at ``i + 1``.  Words are read left to right, top to
bottom.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .errors import (
    IndexOutOfRange,
    MovingPartNotKnot,
    NonIntegralGenus,
    NotHomogeneous,
    NotParted,
    ParseError,
)


def _sgn(x: int) -> int:
    return 1 if x > 0 else -1


@dataclass(frozen=True)
class BraidWord:
    """Braid on ``n`` strands; letters are signed generator indices."""

    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.n < 1:
            raise IndexOutOfRange("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) >= self.n:
                raise IndexOutOfRange(f"generator {x} out of range for {self.n} strands")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(str(x) for x in self.letters)

    def __add__(self, other: "BraidWord") -> "BraidWord":
        if other.n != self.n:
            raise IndexOutOfRange("cannot concatenate braids on different strand counts")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple(-x for x in reversed(self.letters)))

    def crossings(self):
        """Yield ``(letter, left strand, right strand)`` with strands named by
        their starting position (0-based)."""
        at = list(range(self.n))
        for x in self.letters:
            i = abs(x) - 1
            yield x, at[i], at[i + 1]
            at[i], at[i + 1] = at[i + 1], at[i]

    def final_positions(self) -> list[int]:
        """``perm[s]`` is the final position of the strand starting at ``s``."""
        at = list(range(self.n))
        for x in self.letters:
            i = abs(x) - 1
            at[i], at[i + 1] = at[i + 1], at[i]
        perm = [0] * self.n
        for pos, s in enumerate(at):
            perm[s] = pos
        return perm


def parse_braid(s: str, n: int) -> BraidWord:
    """Parse whitespace-separated nonzero integers (sign = exponent)."""
    letters = []
    for tok in s.replace(",", " ").split():
        try:
            x = int(tok)
        except ValueError:
            raise ParseError(f"bad braid letter {tok!r}") from None
        if x == 0:
            raise ParseError("braid letters must be nonzero")
        letters.append(x)
    return BraidWord(n, tuple(letters))


# ---------------------------------------------------------------------------
# closures

@dataclass(frozen=True)
class ClosureSummary:
    permutation: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]  # strands (0-based start positions)
    lk: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.components)

    def component_of(self, strand: int) -> int:
        for c, members in enumerate(self.components):
            if strand in members:
                return c
        raise IndexOutOfRange(f"no strand {strand}")


def closure_summary(b: BraidWord) -> ClosureSummary:
    """Permutation, closure components and pairwise linking numbers."""
    perm = b.final_positions()
    comp = [-1] * b.n
    components = []
    for s in range(b.n):
        if comp[s] >= 0:
            continue
        cyc = []
        x = s
        while comp[x] < 0:
            comp[x] = len(components)
            cyc.append(x)
            x = perm[x]
        components.append(tuple(sorted(cyc)))
    c = len(components)
    twice = [[0] * c for _ in range(c)]
    for x, left, right in b.crossings():
        a, bb = comp[left], comp[right]
        if a != bb:
            twice[a][bb] += _sgn(x)
            twice[bb][a] += _sgn(x)
    lk = tuple(tuple(v // 2 for v in row) for row in twice)
    return ClosureSummary(tuple(perm), tuple(components), lk)


def linking_gcd(cs: ClosureSummary) -> int:
    g = 0
    for i in range(cs.count):
        for j in range(i + 1, cs.count):
            g = gcd(g, cs.lk[i][j])
    return g


# ---------------------------------------------------------------------------
# homogeneity

def generator_signs(b: BraidWord) -> dict[int, set[int]]:
    signs: dict[int, set[int]] = {}
    for x in b.letters:
        signs.setdefault(abs(x), set()).add(_sgn(x))
    return signs


def is_sign_consistent(b: BraidWord) -> bool:
    """No generator occurs with both signs."""
    return all(len(s) == 1 for s in generator_signs(b).values())


def is_homogeneous(b: BraidWord) -> bool:
    """Every generator occurs, and always with the same sign."""
    signs = generator_signs(b)
    return is_sign_consistent(b) and len(signs) == b.n - 1


@dataclass(frozen=True)
class StallingsResult:
    result: BraidWord
    k: int
    epsilon: int
    correct_signs: dict[int, int] = field(default_factory=dict)


def stallings_homogenize(b: BraidWord) -> StallingsResult:
    """Add strands to ``b`` until the word is homogeneous.

    Each generator's correct sign is the sign of its first occurrence.  For
    every wrongly signed letter ``σ_i^e`` a bundle of ``j`` added strands
    dips from the right edge to position ``i`` (every crossing on the way
    uses the correct sign of its generator), the letter is replayed as
    ``σ_{i+j}^e`` where ``j`` is the least shift with correct sign ``e``, and
    the bundle returns.  A generator that never occurs gets a bundle dip with
    no letter in between, so it appears too.  The added strands are finally
    closed into one component by ``σ_{m+1}^{-ε} ... σ_{m+k-1}^{-ε}``, where
    ``ε`` is the sign of the first wrongly signed letter (``+1`` if none).
    """
    m = b.n
    first: dict[int, int] = {}
    epsilon = None
    for x in b.letters:
        g, e = abs(x), _sgn(x)
        if g not in first:
            first[g] = e
        elif first[g] != e and epsilon is None:
            epsilon = e
    if epsilon is None:
        epsilon = 1
    absent = [g for g in range(1, m) if g not in first]
    if not absent and is_sign_consistent(b):
        return StallingsResult(b, 0, epsilon, dict(first))

    def correct(g: int) -> int:
        if g < m:
            return first.get(g, -epsilon)
        if g == m:
            return epsilon
        return -epsilon

    def shift_for(i: int, e: int) -> int:
        j = 1
        while correct(i + j) != e:
            j += 1
        return j

    def dip(i: int, j: int) -> list[int]:
        out = []
        for q in range(m, i - 1, -1):
            out += [correct(g) * g for g in range(q, q + j)]
        return out

    def ret(i: int, j: int) -> list[int]:
        out = []
        for q in range(i, m + 1):
            out += [correct(g) * g for g in range(q + j - 1, q - 1, -1)]
        return out

    letters: list[int] = []
    k = 0
    for x in b.letters:
        g, e = abs(x), _sgn(x)
        if correct(g) == e:
            letters.append(x)
            continue
        j = shift_for(g, e)
        k = max(k, j)
        letters += dip(g, j) + [e * (g + j)] + ret(g, j)
    for g in absent:
        k = max(k, 1)
        letters += dip(g, 1) + ret(g, 1)
    letters += [-epsilon * g for g in range(m + 1, m + k)]
    signs = {g: correct(g) for g in range(1, m + k)}
    return StallingsResult(BraidWord(m + k, tuple(letters)), k, epsilon, signs)


def delete_strands(b: BraidWord, strands: Iterable[int]) -> BraidWord:
    """Remove strands (named by 0-based starting position) and every letter
    touching them; the remaining strands are renumbered in order."""
    gone = set(strands)
    if any(not 0 <= s < b.n for s in gone):
        raise IndexOutOfRange("strand out of range")
    at = list(range(b.n))
    out = []
    for x in b.letters:
        i = abs(x) - 1
        if at[i] not in gone and at[i + 1] not in gone:
            kept_before = sum(1 for s in at[:i] if s not in gone)
            out.append(_sgn(x) * (kept_before + 1))
        at[i], at[i + 1] = at[i + 1], at[i]
    return BraidWord(max(1, b.n - len(gone)), tuple(out))


@dataclass(frozen=True)
class FiberData:
    chi: int
    components: int
    split_factors: int
    genus: int


def fiber_euler(b: BraidWord) -> FiberData:
    """Euler characteristic and genus of the homogeneous-braid fiber.

    The fiber is built from ``n`` discs joined by one half-twisted band per
    letter, so ``chi = n - len(b)``.  A missing generator splits the closure;
    each split factor contributes its own connected surface.
    """
    if not is_sign_consistent(b):
        raise NotHomogeneous("some generator occurs with both signs")
    chi = b.n - len(b)
    c = closure_summary(b).count
    factors = 1 + sum(1 for g in range(1, b.n) if g not in generator_signs(b))
    twice = 2 * factors - c - chi
    if twice % 2 or twice < 0:
        raise NonIntegralGenus(f"genus {twice}/2 is not a nonnegative integer")
    return FiberData(chi, c, factors, twice // 2)


# ---------------------------------------------------------------------------
# mixed braids

@dataclass(frozen=True)
class MixedBraid:
    """Parted mixed braid: ``m`` fixed, ``k`` added, then ``n`` moving strands."""

    m: int
    k: int
    n: int
    word: BraidWord
    parted: bool = True

    def __post_init__(self):
        if min(self.m, self.k, self.n) < 0:
            raise IndexOutOfRange("strand counts must be nonnegative")
        if self.word.n != max(1, self.m + self.k + self.n):
            raise IndexOutOfRange(
                f"word has {self.word.n} strands, expected {self.m + self.k + self.n}"
            )

    @property
    def block(self) -> int:
        """Number of fixed plus added strands."""
        return self.m + self.k

    def to_json(self) -> dict:
        return {"m": self.m, "k": self.k, "n": self.n, "word": str(self.word),
                "parted": self.parted}

    @classmethod
    def from_json(cls, data: dict | str) -> "MixedBraid":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad mixed braid JSON: {exc}") from None
        try:
            m, k, n = int(data["m"]), int(data.get("k", 0)), int(data["n"])
            word = parse_braid(str(data.get("word", "")), max(1, m + k + n))
            return cls(m, k, n, word, bool(data.get("parted", True)))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad mixed braid data: {exc}") from None


def _check_parted(mb: MixedBraid) -> ClosureSummary:
    if not mb.parted:
        raise NotParted("mixed braid is not marked as parted")
    perm = mb.word.final_positions()
    p = mb.block
    if sorted(perm[:p]) != list(range(p)):
        raise NotParted("closure mixes fixed and moving strands")
    cs = closure_summary(mb.word)
    moving = {cs.component_of(s) for s in range(p, p + mb.n)}
    if len(moving) != 1:
        raise MovingPartNotKnot(f"moving strands close to {len(moving)} components")
    return cs


def total_intersection(mb: MixedBraid) -> int:
    """Sum of ``lk(K, C)`` over the closure components ``C`` of the fixed and
    added strands, where ``K`` is the closed moving part."""
    cs = _check_parted(mb)
    p = mb.block
    kc = cs.component_of(p)
    return sum(cs.lk[kc][c] for c in {cs.component_of(s) for s in range(p)})


def split_combed(mb: MixedBraid) -> tuple[BraidWord, list[int]]:
    """Split the word into its leading fixed-block braid and the remainder.

    The remainder may not contain a crossing between two fixed-block strands.
    """
    p = mb.block
    letters = mb.word.letters
    cut = 0
    while cut < len(letters) and abs(letters[cut]) < p:
        cut += 1
    rest = list(letters[cut:])
    at = list(range(mb.word.n))
    for x in letters[:cut]:
        i = abs(x) - 1
        at[i], at[i + 1] = at[i + 1], at[i]
    for x in rest:
        i = abs(x) - 1
        if at[i] < p and at[i + 1] < p:
            raise NotParted("fixed strands cross each other after the moving part starts")
        at[i], at[i + 1] = at[i + 1], at[i]
    return BraidWord(max(1, p), tuple(letters[:cut])), rest


def fiber_stabilize(mb: MixedBraid) -> MixedBraid:
    """Make the fixed part fibered and the moving knot null-homologous
    against the fiber.

    The leading fixed-block braid is homogenized.  The new strands ride just
    to the right of the rightmost fixed-block strand, with moving strands
    passing over them; finally ``2|T|`` letters ``σ_r^{-sign T}`` are
    appended at the boundary ``r`` between the rightmost added strand and
    the leftmost moving strand, where ``T`` is the total intersection.
    """
    _check_parted(mb)
    p = mb.block
    fixed, rest = split_combed(mb)
    if p == 0:
        return mb
    st = stallings_homogenize(fixed)
    k = st.k
    letters = list(st.result.letters)
    # track strands of the original word; positions of the new word are the
    # old ones shifted by k to the right of the rightmost fixed-block strand
    at = list(range(mb.word.n))
    for x in fixed.letters:
        i = abs(x) - 1
        at[i], at[i + 1] = at[i + 1], at[i]
    for x in rest:
        i = abs(x) - 1
        e = _sgn(x)
        r = max(pos for pos, s in enumerate(at) if s < p)  # rightmost fixed
        if i == r:
            # the moving strand at r+1 first passes left over the bundle
            letters += [-g for g in range(r + k + 1, r + 1, -1)]
            letters.append(e * (r + 1))
        elif i + 1 == r:
            # the moving strand at r-1 passes the fixed strand, then the bundle
            letters.append(e * r)
            letters += [g for g in range(r + 1, r + k + 1)]
        else:
            letters.append(e * (i + 1 + (k if i > r else 0)))
        at[i], at[i + 1] = at[i + 1], at[i]
    word = BraidWord(mb.word.n + k, tuple(letters))
    out = MixedBraid(mb.m, mb.k + k, mb.n, word, True)
    total = total_intersection(out)
    if total:
        twist = -_sgn(total) * (p + k)
        word = BraidWord(word.n, word.letters + (twist,) * (2 * abs(total)))
        out = MixedBraid(mb.m, mb.k + k, mb.n, word, True)
    return out


def random_braid(rng: random.Random, max_strands: int = 6, max_len: int = 20) -> BraidWord:
    n = rng.randint(1, max_strands)
    if n == 1:
        return BraidWord(1, ())
    length = rng.randint(0, max_len)
    return BraidWord(n, tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)))


def random_mixed_braid(rng: random.Random, max_fixed: int = 4, max_moving: int = 2,
                       max_len: int = 12) -> MixedBraid:
    """Combed parted mixed braid: a fixed braid followed by loops of the
    moving strands around fixed strands (conjugated generators), closed so
    that the moving strands form one knot."""
    m = rng.randint(1, max_fixed)
    n = rng.randint(1, max_moving)
    total = m + n
    fixed = random_braid_on(rng, m, max_len)
    loops: list[int] = []
    for _ in range(rng.randint(0, 4)):
        # the first moving strand reaches over to fixed strand j and links it
        j = rng.randint(1, m)
        e = rng.choice((1, -1))
        approach = [-g for g in range(m, j, -1)]  # moving strand slides left over
        loop = approach + [e * j, e * j] + [-x for x in reversed(approach)]
        loops += loop
    # the moving strands form one cycle
    cycle = [rng.choice((1, -1)) * g for g in range(m + 1, total)]
    word = BraidWord(total, tuple(fixed.letters) + tuple(loops) + tuple(cycle))
    return MixedBraid(m, 0, n, word, True)


def random_braid_on(rng: random.Random, n: int, max_len: int) -> BraidWord:
    if n == 1:
        return BraidWord(1, ())
    length = rng.randint(0, max_len)
    return BraidWord(n, tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)))
