"""Milnor's triple linking number from longitudes, braid closures and
surface-intersection words, plus the homology-level index identities for
trefoil-sum fibers.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .braid import BraidWord, closure_summary, linking_gcd
from .errors import (
    BadComponentCount,
    DimensionMismatch,
    IndexOutOfRange,
    LetterClash,
    NotFramed,
    NotPure,
    NotUnimodular,
    ParseError,
)
from .poly import magnus_expand
from .seifert import (
    det_exact,
    dot,
    intersection_form,
    inverse_unimodular,
    matmul,
    matsub,
    matvec,
    transpose,
    trefoil_sum_seifert,
)

FreeWord = tuple  # tuple of (generator, ±1), generators numbered from 1


# ---------------------------------------------------------------------------
# residues

@dataclass(frozen=True)
class Residue:
    """Integer modulo ``modulus``; modulus 0 means an ordinary integer."""

    value: int
    modulus: int = 0

    def __post_init__(self):
        if self.modulus < 0:
            raise ValueError("modulus must be nonnegative")
        if self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    def __str__(self):
        return f"{self.value} (mod {self.modulus})"


# ---------------------------------------------------------------------------
# free words

def free_reduce(w: Sequence[tuple[int, int]]) -> FreeWord:
    out: list[tuple[int, int]] = []
    for g, e in w:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def free_inverse(w: Sequence[tuple[int, int]]) -> FreeWord:
    return tuple((g, -e) for g, e in reversed(w))


def exponent_sum(w: Sequence[tuple[int, int]], gen: int) -> int:
    return sum(e for g, e in w if g == gen)


_LETTER = re.compile(r"^[mxMX]?(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str) -> FreeWord:
    """Parse ``m1 m2 m1^-1 m2^-1`` (``x`` prefix also accepted)."""
    out = []
    for tok in text.split():
        match = _LETTER.match(tok)
        if not match:
            raise ParseError(f"bad word letter {tok!r}")
        g = int(match.group(1))
        p = int(match.group(2) or 1)
        if g < 1:
            raise ParseError("generators are numbered from 1")
        out += [(g, 1 if p > 0 else -1)] * abs(p)
    return tuple(out)


def format_word(w: Sequence[tuple[int, int]], prefix: str = "m") -> str:
    return " ".join(f"{prefix}{g}" if e > 0 else f"{prefix}{g}^-1" for g, e in w)


_MM_LETTER = re.compile(r"^(\d+)([+-])$")


def parse_mm_word(text: str) -> FreeWord:
    """Parse surface-intersection words such as ``1+ 2- 3+``."""
    out = []
    for tok in text.split():
        match = _MM_LETTER.match(tok)
        if not match:
            raise ParseError(f"bad intersection letter {tok!r}")
        out.append((int(match.group(1)), 1 if match.group(2) == "+" else -1))
    return tuple(out)


def format_mm_word(w: Sequence[tuple[int, int]]) -> str:
    return " ".join(f"{g}{'+' if e > 0 else '-'}" for g, e in w)


# ---------------------------------------------------------------------------
# Artin representation and longitudes

def _artin_letter(i: int, e: int, w: FreeWord) -> FreeWord:
    """Image of ``w`` under ``σ_i^e``."""
    if e > 0:
        img = {i: ((i, 1), (i + 1, 1), (i, -1)), i + 1: ((i, 1),)}
    else:
        img = {i: ((i + 1, 1),), i + 1: ((i + 1, -1), (i, 1), (i + 1, 1))}
    out: list[tuple[int, int]] = []
    for g, s in w:
        if g in img:
            out += img[g] if s > 0 else free_inverse(img[g])
        else:
            out.append((g, s))
    return free_reduce(out)


def artin_apply(beta: BraidWord, w: Sequence[tuple[int, int]]) -> FreeWord:
    """Apply the braid automorphism letter by letter, left to right."""
    for g, _ in w:
        if not 1 <= g <= beta.n:
            raise IndexOutOfRange(f"generator x{g} out of range for {beta.n} strands")
    out = free_reduce(w)
    for x in beta.letters:
        out = _artin_letter(abs(x), 1 if x > 0 else -1, out)
    return out


@dataclass(frozen=True)
class LongitudeSet:
    words: tuple[FreeWord, ...]

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(tuple(w) for w in self.words))
        k = len(self.words)
        for i, w in enumerate(self.words, start=1):
            for g, _ in w:
                if not 1 <= g <= k:
                    raise IndexOutOfRange(f"m{g} out of range for {k} components")
            if exponent_sum(w, i):
                raise NotFramed(f"longitude {i} has nonzero exponent sum in m{i}")

    @property
    def k(self) -> int:
        return len(self.words)


def longitudes_from_pure_braid(beta: BraidWord) -> LongitudeSet:
    """Framed longitudes of the closure of a pure braid.

    Strand ``i`` maps ``x_i`` to ``u x_i u^{-1}``; the longitude is
    ``u x_i^{-e}`` with ``e`` the exponent sum of ``x_i`` in ``u``.
    """
    if any(p != s for s, p in enumerate(beta.final_positions())):
        raise NotPure("closure permutation is not the identity")
    words = []
    for i in range(1, beta.n + 1):
        img = artin_apply(beta, ((i, 1),))
        half = (len(img) - 1) // 2
        u = img[:half]
        if len(img) % 2 == 0 or img[half] != (i, 1) or img[half + 1:] != free_inverse(u):
            raise NotPure(f"image of x{i} is not a conjugate of x{i}")
        e = exponent_sum(u, i)
        words.append(free_reduce(u + ((i, -1 if e > 0 else 1),) * abs(e)))
    return LongitudeSet(tuple(words))


def mu123_from_longitudes(longitudes: LongitudeSet, delta: int = 0) -> Residue:
    """Coefficient of ``h1 h2`` in the Magnus expansion of the third longitude."""
    if longitudes.k != 3:
        raise BadComponentCount(f"need 3 longitudes, got {longitudes.k}")
    return Residue(magnus_expand(longitudes.words[2], 2).coeff((1, 2)), abs(delta))


def mu123_of_closure(beta: BraidWord) -> Residue:
    """Triple linking number of the closure of a 3-strand pure braid, modulo
    the gcd of its pairwise linking numbers."""
    if beta.n != 3:
        raise BadComponentCount(f"need a 3-strand braid, got {beta.n} strands")
    longitudes = longitudes_from_pure_braid(beta)
    return mu123_from_longitudes(longitudes, linking_gcd(closure_summary(beta)))


# ---------------------------------------------------------------------------
# surface-intersection words

def _e(w: FreeWord, i: int, j: int) -> int:
    return magnus_expand(w, 2).coeff((i, j))


def m123_from_words(w1: FreeWord, w2: FreeWord, w3: FreeWord) -> int:
    """``e123 + e231 + e312`` where ``e_ijk`` is the ``h_i h_j`` coefficient of
    the Magnus expansion of ``w_k``."""
    for i, w in enumerate((w1, w2, w3), start=1):
        for g, _ in w:
            if g == i:
                raise LetterClash(f"w{i} contains the letter {i}")
            if not 1 <= g <= 3:
                raise IndexOutOfRange(f"letter {g} is not a component of a 3-component link")
    return _e(w3, 1, 2) + _e(w1, 2, 3) + _e(w2, 3, 1)


@dataclass(frozen=True)
class MMData:
    w1: FreeWord
    w2: FreeWord
    w3: FreeWord
    t123: int
    lk: tuple[int, int, int]  # lk12, lk13, lk23

    @classmethod
    def from_json(cls, data: dict | str) -> "MMData":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad JSON: {exc}") from None
        try:
            lk = tuple(int(x) for x in data.get("lk", (0, 0, 0)))
            if len(lk) != 3:
                raise ParseError("lk must list lk12, lk13, lk23")
            return cls(
                parse_mm_word(str(data.get("w1", ""))),
                parse_mm_word(str(data.get("w2", ""))),
                parse_mm_word(str(data.get("w3", ""))),
                int(data.get("t123", 0)),
                lk,
            )
        except (TypeError, ValueError, AttributeError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad intersection data: {exc}") from None

    def to_json(self) -> dict:
        return {
            "w1": format_mm_word(self.w1), "w2": format_mm_word(self.w2),
            "w3": format_mm_word(self.w3), "t123": self.t123, "lk": list(self.lk),
        }


def mellor_melvin(d: MMData) -> Residue:
    """``m123 - t123`` modulo the gcd of the pairwise linking numbers."""
    delta = 0
    for x in d.lk:
        delta = gcd(delta, x)
    return Residue(m123_from_words(d.w1, d.w2, d.w3) - d.t123, delta)


# ---------------------------------------------------------------------------
# homology on a trefoil-sum fiber

def _vec(v: Sequence[int], g: int, name: str) -> list[int]:
    if len(v) != 2 * g:
        raise DimensionMismatch(f"{name} has length {len(v)}, expected {2 * g}")
    return [int(x) for x in v]


def t123_from_homology(k2: Sequence[int], k3: Sequence[int], g: int) -> int:
    """Intersection number ``k2^T F k3`` on the genus-``g`` fiber."""
    k2, k3 = _vec(k2, g, "k2"), _vec(k3, g, "k3")
    return dot(k2, matvec(intersection_form(g), k3)) if g else 0


def derivative_class(k_vec: Sequence[int], g: int) -> list[int]:
    """``F^{-1} K = -F K``: the derivative-curve class dual to ``K``."""
    k_vec = _vec(k_vec, g, "K")
    return [-x for x in matvec(intersection_form(g), k_vec)] if g else []


@dataclass(frozen=True)
class Thm41Report:
    index: int
    t123: int
    mu123: Residue
    passed: bool


def thm41_check(
    k2: Sequence[int], k3: Sequence[int], g: int, lk23: int = 0,
    a_j: Sequence[Sequence[int]] | None = None,
) -> Thm41Report:
    """Compare ``k2^T F k3`` with ``(B A_J k2)^T F (B A_J k3)``,
    ``B = (A_J - A_J^T)^{-1}``.

    ``A_J`` defaults to the trefoil-sum Seifert matrix, for which the two
    agree; other unimodular matrices may make them differ.  The predicted
    triple linking number is ``-index`` modulo ``lk23``.
    """
    k2, k3 = _vec(k2, g, "k2"), _vec(k3, g, "k3")
    index = t123_from_homology(k2, k3, g)
    if g == 0:
        return Thm41Report(0, 0, Residue(0, abs(lk23)), True)
    a = [list(r) for r in (a_j if a_j is not None else trefoil_sum_seifert(g))]
    if len(a) != 2 * g or any(len(r) != 2 * g for r in a):
        raise DimensionMismatch(f"A_J must be {2 * g}x{2 * g}")
    if abs(det_exact(a)) != 1:
        raise NotUnimodular("A_J does not have determinant ±1")
    f_a = matsub(a, transpose(a))
    b = inverse_unimodular(f_a)
    u = matvec(matmul(b, a), k2)
    v = matvec(matmul(b, a), k3)
    chain = dot(u, matvec(f_a, v))
    return Thm41Report(index, chain, Residue(-index, abs(lk23)), index == chain)
