"""Seifert-matrix algebra: determinants, Alexander polynomials and the
two-variable Alexander polynomial of a boundary link with block Seifert
matrix ``A = [[A_J, B], [B^T, A_K]]``.

Integer matrices are plain lists of rows.  Determinants accept integer or
:class:`~virtlink.poly.LaurentPoly` entries and are always exact.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DimensionMismatch,
    NonSquare,
    NotUnimodular,
    OddDimension,
)
from .poly import T, LaurentPoly, specialize

IntMatrix = list  # list[list[int]]


# ---------------------------------------------------------------------------
# basic matrix helpers

def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise DimensionMismatch("ragged matrix")
    return rows, cols


def zeros(r: int, c: int) -> IntMatrix:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m):
    r, c = shape(m)
    return [[m[i][j] for i in range(r)] for j in range(c)]


def matmul(a, b):
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise DimensionMismatch(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    return [[sum(a[i][k] * b[k][j] for k in range(ca)) for j in range(cb)] for i in range(ra)]


def matadd(a, b, scale: int = 1):
    if shape(a) != shape(b):
        raise DimensionMismatch(f"shapes {shape(a)} and {shape(b)} differ")
    return [[x + scale * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matsub(a, b):
    return matadd(a, b, -1)


def matvec(a, v):
    r, c = shape(a)
    if c != len(v):
        raise DimensionMismatch(f"cannot apply {r}x{c} matrix to vector of length {len(v)}")
    return [sum(a[i][k] * v[k] for k in range(c)) for i in range(r)]


def dot(u, v):
    if len(u) != len(v):
        raise DimensionMismatch("vector lengths differ")
    return sum(x * y for x, y in zip(u, v))


def block_diag(*blocks):
    n = sum(shape(b)[0] for b in blocks)
    m = sum(shape(b)[1] for b in blocks)
    out = zeros(n, m)
    r0 = c0 = 0
    for b in blocks:
        br, bc = shape(b)
        for i in range(br):
            for j in range(bc):
                out[r0 + i][c0 + j] = b[i][j]
        r0 += br
        c0 += bc
    return out


def _square(m) -> int:
    r, c = shape(m)
    if r != c:
        raise NonSquare(f"matrix is {r}x{c}")
    return r


# ---------------------------------------------------------------------------
# determinants

def det_cofactor(m):
    """Laplace expansion along the first row (exponential; for small n)."""
    n = _square(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _exact_div(a, b):
    if isinstance(a, LaurentPoly):
        return a.divexact(b)
    if isinstance(b, LaurentPoly):
        return LaurentPoly.const(a, b.nvars).divexact(b)
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("Bareiss division was not exact")
    return q


def _is_zero(x) -> bool:
    return x == 0


def det_bareiss(m):
    """Fraction-free Gaussian elimination with exact division."""
    n = _square(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if _is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0 * a[0][0]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = _exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
            a[i][k] = 0
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def det_exact(m):
    """Exact determinant; cofactor expansion up to 4x4, Bareiss beyond."""
    n = _square(m)
    if n <= 4:
        return det_cofactor(m)
    return det_bareiss(m)


def inverse_unimodular(m) -> IntMatrix:
    """Integer inverse of a matrix with determinant ±1."""
    n = _square(m)
    if n == 0:
        return []
    if abs(det_exact(m)) != 1:
        raise NotUnimodular("matrix does not have determinant ±1")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    inv = [[x for x in row[n:]] for row in a]
    if any(x.denominator != 1 for row in inv for x in row):
        raise NotUnimodular("inverse is not integral")
    return [[int(x) for x in row] for row in inv]


# ---------------------------------------------------------------------------
# Alexander polynomials

def _poly_matrix(a, b, var: LaurentPoly):
    """Entries ``var * a_ij - b_ij``."""
    return [[var * x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def alexander_classical(v: IntMatrix) -> LaurentPoly:
    """``det(t V - V^T)``."""
    n = _square(v)
    if n % 2:
        raise OddDimension(f"Seifert matrix has odd dimension {n}")
    return LaurentPoly.const(1) * det_exact(_poly_matrix(v, transpose(v), T))


@dataclass(frozen=True)
class ACSeifertPair:
    v_minus: tuple
    v_plus: tuple

    def __init__(self, v_minus, v_plus):
        object.__setattr__(self, "v_minus", tuple(tuple(r) for r in v_minus))
        object.__setattr__(self, "v_plus", tuple(tuple(r) for r in v_plus))
        if len(self.v_minus) != len(self.v_plus):
            raise DimensionMismatch("V- and V+ differ in size")
        _square(self.v_minus)
        _square(self.v_plus)

    @property
    def dim(self) -> int:
        return len(self.v_minus)


def alexander_ac(p: ACSeifertPair) -> LaurentPoly:
    """``det(t V^- - V^+)``."""
    vm = [list(r) for r in p.v_minus]
    vp = [list(r) for r in p.v_plus]
    return LaurentPoly.const(1) * det_exact(_poly_matrix(vm, vp, T))


@dataclass(frozen=True)
class BlockSeifert:
    """Block Seifert matrix of a two-component boundary link ``J ⊔ K``."""

    a_j: tuple
    a_k: tuple
    b: tuple

    def __init__(self, a_j, a_k, b):
        a_j = tuple(tuple(int(x) for x in r) for r in a_j)
        a_k = tuple(tuple(int(x) for x in r) for r in a_k)
        b = tuple(tuple(int(x) for x in r) for r in b)
        nj = _square(a_j)
        nk = _square(a_k)
        if nj % 2 or nk % 2:
            raise OddDimension("diagonal blocks must be even-dimensional")
        br, bc = shape(b)
        if nj == 0 or nk == 0:
            if any(b):
                raise DimensionMismatch("B must be empty when a diagonal block is")
        elif (br, bc) != (nj, nk):
            raise DimensionMismatch(f"B is {br}x{bc}, expected {nj}x{nk}")
        object.__setattr__(self, "a_j", a_j)
        object.__setattr__(self, "a_k", a_k)
        object.__setattr__(self, "b", b if nj and nk else ())

    @property
    def g1(self) -> int:
        return len(self.a_j) // 2

    @property
    def g2(self) -> int:
        return len(self.a_k) // 2

    def b_matrix(self) -> IntMatrix:
        if not self.b:
            return zeros(len(self.a_j), len(self.a_k))
        return [list(r) for r in self.b]

    def full(self) -> IntMatrix:
        nj, nk = len(self.a_j), len(self.a_k)
        b = self.b_matrix()
        bt = transpose(b) if nj else zeros(nk, 0)
        top = [list(self.a_j[i]) + b[i] for i in range(nj)]
        bottom = [bt[i] + list(self.a_k[i]) for i in range(nk)]
        return top + bottom

    def to_json(self) -> dict:
        return {
            "A_J": [list(r) for r in self.a_j],
            "A_K": [list(r) for r in self.a_k],
            "B": [list(r) for r in self.b],
        }


def mvap(bs: BlockSeifert) -> LaurentPoly:
    """``det(A T - A^T)`` with ``T = diag(t1,...,t1, t2,...,t2)``."""
    a = bs.full()
    at = transpose(a) if a else []
    nj = len(bs.a_j)
    t = [LaurentPoly.var(0, 2)] * nj + [LaurentPoly.var(1, 2)] * len(bs.a_k)
    m = [[a[i][j] * t[j] - at[i][j] for j in range(len(a))] for i in range(len(a))]
    return LaurentPoly.const(1, 2) * det_exact(m)


def vpm_from_block(bs: BlockSeifert) -> ACSeifertPair:
    """``V^- = A_K - B^T A_J^{-1} B`` and ``V^+ = A_K^T - B^T A_J^{-1} B``."""
    a_j = [list(r) for r in bs.a_j]
    a_k = [list(r) for r in bs.a_k]
    inv = inverse_unimodular(a_j)
    if not a_k:
        return ACSeifertPair([], [])
    if not a_j:
        return ACSeifertPair(a_k, transpose(a_k))
    b = bs.b_matrix()
    corr = matmul(matmul(transpose(b), inv), b)
    return ACSeifertPair(matsub(a_k, corr), matsub(transpose(a_k), corr))


def lk_sigma(lk: int, l_y: Sequence[int], l_x: Sequence[int], a_j: IntMatrix) -> int:
    """Linking number in the cover: ``lk - l_y^T A_J^{-1} l_x``."""
    n = _square(a_j)
    if len(l_y) != n or len(l_x) != n:
        raise DimensionMismatch(f"vectors must have length {n}")
    inv = inverse_unimodular(a_j)
    return lk - dot(l_y, matvec(inv, l_x)) if n else lk


@dataclass(frozen=True)
class Thm31Report:
    lhs: LaurentPoly
    rhs: LaurentPoly
    sign: int
    passed: bool


def thm31_check(bs: BlockSeifert) -> Thm31Report:
    """Compare ``det(t V^- - V^+)`` with ``det(A_J) t^{2 g_K} ∇(0, t^{-1})`` exactly."""
    a_j = [list(r) for r in bs.a_j]
    sign = det_exact(a_j)
    if abs(sign) != 1:
        raise NotUnimodular("A_J does not have determinant ±1")
    lhs = alexander_ac(vpm_from_block(bs))
    nabla = mvap(bs)
    rhs = sign * LaurentPoly.monomial((2 * bs.g2,)) * specialize(nabla, 0, "t^-1")
    return Thm31Report(lhs, rhs, sign, lhs == rhs)


# ---------------------------------------------------------------------------
# standard matrices

H = [[-1, 1], [0, -1]]


def intersection_form(g: int) -> IntMatrix:
    """Block diagonal of ``g`` copies of ``[[0, 1], [-1, 0]]``."""
    return block_diag(*([[[0, 1], [-1, 0]]] * g)) if g else []


def trefoil_sum_seifert(g: int) -> IntMatrix:
    """Seifert matrix of a connected sum of ``g`` trefoils: ``diag(H, ..., H)``."""
    if g < 1:
        raise ValueError("need at least one trefoil summand")
    return block_diag(*([H] * g))


# ---------------------------------------------------------------------------
# random data

def random_unimodular(n: int, rng: random.Random, ops: int = 20) -> IntMatrix:
    """Product of at most ``ops`` elementary integer matrices (det ±1)."""
    m = identity(n)
    if n < 2:
        return [[rng.choice((1, -1))]] if n == 1 else m
    for _ in range(rng.randint(0, ops)):
        kind = rng.random()
        i, j = rng.sample(range(n), 2)
        if kind < 0.7:
            c = rng.choice((1, -1))
            m[i] = [x + c * y for x, y in zip(m[i], m[j])]
        elif kind < 0.85:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-x for x in m[i]]
    return m


def random_seifert_matrix(g: int, rng: random.Random, bound: int = 2) -> IntMatrix:
    """Random ``V`` with ``V - V^T`` the standard intersection form.

    ``V = S + P`` with ``S`` symmetric and ``P`` block diagonal
    ``[[0, 1], [0, 0]]``, so ``V`` is a Seifert matrix of some genus-``g``
    surface with one boundary component.
    """
    n = 2 * g
    v = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v[i][j] = v[j][i] = rng.randint(-bound, bound)
    for b in range(g):
        v[2 * b][2 * b + 1] += 1
    return v


def random_block_seifert(
    rng: random.Random, max_g1: int = 2, max_g2: int = 2, bound: int = 3, ops: int = 20,
    genuine: bool = False,
) -> BlockSeifert:
    """Random block with ``A_J`` unimodular, other entries in ``[-bound, bound]``.

    ``A_J = P · diag(H, ...) · Q`` for products of elementary matrices P, Q,
    so ``det(A_J) = ±1`` without rejection sampling.  With ``genuine`` both
    diagonal blocks are honest Seifert matrices (``A - A^T`` unimodular):
    ``A_J = M^T · diag(H, ...) · M`` and ``A_K`` comes from
    :func:`random_seifert_matrix`.
    """
    g1 = rng.randint(1, max_g1)
    g2 = rng.randint(0, max_g2)
    n1, n2 = 2 * g1, 2 * g2
    p = random_unimodular(n1, rng, ops // 2)
    q = transpose(p) if genuine else random_unimodular(n1, rng, ops // 2)
    a_j = matmul(matmul(p, trefoil_sum_seifert(g1)), q)
    if genuine:
        a_k = random_seifert_matrix(g2, rng, max(1, bound - 1))
    else:
        a_k = [[rng.randint(-bound, bound) for _ in range(n2)] for _ in range(n2)]
    b = [[rng.randint(-bound, bound) for _ in range(n2)] for _ in range(n1)] if n2 else []
    return BlockSeifert(a_j, a_k, b)
