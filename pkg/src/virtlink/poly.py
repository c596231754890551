"""Exact Laurent polynomials over the integers and truncated Magnus series.

A :class:`LaurentPoly` stores a map from exponent tuples to nonzero Python
ints, so coefficients never overflow.  One-variable polynomials are written in
``t`` and two-variable ones in ``t1, t2`` unless other names are supplied.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    NegativeExponentAtZero,
    NonIntegralSubstitution,
    NotDivisible,
    ParseError,
    WordTooLong,
)

Exponent = tuple


def _default_names(nvars: int) -> tuple[str, ...]:
    if nvars == 1:
        return ("t",)
    return tuple(f"t{i + 1}" for i in range(nvars))


class LaurentPoly:
    """Integer Laurent polynomial in ``nvars`` commuting variables.

    Values are immutable.  Integers mix freely with polynomials in ``+``,
    ``-``, ``*`` and ``==``.
    """

    __slots__ = ("nvars", "_c", "_hash")

    def __init__(self, coeffs: Mapping | None = None, nvars: int = 1):
        self.nvars = nvars
        c: dict[tuple, int] = {}
        for e, v in (coeffs or {}).items():
            if isinstance(e, int):
                e = (e,)
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have {nvars} entries")
            v = int(v)
            if v:
                c[e] = c.get(e, 0) + v
                if not c[e]:
                    del c[e]
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict, nvars: int) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._c = c
        p._hash = None
        return p

    @classmethod
    def const(cls, value: int, nvars: int = 1) -> "LaurentPoly":
        return cls({(0,) * nvars: value}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int] | int, coeff: int = 1) -> "LaurentPoly":
        if isinstance(exps, int):
            exps = (exps,)
        return cls({tuple(exps): coeff}, len(exps))

    @classmethod
    def var(cls, index: int, nvars: int) -> "LaurentPoly":
        e = [0] * nvars
        e[index] = 1
        return cls({tuple(e): 1}, nvars)

    # -- inspection -------------------------------------------------------
    @property
    def coeffs(self) -> dict[tuple, int]:
        return dict(self._c)

    def terms(self) -> list[tuple[tuple, int]]:
        """Terms sorted with the last variable most significant."""
        return sorted(self._c.items(), key=lambda kv: kv[0][::-1])

    def coeff(self, exps: Sequence[int] | int) -> int:
        if isinstance(exps, int):
            exps = (exps,)
        return self._c.get(tuple(exps), 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_exponents(self) -> tuple[int, ...]:
        if not self._c:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self._c) for i in range(self.nvars))

    def max_exponents(self) -> tuple[int, ...]:
        if not self._c:
            return (0,) * self.nvars
        return tuple(max(e[i] for e in self._c) for i in range(self.nvars))

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def constant_value(self) -> int | None:
        """The integer this polynomial equals, or None if it is not constant."""
        if not self._c:
            return 0
        if len(self._c) == 1 and all(x == 0 for x in next(iter(self._c))):
            return next(iter(self._c.values()))
        return None

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials have different variable counts")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: dict[tuple, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._raw({e: v for e, v in c.items() if v}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise NotDivisible("only monomials are invertible")
            (e, v), = self._c.items()
            if v not in (1, -1):
                raise NotDivisible("only unit monomials are invertible")
            return LaurentPoly._raw({tuple(x * k for x in e): v ** -k}, self.nvars)
        result = LaurentPoly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with exponent vector ``exps``."""
        exps = tuple(exps)
        return LaurentPoly._raw(
            {tuple(a + b for a, b in zip(e, exps)): v for e, v in self._c.items()},
            self.nvars,
        )

    def divexact(self, other) -> "LaurentPoly":
        """Quotient ``self / other``; raises NotDivisible unless it is exact.

        Long division on lex-leading terms.  Every quotient exponent must sit
        inside the box ``[min(self) - min(other), max(self) - max(other)]``,
        which bounds the loop when the division is not exact.
        """
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly._raw({}, self.nvars)
        lo = [a - b for a, b in zip(self.min_exponents(), other.min_exponents())]
        hi = [a - b for a, b in zip(self.max_exponents(), other.max_exponents())]
        lead_b = max(other._c)
        cb = other._c[lead_b]
        r = dict(self._c)
        q: dict[tuple, int] = {}
        while r:
            lead_r = max(r)
            e = tuple(a - b for a, b in zip(lead_r, lead_b))
            if any(x < l or x > h for x, l, h in zip(e, lo, hi)):
                raise NotDivisible(f"{self} is not divisible by {other}")
            c, rem = divmod(r[lead_r], cb)
            if rem:
                raise NotDivisible(f"{self} is not divisible by {other}")
            q[e] = c
            for eb, vb in other._c.items():
                k = tuple(a + b for a, b in zip(e, eb))
                s = r.get(k, 0) - c * vb
                if s:
                    r[k] = s
                else:
                    r.pop(k, None)
        return LaurentPoly._raw(q, self.nvars)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._c.items())))
        return self._hash

    # -- evaluation -------------------------------------------------------
    def evaluate(self, values: Sequence[int]) -> int:
        """Value at integer points; only units may carry negative exponents."""
        total = 0
        for e, v in self._c.items():
            term = v
            for x, k in zip(values, e):
                if k < 0:
                    if x == 0:
                        raise NegativeExponentAtZero("0 raised to a negative power")
                    if x not in (1, -1):
                        raise NonIntegralSubstitution(f"{x}**{k} is not an integer")
                    term *= x ** (-k)
                else:
                    term *= x ** k
            total += term
        return total

    # -- text -------------------------------------------------------------
    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = tuple(names) if names else _default_names(self.nvars)
        if not self._c:
            return "0"
        out = []
        for i, (e, v) in enumerate(self.terms()):
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            mag = abs(v)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if i == 0:
                out.append(("-" if v < 0 else "") + body)
            else:
                out.append((" - " if v < 0 else " + ") + body)
        return "".join(out)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"LaurentPoly({self.to_str()!r}, nvars={self.nvars})"


Poly = Union[LaurentPoly, int]

T = LaurentPoly.var(0, 1)
T1 = LaurentPoly.var(0, 2)
T2 = LaurentPoly.var(1, 2)


# ---------------------------------------------------------------------------
# unit normalization

@dataclass(frozen=True)
class UnitNormalForm:
    """``original == sign * t^shift * normal``."""

    normal: LaurentPoly
    sign: int
    shift: tuple[int, ...]

    @property
    def unit(self) -> LaurentPoly:
        return LaurentPoly.monomial(self.shift, self.sign)


def normalize(p: LaurentPoly) -> UnitNormalForm:
    """Canonical representative of ``p`` modulo units ``±t^k``.

    The minimal exponent of every variable is moved to 0 and the coefficient
    of the lexicographically least monomial is made positive.
    """
    if p.is_zero():
        return UnitNormalForm(p, 1, (0,) * p.nvars)
    shift = p.min_exponents()
    q = p.shift(tuple(-x for x in shift))
    lead = q.coeff(min(q.coeffs))
    sign = 1 if lead > 0 else -1
    if sign < 0:
        q = -q
    return UnitNormalForm(q, sign, shift)


def eq_up_to_units(p: LaurentPoly, q: LaurentPoly) -> bool:
    if p.nvars != q.nvars:
        raise ValueError("polynomials have different variable counts")
    return normalize(p).normal == normalize(q).normal


# ---------------------------------------------------------------------------
# specialization

Substitution = Union[int, str]
_T_NAMES = {"t"}
_TINV_NAMES = {"t^-1", "1/t", "t**-1"}


def specialize(p: LaurentPoly, *subs: Substitution) -> LaurentPoly:
    """Substitute each variable of ``p`` by an integer, ``"t"`` or ``"t^-1"``.

    The result is a one-variable Laurent polynomial in ``t``.
    """
    if len(subs) != p.nvars:
        raise ValueError(f"expected {p.nvars} substitutions, got {len(subs)}")
    kinds = []
    for s in subs:
        if isinstance(s, str):
            s = s.replace(" ", "")
            if s in _T_NAMES:
                kinds.append(("t", 1))
            elif s in _TINV_NAMES:
                kinds.append(("t", -1))
            else:
                raise ValueError(f"unknown substitution {s!r}")
        else:
            kinds.append(("c", int(s)))
    out: dict[tuple, int] = {}
    for e, v in p.coeffs.items():
        deg = 0
        term = v
        for (kind, x), k in zip(kinds, e):
            if kind == "t":
                deg += x * k
            elif k < 0:
                if x == 0:
                    raise NegativeExponentAtZero(
                        "cannot set a variable with negative exponents to 0"
                    )
                if x not in (1, -1):
                    raise NonIntegralSubstitution(f"{x}**{k} is not an integer")
                term *= x ** (-k)
            else:
                term *= x ** k
        if term:
            out[(deg,)] = out.get((deg,), 0) + term
    return LaurentPoly(out, 1)


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\^|\*\*)|([+\-*()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, toks = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, hat, op = m.groups()
        if num is not None:
            toks.append(("num", num))
        elif name is not None:
            toks.append(("name", name))
        elif hat is not None:
            toks.append(("^", hat))
        else:
            toks.append(("op", op))
        pos = m.end()
    return toks


def parse_poly(text: str, names: Sequence[str] | None = None) -> LaurentPoly:
    """Parse the output grammar of :meth:`LaurentPoly.to_str`.

    ``names`` fixes the variables; otherwise ``t1``/``t2`` means two variables
    and any single other name means one.
    """
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial")
    if names is None:
        found = {v for k, v in toks if k == "name"}
        if found and found <= {"t1", "t2"}:
            names = ("t1", "t2")
        elif len(found) <= 1:
            names = (found.pop() if found else "t",)
        else:
            raise ParseError(f"cannot infer variables from {sorted(found)}")
    names = tuple(names)
    index = {n: i for i, n in enumerate(names)}
    nv = len(names)
    coeffs: dict[tuple, int] = {}
    i = 0

    def peek():
        return toks[i] if i < len(toks) else (None, None)

    first = True
    while i < len(toks):
        sign = 1
        kind, val = peek()
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected + or - before term, got {val!r}")
        first = False
        coef = 1
        exps = [0] * nv
        seen_factor = False
        while True:
            kind, val = peek()
            if kind == "num" and not seen_factor:
                coef = int(val)
                i += 1
            elif kind == "name":
                if val not in index:
                    raise ParseError(f"unknown variable {val!r}")
                i += 1
                k = 1
                if peek()[0] == "^":
                    i += 1
                    neg = False
                    paren = False
                    if peek() == ("op", "("):
                        paren = True
                        i += 1
                    if peek() == ("op", "-"):
                        neg = True
                        i += 1
                    kind2, val2 = peek()
                    if kind2 != "num":
                        raise ParseError("exponent must be an integer")
                    i += 1
                    if paren:
                        if peek() != ("op", ")"):
                            raise ParseError("unbalanced parenthesis in exponent")
                        i += 1
                    k = -int(val2) if neg else int(val2)
                exps[index[val]] += k
            else:
                raise ParseError(f"unexpected token {val!r}")
            seen_factor = True
            if peek() == ("op", "*"):
                i += 1
                continue
            break
        e = tuple(exps)
        coeffs[e] = coeffs.get(e, 0) + sign * coef
    return LaurentPoly(coeffs, nv)


# ---------------------------------------------------------------------------
# noncommutative truncated series

Word = tuple  # tuple of symbol indices


class NoncommSeries:
    """Integer power series in noncommuting ``h_1 ... h_k`` truncated at degree d."""

    __slots__ = ("degree", "_c")

    def __init__(self, coeffs: Mapping[Sequence[int], int] | None = None, degree: int = 2):
        if degree < 1:
            raise ValueError("truncation degree must be at least 1")
        self.degree = degree
        c: dict[tuple, int] = {}
        for w, v in (coeffs or {}).items():
            w = tuple(w)
            if len(w) <= degree and v:
                c[w] = c.get(w, 0) + v
                if not c[w]:
                    del c[w]
        self._c = c

    @classmethod
    def one(cls, degree: int = 2) -> "NoncommSeries":
        return cls({(): 1}, degree)

    @property
    def coeffs(self) -> dict[tuple, int]:
        return dict(self._c)

    def coeff(self, word: Sequence[int]) -> int:
        word = tuple(word)
        if len(word) > self.degree:
            raise WordTooLong(
                f"word of length {len(word)} exceeds truncation degree {self.degree}"
            )
        return self._c.get(word, 0)

    def _check(self, other: "NoncommSeries"):
        if not isinstance(other, NoncommSeries):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError("series have different truncation degrees")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for w, v in other._c.items():
            c[w] = c.get(w, 0) + v
        return NoncommSeries(c, self.degree)

    def __neg__(self):
        return NoncommSeries({w: -v for w, v in self._c.items()}, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        d = self.degree
        c: dict[tuple, int] = {}
        for w1, v1 in self._c.items():
            for w2, v2 in other._c.items():
                if len(w1) + len(w2) <= d:
                    w = w1 + w2
                    c[w] = c.get(w, 0) + v1 * v2
        return NoncommSeries(c, d)

    def __eq__(self, other):
        if not isinstance(other, NoncommSeries):
            return NotImplemented
        return self.degree == other.degree and self._c == other._c

    def __hash__(self):
        return hash((self.degree, frozenset(self._c.items())))

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for w, v in sorted(self._c.items(), key=lambda kv: (len(kv[0]), kv[0])):
            mono = "*".join(f"h{s}" for s in w)
            mag = abs(v)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
            if not parts:
                parts.append(("-" if v < 0 else "") + body)
            else:
                parts.append((" - " if v < 0 else " + ") + body)
        return "".join(parts)

    __repr__ = __str__


def _letter_series(gen: int, exp: int, degree: int) -> NoncommSeries:
    # (1 + h)^exp, using the generalized binomial coefficient for exp < 0
    c = {}
    for k in range(degree + 1):
        if exp >= 0:
            v = comb(exp, k)
        else:
            v = (-1) ** k * comb(-exp + k - 1, k)
        if v:
            c[(gen,) * k] = v
    return NoncommSeries(c, degree)


def magnus_expand(word: Iterable[tuple[int, int]], degree: int = 2) -> NoncommSeries:
    """Magnus expansion of a free-group word given as ``(generator, exponent)`` letters.

    ``m_i -> 1 + h_i``; inverses expand as the geometric series, truncated at
    ``degree``.
    """
    s = NoncommSeries.one(degree)
    for gen, exp in word:
        if exp:
            s = s * _letter_series(gen, exp, degree)
    return s
