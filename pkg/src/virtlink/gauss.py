"""Gauss diagrams of virtual knots.

A diagram is a cyclic sequence of endpoint tokens ``(chord, role, sign)``.
Every chord is an arrow from its over endpoint ``O`` to its under endpoint
``U``.  Virtual crossings are invisible here, so the virtual moves act as the
identity and only the three classical moves are modelled.

Arcs are indexed by their starting token: arc ``i`` runs from token ``i`` to
token ``i + 1`` (cyclically).
"""
from __future__ import annotations

import itertools
import random
import re
from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Union

from .errors import ChordMismatch, MoveNotApplicable, ParseError, UnknownChord
from .poly import LaurentPoly


class Token(NamedTuple):
    chord: int
    role: str  # "O" or "U"
    sign: int

    def __str__(self):
        return f"{self.role}{self.chord}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class GaussDiagram:
    tokens: tuple[Token, ...] = ()

    def __post_init__(self):
        seen: dict[int, dict[str, int]] = defaultdict(dict)
        for tok in self.tokens:
            if tok.role not in ("O", "U") or tok.sign not in (1, -1):
                raise ChordMismatch(f"malformed token {tok!r}")
            if tok.role in seen[tok.chord]:
                raise ChordMismatch(f"chord {tok.chord} has two {tok.role} endpoints")
            seen[tok.chord][tok.role] = tok.sign
        for chord, roles in seen.items():
            if len(roles) != 2:
                raise ChordMismatch(f"chord {chord} is missing an endpoint")
            if roles["O"] != roles["U"]:
                raise ChordMismatch(f"chord {chord} has inconsistent signs")

    def __len__(self):
        return len(self.tokens)

    def __str__(self):
        return ",".join(str(t) for t in self.tokens)

    @property
    def chords(self) -> list[int]:
        return sorted({t.chord for t in self.tokens})

    def positions(self, chord: int) -> tuple[int, int]:
        """(over position, under position) of ``chord``."""
        over = under = None
        for i, t in enumerate(self.tokens):
            if t.chord == chord:
                if t.role == "O":
                    over = i
                else:
                    under = i
        if over is None:
            raise UnknownChord(f"no chord {chord}")
        return over, under

    def endpoint_table(self) -> dict[int, tuple[int, int, int]]:
        """chord -> (over position, under position, sign)."""
        table: dict[int, list] = {}
        for i, t in enumerate(self.tokens):
            entry = table.setdefault(t.chord, [None, None, t.sign])
            entry[0 if t.role == "O" else 1] = i
        return {c: tuple(v) for c, v in table.items()}

    def sign(self, chord: int) -> int:
        for t in self.tokens:
            if t.chord == chord:
                return t.sign
        raise UnknownChord(f"no chord {chord}")

    @property
    def writhe(self) -> int:
        return sum(t.sign for t in self.tokens if t.role == "O")


_GAUSS_TOKEN = re.compile(r"^([OU])(\d+)([+-])$")


def parse_gauss(code: str) -> GaussDiagram:
    """Parse ``O1+,O2+,U1+,U2+`` style codes.  The empty string is the unknot."""
    code = code.strip()
    if not code:
        return GaussDiagram(())
    tokens = []
    for raw in code.split(","):
        m = _GAUSS_TOKEN.match(raw.strip())
        if not m:
            raise ParseError(f"bad Gauss token {raw.strip()!r}")
        role, chord, sign = m.groups()
        tokens.append(Token(int(chord), role, 1 if sign == "+" else -1))
    return GaussDiagram(tuple(tokens))


# ---------------------------------------------------------------------------
# index

class Smoothing(NamedTuple):
    arc_a: frozenset[int]  # positions strictly after x's O and before x's U
    arc_b: frozenset[int]  # remaining positions, x's endpoints excluded
    linked: frozenset[int]  # chords with one endpoint on each side


def smooth(d: GaussDiagram, x: int) -> Smoothing:
    """Oriented smoothing at chord ``x``, as a split of the other endpoints."""
    over, under = d.positions(x)
    n = len(d)
    arc_a = frozenset((over + k) % n for k in range(1, (under - over) % n))
    arc_b = frozenset(range(n)) - arc_a - {over, under}
    side: dict[int, set[bool]] = defaultdict(set)
    for p in arc_a | arc_b:
        side[d.tokens[p].chord].add(p in arc_a)
    linked = frozenset(c for c, s in side.items() if len(s) == 2)
    return Smoothing(arc_a, arc_b, linked)


def index(d: GaussDiagram, x: int) -> int:
    """Signed count of chords linked with ``x``.

    A linked chord ``y`` contributes ``sign(y)`` when its under endpoint lies
    on the arc from x's over endpoint to x's under endpoint, and ``-sign(y)``
    otherwise.
    """
    sm = smooth(d, x)
    total = 0
    for p in sm.arc_a:
        tok = d.tokens[p]
        if tok.chord in sm.linked:
            total += tok.sign if tok.role == "U" else -tok.sign
    return total


def index_direct(d: GaussDiagram, x: int) -> int:
    """Same quantity as :func:`index` by a double loop over chord endpoints."""
    table = d.endpoint_table()
    if x not in table:
        raise UnknownChord(f"no chord {x}")
    n = len(d)
    ox, ux, _ = table[x]
    width = (ux - ox) % n

    def inside(p):
        return 0 < (p - ox) % n < width

    total = 0
    for y, (oy, uy, sy) in table.items():
        if y == x:
            continue
        if inside(uy) and not inside(oy):
            total += sy
        elif inside(oy) and not inside(uy):
            total -= sy
    return total


@dataclass(frozen=True)
class IndexReport:
    signs: dict[int, int]
    indices: dict[int, int]
    writhe: int

    def lines(self) -> list[str]:
        out = [
            f"chord {c}: sign {'+' if self.signs[c] > 0 else '-'} index {self.indices[c]}"
            for c in sorted(self.indices)
        ]
        out.append(f"writhe {self.writhe}")
        return out


def index_report(d: GaussDiagram) -> IndexReport:
    table = d.endpoint_table()
    return IndexReport(
        signs={c: s for c, (_, _, s) in table.items()},
        indices={c: index(d, c) for c in table},
        writhe=d.writhe,
    )


def is_almost_classical(d: GaussDiagram) -> bool:
    return all(index(d, c) == 0 for c in d.chords)


def writhe_index_polynomial(d: GaussDiagram) -> LaurentPoly:
    """Sum of ``sign(x) * q^Index(x)`` over chords with nonzero index."""
    coeffs: dict[int, int] = {}
    for c, (_, _, s) in d.endpoint_table().items():
        k = index(d, c)
        if k:
            coeffs[k] = coeffs.get(k, 0) + s
    return LaurentPoly(coeffs, 1)


# ---------------------------------------------------------------------------
# Alexander numbering

def alexander_numbering(d: GaussDiagram) -> tuple[int, ...] | None:
    """Integer arc labels satisfying the crossing equations, or None.

    At a chord with sign ``s``, over endpoint ``p`` and under endpoint ``q``::

        label(in_over) == label(out_under)
        label(out_over) == label(in_under)
        label(in_over) == label(out_over) + s

    where ``in_over`` is arc ``p - 1``, ``out_over`` arc ``p`` and likewise
    for ``q``.  The smallest label is normalized to 0.
    """
    n = len(d)
    if n == 0:
        return (0,)
    # edges u -> v with label[v] = label[u] + w
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]

    def relate(u, v, w):
        adj[u].append((v, w))
        adj[v].append((u, -w))

    for p, q, s in d.endpoint_table().values():
        in_o, out_o = (p - 1) % n, p
        in_u, out_u = (q - 1) % n, q
        relate(in_o, out_u, 0)
        relate(out_o, in_u, 0)
        relate(out_o, in_o, s)

    label: list[int | None] = [None] * n
    for start in range(n):
        if label[start] is not None:
            continue
        label[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v, w in adj[u]:
                want = label[u] + w
                if label[v] is None:
                    label[v] = want
                    queue.append(v)
                elif label[v] != want:
                    return None
    low = min(label)
    return tuple(x - low for x in label)


# ---------------------------------------------------------------------------
# Reidemeister moves

@dataclass(frozen=True)
class R1Insert:
    """Insert a kink chord before token ``gap`` (0 <= gap <= len)."""
    gap: int
    sign: int = 1
    over_first: bool = True


@dataclass(frozen=True)
class R1Delete:
    chord: int


@dataclass(frozen=True)
class R2Insert:
    """Insert a bigon between the strands at ``gap1`` and ``gap2``.

    The strand at ``gap1`` meets the new chords a, b in that order.  The
    second strand meets them as a, b, or as b, a when ``reverse`` is set.
    Chord a gets ``sign`` and chord b gets ``-sign``.
    """
    gap1: int
    gap2: int
    sign: int = 1
    first_over: bool = True
    reverse: bool = False


@dataclass(frozen=True)
class R2Delete:
    chord_a: int
    chord_b: int


@dataclass(frozen=True)
class R3:
    """Triangle move on three chords whose six endpoints form three
    cyclically adjacent pairs; ``positions`` lists the first position of
    each pair."""
    chords: tuple[int, int, int]
    positions: tuple[int, int, int]


MoveSpec = Union[R1Insert, R1Delete, R2Insert, R2Delete, R3]


def _next_chord(d: GaussDiagram) -> int:
    return max(d.chords, default=0) + 1


def _adjacent(p: int, q: int, n: int) -> bool:
    return (p - q) % n in (1, n - 1)


def _check_gap(gap: int, n: int):
    if not 0 <= gap <= n:
        raise MoveNotApplicable(f"gap {gap} outside 0..{n}")


@lru_cache(maxsize=None)
def r3_configurations() -> frozenset[tuple]:
    """Every local R3 picture, read off from arrangements of three straight
    oriented lines at three heights.

    A configuration is ``(s_tm, s_tb, s_mb, top_tm_first, mid_tm_first,
    bot_tb_first)``: the signs of the top/middle, top/bottom and middle/bottom
    crossings, then for each strand whether its first crossing (in traversal
    order) is the one named.
    """
    dirs = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
    offsets = [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 2), (-2, 1)]

    def cross(a, b):
        return a[0] * b[1] - a[1] * b[0]

    def param(pi, di, pj, dj):
        # parameter along line i of its intersection with line j
        den = cross(di, dj)
        return Fraction(cross((pj[0] - pi[0], pj[1] - pi[1]), dj), den)

    configs = set()
    for d1, d2, d3 in itertools.product(dirs, repeat=3):
        if cross(d1, d2) == 0 or cross(d1, d3) == 0 or cross(d2, d3) == 0:
            continue
        for off in offsets:
            pts = [(0, 0), (0, 0), off]
            ds = [d1, d2, d3]
            if cross(off, d3) == 0:
                continue  # third line through the common point
            for top, mid, bot in itertools.permutations(range(3)):
                def sgn(o, u):
                    return 1 if cross(ds[o], ds[u]) > 0 else -1

                def first(line, a, b):
                    return param(pts[line], ds[line], pts[a], ds[a]) < param(
                        pts[line], ds[line], pts[b], ds[b]
                    )

                configs.add((
                    sgn(top, mid), sgn(top, bot), sgn(mid, bot),
                    first(top, mid, bot), first(mid, top, bot), first(bot, top, mid),
                ))
    return frozenset(configs)


def _r3_layout(d: GaussDiagram, chords, positions):
    """Validate an R3 site; returns the three position pairs to swap."""
    n = len(d)
    chords = tuple(chords)
    if len(set(chords)) != 3:
        raise MoveNotApplicable("R3 needs three distinct chords")
    pairs = []
    for p in positions:
        if not 0 <= p < n:
            raise MoveNotApplicable(f"position {p} out of range")
        pairs.append((p, (p + 1) % n))
    flat = [p for pr in pairs for p in pr]
    if len(set(flat)) != 6:
        raise MoveNotApplicable("R3 pairs overlap")
    if {d.tokens[p].chord for p in flat} != set(chords) or any(
        sum(1 for p in flat if d.tokens[p].chord == c) != 2 for c in chords
    ):
        raise MoveNotApplicable("R3 pairs do not cover the three chords")
    strands = {}
    for a, b in pairs:
        ta, tb = d.tokens[a], d.tokens[b]
        if ta.chord == tb.chord:
            raise MoveNotApplicable("an R3 strand pair must meet two chords")
        roles = "".join(sorted(ta.role + tb.role))
        if roles in strands:
            raise MoveNotApplicable("R3 strands must be top, middle and bottom")
        strands[roles] = (a, b)
    if set(strands) != {"OO", "OU", "UU"}:
        raise MoveNotApplicable("R3 strands must be top, middle and bottom")
    top, mid, bot = strands["OO"], strands["OU"], strands["UU"]
    tok = d.tokens
    mid_chords = {tok[p].chord: tok[p].role for p in mid}
    tm = next(c for c, r in mid_chords.items() if r == "U")
    mb = next(c for c, r in mid_chords.items() if r == "O")
    tb = next(c for c in chords if c not in (tm, mb))
    if {tok[p].chord for p in top} != {tm, tb} or {tok[p].chord for p in bot} != {tb, mb}:
        raise MoveNotApplicable("chords do not form a triangle")
    config = (
        tok[top[0]].sign if tok[top[0]].chord == tm else tok[top[1]].sign,
        d.sign(tb), d.sign(mb),
        tok[top[0]].chord == tm, tok[mid[0]].chord == tm, tok[bot[0]].chord == tb,
    )
    if config not in r3_configurations():
        raise MoveNotApplicable("triangle is not a realizable R3 configuration")
    return pairs


def apply_move(d: GaussDiagram, m: MoveSpec) -> GaussDiagram:
    """Apply one classical Reidemeister move and return the new diagram."""
    toks = list(d.tokens)
    n = len(toks)
    if isinstance(m, R1Insert):
        _check_gap(m.gap, n)
        c = _next_chord(d)
        pair = [Token(c, "O", m.sign), Token(c, "U", m.sign)]
        if not m.over_first:
            pair.reverse()
        return GaussDiagram(tuple(toks[: m.gap] + pair + toks[m.gap:]))
    if isinstance(m, R1Delete):
        over, under = d.positions(m.chord)
        if not _adjacent(over, under, n):
            raise MoveNotApplicable(f"chord {m.chord} is not an isolated kink")
        return GaussDiagram(tuple(t for t in toks if t.chord != m.chord))
    if isinstance(m, R2Insert):
        _check_gap(m.gap1, n)
        _check_gap(m.gap2, n)
        a = _next_chord(d)
        b = a + 1
        r1, r2 = ("O", "U") if m.first_over else ("U", "O")
        first = [Token(a, r1, m.sign), Token(b, r1, -m.sign)]
        second = [Token(a, r2, m.sign), Token(b, r2, -m.sign)]
        if m.reverse:
            second.reverse()
        g1, g2 = m.gap1, m.gap2
        if g1 <= g2:
            out = toks[:g1] + first + toks[g1:g2] + second + toks[g2:]
        else:
            out = toks[:g2] + second + toks[g2:g1] + first + toks[g1:]
        return GaussDiagram(tuple(out))
    if isinstance(m, R2Delete):
        oa, ua = d.positions(m.chord_a)
        ob, ub = d.positions(m.chord_b)
        if m.chord_a == m.chord_b or d.sign(m.chord_a) != -d.sign(m.chord_b):
            raise MoveNotApplicable("R2 chords must be distinct with opposite signs")
        if not (_adjacent(oa, ob, n) and _adjacent(ua, ub, n)):
            raise MoveNotApplicable("R2 chord endpoints are not adjacent")
        gone = {m.chord_a, m.chord_b}
        return GaussDiagram(tuple(t for t in toks if t.chord not in gone))
    if isinstance(m, R3):
        for c in m.chords:
            d.positions(c)
        pairs = _r3_layout(d, m.chords, m.positions)
        for a, b in pairs:
            toks[a], toks[b] = toks[b], toks[a]
        return GaussDiagram(tuple(toks))
    raise TypeError(f"unknown move {m!r}")


def moves_available(d: GaussDiagram) -> dict[str, list[MoveSpec]]:
    """All applicable deletion and R3 moves of ``d``, grouped by kind."""
    n = len(d)
    table = d.endpoint_table()
    r1 = [R1Delete(c) for c, (o, u, _) in table.items() if _adjacent(o, u, n)]
    r2 = []
    for a, b in itertools.combinations(sorted(table), 2):
        oa, ua, sa = table[a]
        ob, ub, sb = table[b]
        if sa == -sb and _adjacent(oa, ob, n) and _adjacent(ua, ub, n):
            r2.append(R2Delete(a, b))
    r3 = []
    if n >= 6:
        by_pair: dict[frozenset, list[int]] = defaultdict(list)
        for p in range(n):
            c1, c2 = d.tokens[p].chord, d.tokens[(p + 1) % n].chord
            if c1 != c2:
                by_pair[frozenset((c1, c2))].append(p)
        chord_set = sorted({c for k in by_pair for c in k})
        for a, b, c in itertools.combinations(chord_set, 3):
            k1, k2, k3 = frozenset((a, b)), frozenset((a, c)), frozenset((b, c))
            if not (k1 in by_pair and k2 in by_pair and k3 in by_pair):
                continue
            for p1 in by_pair[k1]:
                for p2 in by_pair[k2]:
                    for p3 in by_pair[k3]:
                        try:
                            _r3_layout(d, (a, b, c), (p1, p2, p3))
                        except MoveNotApplicable:
                            continue
                        r3.append(R3((a, b, c), (p1, p2, p3)))
    return {"R1": r1, "R2": r2, "R3": r3}


def random_move(d: GaussDiagram, rng: random.Random, max_chords: int = 10) -> MoveSpec:
    """Draw an applicable classical move; deletions are favoured when large."""
    n = len(d)
    avail = moves_available(d)
    kinds = ["R1+", "R2+"]
    if avail["R1"]:
        kinds.append("R1-")
    if avail["R2"]:
        kinds.append("R2-")
    if avail["R3"]:
        kinds += ["R3", "R3"]
    if len(d.chords) >= max_chords:
        kinds = [k for k in kinds if k not in ("R1+", "R2+")] or ["R1-"]
    kind = rng.choice(kinds)
    if kind == "R1+":
        return R1Insert(rng.randint(0, n), rng.choice((1, -1)), rng.random() < 0.5)
    if kind == "R2+":
        return R2Insert(
            rng.randint(0, n), rng.randint(0, n), rng.choice((1, -1)),
            rng.random() < 0.5, rng.random() < 0.5,
        )
    if kind == "R1-":
        return rng.choice(avail["R1"])
    if kind == "R2-":
        return rng.choice(avail["R2"])
    if kind == "R3":
        return rng.choice(avail["R3"])
    # nothing removable at the size cap: grow by a kink instead
    return R1Insert(rng.randint(0, n), rng.choice((1, -1)))


def random_diagram(rng: random.Random, max_chords: int = 8) -> GaussDiagram:
    """Uniformly shuffled endpoints with random signs."""
    n = rng.randint(0, max_chords)
    toks = []
    for c in range(1, n + 1):
        s = rng.choice((1, -1))
        toks += [Token(c, "O", s), Token(c, "U", s)]
    rng.shuffle(toks)
    return GaussDiagram(tuple(toks))
