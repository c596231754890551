"""Text and JSON file formats.

Matrix text::

    2 2
    -1 1
    0 -1

Block text: the three matrices, each preceded by a header line ``A_J``,
``A_K`` or ``B``.  JSON alternatives are ``[[...], ...]`` for a matrix and
``{"A_J": ..., "A_K": ..., "B": ...}`` for a block.  Lines starting with
``#`` are comments everywhere.
"""
from __future__ import annotations

import json
from typing import Sequence

from .braid import MixedBraid
from .errors import ParseError
from .milnor import LongitudeSet, MMData, format_word, parse_word
from .seifert import BlockSeifert, shape


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _ints(line: str) -> list[int]:
    try:
        return [int(x) for x in line.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"expected integers, got {line!r}") from None


def _json_matrix(data) -> list[list[int]]:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise ParseError("a JSON matrix must be a list of rows")
    try:
        m = [[int(x) for x in r] for r in data]
    except (TypeError, ValueError):
        raise ParseError("matrix entries must be integers") from None
    try:
        shape(m)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return m


def _take_matrix(lines: list[str], start: int) -> tuple[list[list[int]], int]:
    if start >= len(lines):
        raise ParseError("missing matrix header")
    header = _ints(lines[start])
    if len(header) != 2 or min(header) < 0:
        raise ParseError(f"bad matrix header {lines[start]!r}")
    rows, cols = header
    m = []
    for r in range(rows):
        if start + 1 + r >= len(lines):
            raise ParseError("matrix has too few rows")
        row = _ints(lines[start + 1 + r])
        if len(row) != cols:
            raise ParseError(f"row {r + 1} has {len(row)} entries, expected {cols}")
        m.append(row)
    return m, start + 1 + rows


def parse_matrix(text: str) -> list[list[int]]:
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            return _json_matrix(json.loads(stripped))
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON matrix: {exc}") from None
    lines = _lines(text)
    m, end = _take_matrix(lines, 0)
    if end != len(lines):
        raise ParseError("trailing data after matrix")
    return m


def format_matrix(m: Sequence[Sequence[int]]) -> str:
    rows, cols = shape(m)
    out = [f"{rows} {cols}"] + [" ".join(str(x) for x in r) for r in m]
    return "\n".join(out) + "\n"


def parse_block(text: str) -> BlockSeifert:
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON block: {exc}") from None
        try:
            return BlockSeifert(*(_json_matrix(data.get(k, [])) for k in ("A_J", "A_K", "B")))
        except AttributeError:
            raise ParseError("a JSON block must be an object") from None
    lines = _lines(text)
    blocks: dict[str, list[list[int]]] = {}
    i = 0
    while i < len(lines):
        name = lines[i]
        if name not in ("A_J", "A_K", "B"):
            raise ParseError(f"expected A_J, A_K or B header, got {name!r}")
        if name in blocks:
            raise ParseError(f"duplicate block {name}")
        blocks[name], i = _take_matrix(lines, i + 1)
    return BlockSeifert(blocks.get("A_J", []), blocks.get("A_K", []), blocks.get("B", []))


def format_block(bs: BlockSeifert) -> str:
    parts = []
    for name, m in (("A_J", bs.a_j), ("A_K", bs.a_k), ("B", bs.b)):
        parts.append(name + "\n" + (format_matrix(m) if m else "0 0\n"))
    return "".join(parts)


def parse_longitudes(text: str) -> LongitudeSet:
    """One longitude per line, optionally prefixed by ``l<i>:``."""
    words = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line:
            label, line = line.split(":", 1)
            if label.strip().lower() != f"l{len(words) + 1}":
                raise ParseError(f"expected label l{len(words) + 1}, got {label.strip()!r}")
        words.append(parse_word(line))
    return LongitudeSet(tuple(words))


def format_longitudes(ls: LongitudeSet) -> str:
    return "".join(f"l{i}: {format_word(w)}\n" for i, w in enumerate(ls.words, start=1))


def parse_mm(text: str) -> MMData:
    return MMData.from_json(text)


def parse_mixed(text: str) -> MixedBraid:
    return MixedBraid.from_json(text)
