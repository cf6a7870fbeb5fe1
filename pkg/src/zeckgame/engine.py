"""Game states and the legal-move system of the (c,k)-nacci Zeckendorf game.

A state is a multiset of sequence indices ("how many copies of S_i are on
the table"). Three move families rewrite it without changing the total
value:

  combine(i)     c copies of each of S_{i-k}..S_i        -> S_{i+1}   (i >= k+1)
  lowcombine(i)  c+1 copies of S_1, c each of S_2..S_i   -> S_{i+1}   (2 <= i <= k)
  carry(i)       c+1 copies of S_i -> S_{i+1}                         (i < k+1)
                                   -> S_{i+1} and S_1                 (i == k+1)
                                   -> S_{i+1} and c copies of S_{i-k-1} (i > k+1)

lowcombine is only emitted for i >= 2: with i = 1 it would duplicate
carry(1), and the solver cares about the set of choices, not edge
multiplicity. A state with no legal move is the unique generalized
Zeckendorf decomposition of its value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .sequence import GameParams, terms_through_index


class IllegalMoveError(ValueError):
    """A move's consumption requirements are not met by the state."""


class StateParseError(ValueError):
    """Malformed canonical state text."""


class MoveKind(Enum):
    # Declaration order is the deterministic listing order of legal_moves.
    CARRY = "carry"
    LOW_COMBINE = "lowcombine"
    COMBINE = "combine"


_KIND_ORDER = {kind: rank for rank, kind in enumerate(MoveKind)}


@dataclass(frozen=True)
class Move:
    """One rewrite, identified by family and the index it is anchored at."""

    kind: MoveKind
    i: int

    def sort_key(self) -> tuple[int, int]:
        return (_KIND_ORDER[self.kind], self.i)

    def label(self) -> str:
        return f"{self.kind.value}({self.i})"


@dataclass(frozen=True)
class GameState:
    """Canonical multiset of term indices: ((index, multiplicity), ...) ascending."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prev = 0
        for i, m in self.entries:
            if i <= prev:
                raise ValueError(f"entries must have strictly ascending indices, got {self.entries}")
            if m < 1:
                raise ValueError(f"multiplicities must be >= 1, got {i}^{m}")
            prev = i

    def count(self, i: int) -> int:
        for idx, m in self.entries:
            if idx == i:
                return m
        return 0

    def max_index(self) -> int:
        return self.entries[-1][0] if self.entries else 0

    def token_count(self) -> int:
        return sum(m for _, m in self.entries)


class MonovariantRank(NamedTuple):
    """Strictly lexicographically decreasing under every legal move."""

    token_count: int
    index_sum: int
    s2_count: int


def initial_state(n: int) -> GameState:
    """The opening position: n copies of S_1."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return GameState(((1, n),))


def move_consumption(params: GameParams, move: Move) -> dict[int, int]:
    """Index -> multiplicity consumed by the move."""
    c, k = params.c, params.k
    kind, i = move.kind, move.i
    if kind is MoveKind.COMBINE:
        if i < k + 1:
            raise IllegalMoveError(f"combine({i}) needs index >= {k + 1}")
        return {j: c for j in range(i - k, i + 1)}
    if kind is MoveKind.LOW_COMBINE:
        if not 2 <= i <= k:
            raise IllegalMoveError(f"lowcombine({i}) needs 2 <= index <= {k}")
        need = {j: c for j in range(2, i + 1)}
        need[1] = c + 1
        return need
    if i < 1:
        raise IllegalMoveError(f"carry({i}) needs index >= 1")
    return {i: c + 1}


def move_production(params: GameParams, move: Move) -> dict[int, int]:
    """Index -> multiplicity produced by the move."""
    c, k = params.c, params.k
    kind, i = move.kind, move.i
    if kind is not MoveKind.CARRY:
        return {i + 1: 1}
    if i < k + 1:
        return {i + 1: 1}
    if i == k + 1:
        return {i + 1: 1, 1: 1}
    return {i + 1: 1, i - k - 1: c}


def legal_moves(params: GameParams, state: GameState) -> list[Move]:
    """Every move whose consumption the state covers, in (kind, index) order."""
    c, k = params.c, params.k
    counts = dict(state.entries)
    moves: list[Move] = []
    for i, m in state.entries:
        if m >= c + 1:
            moves.append(Move(MoveKind.CARRY, i))
    if counts.get(1, 0) >= c + 1:
        i = 2
        while i <= k and counts.get(i, 0) >= c:
            moves.append(Move(MoveKind.LOW_COMBINE, i))
            i += 1
    for i in range(k + 1, state.max_index() + 1):
        if all(counts.get(j, 0) >= c for j in range(i - k, i + 1)):
            moves.append(Move(MoveKind.COMBINE, i))
    return moves


def apply_move(params: GameParams, state: GameState, move: Move) -> GameState:
    """Canonical successor of state under move; value-preserving."""
    counts = dict(state.entries)
    for i, need in move_consumption(params, move).items():
        have = counts.get(i, 0)
        if have < need:
            raise IllegalMoveError(
                f"{move.label()} requires {need} x S_{i}, state has {have}"
            )
        counts[i] = have - need
    for i, made in move_production(params, move).items():
        counts[i] = counts.get(i, 0) + made
    return GameState(tuple(sorted((i, m) for i, m in counts.items() if m > 0)))


def is_terminal(params: GameParams, state: GameState) -> bool:
    """True iff no move applies (the decomposition is fully legal)."""
    return not legal_moves(params, state)


def state_value(params: GameParams, state: GameState) -> int:
    """Sum of m_i * S_i; conserved by every move."""
    if not state.entries:
        return 0
    terms = terms_through_index(params, state.max_index())
    return sum(m * terms[i - 1] for i, m in state.entries)


def monovariant_rank(state: GameState) -> MonovariantRank:
    return MonovariantRank(
        token_count=state.token_count(),
        index_sum=sum(m * i for i, m in state.entries),
        s2_count=state.count(2),
    )


# --- canonical text encoding ------------------------------------------------
# "i^m,i^m,..." by ascending index is the interchange format shared by the
# cache, the DOT exporter, and the CLI.

_PAIR_RE = re.compile(r"(\d+)\^(\d+)")


def canonical_encode(state: GameState) -> str:
    return ",".join(f"{i}^{m}" for i, m in state.entries)


def canonical_decode(text: str) -> GameState:
    entries: list[tuple[int, int]] = []
    pos = 0
    prev_index = 0
    while pos < len(text):
        match = _PAIR_RE.match(text, pos)
        if not match:
            raise StateParseError(f"expected 'index^multiplicity' at position {pos} in {text!r}")
        i, m = int(match.group(1)), int(match.group(2))
        if i < 1 or m < 1:
            raise StateParseError(f"index and multiplicity must be >= 1 at position {pos} in {text!r}")
        if i <= prev_index:
            raise StateParseError(f"indices must be strictly ascending at position {pos} in {text!r}")
        entries.append((i, m))
        prev_index = i
        pos = match.end()
        if pos < len(text):
            if text[pos] != ",":
                raise StateParseError(f"expected ',' at position {pos} in {text!r}")
            pos += 1
            if pos == len(text):
                raise StateParseError(f"trailing ',' at position {pos - 1} in {text!r}")
    if not entries:
        raise StateParseError("empty state text")
    return GameState(tuple(entries))


def move_from_label(text: str) -> Move:
    """Parse "carry(2)" / "combine(3)" / "lowcombine(2)" back into a Move."""
    match = re.fullmatch(r"(carry|lowcombine|combine)\((\d+)\)", text)
    if not match:
        raise ValueError(f"not a move label: {text!r}")
    return Move(MoveKind(match.group(1)), int(match.group(2)))


# --- display rendering (wedge notation) --------------------------------------

def _wedge_sep(unicode_glyph: bool) -> str:
    return " ∧ " if unicode_glyph else " ^ "


def wedge_notation(params: GameParams, state: GameState, unicode_glyph: bool = False) -> str:
    """Term-value rendering like "1^7 ^ 3^4" (exponents are multiplicities)."""
    if not state.entries:
        return "(empty)"
    terms = terms_through_index(params, state.max_index())
    parts = []
    for i, m in state.entries:
        value = terms[i - 1]
        parts.append(str(value) if m == 1 else f"{value}^{m}")
    return _wedge_sep(unicode_glyph).join(parts)


def move_rewrite(params: GameParams, move: Move, unicode_glyph: bool = False) -> str:
    """Value-level rewrite text, e.g. carry(1) with c=1 is "1 ^ 1 -> 2"."""
    consumed = move_consumption(params, move)
    produced = move_production(params, move)
    hi = max(max(consumed), max(produced)) + 1
    terms = terms_through_index(params, hi)
    sep = _wedge_sep(unicode_glyph)
    arrow = " → " if unicode_glyph else " -> "

    def side(counts: dict[int, int]) -> str:
        flat: list[str] = []
        for i in sorted(counts):
            flat.extend([str(terms[i - 1])] * counts[i])
        return sep.join(flat)

    return side(consumed) + arrow + side(produced)
