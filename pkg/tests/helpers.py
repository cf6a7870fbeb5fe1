"""Shared enumeration and oracle utilities for the test suite."""

from __future__ import annotations

import random

from zeckgame.engine import (
    GameState,
    Move,
    MoveKind,
    apply_move,
    initial_state,
    is_terminal,
    legal_moves,
)
from zeckgame.sequence import GameParams, generate_terms


def states_with_value(params: GameParams, n: int) -> list[GameState]:
    """Every multiset of sequence terms summing to exactly n."""
    terms = [t for t in generate_terms(params, n).terms if t <= n]
    out: list[GameState] = []
    entries: list[tuple[int, int]] = []

    def rec(idx: int, remaining: int) -> None:
        if idx == 0:
            if remaining == 0:
                out.append(GameState(tuple(sorted(entries))))
            return
        term = terms[idx - 1]
        for mult in range(remaining // term, -1, -1):
            if mult:
                entries.append((idx, mult))
            rec(idx - 1, remaining - mult * term)
            if mult:
                entries.pop()

    rec(len(terms), n)
    return out


def states_value_at_most(params: GameParams, bound: int) -> list[GameState]:
    out: list[GameState] = []
    for n in range(1, bound + 1):
        out.extend(states_with_value(params, n))
    return out


def reachable_states(params: GameParams, n: int) -> set[GameState]:
    """BFS closure of the opening position under legal moves."""
    root = initial_state(n)
    seen = {root}
    queue = [root]
    while queue:
        state = queue.pop()
        for move in legal_moves(params, state):
            child = apply_move(params, state, move)
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return seen


def random_playout(params: GameParams, n: int, rng: random.Random) -> GameState:
    state = initial_state(n)
    while True:
        moves = legal_moves(params, state)
        if not moves:
            return state
        state = apply_move(params, state, rng.choice(moves))


def fibonacci_rule_moves(state: GameState) -> set[Move]:
    """The (1,1) move set written straight from the two-player Fibonacci
    game's rules, independent of the engine's scan:

      adjacent indices i-1, i both present       -> combine anchored at i
      two copies of index 1                      -> carry(1)   (1,1 -> 2)
      two copies of index 2                      -> carry(2)   (2,2 -> 1,3)
      two copies of index i >= 3                 -> carry(i)   (i,i -> i-2, i+1)
    """
    counts = dict(state.entries)
    moves: set[Move] = set()
    for i in counts:
        if counts.get(i - 1, 0) >= 1 and counts[i] >= 1 and i >= 2:
            moves.add(Move(MoveKind.COMBINE, i))
        if counts[i] >= 2:
            moves.add(Move(MoveKind.CARRY, i))
    return moves
