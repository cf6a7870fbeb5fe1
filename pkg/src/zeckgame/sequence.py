"""(c,k)-nacci sequence generation and greedy Zeckendorf-style decomposition.

The sequence starts S_1 = 1. While i <= k the next term is
c*(S_i + ... + S_1) + 1; from i = k+1 on it is c*(S_i + ... + S_{i-k}).
(1,1) gives the Fibonacci numbers 1, 2, 3, 5, ...; (1,2) gives the
Tribonacci numbers 1, 2, 4, 7, ...
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

UINT64_MAX = 2**64 - 1


class SequenceOverflowError(OverflowError):
    """A term exceeded the 64-bit range the artifact commits to."""


@dataclass(frozen=True)
class GameParams:
    """The pair (c, k) fixing the recurrence and the move system."""

    c: int
    k: int

    def __post_init__(self) -> None:
        if self.c < 1:
            raise ValueError(f"c must be >= 1, got {self.c}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")


@dataclass(frozen=True)
class Sequence:
    """Ascending (c,k)-nacci terms; terms[i-1] is S_i (indices are 1-based)."""

    params: GameParams
    terms: tuple[int, ...]

    def term(self, i: int) -> int:
        if i < 1 or i > len(self.terms):
            raise IndexError(f"term index {i} out of range 1..{len(self.terms)}")
        return self.terms[i - 1]


def iter_terms(params: GameParams) -> Iterator[int]:
    """Yield S_1, S_2, ... indefinitely, failing loudly past 64 bits."""
    c, k = params.c, params.k
    window: list[int] = []  # last k+1 terms, most recent at the end
    prefix_sum = 0  # S_1 + ... + S_i while i <= k
    i = 0
    while True:
        if i == 0:
            term = 1
        elif i <= k:
            term = c * prefix_sum + 1
        else:
            term = c * sum(window)
        if term > UINT64_MAX:
            raise SequenceOverflowError(
                f"term S_{i + 1} of the ({c},{k})-nacci sequence exceeds 64 bits"
            )
        yield term
        i += 1
        prefix_sum += term
        window.append(term)
        if len(window) > k + 1:
            window.pop(0)


def generate_terms(params: GameParams, bound: int) -> Sequence:
    """All terms S_i <= bound plus the first term beyond it.

    The trailing extra term is what a greedy decomposition loop compares
    against, so callers never index past the end mid-scan.
    """
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    terms: list[int] = []
    for term in iter_terms(params):
        terms.append(term)
        if term > bound:
            break
    return Sequence(params, tuple(terms))


def terms_through_index(params: GameParams, hi: int) -> tuple[int, ...]:
    """Terms S_1..S_hi as a tuple."""
    if hi < 1:
        raise ValueError(f"index must be >= 1, got {hi}")
    out: list[int] = []
    for term in iter_terms(params):
        out.append(term)
        if len(out) == hi:
            return tuple(out)
    raise AssertionError("unreachable")


def decompose_greedy(params: GameParams, n: int):
    """Greedy decomposition of n: repeatedly take the largest term that fits.

    Returns the unique terminal GameState of the game on n; the result is
    cross-checked against the move engine and this function refuses to
    return a state that still admits a move.
    """
    from .engine import GameState, is_terminal  # cycle: engine needs term values

    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    seq = generate_terms(params, n)
    counts: dict[int, int] = {}
    remaining = n
    idx = len(seq.terms)
    while remaining > 0:
        while seq.terms[idx - 1] > remaining:
            idx -= 1
        counts[idx] = counts.get(idx, 0) + 1
        remaining -= seq.terms[idx - 1]
    state = GameState(tuple(sorted(counts.items())))
    if not is_terminal(params, state):
        raise AssertionError(
            f"greedy decomposition of {n} under ({params.c},{params.k}) is not terminal"
        )
    return state
