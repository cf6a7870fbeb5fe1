"""Winner determination by memoized backward induction over the move DAG.

Normal play: whoever makes the last move wins, so a position with no moves
is lost for the player due to move. Multiplayer and team questions are
maximin: the focal side must force the last move while every other seat
coordinates against it. Values are booleans ("can the focal side force the
last move from here"), memoized per canonical state plus a turn tag:

  * singleton seats: the tag is the offset (focal_seat - current_seat) mod p,
    which makes the table independent of which seat is focal (rotational
    symmetry), so one table answers every focal player;
  * teams: the tag is the seat to move, one table per focal team.

Everything is pure and deterministic; a single evaluation order is the
reference for all outputs.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Callable, Hashable

from .engine import (
    GameState,
    Move,
    apply_move,
    canonical_encode,
    initial_state,
    legal_moves,
)
from .sequence import GameParams


class ConfigurationError(ValueError):
    """Malformed turn model or sweep configuration."""


class NoWinnerError(ValueError):
    """Raised for analyses that require a winner on a degenerate game."""


class OracleScaleError(ValueError):
    """The unmemoized reference recursion refuses instances this large."""


@dataclass(frozen=True)
class TurnModel:
    """Seats, their team assignment, and optionally the focal team.

    Seats are 1..p and move cyclically: turn t is played by seat
    ((t-1) mod p) + 1.
    """

    team_of: tuple[str, ...]
    focal: str | None = None

    def __post_init__(self) -> None:
        if not self.team_of:
            raise ConfigurationError("turn model needs at least one seat")
        if any(not team for team in self.team_of):
            raise ConfigurationError("every seat needs a non-empty team id")
        if self.focal is not None and self.focal not in self.team_of:
            raise ConfigurationError(
                f"focal team {self.focal!r} not among teams {sorted(set(self.team_of))}"
            )

    @property
    def p(self) -> int:
        return len(self.team_of)

    @classmethod
    def two_player(cls, focal: str | None = None) -> TurnModel:
        return cls(("P1", "P2"), focal)

    @classmethod
    def singletons(cls, p: int, focal: str | None = None) -> TurnModel:
        if p < 1:
            raise ConfigurationError(f"p must be >= 1, got {p}")
        return cls(tuple(f"P{s}" for s in range(1, p + 1)), focal)

    @classmethod
    def from_seating(cls, seating: str, focal: str | None = None) -> TurnModel:
        if not seating:
            raise ConfigurationError("seating string must name at least one seat")
        return cls(tuple(seating), focal)

    def with_focal(self, focal: str) -> TurnModel:
        return TurnModel(self.team_of, focal)

    def teams(self) -> tuple[str, ...]:
        """Distinct team ids in first-appearance (seat) order."""
        seen: list[str] = []
        for team in self.team_of:
            if team not in seen:
                seen.append(team)
        return tuple(seen)

    def is_singleton(self) -> bool:
        return len(set(self.team_of)) == self.p

    def seat_team(self, seat: int) -> str:
        if not 1 <= seat <= self.p:
            raise ConfigurationError(f"seat {seat} out of range 1..{self.p}")
        return self.team_of[seat - 1]

    def mover_seat(self, turn: int) -> int:
        if turn < 1:
            raise ConfigurationError(f"turn must be >= 1, got {turn}")
        return (turn - 1) % self.p + 1

    def next_seat(self, seat: int) -> int:
        return seat % self.p + 1

    def prev_seat(self, seat: int) -> int:
        return self.p if seat == 1 else seat - 1

    def seating_text(self) -> str:
        if all(len(team) == 1 for team in self.team_of):
            return "".join(self.team_of)
        return ",".join(self.team_of)


@dataclass
class SolveReport:
    """Outcome of one solve: who forces the last move, plus statistics."""

    params: GameParams
    n: int
    turn_model: TurnModel
    mode: str  # two_player | multiplayer | team
    winners: tuple[str, ...]
    states_visited: int
    policy: dict[tuple[str, int], Move] | None = None


@dataclass
class MistakeReport:
    """Earliest turn on which the strategy holder can throw the game away."""

    winner: str
    mistake_turn: int | None


def _win_table(params: GameParams, root: GameState) -> dict[GameState, bool]:
    """Mover-wins table for every state reachable from root.

    win[s] is true iff the player due to move at s can force making the
    last move; a terminal state is a loss for the mover. Explicit work
    stack, so depth is bounded by game length, not Python recursion.
    """
    win: dict[GameState, bool] = {}
    stack: list[tuple[GameState, list[GameState] | None]] = [(root, None)]
    while stack:
        state, kids = stack.pop()
        if state in win:
            continue
        if kids is None:
            kids = [apply_move(params, state, m) for m in legal_moves(params, state)]
            missing = [child for child in kids if child not in win]
            if missing:
                stack.append((state, kids))
                stack.extend((child, None) for child in missing)
                continue
        win[state] = any(not win[child] for child in kids)
    return win


_Node = tuple[GameState, int]


def _eval_tagged(
    params: GameParams,
    roots: list[_Node],
    child_tag: Callable[[int], int],
    is_or_node: Callable[[int], bool],
    terminal_value: Callable[[int], bool],
    memo: dict[_Node, bool],
) -> None:
    """Fill memo with values of (state, tag) nodes reachable from roots.

    OR nodes take any(child); AND nodes take all(child); childless nodes
    take terminal_value(tag).
    """
    for root in roots:
        stack: list[tuple[_Node, list[_Node] | None]] = [(root, None)]
        while stack:
            node, kids = stack.pop()
            if node in memo:
                continue
            state, tag = node
            if kids is None:
                moves = legal_moves(params, state)
                if not moves:
                    memo[node] = terminal_value(tag)
                    continue
                tag_next = child_tag(tag)
                kids = [(apply_move(params, state, m), tag_next) for m in moves]
                missing = [kid for kid in kids if kid not in memo]
                if missing:
                    stack.append((node, kids))
                    stack.extend((kid, None) for kid in missing)
                    continue
            values = (memo[kid] for kid in kids)
            memo[node] = any(values) if is_or_node(tag) else all(values)


def _offset_machinery(p: int):
    """Tag callbacks for offset-keyed evaluation (singleton seats).

    Tag is (focal_seat - current_seat) mod p: 0 means the focal player is
    due to move, p-1 means they just moved.
    """
    return (
        lambda off: (off - 1) % p,
        lambda off: off == 0,
        lambda off: off == p - 1,
    )


def _seat_machinery(model: TurnModel, focal: str):
    """Tag callbacks for seat-keyed evaluation (team play)."""
    return (
        lambda seat: model.next_seat(seat),
        lambda seat: model.seat_team(seat) == focal,
        lambda seat: model.seat_team(model.prev_seat(seat)) == focal,
    )


def _extract_policy(
    params: GameParams,
    memo: dict[_Node, bool],
    child_tag: Callable[[int], int],
    is_or_node: Callable[[int], bool],
) -> dict[tuple[str, int], Move]:
    """First listed winning move for every winning decision node."""
    policy: dict[tuple[str, int], Move] = {}
    for (state, tag), value in memo.items():
        if not value or not is_or_node(tag):
            continue
        tag_next = child_tag(tag)
        for move in legal_moves(params, state):
            if memo[(apply_move(params, state, move), tag_next)]:
                policy[(canonical_encode(state), tag)] = move
                break
    return policy


def policy_digest(policy: dict[tuple[str, int], Move] | None) -> str | None:
    """Stable fingerprint of a policy mapping."""
    if policy is None:
        return None
    lines = sorted(f"{key}|{tag}|{move.label()}" for (key, tag), move in policy.items())
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()


def solve_two_player(params: GameParams, n: int, with_policy: bool = True) -> SolveReport:
    """Who wins the two-player game on n, by state-keyed backward induction."""
    root = initial_state(n)
    win = _win_table(params, root)
    moves_exist = bool(legal_moves(params, root))
    if not moves_exist:
        winners: tuple[str, ...] = ()
    elif win[root]:
        winners = ("P1",)
    else:
        winners = ("P2",)
    policy = None
    if with_policy:
        policy = {}
        for state, value in win.items():
            if not value:
                continue
            for move in legal_moves(params, state):
                if not win[apply_move(params, state, move)]:
                    policy[(canonical_encode(state), 0)] = move
                    break
    return SolveReport(
        params=params,
        n=n,
        turn_model=TurnModel.two_player(),
        mode="two_player",
        winners=winners,
        states_visited=len(win),
        policy=policy,
    )


def _focal_seat(model: TurnModel, focal: str) -> int:
    return model.team_of.index(focal) + 1


def solve_focal(params: GameParams, n: int, model: TurnModel) -> SolveReport:
    """Can the focal team force the last move against a coalition of the rest?"""
    if model.focal is None:
        raise ConfigurationError("solve_focal needs a focal team; use winners_all for sweeps")
    if n < 1:
        raise ConfigurationError(f"n must be >= 1, got {n}")
    root = initial_state(n)
    mode = "multiplayer" if model.is_singleton() else "team"
    if not legal_moves(params, root):
        return SolveReport(params, n, model, mode, (), 0, {})
    memo: dict[_Node, bool] = {}
    if model.is_singleton():
        child_tag, is_or, terminal = _offset_machinery(model.p)
        root_node = (root, (_focal_seat(model, model.focal) - 1) % model.p)
    else:
        child_tag, is_or, terminal = _seat_machinery(model, model.focal)
        root_node = (root, 1)
    _eval_tagged(params, [root_node], child_tag, is_or, terminal, memo)
    winners = (model.focal,) if memo[root_node] else ()
    policy = _extract_policy(params, memo, child_tag, is_or)
    return SolveReport(params, n, model, mode, winners, len(memo), policy)


def winners_all(params: GameParams, n: int, model: TurnModel) -> SolveReport:
    """Which team, if any, holds a winning strategy; at most one can.

    Singleton seating reuses one offset-keyed table for every focal player;
    team seating runs one seat-keyed solve per team.
    """
    if n < 1:
        raise ConfigurationError(f"n must be >= 1, got {n}")
    root = initial_state(n)
    mode = "multiplayer" if model.is_singleton() else "team"
    base = TurnModel(model.team_of)
    if not legal_moves(params, root):
        return SolveReport(params, n, base, mode, (), 0, {})
    winners: list[str] = []
    if model.is_singleton():
        memo: dict[_Node, bool] = {}
        child_tag, is_or, terminal = _offset_machinery(model.p)
        roots = [(root, (seat - 1) % model.p) for seat in range(1, model.p + 1)]
        _eval_tagged(params, roots, child_tag, is_or, terminal, memo)
        for seat in range(1, model.p + 1):
            if memo[(root, (seat - 1) % model.p)]:
                winners.append(model.seat_team(seat))
        visited = len(memo)
        policy = _extract_policy(params, memo, child_tag, is_or)
    else:
        visited = 0
        policy = {}
        for team in base.teams():
            report = solve_focal(params, n, base.with_focal(team))
            visited += report.states_visited
            if report.winners:
                winners.append(team)
                policy = report.policy or {}
    if len(winners) > 1:
        raise AssertionError(
            f"two teams cannot both force the last move, got {winners}"
        )
    return SolveReport(params, n, base, mode, tuple(winners), visited, policy)


def mistake_depth(params: GameParams, n: int) -> MistakeReport:
    """Earliest turn on which the two-player winner can move into a loss.

    Walks the frontier of states reachable under correct play: on the
    winner's turns only win-preserving children survive into the next
    frontier, on the loser's turns all children do. The mistake turn is the
    first winner turn where some frontier state has a child the opponent
    would win from.
    """
    report = solve_two_player(params, n, with_policy=False)
    if not report.winners:
        raise NoWinnerError("game has no winner")
    winner = report.winners[0]
    winner_moves_first = winner == "P1"
    win = _win_table(params, initial_state(n))
    frontier: set[GameState] = {initial_state(n)}
    turn = 1
    mistake_turn: int | None = None
    while frontier and mistake_turn is None:
        winner_to_move = (turn % 2 == 1) == winner_moves_first
        nxt: set[GameState] = set()
        for state in frontier:
            children = [apply_move(params, state, m) for m in legal_moves(params, state)]
            if winner_to_move:
                # A child the opponent wins from is a blunder the winner
                # could commit right now.
                if any(win[child] for child in children):
                    mistake_turn = turn
                    break
                nxt.update(child for child in children if not win[child])
            else:
                nxt.update(children)
        frontier = nxt
        turn += 1
    return MistakeReport(winner=winner, mistake_turn=mistake_turn)


def optimal_line(params: GameParams, n: int) -> list[Move]:
    """The single play where the winner keeps winning and the loser plays
    the first listed move; empty when the opening position is already final."""
    report = solve_two_player(params, n, with_policy=False)
    if not report.winners:
        return []
    winner_moves_first = report.winners[0] == "P1"
    win = _win_table(params, initial_state(n))
    state = initial_state(n)
    turn = 1
    line: list[Move] = []
    while True:
        moves = legal_moves(params, state)
        if not moves:
            return line
        winner_to_move = (turn % 2 == 1) == winner_moves_first
        chosen = moves[0]
        if winner_to_move:
            for move in moves:
                if not win[apply_move(params, state, move)]:
                    chosen = move
                    break
            else:
                raise AssertionError("winner has no win-preserving move on the line")
        line.append(chosen)
        state = apply_move(params, state, chosen)
        turn += 1


def oracle_scale_limit(params: GameParams) -> int:
    return 18 if params.c == 1 else 3 * params.c * params.c + 9


def solve_naive_oracle(params: GameParams, n: int, model: TurnModel) -> SolveReport:
    """Unmemoized full-tree recursion; exists only to cross-check the solver."""
    if n > oracle_scale_limit(params):
        raise OracleScaleError(
            f"oracle scale exceeded: n={n} over limit {oracle_scale_limit(params)}"
        )
    root = initial_state(n)
    mode = "two_player" if model.team_of == ("P1", "P2") else (
        "multiplayer" if model.is_singleton() else "team"
    )
    base = TurnModel(model.team_of, model.focal)
    visits = 0

    def forces_last_move(focal: str) -> bool:
        def rec(state: GameState, seat: int) -> bool:
            nonlocal visits
            visits += 1
            moves = legal_moves(params, state)
            if not moves:
                return base.seat_team(base.prev_seat(seat)) == focal
            nxt = base.next_seat(seat)
            if base.seat_team(seat) == focal:
                return any(rec(apply_move(params, state, m), nxt) for m in moves)
            return all(rec(apply_move(params, state, m), nxt) for m in moves)

        return rec(root, 1)

    winners: list[str] = []
    if legal_moves(params, root):
        for team in [base.focal] if base.focal else base.teams():
            if forces_last_move(team):
                winners.append(team)
    if len(winners) > 1:
        raise AssertionError(f"two teams cannot both force the last move, got {winners}")
    return SolveReport(params, n, base, mode, tuple(winners), visits, None)
