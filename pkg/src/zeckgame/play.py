"""Interactive terminal play against the solved optimal policy.

Humans pick from numbered legal moves; engine seats play the first move
that keeps their team's forced win alive (or the first legal move once no
forced win exists). The session ends when the position admits no move, and
the seat that moved last wins for its team.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .engine import (
    GameState,
    Move,
    apply_move,
    canonical_encode,
    initial_state,
    legal_moves,
    move_rewrite,
    wedge_notation,
)
from .harness import render_transcript
from .sequence import GameParams
from .solver import ConfigurationError, TurnModel, _eval_tagged, _seat_machinery

CONTROLLERS = ("human", "engine")


@dataclass
class PlaySession:
    """One live game: parameters, seating, current position, and who drives
    each seat."""

    params: GameParams
    n: int
    model: TurnModel
    controllers: tuple[str, ...]
    state: GameState = field(init=False)
    turn: int = field(init=False, default=1)
    moves_played: list[Move] = field(init=False, default_factory=list)
    _memos: dict[str, dict] = field(init=False, default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.controllers) != self.model.p:
            raise ConfigurationError(
                f"need one controller per seat: {self.model.p} seats, "
                f"{len(self.controllers)} controllers"
            )
        for controller in self.controllers:
            if controller not in CONTROLLERS:
                raise ConfigurationError(
                    f"controller must be one of {CONTROLLERS}, got {controller!r}"
                )
        self.state = initial_state(self.n)
        # Engine seats need their solve finished before the session starts.
        for seat, controller in enumerate(self.controllers, start=1):
            if controller == "engine":
                self._value(self.state, 1, self.model.seat_team(seat))

    def _value(self, state: GameState, seat: int, focal: str) -> bool:
        memo = self._memos.setdefault(focal, {})
        node = (state, seat)
        if node not in memo:
            _eval_tagged(self.params, [node], *_seat_machinery(self.model, focal), memo)
        return memo[node]

    def engine_move(self, seat: int) -> Move:
        """First forced-win-preserving move for the seat's team, else the
        first legal move."""
        focal = self.model.seat_team(seat)
        moves = legal_moves(self.params, self.state)
        if self._value(self.state, seat, focal):
            nxt = self.model.next_seat(seat)
            for move in moves:
                if self._value(apply_move(self.params, self.state, move), nxt, focal):
                    return move
            raise AssertionError("winning position with no win-preserving move")
        return moves[0]

    def play(self, move: Move) -> None:
        self.state = apply_move(self.params, self.state, move)
        self.moves_played.append(move)
        self.turn += 1

    def transcript(self) -> list[str]:
        return render_transcript(self.params, self.n, self.model, self.moves_played)


def run_session(
    params: GameParams,
    n: int,
    model: TurnModel,
    controllers: tuple[str, ...],
    input_fn: Callable[[str], str] = input,
    out: Callable[[str], None] = print,
    unicode_glyph: bool = False,
) -> int:
    """Drive a session on the given streams until the game ends or input does."""
    session = PlaySession(params, n, model, controllers)
    while True:
        moves = legal_moves(params, session.state)
        if not moves:
            break
        seat = model.mover_seat(session.turn)
        team = model.seat_team(seat)
        controller = controllers[seat - 1]
        out(f"turn {session.turn} - seat {seat} (team {team}, {controller})")
        out(f"state: {wedge_notation(params, session.state, unicode_glyph)}"
            f"  [{canonical_encode(session.state)}]")
        if controller == "human":
            for index, move in enumerate(moves, start=1):
                out(f"  [{index}] {move.label()}: {move_rewrite(params, move, unicode_glyph)}")
            while True:
                try:
                    raw = input_fn("move> ")
                except EOFError:
                    out("input closed; aborting session")
                    for line in session.transcript():
                        out(line)
                    return 1
                try:
                    pick = int(raw.strip())
                except ValueError:
                    out(f"not a move number: {raw.strip()!r}; pick 1..{len(moves)}")
                    continue
                if not 1 <= pick <= len(moves):
                    out(f"no move numbered {pick}; pick 1..{len(moves)}")
                    continue
                chosen = moves[pick - 1]
                break
        else:
            chosen = session.engine_move(seat)
            out(f"engine plays {chosen.label()}: {move_rewrite(params, chosen, unicode_glyph)}")
        session.play(chosen)
    if session.moves_played:
        last_turn = session.turn - 1
        last_seat = model.mover_seat(last_turn)
        out(f"game over after {last_turn} turns: "
            f"seat {last_seat} (team {model.seat_team(last_seat)}) made the last move and wins")
    else:
        out("game over: the opening position admits no move; nobody wins")
    for line in session.transcript():
        out(line)
    return 0
