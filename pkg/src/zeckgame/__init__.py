"""Generalized (c,k)-nacci Zeckendorf game: sequence, move engine, solvers."""

from .engine import (
    GameState,
    IllegalMoveError,
    MonovariantRank,
    Move,
    MoveKind,
    StateParseError,
    apply_move,
    canonical_decode,
    canonical_encode,
    initial_state,
    is_terminal,
    legal_moves,
    monovariant_rank,
    state_value,
    wedge_notation,
)
from .sequence import (
    GameParams,
    Sequence,
    SequenceOverflowError,
    decompose_greedy,
    generate_terms,
)
from .solver import (
    ConfigurationError,
    MistakeReport,
    NoWinnerError,
    OracleScaleError,
    SolveReport,
    TurnModel,
    mistake_depth,
    optimal_line,
    solve_focal,
    solve_naive_oracle,
    solve_two_player,
    winners_all,
)

__all__ = [
    "GameParams",
    "GameState",
    "IllegalMoveError",
    "MistakeReport",
    "MonovariantRank",
    "Move",
    "MoveKind",
    "NoWinnerError",
    "OracleScaleError",
    "ConfigurationError",
    "Sequence",
    "SequenceOverflowError",
    "SolveReport",
    "StateParseError",
    "TurnModel",
    "apply_move",
    "canonical_decode",
    "canonical_encode",
    "decompose_greedy",
    "generate_terms",
    "initial_state",
    "is_terminal",
    "legal_moves",
    "mistake_depth",
    "monovariant_rank",
    "optimal_line",
    "solve_focal",
    "solve_naive_oracle",
    "solve_two_player",
    "state_value",
    "wedge_notation",
    "winners_all",
]

__version__ = "0.1.0"
