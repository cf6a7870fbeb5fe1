"""Finite, machine-checkable sweeps for every verified claim about the game.

Each claim has hypothesis bounds; configured ranges are validated against
them before any solve runs, and instances outside every applicable bound
are refused (or, where a claim explicitly allows it, reported without
assertion). Failures carry a replayable move sequence from the opening
position.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence as Seq

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
from .sequence import GameParams
from .solver import (
    ConfigurationError,
    TurnModel,
    _eval_tagged,
    _seat_machinery,
    mistake_depth,
    solve_two_player,
    winners_all,
)


@dataclass
class ClaimFailure:
    label: str
    expected: str
    got: str
    moves: list[Move]
    transcript: list[str]


@dataclass
class ClaimInfo:
    label: str
    got: str


@dataclass
class ClaimResult:
    claim_id: str
    source: str
    instances_run: int = 0
    failures: list[ClaimFailure] = field(default_factory=list)
    informational: list[ClaimInfo] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def merge(self, other: "ClaimResult") -> None:
        self.instances_run += other.instances_run
        self.failures.extend(other.failures)
        self.informational.extend(other.informational)


def winners_text(winners: tuple[str, ...]) -> str:
    return winners[0] if winners else "none"


# --- counterexample / demonstration transcripts -------------------------------

def demonstration_line(
    params: GameParams, n: int, model: TurnModel, focal: str | None
) -> list[Move]:
    """A full play: the focal team keeps its forced win, everyone else plays
    the first listed move. With no focal team it is a plain first-move play."""
    state = initial_state(n)
    seat = 1
    line: list[Move] = []
    memo: dict[tuple[GameState, int], bool] = {}
    machinery = _seat_machinery(model, focal) if focal is not None else None
    while True:
        moves = legal_moves(params, state)
        if not moves:
            return line
        chosen = moves[0]
        if machinery is not None and model.seat_team(seat) == focal:
            child_tag, is_or, terminal = machinery
            nxt = model.next_seat(seat)
            for move in moves:
                node = (apply_move(params, state, move), nxt)
                _eval_tagged(params, [node], child_tag, is_or, terminal, memo)
                if memo[node]:
                    chosen = move
                    break
        line.append(chosen)
        state = apply_move(params, state, chosen)
        seat = model.next_seat(seat)


def replay(params: GameParams, n: int, moves: Seq[Move]) -> tuple[GameState, int]:
    """Run a move list from the opening position; returns (final state, move count)."""
    state = initial_state(n)
    for move in moves:
        state = apply_move(params, state, move)
    return state, len(moves)


def render_transcript(
    params: GameParams, n: int, model: TurnModel, moves: Seq[Move]
) -> list[str]:
    """Human-readable wedge-notation transcript, one line per move."""
    state = initial_state(n)
    lines = [f"start: {wedge_notation(params, state)}  [{canonical_encode(state)}]"]
    for turn, move in enumerate(moves, start=1):
        seat = model.mover_seat(turn)
        state = apply_move(params, state, move)
        lines.append(
            f"turn {turn} seat {seat} ({model.seat_team(seat)}): "
            f"{move.label()}: {move_rewrite(params, move)} => {wedge_notation(params, state)}"
        )
    if moves:
        last = model.mover_seat(len(moves))
        lines.append(
            f"final: {canonical_encode(state)}; last mover seat {last} "
            f"(team {model.seat_team(last)})"
        )
    return lines


def _fail(
    result: ClaimResult,
    label: str,
    expected: str,
    got: str,
    params: GameParams,
    n: int,
    model: TurnModel,
    focal: str | None,
) -> None:
    moves = demonstration_line(params, n, model, focal)
    result.failures.append(
        ClaimFailure(label, expected, got, moves, render_transcript(params, n, model, moves))
    )


# --- two-player parity ----------------------------------------------------------

def parity_bound(c: int) -> int:
    return (c + 1) ** 3 + (c + 1)


def validate_two_player_parity(
    cs: Iterable[int], ks: Iterable[int], ns: Iterable[int],
    report_below_bound: bool = False,
) -> None:
    for c in cs:
        for n in ns:
            if n < parity_bound(c) and not report_below_bound:
                raise ConfigurationError(
                    f"n={n} below the parity hypothesis bound {parity_bound(c)} for c={c}"
                )


def check_two_player_parity(
    cs: Iterable[int],
    ks: Iterable[int],
    ns: Iterable[int],
    report_below_bound: bool = False,
) -> ClaimResult:
    """Odd c: the second player wins; even c: the first player wins."""
    cs, ks, ns = list(cs), list(ks), list(ns)
    validate_two_player_parity(cs, ks, ns, report_below_bound)
    result = ClaimResult("two-player-parity", CLAIMS["two-player-parity"].source)
    for c in cs:
        expected = "P2" if c % 2 == 1 else "P1"
        for k in ks:
            params = GameParams(c, k)
            for n in ns:
                label = f"c={c} k={k} n={n}"
                got = winners_text(solve_two_player(params, n, with_policy=False).winners)
                result.instances_run += 1
                if n < parity_bound(c):
                    result.informational.append(ClaimInfo(label, got))
                elif got != expected:
                    _fail(result, label, expected, got, params, n,
                          TurnModel.two_player(), got if got != "none" else None)
    return result


# --- Tribonacci two-player -------------------------------------------------------

def validate_trib_two_player(ns: Iterable[int]) -> None:
    pass  # n <= 9 instances are reported rather than asserted


def check_trib_two_player(ns: Iterable[int]) -> ClaimResult:
    """Tribonacci: the second player wins for every n > 9; the n <= 9 winner
    table is emitted without assertion."""
    ns = list(ns)
    result = ClaimResult("trib-two-player", CLAIMS["trib-two-player"].source)
    params = GameParams(1, 2)
    for n in range(1, 10):
        got = winners_text(solve_two_player(params, n, with_policy=False).winners)
        result.informational.append(ClaimInfo(f"n={n}", got))
    result.instances_run += sum(1 for n in ns if n <= 9)
    for n in ns:
        if n <= 9:
            continue  # already covered by the table
        label = f"n={n}"
        got = winners_text(solve_two_player(params, n, with_policy=False).winners)
        result.instances_run += 1
        if got != "P2":
            _fail(result, label, "P2", got, params, n,
                  TurnModel.two_player(), got if got != "none" else None)
    return result


# --- multiplayer no-winner --------------------------------------------------------

def multiplayer_bound(c: int, k: int) -> int:
    # The Tribonacci case carries a sharper bound than the general one.
    return 7 if (c, k) == (1, 2) else 3 * c * c + 6 * c + 3


def validate_multiplayer_no_winner(
    cs: Iterable[int], ks: Iterable[int], ps: Iterable[int], ns: Iterable[int],
    report_below_bound: bool = False,
) -> None:
    for c in cs:
        for p in ps:
            if p < c + 2:
                raise ConfigurationError(
                    f"p={p} below the multiplayer hypothesis bound p >= c+2 for c={c}"
                )
        for k in ks:
            bound = multiplayer_bound(c, k)
            for n in ns:
                if n < bound and not report_below_bound:
                    raise ConfigurationError(
                        f"n={n} below the multiplayer hypothesis bound {bound} "
                        f"for c={c}, k={k}"
                    )


def check_multiplayer_no_winner(
    cs: Iterable[int],
    ks: Iterable[int],
    ps: Iterable[int],
    ns: Iterable[int],
    report_below_bound: bool = False,
) -> ClaimResult:
    """With p >= c+2 single players, nobody can force the last move."""
    cs, ks, ps, ns = list(cs), list(ks), list(ps), list(ns)
    validate_multiplayer_no_winner(cs, ks, ps, ns, report_below_bound)
    claim_id = ("trib-multiplayer"
                if all((c, k) == (1, 2) for c in cs for k in ks)
                else "multiplayer-general")
    result = ClaimResult(claim_id, CLAIMS[claim_id].source)
    for c in cs:
        for k in ks:
            params = GameParams(c, k)
            bound = multiplayer_bound(c, k)
            for p in ps:
                for n in ns:
                    label = f"c={c} k={k} p={p} n={n}"
                    model = TurnModel.singletons(p)
                    got = winners_text(winners_all(params, n, model).winners)
                    result.instances_run += 1
                    if n < bound:
                        result.informational.append(ClaimInfo(label, got))
                    elif got != "none":
                        _fail(result, label, "none", got, params, n, model, got)
    return result


# --- mistake depth -----------------------------------------------------------------

def validate_mistake_depth(
    cs: Iterable[int], ks: Iterable[int], ns: Iterable[int]
) -> None:
    for k in ks:
        if k <= 1:
            raise ConfigurationError("mistake-depth hypothesis requires k > 1")
    for c in cs:
        for n in ns:
            if n < parity_bound(c):
                raise ConfigurationError(
                    f"n={n} below the parity hypothesis bound {parity_bound(c)} for c={c}"
                )


def check_mistake_depth(
    cs: Iterable[int], ks: Iterable[int], ns: Iterable[int]
) -> ClaimResult:
    """The strategy holder's first possible blunder is on turn c+1 (k > 1)."""
    cs, ks, ns = list(cs), list(ks), list(ns)
    validate_mistake_depth(cs, ks, ns)
    result = ClaimResult("mistake-depth", CLAIMS["mistake-depth"].source)
    for c in cs:
        for k in ks:
            params = GameParams(c, k)
            for n in ns:
                label = f"c={c} k={k} n={n}"
                report = mistake_depth(params, n)
                got = "none" if report.mistake_turn is None else str(report.mistake_turn)
                result.instances_run += 1
                if got != str(c + 1):
                    _fail(result, label, str(c + 1), got, params, n,
                          TurnModel.two_player(), report.winner)
    return result


# --- team games ---------------------------------------------------------------------

def team_seating(t: int, d: int) -> str:
    """t consecutive blocks of d seats each: AABBCC for t=3, d=2."""
    if t > 26:
        raise ConfigurationError(f"at most 26 teams supported, got {t}")
    return "".join(chr(ord("A") + team) * d for team in range(t))


def team_lemma_bound(c: int, t: int) -> int | None:
    """Bound backed by the block-team lemmas, or None when neither applies."""
    if t < 2 * c:
        return None
    if t >= c + 3:
        return 3 * c * c + 15 * c + 12
    return 6 * c * c + 18 * c + 12  # t == c + 2


def validate_team_no_winner(
    cs: Iterable[int], ts: Iterable[int], ks: Iterable[int], ns: Iterable[int],
    bound_profile: str = "stated",
) -> None:
    if bound_profile not in ("stated", "lemma"):
        raise ConfigurationError(f"unknown bound profile {bound_profile!r}")
    for c in cs:
        for t in ts:
            if t < c + 2:
                raise ConfigurationError(
                    f"t={t} below the team hypothesis bound t >= c+2 for c={c}"
                )
            d = t - c
            stated = 2 * d * d + 4 * d
            for n in ns:
                if n < stated:
                    raise ConfigurationError(
                        f"n={n} below the team hypothesis bound {stated} for c={c}, t={t}"
                    )


def check_team_no_winner(
    cs: Iterable[int],
    ts: Iterable[int],
    ks: Iterable[int],
    ns: Iterable[int],
    bound_profile: str = "stated",
) -> ClaimResult:
    """t teams of d = t-c consecutive seats each: no team can force the win.

    bound_profile "stated" asserts from n >= 2d^2+4d up. Profile "lemma" is
    more conservative: it asserts only from the larger lemma-backed bound
    and reports the gap range without assertion.
    """
    cs, ts, ks, ns = list(cs), list(ts), list(ks), list(ns)
    validate_team_no_winner(cs, ts, ks, ns, bound_profile)
    result = ClaimResult("team-no-winner", CLAIMS["team-no-winner"].source)
    for c in cs:
        for t in ts:
            d = t - c
            stated = 2 * d * d + 4 * d
            lemma = team_lemma_bound(c, t)
            if bound_profile == "stated":
                assert_from: int | None = stated
            else:
                assert_from = max(stated, lemma) if lemma is not None else None
            seating = team_seating(t, d)
            for k in ks:
                params = GameParams(c, k)
                for n in ns:
                    label = f"c={c} t={t} d={d} k={k} n={n} seating={seating}"
                    model = TurnModel.from_seating(seating)
                    got = winners_text(winners_all(params, n, model).winners)
                    result.instances_run += 1
                    if assert_from is None or n < assert_from:
                        result.informational.append(ClaimInfo(label, got))
                    elif got != "none":
                        _fail(result, label, "none", got, params, n, model, got)
    return result


# The five block arrangements the larger-team claim covers: consecutive on
# six seats, split two-and-two, split with a block of at least three,
# consecutive on seven seats, consecutive on eight seats.
LARGE_TEAM_ARRANGEMENTS = ("AAAABB", "AABBAA", "AAABBAA", "AAAAABB", "AAAAAABB")


def large_team_of(seating: str) -> str:
    teams = sorted(set(seating))
    if len(teams) != 2:
        raise ConfigurationError(f"seating {seating!r} must name exactly two teams")
    a, b = teams
    count_a = seating.count(a)
    if {count_a, len(seating) - count_a} != {len(seating) - 2, 2}:
        raise ConfigurationError(
            f"seating {seating!r} must split {len(seating)} seats into "
            f"{len(seating) - 2} and 2"
        )
    return a if count_a > len(seating) - count_a else b


def validate_team_large_wins(
    ps: Iterable[int], ks: Iterable[int], ns: Iterable[int],
    arrangements: Iterable[str] = LARGE_TEAM_ARRANGEMENTS,
) -> None:
    ps = list(ps)
    for seating in arrangements:
        if len(seating) not in ps:
            continue
        if len(seating) < 6:
            raise ConfigurationError(f"seating {seating!r} needs p >= 6")
        large_team_of(seating)
    for n in ns:
        if n < 36:
            raise ConfigurationError(f"n={n} below the large-team hypothesis bound 36")


def check_team_large_wins(
    ps: Iterable[int],
    ks: Iterable[int],
    ns: Iterable[int],
    arrangements: Iterable[str] = LARGE_TEAM_ARRANGEMENTS,
) -> ClaimResult:
    """c=1, two teams of p-2 and 2 seats, p >= 6: the larger team forces the win."""
    ps, ks, ns = list(ps), list(ks), list(ns)
    arrangements = [a for a in arrangements if len(a) in ps]
    validate_team_large_wins(ps, ks, ns, arrangements)
    result = ClaimResult("team-large-wins", CLAIMS["team-large-wins"].source)
    for seating in arrangements:
        expected = large_team_of(seating)
        for k in ks:
            params = GameParams(1, k)
            for n in ns:
                label = f"k={k} n={n} seating={seating}"
                model = TurnModel.from_seating(seating)
                got = winners_text(winners_all(params, n, model).winners)
                result.instances_run += 1
                if got != expected:
                    _fail(result, label, expected, got, params, n, model,
                          got if got != "none" else None)
    return result


# --- registry -------------------------------------------------------------------

@dataclass(frozen=True)
class ClaimSpec:
    claim_id: str
    source: str
    check: Callable[..., ClaimResult]
    validate: Callable[..., None]
    quick: tuple[dict, ...]
    full: tuple[dict, ...]

    def cells(self, profile: str) -> tuple[dict, ...]:
        return self.quick if profile == "quick" else self.full


def _parity_cells_quick() -> tuple[dict, ...]:
    return (
        dict(cs=(1,), ks=(1, 2, 3), ns=range(10, 21)),
        dict(cs=(2,), ks=(1, 2), ns=range(30, 35)),
    )


CLAIMS: dict[str, ClaimSpec] = {}

for _claim in (
    ClaimSpec(
        "two-player-parity",
        "two players: odd c gives the win to the second player, even c to the "
        "first, once n >= (c+1)^3 + (c+1)",
        check_two_player_parity,
        validate_two_player_parity,
        quick=_parity_cells_quick(),
        full=_parity_cells_quick() + (
            dict(cs=(1,), ks=(1, 2, 3), ns=range(21, 25)),
            dict(cs=(2,), ks=(3,), ns=range(30, 35)),
            dict(cs=(3,), ks=(1,), ns=(68, 69)),
        ),
    ),
    ClaimSpec(
        "trib-two-player",
        "Tribonacci, two players: the second player wins for every n > 9",
        check_trib_two_player,
        validate_trib_two_player,
        quick=(dict(ns=range(1, 31)),),
        full=(dict(ns=range(1, 41)),),
    ),
    ClaimSpec(
        "trib-multiplayer",
        "Tribonacci, p >= 3 single players: no player can force the last move "
        "once n >= 7",
        check_multiplayer_no_winner,
        validate_multiplayer_no_winner,
        quick=(dict(cs=(1,), ks=(2,), ps=(3, 4, 5), ns=range(7, 17)),),
        full=(dict(cs=(1,), ks=(2,), ps=(3, 4, 5, 6), ns=range(7, 21)),),
    ),
    ClaimSpec(
        "multiplayer-general",
        "p >= c+2 single players: no player can force the last move once "
        "n >= 3c^2 + 6c + 3",
        check_multiplayer_no_winner,
        validate_multiplayer_no_winner,
        quick=(dict(cs=(1,), ks=(1,), ps=(3,), ns=range(12, 19)),),
        full=(
            dict(cs=(1,), ks=(1,), ps=(3, 4), ns=range(12, 21)),
            dict(cs=(2,), ks=(1,), ps=(4,), ns=(27, 28)),
        ),
    ),
    ClaimSpec(
        "mistake-depth",
        "k > 1: the first turn on which the strategy holder can blunder the "
        "win away is turn c+1, once n >= (c+1)^3 + (c+1)",
        check_mistake_depth,
        validate_mistake_depth,
        quick=(
            dict(cs=(1,), ks=(2,), ns=range(10, 17)),
            dict(cs=(1,), ks=(3,), ns=range(10, 15)),
            dict(cs=(2,), ks=(2,), ns=range(30, 33)),
        ),
        full=(
            dict(cs=(1,), ks=(2,), ns=range(10, 19)),
            dict(cs=(1,), ks=(3,), ns=range(10, 17)),
            dict(cs=(2,), ks=(2, 3), ns=range(30, 33)),
        ),
    ),
    ClaimSpec(
        "team-no-winner",
        "t teams of d = t-c consecutive seats (t >= c+2): no team can force "
        "the win once n >= 2d^2 + 4d",
        check_team_no_winner,
        validate_team_no_winner,
        quick=(dict(cs=(1,), ts=(3,), ks=(1, 2), ns=range(16, 21),
                    bound_profile="stated"),),
        full=(
            dict(cs=(1,), ts=(3,), ks=(1, 2), ns=range(16, 21),
                 bound_profile="stated"),
            dict(cs=(1,), ts=(3,), ks=(1, 2), ns=range(16, 39),
                 bound_profile="lemma"),
        ),
    ),
    ClaimSpec(
        "team-large-wins",
        "c=1, two teams of p-2 and 2 seats (p >= 6): the larger team forces "
        "the win once n >= 36",
        check_team_large_wins,
        validate_team_large_wins,
        quick=(dict(ps=(6, 7), ks=(1,), ns=(36,),
                    arrangements=("AAAABB", "AABBAA", "AAAAABB")),),
        full=(dict(ps=(6, 7, 8), ks=(1, 2), ns=(36, 37),
                   arrangements=LARGE_TEAM_ARRANGEMENTS),),
    ),
):
    CLAIMS[_claim.claim_id] = _claim


PROFILES = ("quick", "full")


def _resolve_cells(claim_id: str, profile: str) -> tuple[ClaimSpec, tuple[dict, ...]]:
    if claim_id not in CLAIMS:
        raise ConfigurationError(
            f"unknown claim {claim_id!r}; valid ids: {', '.join(sorted(CLAIMS))}"
        )
    if profile not in PROFILES:
        raise ConfigurationError(
            f"unknown profile {profile!r}; valid profiles: {', '.join(PROFILES)}"
        )
    spec = CLAIMS[claim_id]
    return spec, spec.cells(profile)


def run_claim(claim_id: str, profile: str = "quick", **overrides) -> ClaimResult:
    """Run one claim. Explicit range overrides replace the profile's ranges
    (starting from the profile's first cell)."""
    spec, cells = _resolve_cells(claim_id, profile)
    if overrides:
        cell = dict(cells[0])
        for key, value in overrides.items():
            if key not in cell:
                raise ConfigurationError(
                    f"claim {claim_id!r} takes no range {key!r}; it takes "
                    f"{', '.join(sorted(cell))}"
                )
            cell[key] = value
        cells = (cell,)
    for cell in cells:
        spec.validate(**cell)  # all bounds checked before any solve
    merged = ClaimResult(claim_id, spec.source)
    for cell in cells:
        merged.merge(spec.check(**cell))
    return merged


def run_all(profile: str = "quick") -> list[ClaimResult]:
    """Run every registered claim; every range is validated up front."""
    if profile not in PROFILES:
        raise ConfigurationError(
            f"unknown profile {profile!r}; valid profiles: {', '.join(PROFILES)}"
        )
    for claim_id in CLAIMS:
        spec, cells = _resolve_cells(claim_id, profile)
        for cell in cells:
            spec.validate(**cell)
    return [run_claim(claim_id, profile) for claim_id in CLAIMS]


def format_result(result: ClaimResult) -> list[str]:
    status = "PASS" if result.passed else "FAIL"
    lines = [f"{status} {result.claim_id}: {result.instances_run} instances, "
             f"{len(result.failures)} failures"]
    lines.append(f"  claim: {result.source}")
    for info in result.informational:
        lines.append(f"  info: {info.label} -> {info.got}")
    for failure in result.failures:
        lines.append(f"  FAIL {failure.label}: expected {failure.expected}, "
                     f"got {failure.got}")
        for line in failure.transcript:
            lines.append(f"    {line}")
    return lines


def result_to_dict(result: ClaimResult) -> dict:
    return {
        "claim": result.claim_id,
        "source": result.source,
        "instances_run": result.instances_run,
        "passed": result.passed,
        "informational": [{"label": i.label, "got": i.got} for i in result.informational],
        "failures": [
            {
                "label": f.label,
                "expected": f.expected,
                "got": f.got,
                "moves": [m.label() for m in f.moves],
                "transcript": f.transcript,
            }
            for f in result.failures
        ],
    }
