"""Command-line surface: solve, verify, export, cache, and interactive play."""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import harness
from .cache import (
    ENV_CACHE_PATH,
    SCHEMA_VERSION,
    CacheRecord,
    append_record,
    cache_stats,
    clear_cache,
    load_cache,
)
from .dot import build_dot
from .engine import canonical_decode, canonical_encode, legal_moves, move_rewrite, wedge_notation
from .play import run_session
from .sequence import GameParams, decompose_greedy, generate_terms
from .solver import (
    ConfigurationError,
    SolveReport,
    TurnModel,
    policy_digest,
    solve_focal,
    solve_two_player,
    winners_all,
)


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def int_list(text: str) -> tuple[int, ...]:
    """Range flag syntax: "7", "3,4,5", or "10..16" (inclusive)."""
    text = text.strip()
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            return tuple(range(int(lo), int(hi) + 1))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad range: {text!r}")
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list: {text!r}")


def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--c", type=positive_int, default=1,
                        help="recurrence constant (default 1)")
    parser.add_argument("--k", type=positive_int, default=1,
                        help="recurrence depth parameter (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zeckgame",
        description="Solve and explore the generalized (c,k)-nacci Zeckendorf game.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_seq = sub.add_parser("seq", help="print sequence terms up to a bound")
    _add_params(p_seq)
    p_seq.add_argument("--bound", type=positive_int, required=True)

    p_dec = sub.add_parser("decompose", help="greedy decomposition of n (the terminal state)")
    _add_params(p_dec)
    p_dec.add_argument("--n", type=positive_int, required=True)
    p_dec.add_argument("--wedge", action="store_true", help="also print wedge notation")
    p_dec.add_argument("--unicode", action="store_true", help="use the real wedge glyph")

    p_moves = sub.add_parser("moves", help="list legal moves of a canonical state")
    _add_params(p_moves)
    p_moves.add_argument("--state", required=True, help='canonical encoding, e.g. "1^3,2^1"')

    p_solve = sub.add_parser("solve", help="who forces the last move (JSON report)")
    _add_params(p_solve)
    p_solve.add_argument("--n", type=positive_int, required=True)
    p_solve.add_argument("--players", type=positive_int,
                         help="number of single-player seats (omit for two players)")
    p_solve.add_argument("--teams", help='seating string, one letter per seat, e.g. "AAAABB"')
    p_solve.add_argument("--focal", help="decide only this team's forced win")
    p_solve.add_argument("--cache", help=f"cache file (default ${ENV_CACHE_PATH})")

    p_verify = sub.add_parser("verify", help="run registered claim sweeps")
    p_verify.add_argument("claim", help='claim id or "all"')
    p_verify.add_argument("--profile", default="quick", help="quick or full")
    p_verify.add_argument("--c", type=int_list, help="override c range")
    p_verify.add_argument("--k", type=int_list, help="override k range")
    p_verify.add_argument("--n", type=int_list, help="override n range, e.g. 10..16")
    p_verify.add_argument("--p", type=int_list, help="override seat-count range")
    p_verify.add_argument("--t", type=int_list, help="override team-count range")
    p_verify.add_argument("--report", help="also write a JSON report to this path")

    p_dot = sub.add_parser("export-dot", help="write the win-colored game DAG as DOT")
    _add_params(p_dot)
    p_dot.add_argument("--n", type=positive_int, required=True)
    p_dot.add_argument("--depth", type=int, help="layer cap (omit for the full DAG)")
    p_dot.add_argument("--out", required=True, help='output path, or "-" for stdout')

    p_play = sub.add_parser("play", help="play the game interactively")
    _add_params(p_play)
    p_play.add_argument("--n", type=positive_int, required=True)
    p_play.add_argument("--players", type=positive_int)
    p_play.add_argument("--teams", help="seating string, one letter per seat")
    p_play.add_argument("--controllers",
                        help='comma list, one of human/engine per seat '
                             '(default: seat 1 human, rest engine)')
    p_play.add_argument("--unicode", action="store_true", help="use the real wedge glyph")

    p_cache = sub.add_parser("cache", help="inspect or clear the solve cache")
    cache_sub = p_cache.add_subparsers(dest="cache_command", required=True)
    for name, help_text in (("stats", "count cached records"),
                            ("clear", "delete the cache file")):
        p = cache_sub.add_parser(name, help=help_text)
        p.add_argument("--cache", help=f"cache file (default ${ENV_CACHE_PATH})")

    return parser


def _turn_model(args: argparse.Namespace) -> TurnModel:
    if args.teams:
        model = TurnModel.from_seating(args.teams)
        if args.players is not None and args.players != model.p:
            raise ConfigurationError(
                f"--players {args.players} does not match seating of {model.p} seats"
            )
        return model
    if args.players is not None:
        return TurnModel.singletons(args.players)
    return TurnModel.two_player()


def report_json_dict(report: SolveReport, cache_hit: bool = False) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "params": {"c": report.params.c, "k": report.params.k},
        "n": report.n,
        "mode": report.mode,
        "players": report.turn_model.p,
        "seating": report.turn_model.seating_text(),
        "winners": list(report.winners),
        "states_visited": report.states_visited,
        "cache_hit": cache_hit,
        "policy_digest": policy_digest(report.policy),
    }


def _record_json_dict(record: CacheRecord) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "params": {"c": record.c, "k": record.k},
        "n": record.n,
        "mode": record.mode,
        "players": record.p,
        "seating": record.seating,
        "winners": list(record.winners),
        "states_visited": record.states_visited,
        "cache_hit": True,
        "policy_digest": record.policy_digest,
    }


def _cache_path(flag_value: str | None) -> str | None:
    return flag_value or os.environ.get(ENV_CACHE_PATH)


def cmd_seq(args: argparse.Namespace) -> int:
    seq = generate_terms(GameParams(args.c, args.k), args.bound)
    print(" ".join(str(term) for term in seq.terms))
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    params = GameParams(args.c, args.k)
    state = decompose_greedy(params, args.n)
    print(canonical_encode(state))
    if args.wedge:
        print(wedge_notation(params, state, args.unicode))
    return 0


def cmd_moves(args: argparse.Namespace) -> int:
    params = GameParams(args.c, args.k)
    state = canonical_decode(args.state)
    for index, move in enumerate(legal_moves(params, state), start=1):
        print(f"[{index}] {move.label()}: {move_rewrite(params, move)}")
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    params = GameParams(args.c, args.k)
    model = _turn_model(args)
    if args.focal is not None:
        # Focal solves answer a narrower question than the cached sweeps, so
        # they bypass the cache entirely.
        report = solve_focal(params, args.n, model.with_focal(args.focal))
        print(json.dumps(report_json_dict(report), separators=(",", ":")))
        return 0
    path = _cache_path(args.cache)
    mode = "two_player" if model.team_of == ("P1", "P2") else (
        "multiplayer" if model.is_singleton() else "team")
    if path:
        records = load_cache(path)
        key = (params.c, params.k, args.n, mode, model.p, model.seating_text())
        if key in records:
            print(json.dumps(_record_json_dict(records[key]), separators=(",", ":")))
            return 0
    if mode == "two_player":
        report = solve_two_player(params, args.n)
    else:
        report = winners_all(params, args.n, model)
    payload = report_json_dict(report)
    if path:
        append_record(path, CacheRecord(
            schema_version=SCHEMA_VERSION,
            c=params.c,
            k=params.k,
            n=args.n,
            mode=mode,
            p=model.p,
            seating=model.seating_text(),
            winners=report.winners,
            states_visited=report.states_visited,
            policy_digest=payload["policy_digest"],
            timestamp=datetime.now(timezone.utc).isoformat(),
        ))
    print(json.dumps(payload, separators=(",", ":")))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    overrides = {}
    for flag, key in (("c", "cs"), ("k", "ks"), ("n", "ns"), ("p", "ps"), ("t", "ts")):
        value = getattr(args, flag)
        if value is not None:
            overrides[key] = value
    if args.claim == "all":
        if overrides:
            raise ConfigurationError("range overrides apply to a single claim, not 'all'")
        results = harness.run_all(args.profile)
    else:
        results = [harness.run_claim(args.claim, args.profile, **overrides)]
    for result in results:
        for line in harness.format_result(result):
            print(line)
    if args.report:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "profile": args.profile,
            "passed": all(result.passed for result in results),
            "results": [harness.result_to_dict(result) for result in results],
        }
        Path(args.report).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return 0 if all(result.passed for result in results) else 1


def cmd_export_dot(args: argparse.Namespace) -> int:
    text = build_dot(GameParams(args.c, args.k), args.n, args.depth)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    return 0


def cmd_play(args: argparse.Namespace) -> int:
    params = GameParams(args.c, args.k)
    model = _turn_model(args)
    if args.controllers:
        controllers = tuple(part.strip() for part in args.controllers.split(","))
    else:
        controllers = ("human",) + ("engine",) * (model.p - 1)
    return run_session(params, args.n, model, controllers,
                       unicode_glyph=args.unicode)


def cmd_cache(args: argparse.Namespace) -> int:
    path = _cache_path(args.cache)
    if not path:
        raise ConfigurationError(
            f"no cache path: pass --cache or set ${ENV_CACHE_PATH}"
        )
    if args.cache_command == "stats":
        stats = cache_stats(path)
        print(f"cache {path}: {sum(stats.values())} records")
        for mode in sorted(stats):
            print(f"  {mode}: {stats[mode]}")
    else:
        count = clear_cache(path)
        print(f"cleared {count} records from {path}")
    return 0


_COMMANDS = {
    "seq": cmd_seq,
    "decompose": cmd_decompose,
    "moves": cmd_moves,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "export-dot": cmd_export_dot,
    "play": cmd_play,
    "cache": cmd_cache,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())
