"""Win-colored DOT export of the reachable game DAG.

Nodes are canonical state strings. Red means the player due to move holds
the winning strategy from that node, blue means the opponent does; the DAG
merges transpositions, so colors are mover-relative rather than tied to
player one or two. Terminal nodes are additionally boxed. Output is a pure
function of the inputs, byte-identical across runs.
"""

from __future__ import annotations

from collections import deque

from .engine import apply_move, canonical_encode, initial_state, legal_moves
from .sequence import GameParams
from .solver import _win_table

MOVER_WINS_COLOR = "#d65c5c"
MOVER_LOSES_COLOR = "#5c5cd6"


def build_dot(params: GameParams, n: int, depth: int | None = None) -> str:
    """DOT text for the DAG reachable from the opening position on n.

    depth bounds the number of expanded edge layers: depth=1 emits the root
    and its children only; None means the full DAG.
    """
    if depth is not None and depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    root = initial_state(n)
    win = _win_table(params, root)
    lines = [
        "digraph game {",
        "  rankdir=TB;",
        "  node [style=filled];",
    ]
    seen = {root}
    queue = deque([(root, 0)])
    while queue:
        state, layer = queue.popleft()
        name = canonical_encode(state)
        moves = legal_moves(params, state)
        attrs = [f'fillcolor="{MOVER_WINS_COLOR if win[state] else MOVER_LOSES_COLOR}"']
        if not moves:
            attrs.append("shape=box")
        lines.append(f'  "{name}" [{", ".join(attrs)}];')
        if depth is not None and layer >= depth:
            continue
        for move in moves:
            child = apply_move(params, state, move)
            lines.append(
                f'  "{name}" -> "{canonical_encode(child)}" [label="{move.label()}"];'
            )
            if child not in seen:
                seen.add(child)
                queue.append((child, layer + 1))
    lines.append("}")
    return "\n".join(lines) + "\n"
