"""Window-fold path costs, ternary parenthesizations, and the path-enumeration oracle.

Two cost families are kept apart because a ternary contraction removes two
items at a time:

* ``fold_odd`` contracts an odd-length weight sequence to one element;
* ``seeded_fold`` starts from a seed and consumes ``width`` weights per window,
  which is exactly what the relaxation operator computes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .algebra import AlgebraError, AlgebraInstance, aggregate_all
from .graph import DirectedWeightedGraph


class ParityError(AlgebraError):
    pass


def fold_odd(alg: AlgebraInstance, gamma: str, ws: Sequence):
    """``Fold(w1..wk) = [Fold(w1..w_{k-2}), w_{k-1}, w_k]`` with base ``[w1, w2, w3]``."""
    k = len(ws)
    if k < 3 or k % 2 == 0:
        raise ParityError(f"fold_odd needs an odd length >= 3, got {k}")
    t = alg.op(gamma)
    acc = t(ws[0], ws[1], ws[2])
    for i in range(3, k, 2):
        acc = t(acc, ws[i], ws[i + 1])
    return acc


def fold_reused_window(alg: AlgebraInstance, gamma: str, ws: Sequence):
    """The recursion ``L(w1..wk) = [L(w1..w_{k-1}), w_{k-1}, w_k]``.

    Reuses ``w_{k-1}`` at every step, so under min-plus it double counts the
    interior weights.  Kept for comparison with ``fold_odd`` only.
    """
    k = len(ws)
    if k < 3:
        raise ParityError(f"reused-window fold needs length >= 3, got {k}")
    t = alg.op(gamma)
    acc = t(ws[0], ws[1], ws[2])
    for j in range(4, k + 1):
        acc = t(acc, ws[j - 2], ws[j - 1])
    return acc


def seeded_fold(alg: AlgebraInstance, gamma: str, seed, ws: Sequence, width: int = 2):
    """Left fold from ``seed`` taking ``width`` weights per window.

    ``width = 2`` uses the ternary operation; wider windows use the
    ``(width + 1)``-ary operation of the instance.  An empty sequence returns
    the seed (the trivial path at the source).
    """
    if width < 2:
        raise ValueError(f"window width must be at least 2, got {width}")
    if len(ws) % width:
        raise ParityError(f"seeded_fold with width {width} needs a multiple of {width} weights, "
                          f"got {len(ws)}")
    op = alg.kary_op(gamma, width + 1)
    state = seed
    for i in range(0, len(ws), width):
        state = op((state,) + tuple(ws[i:i + width]))
    return state


# -- parenthesizations ------------------------------------------------------
#
# A tree is a leaf position (int, 0-based) or a 3-tuple of subtrees whose
# leaf spans are consecutive.

def _leaves(tree) -> list:
    if isinstance(tree, int):
        return [tree]
    out = []
    for child in tree:
        out.extend(_leaves(child))
    return out


def tree_leaves(tree) -> list:
    return _leaves(tree)


@lru_cache(maxsize=None)
def _contractions(state: tuple) -> frozenset:
    if len(state) == 1:
        return frozenset(state)
    found = set()
    for i in range(len(state) - 2):
        found |= _contractions(state[:i] + (state[i:i + 3],) + state[i + 3:])
    return frozenset(found)


def enumerate_parenthesizations(k: int) -> list:
    """All ternary trees over ``k`` leaves reachable by contracting consecutive triples.

    Contraction sequences that commute land on the same tree, so the result is
    deduplicated by shape.  Sorted by repr for determinism.
    """
    if k < 3 or k % 2 == 0:
        raise ParityError(f"parenthesizations exist only for odd k >= 3, got {k}")
    return sorted(_contractions(tuple(range(k))), key=repr)


def eval_parenthesization(alg: AlgebraInstance, gamma: str, tree, ws: Sequence):
    leaves = _leaves(tree)
    if len(leaves) != len(ws):
        raise AlgebraError(f"tree has {len(leaves)} leaves but {len(ws)} weights were given")
    t = alg.op(gamma)

    def ev(node):
        if isinstance(node, int):
            return ws[node]
        a, b, c = node
        return t(ev(a), ev(b), ev(c))

    return ev(tree)


def path_cost(alg: AlgebraInstance, gamma: str, g: DirectedWeightedGraph, path: Sequence[int],
              reuse_window: bool = False):
    if len(path) < 2 or not g.is_path(path):
        raise ValueError(f"{list(path)} is not a directed path in the graph")
    ws = g.path_weights(path)
    if reuse_window:
        return fold_reused_window(alg, gamma, ws)
    return fold_odd(alg, gamma, ws)


# -- brute-force oracle ------------------------------------------------------

def enumerate_paths(g: DirectedWeightedGraph, s: int, t: int, max_edges: int,
                    allow_revisits: bool = False) -> list:
    """Directed paths from ``s`` to ``t`` with 1..max_edges edges (simple unless revisits allowed)."""
    out = []
    stack = [(s,)]
    while stack:
        path = stack.pop()
        if len(path) > 1 and path[-1] == t:
            out.append(path)
        if len(path) - 1 == max_edges:
            continue
        for v in g.succ[path[-1]]:
            if allow_revisits or v not in path:
                stack.append(path + (v,))
    return sorted(out)


@dataclass
class OracleResult:
    even_opt: object
    odd_opt: object
    even_paths: int
    odd_paths: int


def oracle_opt(alg: AlgebraInstance, gamma: str, g: DirectedWeightedGraph, s: int, t: int,
               max_edges: Optional[int] = None, width: int = 2,
               allow_revisits: bool = False) -> OracleResult:
    """Aggregate path costs from ``s`` to ``t`` by explicit enumeration.

    ``even_opt`` aggregates ``seeded_fold(seed, .)`` over paths whose edge count
    is a positive multiple of ``width``; at ``t == s`` the empty path
    contributes the seed, matching the pinned source of the relaxation
    operator.  ``odd_opt`` aggregates ``fold_odd`` over odd paths with at least
    3 edges.  Paths shorter than 2 edges carry no cost.  Empty families give top.
    """
    if max_edges is None:
        max_edges = g.n if not allow_revisits else 2 * g.n
    seeded, odd = [], []
    if s == t:
        seeded.append(alg.seed)
    for path in enumerate_paths(g, s, t, max_edges, allow_revisits):
        ws = g.path_weights(path)
        k = len(ws)
        if k < 2:
            continue
        if k % width == 0:
            seeded.append(seeded_fold(alg, gamma, alg.seed, ws, width))
        if k % 2 == 1:
            odd.append(fold_odd(alg, gamma, ws))
    return OracleResult(aggregate_all(alg, seeded), aggregate_all(alg, odd),
                        len(seeded), len(odd))

