"""Window relaxation operator and Kleene iteration from the top-initialized state.

A valuation is a tuple indexed by vertex.  One relaxation step recomputes every
vertex ``v != s`` as the aggregate, over all windows ``(u_1, ..., u_w, v)`` of
``w`` edges, of ``op(f(u_1), w(e_1), ..., w(e_w))``; the source stays pinned to
the instance seed.
"""

from __future__ import annotations

import logging
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .algebra import (
    DEFAULT_GAMMA,
    AlgebraInstance,
    AxiomReport,
    check_all,
    leq,
)
from .graph import DirectedWeightedGraph, windows_by_terminal

log = logging.getLogger(__name__)


class GateError(RuntimeError):
    """The algebra fails the ordered-axiom gate and no override was given."""

    def __init__(self, message: str, reports: list):
        super().__init__(message)
        self.reports = reports


class InvariantError(AssertionError):
    pass


def init_state(g: DirectedWeightedGraph, s: int, alg: AlgebraInstance) -> tuple:
    if not 0 <= s < g.n:
        raise ValueError(f"source {s} out of range 0..{g.n - 1}")
    return tuple(alg.seed if v == s else alg.top for v in g.vertices)


def relax_step(g: DirectedWeightedGraph, s: int, alg: AlgebraInstance, gamma: str, f: tuple,
               window_width: int = 2, windows: Optional[tuple] = None,
               parallel: bool = False) -> tuple[tuple, int]:
    """Apply the relaxation operator once; returns ``(new valuation, windows examined)``.

    Windows ending at the source are examined too (and discarded by the pin), so
    the count per step is the total number of ``window_width``-edge walks.
    """
    if len(f) != g.n:
        raise ValueError(f"valuation has {len(f)} entries for {g.n} vertices")
    if windows is None:
        windows = windows_by_terminal(g, window_width)
    op = alg.kary_op(gamma, window_width + 1)
    agg, weights = alg.aggregate, g.weights

    def update(v):
        acc = alg.top
        first = True
        for walk in windows[v]:
            args = (f[walk[0]],) + tuple(weights[(a, b)] for a, b in zip(walk, walk[1:]))
            val = op(args)
            acc = val if first else agg(acc, val)
            first = False
        return alg.seed if v == s else acc

    if parallel and g.n > 1:
        with ThreadPoolExecutor() as pool:
            new = tuple(pool.map(update, g.vertices))
    else:
        new = tuple(update(v) for v in g.vertices)
    return new, sum(len(ws) for ws in windows)


def valuation_leq(alg: AlgebraInstance, f: tuple, h: tuple) -> bool:
    return all(leq(alg, a, b) for a, b in zip(f, h))


@dataclass
class RelaxationTrace:
    snapshots: list
    windows_examined: list = field(default_factory=list)
    stabilized: bool = False
    iterations_to_fixpoint: Optional[int] = None
    descending: bool = True

    @property
    def observed(self):
        return self.iterations_to_fixpoint if self.stabilized else "cap-reached"


def check_descending(trace: RelaxationTrace, alg: AlgebraInstance) -> bool:
    snaps = trace.snapshots
    return all(valuation_leq(alg, b, a) for a, b in zip(snaps, snaps[1:]))


def axiom_gate(alg: AlgebraInstance, gamma: str = DEFAULT_GAMMA, sample_budget: int = 1000,
               seed: int = 0) -> list[AxiomReport]:
    """Run the ordered-axiom checks; raise ``GateError`` if any fails."""
    if alg.triple_system_only:
        raise GateError(f"{alg.name} is a triple-system-only instance", [])
    reports = check_all(alg, gamma, sample_budget, seed)
    failed = [r for r in reports if not r.passed]
    if failed:
        raise GateError(
            f"{alg.name} fails {', '.join(r.axiom_name for r in failed)}", reports
        )
    return reports


def solve(g: DirectedWeightedGraph, s: int, alg: AlgebraInstance, gamma: str = DEFAULT_GAMMA,
          window_width: int = 2, max_iterations: Optional[int] = None, force: bool = False,
          gate_budget: int = 1000, parallel: bool = False) -> tuple[tuple, RelaxationTrace]:
    """Iterate the relaxation operator from the initial state until two
    consecutive valuations coincide or ``max_iterations`` operator applications
    have been made (default ``2 |V|``).

    ``iterations_to_fixpoint`` is the smallest ``n`` with ``f(n) == f(n+1)``, so
    confirming it takes ``n + 1`` applications and the trace ends with the
    repeated valuation.  The descending-chain property
    is checked each step; a violation raises unless ``force`` was given, in
    which case it is only recorded on the trace.
    """
    if not force:
        axiom_gate(alg, gamma, gate_budget)
    if max_iterations is None:
        max_iterations = max(1, 2 * g.n)
    if max_iterations < 1:
        raise ValueError("max_iterations must be at least 1")
    windows = windows_by_terminal(g, window_width)
    f = init_state(g, s, alg)
    trace = RelaxationTrace(snapshots=[f])
    for n in range(max_iterations):
        nxt, examined = relax_step(g, s, alg, gamma, f, window_width, windows, parallel)
        trace.windows_examined.append(examined)
        if not valuation_leq(alg, nxt, f):
            trace.descending = False
            if not force:
                raise InvariantError(f"iteration {n + 1} is not below iteration {n}")
            log.warning("descending chain broken at iteration %d", n + 1)
        trace.snapshots.append(nxt)
        if nxt == f:
            trace.stabilized = True
            trace.iterations_to_fixpoint = n
            break
        f = nxt
    return f, trace


def operator_monotonicity_probe(g: DirectedWeightedGraph, s: int, alg: AlgebraInstance,
                                gamma: str = DEFAULT_GAMMA, samples: int = 1000,
                                seed: int = 0, window_width: int = 2) -> AxiomReport:
    """Sample pairs ``f <= h`` and check ``F(f) <= F(h)`` pointwise.

    ``h`` is drawn at random (with top mixed in), ``f`` is ``h`` aggregated with
    a second random valuation, so ``f <= h`` holds by construction.
    """
    rng = random.Random(seed)
    windows = windows_by_terminal(g, window_width)

    def draw():
        return alg.top if rng.random() < 0.25 else alg.sample(rng)

    for i in range(samples):
        h = tuple(draw() for _ in g.vertices)
        f = tuple(alg.aggregate(a, draw()) for a in h)
        fh, _ = relax_step(g, s, alg, gamma, f, window_width, windows)
        hh, _ = relax_step(g, s, alg, gamma, h, window_width, windows)
        for v in g.vertices:
            if not leq(alg, fh[v], hh[v]):
                return AxiomReport("operator-monotonicity", False, i + 1, False, f + h,
                                   fh[v], hh[v], {"vertex": v})
    return AxiomReport("operator-monotonicity", True, samples, False)


def iteration_bound_report(g: DirectedWeightedGraph, trace: RelaxationTrace) -> dict:
    """Compare the observed iteration count with ``|V| - 2`` and ``ceil(L / 2)``."""
    observed = trace.observed
    if not g.is_dag():
        return {"applicable": False, "bound_vertices": None, "bound_halved": None,
                "observed": observed, "within": None}
    longest = g.longest_path_edges()
    bound_vertices = max(g.n - 2, 0)
    bound_halved = math.ceil(longest / 2)
    within = trace.stabilized and observed <= min(bound_vertices, bound_halved)
    return {"applicable": True, "bound_vertices": bound_vertices, "bound_halved": bound_halved,
            "longest_path": longest, "observed": observed, "within": within}
