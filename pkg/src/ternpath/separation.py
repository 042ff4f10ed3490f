"""Separation of ternary associativity from binary factorization, and finite model search.

Everything here works on raw flat tables so the searches can be partitioned
across worker processes.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from .algebra import (
    DEFAULT_GAMMA,
    AlgebraError,
    AlgebraInstance,
    check_distributivity,
    check_monotonicity,
    check_ternary_associativity,
)
from .instances import bool_f2, table_algebra, table_to_dict

FACTORIZATION_BUDGET = 3**9


def binary_associative(n: int, mul: tuple) -> bool:
    for a, b, c in itertools.product(range(n), repeat=3):
        if mul[mul[a * n + b] * n + c] != mul[a * n + mul[b * n + c]]:
            return False
    return True


def factors(n: int, tern: tuple, mul: tuple) -> bool:
    """``tern(x, y, z) == mul(mul(x, y), z)`` on every triple."""
    for idx, (x, y, z) in enumerate(itertools.product(range(n), repeat=3)):
        if tern[idx] != mul[mul[x * n + y] * n + z]:
            return False
    return True


@dataclass
class FactorizationReport:
    searched: int
    associative_count: int
    witnesses: list = field(default_factory=list)
    exhaustive: bool = True

    def to_json(self) -> dict:
        return asdict(self)


def _factorizations(n: int, tern: tuple) -> FactorizationReport:
    report = FactorizationReport(searched=0, associative_count=0)
    for mul in itertools.product(range(n), repeat=n * n):
        report.searched += 1
        if not binary_associative(n, mul):
            continue
        report.associative_count += 1
        if factors(n, tern, mul):
            report.witnesses.append(list(mul))
    return report


def search_binary_factorization(alg: AlgebraInstance, gamma: str = DEFAULT_GAMMA,
                                budget: int = FACTORIZATION_BUDGET) -> FactorizationReport:
    """Enumerate every binary table on the carrier; keep the associative ones that factor ``gamma``.

    Witnesses are flat row-major tables.
    """
    if not alg.finite:
        raise AlgebraError(f"{alg.name}: factorization search needs a finite carrier")
    n = alg.size
    required = n ** (n * n)
    if required > budget:
        raise AlgebraError(f"factorization search over {n} elements needs {required} tables, "
                           f"budget is {budget}")
    t = alg.op(gamma)
    tern = tuple(t(x, y, z) for x, y, z in itertools.product(range(n), repeat=3))
    return _factorizations(n, tern)


def verify_separation(alg: Optional[AlgebraInstance] = None,
                      gamma: str = DEFAULT_GAMMA) -> dict:
    """Ternary associativity plus exhaustive factorization search (default: the F2 instance)."""
    if alg is None:
        alg = bool_f2()
    assoc = check_ternary_associativity(alg, gamma, sample_budget=alg.size**5)
    fact = search_binary_factorization(alg, gamma)
    return {"associativity": assoc, "factorization": fact}


# -- finite TTGS search ------------------------------------------------------

def semilattice_tables(n: int) -> list:
    """All idempotent, commutative, associative binary tables on ``range(n)``."""
    out = []
    for t in itertools.product(range(n), repeat=n * n):
        if any(t[a * n + a] != a for a in range(n)):
            continue
        if any(t[a * n + b] != t[b * n + a] for a in range(n) for b in range(n)):
            continue
        if binary_associative(n, t):
            out.append(t)
    return out


def order_top(n: int, agg: tuple) -> Optional[int]:
    """The element ``t`` with ``agg(a, t) == a`` for all ``a``, if any."""
    for t in range(n):
        if all(agg[a * n + t] == a for a in range(n)):
            return t
    return None


def order_bottom(n: int, agg: tuple) -> Optional[int]:
    for b in range(n):
        if all(agg[a * n + b] == b for a in range(n)):
            return b
    return None


def left_identity(n: int, mul: tuple) -> Optional[int]:
    for e in range(n):
        if all(mul[e * n + a] == a for a in range(n)):
            return e
    return None


@dataclass
class TTGSSearchReport:
    carrier_size: int
    semilattices_tried: int
    complete_semilattices: int
    ternary_ops_tried: int
    combinations: int
    survivors: dict
    found: list
    degenerate_survivors: int
    exhaustive: bool
    seed: Optional[int] = None
    budget: Optional[int] = None

    def to_json(self) -> dict:
        return asdict(self)


def _gate(n: int, agg: tuple, tern: tuple, top: int):
    """Run the gate chain on one combination; return the name of the first failing stage."""
    alg = table_algebra(n, agg, {DEFAULT_GAMMA: tern}, top=top, seed=top)
    budget = 3 * n**5
    for name, check in (("associativity", check_ternary_associativity),
                        ("monotonicity", check_monotonicity),
                        ("distributivity", check_distributivity)):
        if not check(alg, DEFAULT_GAMMA, budget).passed:
            return name, None
    return None, _factorizations(n, tern)


def _examine(args):
    n, agg, tern, top = args
    failed, fact = _gate(n, agg, tern, top)
    return agg, tern, top, failed, fact


def _instance_doc(n: int, agg: tuple, tern: tuple, top: int, fact: FactorizationReport) -> dict:
    mul = tuple(fact.witnesses[0]) if fact.witnesses else None
    seed = None
    if mul is not None:
        seed = left_identity(n, mul)
    if seed is None:
        seed = order_bottom(n, agg)
    if seed is None:
        seed = top
    alg = table_algebra(n, agg, {DEFAULT_GAMMA: tern}, top=top, seed=seed, factorization=mul)
    return table_to_dict(alg)


def search_nondegenerate_ttgs(carrier_size: int, budget: int = 10_000, seed: int = 0,
                              parallel: bool = False) -> TTGSSearchReport:
    """Search small carriers for ordered instances with no binary factorization.

    Sizes 1 and 2 enumerate every ternary table; size 3 enumerates every
    semilattice but samples ``budget`` ternary tables from ``random.Random(seed)``.
    Only semilattices with a top element (complete ones) are paired with
    ternary tables.  Gate order: associativity, monotonicity, distributivity,
    then factorization.
    """
    n = carrier_size
    if n < 1:
        raise ValueError("carrier size must be at least 1")
    if n > 3:
        raise ValueError("carrier sizes above 3 are not supported (semilattice enumeration "
                         f"needs {n ** (n * n)} tables)")
    if budget < 1:
        raise ValueError("budget must be positive")
    lattices = semilattice_tables(n)
    complete = [(agg, order_top(n, agg)) for agg in lattices if order_top(n, agg) is not None]
    space = n ** (n**3)
    exhaustive = space <= budget or n <= 2
    if exhaustive:
        terns = list(itertools.product(range(n), repeat=n**3))
    else:
        rng = random.Random(seed)
        terns = [tuple(rng.randrange(n) for _ in range(n**3)) for _ in range(budget)]

    jobs = [(n, agg, tern, top) for agg, top in complete for tern in terns]
    if parallel:
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(_examine, jobs, chunksize=64))
    else:
        results = [_examine(job) for job in jobs]

    survivors = {"associativity": 0, "monotonicity": 0, "distributivity": 0}
    found, degenerate = [], 0
    for agg, tern, top, failed, fact in results:
        for stage in survivors:
            if stage == failed:
                break
            survivors[stage] += 1
        if failed is not None:
            continue
        if fact.witnesses:
            degenerate += 1
        else:
            found.append(_instance_doc(n, agg, tern, top, fact))
    found.sort(key=lambda d: (d["aggregate"], d["ternary"][DEFAULT_GAMMA]))
    return TTGSSearchReport(
        carrier_size=n,
        semilattices_tried=len(lattices),
        complete_semilattices=len(complete),
        ternary_ops_tried=len(terns),
        combinations=len(jobs),
        survivors=survivors,
        found=found,
        degenerate_survivors=degenerate,
        exhaustive=exhaustive,
        seed=None if exhaustive else seed,
        budget=None if exhaustive else budget,
    )
