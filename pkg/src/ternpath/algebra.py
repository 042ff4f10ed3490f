"""Carrier/operation abstraction, canonical order, and axiom checkers.

An algebra is a carrier ``T`` with an idempotent aggregation ``agg`` (the meet of
the canonical order ``a <= b iff agg(a, b) == a``) and a family of ternary
operations indexed by gamma labels.  Finite carriers are the integers
``0..n-1``; the only infinite built-in is min-plus over the integers plus a
formal infinity.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Optional, Sequence

DEFAULT_GAMMA = "g0"


class AlgebraError(ValueError):
    pass


class DomainError(AlgebraError):
    """An element outside the carrier was passed to an operation."""


class UnknownGamma(AlgebraError):
    pass


class _Infinity:
    """Formal +inf for the min-plus carrier.  Singleton; never mixes with floats."""

    __slots__ = ()
    _instance: Optional["_Infinity"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


@dataclass(frozen=True)
class TableOp:
    """An operation of fixed arity given by a flat lookup table (first argument major)."""

    size: int
    arity: int
    table: tuple

    def __post_init__(self):
        if len(self.table) != self.size**self.arity:
            raise AlgebraError(
                f"table for arity {self.arity} over {self.size} elements needs "
                f"{self.size ** self.arity} entries, got {len(self.table)}"
            )

    def __call__(self, *args: int) -> int:
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return self.table[idx]

    def rows(self) -> list:
        """Nested-list form for arity 2 (used by the JSON table format)."""
        n = self.size
        return [list(self.table[i * n:(i + 1) * n]) for i in range(n)]


@dataclass(frozen=True)
class AlgebraInstance:
    """A ternary idempotent Gamma-semiring candidate.

    ``factorization`` is a binary operation ``mul`` with ``op(x, y, z) == mul(mul(x, y), z)``
    when the instance is known to be degenerate.  ``kary`` optionally evaluates
    an operation of any arity on a tuple of arguments (min-plus: the sum).
    ``triple_system_only`` marks instances that are not meant to satisfy the
    ordered axioms; the solver refuses them unless forced.
    """

    aggregate: Callable[[Any, Any], Any]
    ternary: dict
    top: Any
    seed: Any
    size: Optional[int] = None
    factorization: Optional[Callable[[Any, Any], Any]] = None
    kary: Optional[Callable[[tuple], Any]] = field(default=None, compare=False)
    triple_system_only: bool = False
    name: str = field(default="anonymous", compare=False)
    member: Optional[Callable[[Any], bool]] = field(default=None, compare=False)
    sampler: Optional[Callable[[random.Random], Any]] = field(default=None, compare=False)
    parse_literal: Optional[Callable[[Any], Any]] = field(default=None, compare=False)
    render_literal: Optional[Callable[[Any], Any]] = field(default=None, compare=False)

    @property
    def finite(self) -> bool:
        return self.size is not None

    @property
    def gammas(self) -> list:
        return sorted(self.ternary)

    def elements(self) -> range:
        if self.size is None:
            raise AlgebraError(f"{self.name}: carrier is infinite")
        return range(self.size)

    def contains(self, x) -> bool:
        if self.member is not None:
            return self.member(x)
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < self.size

    def require(self, *xs) -> None:
        for x in xs:
            if not self.contains(x):
                raise DomainError(f"{x!r} is not an element of {self.name}")

    def op(self, gamma: str = DEFAULT_GAMMA) -> Callable:
        try:
            return self.ternary[gamma]
        except KeyError:
            raise UnknownGamma(
                f"{self.name}: unknown gamma {gamma!r} (have {', '.join(self.gammas)})"
            ) from None

    def kary_op(self, gamma: str, arity: int) -> Callable[[tuple], Any]:
        """Return a callable taking an ``arity``-tuple.

        Arity 3 is the ternary operation itself.  Other arities use the
        instance's built-in ``kary`` evaluator, or, for odd arity, the
        right-nested composite of the ternary operation (well defined for
        ternary-associative operations).
        """
        tern = self.op(gamma)
        if arity == 3:
            return lambda args: tern(*args)
        if self.kary is not None:
            return self.kary
        if arity >= 3 and arity % 2 == 1:
            def composite(args):
                acc = tern(args[0], args[1], args[2])
                for i in range(3, len(args), 2):
                    acc = tern(acc, args[i], args[i + 1])
                return acc

            return composite
        raise AlgebraError(
            f"{self.name}: no {arity}-ary operation available "
            "(even arity needs a built-in k-ary evaluator)"
        )

    def sample(self, rng: random.Random):
        if self.sampler is not None:
            return self.sampler(rng)
        return rng.randrange(self.size)

    def parse(self, literal):
        if self.parse_literal is not None:
            x = self.parse_literal(literal)
        else:
            try:
                x = int(literal)
            except (TypeError, ValueError):
                raise DomainError(f"invalid carrier index literal {literal!r}") from None
        self.require(x)
        return x

    def render(self, x):
        if self.render_literal is not None:
            return self.render_literal(x)
        return x


def leq(alg: AlgebraInstance, a, b) -> bool:
    """Canonical order: ``a <= b`` iff aggregating them gives back ``a``."""
    alg.require(a, b)
    return alg.aggregate(a, b) == a


def aggregate_all(alg: AlgebraInstance, items: Iterable):
    acc = alg.top
    first = True
    for x in items:
        alg.require(x)
        acc = x if first else alg.aggregate(acc, x)
        first = False
    return acc


@dataclass
class AxiomReport:
    axiom_name: str
    passed: bool
    checked: int
    exhaustive: bool
    witness: Optional[tuple] = None
    lhs: Any = None
    rhs: Any = None
    detail: dict = field(default_factory=dict)

    def to_json(self, render=lambda x: x) -> dict:
        out = {
            "axiom": self.axiom_name,
            "passed": self.passed,
            "checked": self.checked,
            "exhaustive": self.exhaustive,
        }
        if not self.passed:
            out["witness"] = [render(x) for x in self.witness]
            out["lhs"] = render(self.lhs)
            out["rhs"] = render(self.rhs)
            out.update(self.detail)
        return out


def _tuples(alg: AlgebraInstance, arity: int, budget: int, seed: int):
    """Canonically ordered full tuple space when it fits the budget, else seeded samples."""
    if alg.finite and alg.size**arity <= budget:
        return itertools.product(alg.elements(), repeat=arity), True
    rng = random.Random(seed)
    return (tuple(alg.sample(rng) for _ in range(arity)) for _ in range(budget)), False


def check_semilattice(alg: AlgebraInstance, sample_budget: int = 1000, seed: int = 0) -> AxiomReport:
    agg = alg.aggregate
    checked = 0
    tuples, exhaustive = _tuples(alg, 3, sample_budget, seed)
    for a, b, c in tuples:
        checked += 1
        if agg(a, a) != a:
            return AxiomReport("semilattice", False, checked, exhaustive, (a,), agg(a, a), a,
                               {"law": "idempotency"})
        if agg(a, b) != agg(b, a):
            return AxiomReport("semilattice", False, checked, exhaustive, (a, b), agg(a, b),
                               agg(b, a), {"law": "commutativity"})
        lhs, rhs = agg(agg(a, b), c), agg(a, agg(b, c))
        if lhs != rhs:
            return AxiomReport("semilattice", False, checked, exhaustive, (a, b, c), lhs, rhs,
                               {"law": "associativity"})
    return AxiomReport("semilattice", True, checked, exhaustive)


def check_top(alg: AlgebraInstance, sample_budget: int = 1000, seed: int = 0) -> AxiomReport:
    """The declared top must be the order maximum: ``agg(a, top) == a`` for every ``a``."""
    if alg.finite and alg.size <= sample_budget:
        items, exhaustive = alg.elements(), True
    else:
        rng = random.Random(seed)
        items, exhaustive = (alg.sample(rng) for _ in range(sample_budget)), False
    checked = 0
    for a in items:
        checked += 1
        got = alg.aggregate(a, alg.top)
        if got != a:
            return AxiomReport("top-maximum", False, checked, exhaustive, (a,), got, a,
                               {"top": alg.render(alg.top)})
    return AxiomReport("top-maximum", True, checked, exhaustive)


def check_ternary_associativity(
    alg: AlgebraInstance, gamma: str = DEFAULT_GAMMA, sample_budget: int = 100_000, seed: int = 0
) -> AxiomReport:
    """All three nestings of a quintuple must agree."""
    t = alg.op(gamma)
    checked = 0
    tuples, exhaustive = _tuples(alg, 5, sample_budget, seed)
    for x, y, z, u, v in tuples:
        checked += 1
        left = t(t(x, y, z), u, v)
        mid = t(x, t(y, z, u), v)
        right = t(x, y, t(z, u, v))
        if left != mid:
            return AxiomReport("ternary-associativity", False, checked, exhaustive,
                               (x, y, z, u, v), left, mid,
                               {"gamma": gamma, "nesting": "left-vs-middle"})
        if mid != right:
            return AxiomReport("ternary-associativity", False, checked, exhaustive,
                               (x, y, z, u, v), mid, right,
                               {"gamma": gamma, "nesting": "middle-vs-right"})
    return AxiomReport("ternary-associativity", True, checked, exhaustive)


def _substitute(others: Sequence, coord: int, value) -> tuple:
    args = list(others)
    args.insert(coord, value)
    return tuple(args)


def _monotone_cases(alg: AlgebraInstance, budget: int, seed: int) -> tuple[Iterator, bool]:
    if alg.finite and 3 * alg.size**4 <= budget:
        elems = alg.elements()
        cases = (
            (coord, a, b, others)
            for coord in range(3)
            for a in elems
            for b in elems
            for others in itertools.product(elems, repeat=2)
        )
        return cases, True
    rng = random.Random(seed)

    def sampled():
        for i in range(budget):
            a, b = alg.sample(rng), alg.sample(rng)
            others = (alg.sample(rng), alg.sample(rng))
            # agg(a, b) <= a always holds, giving a comparable pair
            yield i % 3, alg.aggregate(a, b), a, others

    return sampled(), False


def check_monotonicity(
    alg: AlgebraInstance, gamma: str = DEFAULT_GAMMA, sample_budget: int = 100_000, seed: int = 0
) -> AxiomReport:
    """For every coordinate and comparable pair ``a <= b``, ``op(..a..) <= op(..b..)``.

    Witness coordinates in ``detail`` are 1-based.
    """
    t = alg.op(gamma)
    agg = alg.aggregate
    checked = 0
    cases, exhaustive = _monotone_cases(alg, sample_budget, seed)
    for coord, a, b, others in cases:
        if agg(a, b) != a:
            continue
        checked += 1
        lo_args, hi_args = _substitute(others, coord, a), _substitute(others, coord, b)
        lo, hi = t(*lo_args), t(*hi_args)
        if agg(lo, hi) != lo:
            return AxiomReport("monotonicity", False, checked, exhaustive, lo_args + hi_args, lo, hi,
                               {"gamma": gamma, "coordinate": coord + 1,
                                "pair": [alg.render(a), alg.render(b)]})
    return AxiomReport("monotonicity", True, checked, exhaustive)


def check_distributivity(
    alg: AlgebraInstance, gamma: str = DEFAULT_GAMMA, sample_budget: int = 100_000, seed: int = 0
) -> AxiomReport:
    """``op(x agg x', y, z) == agg(op(x, y, z), op(x', y, z))`` in every coordinate."""
    t = alg.op(gamma)
    agg = alg.aggregate
    if alg.finite and 3 * alg.size**4 <= sample_budget:
        elems = alg.elements()
        cases = (
            (coord, x, x2, others)
            for coord in range(3)
            for x in elems
            for x2 in elems
            for others in itertools.product(elems, repeat=2)
        )
        exhaustive = True
    else:
        rng = random.Random(seed)
        cases = (
            (i % 3, alg.sample(rng), alg.sample(rng), (alg.sample(rng), alg.sample(rng)))
            for i in range(sample_budget)
        )
        exhaustive = False
    checked = 0
    for coord, x, x2, others in cases:
        checked += 1
        lhs = t(*_substitute(others, coord, agg(x, x2)))
        rhs = agg(t(*_substitute(others, coord, x)), t(*_substitute(others, coord, x2)))
        if lhs != rhs:
            return AxiomReport("distributivity", False, checked, exhaustive,
                               _substitute(others, coord, x) + _substitute(others, coord, x2),
                               lhs, rhs, {"gamma": gamma, "coordinate": coord + 1})
    return AxiomReport("distributivity", True, checked, exhaustive)


def check_all(
    alg: AlgebraInstance, gamma: Optional[str] = None, sample_budget: int = 1000, seed: int = 0
) -> list[AxiomReport]:
    """Every ordered axiom (semilattice, top, and the three per-gamma laws)."""
    reports = [check_semilattice(alg, sample_budget, seed), check_top(alg, sample_budget, seed)]
    for g in ([gamma] if gamma is not None else alg.gammas):
        reports.append(check_ternary_associativity(alg, g, sample_budget, seed))
        reports.append(check_monotonicity(alg, g, sample_budget, seed))
        reports.append(check_distributivity(alg, g, sample_budget, seed))
    return reports


def check_factorization(alg: AlgebraInstance, gamma: str = DEFAULT_GAMMA,
                        sample_budget: int = 1000, seed: int = 0) -> AxiomReport:
    """Declared ``mul`` must satisfy ``op(x, y, z) == mul(mul(x, y), z)``."""
    if alg.factorization is None:
        raise AlgebraError(f"{alg.name} declares no factorization")
    t, mul = alg.op(gamma), alg.factorization
    tuples, exhaustive = _tuples(alg, 3, sample_budget, seed)
    checked = 0
    for x, y, z in tuples:
        checked += 1
        lhs, rhs = t(x, y, z), mul(mul(x, y), z)
        if lhs != rhs:
            return AxiomReport("factorization", False, checked, exhaustive, (x, y, z), lhs, rhs,
                               {"gamma": gamma})
    return AxiomReport("factorization", True, checked, exhaustive)
