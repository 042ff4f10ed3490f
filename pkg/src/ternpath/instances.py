"""Built-in algebra instances and the JSON table-algebra loader."""

from __future__ import annotations

import json
import random
from pathlib import Path

from .algebra import (
    DEFAULT_GAMMA,
    INF,
    AlgebraError,
    AlgebraInstance,
    DomainError,
    TableOp,
    check_factorization,
    check_semilattice,
    check_top,
)


class TableFormatError(AlgebraError):
    pass


# -- min-plus ---------------------------------------------------------------

def _is_extended_int(x) -> bool:
    return x is INF or (isinstance(x, int) and not isinstance(x, bool))


def _mp_min(a, b):
    if a is INF:
        return b
    if b is INF:
        return a
    return a if a <= b else b


def _mp_add(a, b):
    if a is INF or b is INF:
        return INF
    return a + b


def _mp_sum3(x, y, z):
    if x is INF or y is INF or z is INF:
        return INF
    return x + y + z


def _mp_sum(args):
    total = 0
    for a in args:
        if a is INF:
            return INF
        total += a
    return total


def _mp_sample(rng: random.Random):
    if rng.random() < 0.1:
        return INF
    return rng.randint(-50, 50)


def _mp_parse(literal):
    if isinstance(literal, str):
        text = literal.strip().lower()
        if text in ("inf", "+inf"):
            return INF
        try:
            return int(text, 10)
        except ValueError:
            raise DomainError(f"invalid min-plus weight literal {literal!r}") from None
    if isinstance(literal, int) and not isinstance(literal, bool):
        return literal
    raise DomainError(f"invalid min-plus weight literal {literal!r}")


def _mp_render(x):
    return "inf" if x is INF else x


def minplus_degenerate() -> AlgebraInstance:
    """Integers plus +inf under min, with ``[x, y, z] = x + y + z`` (factors through +)."""
    return AlgebraInstance(
        aggregate=_mp_min,
        ternary={DEFAULT_GAMMA: _mp_sum3},
        top=INF,
        seed=0,
        size=None,
        factorization=_mp_add,
        kary=_mp_sum,
        name="minplus-degenerate",
        member=_is_extended_int,
        sampler=_mp_sample,
        parse_literal=_mp_parse,
        render_literal=_mp_render,
    )


# -- finite tables ----------------------------------------------------------

AND_TABLE = (0, 0, 0, 1)
OR_TABLE = (0, 1, 1, 1)


def table_algebra(
    size: int,
    aggregate: tuple,
    ternary: dict,
    top: int,
    seed: int,
    factorization: tuple | None = None,
    name: str = "table",
    triple_system_only: bool = False,
) -> AlgebraInstance:
    """Build an instance from flat tables (binary tables are row-major, ternary x-major)."""
    return AlgebraInstance(
        aggregate=TableOp(size, 2, tuple(aggregate)),
        ternary={g: TableOp(size, 3, tuple(t)) for g, t in ternary.items()},
        top=top,
        seed=seed,
        size=size,
        factorization=None if factorization is None else TableOp(size, 2, tuple(factorization)),
        triple_system_only=triple_system_only,
        name=name,
    )


def bool_f2(aggregate: tuple = AND_TABLE) -> AlgebraInstance:
    """{0, 1} with ``[x, y, z] = 1 ^ x ^ y ^ z``.

    Ternary-associative but admits no associative binary factorization.  It
    satisfies no ordered axiom set, so it is flagged triple-system-only;
    ``aggregate`` picks which 2-element semilattice supplies the order.
    """
    tern = tuple(1 ^ x ^ y ^ z for x in (0, 1) for y in (0, 1) for z in (0, 1))
    top = 1 if tuple(aggregate) == AND_TABLE else 0
    return table_algebra(2, aggregate, {DEFAULT_GAMMA: tern}, top=top, seed=1 - top,
                         name="bool-f2", triple_system_only=True)


def _flat_binary(rows, n: int, what: str) -> tuple:
    if not isinstance(rows, list) or len(rows) != n:
        raise TableFormatError(f"{what}: expected {n} rows")
    flat = []
    for row in rows:
        if not isinstance(row, list) or len(row) != n:
            raise TableFormatError(f"{what}: every row must have {n} entries")
        flat.extend(row)
    return tuple(_check_indices(flat, n, what))


def _check_indices(values, n: int, what: str) -> list:
    out = []
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
            raise TableFormatError(f"{what}: entry {v!r} is not an index below {n}")
        out.append(v)
    return out


def table_from_dict(doc: dict, name: str = "table") -> AlgebraInstance:
    """Validate an algebra-table document and build the instance.

    Rejects bad cardinalities, out-of-range indices, aggregations that are not
    semilattices, a top that is not the order maximum, and a declared
    factorization that does not reproduce every ternary table.
    """
    if not isinstance(doc, dict):
        raise TableFormatError("algebra table must be a JSON object")
    n = doc.get("carrier_size")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise TableFormatError("carrier_size must be a positive integer")
    for key in ("aggregate", "ternary", "top", "seed"):
        if key not in doc:
            raise TableFormatError(f"missing key {key!r}")
    agg = _flat_binary(doc["aggregate"], n, "aggregate")
    ternary_doc = doc["ternary"]
    if not isinstance(ternary_doc, dict) or not ternary_doc:
        raise TableFormatError("ternary must be a non-empty object keyed by gamma label")
    ternary = {}
    for gamma, flat in ternary_doc.items():
        if not isinstance(flat, list) or len(flat) != n**3:
            raise TableFormatError(f"ternary[{gamma!r}] must hold {n ** 3} entries")
        ternary[str(gamma)] = tuple(_check_indices(flat, n, f"ternary[{gamma!r}]"))
    top, seed = _check_indices([doc["top"], doc["seed"]], n, "top/seed")
    fact = doc.get("factorization")
    if fact is not None:
        fact = _flat_binary(fact, n, "factorization")

    alg = table_algebra(n, agg, ternary, top, seed, fact, name=name,
                        triple_system_only=bool(doc.get("triple_system_only", False)))
    budget = max(1000, n**3)
    report = check_semilattice(alg, budget)
    if not report.passed:
        raise TableFormatError(
            f"aggregate is not a semilattice ({report.detail['law']} fails at {report.witness}: "
            f"{report.lhs} != {report.rhs})"
        )
    report = check_top(alg, budget)
    if not report.passed:
        raise TableFormatError(
            f"declared top {top} is not the order maximum: agg({report.witness[0]}, {top}) = "
            f"{report.lhs}"
        )
    if fact is not None:
        for gamma in alg.gammas:
            report = check_factorization(alg, gamma, budget)
            if not report.passed:
                raise TableFormatError(
                    f"declared factorization does not reproduce ternary[{gamma!r}] at "
                    f"{report.witness}: {report.lhs} != {report.rhs}"
                )
    return alg


def load_table(path) -> AlgebraInstance:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"{path}: {exc}") from None
    return table_from_dict(doc, name=f"table:{path}")


def table_to_dict(alg: AlgebraInstance) -> dict:
    if not alg.finite or not isinstance(alg.aggregate, TableOp):
        raise AlgebraError(f"{alg.name} is not a table algebra")
    doc = {
        "carrier_size": alg.size,
        "aggregate": alg.aggregate.rows(),
        "ternary": {g: list(alg.ternary[g].table) for g in alg.gammas},
        "top": alg.top,
        "seed": alg.seed,
    }
    if alg.factorization is not None:
        doc["factorization"] = alg.factorization.rows()
    if alg.triple_system_only:
        doc["triple_system_only"] = True
    return doc


def dump_table(alg: AlgebraInstance, path) -> None:
    Path(path).write_text(json.dumps(table_to_dict(alg), indent=2) + "\n")


def resolve(selector: str) -> AlgebraInstance:
    """Map a CLI selector (``minplus``, ``boolf2``, ``table:<path>``) to an instance."""
    if selector in ("minplus", "minplus-degenerate"):
        return minplus_degenerate()
    if selector in ("boolf2", "bool-f2"):
        return bool_f2()
    if selector.startswith("table:"):
        return load_table(selector[len("table:"):])
    raise AlgebraError(f"unknown algebra selector {selector!r}")
