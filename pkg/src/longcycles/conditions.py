"""Good pairs and the Meyniel-type degree conditions on them.

A *good pair* is an unordered pair of non-adjacent vertices that share a
common in-neighbour (and, in the wider mode, alternatively a common
out-neighbour).  Each condition below is a degree inequality that must hold
for every pair of the relevant kind.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

from .digraph import Digraph

__all__ = [
    "PairMode",
    "WitnessKind",
    "Condition",
    "GoodPair",
    "Violation",
    "ConditionReport",
    "MinSemidegree",
    "good_pairs",
    "nonadjacent_pairs",
    "check_star",
    "check_star_star",
    "check_theorem_c",
    "check_meyniel",
    "check_condition",
    "check_all",
    "satisfies",
    "min_semidegree",
]


class PairMode(enum.Enum):
    IN_ONLY = "in"
    IN_OR_OUT = "in_or_out"


class WitnessKind(enum.Enum):
    COMMON_IN = "CommonInNeighbour"
    COMMON_OUT = "CommonOutNeighbour"


class Condition(enum.Enum):
    MEYNIEL = "Meyniel"
    STAR = "Star"
    STAR_STAR = "StarStar"
    THEOREM_C = "TheoremC"


@dataclass(frozen=True)
class GoodPair:
    """Non-adjacent ``x < y`` with the smallest common in/out-neighbour, if any."""

    x: int
    y: int
    in_witness: int | None = None
    out_witness: int | None = None

    @property
    def witness(self) -> int | None:
        return self.in_witness if self.in_witness is not None else self.out_witness

    @property
    def witness_kind(self) -> WitnessKind | None:
        if self.in_witness is not None:
            return WitnessKind.COMMON_IN
        if self.out_witness is not None:
            return WitnessKind.COMMON_OUT
        return None

    @property
    def pair(self) -> tuple[int, int]:
        return self.x, self.y


def _lowest(mask: int) -> int | None:
    return (mask & -mask).bit_length() - 1 if mask else None


def nonadjacent_pairs(D: Digraph) -> Iterator[GoodPair]:
    """Every pair with ``a(x, y) = 0``, lexicographic, witnesses filled where present."""
    full = D.vertex_mask
    out, inn = D._out, D._in
    for x in D.vertices:
        later = full & ~((1 << (x + 1)) - 1)
        rest = later & ~(out[x] | inn[x])
        while rest:
            low = rest & -rest
            y = low.bit_length() - 1
            rest ^= low
            yield GoodPair(x, y, _lowest(inn[x] & inn[y]), _lowest(out[x] & out[y]))


def good_pairs(D: Digraph, mode: PairMode = PairMode.IN_ONLY) -> list[GoodPair]:
    if mode is PairMode.IN_ONLY:
        return [p for p in nonadjacent_pairs(D) if p.in_witness is not None]
    return [p for p in nonadjacent_pairs(D) if p.witness is not None]


# Each measure returns (inequality holds, measured quantities).
Measure = Callable[[Digraph, int, int], "tuple[bool, dict[str, int]]"]


def _measure_star(D: Digraph, x: int, y: int) -> tuple[bool, dict[str, int]]:
    n = D.n
    dx = D._out[x].bit_count() + D._in[x].bit_count()
    dy = D._out[y].bit_count() + D._in[y].bit_count()
    return dx + dy >= 2 * n - 1 and min(dx, dy) >= n - 1, {"d(x)": dx, "d(y)": dy}


def _semi(D: Digraph, x: int, y: int) -> dict[str, int]:
    return {
        "d+(x)": D._out[x].bit_count(),
        "d-(x)": D._in[x].bit_count(),
        "d+(y)": D._out[y].bit_count(),
        "d-(y)": D._in[y].bit_count(),
    }


def _measure_star_star(D: Digraph, x: int, y: int) -> tuple[bool, dict[str, int]]:
    m = _semi(D, x, y)
    low = min(m["d+(x)"] + m["d-(y)"], m["d-(x)"] + m["d+(y)"])
    return low >= D.n, m


def _measure_theorem_c(D: Digraph, x: int, y: int) -> tuple[bool, dict[str, int]]:
    m = _semi(D, x, y)
    low = min(m["d+(x)"] + m["d-(y)"], m["d-(x)"] + m["d+(y)"])
    total = m["d+(x)"] + m["d-(x)"] + m["d+(y)"] + m["d-(y)"]
    return low >= D.n - 1 and total >= 2 * D.n - 1, m


def _measure_meyniel(D: Digraph, x: int, y: int) -> tuple[bool, dict[str, int]]:
    dx = D._out[x].bit_count() + D._in[x].bit_count()
    dy = D._out[y].bit_count() + D._in[y].bit_count()
    return dx + dy >= 2 * D.n - 1, {"d(x)": dx, "d(y)": dy}


def _pairs_for(condition: Condition, D: Digraph) -> Iterator[GoodPair]:
    if condition is Condition.MEYNIEL:
        return nonadjacent_pairs(D)
    if condition is Condition.STAR:
        return (p for p in nonadjacent_pairs(D) if p.in_witness is not None)
    return (p for p in nonadjacent_pairs(D) if p.witness is not None)


MEASURES: dict[Condition, Measure] = {
    Condition.MEYNIEL: _measure_meyniel,
    Condition.STAR: _measure_star,
    Condition.STAR_STAR: _measure_star_star,
    Condition.THEOREM_C: _measure_theorem_c,
}


@dataclass(frozen=True)
class Violation:
    pair: GoodPair
    measurements: dict[str, int]

    def to_dict(self) -> dict[str, Any]:
        kind = self.pair.witness_kind
        return {
            "x": self.pair.x,
            "y": self.pair.y,
            "witness": self.pair.witness,
            "kind": kind.value if kind else None,
            "in_witness": self.pair.in_witness,
            "out_witness": self.pair.out_witness,
            "measurements": dict(self.measurements),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Violation:
        w, kind = data["witness"], data["kind"]
        pair = GoodPair(
            data["x"],
            data["y"],
            data.get("in_witness", w if kind == WitnessKind.COMMON_IN.value else None),
            data.get("out_witness", w if kind == WitnessKind.COMMON_OUT.value else None),
        )
        return cls(pair, dict(data["measurements"]))


@dataclass(frozen=True)
class ConditionReport:
    condition: Condition
    holds: bool
    pairs_checked: int
    violations: list[Violation] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "condition": self.condition.value,
            "holds": self.holds,
            "pairs_checked": self.pairs_checked,
            "violations": [v.to_dict() for v in self.violations],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ConditionReport:
        return cls(
            Condition(data["condition"]),
            bool(data["holds"]),
            int(data["pairs_checked"]),
            [Violation.from_dict(v) for v in data["violations"]],
        )


def check_condition(D: Digraph, condition: Condition) -> ConditionReport:
    measure = MEASURES[condition]
    checked = 0
    violations = []
    for pair in _pairs_for(condition, D):
        checked += 1
        ok, measured = measure(D, pair.x, pair.y)
        if not ok:
            violations.append(Violation(pair, measured))
    return ConditionReport(condition, not violations, checked, violations)


def satisfies(D: Digraph, condition: Condition) -> bool:
    """Short-circuiting ``check_condition(D, condition).holds``."""
    measure = MEASURES[condition]
    return all(measure(D, p.x, p.y)[0] for p in _pairs_for(condition, D))


def check_star(D: Digraph) -> ConditionReport:
    """``d(x)+d(y) >= 2n-1`` and ``min(d(x), d(y)) >= n-1`` on common-in-neighbour pairs."""
    return check_condition(D, Condition.STAR)


def check_star_star(D: Digraph) -> ConditionReport:
    """``min(d+(x)+d-(y), d-(x)+d+(y)) >= n`` on common-in- or out-neighbour pairs."""
    return check_condition(D, Condition.STAR_STAR)


def check_theorem_c(D: Digraph) -> ConditionReport:
    return check_condition(D, Condition.THEOREM_C)


def check_meyniel(D: Digraph) -> ConditionReport:
    """``d(x)+d(y) >= 2n-1`` on every non-adjacent pair, no witness needed."""
    return check_condition(D, Condition.MEYNIEL)


def check_all(D: Digraph) -> list[ConditionReport]:
    return [check_condition(D, c) for c in Condition]


@dataclass(frozen=True)
class MinSemidegree:
    value: int
    vertex: int
    side: str  # "out" or "in"

    def to_dict(self) -> dict[str, Any]:
        return {"value": self.value, "vertex": self.vertex, "side": self.side}


def min_semidegree(D: Digraph) -> MinSemidegree:
    """Minimum of ``min(d+(v), d-(v))`` over ``v``; ties go to the smallest label, out side first."""
    best = None
    for v in D.vertices:
        for side, mask in (("out", D._out[v]), ("in", D._in[v])):
            d = mask.bit_count()
            if best is None or d < best.value:
                best = MinSemidegree(d, v, side)
    return best
