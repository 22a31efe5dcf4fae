"""Named digraph families and structural recognition of the bipartite extremal classes."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any

from .digraph import Digraph, GraphError, iter_bits

__all__ = [
    "ExtremalTag",
    "ExtremalClass",
    "complete_bipartite",
    "complete_bipartite_minus_arc",
    "d5",
    "d6",
    "thomassen_family",
    "semidegree_one_example",
    "semidegree_one_in_lists",
    "recognize",
]


def complete_bipartite(p: int, q: int) -> Digraph:
    """``K*_{p,q}``: partite sets ``1..p`` and ``p+1..p+q``, every cross pair joined both ways."""
    if p < 1 or q < 1:
        raise GraphError(f"partite sets must be nonempty, got p={p}, q={q}")
    left = range(1, p + 1)
    right = range(p + 1, p + q + 1)
    arcs = [(a, b) for a in left for b in right] + [(b, a) for a in left for b in right]
    return Digraph(p + q, arcs)


def complete_bipartite_minus_arc(p: int, q: int, e: tuple[int, int]) -> Digraph:
    u, v = e
    if not (1 <= u <= p + q and 1 <= v <= p + q) or (u <= p) == (v <= p):
        raise GraphError(f"{e} is not a cross pair of K*_{{{p},{q}}}")
    full = complete_bipartite(p, q)
    return Digraph(p + q, [a for a in full.arcs() if a != (u, v)])


def d5() -> Digraph:
    """Strong locally semicomplete digraph on ``x_1..x_4, y`` without 3-cycles (``y`` is 5)."""
    x1, x2, x3, x4, y = 1, 2, 3, 4, 5
    arcs = [(x1, x2), (x2, x3), (x3, x4), (x4, x1), (x2, y), (x3, y), (y, x3), (y, x4)]
    return Digraph(5, arcs, names=("x_1", "x_2", "x_3", "x_4", "y"))


def d6() -> Digraph:
    """Six-vertex companion of :func:`d5` on ``x_1..x_5, y`` (``y`` is 6)."""
    x1, x2, x3, x4, x5, y = 1, 2, 3, 4, 5, 6
    arcs = [(x1, x2), (x2, x3), (x3, x4), (x4, x5)]
    arcs += [(x5, x1), (x1, x3), (x2, x4), (x2, y), (x3, y)]
    arcs += [(x4, y), (y, x4), (y, x5)]
    return Digraph(6, arcs, names=("x_1", "x_2", "x_3", "x_4", "x_5", "y"))


def thomassen_family(n: int, m: int) -> Digraph:
    """``D_{n,m}``: arcs ``x_i x_j`` with ``i < j`` or ``i = j + 1``, minus ``x_i x_{i+m-1}``.

    Strong, and has no cycle of length ``m``.
    """
    if not 3 <= m <= n:
        raise GraphError(f"need 3 <= m <= n, got n={n}, m={m}")
    removed = {(i, i + m - 1) for i in range(1, n - m + 2)}
    arcs = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if (i < j or i == j + 1) and (i, j) not in removed
    ]
    return Digraph(n, arcs, names=tuple(f"x_{i}" for i in range(1, n + 1)))


def _xs(i: int, j: int) -> list[str]:
    """Names ``x_i..x_j``; empty when ``j < i``."""
    return [f"x_{t}" for t in range(i, j + 1)]


def _semidegree_one_out_lists(k: int) -> dict[str, list[str]]:
    out = {
        "y": ["z"],
        "z": ["y", "x_4"],
        "x_1": ["y", "z", "x_2", "x_4", *_xs(5, k - 1)],
        "x_2": ["z", "x_1", "x_3", *_xs(4, k)],
        "x_3": ["y", "x_1", "x_2", *_xs(4, k)],
        "x_4": ["y", "z", "x_1"] if k == 4 else ["y", "z", "x_5"],
    }
    for i in range(5, k):
        out[f"x_{i}"] = ["y", "z", f"x_{i + 1}", *_xs(4, i - 2)]
    if k >= 5:
        out[f"x_{k}"] = ["y", "z", "x_1", *_xs(4, k - 2)]
    return out


def semidegree_one_in_lists(k: int) -> dict[str, list[str]]:
    """The in-neighbourhoods the construction is documented to produce."""
    ins = {
        "y": ["z", "x_1", *_xs(3, k)],
        "z": ["y", "x_1", "x_2", *_xs(4, k)],
        "x_1": [f"x_{k}", "x_2", "x_3"],
        "x_2": ["x_1", "x_3"],
        "x_3": ["x_2"],
        "x_4": ["z", "x_1", "x_2", "x_3", *_xs(6, k)],
    }
    for i in range(5, k):
        ins[f"x_{i}"] = ["x_1", "x_2", "x_3", f"x_{i - 1}", *_xs(i + 2, k)]
    if k >= 5:
        ins[f"x_{k}"] = ["x_2", "x_3", f"x_{k - 1}"]
    return ins


def semidegree_one_example(k: int) -> Digraph:
    """Strong digraph on ``y, z, x_1..x_k`` (labels 1, 2, 3..k+2) with minimum semi-degree one.

    Built from the out-neighbourhood lists only; the resulting in-neighbourhoods
    are checked against :func:`semidegree_one_in_lists`.
    """
    if k < 4:
        raise GraphError(f"need k >= 4, got {k}")
    names = ("y", "z", *_xs(1, k))
    label = {name: i for i, name in enumerate(names, start=1)}
    out = _semidegree_one_out_lists(k)
    D = Digraph(k + 2, [(label[u], label[v]) for u, vs in out.items() for v in vs], names=names)
    for name, expected in semidegree_one_in_lists(k).items():
        got = {D.name(w) for w in D.in_neighbors(label[name])}
        if got != set(expected):
            raise AssertionError(f"N-({name}) is {sorted(got)}, expected {sorted(expected)}")
    return D


# -- recognition ----------------------------------------------------------


class ExtremalTag(enum.Enum):
    COMPLETE_BIPARTITE = "CompleteBipartite"
    MINUS_ARC = "CompleteBipartiteMinusArc"
    OTHER = "Other"


@dataclass(frozen=True)
class ExtremalClass:
    tag: ExtremalTag
    partition: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    missing_arc: tuple[int, int] | None = None

    @property
    def sizes(self) -> tuple[int, int] | None:
        if self.partition is None:
            return None
        return len(self.partition[0]), len(self.partition[1])

    @property
    def is_balanced(self) -> bool:
        return self.sizes is not None and self.sizes[0] == self.sizes[1]

    def to_dict(self) -> dict[str, Any]:
        return {
            "tag": self.tag.value,
            "partition": [list(s) for s in self.partition] if self.partition else None,
            "missing_arc": list(self.missing_arc) if self.missing_arc else None,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ExtremalClass:
        part = data.get("partition")
        arc = data.get("missing_arc")
        return cls(
            ExtremalTag(data["tag"]),
            (tuple(part[0]), tuple(part[1])) if part else None,
            tuple(arc) if arc else None,
        )


OTHER = ExtremalClass(ExtremalTag.OTHER)


def recognize(D: Digraph) -> ExtremalClass:
    """Classify ``D`` as ``K*_{p,q}``, ``K*_{p,q}`` minus one arc, or other.

    In both classes non-adjacency is an equivalence relation whose two classes
    are the partite sets, so the partition is read off directly.
    """
    n = D.n
    full = D.vertex_mask
    classes: list[int] = []
    seen = 0
    for v in D.vertices:
        if seen >> v & 1:
            continue
        cls_mask = full & ~(D._out[v] | D._in[v])  # v and its non-neighbours
        classes.append(cls_mask)
        seen |= cls_mask
    if len(classes) != 2 or classes[0] & classes[1] or classes[0] | classes[1] != full:
        return OTHER
    a, b = classes
    for mask in (a, b):
        for v in iter_bits(mask):
            if (D._out[v] | D._in[v]) & mask:
                return OTHER
    missing = []
    for u in D.vertices:
        other = b if a >> u & 1 else a
        for v in iter_bits(other & ~D._out[u]):
            missing.append((u, v))
    left, right = tuple(iter_bits(a)), tuple(iter_bits(b))
    if not missing:
        return ExtremalClass(ExtremalTag.COMPLETE_BIPARTITE, (left, right))
    if len(missing) == 1 and n >= 2:
        return ExtremalClass(ExtremalTag.MINUS_ARC, (left, right), missing[0])
    return OTHER
