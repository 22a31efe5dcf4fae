"""Dense digraph model and the elementary predicates built on it.

Vertices are the labels ``1..n``.  Each vertex ``v`` owns bit ``1 << v`` in
the out- and in-neighbourhood masks, so set algebra on neighbourhoods is plain
integer arithmetic and arc tests are O(1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "MAX_ORDER",
    "GraphError",
    "Digraph",
    "SequenceKind",
    "VertexSequence",
    "SequenceCheck",
    "build",
    "directed_cycle",
    "complete_digraph",
    "is_strong",
    "is_strong_naive",
    "is_semicomplete",
    "is_locally_semicomplete",
    "validate_sequence",
    "iter_bits",
    "mask_of",
]

MAX_ORDER = 64


class GraphError(ValueError):
    """Raised for malformed digraphs, labels, or sequences."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Digraph:
    """An immutable loop-free digraph on the vertex labels ``1..n``.

    ``names`` optionally maps labels to display names (``"x_1"``, ``"y"``);
    it does not take part in equality.
    """

    __slots__ = ("n", "_out", "_in", "names")

    def __init__(
        self,
        n: int,
        arcs: Iterable[tuple[int, int]] = (),
        names: Sequence[str] | None = None,
    ) -> None:
        if not isinstance(n, int) or n < 1:
            raise GraphError(f"vertex count must be a positive integer, got {n!r}")
        if n > MAX_ORDER:
            raise GraphError(f"vertex count {n} exceeds the supported maximum {MAX_ORDER}")
        out = [0] * (n + 1)
        inn = [0] * (n + 1)
        for pair in arcs:
            u, v = pair
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"arc ({u}, {v}) has a label outside 1..{n}")
            if u == v:
                raise GraphError(f"arc ({u}, {v}) is a loop")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        self.n = n
        self._out = tuple(out)
        self._in = tuple(inn)
        self.names = _check_names(n, names)

    @classmethod
    def from_masks(
        cls, n: int, out_masks: Sequence[int], names: Sequence[str] | None = None
    ) -> Digraph:
        """Build from per-vertex out-masks (index 0 unused); no validation."""
        self = object.__new__(cls)
        inn = [0] * (n + 1)
        for u in range(1, n + 1):
            m = out_masks[u]
            while m:
                low = m & -m
                inn[low.bit_length() - 1] |= 1 << u
                m ^= low
        self.n = n
        self._out = tuple(out_masks)
        self._in = tuple(inn)
        self.names = names
        return self

    # -- basic structure -------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def vertex_mask(self) -> int:
        return ((1 << (self.n + 1)) - 1) ^ 1

    @property
    def arc_count(self) -> int:
        return sum(m.bit_count() for m in self._out)

    def arcs(self) -> list[tuple[int, int]]:
        """All arcs, sorted lexicographically."""
        return [(u, v) for u in self.vertices for v in iter_bits(self._out[u])]

    def has_arc(self, u: int, v: int) -> bool:
        return 1 <= u <= self.n and (self._out[u] >> v) & 1 == 1

    def out_mask(self, v: int) -> int:
        return self._out[v]

    def in_mask(self, v: int) -> int:
        return self._in[v]

    def name(self, v: int) -> str:
        return self.names[v - 1] if self.names else str(v)

    def label(self, name: str) -> int:
        """Inverse of :meth:`name`."""
        if self.names and name in self.names:
            return self.names.index(name) + 1
        try:
            v = int(name)
        except ValueError:
            raise GraphError(f"unknown vertex name {name!r}") from None
        self._check(v)
        return v

    def _check(self, v: int) -> None:
        if not isinstance(v, int) or not 1 <= v <= self.n:
            raise GraphError(f"vertex {v!r} is not a label in 1..{self.n}")

    def _within(self, within: Iterable[int] | None) -> int:
        if within is None:
            return self.vertex_mask
        within = list(within)
        for w in within:
            self._check(w)
        return mask_of(within)

    # -- neighbourhoods and degrees -------------------------------------

    def out_neighbors(self, v: int, within: Iterable[int] | None = None) -> frozenset[int]:
        self._check(v)
        return frozenset(iter_bits(self._out[v] & self._within(within)))

    def in_neighbors(self, v: int, within: Iterable[int] | None = None) -> frozenset[int]:
        self._check(v)
        return frozenset(iter_bits(self._in[v] & self._within(within)))

    def out_degree(self, v: int, within: Iterable[int] | None = None) -> int:
        self._check(v)
        return (self._out[v] & self._within(within)).bit_count()

    def in_degree(self, v: int, within: Iterable[int] | None = None) -> int:
        self._check(v)
        return (self._in[v] & self._within(within)).bit_count()

    def degree(self, v: int, within: Iterable[int] | None = None) -> int:
        """``d(v, A) = d+(v, A) + d-(v, A)``; the whole digraph when ``within`` is None."""
        return self.out_degree(v, within) + self.in_degree(v, within)

    def degrees(self, v: int, within: Iterable[int] | None = None) -> tuple[int, int, int]:
        """Return ``(d_out, d_in, d_total)`` of ``v``, optionally restricted to ``within``."""
        d_out = self.out_degree(v, within)
        d_in = self.in_degree(v, within)
        return d_out, d_in, d_out + d_in

    def adjacency_count(self, x: int, y: int) -> int:
        """Number of arcs between ``x`` and ``y`` (0, 1 or 2)."""
        self._check(x)
        self._check(y)
        if x == y:
            raise GraphError(f"adjacency_count needs distinct vertices, got {x} twice")
        return ((self._out[x] >> y) & 1) + ((self._in[x] >> y) & 1)

    def induced(self, subset: Iterable[int]) -> tuple[Digraph, tuple[int, ...]]:
        """Subdigraph induced by ``subset``, relabelled densely.

        Returns the digraph and the label map: ``label_map[i - 1]`` is the
        original label of new vertex ``i``.
        """
        keep = sorted(set(subset))
        if not keep:
            raise GraphError("cannot induce on an empty vertex set")
        for v in keep:
            self._check(v)
        index = {v: i for i, v in enumerate(keep, start=1)}
        arcs = [
            (index[u], index[v])
            for u in keep
            for v in iter_bits(self._out[u])
            if v in index
        ]
        names = [self.name(v) for v in keep] if self.names else None
        return Digraph(len(keep), arcs, names), tuple(keep)

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self._out == other._out

    def __hash__(self) -> int:
        return hash((self.n, self._out))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.arcs()})"


def _check_names(n: int, names: Sequence[str] | None) -> tuple[str, ...] | None:
    if names is None:
        return None
    names = tuple(names)
    if len(names) != n or len(set(names)) != n:
        raise GraphError(f"need {n} distinct vertex names, got {names!r}")
    return names


def build(n: int, arcs: Iterable[tuple[int, int]], names: Sequence[str] | None = None) -> Digraph:
    """Digraph on ``1..n`` with exactly the given arcs (duplicates collapse)."""
    return Digraph(n, arcs, names)


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise GraphError("a directed cycle needs at least two vertices")
    return Digraph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete_digraph(n: int) -> Digraph:
    return Digraph(n, [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v])


# -- strong connectivity ------------------------------------------------


def _closure(masks: Sequence[int], start: int, allowed: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= masks[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def is_strong(D: Digraph) -> bool:
    """True iff every vertex reaches every other one (forward and backward sweep from vertex 1)."""
    full = D.vertex_mask
    return _closure(D._out, 1, full) == full and _closure(D._in, 1, full) == full


def is_strong_naive(D: Digraph) -> bool:
    """Reference check: breadth-first search from every vertex."""
    for s in D.vertices:
        seen = {s}
        queue = [s]
        while queue:
            u = queue.pop()
            for w in D.out_neighbors(u):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != D.n:
            return False
    return True


# -- semicompleteness ---------------------------------------------------


def _semicomplete_on(D: Digraph, mask: int) -> bool:
    for x in iter_bits(mask):
        adjacent = D._out[x] | D._in[x]
        if (mask & ~adjacent & ~(1 << x)) != 0:
            return False
    return True


def is_semicomplete(D: Digraph) -> bool:
    return _semicomplete_on(D, D.vertex_mask)


def is_locally_semicomplete(D: Digraph) -> bool:
    return all(
        _semicomplete_on(D, D._out[x]) and _semicomplete_on(D, D._in[x]) for x in D.vertices
    )


# -- paths and cycles ---------------------------------------------------


class SequenceKind(enum.Enum):
    PATH = "path"
    CYCLE = "cycle"


@dataclass(frozen=True)
class VertexSequence:
    """A path or cycle ``x_1 x_2 ... x_m`` given by its vertex order.

    Cycle positions are modular: ``cycle[i]`` and ``cycle[i + m]`` name the
    same vertex.  Positions are 0-based like any Python sequence.
    """

    kind: SequenceKind
    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @classmethod
    def path(cls, vertices: Iterable[int]) -> VertexSequence:
        return cls(SequenceKind.PATH, tuple(vertices))

    @classmethod
    def cycle(cls, vertices: Iterable[int]) -> VertexSequence:
        return cls(SequenceKind.CYCLE, tuple(vertices))

    @property
    def is_cycle(self) -> bool:
        return self.kind is SequenceKind.CYCLE

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __getitem__(self, i: int) -> int:
        if self.is_cycle:
            return self.vertices[i % len(self.vertices)]
        return self.vertices[i]

    def __contains__(self, v: object) -> bool:
        return v in self.vertices

    def arcs(self) -> list[tuple[int, int]]:
        vs = self.vertices
        pairs = list(zip(vs, vs[1:]))
        if self.is_cycle:
            pairs.append((vs[-1], vs[0]))
        return pairs

    def index(self, v: int) -> int:
        return self.vertices.index(v)

    def segment(self, start: int, end: int) -> tuple[int, ...]:
        """Vertices of ``C[start, end]`` walking forward along a cycle (inclusive)."""
        if not self.is_cycle:
            i, j = self.index(start), self.index(end)
            if j < i:
                raise GraphError(f"{end} precedes {start} on the path")
            return self.vertices[i : j + 1]
        m = len(self.vertices)
        i = self.index(start)
        steps = (self.index(end) - i) % m
        return tuple(self.vertices[(i + t) % m] for t in range(steps + 1))

    def distance(self, start: int, end: int) -> int:
        """Number of cycle arcs from ``start`` forward to ``end``."""
        return (self.index(end) - self.index(start)) % len(self.vertices)

    def mask(self) -> int:
        return mask_of(self.vertices)

    def to_list(self) -> list[int]:
        return list(self.vertices)


@dataclass(frozen=True)
class SequenceCheck:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate_sequence(D: Digraph, S: VertexSequence) -> SequenceCheck:
    """Check ``S`` against ``D``; failure carries the first violated obligation."""
    vs = S.vertices
    if len(vs) < 2:
        return SequenceCheck(False, f"needs at least 2 vertices, has {len(vs)}")
    for v in vs:
        if not isinstance(v, int) or not 1 <= v <= D.n:
            return SequenceCheck(False, f"vertex {v!r} is not a label in 1..{D.n}")
    if len(set(vs)) != len(vs):
        return SequenceCheck(False, "vertices are not distinct")
    for u, v in S.arcs():
        if not D.has_arc(u, v):
            return SequenceCheck(False, f"arc ({u}, {v}) is absent")
    return SequenceCheck(True)
