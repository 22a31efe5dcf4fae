"""Vertex insertion, bypasses and iterative cycle extension.

Positions follow the ``x_1 .. x_m`` convention of the lemmas: a partner index
``i`` (1-based) names the arc ``x_i x_{i+1}``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Iterator

from . import oracle
from .digraph import Digraph, GraphError, VertexSequence, is_strong, iter_bits, validate_sequence
from .families import ExtremalClass, ExtremalTag, recognize

__all__ = [
    "PreconditionError",
    "find_partner",
    "find_cycle_partner",
    "insert_vertex",
    "lemma1_spectrum",
    "Lemma3Result",
    "lemma3_bound",
    "Bypass",
    "find_min_gap_bypass",
    "ExtensionStep",
    "ExtensionState",
    "extend_cycle",
    "seed_cycles",
    "ResultKind",
    "LongCycleResult",
    "find_long_cycle",
    "DEFAULT_ORACLE_BUDGET",
]

DEFAULT_ORACLE_BUDGET = 14
DEFAULT_MAX_SEEDS = 200


class PreconditionError(GraphError):
    """A lemma was invoked outside its hypotheses."""


def _as_path(D: Digraph, P: VertexSequence | list[int] | tuple[int, ...]) -> VertexSequence:
    if not isinstance(P, VertexSequence):
        P = VertexSequence.path(P)
    check = validate_sequence(D, P)
    if not check:
        raise GraphError(f"invalid {P.kind.value}: {check.reason}")
    return P


def _off(P: VertexSequence, *vs: int) -> None:
    for v in vs:
        if v in P:
            raise GraphError(f"vertex {v} lies on the {P.kind.value}")


def find_partner(D: Digraph, P: VertexSequence | list[int], x: int) -> int | None:
    """Smallest ``i`` in ``[1, m-1]`` with ``x_i -> x -> x_{i+1}``, else None."""
    P = _as_path(D, P)
    D._check(x)
    _off(P, x)
    into, out_of = D._in[x], D._out[x]
    vs = P.vertices
    for i in range(len(vs) - 1):
        if into >> vs[i] & 1 and out_of >> vs[i + 1] & 1:
            return i + 1
    return None


def find_cycle_partner(D: Digraph, C: VertexSequence, x: int) -> int | None:
    """As :func:`find_partner`, but ``i`` ranges over ``[1, m]`` with ``x_{m+1} = x_1``."""
    into, out_of = D._in[x], D._out[x]
    vs = C.vertices
    m = len(vs)
    for i in range(m):
        if into >> vs[i] & 1 and out_of >> vs[(i + 1) % m] & 1:
            return i + 1
    return None


def insert_vertex(D: Digraph, P: VertexSequence | list[int], x: int) -> VertexSequence | None:
    """The path ``x_1 .. x_i x x_{i+1} .. x_m`` at the first partner, or None."""
    P = _as_path(D, P)
    i = find_partner(D, P, x)
    if i is None:
        return None
    vs = P.vertices
    return VertexSequence.path(vs[:i] + (x,) + vs[i:])


def lemma1_spectrum(D: Digraph, C: VertexSequence, x: int) -> dict[int, VertexSequence]:
    """Cycles through ``x`` of every length ``k`` in ``[2, m+1]``.

    Requires ``d(x, C) >= m + 1``.  A ``k``-cycle is ``x x_j .. x_{j+k-2} x``;
    since the in- and out-neighbours of ``x`` on ``C`` number at least ``m+1``,
    every shift ``k - 2`` matches some out-neighbour ``x_j`` with an
    in-neighbour ``x_{j+k-2}``.
    """
    if not C.is_cycle:
        C = VertexSequence.cycle(C)
    check = validate_sequence(D, C)
    if not check:
        raise GraphError(f"invalid cycle: {check.reason}")
    D._check(x)
    _off(C, x)
    vs = C.vertices
    m = len(vs)
    d = D.degree(x, vs)
    if d < m + 1:
        raise PreconditionError(f"d(x, C) = {d} < m + 1 = {m + 1} for x = {x}")
    ins = [D.has_arc(v, x) for v in vs]
    outs = [D.has_arc(x, v) for v in vs]
    cycles = {}
    for k in range(2, m + 2):
        span = k - 1  # cycle vertices taken from C
        for j in range(m):
            if outs[j] and ins[(j + span - 1) % m]:
                seg = tuple(vs[(j + t) % m] for t in range(span))
                cycles[k] = VertexSequence.cycle((x,) + seg)
                break
        else:  # pragma: no cover - excluded by the counting argument
            raise AssertionError(f"no {k}-cycle through {x} despite d(x, C) = {d}")
    return cycles


@dataclass(frozen=True)
class Lemma3Result:
    pattern_found: bool
    lhs: int
    rhs: int

    @property
    def satisfied(self) -> bool:
        """The lemma's implication: no pattern implies ``lhs <= rhs``."""
        return self.pattern_found or self.lhs <= self.rhs


def lemma3_bound(D: Digraph, P: VertexSequence | list[int], x: int, y: int) -> Lemma3Result:
    """Test ``d-(x, P) + d+(y, P) <= m + eps`` when no ``x_i -> x``, ``y -> x_{i+1}`` exists.

    ``eps`` is 1 if ``x_m -> x`` and 0 otherwise; ``x == y`` is allowed.
    """
    P = _as_path(D, P)
    D._check(x)
    D._check(y)
    _off(P, x, y)
    vs = P.vertices
    m = len(vs)
    pattern = any(D.has_arc(vs[i], x) and D.has_arc(y, vs[i + 1]) for i in range(m - 1))
    lhs = D.in_degree(x, vs) + D.out_degree(y, vs)
    rhs = m + (1 if D.has_arc(vs[-1], x) else 0)
    return Lemma3Result(pattern, lhs, rhs)


# -- bypasses -------------------------------------------------------------


@dataclass(frozen=True)
class Bypass:
    """A path ``start, *internals, end`` leaving cycle ``C`` and coming back.

    ``gap`` is the number of arcs of ``C[start, end]``.
    """

    start: int
    end: int
    internals: tuple[int, ...]
    gap: int

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.start, *self.internals, self.end)

    def to_dict(self) -> dict[str, Any]:
        return {
            "start": self.start,
            "end": self.end,
            "internals": list(self.internals),
            "gap": self.gap,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Bypass:
        return cls(data["start"], data["end"], tuple(data["internals"]), data["gap"])


def _bfs_paths(D: Digraph, s: int, region: int, max_depth: int | None) -> Iterator[tuple[int, ...]]:
    """Shortest paths from ``s`` into ``region`` (excluding ``s``), in discovery order."""
    parent = {}
    frontier = []
    for r in iter_bits(D._out[s] & region):
        parent[r] = None
        frontier.append(r)
    depth = 1
    seen = D._out[s] & region
    while frontier:
        for r in frontier:
            chain = [r]
            while parent[chain[-1]] is not None:
                chain.append(parent[chain[-1]])
            yield tuple(reversed(chain))
        if max_depth is not None and depth >= max_depth:
            return
        nxt = []
        for r in frontier:
            for w in iter_bits(D._out[r] & region & ~seen):
                seen |= 1 << w
                parent[w] = r
                nxt.append(w)
        frontier = nxt
        depth += 1


def find_min_gap_bypass(
    D: Digraph, C: VertexSequence, three_vertex_only: bool = False
) -> Bypass | None:
    """A ``C``-bypass of minimum gap, ties broken by smallest ``(start, end)``.

    The internal path for a given endpoint pair is a shortest one through
    ``V(D) - V(C)``.  ``three_vertex_only`` restricts to one internal vertex.
    """
    if not C.is_cycle:
        C = VertexSequence.cycle(C)
    check = validate_sequence(D, C)
    if not check:
        raise GraphError(f"invalid cycle: {check.reason}")
    cmask = C.mask()
    rest = D.vertex_mask & ~cmask
    if not rest:
        raise GraphError("the cycle spans every vertex; no bypass is possible")
    best: tuple[int, int, int, tuple[int, ...]] | None = None
    for s in sorted(C.vertices):
        seen_ends = set()
        for internals in _bfs_paths(D, s, rest, 1 if three_vertex_only else None):
            for t in iter_bits(D._out[internals[-1]] & cmask & ~(1 << s)):
                if t in seen_ends:
                    continue
                seen_ends.add(t)
                key = (C.distance(s, t), s, t, internals)
                if best is None or key[:3] < best[:3]:
                    best = key
    if best is None:
        return None
    gap, s, t, internals = best
    return Bypass(s, t, internals, gap)


# -- extension ------------------------------------------------------------


@dataclass(frozen=True)
class ExtensionStep:
    rule: str  # "insert" or "bypass"
    cycle_after: tuple[int, ...]
    vertex: int | None = None
    bypass: Bypass | None = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"rule": self.rule}
        if self.vertex is not None:
            data["vertex"] = self.vertex
        if self.bypass is not None:
            data["bypass"] = self.bypass.to_dict()
        data["cycle_after"] = list(self.cycle_after)
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ExtensionStep:
        bp = data.get("bypass")
        return cls(
            data["rule"],
            tuple(data["cycle_after"]),
            data.get("vertex"),
            Bypass.from_dict(bp) if bp else None,
        )


@dataclass(frozen=True)
class ExtensionState:
    cycle: VertexSequence
    off_cycle: frozenset[int]
    trace: tuple[ExtensionStep, ...] = ()

    @classmethod
    def start(cls, D: Digraph, cycle: VertexSequence | list[int]) -> ExtensionState:
        if not isinstance(cycle, VertexSequence):
            cycle = VertexSequence.cycle(cycle)
        check = validate_sequence(D, cycle)
        if not cycle.is_cycle or not check:
            raise GraphError(f"invalid cycle: {check.reason or 'not a cycle'}")
        return cls(cycle, frozenset(D.vertices) - set(cycle.vertices))


def extend_cycle(D: Digraph, state: ExtensionState) -> ExtensionState | None:
    """One strictly lengthening step, or None when stuck.

    Tries to insert an off-cycle vertex at a partner arc (smallest vertex,
    then smallest position) and otherwise splices the minimum-gap bypass in
    place of ``C[start, end]`` when that adds vertices.
    """
    if not state.off_cycle:
        raise GraphError("the cycle is already Hamiltonian")
    C = state.cycle
    vs = C.vertices
    for x in sorted(state.off_cycle):
        i = find_cycle_partner(D, C, x)
        if i is not None:
            new = vs[:i] + (x,) + vs[i:]
            step = ExtensionStep("insert", new, vertex=x)
            return ExtensionState(
                VertexSequence.cycle(new), state.off_cycle - {x}, state.trace + (step,)
            )
    bypass = find_min_gap_bypass(D, C)
    if bypass is None or len(bypass.internals) <= bypass.gap - 1:
        return None
    new = C.segment(bypass.end, bypass.start) + bypass.internals
    dropped = set(C.segment(bypass.start, bypass.end)[1:-1])
    step = ExtensionStep("bypass", new, bypass=bypass)
    return ExtensionState(
        VertexSequence.cycle(new),
        (state.off_cycle - set(bypass.internals)) | dropped,
        state.trace + (step,),
    )


def seed_cycles(D: Digraph, limit: int = DEFAULT_MAX_SEEDS) -> list[VertexSequence]:
    """All digons, then all 3-cycles (each from its smallest vertex), at most ``limit``."""
    seeds: list[VertexSequence] = []
    for u in D.vertices:
        for v in iter_bits(D._out[u] & D._in[u]):
            if v > u:
                seeds.append(VertexSequence.cycle((u, v)))
                if len(seeds) >= limit:
                    return seeds
    for u in D.vertices:
        for v in iter_bits(D._out[u]):
            if v < u:
                continue
            for w in iter_bits(D._out[v] & D._in[u]):
                if w > u and w != v:
                    seeds.append(VertexSequence.cycle((u, v, w)))
                    if len(seeds) >= limit:
                        return seeds
    return seeds


class ResultKind(enum.Enum):
    HAMILTONIAN = "HamiltonianCycle"
    NEAR = "NearCycle"
    EXTREMAL = "Extremal"
    NO_LONG_CYCLE = "NoLongCycle"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class LongCycleResult:
    kind: ResultKind
    cycle: VertexSequence | None = None
    extremal: ExtremalClass | None = None
    source: str = "heuristic"  # "heuristic", "oracle" or "recognition"
    trace: tuple[ExtensionStep, ...] = field(default=())
    seed: tuple[int, ...] | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "cycle": list(self.cycle) if self.cycle else None,
            "length": len(self.cycle) if self.cycle else None,
            "extremal": self.extremal.to_dict() if self.extremal else None,
            "source": self.source,
            "seed": list(self.seed) if self.seed else None,
            "trace": [s.to_dict() for s in self.trace],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> LongCycleResult:
        return cls(
            ResultKind(data["kind"]),
            VertexSequence.cycle(data["cycle"]) if data["cycle"] else None,
            ExtremalClass.from_dict(data["extremal"]) if data["extremal"] else None,
            data["source"],
            tuple(ExtensionStep.from_dict(s) for s in data["trace"]),
            tuple(data["seed"]) if data["seed"] else None,
        )


def _grow(D: Digraph, seed: VertexSequence) -> list[ExtensionState]:
    state = ExtensionState.start(D, seed)
    states = [state]
    while state.off_cycle:
        nxt = extend_cycle(D, state)
        if nxt is None:
            break
        state = nxt
        states.append(state)
    return states


def find_long_cycle(
    D: Digraph,
    oracle_budget: int = DEFAULT_ORACLE_BUDGET,
    max_seeds: int = DEFAULT_MAX_SEEDS,
    timeout: float | None = oracle.DEFAULT_TIMEOUT,
) -> LongCycleResult:
    """Look for a Hamiltonian cycle or a cycle of length ``n - 1``.

    Balanced ``K*_{n/2,n/2}`` and its one-arc deletions are reported as
    extremal first.  Otherwise cycles grown from each seed are tried; when the
    heuristic finds no Hamiltonian cycle and ``n <= oracle_budget`` the exact
    oracle settles the answer, so ``UNRESOLVED`` only occurs above the budget.
    """
    if D.n < 4:
        raise GraphError(f"need n >= 4, got {D.n}")
    if not is_strong(D):
        raise GraphError("the digraph is not strong")
    n = D.n
    cls = recognize(D)
    if cls.tag is not ExtremalTag.OTHER and cls.is_balanced:
        return LongCycleResult(ResultKind.EXTREMAL, extremal=cls, source="recognition")

    near: tuple[ExtensionState, VertexSequence] | None = None
    longest: tuple[ExtensionState, VertexSequence] | None = None
    for seed in seed_cycles(D, max_seeds):
        states = _grow(D, seed)
        final = states[-1]
        if len(final.cycle) == n:
            return LongCycleResult(ResultKind.HAMILTONIAN, final.cycle, trace=final.trace, seed=seed.vertices)
        if near is None:
            for st in states:
                if len(st.cycle) == n - 1:
                    near = (st, seed)
                    break
        if longest is None or len(final.cycle) > len(longest[0].cycle):
            longest = (final, seed)

    exact = n <= oracle_budget
    if exact:
        ham = oracle.hamiltonian_cycle(D, timeout)
        if ham is not None:
            return LongCycleResult(ResultKind.HAMILTONIAN, ham, source="oracle")
    if near is not None:
        st, seed = near
        return LongCycleResult(ResultKind.NEAR, st.cycle, trace=st.trace, seed=seed.vertices)
    if exact:
        c = oracle.has_cycle_of_length(D, n - 1, timeout)
        if c is not None:
            return LongCycleResult(ResultKind.NEAR, c, source="oracle")
        return LongCycleResult(
            ResultKind.NO_LONG_CYCLE, oracle.longest_non_hamiltonian_cycle(D, timeout), source="oracle"
        )
    if longest is None:
        return LongCycleResult(ResultKind.UNRESOLVED)
    st, seed = longest
    return LongCycleResult(ResultKind.UNRESOLVED, st.cycle, trace=st.trace, seed=seed.vertices)
