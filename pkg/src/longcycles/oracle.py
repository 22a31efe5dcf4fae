"""Exact cycle search.

Two independent routes are kept on purpose:

* :func:`has_cycle_of_length` runs a depth-first search over simple paths
  whose first vertex is the smallest one on the cycle, pruning branches whose
  remaining vertices cannot be reached or cannot close back to the start;
* :func:`spectrum` runs a subset dynamic programme (bit-parallel end sets per
  vertex subset) that finds every cycle length at once.

Both raise :class:`OracleTimeout` instead of answering when the per-call time
budget runs out.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .digraph import Digraph, GraphError, VertexSequence, iter_bits

__all__ = [
    "DEFAULT_TIMEOUT",
    "DP_LIMIT",
    "OracleTimeout",
    "CycleSpectrum",
    "has_cycle_of_length",
    "spectrum",
    "hamiltonian_cycle",
    "is_hamiltonian",
    "is_pancyclic",
    "longest_non_hamiltonian_cycle",
    "closed_walk_lengths",
]

DEFAULT_TIMEOUT = 10.0
# Largest order for which the subset programme is used.
DP_LIMIT = 18
_CHECK_EVERY = 2048


class OracleTimeout(RuntimeError):
    """The search exceeded its time budget; no answer is implied."""


class _Clock:
    __slots__ = ("deadline", "ticks", "budget")

    def __init__(self, budget: float | None) -> None:
        self.budget = budget
        self.deadline = None if budget is None else time.monotonic() + budget
        self.ticks = 0

    def tick(self) -> None:
        self.ticks += 1
        if self.deadline is not None and self.ticks % _CHECK_EVERY == 0:
            if time.monotonic() > self.deadline:
                raise OracleTimeout(f"cycle search exceeded {self.budget} s")


def _closure(masks, start: int, allowed: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= masks[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def _component_above(D: Digraph, s: int) -> int:
    """Vertices ``> s`` on a closed walk through ``s`` inside ``{s, s+1, ..., n}``."""
    above = D.vertex_mask & ~((1 << (s + 1)) - 1)
    region = above | (1 << s)
    return _closure(D._out, s, region) & _closure(D._in, s, region) & above


# -- depth-first route ----------------------------------------------------


def has_cycle_of_length(
    D: Digraph, k: int, timeout: float | None = DEFAULT_TIMEOUT
) -> VertexSequence | None:
    """A cycle on exactly ``k`` vertices, or None if there is none.

    The witness starts at its smallest vertex.
    """
    if not isinstance(k, int) or not 2 <= k <= D.n:
        raise GraphError(f"cycle length {k!r} outside [2, {D.n}]")
    clock = _Clock(timeout)
    out, inn = D._out, D._in
    for s in D.vertices:
        if D.n - s + 1 < k:
            break
        allowed = _component_above(D, s)
        if allowed.bit_count() + 1 < k:
            continue
        into_s = inn[s]
        path = [s]

        def extend(v: int, visited: int) -> bool:
            clock.tick()
            need = k - len(path)
            cand = out[v] & allowed & ~visited
            if need == 1:
                last = cand & into_s
                if last:
                    path.append((last & -last).bit_length() - 1)
                    return True
                return False
            while cand:
                bw = cand & -cand
                cand ^= bw
                w = bw.bit_length() - 1
                free = allowed & ~visited & ~bw
                reach = _closure(out, w, free) & ~bw
                if reach.bit_count() < need - 1 or not (reach & into_s):
                    continue
                path.append(w)
                if extend(w, visited | bw):
                    return True
                path.pop()
            return False

        if k == 2:
            back = out[s] & into_s & allowed
            if back:
                return VertexSequence.cycle((s, (back & -back).bit_length() - 1))
            continue
        if extend(s, 1 << s):
            return VertexSequence.cycle(path)
    return None


# -- subset programme ----------------------------------------------------


def _dp_from(D: Digraph, s: int, wanted: set[int], found: dict[int, tuple[int, ...]], clock: _Clock) -> None:
    """Record, for every still-wanted length, a cycle whose smallest vertex is ``s``.

    ``ends[mask]`` is the set of vertices ``v`` such that some path from ``s``
    covers exactly ``mask`` and stops at ``v``.
    """
    out, inn = D._out, D._in
    allowed = _component_above(D, s)
    max_len = allowed.bit_count() + 1
    if not any(k <= max_len for k in wanted):
        return
    start = 1 << s
    ends = {start: start}
    frontier = [start]
    size = 1
    while frontier and size < max_len and any(k > size for k in wanted):
        nxt: dict[int, int] = {}
        for mask in frontier:
            clock.tick()
            em = ends[mask]
            for v in iter_bits(em):
                grow = out[v] & allowed & ~mask
                while grow:
                    bw = grow & -grow
                    grow ^= bw
                    nm = mask | bw
                    nxt[nm] = nxt.get(nm, 0) | bw
        size += 1
        frontier = sorted(nxt)
        ends.update(nxt)
        if size in wanted:
            for mask in frontier:
                closers = ends[mask] & inn[s]
                if closers:
                    v = (closers & -closers).bit_length() - 1
                    found[size] = _walk_back(D, ends, mask, v)
                    wanted.discard(size)
                    break


def _walk_back(D: Digraph, ends: dict[int, int], mask: int, v: int) -> tuple[int, ...]:
    seq = [v]
    while mask.bit_count() > 1:
        prev_mask = mask ^ (1 << v)
        u_mask = ends[prev_mask] & D._in[v]
        u = (u_mask & -u_mask).bit_length() - 1
        seq.append(u)
        mask, v = prev_mask, u
    seq.reverse()
    return tuple(seq)


@dataclass(frozen=True)
class CycleSpectrum:
    n: int
    present: frozenset[int]
    witnesses: dict[int, VertexSequence] = field(default_factory=dict)

    @property
    def is_pancyclic(self) -> bool:
        return all(k in self.present for k in range(3, self.n + 1))

    @property
    def is_hamiltonian(self) -> bool:
        return self.n in self.present

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "present": sorted(self.present),
            "witnesses": {str(k): list(self.witnesses[k]) for k in sorted(self.witnesses)},
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> CycleSpectrum:
        return cls(
            int(data["n"]),
            frozenset(data["present"]),
            {int(k): VertexSequence.cycle(v) for k, v in data.get("witnesses", {}).items()},
        )


def spectrum(D: Digraph, timeout: float | None = DEFAULT_TIMEOUT) -> CycleSpectrum:
    """Every cycle length in ``[2, n]`` present in ``D`` with one witness each."""
    clock = _Clock(timeout)
    found: dict[int, tuple[int, ...]] = {}
    if D.n <= DP_LIMIT:
        wanted = set(range(2, D.n + 1))
        for s in D.vertices:
            if not wanted:
                break
            _dp_from(D, s, wanted, found, clock)
    else:
        for k in range(2, D.n + 1):
            remaining = None if timeout is None else max(clock.deadline - time.monotonic(), 0.0)
            c = has_cycle_of_length(D, k, remaining)
            if c is not None:
                found[k] = c.vertices
    return CycleSpectrum(
        D.n,
        frozenset(found),
        {k: VertexSequence.cycle(found[k]) for k in sorted(found)},
    )


def hamiltonian_cycle(D: Digraph, timeout: float | None = DEFAULT_TIMEOUT) -> VertexSequence | None:
    """Held-Karp style subset programme rooted at vertex 1 (DFS beyond ``DP_LIMIT``)."""
    if D.n == 1:
        return None
    if D.n > DP_LIMIT:
        return has_cycle_of_length(D, D.n, timeout)
    found: dict[int, tuple[int, ...]] = {}
    _dp_from(D, 1, {D.n}, found, _Clock(timeout))
    return VertexSequence.cycle(found[D.n]) if found else None


def is_hamiltonian(D: Digraph, timeout: float | None = DEFAULT_TIMEOUT) -> bool:
    return hamiltonian_cycle(D, timeout) is not None


def is_pancyclic(D: Digraph, timeout: float | None = DEFAULT_TIMEOUT) -> bool:
    """Cycles of every length ``3..n`` (vacuously true when ``n < 3``)."""
    return spectrum(D, timeout).is_pancyclic


def longest_non_hamiltonian_cycle(
    D: Digraph, timeout: float | None = DEFAULT_TIMEOUT
) -> VertexSequence | None:
    spec = spectrum(D, timeout)
    shorter = [k for k in spec.present if k < D.n]
    return spec.witnesses[max(shorter)] if shorter else None


def closed_walk_lengths(D: Digraph) -> frozenset[int]:
    """Lengths ``k`` in ``[2, n]`` with ``trace(A^k) > 0``.

    A closed walk of length ``k`` is necessary for a ``k``-cycle, so this
    set always contains the cycle spectrum.
    """
    A = np.zeros((D.n, D.n), dtype=np.int64)
    for u, v in D.arcs():
        A[u - 1, v - 1] = 1
    power = A.copy()
    lengths = set()
    for k in range(2, D.n + 1):
        power = np.minimum(power @ A, 1)
        if np.trace(power) > 0:
            lengths.add(k)
    return frozenset(lengths)
