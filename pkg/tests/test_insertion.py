import json
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from longcycles.digraph import (
    Digraph,
    GraphError,
    VertexSequence,
    complete_digraph,
    directed_cycle,
    validate_sequence,
)
from longcycles.families import complete_bipartite, complete_bipartite_minus_arc, semidegree_one_example
from longcycles.insertion import (
    Bypass,
    ExtensionState,
    ExtensionStep,
    LongCycleResult,
    PreconditionError,
    ResultKind,
    extend_cycle,
    find_cycle_partner,
    find_long_cycle,
    find_min_gap_bypass,
    find_partner,
    insert_vertex,
    lemma1_spectrum,
    lemma3_bound,
    seed_cycles,
)
from longcycles.oracle import spectrum
from longcycles.verifier import Theorem, digraph_from_code, hypothesis

from conftest import brute_cycles, digraphs


@st.composite
def path_plus(draw, closed: bool = False, extra: int = 1):
    """A digraph containing the path (or cycle) 1..m, plus ``extra`` more vertices."""
    m = draw(st.integers(2, 6))
    D = draw(digraphs(min_n=m + extra, max_n=m + extra))
    arcs = D.arcs() + [(i, i + 1) for i in range(1, m)]
    if closed:
        arcs.append((m, 1))
    return Digraph(D.n, arcs), m


def brute_partner(D, vs, x):
    return [i + 1 for i in range(len(vs) - 1) if D.has_arc(vs[i], x) and D.has_arc(x, vs[i + 1])]


class TestPartner:
    def test_examples(self):
        D = Digraph(4, [(1, 2), (2, 3), (1, 4), (4, 2)])
        assert find_partner(D, [1, 2, 3], 4) == 1
        D = Digraph(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
        assert find_partner(D, [1, 2, 3], 4) is None

    def test_insert_example(self):
        D = Digraph(3, [(1, 2), (1, 3), (3, 2)])
        assert insert_vertex(D, [1, 2], 3).vertices == (1, 3, 2)

    def test_rejects_vertex_on_path(self):
        with pytest.raises(GraphError):
            find_partner(directed_cycle(3), [1, 2], 2)

    def test_rejects_invalid_path(self):
        with pytest.raises(GraphError):
            find_partner(directed_cycle(3), [2, 1], 3)

    @given(path_plus())
    def test_matches_brute_force(self, inst):
        D, m = inst
        vs = tuple(range(1, m + 1))
        x = m + 1
        found = brute_partner(D, vs, x)
        assert find_partner(D, vs, x) == (found[0] if found else None)
        ins = insert_vertex(D, vs, x)
        assert (ins is None) == (not found)
        if ins is not None:
            assert len(ins) == m + 1 and validate_sequence(D, ins)

    @given(path_plus())
    def test_degree_conditions_imply_partner(self, inst):
        D, m = inst
        vs = list(range(1, m + 1))
        x = m + 1
        d = D.degree(x, vs)
        enters_first, leaves_last = D.has_arc(x, vs[0]), D.has_arc(vs[-1], x)
        if d >= m + 2:
            assert find_partner(D, vs, x) is not None
        if d >= m + 1 and (not enters_first or not leaves_last):
            assert find_partner(D, vs, x) is not None
        if d >= m and not enters_first and not leaves_last:
            assert find_partner(D, vs, x) is not None

    def test_second_condition_needs_last_to_x(self):
        # Reading the second condition with x_m x_1 in place of x_m x admits
        # x -> x_1, x_1 -> x, x_2 -> x on P = (x_1, x_2): d(x, P) = m + 1 and
        # x_2 x_1 is absent, yet no partner exists.
        D = Digraph(3, [(1, 2), (3, 1), (1, 3), (2, 3)])
        vs = [1, 2]
        assert D.degree(3, vs) == 3
        assert D.has_arc(3, 1) and not D.has_arc(2, 1)
        assert find_partner(D, vs, 3) is None

    def test_cycle_partner_wraps(self):
        D = Digraph(4, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 1)])
        assert find_cycle_partner(D, VertexSequence.cycle((1, 2, 3)), 4) == 3


class TestLemma1:
    def test_complete(self):
        cycles = lemma1_spectrum(complete_digraph(4), VertexSequence.cycle((1, 2, 3)), 4)
        assert sorted(cycles) == [2, 3, 4]

    def test_precondition(self):
        D = complete_bipartite(3, 3)
        with pytest.raises(PreconditionError, match="= 4"):
            lemma1_spectrum(D, VertexSequence.cycle((1, 4, 2, 5)), 3)

    @given(path_plus(closed=True))
    def test_full_spectrum(self, inst):
        D, m = inst
        C = VertexSequence.cycle(range(1, m + 1))
        x = m + 1
        if D.degree(x, C.vertices) < m + 1:
            with pytest.raises(PreconditionError):
                lemma1_spectrum(D, C, x)
            return
        cycles = lemma1_spectrum(D, C, x)
        assert sorted(cycles) == list(range(2, m + 2))
        for k, w in cycles.items():
            assert len(w) == k and x in w and validate_sequence(D, w)


class TestLemma3:
    def test_example(self):
        D = Digraph(3, [(1, 2), (1, 3)])
        r = lemma3_bound(D, [1, 2], 3, 3)
        assert (r.pattern_found, r.lhs, r.rhs) == (False, 1, 2)
        assert r.satisfied

    def test_pattern_found(self):
        D = Digraph(4, [(1, 2), (1, 3), (4, 2)])
        r = lemma3_bound(D, [1, 2], 3, 4)
        assert r.pattern_found and r.satisfied

    def test_rejects_on_path(self):
        with pytest.raises(GraphError):
            lemma3_bound(directed_cycle(3), [1, 2], 2, 3)

    @given(path_plus(extra=2), st.booleans())
    def test_bound(self, inst, same):
        D, m = inst
        x = m + 1
        y = x if same else m + 2
        assert lemma3_bound(D, list(range(1, m + 1)), x, y).satisfied


def brute_bypasses(D, C):
    """Every bypass as (gap, start, end, internals), by enumerating internal orders."""
    rest = [v for v in D.vertices if v not in C]
    out = []
    for r in range(1, len(rest) + 1):
        for internals in permutations(rest, r):
            if not all(D.has_arc(a, b) for a, b in zip(internals, internals[1:])):
                continue
            for s in C:
                if not D.has_arc(s, internals[0]):
                    continue
                for t in C:
                    if t != s and D.has_arc(internals[-1], t):
                        out.append((C.distance(s, t), s, t, internals))
    return out


class TestBypass:
    def test_example(self):
        D = Digraph(6, directed_cycle(5).arcs() + [(1, 6), (6, 3)])
        b = find_min_gap_bypass(D, VertexSequence.cycle(range(1, 6)))
        assert b == Bypass(1, 3, (6,), 2)

    def test_smaller_gap_wins(self):
        D = Digraph(7, directed_cycle(5).arcs() + [(1, 6), (6, 3), (4, 7), (7, 5)])
        b = find_min_gap_bypass(D, VertexSequence.cycle(range(1, 6)))
        assert b == Bypass(4, 5, (7,), 1)

    def test_spanning_cycle_rejected(self):
        with pytest.raises(GraphError):
            find_min_gap_bypass(directed_cycle(4), VertexSequence.cycle((1, 2, 3, 4)))

    def test_same_endpoint_is_not_a_bypass(self):
        D = Digraph(4, directed_cycle(3).arcs() + [(1, 4), (4, 1)])
        assert find_min_gap_bypass(D, VertexSequence.cycle((1, 2, 3))) is None

    def test_long_internal_path(self):
        D = Digraph(6, directed_cycle(3).arcs() + [(1, 4), (4, 5), (5, 6), (6, 2)])
        b = find_min_gap_bypass(D, VertexSequence.cycle((1, 2, 3)))
        assert b == Bypass(1, 2, (4, 5, 6), 1)
        assert find_min_gap_bypass(D, VertexSequence.cycle((1, 2, 3)), three_vertex_only=True) is None

    @given(path_plus(closed=True, extra=2))
    def test_matches_brute_force(self, inst):
        D, m = inst
        C = VertexSequence.cycle(range(1, m + 1))
        every = brute_bypasses(D, C)
        b = find_min_gap_bypass(D, C)
        if not every:
            assert b is None
            return
        gap, s, t, _ = min(every, key=lambda e: e[:3])
        assert (b.gap, b.start, b.end) == (gap, s, t)
        shortest = min(len(e[3]) for e in every if e[:3] == (gap, s, t))
        assert len(b.internals) == shortest
        assert validate_sequence(D, VertexSequence.path(b.vertices))
        assert b.gap == C.distance(b.start, b.end)
        assert Bypass.from_dict(b.to_dict()) == b


class TestExtension:
    def test_insertion_step(self):
        D = complete_digraph(4)
        st_ = extend_cycle(D, ExtensionState.start(D, [1, 2, 3]))
        assert len(st_.cycle) == 4 and st_.trace[-1].rule == "insert"
        assert st_.off_cycle == frozenset()

    def test_hamiltonian_rejected(self):
        D = directed_cycle(3)
        with pytest.raises(GraphError):
            extend_cycle(D, ExtensionState.start(D, [1, 2, 3]))

    def test_splice_must_lengthen(self):
        D = Digraph(6, directed_cycle(5).arcs() + [(1, 6), (6, 4)])
        assert extend_cycle(D, ExtensionState.start(D, [1, 2, 3, 4, 5])) is None

    def test_bypass_splice(self):
        D = Digraph(6, [(1, 2), (2, 1), (1, 3), (3, 4), (4, 2), (3, 5), (5, 6), (6, 4)])
        state = ExtensionState.start(D, [1, 2])
        seen = [len(state.cycle)]
        while state.off_cycle:
            state = extend_cycle(D, state)
            if state is None:
                break
            seen.append(len(state.cycle))
            assert validate_sequence(D, state.cycle)
        assert seen == sorted(set(seen))

    def test_k33_reaches_six(self):
        D = complete_bipartite(3, 3)
        state = ExtensionState.start(D, [1, 4, 2, 5])
        state = extend_cycle(D, state)
        assert len(state.cycle) == 6 and state.trace[-1].rule == "bypass"

    @given(digraphs(min_n=3, max_n=8))
    def test_steps_valid(self, D):
        for seed in seed_cycles(D, limit=5):
            state = ExtensionState.start(D, seed)
            while state.off_cycle:
                nxt = extend_cycle(D, state)
                if nxt is None:
                    break
                assert len(nxt.cycle) > len(state.cycle)
                assert validate_sequence(D, nxt.cycle)
                assert nxt.off_cycle == frozenset(D.vertices) - set(nxt.cycle.vertices)
                state = nxt

    def test_step_roundtrip(self):
        step = ExtensionStep("bypass", (1, 2, 3), bypass=Bypass(1, 3, (2,), 1))
        assert ExtensionStep.from_dict(step.to_dict()) == step


class TestFindLongCycle:
    def test_extremal(self):
        r = find_long_cycle(complete_bipartite(3, 3))
        assert r.kind is ResultKind.EXTREMAL and r.source == "recognition"
        r = find_long_cycle(complete_bipartite_minus_arc(2, 2, (1, 3)))
        assert r.kind is ResultKind.EXTREMAL

    def test_hamiltonian(self):
        for D in (complete_digraph(5), semidegree_one_example(4)):
            r = find_long_cycle(D)
            assert r.kind is ResultKind.HAMILTONIAN
            assert len(r.cycle) == D.n and validate_sequence(D, r.cycle)

    def test_near_cycle(self):
        D = complete_bipartite(3, 4)
        r = find_long_cycle(D)
        assert r.kind is ResultKind.NEAR and len(r.cycle) == 6

    def test_no_long_cycle(self):
        r = find_long_cycle(complete_bipartite(2, 4))
        assert r.kind is ResultKind.NO_LONG_CYCLE and len(r.cycle) == 4

    def test_unresolved_above_budget(self):
        r = find_long_cycle(complete_bipartite(2, 4), oracle_budget=0)
        assert r.kind is ResultKind.UNRESOLVED

    def test_preconditions(self):
        with pytest.raises(GraphError):
            find_long_cycle(directed_cycle(3))
        with pytest.raises(GraphError):
            find_long_cycle(Digraph(4, [(1, 2), (2, 3), (3, 4)]))

    def test_roundtrip(self):
        for D in (complete_bipartite(3, 3), complete_digraph(4), complete_bipartite(2, 4)):
            r = find_long_cycle(D)
            assert LongCycleResult.from_dict(json.loads(json.dumps(r.to_dict()))) == r


@pytest.mark.parametrize("theorem", [Theorem.T1, Theorem.T2])
def test_longest_non_hamiltonian_cycles_have_bypasses(theorem, class_cache):
    from isoclasses import cached_representatives

    cases = [(4, range(1 << 12)), (5, cached_representatives(5, class_cache))]
    checked = 0
    for n, codes in cases:
        for code in codes:
            D = digraph_from_code(n, int(code))
            if not hypothesis(theorem, D):
                continue
            m = max(k for k in spectrum(D).present if k < n)
            for cyc in brute_cycles(D, m):
                checked += 1
                assert find_min_gap_bypass(D, VertexSequence.cycle(cyc)) is not None
    assert checked > 0
