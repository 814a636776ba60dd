from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from valseq.defseq import DefiningData, SeqSpec, build
from valseq.expand import Basis, nu
from valseq.jumpseq import (IncompleteRun, JumpState, match_probe, parse_run_line, r_chain, run,
                            semigroup_report)
from valseq.laurent import LaurentPoly
from valseq.verify import jump_run


def brute_D(state, pos):
    """Reduced irreducible tuples by exhaustive search over the digit box."""
    e = state.invariants(pos)
    seq = state.seq
    mu = e.s * e.gamma
    Phi = state.phi(e.m, pos - 1)
    gens = [state.betas[0]] + [state.betas[j] for j in range(1, e.m + 1)]
    bounds = [e.r0] + [seq.step(j).q - 1 for j in range(1, e.m + 1)]
    tcoords = []
    for j in range(1, pos):
        f = state.invariants(j)
        if f.zero:
            continue
        tcoords.append(j)
        gens.append(f.gamma)
        bounds.append(f.r * f.s - 1)
    forb = []
    for j in range(1, pos):
        for v in state.forbidden(j):
            forb.append(v)

    def coord_map(vec, b):
        m = {("P", k): x for k, x in enumerate(vec[: e.m + 1])}
        m.update({("T", j): x for j, x in zip(tcoords, vec[e.m + 1:])})
        m[("T", pos)] = b * e.s
        return m

    def value(vec, b):
        return sum(x * g for x, g in zip(vec, gens)) + b * mu

    out = set()
    for b in range(1, e.r + 1):
        for vec in product(*(range(x + 1) for x in bounds)):
            v = value(vec, b)
            if v not in Phi:
                continue
            smaller = any(value(w, bb) in Phi
                          for w in product(*(range(x + 1) for x in vec)) for bb in range(1, b + 1)
                          if sum(w) + bb < sum(vec) + b)
            if smaller:
                continue
            cm = coord_map(vec, b)
            if any(all(cm.get(k, 0) >= x for k, x in f.items()) for f in forb):
                continue
            c = [0] * (pos - 1)
            for j, x in zip(tcoords, vec[e.m + 1:]):
                c[j - 1] = x
            out.add(tuple(vec[: e.m + 1]) + tuple(c) + (b,))
    return out


@pytest.mark.parametrize("name, upto", [("7.1", 3), ("8.2", 3)])
def test_reduced_tuples_match_exhaustive_search(name, upto):
    state = jump_run(name, None, 9)
    for pos in range(1, upto + 1):
        got = {d.a + d.c for d in state.entry(pos).D}
        assert got == brute_D(state, pos)


def test_first_example_tuple_sets():
    st7 = jump_run("7.1", None, 9)
    assert {d.a + d.c for d in st7.entry(1).D} == {(1, 0, 0, 1), (0, 0, 0, 2), (0, 0, 1, 1)}
    assert {d.a + d.c for d in st7.entry(2).D} == {(0, 0, 0, 0, 1)}
    assert {d.a + d.c for d in st7.entry(3).D} == {(2, 0, 0, 0, 0, 0, 1), (1, 0, 1, 0, 0, 0, 1),
                                                  (0, 0, 0, 0, 0, 0, 2), (0, 0, 0, 1, 0, 0, 1)}


def test_first_example_values_cross_checked():
    # every T is re-valued by the division route from its explicit polynomial
    state = jump_run("7.1", None, 9)
    for e in state.entries:
        assert nu(e.T.to_poly(), state.seq) == e.gamma
    # frozen from that cross-check
    assert [e.gamma for e in state.entries] == [F(9, 4), F(13, 3), F(37, 8), F(45, 8), F(118, 9), F(91, 12),
                                                F(59, 6), F(149, 16), F(181, 16)]


def test_successor_values_grow():
    for name, bound in (("7.1", 10), ("8.2", 9)):
        state = jump_run(name, F(bound), None)
        for e in state.entries:
            if e.parent and not e.zero:
                parent = state.entry(e.parent[0])
                assert e.gamma > parent.s * parent.gamma
                assert e.gamma > e.parent[1].value


def test_only_successor_index():
    state = jump_run("7.1", None, 9)
    assert state.entry(5).parent[0] == 2
    assert len(state.entry(2).D) == 1


def test_bound_below_first_value():
    state = run(jump_run("7.1", None, 9).seq, value_bound=F(2))
    assert [e.label for e in state.entries] == ["1"]


def test_second_example_run():
    state = jump_run("8.2", None, 10)
    assert [e.gamma for e in state.entries][8:] == [F(39, 8), F(47, 8)]
    assert state.entry(8).status.kind == "R"
    assert {d.a + d.c for d in state.entry(2).D} == {(3, 0, 0, 0, 0, 1), (0, 0, 0, 0, 0, 2),
                                                    (2, 0, 1, 0, 0, 1), (0, 0, 0, 1, 0, 1)}


def test_second_example_bounded_tree():
    state = jump_run("8.2", F(9), None)
    labels = [e.label for e in state.entries]
    assert labels[:17] == [str(i) for i in range(1, 18)]
    assert {"9:1", "9:2", "9:3", "9:4", "10:1"} <= set(labels)
    assert state.by_label("10:1:1:1").zero
    assert state.by_label("9:1:1").gamma == F(101, 16)
    assert state.by_label("9:1:1:2").gamma == F(103, 12)


def test_classification():
    st7 = jump_run("7.1", None, 9)
    assert st7.entry(3).status.kind == "I"
    assert st7.entry(4).status.kind == "R"
    assert st7.entry(4).status.witness
    st2 = jump_run("8.2", F(9), None)
    assert st2.by_label("10:1:1:1").status.kind == "R"


def test_peel_bound_gives_unknown():
    state = jump_run("7.1", None, 9)
    assert state.classify_redundant(4, peel_bound=1).kind in ("U", "R")
    assert state.classify_redundant(9, peel_bound=1).kind == "U"


def test_semigroup_reports():
    rep = semigroup_report(jump_run("8.2", F(9), None), F(9))
    assert rep.generators == [1, F(3, 2), F(9, 4), F(29, 8), F(39, 8), F(101, 16), F(22, 3), F(121, 16),
                              F(103, 12)]
    assert rep.sources[F(39, 8)] == "T_9"
    rep = semigroup_report(jump_run("7.1", F(9), None), F(9))
    assert rep.generators == [1, F(3, 2), F(9, 4), F(13, 3), F(37, 8)]
    assert semigroup_report(jump_run("7.1", F(9), None), F(1, 2)).generators == []


def test_semigroup_report_refuses_short_runs():
    with pytest.raises(IncompleteRun):
        semigroup_report(jump_run("8.2", None, 4), F(9))


def test_r_chain():
    seq = jump_run("7.1", None, 9).seq
    rows = r_chain(seq, 4)
    assert [r.nu for r in rows] == [F(9, 4), F(37, 8), F(149, 16), F(597, 32)]
    assert all(r.ok for r in rows)
    assert rows[1].R.to_poly() == LaurentPoly({(0, 0, 2): 1, (3, 1, 0): -1})


def test_r_chain_is_guarded():
    data = DefiningData(SeqSpec((F(1), F(4, 3))), SeqSpec((F(5, 2),), first_index=1), depth=2)
    with pytest.raises(ValueError):
        r_chain(build(data), 1)


def test_match_probe_matches():
    state = jump_run("7.1", F(10), None)
    rows = {r.label: r.match for r in match_probe(state, r_chain(state.seq, 6, state.basis), F(10))}
    assert rows["2"] == "Q_2"
    assert rows["3"] == "R_2"
    full = jump_run("7.1", None, 9)
    B = full.basis
    assert full.entry(5).T == B.Q(3)


def test_coprime_example_tracks_defining_sequence():
    state = jump_run("8.1", None, 7)
    for i in range(1, 7):
        assert state.entry(i).T == state.basis.Q(i)
        assert state.entry(i).m == 0
    assert all(state.entry(i).delta == 1 for i in range(1, 6))


def test_lines_parse_back():
    state = jump_run("8.2", F(9), None)
    for e, line in zip(state.entries, state.lines()):
        f = parse_run_line(line)
        assert f["i"] == e.label and f["gamma"] == e.gamma
        if "poly" in f:
            assert state.basis.from_poly(f["poly"]) == e.T
        else:
            assert {k: F(v) for k, v in f["basis"].items()} == {k: F(v) for k, v in e.T.terms.items()}


@settings(max_examples=30)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(0, 2), st.integers(-5, 5)),
                min_size=1, max_size=4))
def test_values_lie_in_the_semigroup(spec):
    state = jump_run("8.2", F(9), None)
    f = LaurentPoly({(a, b, c): k for a, b, c, k in spec if k})
    if not f:
        return
    v = nu(f, state.seq)
    if v < 9:
        gens = semigroup_report(state, F(9)).generators
        from valseq.exactnum import semigroup
        assert v in semigroup(gens)
