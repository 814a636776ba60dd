from fractions import Fraction as F

import pytest

from valseq.defseq import (DefiningData, DepthExhausted, Recurrence, RejectedData, SeqSpec, audit, build,
                           describe_step)
from valseq.laurent import X, Y, Z, parse_poly
from valseq.presets import example


def test_sequence_values(seq71):
    assert seq71.betas[:5] == [1, F(3, 2), F(13, 4), F(53, 8), F(213, 16)]
    assert seq71.gammas[1:5] == [F(9, 4), F(13, 3), F(118, 9), F(1063, 27)]


def test_first_example_polynomials(seq71):
    assert seq71.P(2) == Y ** 2 - X ** 3
    assert seq71.Q(2) == X * Z - seq71.P(2)
    assert seq71.Q(3) == seq71.Q(2) ** 3 - X ** 13
    assert seq71.Q(4) == seq71.Q(3) ** 3 - X ** 35 * seq71.Q(2)
    assert [st.r_bar0 for st in seq71.steps[:8]] == [1, 0, 0, 0, 0, 0, 0, 0]
    assert [st.m_bar for st in seq71.steps[:4]] == [2, 2, 2, 2]


def test_second_example_polynomials(seq82):
    assert seq82.step(2).r_bar0 == 3
    assert seq82.step(2).m_bar == 3
    assert seq82.Q(3) == parse_poly("x^4*z - y^4 + x^3*y^2 + x^5*y")
    assert seq82.Q(3) == seq82.Q(2).shift_x(3) - seq82.P(3)
    assert seq82.Q(4) == seq82.Q(3) ** 3 - X ** 22


def test_coprime_example(seq81):
    assert all(st.q == 2 and st.s_bar == 3 and st.m_bar == 0 for st in seq81.steps)
    assert seq81.Q(2) == Z ** 3 - X ** 4
    assert seq81.Q(3) == seq81.Q(2) ** 3 - X ** 11 * Z


@pytest.mark.parametrize("name", ["7.1", "8.1", "8.2"])
def test_audit_degrees_and_leads(name):
    rows = audit(build(example(name)), upto=4)
    assert rows and all(r.ok for r in rows)


def test_shallow_depth_builds():
    seq = build(example("7.1", depth=2))
    assert seq.depth == 2
    assert "m_bar=2" in describe_step(seq.step(2))


def test_depth_too_small_for_level():
    with pytest.raises(DepthExhausted):
        build(example("7.1", depth=1))


def test_rejects_small_beta_growth():
    data = DefiningData(SeqSpec((1, F(3, 2), F(5, 2), F(6))), SeqSpec((F(9, 4), F(13, 3), F(40)), first_index=1),
                        depth=2)
    with pytest.raises(RejectedData):
        build(data)


def test_rejects_small_gamma_growth():
    data = DefiningData(SeqSpec((1, F(3, 2), F(13, 4), F(53, 8))),
                        SeqSpec((F(9, 4), F(3), F(40)), first_index=1), depth=2)
    with pytest.raises(RejectedData):
        build(data)


def test_seqspec_recurrence_and_prefix():
    spec = SeqSpec((1, F(3, 2)), Recurrence(2, 1, 2, 0, 2))
    assert spec.take(3) == [1, F(3, 2), F(13, 4), F(53, 8)]
    longer = SeqSpec(tuple(spec.take(5)), Recurrence(2, 1, 2, 0, 6))
    assert longer.take(7) == spec.take(7)
    with pytest.raises(RejectedData):
        SeqSpec((1,)).take(2)


def test_prefix_rebuild_gives_same_polynomials(seq71):
    d = example("7.1")
    pre = DefiningData(SeqSpec(tuple(d.beta.take(6)), d.beta.recurrence),
                       SeqSpec(tuple(d.gamma_bar.take(6)), d.gamma_bar.recurrence, 1), depth=d.depth)
    other = build(pre)
    assert [other.Q(i) for i in range(1, 5)] == [seq71.Q(i) for i in range(1, 5)]


def test_scalars_enter_the_recursion():
    d = example("7.1", depth=3)
    seq = build(DefiningData(d.beta, d.gamma_bar, lam=(F(2),), mu_bar=(F(1), F(5)), depth=3))
    assert seq.P(2) == Y ** 2 - 2 * X ** 3
    assert seq.Q(3) == seq.Q(2) ** 3 - 5 * X ** 13

