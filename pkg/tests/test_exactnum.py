from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, strategies as st

from valseq.exactnum import (NotAMember, Semigroup, digits, format_mixed, format_rat, group_generator,
                             index_in_group, is_reduced, minimal_generators, parse_rat, semigroup,
                             sg_member, sg_min_shift)

S2 = semigroup([1, F(3, 2), F(13, 4)])

rats = st.fractions(min_value=-50, max_value=50, max_denominator=40)
pos_rats = st.fractions(min_value=F(1, 8), max_value=6, max_denominator=12)


@pytest.mark.parametrize("text, value", [
    ("37/8", F(37, 8)), ("-3", F(-3)), ("4+5/8", F(37, 8)), ("-4-5/8", F(-37, 8)), (" 13 / 3 ", F(13, 3)),
])
def test_parse_rat(text, value):
    assert parse_rat(text) == value


@pytest.mark.parametrize("bad", ["", "1/0", "x", "3/", "1+2"])
def test_parse_rat_rejects(bad):
    with pytest.raises(ValueError):
        parse_rat(bad)


@given(rats)
def test_rat_text_round_trips(r):
    assert parse_rat(format_rat(r)) == r
    assert parse_rat(format_mixed(r)) == r


def test_mixed_rendering():
    assert format_mixed(F(37, 8)) == "4+5/8"
    assert format_mixed(F(-37, 8)) == "-4-5/8"
    assert format_mixed(F(1, 3)) == "1/3"


def test_groups_and_indices():
    G = group_generator([1, F(3, 2)])
    assert G.generator == F(1, 2)
    assert index_in_group(F(13, 4), G) == 2
    assert index_in_group(F(9, 4), group_generator([1, F(3, 2), F(13, 4)])) == 1
    assert F(5, 4) in group_generator([F(1, 4)]) + group_generator([1])


@given(st.lists(pos_rats, min_size=1, max_size=3), pos_rats)
def test_membership_matches_brute_force(gens, alpha):
    S = Semigroup(gens)
    # brute force: bounded nonnegative combinations
    bound = [int(alpha / g) + 1 for g in gens]
    brute = any(sum(n * g for n, g in zip(ns, gens)) == alpha for ns in product(*(range(b + 1) for b in bound)))
    assert S.contains(alpha) == brute
    w = sg_member(alpha, S)
    if brute:
        assert sum(S.generators[k] * n for k, n in w.items()) == alpha
    else:
        assert w is None


def test_conductor_and_shifts():
    assert S2.conductor() == 4
    assert sg_min_shift(F(9, 4), S2, 1) == 1
    assert sg_min_shift(0, S2, F(9, 4), start=1) == 2


def test_reduced_tuples():
    S = semigroup([1, F(3, 2), F(13, 4)])
    for t in [(1, 0, 0, 1), (0, 0, 0, 2), (0, 0, 1, 1)]:
        assert is_reduced(t, S, F(9, 4))
    assert not is_reduced((2, 0, 0, 1), S, F(9, 4))


def test_minimal_generators():
    assert minimal_generators([1, F(3, 2), F(13, 4), F(9, 4)]) == [1, F(3, 2), F(9, 4)]
    assert minimal_generators([2, 4, 6, 3]) == [2, 3]


def test_digits_examples():
    r = digits(F(13, 2), [1, F(3, 2)], [1, 2])
    assert (r.n0, r.p_digits) == (5, (1,))
    r = digits(F(9, 4), [1, F(3, 2), F(13, 4)], [1, 2, 2])
    assert (r.n0, r.p_digits) == (-1, (0, 1))
    with pytest.raises(NotAMember):
        digits(F(1, 3), [1, F(3, 2)], [1, 2])


@given(st.integers(-20, 20), st.integers(0, 1), st.integers(0, 1), st.integers(0, 2))
def test_digits_recover_their_input(n0, p1, p2, l1):
    betas = [1, F(3, 2), F(13, 4)]
    alpha = n0 + p1 * betas[1] + p2 * betas[2] + l1 * F(13, 3)
    r = digits(alpha, betas, [1, 2, 2], [F(13, 3)], [3])
    assert (r.n0, r.p_digits, r.t_digits) == (n0, (p1, p2), (l1,))
    assert r.value(betas, [F(13, 3)]) == alpha
