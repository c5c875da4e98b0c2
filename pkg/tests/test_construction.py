"""Checkpoint parameters, collision families, span oracles, signed reorder."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dpring.budgets import BudgetExceeded, Budgets
from dpring.construction import (
    CollisionElement,
    ConstructionParams,
    ParamsError,
    SpanOracle,
    SpanQuery,
    collision_elements,
    collision_test,
    count_words,
    signed_reorder,
    signed_reorder_word,
    span_basis,
    span_rows,
    word_generators,
    words_iter,
)
from dpring.fields import PrimeField, RationalField
from dpring.freealg import FreePoly, derive, poly_to_text, word_stats

Q = RationalField()
P10 = ConstructionParams(10, 3, 1, Q)
P222 = ConstructionParams(2, 2, 2, Q)


# -- parameters -----------------------------------------------------------------


def test_constructor_guards():
    with pytest.raises(ParamsError):
        ConstructionParams(1, 3, 1, Q)
    with pytest.raises(ParamsError):
        ConstructionParams(10, 1, 1, Q)
    with pytest.raises(ParamsError):
        ConstructionParams(10, 3, 0, Q)


def test_blocks_and_checkpoints():
    assert P10.block(1) == 10
    assert P10.checkpoints(1) == [0, 1, 3, 10]
    big = ConstructionParams(100, 3, 2, Q)
    assert big.block(1) == 100
    assert big.block(2) == 100**4
    assert big.checkpoints(1) == [0, 1, 3, 100]
    # inner checkpoints scale by the previous block, the last one jumps
    assert big.checkpoints(2) == [0, 100, 300, 900, 10**8]
    with pytest.raises(ParamsError):
        P10.block(2)
    with pytest.raises(ParamsError):
        P10.checkpoints(0)


def test_level_validity():
    assert P10.level_valid(1)
    assert P10.invalid_levels() == []
    P10.validate()
    # (2,2,2): the level-1 checkpoints [0,1,2,2] stall, level 2 is fine
    assert P222.checkpoints(1) == [0, 1, 2, 2]
    assert not P222.level_valid(1)
    assert P222.checkpoints(2) == [0, 2, 4, 8, 16]
    assert P222.level_valid(2)
    assert P222.invalid_levels() == [1]
    with pytest.raises(ParamsError):
        P222.require_level(1)
    P222.require_level(2)
    with pytest.raises(ParamsError):
        P222.validate()


def test_validity_matches_inequality():
    for b in (2, 3, 10):
        for r in (2, 3, 5):
            for k in (1, 2, 3):
                params = ConstructionParams(b, r, k, Q)
                assert params.level_valid(k) == (r**k < b ** (2 * k - 1)), (b, r, k)


def test_ratio_above_base_breaks_both_levels():
    p = ConstructionParams(2, 3, 2, Q)
    assert p.invalid_levels() == [1, 2]
    with pytest.raises(ParamsError, match="not strictly increasing"):
        p.validate()


# -- word enumeration --------------------------------------------------------------


def test_words_iter_order_and_count():
    got = list(words_iter(3, 2))
    assert got == sorted(got)
    assert len(got) == count_words(3, 2) == 6
    assert got[0] == (0, 0, 2)
    assert got[-1] == (2, 0, 0)
    assert list(words_iter(0, 0)) == [()]
    assert list(words_iter(0, 1)) == []
    assert list(words_iter(2, 0)) == [(0, 0)]


def test_words_iter_max_letter():
    capped = list(words_iter(4, 3, max_letter=1))
    assert capped == [w for w in words_iter(4, 3) if max(w) <= 1]
    assert list(words_iter(2, 3, max_letter=1)) == []


@given(st.integers(1, 5), st.integers(0, 6))
@settings(max_examples=40)
def test_words_iter_matches_dimension(length, degree):
    ws = list(words_iter(length, degree))
    assert len(ws) == count_words(length, degree)
    assert len(set(ws)) == len(ws)
    assert all(word_stats(w) == (length, degree) for w in ws)


def test_word_generators():
    gens = word_generators(P222, 2, 2, l=0)
    assert len(gens) == 4  # 2 letters, length 2
    texts = {poly_to_text(g) for g in gens}
    assert "1*x0.x1" in texts and "1*x1.x1" in texts
    derived = word_generators(P222, 2, 1, l=1)
    assert derived[0] == derive(FreePoly.generator(Q, 0))
    with pytest.raises(BudgetExceeded):
        word_generators(P222, 2, 30, budgets=Budgets(max_basis_size=100))


# -- collision elements --------------------------------------------------------------


def test_collision_test_repeat():
    # level 1 at base 10: checkpoint positions 1 and 3 inside words of length 9
    w = (0, 1, 0, 0, 0, 0, 0, 0, 0)
    el = collision_test(P10, 1, w)
    assert el is not None and el.kind == "repeat"
    assert el.positions == (1, 3) and el.letters == (0,)
    assert el.words == (w,)
    assert el.component() == (9, 1)
    assert el.poly(Q) == FreePoly.monomial(Q, w)
    # letters at the two positions differ: no collision
    assert collision_test(P10, 1, (1, 0, 0, 0, 0, 0, 0, 0, 0)) is None
    with pytest.raises(ValueError):
        collision_test(P10, 1, (0, 0, 0))


def test_collision_test_swap():
    s1 = (0, 0, 1, 0, 0, 0, 0, 0, 0)
    s2 = (1, 0, 0, 0, 0, 0, 0, 0, 0)
    el = collision_test(P10, 1, (s1, s2))
    assert el is not None and el.kind == "swap"
    assert el.letters == (1, 0)  # (larger, smaller)
    assert el.words == (s1, s2)
    assert el.poly(Q) == FreePoly.monomial(Q, s1) + FreePoly.monomial(Q, s2)
    # same difference at non-checkpoint positions: not a collision
    t1 = (0, 1, 0, 0, 0, 0, 0, 0, 0)
    t2 = (0, 0, 0, 1, 0, 0, 0, 0, 0)
    assert collision_test(P10, 1, (t1, t2)) is None
    # more than two differing positions is no collision either
    u2 = (1, 1, 0, 1, 0, 0, 0, 0, 0)
    assert collision_test(P10, 1, (s1, u2)) is None
    with pytest.raises(ValueError):
        collision_test(P10, 1, (s1, (0, 0)))


def test_collision_elements_degree_zero_and_one():
    els0 = list(collision_elements(P10, 1, 0))
    assert len(els0) == 1
    assert els0[0].kind == "repeat" and els0[0].words == ((0,) * 9,)
    els1 = list(collision_elements(P10, 1, 1))
    # seven repeats (the raised letter away from both checkpoints), one swap
    assert [e.kind for e in els1] == ["repeat"] * 7 + ["swap"]
    assert els1[-1].letters == (1, 0)
    assert all(e.component() == (9, 1) for e in els1)


def test_collision_elements_match_collision_test():
    for degree in range(0, 3):
        for el in collision_elements(P10, 1, degree):
            cand = el.words[0] if el.kind == "repeat" else el.words
            back = collision_test(P10, 1, cand)
            assert back is not None and back.kind == el.kind


def test_collision_elements_degenerate_level_is_empty():
    assert list(collision_elements(P222, 1, 2)) == []
    assert collision_test(P222, 1, (0,)) is None


def test_collision_elements_level_two():
    els = list(collision_elements(P222, 2, 1))
    assert els, "level 2 of (2,2,2) has collision elements"
    # all words have length N(2) - 1 = 15 and the declared degree
    assert all(e.component() == (15, 1) for e in els)
    for e in els:
        cand = e.words[0] if e.kind == "repeat" else e.words
        assert collision_test(P222, 2, cand) is not None


# -- span queries ----------------------------------------------------------------------


def test_span_query_validation():
    with pytest.raises(ValueError):
        SpanQuery("nothing", 5, 1, level=1)
    with pytest.raises(ValueError):
        SpanQuery("words", 0, 1, level=1)
    with pytest.raises(ValueError):
        SpanQuery("words", 5, 1)          # level missing
    with pytest.raises(ValueError):
        SpanQuery("ideal", 5, 1, level=1)  # truncated union takes no level
    SpanQuery("ideal", 5, 1)
    SpanQuery("collisions_sum", 5, 1, level=2)


def test_span_rows_frozen_counts():
    # one level-one block plus a filler letter
    assert len(list(span_rows(P10, SpanQuery("collisions", 9, 1, level=1)))) == 8
    assert len(list(span_rows(P10, SpanQuery("words", 20, 0, level=1)))) == 2
    assert len(list(span_rows(P10, SpanQuery("words", 20, 1, level=1)))) == 22
    assert len(list(span_rows(P10, SpanQuery("ideal_level", 20, 0, level=1)))) == 1
    assert len(list(span_rows(P10, SpanQuery("ideal_level", 20, 1, level=1)))) == 1


def test_span_rows_budgets():
    with pytest.raises(BudgetExceeded):
        list(span_rows(P10, SpanQuery("collisions", 9, 1, level=1),
                       Budgets(max_component_dim=5)))
    with pytest.raises(BudgetExceeded):
        list(span_rows(P10, SpanQuery("words", 20, 1, level=1),
                       Budgets(max_basis_size=10)))


def test_span_basis_polynomials():
    polys = span_basis(P10, SpanQuery("collisions", 9, 0, level=1))
    assert polys == [FreePoly.monomial(Q, (0,) * 9)]


def test_ideal_truncates_by_length():
    # at length 20 only level 1 contributes (2 * N(2) would need length 200)
    q_union = SpanQuery("ideal", 20, 1)
    q_level = SpanQuery("ideal_level", 20, 1, level=1)
    assert list(span_rows(P10, q_union)) == list(span_rows(P10, q_level))


# -- the membership oracle ----------------------------------------------------------


def test_oracle_member_and_verify():
    oracle = SpanOracle(P10)
    q = SpanQuery("collisions", 9, 1, level=1)
    member = FreePoly.monomial(Q, (0, 1, 0, 0, 0, 0, 0, 0, 0))
    cert = oracle.member(member, q)
    assert cert.kind == "member"
    assert oracle.verify(member, q, cert)
    stray = FreePoly.monomial(Q, (1,) + (0,) * 8)
    cert2 = oracle.member(stray, q)
    assert cert2.kind == "non_member"
    assert oracle.verify(stray, q, cert2)


def test_oracle_component_stats():
    oracle = SpanOracle(P10)
    stats = oracle.component_stats(SpanQuery("collisions", 9, 1, level=1))
    assert stats == {"component_dimension": 9, "family_size": 8, "rank": 8}


def test_oracle_normal_form_frozen():
    oracle = SpanOracle(P10)
    q = SpanQuery("collisions", 9, 1, level=1)
    probe = FreePoly.monomial(Q, (0, 0, 1, 0, 0, 0, 0, 0, 0))
    nf = oracle.normal_form(probe, q)
    assert poly_to_text(nf) == "-1*x1.x0.x0.x0.x0.x0.x0.x0.x0"
    # idempotent
    assert oracle.normal_form(nf, q) == nf
    # the collision combination itself reduces to zero
    swap = probe + FreePoly.monomial(Q, (1,) + (0,) * 8)
    assert oracle.normal_form(swap, q).is_zero()


def test_oracle_rejects_mixed_or_inhomogeneous_input():
    oracle = SpanOracle(P10)
    q = SpanQuery("collisions", 9, 1, level=1)
    with pytest.raises(ValueError):
        oracle.member(FreePoly.monomial(Q, (0,) * 5), q)
    mixed = FreePoly.monomial(Q, (0,) * 9) + FreePoly.monomial(Q, (1,) + (0,) * 8)
    with pytest.raises(ValueError):
        oracle.member(mixed, q)
    with pytest.raises(ValueError):
        oracle.member(FreePoly.monomial(PrimeField(3), (0,) * 9), q)


def test_oracle_zero_is_member_everywhere():
    oracle = SpanOracle(P10)
    q = SpanQuery("words", 20, 1, level=1)
    cert = oracle.member(FreePoly.zero(Q), q)
    assert cert.kind == "member" and cert.combination == []
    assert oracle.verify(FreePoly.zero(Q), q, cert)
    assert oracle.normal_form(FreePoly.zero(Q), q).is_zero()


def test_oracle_membership_certificates_over_gf3():
    params = ConstructionParams(10, 3, 1, PrimeField(3))
    oracle = SpanOracle(params)
    q = SpanQuery("collisions", 9, 1, level=1)
    f = params.field
    member = FreePoly.monomial(f, (0, 1, 0, 0, 0, 0, 0, 0, 0), 2)
    cert = oracle.member(member, q)
    assert cert.kind == "member" and oracle.verify(member, q, cert)


def test_words_space_contains_block_products():
    # u * D^l(core) * v with the level-one core x0^10
    oracle = SpanOracle(P10)
    q = SpanQuery("words", 20, 1, level=1)
    core = FreePoly.monomial(Q, (0,) * 10)
    u = FreePoly.monomial(Q, (0,) * 10)
    candidate = u * derive(core)
    cert = oracle.member(candidate, q)
    assert cert.kind == "member"
    assert oracle.verify(candidate, q, cert)


# -- signed reorder -----------------------------------------------------------------


def test_signed_reorder_word_cases():
    # identity arrangement keeps sign +1 and the word unchanged
    w = (0, 0, 1, 0, 0, 0, 0, 0, 0)
    assert signed_reorder_word(P10, 1, w) == (1, w)
    # transposed letters flip the sign and are rewritten ascending
    assert signed_reorder_word(P10, 1, (1, 0, 0, 0, 0, 0, 0, 0, 0)) == (-1, w)
    # a foreign letter at a checkpoint position sends the word to zero
    assert signed_reorder_word(P10, 1, (2, 0, 1, 0, 0, 0, 0, 0, 0)) is None
    with pytest.raises(ValueError):
        signed_reorder_word(P10, 1, (0, 0, 0))
    with pytest.raises(ParamsError):
        signed_reorder_word(P222, 1, (0,))  # degenerate level refuses


def test_signed_reorder_kills_collision_elements():
    for degree in range(0, 3):
        for el in collision_elements(P10, 1, degree):
            assert signed_reorder(P10, 1, el.poly(Q)).is_zero(), el


def test_signed_reorder_level_two_kills_collisions():
    for degree in range(0, 2):
        for el in collision_elements(P222, 2, degree):
            assert signed_reorder(P222, 2, el.poly(Q)).is_zero(), el


def test_signed_reorder_is_linear():
    w1 = (0, 0, 1, 0, 0, 0, 0, 0, 0)
    w2 = (1, 0, 0, 0, 0, 0, 0, 0, 0)
    p = FreePoly.monomial(Q, w1, 3) + FreePoly.monomial(Q, w2, 5)
    img = signed_reorder(P10, 1, p)
    # 3 * (+w1) + 5 * (-w1)
    assert img == FreePoly.monomial(Q, w1, -2)
