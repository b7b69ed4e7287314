import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tropbundles import semiring as sr
from tropbundles.semiring import BOOLEAN, NEG_INF, TROPICAL

CORPUS = [r for n in (2, 3, 4) for r in sr.enumerate_semiring_tables(n)]


def test_corpus_counts():
    assert [len(sr.enumerate_semiring_tables(n)) for n in (2, 3, 4)] == [2, 6, 36]


@pytest.mark.parametrize("r", CORPUS, ids=lambda r: r.name)
def test_corpus_tables_are_semirings(r):
    r.validate()


def test_tropical_operations():
    a, b = Fraction(3), Fraction(-1, 2)
    assert TROPICAL.add(a, b) == 3
    assert TROPICAL.mul(a, b) == Fraction(5, 2)
    assert TROPICAL.mul(a, NEG_INF) == NEG_INF
    assert TROPICAL.inverse(a) == -3
    with pytest.raises(sr.SemiringError):
        TROPICAL.inverse(NEG_INF)
    assert TROPICAL.parse("-inf") == NEG_INF


def test_bad_table_rejected():
    with pytest.raises(sr.SemiringError):
        sr.FiniteTable.from_tables([[0, 1], [1, 1]], [[0, 0], [0, 0]])  # 1 is not a unit for mul


def test_json_roundtrip():
    r = sr.dual_numbers_boolean()
    assert sr.FiniteTable.from_json(r.to_json()).mul_table == r.mul_table


def test_zero_sum_free():
    assert sr.is_zero_sum_free(BOOLEAN)
    assert not sr.is_zero_sum_free(sr.z_mod_2())
    assert sr.is_zero_sum_free(TROPICAL)


def test_idempotent_pairs():
    assert {(p.e, p.f) for p in sr.idempotent_pairs(BOOLEAN)} == {(0, 1), (1, 0)}
    bb = sr.product_table(BOOLEAN, BOOLEAN)
    e, f = bb.element("(1,0)"), bb.element("(0,1)")
    assert any((p.e, p.f) == (e, f) and not p.trivial for p in sr.idempotent_pairs(bb))
    assert all(p.trivial for p in sr.idempotent_pairs(sr.boolean_idempotent_x()))


def test_lift_idempotent_pair():
    assert sr.lift_idempotent_pair(BOOLEAN, (1, 0)) == sr.IdempotentPair(1, 0, True)
    r = sr.product_table(sr.dual_numbers_boolean(), BOOLEAN)
    lifted = sr.lift_idempotent_pair(r, (r.element("(1,0)"), r.element("(e,1)")))
    assert (r.label(lifted.e), r.label(lifted.f)) == ("(1,0)", "(0,1)")


def test_lift_needs_exhaustive_fallback():
    # 2 ~ 1 modulo the nilradical {0, 3}, yet every power of 2 is 2
    r = next(t for t in sr.enumerate_semiring_tables(4) if t.name == "S4_15")
    p = sr.lift_idempotent_pair(r, (0, 2))
    assert sr.is_idempotent_pair(r, p.e, p.f) and (p.e, p.f) == (0, 1)


def test_lift_rejects_non_pairs():
    with pytest.raises(sr.SemiringError):
        sr.lift_idempotent_pair(BOOLEAN, (1, 1))


def test_nilradical():
    assert sr.nilradical(BOOLEAN).labels() == ["0"]
    assert sr.nilradical(sr.dual_numbers_boolean()).labels() == ["0", "e"]
    assert sr.nilradical(sr.chain_semiring(3)).labels() == ["0"]


def test_spectrum():
    s = sr.spec_primes(BOOLEAN)
    assert [p.labels() for p in s.primes] == [["0"]] and s.connected and s.irreducible
    bb = sr.spec_primes(sr.product_table(BOOLEAN, BOOLEAN))
    assert len(bb.primes) == 2 and not bb.connected
    assert sr.spec_primes(sr.boolean_idempotent_x()).irreducible


@pytest.mark.parametrize("r", CORPUS, ids=lambda r: r.name)
def test_connected_spectrum_has_trivial_pairs(r):
    if sr.spec_primes(r).connected:
        assert all(p.trivial for p in sr.idempotent_pairs(r))
    assert sr.nilradical(r).saturated


@pytest.mark.parametrize("r", [r for r in CORPUS if sr.is_zero_sum_free(r)], ids=lambda r: r.name)
def test_localization_stays_zero_sum_free(r):
    for k in range(1, min(3, r.size) + 1):
        for gens in itertools.combinations(r.elements, k):
            s = sr.multiplicative_closure(r, gens)
            if r.zero in s:
                continue
            loc, _ = sr.localization_table(r, s)
            assert sr.is_zero_sum_free(loc)


def test_bourne_congruence_collapses_ideal():
    r = sr.dual_numbers_boolean()
    classes = sr.bourne_congruence(r, sr.nilradical(r).elements)
    assert classes[r.element("e")] == classes[r.zero]
    assert classes[r.one] != classes[r.zero]


@given(st.sampled_from(CORPUS), st.data())
@settings(max_examples=100, deadline=None)
def test_congruence_closure_is_a_congruence(r, data):
    pairs = data.draw(st.lists(st.tuples(st.sampled_from(list(r.elements)), st.sampled_from(list(r.elements))),
                               max_size=2))
    cls = sr.congruence_closure(r, pairs)
    for a, b in pairs:
        assert cls[a] == cls[b]
    for a, b in itertools.product(r.elements, repeat=2):
        if cls[a] == cls[b]:
            for c in r.elements:
                assert cls[r.add(a, c)] == cls[r.add(b, c)]
                assert cls[r.mul(a, c)] == cls[r.mul(b, c)]
