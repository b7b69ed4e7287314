import random
from fractions import Fraction

import pytest

from tropbundles import valuations as vl
from tropbundles.polynomial import Verdict
from tropbundles.puiseux import ONE, ZERO, PuiseuxScalar
from tropbundles.semiring import NEG_INF, SemiringError

t = PuiseuxScalar.monomial(1, 1)


def test_fractional_ideal_examples():
    assert vl.fractional_ideal_value([t, t * t]) == -1
    assert vl.FractionalIdeal((t, t * t)).equals(vl.FractionalIdeal((t,)))
    assert vl.fractional_ideal_value([ONE]) == 0
    assert vl.fractional_ideal_value([ZERO]) == NEG_INF


def test_fractional_ideal_homomorphism():
    rng = random.Random(0)
    for _ in range(100):
        i = vl.FractionalIdeal(tuple(vl.random_generator_list(rng)))
        j = vl.FractionalIdeal(tuple(vl.random_generator_list(rng)))
        assert (i + j).value == max(i.value, j.value)
        prod = (i * j).value
        assert prod == (NEG_INF if NEG_INF in (i.value, j.value) else i.value + j.value)
        assert i.equals(vl.FractionalIdeal((i.principal_generator(),)))


def test_trop_of_cusp():
    tp = vl.trop_algebra(vl.preset_algebra("cusp"))
    assert tp.describe() == "<x^2 = y^3>"
    ring = tp.ring
    assert tp.eq(ring.term((2, 1), 0), ring.term((0, 4), 0)) is Verdict.EQUAL


def test_trop_of_free_algebra():
    tp = vl.trop_algebra(vl.preset_algebra("free"))
    assert tp.pairs == ()


def test_trop_of_x2_tx():
    tp = vl.trop_algebra(vl.preset_algebra("x2-tx"))
    ring = tp.ring
    f = ring.poly({(2,): 0, (1,): -1})
    assert set(tp.pairs) == {(f, ring.poly({(2,): 0})), (f, ring.poly({(1,): -1}))}


def test_injectivity_spot_check():
    assert vl.preset_algebra("cusp").injectivity_spot_check(4)[0]
    ok, witness = vl.preset_algebra("cusp-free").injectivity_spot_check(4)
    assert not ok and witness is not None


def test_monomial_valuation_examples():
    free = vl.preset_algebra("free")
    w = vl.MonomialValuationWitness((Fraction(3), Fraction(-7)))
    assert vl.check_monomial_valuation(free, w).status is vl.ValuationStatus.VALID
    a = vl.preset_algebra("x2-tx")
    good = vl.check_monomial_valuation(a, vl.MonomialValuationWitness((Fraction(-1),)))
    bad = vl.check_monomial_valuation(a, vl.MonomialValuationWitness((Fraction(0),)))
    assert good.status is vl.ValuationStatus.VALID
    assert bad.status is vl.ValuationStatus.VIOLATED and bad.witness is not None


def test_monomial_relation_must_hold():
    cusp = vl.preset_algebra("cusp")
    ok = vl.MonomialValuationWitness((Fraction(3), Fraction(2)))
    bad = vl.MonomialValuationWitness((Fraction(1), Fraction(1)))
    assert vl.check_monomial_valuation(cusp, ok).status is vl.ValuationStatus.VALID
    assert vl.check_monomial_valuation(cusp, bad).status is vl.ValuationStatus.VIOLATED


def test_several_relations_give_valid_at_bound():
    a = vl.LabelledAlgebra(("x", "y"), (), (((ONE, (1, 0)), (-ONE, (0, 1))), ((ONE, (2, 0)), (-t, (0, 0)))))
    w = vl.MonomialValuationWitness((Fraction(-1, 2), Fraction(-1, 2)))
    assert vl.check_monomial_valuation(a, w).status is vl.ValuationStatus.VALID_AT_BOUND
    w = vl.MonomialValuationWitness((Fraction(0), Fraction(0)))
    assert vl.check_monomial_valuation(a, w).status is vl.ValuationStatus.VIOLATED


def test_verdict_agrees_with_evaluation_on_bend_pairs():
    # valid iff both sides of every bend pair evaluate equally at w
    tp = vl.trop_algebra(vl.preset_algebra("x2-tx"))
    a = tp.algebra
    for k in range(-6, 7):
        w = vl.MonomialValuationWitness((Fraction(k, 3),))
        valid = vl.check_monomial_valuation(a, w).status is vl.ValuationStatus.VALID
        agrees = all(vl.induced_homomorphism(tp, w, p) == vl.induced_homomorphism(tp, w, q) for p, q in tp.pairs)
        assert valid == agrees


def test_universal_valuation():
    tp = vl.trop_algebra(vl.preset_algebra("x2-tx"))
    ring = tp.ring
    assert vl.universal_valuation(tp, ONE, (0,)) == ring.one
    assert vl.universal_valuation(tp, t, (1,)) == ring.poly({(1,): -1})
    w = vl.MonomialValuationWitness((Fraction(-1),))
    assert vl.factorization_check(tp, w, [(ONE, (1,)), (ONE, (2,)), (t, (3,))])
    with pytest.raises(ValueError):
        vl.universal_valuation(tp, ZERO, (1,))


def test_target_must_be_tropical():
    w = vl.MonomialValuationWitness((Fraction(0),), target=object())
    with pytest.raises(SemiringError):
        vl.check_monomial_valuation(vl.preset_algebra("x2-tx"), w)


def test_json_roundtrip():
    for name in vl.ALGEBRA_PRESETS:
        a = vl.preset_algebra(name)
        assert vl.LabelledAlgebra.from_json(a.to_json()) == a


def test_parse_relation_coefficients():
    a = vl.LabelledAlgebra.from_json({"monoid": {"variables": ["x"], "relations": []},
                                      "relations": [[{"coeff": "1", "monomial": [2]},
                                                     {"coeff": "-t", "monomial": [1]}]]})
    assert vl.check_monomial_valuation(a, vl.MonomialValuationWitness((Fraction(-1),))).status.value == "valid"
    assert a.relations == vl.preset_algebra("x2-tx").relations
