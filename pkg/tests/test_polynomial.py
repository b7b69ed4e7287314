import itertools
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from tropbundles.polynomial import PolynomialSemiring, Verdict, bend_congruence, finite_quotient_table, quotient
from tropbundles.semiring import BOOLEAN, NEG_INF, TROPICAL

TXY = PolynomialSemiring(TROPICAL, ("x", "y"))
BX = PolynomialSemiring(BOOLEAN, ("x",))


def cusp():
    return quotient(TXY, [(TXY.term((2, 0), 0), TXY.term((0, 3), 0))])


def test_tropical_polynomial_arithmetic():
    x, y = TXY.var("x"), TXY.var("y")
    p = TXY.add(TXY.scale(x, Fraction(2), (0, 0)), y)
    assert TXY.evaluate(p, [Fraction(1), Fraction(5)]) == 5
    assert TXY.mul(p, p) == TXY.poly({(2, 0): 4, (1, 1): 2, (0, 2): 0})
    assert TXY.add(p, TXY.zero) == p


def test_cusp_identification():
    q = cusp()
    assert q.eq(TXY.term((2, 1), 0), TXY.term((0, 4), 0)) is Verdict.EQUAL
    assert q.eq(TXY.term((1, 0), 0), TXY.term((0, 1), 0)) is Verdict.DISTINCT
    a = TXY.term((3, 2), 1)
    assert q.eq(a, a) is Verdict.EQUAL


def test_boolean_idempotent_quotient():
    x = BX.var("x")
    q = quotient(BX, [(BX.mul(x, x), x)])
    assert q.eq(BX.mul(x, BX.mul(x, x)), x) is Verdict.EQUAL
    assert finite_quotient_table(q).size == 4


def test_bend_congruence():
    f = TXY.poly({(1, 0): 1, (0, 1): 2, (0, 0): 3})
    pairs = set(bend_congruence([f]))
    assert pairs == {(f, TXY.poly({(0, 1): 2, (0, 0): 3})), (f, TXY.poly({(1, 0): 1, (0, 0): 3})),
                     (f, TXY.poly({(1, 0): 1, (0, 1): 2}))}
    mono = TXY.poly({(1, 0): 1})
    assert set(bend_congruence([mono])) == {(mono, TXY.zero)}


def test_bend_of_cusp_generates_identification():
    f = TXY.poly({(2, 0): 0, (0, 3): 0})
    q = quotient(TXY, list(bend_congruence([f])))
    assert q.eq(TXY.term((2, 0), 0), TXY.term((0, 3), 0)) is Verdict.EQUAL


def test_unknown_at_bound_resolves_with_larger_bound():
    f = TXY.poly({(1, 0): 0, (0, 1): 0, (0, 0): 0})
    g = TXY.poly({(1, 0): 0, (0, 1): 0})
    pairs = list(bend_congruence([f]))
    assert quotient(TXY, pairs, closure_bound=0).eq(TXY.mul(g, g), TXY.mul(f, f)) is Verdict.UNKNOWN
    assert quotient(TXY, pairs, closure_bound=3).eq(TXY.mul(g, g), TXY.mul(f, f)) is Verdict.EQUAL


def test_separating_point_gives_distinct():
    f = TXY.poly({(1, 0): 0, (0, 1): 0, (0, 0): 0})
    q = quotient(TXY, list(bend_congruence([f])))
    assert q.eq(TXY.var("x"), TXY.one) is Verdict.DISTINCT


monos = st.tuples(st.integers(0, 4), st.integers(0, 4))
coeffs = st.integers(-3, 3).map(Fraction)
polys = st.dictionaries(monos, coeffs, min_size=1, max_size=3).map(TXY.poly)


@given(polys, polys, polys)
@settings(max_examples=80, deadline=None)
def test_quotient_is_a_congruence(a, b, c):
    q = cusp()
    if q.eq(a, b) is Verdict.EQUAL:
        assert q.eq(TXY.add(a, c), TXY.add(b, c)) is Verdict.EQUAL
        assert q.eq(TXY.mul(a, c), TXY.mul(b, c)) is Verdict.EQUAL
    assert q.eq(a, b) == q.eq(b, a)


@given(polys, polys)
@settings(max_examples=80, deadline=None)
def test_semiring_laws(a, b):
    assert TXY.add(a, b) == TXY.add(b, a)
    assert TXY.mul(a, b) == TXY.mul(b, a)
    assert TXY.add(a, a) == a
    assert TXY.mul(a, TXY.one) == a


def test_evaluation_is_a_homomorphism():
    pt = [Fraction(1, 2), Fraction(-2)]
    for a, b in itertools.product([TXY.var("x"), TXY.poly({(1, 1): 3, (0, 0): -1}), TXY.zero], repeat=2):
        assert TXY.evaluate(TXY.mul(a, b), pt) == TROPICAL.mul(TXY.evaluate(a, pt), TXY.evaluate(b, pt))
        assert TXY.evaluate(TXY.add(a, b), pt) == TROPICAL.add(TXY.evaluate(a, pt), TXY.evaluate(b, pt))
    assert TXY.evaluate(TXY.zero, pt) == NEG_INF
