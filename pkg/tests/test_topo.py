import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tropbundles import topo
from tropbundles.topo import PLFunction, TopCocycle

CIRCLE = topo.preset_complex("circle")
TRI = topo.preset_complex("simplex")


def affine(coeffs):
    return lambda p: sum(coeffs[v] * w for v, w in p)


@given(st.lists(st.integers(-9, 9), min_size=3, max_size=3), st.integers(0, 2))
@settings(max_examples=40, deadline=None)
def test_refinement_is_exact_on_affine_functions(coeffs, level):
    coarse = PLFunction.from_callable(TRI, (0,), level, affine(coeffs))
    fine = PLFunction.from_callable(TRI, (0,), level + 1, affine(coeffs))
    assert coarse.refine(TRI) == fine


def test_pl_operations():
    f = PLFunction.from_callable(CIRCLE, (0, 1), 1, affine([2, -1, 0, 0]))
    g = PLFunction.constant(CIRCLE, (0, 1), 0, 1)
    s = topo.pl_add(CIRCLE, f, g)
    assert s.level == 1 and all(v == f(p) + 1 for p, v in s.values)
    assert topo.pl_equal(CIRCLE, f, f.at_level(CIRCLE, 3))
    assert topo.pl_add(CIRCLE, f, f.neg()).is_zero()
    # along the edge f is 2 - 3t: the kink against 1/2 sits on the grid, against 1 it does not
    half = PLFunction.constant(CIRCLE, (0, 1), 0, Fraction(1, 2))
    m = topo.pl_max(CIRCLE, f, half)
    assert all(v == max(f.at_level(CIRCLE, m.level)(p), Fraction(1, 2)) for p, v in m.values)
    with pytest.raises(ValueError):
        topo.pl_max(CIRCLE, f, g)


def test_restriction_shrinks_closed_star():
    f = PLFunction.constant(CIRCLE, (0,), 1, 3)
    r = f.restrict(CIRCLE, (0, 1))
    assert len(r.values) < len(f.values) and all(v == 3 for _, v in r.values)
    with pytest.raises(ValueError):
        r.restrict(CIRCLE, (0,))


def test_levels_too_far_apart():
    f, g = PLFunction.constant(CIRCLE, (0, 1), 0, 1), PLFunction.constant(CIRCLE, (0, 1), 3, 1)
    with pytest.raises(ValueError):
        topo.pl_add(CIRCLE, f, g)


def test_coverings():
    ident = topo.perms_from_upper(CIRCLE, {}, 2)
    assert topo.covering_from_perm(ident, CIRCLE, 2).count == 2
    twist = topo.perms_from_upper(CIRCLE, {(0, 1): (1, 0)}, 2)
    assert topo.covering_from_perm(twist, CIRCLE, 2).count == 1
    rng = random.Random(0)
    assert topo.covering_from_perm(topo.random_top_cocycle(CIRCLE, 1, rng)).count == 1


def test_split_section():
    twist = topo.perms_from_upper(CIRCLE, {(0, 1): (1, 0)}, 2)
    c = topo.split_section(CIRCLE, twist, 2)
    assert topo.validate_top_cocycle(c)
    assert all(f.is_zero() for _, fs in c.values.values() for f in fs)
    assert topo.perm_extract(c) == twist
    assert topo.is_trivial_bundle(topo.split_section(CIRCLE, topo.perms_from_upper(CIRCLE, {}, 3), 3)).trivial


@pytest.mark.parametrize("name", ["circle", "theta", "wedge"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_split_section_then_extract(name, n):
    cx = topo.preset_complex(name)
    for perms in topo.all_perm_classes(cx, n):
        assert topo.perm_extract(topo.split_section(cx, perms, n, 1)) == perms


def test_solve_r_coboundary():
    zero = topo.split_section(CIRCLE, topo.perms_from_upper(CIRCLE, {}, 1), 1)
    phi = topo.solve_r_coboundary(zero)
    assert all(f.is_zero() for fs in phi.values() for f in fs)
    upper = {e: ((0,), (PLFunction.constant(CIRCLE, e, 0, c),)) for e, c in zip(CIRCLE.edges(), (1, 2, 0, 0))}
    c = TopCocycle.from_upper(CIRCLE, 1, upper)
    phi = topo.solve_r_coboundary(c)
    for (v, w), (_, (a,)) in c.values.items():
        edge = (min(v, w), max(v, w))
        diff = topo.pl_add(CIRCLE, phi[v][0].restrict(CIRCLE, edge), phi[w][0].restrict(CIRCLE, edge).neg())
        assert topo.pl_equal(CIRCLE, diff, a)


def test_corrupted_cocycle_is_inconsistent():
    c = topo.random_top_cocycle(CIRCLE, 1, random.Random(4))
    vals = dict(c.values)
    p, (f,) = vals[(1, 0)]
    vals[(1, 0)] = (p, (topo.pl_add(CIRCLE, f, PLFunction.constant(CIRCLE, (0, 1), 0, 1)),))
    assert topo.solve_r_coboundary(TopCocycle(CIRCLE, 1, vals)) == "inconsistent"
    assert not topo.validate_top_cocycle(TopCocycle(CIRCLE, 1, vals))


@pytest.mark.parametrize("name", topo.COMPLEX_PRESETS)
def test_line_bundles_are_trivial(name):
    cx = topo.preset_complex(name)
    rng = random.Random(name)
    for _ in range(5):
        c = topo.random_top_cocycle(cx, 1, rng)
        assert topo.validate_top_cocycle(c)
        rep = topo.is_trivial_bundle(c)
        assert rep.trivial and rep.cochain is not None


def test_connected_double_cover_is_nontrivial():
    twist = topo.perms_from_upper(CIRCLE, {(0, 1): (1, 0)}, 2)
    rep = topo.is_trivial_bundle(topo.random_top_cocycle(CIRCLE, 2, random.Random(1), perms=twist))
    assert not rep.trivial and rep.covering.count == 1


def test_class_counts():
    def classes(cx, n):
        reps = []
        for p in topo.all_perm_classes(cx, n):
            if not any(topo.perm_cocycles_equivalent(cx, p, r, n) is not None for r in reps):
                reps.append(p)
        return len(reps)

    assert [classes(CIRCLE, n) for n in (1, 2, 3)] == [1, 2, 3]
    assert classes(topo.preset_complex("tree"), 3) == 1


def test_json_roundtrip():
    c = topo.random_top_cocycle(topo.preset_complex("theta"), 2, random.Random(2), level=1)
    again = TopCocycle.from_json(c.complex, c.to_json())
    assert again.values == c.values


def test_equivalence_witness():
    rng = random.Random(5)
    c = topo.random_top_cocycle(CIRCLE, 2, rng)
    phi = topo.TopCochain({v: tuple(rng.sample(range(2), 2)) for v in range(CIRCLE.size)},
                          {v: tuple(topo.random_pl(CIRCLE, (v,), 1, rng) for _ in range(2))
                           for v in range(CIRCLE.size)})
    d = topo.conjugate_top(c, phi)
    assert topo.validate_top_cocycle(d)
    assert topo.top_cocycles_equivalent(c, d) is not None
