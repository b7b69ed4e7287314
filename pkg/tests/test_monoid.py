import itertools

import pytest

from tropbundles import monoid as mo
from tropbundles.semiring import BOOLEAN, TROPICAL, SemiringError, chain_semiring


def test_dual_monoid_examples():
    assert mo.dual_monoid(mo.Fan(2, (((1, 0), (0, 1)),)), 0).generators == ("x", "y")
    p1 = mo.preset_fan("P1")
    assert mo.dual_monoid(p1, 0).generators == ("x",)
    assert mo.dual_monoid(p1, 1).generators == ("x^-1",)
    overlap = mo.dual_monoid(p1, ())
    assert overlap.laurent == (True,) and mo.units(overlap).rank == 1


def test_hilbert_basis_of_skew_cone():
    m = mo.dual_monoid(mo.Fan(2, (((0, 1), (2, -1)),)), 0)
    assert len(m.generators) == 3 and len(m.relations) == 1
    (lhs, rhs), = m.relations
    assert m.vector(lhs) == m.vector(rhs)
    # every lattice point of the dual cone in a box is a nonnegative combination
    for v in itertools.product(range(-4, 5), repeat=2):
        inside = v[1] >= 0 and 2 * v[0] - v[1] >= 0
        assert m.contains(v) == inside


def test_non_simplicial_cone_rejected():
    with pytest.raises(ValueError):
        mo.Fan(2, (((1, 0), (0, 1), (1, 1)),))


def test_units():
    assert mo.units(mo.lattice_monoid(2)).rank == 0
    assert mo.units(mo.lattice_monoid(1, [0])).rank == 1
    assert mo.units(mo.lattice_monoid(2, [1])).rank == 1


def test_cancellative():
    assert mo.check_cover_condition(mo.toric_scheme("P1"))
    assert mo.check_cover_condition(mo.toric_scheme("P2"))
    bad = mo.MonoidPresentation(("x", "y"), (((1, 1), (1, 0)),))
    assert not mo.cancellative(bad)
    assert mo.cancellation_witness(bad) is not None


def test_base_change_charts():
    b = mo.base_change(mo.toric_scheme("P1"), TROPICAL)
    assert [c.name for c in b.charts] == ["tropicalQ[x]", "tropicalQ[x^-1]"]
    assert b.overlaps[(0, 1)].name == "tropicalQ[x^±]"
    a3 = mo.base_change(mo.toric_scheme("A3"), TROPICAL)
    assert [c.name for c in a3.charts] == ["tropicalQ[x,y,z]"]
    pt = mo.base_change(mo.toric_scheme("point"), BOOLEAN)
    assert pt.charts[0].base.nvars == 0


def test_units_of_monoid_semiring():
    assert mo.units_of_monoid_semiring(TROPICAL, mo.lattice_monoid(1, [0])).describe() == "Q x Z"
    assert mo.units_of_monoid_semiring(TROPICAL, mo.lattice_monoid(1)).describe() == "Q"
    assert mo.units_of_monoid_semiring(BOOLEAN, mo.lattice_monoid(1, [0])).describe() == "Z"
    with pytest.raises(SemiringError):
        mo.units_of_monoid_semiring(chain_semiring(3), mo.lattice_monoid(1))


@pytest.mark.parametrize("name", ["P1", "P2", "P1xP1", "A2", "F(1)", "F2"])
def test_toric_schemes_are_irreducible(name):
    x = mo.toric_scheme(name)
    assert x.irreducible and x.nerve_connected()
    for i, j in x.pairs():
        lift = mo.localization_map(x.charts[i], x.overlap(i, j))
        assert len(lift) == len(x.charts[i].generators)


def test_overlap_contains_both_charts():
    x = mo.toric_scheme("P2")
    for (i, j) in x.pairs():
        ov = x.overlap(i, j)
        for k in (i, j):
            for v in x.charts[k].embedding:
                assert ov.contains(v)


def test_chart_qualifies():
    x = mo.toric_scheme("P1xP1")
    assert all(mo.chart_qualifies(TROPICAL, m) for m in x.charts)
    assert not mo.chart_qualifies(chain_semiring(3), x.charts[0])


def test_monomial_names():
    assert mo.monomial_name((1, 0)) == "x"
    assert mo.monomial_name((2, -1)) == "x^2*y^-1"
    assert mo.monomial_name((0, 0)) == "1"
