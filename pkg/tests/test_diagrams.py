import pytest

from qf.diagrams import (
    LabelError,
    MultiComponent,
    OrientationInconsistent,
    PDSyntaxError,
    analyze,
    arc_assignment,
    connected_sum,
    parse_pd,
    quandle_presentation,
    wirtinger_with_peripherals,
)
from qf.groups import Overflow, g_n_presentation, quandle_from_cosets, todd_coxeter
from qf.intlinalg import AbelianGroup
from qf.groups import abelianization
from qf.quandles import check_relators

TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"


def test_parse_trefoil():
    pd = parse_pd(TREFOIL)
    assert pd.n_crossings == 3
    assert parse_pd(pd.serialize()) == pd


def test_parse_errors():
    with pytest.raises(PDSyntaxError):
        parse_pd("")
    with pytest.raises(PDSyntaxError):
        parse_pd("X(1,2,3)")
    with pytest.raises(PDSyntaxError) as err:
        parse_pd("X(1,4,2,5) Y(3,6,4,1)")
    assert err.value.position == 11
    with pytest.raises(LabelError):
        parse_pd("X(1,1,1,1)")
    # Hopf link: labels fine, two components
    with pytest.raises(MultiComponent):
        parse_pd("X(1,3,2,4) X(3,1,4,2)")


def test_analyze_trefoil():
    d = analyze(parse_pd(TREFOIL))
    assert d.n_arcs == 3
    assert all(x.sign == 1 for x in d.crossings)
    assert d.writhe == 3
    # basepoint arc contains edge 1
    assert 1 in d.arcs[0]
    assert [x.over_arc_long for x in d.crossings] == [2, 3, 1]
    assert [x.over_arc_closed for x in d.crossings] == [2, 0, 1]


def test_analyze_rejects_double_under_in():
    # edge 3 enters two crossings as understrand; labels are still balanced
    with pytest.raises(OrientationInconsistent):
        analyze(parse_pd("X(1,5,2,6) X(3,6,4,1) X(3,2,5,4)"))


def test_wirtinger_trefoil():
    d = analyze(parse_pd(TREFOIL))
    p = wirtinger_with_peripherals(d)
    assert p.group.ngens == 3
    assert len(p.group.relators) == 3
    assert p.meridian == 0
    assert p.writhe == 3
    # preferred longitude has zero exponent sum
    assert sum(1 if v > 0 else -1 for v in p.longitude) == 0
    assert abelianization(p.group) == AbelianGroup(1)


def test_longitude_commutes_with_meridian_in_finite_quotient():
    d = analyze(parse_pd(TREFOIL))
    p = wirtinger_with_peripherals(d)
    for n in (2, 3, 4):
        t = todd_coxeter(g_n_presentation(p, n), [])
        m = (p.meridian + 1,)
        comm = m + p.longitude + tuple(-v for v in reversed(m)) + tuple(-v for v in reversed(p.longitude))
        for c in range(t.size):
            assert t.follow(c, comm) == c


def test_g2_trefoil_order_six():
    d = analyze(parse_pd(TREFOIL))
    p = wirtinger_with_peripherals(d)
    assert todd_coxeter(g_n_presentation(p, 2), []).size == 6


def test_g1_is_trivial():
    d = analyze(parse_pd(TREFOIL))
    p = wirtinger_with_peripherals(d)
    assert todd_coxeter(g_n_presentation(p, 1), []).size == 1


def test_quandle_presentation_shape():
    d = analyze(parse_pd(TREFOIL))
    qp0 = quandle_presentation(d, 0)
    assert qp0.generators == ("a0", "a1", "a2", "a3")
    assert len(qp0.relators) == 3
    qp3 = quandle_presentation(d, 3)
    assert len(qp3.relators) == 3 + 3


def test_quandle_presentation_relators_hold_in_enumeration():
    d = analyze(parse_pd(TREFOIL))
    p = wirtinger_with_peripherals(d)
    for n in (2, 3, 4):
        t = todd_coxeter(g_n_presentation(p, n), [(p.meridian + 1,), p.longitude])
        q = quandle_from_cosets(t, (p.meridian + 1,))
        assignment = arc_assignment(d, t)
        qp = quandle_presentation(d, n)
        assert check_relators(q, assignment, qp.relators), f"n={n}"


def test_connected_sum_structure():
    pd = parse_pd(TREFOIL)
    s = connected_sum(pd, pd)
    assert s.n_crossings == 6
    d = analyze(s)
    assert d.writhe == 6
    p = wirtinger_with_peripherals(d)
    assert abelianization(p.group) == AbelianGroup(1)
    # G_n(K) abelianizes to Z/n regardless of the knot
    assert abelianization(g_n_presentation(p, 2)) == AbelianGroup(0, (2,))


def test_connected_sum_overflow():
    # the 2-fold cover group of a granny knot is an infinite free product, so
    # the quandle enumeration must hit any cap
    pd = parse_pd(TREFOIL)
    s = connected_sum(pd, pd)
    p = wirtinger_with_peripherals(analyze(s))
    with pytest.raises(Overflow):
        todd_coxeter(g_n_presentation(p, 2), [(p.meridian + 1,), p.longitude], max_cosets=20000)
