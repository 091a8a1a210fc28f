import pytest

from qf.intlinalg import AbelianGroup
from qf.quandles import quandle_type, is_connected
from qf.groups import (
    CosetTable,
    GroupPresentation,
    Overflow,
    abelianization,
    cyclic_reduce,
    element_order,
    free_reduce,
    invert_word,
    quandle_from_cosets,
    todd_coxeter,
    trefoil_branched_presentation,
)


def test_word_reduction():
    assert free_reduce((1, -1, 2)) == (2,)
    assert free_reduce((1, 2, -2, -1)) == ()
    assert cyclic_reduce((1, 2, -1)) == (2,)
    assert invert_word((1, -2, 3)) == (-3, 2, -1)
    with pytest.raises(ValueError):
        free_reduce((0,))


def test_presentation_drops_empty_relators():
    g = GroupPresentation(2, [(1, -1), (1, 2, -1)])
    assert g.relators == ((2,),)
    with pytest.raises(ValueError):
        GroupPresentation(1, [(2,)])


def test_trivial_enumeration():
    g = GroupPresentation(1, [(1,)])
    t = todd_coxeter(g, [])
    assert t.size == 1


def test_symmetric_group_s3():
    # <a, b | a^2, b^2, (ab)^3> has order 6
    g = GroupPresentation(2, [(1, 1), (2, 2), (1, 2) * 3])
    t = todd_coxeter(g, [])
    assert t.size == 6
    # index of <a> is 3
    assert todd_coxeter(g, [(1,)]).size == 3


def test_quaternion_group():
    # <a, b | a^4, a^2 b^-2, b^-1 a b a>
    g = GroupPresentation(2, [(1, 1, 1, 1), (1, 1, -2, -2), (-2, 1, 2, 1)])
    assert todd_coxeter(g, []).size == 8


def test_coxeter_f4():
    rels = [(1, 1), (2, 2), (3, 3), (4, 4),
            (1, 3) * 2, (1, 4) * 2, (2, 4) * 2,
            (1, 2) * 3, (2, 3) * 4, (3, 4) * 3]
    g = GroupPresentation(4, rels)
    assert todd_coxeter(g, []).size == 1152


def test_overflow():
    # Z x Z = <a, b | [a, b]> is infinite
    g = GroupPresentation(2, [(1, 2, -1, -2)])
    with pytest.raises(Overflow):
        todd_coxeter(g, [], max_cosets=500)


def test_table_is_deterministic_and_serializable():
    g = GroupPresentation(2, [(1, 1), (2, 2), (1, 2) * 3])
    t1 = todd_coxeter(g, [(1,)])
    t2 = todd_coxeter(g, [(1,)])
    assert t1 == t2
    assert CosetTable.from_json(t1.to_json()) == t1
    assert t1.rep_words[0] == ()


def test_follow_and_reps():
    g = GroupPresentation(2, [(1, 1), (2, 2), (1, 2) * 3])
    t = todd_coxeter(g, [(1,)])
    for c in range(t.size):
        assert t.coset_of_word(t.rep_words[c]) == c
    for rel in g.relators:
        for c in range(t.size):
            assert t.follow(c, rel) == c


def test_abelianization_basics():
    # Z^2
    assert abelianization(GroupPresentation(2, [])) == AbelianGroup(2)
    # Z/4
    assert abelianization(GroupPresentation(1, [(1, 1, 1, 1)])) == AbelianGroup(0, (4,))
    # trefoil group abelianizes to Z
    tref = GroupPresentation(3, [(-2, -3, 1, 3), (-3, -1, 2, 1), (-1, -2, 3, 2)])
    assert abelianization(tref) == AbelianGroup(1)


def test_trefoil_branched_small_orders():
    for n, order in [(2, 3), (3, 8), (4, 24), (5, 120)]:
        pres, _ = trefoil_branched_presentation(n)
        assert todd_coxeter(pres, []).size == order


def test_trefoil_branched_longitude_identity_at_n2():
    pres, ell = trefoil_branched_presentation(2)
    t = todd_coxeter(pres, [])
    assert t.coset_of_word(ell) == 0


def test_trefoil_branched_abelianizations():
    # first homology of the branched covers, from the n mod 6 case table
    expected = {
        5: AbelianGroup(0),
        6: AbelianGroup(2),
        7: AbelianGroup(0),
        8: AbelianGroup(0, (3,)),
        9: AbelianGroup(0, (2, 2)),
    }
    for n, group in expected.items():
        pres, _ = trefoil_branched_presentation(n)
        assert abelianization(pres) == group, f"n={n}"


def test_longitude_conjugacy_class_independent_of_index():
    # the same commutator word at every index must have the same order in the
    # finite quotient
    pres, _ = trefoil_branched_presentation(3)
    t = todd_coxeter(pres, [])
    orders = set()
    n = 3

    def gen(i):
        return (i - 1) % n + 1

    for i in range(1, n + 1):
        word = (gen(i), -gen(i - 1), -gen(i), gen(i - 1))
        c = t.coset_of_word(word)
        k = 1
        cur = c
        while cur != 0:
            cur = t.follow(cur, word)
            k += 1
        orders.add(k)
    assert orders == {2}


def test_quandle_from_cosets_dihedral():
    # the 2-fold quotient of the trefoil group over <m, l> gives the
    # 3-element dihedral quandle
    tref = GroupPresentation(3, [(-2, -3, 1, 3), (-3, -1, 2, 1), (-1, -2, 3, 2)])
    gn = GroupPresentation(3, list(tref.relators) + [(1, 1)])
    # longitude of the standard trefoil diagram: x3 x1 x2 m^-3
    ell = (3, 1, 2, -1, -1, -1)
    t = todd_coxeter(gn, [(1,), ell])
    assert t.size == 3
    q = quandle_from_cosets(t, (1,))
    assert quandle_type(q) == 2
    assert is_connected(q)


def test_element_order_via_cyclic():
    from qf.quandles import FiniteGroupElementSet
    g = FiniteGroupElementSet.cyclic(12)
    assert element_order(g, 0) == 1
    assert element_order(g, 1) == 12
    assert element_order(g, 4) == 3
