"""Acceptance suite: every published value is recomputed and compared exactly.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per criterion.
"""

import random

import pytest

from qf.diagrams import (
    MultiComponent,
    analyze,
    arc_assignment,
    connected_sum,
    parse_pd,
    wirtinger_with_peripherals,
)
from qf.groups import (
    Overflow,
    abelianization,
    g_n_presentation,
    todd_coxeter,
    trefoil_branched_presentation,
)
from qf.homology import boundaries, h1
from qf.intlinalg import AbelianGroup, SparseIntMatrix, smith_normal_form
from qf.pipeline import Pipeline
from qf.quandles import (
    AxiomViolation,
    check_relators,
    from_table,
    is_connected,
    verify_extension,
)
from qf.verify import (
    CARDINALITY_CASES,
    EXTENSION_CASES,
    H2_CASES,
    LONGITUDE_CASES,
    MODEL_CASES,
    _extension_witness,
)

from test_homology import random_quandle


@pytest.fixture(scope="module")
def pipe():
    return Pipeline()


def _report(criterion: str, ok: bool, detail: str = "") -> None:
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, f"{criterion}: {detail}"


def test_criterion_1_cardinality_table(pipe):
    got = {(spec, n): pipe.run_enumerate(spec, n).qn_size for spec, n, _ in CARDINALITY_CASES}
    want = {(spec, n): size for spec, n, size in CARDINALITY_CASES}
    _report("1 cardinality table", got == want, f"{sorted(got.values())}")


def test_criterion_2_longitude_orders(pipe):
    got = {(spec, n): pipe.branched(spec, n).longitude_order for spec, n, _ in LONGITUDE_CASES}
    want = {(spec, n): k for spec, n, k in LONGITUDE_CASES}
    _report("2 longitude orders", got == want, f"{sorted(got.values())}")


def test_criterion_3_h2_classification(pipe):
    got = {(spec, n): pipe.run_homology(spec, n).h2 for spec, n, _ in H2_CASES}
    want = {(spec, n): g for spec, n, g in H2_CASES}
    _report("3 H2 classification", got == want,
            "; ".join(str(v) for v in got.values()))


def test_criterion_4_montesinos(pipe):
    spec = "montesinos:1,1/2,1/3,1/3"
    try:
        knot = pipe.knot(spec)
    except MultiComponent as exc:
        print(f"ACCEPTANCE 4 montesinos: SKIP ({exc.components} components)")
        pytest.skip(f"no single-component instance: {exc.components} components")
    assert knot.mu == 1 and knot.mu <= 2
    res = pipe.run_homology(spec, 2)
    ok = (res.qn_size == 12 * knot.mu and res.pi1_order == 24 * knot.mu
          and res.h2 == AbelianGroup(0, (2,)))
    _report("4 montesinos 12*mu1", ok,
            f"mu={knot.mu} |Q2|={res.qn_size} |pi1|={res.pi1_order} H2={res.h2}")


def test_criterion_5_type_theorem(pipe):
    cases = [(spec, n) for spec, n, _ in CARDINALITY_CASES] + [("montesinos:1,1/2,1/3,1/3", 2)]
    bad = []
    for spec, n in cases:
        res = pipe.run_enumerate(spec, n)
        if res.qn_type != n:
            bad.append((spec, n, res.qn_type))
    _report("5 type(Q_n) = n", not bad, f"checked {len(cases)} quandles")


def test_criterion_6_extension_verification(pipe):
    bad = []
    for spec, n in EXTENSION_CASES:
        witness, _ = _extension_witness(pipe, spec, n)
        data = pipe.branched(spec, n)
        if witness is None or not verify_extension(witness).ok \
                or witness.group_order != data.longitude_order:
            bad.append((spec, n))
    _report("6 central extensions", not bad, f"checked {len(EXTENSION_CASES)} witnesses")


def test_criterion_7_model_equivalence(pipe):
    bad = []
    for spec, n in MODEL_CASES + [("montesinos:1,1/2,1/3,1/3", 2)]:
        witness, iso = _extension_witness(pipe, spec, n)
        if iso is None:
            bad.append((spec, n))
    _report("7 coset model equivalence", not bad, f"checked {len(MODEL_CASES) + 1} cases")


def test_criterion_8_trefoil_cover_algebra(pipe):
    ab_want = {5: AbelianGroup(0), 6: AbelianGroup(2), 7: AbelianGroup(0),
               8: AbelianGroup(0, (3,)), 9: AbelianGroup(0, (2, 2))}
    ab_got = {}
    for n in ab_want:
        pres, _ = trefoil_branched_presentation(n)
        ab_got[n] = abelianization(pres)
    orders_ok = True
    for n, want in [(2, 3), (3, 8), (4, 24), (5, 120)]:
        pres, _ = trefoil_branched_presentation(n)
        size = todd_coxeter(pres, []).size
        data = pipe.branched("catalog:3_1", n)
        qn = pipe.run_enumerate("catalog:3_1", n).qn_size
        if size != want or data.group.order != want or qn * data.longitude_order != want:
            orders_ok = False
    _report("8 trefoil cover algebra", ab_got == ab_want and orders_ok,
            f"H1: {[str(v) for v in ab_got.values()]}, orders 3,8,24,120")


def test_criterion_9_schlafli(pipe):
    bad = []
    for n, want_size in [(3, 4), (4, 6), (5, 12)]:
        table, q = pipe.quandle("catalog:3_1", n)
        d = pipe.diagram("catalog:3_1")
        assign = arc_assignment(d, table)
        v, w = assign["a0"], assign[f"a{d.crossings[0].over_arc_long}"]
        rels = ["(v * w) * v = w", "(w * v) * w = v",
                f"w *^{n} v = w", f"v *^{n} w = v"]
        if q.size != want_size or not check_relators(q, {"v": v, "w": w}, rels):
            bad.append(n)
    _report("9 schlafli relators", not bad, "n=3,4,5 sizes 4,6,12")


def test_criterion_10a_axiom_mutation(pipe):
    rng = random.Random(2024)
    caught = 0
    trials = 1000
    for _ in range(trials):
        q = random_quandle(rng)
        while q.size < 2:
            q = random_quandle(rng)
        table = [list(row) for row in q.table]
        x = rng.randrange(q.size)
        y = rng.randrange(q.size)
        old = table[x][y]
        table[x][y] = rng.choice([v for v in range(q.size) if v != old])
        try:
            from_table(table)
        except AxiomViolation:
            caught += 1
    _report("10a axiom mutation catch rate", caught == trials, f"{caught}/{trials}")


def test_criterion_10b_chain_complex(pipe):
    rng = random.Random(77)
    checked = 0
    for _ in range(100):
        q = random_quandle(rng)
        if q.size > 6:
            continue
        s = boundaries(q)
        assert s.d2.mul(s.d3).is_zero()
        checked += 1
    for spec, n, _ in CARDINALITY_CASES:
        s = boundaries(pipe.quandle(spec, n)[1])
        assert s.d2.mul(s.d3).is_zero()
    _report("10b d2*d3 = 0", True, f"{checked} random + {len(CARDINALITY_CASES)} enumerated")


def test_criterion_10c_h1_connected(pipe):
    rng = random.Random(31)
    checked = 0
    for _ in range(60):
        q = random_quandle(rng)
        if is_connected(q):
            assert h1(q) == AbelianGroup(1)
            checked += 1
    for spec, n, _ in CARDINALITY_CASES:
        assert h1(pipe.quandle(spec, n)[1]) == AbelianGroup(1)
        checked += 1
    _report("10c h1 of connected quandles", True, f"{checked} cases")


def test_criterion_10d_snf_invariance(pipe):
    rng = random.Random(4)
    base = [[rng.randint(-6, 6) for _ in range(4)] for _ in range(4)]
    expected = smith_normal_form(SparseIntMatrix.from_dense(base)).factors
    for _ in range(100):
        rows = list(range(4))
        cols = list(range(4))
        rng.shuffle(rows)
        rng.shuffle(cols)
        shuffled = [[base[r][c] for c in cols] for r in rows]
        for i in range(4):
            if rng.random() < 0.5:
                shuffled[i] = [-v for v in shuffled[i]]
        for j in range(4):
            if rng.random() < 0.5:
                for i in range(4):
                    shuffled[i][j] = -shuffled[i][j]
        got = smith_normal_form(SparseIntMatrix.from_dense(shuffled)).factors
        assert got == expected
    _report("10d SNF shuffle invariance", True, f"factors {expected}")


def test_criterion_10e_granny_overflow(pipe):
    trefoil = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")
    granny = connected_sum(trefoil, trefoil)
    per = wirtinger_with_peripherals(analyze(granny))
    overflowed = False
    try:
        todd_coxeter(g_n_presentation(per, 2), [(per.meridian + 1,), per.longitude],
                     max_cosets=10 ** 6)
    except Overflow:
        overflowed = True
    _report("10e composite overflow at 1e6", overflowed, "Q_2(3_1 # 3_1)")
