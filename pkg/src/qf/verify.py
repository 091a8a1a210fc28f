"""The verification table: recompute the classification tables and compare.

Each row recomputes one published quantity (a cardinality, a longitude order,
a homology group, an extension or model-equivalence check) from scratch and
reports PASS or FAIL; a Montesinos row whose candidate closures are all links
reports SKIP with the component counts as evidence.
"""

from __future__ import annotations

from dataclasses import dataclass

from qf.diagrams import MultiComponent, arc_assignment, quandle_presentation
from qf.groups import Overflow, abelianization, todd_coxeter, trefoil_branched_presentation
from qf.homology import h2_order_via_extension
from qf.intlinalg import AbelianGroup
from qf.pipeline import Pipeline
from qf.quandles import (
    ExtensionWitness,
    check_relators,
    coset_quandle,
    galex,
    is_isomorphic,
    right_cosets,
    verify_extension,
)

CARDINALITY_CASES = [
    ("rational:3,1", 2, 3),
    ("rational:5,1", 2, 5),
    ("rational:5,3", 2, 5),
    ("rational:7,3", 2, 7),
    ("rational:9,5", 2, 9),
    ("catalog:3_1", 3, 4),
    ("catalog:3_1", 4, 6),
    ("catalog:3_1", 5, 12),
    ("catalog:5_1", 3, 20),
]

LONGITUDE_CASES = [
    ("rational:3,1", 2, 1),
    ("rational:5,3", 2, 1),
    ("rational:7,3", 2, 1),
    ("catalog:3_1", 3, 2),
    ("catalog:3_1", 4, 4),
    ("catalog:3_1", 5, 10),
    ("catalog:5_1", 3, 6),
]

H2_CASES = [
    ("rational:3,1", 2, AbelianGroup(0)),
    ("rational:5,1", 2, AbelianGroup(0)),
    ("rational:5,3", 2, AbelianGroup(0)),
    ("rational:7,3", 2, AbelianGroup(0)),
    ("rational:9,5", 2, AbelianGroup(0)),
    ("catalog:3_1", 3, AbelianGroup(0, (2,))),
    ("catalog:3_1", 4, AbelianGroup(0, (4,))),
    ("catalog:3_1", 5, AbelianGroup(0, (10,))),
    ("catalog:5_1", 3, AbelianGroup(0, (6,))),
]

MODEL_CASES = [(spec, n) for spec, n, _ in CARDINALITY_CASES]

EXTENSION_CASES = [("catalog:3_1", 3), ("catalog:3_1", 4), ("catalog:3_1", 5),
                   ("catalog:5_1", 3)]

MONTESINOS_CANDIDATES = ["montesinos:1,1/2,1/3,1/3", "montesinos:0,1/2,-1/3,-1/3"]

TREFOIL_COVER_ORDERS = [(2, 3), (3, 8), (4, 24), (5, 120)]

TREFOIL_COVER_HOMOLOGY = [
    (5, AbelianGroup(0)),
    (6, AbelianGroup(2)),
    (7, AbelianGroup(0)),
    (8, AbelianGroup(0, (3,))),
    (9, AbelianGroup(0, (2, 2))),
]

SCHLAFLI_CASES = [(3, 4), (4, 6), (5, 12)]


@dataclass(frozen=True)
class VerifyRow:
    name: str
    status: str  # PASS, FAIL, SKIP, or OVERFLOW
    detail: str

    @property
    def passed(self) -> bool:
        return self.status in ("PASS", "SKIP")


def _extension_witness(pipe: Pipeline, spec: str, n: int):
    """Witness for GAlex(pi1, phi) -> Q_n plus the model isomorphism, or (None, None)."""
    _, q = pipe.quandle(spec, n)
    data = pipe.branched(spec, n)
    group, phi, ell = data.group, data.phi, data.longitude
    sub = group.subgroup_generated([ell])
    model = coset_quandle(group, phi, sub)
    iso = is_isomorphic(model, q)
    if iso is None:
        return None, None
    coset_of, _ = right_cosets(group, sub)
    total = galex(group, phi)
    projection = tuple(iso[coset_of[x]] for x in range(group.order))
    action = tuple(group.mult[ell][x] for x in range(group.order))
    return ExtensionWitness(total, q, projection, data.longitude_order, action), iso


def _safe_row(name: str, thunk) -> VerifyRow:
    try:
        return thunk()
    except Overflow as exc:
        return VerifyRow(name, "OVERFLOW", str(exc))


def run_verification(pipe: Pipeline) -> list[VerifyRow]:
    rows: list[VerifyRow] = []

    def cardinality_row(spec, n, want):
        res = pipe.run_enumerate(spec, n)
        ok = res.qn_size == want and res.qn_type == n and res.qn_connected
        return VerifyRow(
            f"cardinality {spec} n={n}", "PASS" if ok else "FAIL",
            f"|Q_n|={res.qn_size} (want {want}), type={res.qn_type} (want {n})")

    for spec, n, want in CARDINALITY_CASES:
        rows.append(_safe_row(f"cardinality {spec} n={n}",
                              lambda s=spec, k=n, w=want: cardinality_row(s, k, w)))

    def longitude_row(spec, n, want):
        data = pipe.branched(spec, n)
        ok = data.longitude_order == want
        return VerifyRow(
            f"longitude order {spec} n={n}", "PASS" if ok else "FAIL",
            f"ord(l)={data.longitude_order} (want {want})")

    for spec, n, want in LONGITUDE_CASES:
        rows.append(_safe_row(f"longitude order {spec} n={n}",
                              lambda s=spec, k=n, w=want: longitude_row(s, k, w)))

    def h2_row(spec, n, want):
        res = pipe.run_homology(spec, n)
        ok = res.h2 == want and not res.consistency_errors()
        return VerifyRow(
            f"H2 {spec} n={n}", "PASS" if ok else "FAIL",
            f"H2={res.h2} (want {want})")

    for spec, n, want in H2_CASES:
        rows.append(_safe_row(f"H2 {spec} n={n}",
                              lambda s=spec, k=n, w=want: h2_row(s, k, w)))

    rows.append(_safe_row("montesinos family", lambda: _montesinos_row(pipe)))

    def extension_row(spec, n):
        witness, _ = _extension_witness(pipe, spec, n)
        if witness is None:
            return VerifyRow(f"extension {spec} n={n}", "FAIL", "no model isomorphism")
        report = verify_extension(witness)
        data = pipe.branched(spec, n)
        fiber_ok = witness.group_order == data.longitude_order
        return VerifyRow(
            f"extension {spec} n={n}", "PASS" if report.ok and fiber_ok else "FAIL",
            f"E1={report.e1} E2={report.e2} hom={report.projection_is_homomorphism} "
            f"fiber={witness.group_order} (want {data.longitude_order})")

    for spec, n in EXTENSION_CASES:
        rows.append(_safe_row(f"extension {spec} n={n}",
                              lambda s=spec, k=n: extension_row(s, k)))

    def model_row(spec, n):
        _, iso = _extension_witness(pipe, spec, n)
        extra = ""
        ok = iso is not None
        if ok:
            data = pipe.branched(spec, n)
            via = h2_order_via_extension(data.group.order, pipe.quandle(spec, n)[1].size)
            ok = via == data.longitude_order
            extra = f", |pi1|/|Q_n|={via}"
        return VerifyRow(
            f"coset model {spec} n={n}", "PASS" if ok else "FAIL",
            ("isomorphism found" if iso is not None else "no isomorphism") + extra)

    for spec, n in MODEL_CASES:
        rows.append(_safe_row(f"coset model {spec} n={n}",
                              lambda s=spec, k=n: model_row(s, k)))

    def cover_order_row(n, want):
        pres, _ = trefoil_branched_presentation(n)
        size = todd_coxeter(pres, [], pipe.max_cosets).size
        diagram_order = pipe.branched("catalog:3_1", n).group.order
        ok = size == want and diagram_order == want
        return VerifyRow(
            f"trefoil cover order n={n}", "PASS" if ok else "FAIL",
            f"presentation order={size}, diagram order={diagram_order} (want {want})")

    for n, want in TREFOIL_COVER_ORDERS:
        rows.append(_safe_row(f"trefoil cover order n={n}",
                              lambda k=n, w=want: cover_order_row(k, w)))

    for n, want in TREFOIL_COVER_HOMOLOGY:
        pres, _ = trefoil_branched_presentation(n)
        got = abelianization(pres)
        rows.append(VerifyRow(
            f"trefoil cover H1 n={n}", "PASS" if got == want else "FAIL",
            f"H1={got} (want {want})"))

    for n, want_size in SCHLAFLI_CASES:
        rows.append(_safe_row(f"schlafli relators n={n}",
                              lambda k=n, w=want_size: _schlafli_row(pipe, k, w)))

    return rows


def _montesinos_row(pipe: Pipeline) -> VerifyRow:
    component_evidence = []
    for spec in MONTESINOS_CANDIDATES:
        try:
            knot = pipe.knot(spec)
        except MultiComponent as exc:
            component_evidence.append(f"{spec}: {exc.components} components")
            continue
        if knot.mu is None or knot.mu > 2 or knot.mu_family != "233":
            component_evidence.append(f"{spec}: mu={knot.mu} outside the checked range")
            continue
        res = pipe.run_homology(spec, 2)
        ok = (res.qn_size == 12 * knot.mu
              and res.pi1_order == 24 * knot.mu
              and res.h2 == AbelianGroup(0, (2,))
              and res.qn_type == 2
              and not res.consistency_errors())
        return VerifyRow(
            f"montesinos {spec}", "PASS" if ok else "FAIL",
            f"mu={knot.mu} |Q_2|={res.qn_size} (want {12 * knot.mu}) "
            f"|pi1|={res.pi1_order} (want {24 * knot.mu}) H2={res.h2} (want Z/2)")
    return VerifyRow("montesinos family", "SKIP", "; ".join(component_evidence))


def _schlafli_row(pipe: Pipeline, n: int, want_size: int) -> VerifyRow:
    spec = "catalog:3_1"
    table, q = pipe.quandle(spec, n)
    d = pipe.diagram(spec)
    assign = arc_assignment(d, table)
    v = assign["a0"]
    w = assign[f"a{d.crossings[0].over_arc_long}"]
    relators = [
        "(v * w) * v = w",
        "(w * v) * w = v",
        f"w *^{n} v = w",
        f"v *^{n} w = v",
    ]
    relators_hold = check_relators(q, {"v": v, "w": w}, relators)
    # the full arc presentation must also hold under the enumeration assignment
    qp = quandle_presentation(d, n)
    presentation_holds = check_relators(q, assign, qp.relators)
    ok = relators_hold and presentation_holds and q.size == want_size
    return VerifyRow(
        f"schlafli relators n={n}", "PASS" if ok else "FAIL",
        f"relators={relators_hold} presentation={presentation_holds} "
        f"size={q.size} (want {want_size})")


def format_rows(rows: list[VerifyRow]) -> str:
    width = max(len(r.name) for r in rows)
    lines = [f"{r.status:<8} {r.name:<{width}}  {r.detail}" for r in rows]
    counts = {"PASS": 0, "FAIL": 0, "SKIP": 0, "OVERFLOW": 0}
    for r in rows:
        counts[r.status] += 1
    lines.append(f"{counts['PASS']} passed, {counts['FAIL']} failed, "
                 f"{counts['SKIP']} skipped, {counts['OVERFLOW']} overflowed")
    return "\n".join(lines) + "\n"


def format_rows_csv(rows: list[VerifyRow]) -> str:
    import csv
    import io
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["status", "name", "detail"])
    for r in rows:
        writer.writerow([r.status, r.name, r.detail])
    return buf.getvalue()
