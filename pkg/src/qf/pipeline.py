"""End-to-end pipelines: knot spec -> enumerated n-quandle -> homology, with caching.

Coset tables are cached as JSON keyed by a content hash of the presentation,
the subgroup, and the enumeration strategy version; a cache hit is bit-identical
to recomputation. Serialized results never include timings or cache counters,
so stdout output is byte-identical across runs.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from qf.catalog import KnotInput, resolve_knot_spec
from qf.diagrams import Diagram, PeripheralPresentation, analyze, wirtinger_with_peripherals
from qf.groups import (
    DEFAULT_MAX_COSETS,
    STRATEGY_VERSION,
    CosetTable,
    GroupPresentation,
    Word,
    branched_cover_group,
    element_order,
    g_n_presentation,
    quandle_from_cosets,
    todd_coxeter,
)
from qf.homology import h1 as quandle_h1
from qf.homology import h2 as quandle_h2
from qf.intlinalg import AbelianGroup
from qf.quandles import FiniteGroupElementSet, FiniteQuandle, GroupAutomorphism, is_connected, quandle_type

SCHEMA_VERSION = 1


class CosetCache:
    """Disk cache for coset tables; None directory disables caching."""

    def __init__(self, directory: Optional[Path]):
        self.directory = Path(directory) if directory is not None else None
        self.hits = 0
        self.misses = 0

    def _key(self, pres: GroupPresentation, subgroup: tuple[Word, ...]) -> str:
        payload = json.dumps({
            "ngens": pres.ngens,
            "relators": [list(w) for w in pres.relators],
            "subgroup": [list(w) for w in subgroup],
            "strategy": STRATEGY_VERSION,
        }, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()

    def todd_coxeter(self, pres: GroupPresentation, subgroup: tuple[Word, ...],
                     max_cosets: int) -> CosetTable:
        if self.directory is None:
            return todd_coxeter(pres, subgroup, max_cosets)
        path = self.directory / f"{self._key(pres, subgroup)}.json"
        if path.exists():
            self.hits += 1
            return CosetTable.from_json(json.loads(path.read_text()))
        table = todd_coxeter(pres, subgroup, max_cosets)
        self.misses += 1
        self.directory.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(table.to_json(), sort_keys=True))
        tmp.replace(path)
        return table


@dataclass
class PipelineResult:
    """Everything one (knot, n) row can report; optional fields stay None on the
    enumeration-only path."""

    knot: str
    n: int
    qn_size: int
    qn_type: int
    qn_connected: bool
    gn_order: Optional[int] = None
    pi1_order: Optional[int] = None
    longitude_order: Optional[int] = None
    h1: Optional[AbelianGroup] = None
    h2: Optional[AbelianGroup] = None
    mu: Optional[int] = None
    mu_family: Optional[str] = None
    timings: dict = field(default_factory=dict)
    cache_hits: int = 0

    def consistency_errors(self) -> list[str]:
        errors = []
        if self.gn_order is not None and self.pi1_order is not None:
            if self.gn_order != self.n * self.pi1_order:
                errors.append(f"|G_n| = {self.gn_order} != n*|pi1| = {self.n * self.pi1_order}")
        if self.pi1_order is not None and self.longitude_order is not None:
            if self.pi1_order != self.qn_size * self.longitude_order:
                errors.append(f"|pi1| = {self.pi1_order} != |Q_n|*ord(l) = "
                              f"{self.qn_size * self.longitude_order}")
        if self.h2 is not None and self.longitude_order is not None:
            torsion_order = self.h2.order()
            if self.h2.free_rank != 0 or torsion_order != self.longitude_order:
                errors.append(f"|torsion(H2)| = {self.h2} but ord(l) = {self.longitude_order}")
        return errors

    def to_json_dict(self) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "knot": self.knot,
            "n": self.n,
            "qn_size": self.qn_size,
            "type": self.qn_type,
            "connected": self.qn_connected,
        }
        for key, value in (("gn_order", self.gn_order), ("pi1_order", self.pi1_order),
                           ("longitude_order", self.longitude_order), ("mu", self.mu),
                           ("mu_family", self.mu_family)):
            if value is not None:
                out[key] = value
        if self.h1 is not None:
            out["h1"] = self.h1.to_json()
        if self.h2 is not None:
            out["h2"] = self.h2.to_json()
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        d = self.to_json_dict()
        keys = ["schema", "knot", "n", "qn_size", "type", "connected", "gn_order",
                "pi1_order", "longitude_order", "mu", "mu_family", "h1", "h2"]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(keys)
        writer.writerow([_csv_cell(d.get(k)) for k in keys])
        return buf.getvalue()


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, dict):
        return str(AbelianGroup.from_json(value))
    return str(value)


@dataclass
class BranchedData:
    """The branched cover group with its automorphism, longitude, and models."""

    group: FiniteGroupElementSet
    phi: GroupAutomorphism
    longitude: int
    longitude_order: int
    gn_order: int


class Pipeline:
    """Memoizing driver shared by the CLI commands and the verification table."""

    def __init__(self, cache: Optional[CosetCache] = None,
                 max_cosets: int = DEFAULT_MAX_COSETS):
        self.cache = cache if cache is not None else CosetCache(None)
        self.max_cosets = max_cosets
        self._knots: dict[str, KnotInput] = {}
        self._peripherals: dict[str, PeripheralPresentation] = {}
        self._diagrams: dict[str, Diagram] = {}
        self._quandles: dict[tuple[str, int], tuple[CosetTable, FiniteQuandle]] = {}
        self._branched: dict[tuple[str, int], BranchedData] = {}

    def knot(self, spec: str) -> KnotInput:
        if spec not in self._knots:
            self._knots[spec] = resolve_knot_spec(spec)
        return self._knots[spec]

    def diagram(self, spec: str) -> Diagram:
        if spec not in self._diagrams:
            self._diagrams[spec] = analyze(self.knot(spec).pd)
        return self._diagrams[spec]

    def peripherals(self, spec: str) -> PeripheralPresentation:
        if spec not in self._peripherals:
            self._peripherals[spec] = wirtinger_with_peripherals(self.diagram(spec))
        return self._peripherals[spec]

    def quandle(self, spec: str, n: int) -> tuple[CosetTable, FiniteQuandle]:
        key = (spec, n)
        if key not in self._quandles:
            per = self.peripherals(spec)
            pres = g_n_presentation(per, n)
            meridian = (per.meridian + 1,)
            table = self.cache.todd_coxeter(pres, (meridian, per.longitude), self.max_cosets)
            self._quandles[key] = (table, quandle_from_cosets(table, meridian))
        return self._quandles[key]

    def branched(self, spec: str, n: int) -> BranchedData:
        key = (spec, n)
        if key not in self._branched:
            per = self.peripherals(spec)
            pres = g_n_presentation(per, n)
            table = self.cache.todd_coxeter(pres, (), self.max_cosets)
            group, phi, ell = branched_cover_group(per, n, self.max_cosets)
            assert group.order * n == table.size
            self._branched[key] = BranchedData(
                group=group, phi=phi, longitude=ell,
                longitude_order=element_order(group, ell), gn_order=table.size)
        return self._branched[key]

    def run_enumerate(self, spec: str, n: int) -> PipelineResult:
        t0 = time.perf_counter()
        knot = self.knot(spec)
        if knot.is_unknot:
            return self._unknot_result(spec, n, full=False)
        _, q = self.quandle(spec, n)
        result = PipelineResult(
            knot=spec, n=n, qn_size=q.size, qn_type=quandle_type(q),
            qn_connected=is_connected(q), mu=knot.mu, mu_family=knot.mu_family,
            cache_hits=self.cache.hits)
        result.timings["total"] = time.perf_counter() - t0
        return result

    def run_homology(self, spec: str, n: int) -> PipelineResult:
        t0 = time.perf_counter()
        knot = self.knot(spec)
        if knot.is_unknot:
            return self._unknot_result(spec, n, full=True)
        if n < 2:
            result = self.run_enumerate(spec, n)
            _, q = self.quandle(spec, n)
            result.h1 = quandle_h1(q)
            result.h2 = quandle_h2(q)
            return result
        _, q = self.quandle(spec, n)
        data = self.branched(spec, n)
        result = PipelineResult(
            knot=spec, n=n, qn_size=q.size, qn_type=quandle_type(q),
            qn_connected=is_connected(q),
            gn_order=data.gn_order, pi1_order=data.group.order,
            longitude_order=data.longitude_order,
            h1=quandle_h1(q), h2=quandle_h2(q),
            mu=knot.mu, mu_family=knot.mu_family, cache_hits=self.cache.hits)
        result.timings["total"] = time.perf_counter() - t0
        return result

    def _unknot_result(self, spec: str, n: int, full: bool) -> PipelineResult:
        result = PipelineResult(knot=spec, n=n, qn_size=1, qn_type=1, qn_connected=True)
        if full:
            result.gn_order = n
            result.pi1_order = 1
            result.longitude_order = 1
            result.h1 = AbelianGroup(1)
            result.h2 = AbelianGroup(0)
        return result
