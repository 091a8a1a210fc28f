import json
from pathlib import Path

import pytest

from qf.catalog import resolve_knot_spec
from qf.diagrams import ParameterError
from qf.groups import GroupPresentation, todd_coxeter
from qf.pipeline import CosetCache, Pipeline


def test_resolve_specs():
    assert resolve_knot_spec("unknot").is_unknot
    assert resolve_knot_spec("catalog:3_1").pd.n_crossings == 3
    assert resolve_knot_spec("3_1").pd.n_crossings == 3
    assert resolve_knot_spec("rational:5,3").pd is not None
    assert resolve_knot_spec("torus:2,5").pd.n_crossings == 5
    mont = resolve_knot_spec("montesinos:1,1/2,1/3,1/3")
    assert mont.mu == 1 and mont.mu_family == "233"
    with pytest.raises(ParameterError):
        resolve_knot_spec("nonsense:1")
    with pytest.raises(ParameterError):
        resolve_knot_spec("no_such_knot")


def test_resolve_pd_file(tmp_path):
    path = tmp_path / "k.pd"
    path.write_text("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\n")
    knot = resolve_knot_spec(str(path))
    assert knot.pd.n_crossings == 3


def test_cache_roundtrip_is_bit_identical(tmp_path):
    pres = GroupPresentation(2, [(1, 1), (2, 2), (1, 2) * 3])
    cache = CosetCache(tmp_path)
    t1 = cache.todd_coxeter(pres, ((1,),), 10 ** 5)
    assert cache.misses == 1 and cache.hits == 0
    t2 = cache.todd_coxeter(pres, ((1,),), 10 ** 5)
    assert cache.hits == 1
    assert t1 == t2 == todd_coxeter(pres, [(1,)], 10 ** 5)
    files = list(Path(tmp_path).glob("*.json"))
    assert len(files) == 1
    json.loads(files[0].read_text())  # stored as valid JSON


def test_cache_key_distinguishes_subgroups(tmp_path):
    pres = GroupPresentation(2, [(1, 1), (2, 2), (1, 2) * 3])
    cache = CosetCache(tmp_path)
    t_full = cache.todd_coxeter(pres, (), 10 ** 5)
    t_sub = cache.todd_coxeter(pres, ((1,),), 10 ** 5)
    assert t_full.size == 6 and t_sub.size == 3
    assert cache.misses == 2


def test_pipeline_results_consistent():
    pipe = Pipeline()
    res = pipe.run_homology("catalog:3_1", 3)
    assert res.qn_size == 4
    assert res.gn_order == 24
    assert res.pi1_order == 8
    assert res.longitude_order == 2
    assert res.h1.to_json() == {"free_rank": 1, "torsion": []}
    assert res.h2.to_json() == {"free_rank": 0, "torsion": [2]}
    assert res.consistency_errors() == []


def test_pipeline_enumerate_partial():
    pipe = Pipeline()
    res = pipe.run_enumerate("torus:2,5", 3)
    assert res.qn_size == 20 and res.qn_type == 3
    assert res.gn_order is None and res.h2 is None
    d = res.to_json_dict()
    assert "gn_order" not in d and "h2" not in d


def test_pipeline_memoizes():
    pipe = Pipeline()
    t1, q1 = pipe.quandle("catalog:3_1", 3)
    t2, q2 = pipe.quandle("catalog:3_1", 3)
    assert t1 is t2 and q1 is q2


def test_unknot_results():
    pipe = Pipeline()
    res = pipe.run_homology("unknot", 4)
    assert res.qn_size == 1 and res.qn_type == 1
    assert res.h2.is_trivial
    assert res.consistency_errors() == []
