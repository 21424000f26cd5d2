import json

import numpy as np
import pytest

from tensorring import io
from tensorring.errors import DocumentError
from tensorring.tring import stalk, tensor_powers
from tensorring.verhar import CampaignConfig, random_copair, random_pair


def test_algebra_round_trip(qnak):
    for alg in (qnak.base, qnak.ring):
        doc = json.loads(io.dumps(io.algebra_to_json(alg)))
        back = io.algebra_from_json(doc)
        assert back.table_equal(alg)
        assert back.labels == alg.labels
        assert io.algebra_to_json(back) == doc


def test_quiver_document():
    doc = {"field": {"p": 3}, "vertices": 3,
           "arrows": [{"name": "a", "from": 0, "to": 1}, {"name": "b", "from": 1, "to": 2},
                      {"name": "c", "from": 2, "to": 0}],
           "relations": [["a", "b"], ["b", "c"], ["c", "a"]]}
    alg = io.algebra_from_json(doc)
    assert alg.dim == 6 and alg.p == 3


def test_bimodule_and_pair_round_trip(qnak):
    m = io.bimodule_from_json(json.loads(io.dumps(io.bimodule_to_json(qnak.bimodule))), qnak.base)
    assert np.array_equal(m.left, qnak.bimodule.left) and np.array_equal(m.right, qnak.bimodule.right)
    cfg = CampaignConfig(seed=3)
    rng = cfg.rng()
    for _ in range(5):
        pair = random_pair(qnak, cfg, rng)
        back = io.pair_from_json(json.loads(io.dumps(io.pair_to_json(pair))), qnak)
        assert np.array_equal(back.u, pair.u) and np.array_equal(back.x.actions, pair.x.actions)
        cp = random_copair(qnak, cfg, rng)
        back = io.copair_from_json(json.loads(io.dumps(io.copair_to_json(cp))), qnak)
        assert np.array_equal(back.vbar, cp.vbar)


def test_instance_directory(tmp_path, qnak):
    io.save_instance(tmp_path, qnak.base, qnak.bimodule)
    alg, bim = io.load_instance(tmp_path)
    assert alg.table_equal(qnak.base)
    alg2, _ = io.load_instance(tmp_path / "algebra.json", tmp_path / "bimodule.json")
    assert alg2.table_equal(qnak.base)
    assert tensor_powers(alg, bim).dims == qnak.dims


def test_errors_carry_paths(tmp_path, qnak):
    doc = io.algebra_to_json(qnak.base)
    doc["structconst"][1][2][3] = 7
    with pytest.raises(DocumentError) as err:
        io.algebra_from_json(doc, "alg.json")
    assert err.value.path == "alg.json/structconst/1/2/3"
    doc["structconst"][1][2][3] = 0
    del doc["unit"]
    with pytest.raises(DocumentError, match="missing key 'unit'"):
        io.algebra_from_json(doc)
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    with pytest.raises(DocumentError, match="line 1"):
        io.read_json(bad)


def test_manifest_version_checked(tmp_path, qnak):
    io.save_instance(tmp_path, qnak.base, qnak.bimodule)
    io.write_json(tmp_path / "manifest.json", dict(io.manifest(2), version="9"))
    with pytest.raises(DocumentError, match="version"):
        io.load_instance(tmp_path)


def test_pair_document_with_wrong_shape(qnak):
    doc = io.pair_to_json(stalk(qnak, qnak.base.regular_module()))
    doc["u"]["cols"] += 1
    with pytest.raises(DocumentError, match="/u"):
        io.pair_from_json(doc, qnak)


def test_dumps_is_canonical():
    assert io.dumps({"b": 1, "a": [1, 2]}) == io.dumps({"a": [1, 2], "b": 1})
    assert io.dumps({}).endswith("\n")
