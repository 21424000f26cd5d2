import copy

import numpy as np
import pytest

from tensorring.fdmod import Bimodule
from tensorring.homcalc import IgCertificate, ig_data
from tensorring.tring import tensor_powers
from tensorring.verdict import Verdict
from tensorring.verhar import (CampaignConfig, random_module, random_pair, replay, run_lemma_suite,
                               verify_theorem)


def test_campaign_is_deterministic(qnak):
    cfg = CampaignConfig(seed=11, samples=15)
    assert verify_theorem(qnak, "GP", cfg).dumps() == verify_theorem(qnak, "GP", cfg).dumps()
    other = verify_theorem(qnak, "GP", CampaignConfig(seed=12, samples=15)).dumps()
    assert other != verify_theorem(qnak, "GP", cfg).dumps()


@pytest.mark.parametrize("variant", ["GP", "GI", "GF"])
def test_small_campaigns_verify(instance, variant):
    rep = verify_theorem(instance, variant, CampaignConfig(seed=1, samples=15))
    assert rep.status == "VERIFIED"
    assert rep.summary["disagree"] == 0


def test_wrong_certificate_forces_counterexample_and_replays(qnak):
    # Claiming T is self-injective makes every T-module look GP; stalk pairs then disagree.
    wrong = IgCertificate(qnak.ring, 0, 0, 32)
    rep = verify_theorem(qnak, "GP", CampaignConfig(seed=2, samples=20), ring_cert=wrong)
    assert rep.status == "COUNTEREXAMPLE"
    bundle = rep.counterexamples[0]
    again = replay(qnak, bundle)
    assert again.counterexample
    assert again.route_verdict.value == bundle["route"]
    honest = copy.deepcopy(bundle)
    honest["certificates"]["ring"] = ig_data(qnak.ring).to_json()
    assert not replay(qnak, honest).counterexample


def test_hypotheses_unmet_is_reported(torfail):
    rep = verify_theorem(torfail, "GP", CampaignConfig(seed=0, samples=5))
    assert rep.status == "HYPOTHESES-UNMET"
    assert rep.verdict is not Verdict.TRUE
    assert "hypotheses not established; results are exploratory" in rep.notes


def test_lemma_suite(instance):
    rep = run_lemma_suite(instance, CampaignConfig(seed=4, samples=10))
    failed = [p["name"] for p in rep.properties if not p["passed"]]
    assert failed == []
    assert rep.verdict is Verdict.TRUE


def test_config_validation():
    with pytest.raises(ValueError):
        CampaignConfig(samples=0)
    with pytest.raises(ValueError):
        CampaignConfig(classes=("nope",))


def test_random_module_bounds_and_zero(qnak):
    r = qnak.base
    assert random_module(r, CampaignConfig(max_generators=0), CampaignConfig().rng()).dim == 0
    cfg = CampaignConfig(seed=5, max_generators=3)
    rng = cfg.rng()
    for _ in range(30):
        assert random_module(r, cfg, rng).dim <= 3 * 2 * 3  # maxGenerators * h * n
    a = random_module(r, cfg, cfg.rng())
    b = random_module(r, cfg, cfg.rng())
    assert np.array_equal(a.actions, b.actions)


def test_mixed_u_regression(qnak):
    # Seed 42 gives both injective and non-injective u among ten pairs.
    cfg = CampaignConfig(seed=42)
    rng = cfg.rng()
    monos = {random_pair(qnak, cfg, rng).u_hom.is_mono() for _ in range(10)}
    assert monos == {True, False}


def test_zero_bimodule_campaign(qnak):
    tp0 = tensor_powers(qnak.base, Bimodule.zero(qnak.base, qnak.base))
    rep = verify_theorem(tp0, "GP", CampaignConfig(seed=0, samples=10))
    assert rep.status == "VERIFIED" and rep.summary["disagree"] == 0
