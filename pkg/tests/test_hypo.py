import pytest

from tensorring import constructs
from tensorring.fdmod import Bimodule, outer_tensor, tensor_over_algebra
from tensorring.homcalc import tor_dim
from tensorring.hypo import ConditionT, check_condition_t, hypothesis_report
from tensorring.tring import tensor_powers
from tensorring.verdict import DimBound, Verdict

from conftest import F2


def test_example_condition_and_dimensions(qnak):
    cond = check_condition_t(qnak)
    assert str(cond) == "Holds(M right-projective)"
    for variant in ("GP", "GI", "GF"):
        rep = hypothesis_report(qnak, variant)
        assert rep.applicable is Verdict.TRUE
        assert rep.pd_left_m == rep.fd_right_m == DimBound.finite(0)


def test_zero_bimodule():
    r = constructs.example_qnak(F2, 3, 2, 1, 3)[0]
    tp = tensor_powers(r, Bimodule.zero(r, r))
    assert check_condition_t(tp).reason == "M = 0"
    assert tp.ring.dim == r.dim


def test_semisimple_base_holds(chain):
    assert check_condition_t(chain).status == "holds"


def test_failure_witness_is_verifiable(torfail):
    cond = check_condition_t(torfail)
    assert cond.status == "fails"
    assert cond.verdict is Verdict.FALSE
    i, s, n, d = cond.witness
    r = torfail.base
    arg = tensor_over_algebra(torfail.powers[i], r.indecomposable_projective(s)[0]).module
    assert d > 0
    assert tor_dim(torfail.bimodule.as_right(), arg, n) == d
    assert cond.to_json()["witness"] == {"power": i, "projective": s, "degree": n, "torDim": d}
    assert hypothesis_report(torfail, "GP").applicable is Verdict.FALSE


def test_infinite_pd_gives_unknown():
    r = constructs.example_qnak(F2, 3, 2, 1, 3)[0]
    m = outer_tensor(r.simple(0), r.opposite.indecomposable_projective(2)[0])
    tp = tensor_powers(r, m)
    rep = hypothesis_report(tp, "GP", bound=6, tor_bound=4)
    assert rep.pd_left_m == DimBound.at_least(6)
    assert rep.applicable is Verdict.UNKNOWN
    assert rep.to_json()["pdLeftM"] == "AtLeast(6)"


def test_condition_strings():
    assert str(ConditionT("unknown", bound=5)) == "UnknownUpTo(5)"
    assert str(ConditionT("fails", witness=(1, 0, 1, 2))) == "Fails((1, 0, 1, 2))"
    assert ConditionT("unknown", bound=5).verdict is Verdict.UNKNOWN


def test_unknown_variant(qnak):
    with pytest.raises(ValueError):
        hypothesis_report(qnak, "XX")
