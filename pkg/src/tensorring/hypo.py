"""Checks of the Tor-vanishing condition (T) and the dimension hypotheses on M."""

from __future__ import annotations

from dataclasses import dataclass

from .fdmod import FdModule, tensor_over_algebra
from .homcalc import DEFAULT_MAX_LEN, is_projective, minimal_resolution, pd_bound, tor_dim
from .tring import TensorPowers
from .verdict import DimBound, Verdict

DEFAULT_TOR_BOUND = 16
VARIANTS = ("GP", "GI", "GF")


@dataclass(frozen=True)
class ConditionT:
    """Outcome of checking Tor_{>=1}(M, M^i (x) P) = 0.

    ``status`` is "holds", "fails" or "unknown".  A failure carries the
    witness ``(i, s, n, dim Tor_n)`` with ``P = A e_s``.
    """

    status: str
    reason: str = ""
    witness: tuple[int, int, int, int] | None = None
    bound: int | None = None

    @property
    def verdict(self) -> Verdict:
        return {"holds": Verdict.TRUE, "fails": Verdict.FALSE}.get(self.status, Verdict.UNKNOWN)

    def __str__(self):
        if self.status == "holds":
            return f"Holds({self.reason})"
        if self.status == "fails":
            return f"Fails({self.witness})"
        return f"UnknownUpTo({self.bound})"

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.status == "holds":
            out["reason"] = self.reason
        elif self.status == "fails":
            i, s, n, d = self.witness
            out["witness"] = {"power": i, "projective": s, "degree": n, "torDim": d}
        else:
            out["bound"] = self.bound
        return out


def tensor_arguments(tp: TensorPowers) -> list[tuple[int, int, FdModule]]:
    """``(i, s, M^i (x)_R A e_s)`` for 1 <= i <= N and every vertex s."""
    r = tp.base
    out = []
    for i in range(1, tp.nil_index + 1):
        for s in range(r.n_vertices):
            proj = r.indecomposable_projective(s)[0]
            out.append((i, s, tensor_over_algebra(tp.powers[i], proj).module))
    return out


def check_condition_t(tp: TensorPowers, bound: int = DEFAULT_TOR_BOUND) -> ConditionT:
    m = tp.bimodule
    if m.dim == 0:
        return ConditionT("holds", "M = 0")
    m_right = m.as_right()
    if is_projective(m_right):
        return ConditionT("holds", "M right-projective")
    args = tensor_arguments(tp)
    if all(is_projective(x) for _, _, x in args):
        return ConditionT("holds", "arguments projective")
    all_complete = True
    for i, s, x in args:
        res = minimal_resolution(x, bound)
        top = min(bound, res.length) if res.complete else bound
        for n in range(1, top + 1):
            d = tor_dim(m_right, x, n, bound + 1)
            if d:
                return ConditionT("fails", witness=(i, s, n, d))
        all_complete = all_complete and res.complete
    if all_complete:
        return ConditionT("holds", "Tor vanishes along complete resolutions")
    return ConditionT("unknown", bound=bound)


def _finite(b: DimBound) -> Verdict:
    return Verdict.TRUE if b.exact else Verdict.UNKNOWN


def _zero(b: DimBound) -> Verdict:
    if b.exact:
        return Verdict.of(b.value == 0)
    return Verdict.FALSE if b.value >= 1 else Verdict.UNKNOWN


@dataclass
class HypothesisReport:
    variant: str
    condition_t: ConditionT
    pd_left_m: DimBound
    fd_right_m: DimBound
    fd_left_m: DimBound
    pd_right_m: DimBound
    applicable: Verdict
    notes: dict

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "conditionT": self.condition_t.to_json(),
            "pdLeftM": str(self.pd_left_m),
            "fdRightM": str(self.fd_right_m),
            "fdLeftM": str(self.fd_left_m),
            "pdRightM": str(self.pd_right_m),
            "applicable": self.applicable.value,
            "notes": dict(self.notes),
        }


def hypothesis_report(tp: TensorPowers, variant: str = "GP", bound: int = DEFAULT_MAX_LEN,
                      tor_bound: int = DEFAULT_TOR_BOUND) -> HypothesisReport:
    """Collect condition (T) and the one-sided dimensions of M for one theorem variant.

    Flat and projective dimensions agree for finite-dimensional modules, so
    the fd entries are computed as pd.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    m = tp.bimodule
    cond = check_condition_t(tp, tor_bound)
    left = pd_bound(m.as_left(), bound)
    right = pd_bound(m.as_right(), bound)
    notes = {"coherence": "satisfied: finite-dimensional",
             "finitePresentation": "satisfied: finite-dimensional",
             "flatDimension": "computed as projective dimension"}
    if variant in ("GP", "GI"):
        prefix = "" if variant == "GP" else "co-"
        notes[f"{prefix}compatibility"] = "sufficient condition only: (T) with finite one-sided dimensions"
        applicable = cond.verdict & _finite(left) & _finite(right)
    else:
        notes["leftFlat"] = "flat as a left module checked as projective"
        applicable = _zero(left) & _finite(right)
    return HypothesisReport(variant, cond, left, right, left, right, applicable, notes)
