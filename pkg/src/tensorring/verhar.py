"""Seeded verification campaigns comparing the Phi/Psi route with direct classification over T."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from . import exactla as la
from . import io
from .algebra import Algebra
from .fdmod import FdModule, cokernel_mod, direct_sum, hom_basis, k_dual, tensor_over_algebra
from .homcalc import (IgCertificate, ProjSum, ext_dim, id_bound, ig_data, is_injective, is_projective,
                      minimal_resolution, pd_bound, socle_of, tor_dim)
from .hypo import check_condition_t, hypothesis_report
from .tring import (CopairModule, PairModule, TensorPowers, canonical_copresentation, canonical_presentation,
                    classify_over_t, coind, coind_adjunction, cok_functor, ind, ind_adjunction, k_functor,
                    phi_membership, psi_membership)
from .verdict import Verdict

CLASS_TAGS = ("proj", "inj", "flat", "gp", "gi", "gf")
VARIANT_TAGS = {"GP": "gp", "GI": "gi", "GF": "gf"}


@dataclass(frozen=True)
class CampaignConfig:
    seed: int = 0
    samples: int = 20
    max_generators: int = 3
    max_presentation_cols: int = 4
    classes: tuple[str, ...] = ("gp",)
    max_len: int = 32
    tor_bound: int = 16

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        bad = set(self.classes) - set(CLASS_TAGS)
        if bad:
            raise ValueError(f"unknown classes {sorted(bad)}")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def to_json(self) -> dict:
        d = asdict(self)
        d["classes"] = list(self.classes)
        return d


# -- sampling ----------------------------------------------------------------


def _random_combination(rng, basis: np.ndarray, p: int) -> np.ndarray:
    if basis.shape[1] == 0:
        return np.zeros(basis.shape[0], dtype=np.int64)
    coeffs = rng.integers(0, p, size=basis.shape[1])
    return la.matmul(basis, coeffs.reshape(-1, 1), p)[:, 0]


def random_module(alg: Algebra, cfg: CampaignConfig, rng: np.random.Generator) -> FdModule:
    """Cokernel of a uniformly random map ``P_1 -> P_0`` between sums of indecomposable projectives."""
    p = alg.p
    nv = alg.n_vertices
    if cfg.max_generators == 0:
        return FdModule.zero(alg)
    gens = int(rng.integers(1, cfg.max_generators + 1))
    cols = int(rng.integers(0, cfg.max_presentation_cols + 1))
    p0 = ProjSum(alg, tuple(int(s) for s in rng.integers(0, nv, size=gens)))
    p1 = ProjSum(alg, tuple(int(s) for s in rng.integers(0, nv, size=cols)))
    images = []
    for s in p1.vertices:
        corner = la.image_basis(p0.module.act(alg.idempotents[s]), p)
        images.append(_random_combination(rng, corner, p))
    from .fdmod import ModHom

    f = ModHom(p1.module, p0.module, p1.hom_to(p0.module, images), check=False)
    x, _ = cokernel_mod(f)
    return x


def _random_hom(rng, homs, shape, p) -> np.ndarray:
    out = la.zeros(*shape)
    for h in homs:
        out = (out + int(rng.integers(0, p)) * h.matrix) % p
    return out


def random_pair(tp: TensorPowers, cfg: CampaignConfig, rng: np.random.Generator) -> PairModule:
    """X random; u uniform in Hom_R(M (x) X, X)."""
    x = random_module(tp.base, cfg, rng)
    probe = PairModule(tp, x, None, check=False)
    homs = hom_basis(probe.tensor.module, x) if probe.tensor.dim and x.dim else []
    u = _random_hom(rng, homs, (x.dim, probe.tensor.dim), tp.p)
    return PairModule(tp, x, u, check=False, tensor=probe.tensor)


def random_copair(tp: TensorPowers, cfg: CampaignConfig, rng: np.random.Generator) -> CopairModule:
    """Y a random right module; vbar uniform in Hom_{R^op}(Y (x) M, Y)."""
    y = random_module(tp.base.opposite, cfg, rng)
    probe = CopairModule(tp, y, None, check=False)
    homs = hom_basis(probe.tensor.module, y) if probe.tensor.dim and y.dim else []
    vbar = _random_hom(rng, homs, (y.dim, probe.tensor.dim), tp.p)
    return CopairModule(tp, y, vbar, check=False, tensor=probe.tensor)


# -- reports -----------------------------------------------------------------


def environment(tp: TensorPowers) -> dict:
    return {
        "field": {"p": tp.p},
        "algebraDigest": io.digest(io.algebra_to_json(tp.base)),
        "bimoduleDigest": io.digest(io.bimodule_to_json(tp.bimodule)),
        "nilIndex": tp.nil_index,
        "dims": tp.dims,
        "version": __version__,
    }


def _cert_json(c: IgCertificate | None):
    return None if c is None else c.to_json()


def _cert_from_json(doc, alg: Algebra) -> IgCertificate | None:
    if doc is None:
        return None
    return IgCertificate(alg, doc["gLeft"], doc["gRight"], doc["bound"])


@dataclass
class VerdictReport:
    kind: str
    variant: str | None
    config: CampaignConfig
    env: dict
    hypotheses: dict | None
    samples: list[dict] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)
    properties: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def summary(self) -> dict:
        out = {"samples": len(self.samples)}
        if self.samples:
            agree = [s["agree"] for s in self.samples]
            out.update({
                "agree": agree.count("true"),
                "disagree": agree.count("false"),
                "unknown": agree.count("unknown"),
                "routeTrue": sum(s["route"] == "true" for s in self.samples),
                "routeFalse": sum(s["route"] == "false" for s in self.samples),
            })
        if self.properties:
            out["properties"] = len(self.properties)
            out["propertiesFailed"] = sum(not p["passed"] for p in self.properties)
        return out

    @property
    def hypotheses_met(self) -> bool:
        return self.hypotheses is None or self.hypotheses.get("applicable") == "true"

    @property
    def verdict(self) -> Verdict:
        s = self.summary
        if s.get("disagree") or s.get("propertiesFailed"):
            return Verdict.FALSE
        if s.get("unknown") or not self.hypotheses_met:
            return Verdict.UNKNOWN
        return Verdict.TRUE

    @property
    def status(self) -> str:
        if self.counterexamples:
            return "COUNTEREXAMPLE"
        if not self.hypotheses_met:
            return "HYPOTHESES-UNMET"
        return {"true": "VERIFIED", "false": "FAILED", "unknown": "INCONCLUSIVE"}[self.verdict.value]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "variant": self.variant,
            "config": self.config.to_json(),
            "environment": self.env,
            "hypotheses": self.hypotheses,
            "samples": self.samples,
            "properties": self.properties,
            "counterexamples": self.counterexamples,
            "summary": self.summary,
            "verdict": self.verdict.value,
            "status": self.status,
            "notes": self.notes,
        }

    def dumps(self) -> str:
        return io.dumps(self.to_json())


def verify_theorem(tp: TensorPowers, variant: str, cfg: CampaignConfig,
                   base_cert: IgCertificate | None = None, ring_cert: IgCertificate | None = None) -> VerdictReport:
    """Compare the Phi (or Psi) route with direct classification over T on seeded samples.

    GP and GF sample pairs; GI samples copairs, i.e. right T-modules.
    """
    if variant not in VARIANT_TAGS:
        raise ValueError(f"unknown variant {variant!r}")
    tag = VARIANT_TAGS[variant]
    hyp = hypothesis_report(tp, variant, cfg.max_len, cfg.tor_bound).to_json()
    base_cert = base_cert or ig_data(tp.base, cfg.max_len)
    ring_cert = ring_cert or ig_data(tp.ring, cfg.max_len)
    rep = VerdictReport("theorem", variant, cfg, environment(tp), hyp)
    rep.env["certificates"] = {"base": _cert_json(base_cert), "ring": _cert_json(ring_cert)}
    if variant == "GF":
        rep.notes.append("finite-dimensional Gorenstein flat modules treated as Gorenstein projective")
    if hyp["applicable"] != "true":
        rep.notes.append("hypotheses not established; results are exploratory")
    rng = cfg.rng()
    for k in range(cfg.samples):
        obj = random_pair(tp, cfg, rng) if variant != "GI" else random_copair(tp, cfg, rng)
        cr = classify_over_t(tp, obj, tag, "both", cfg.max_len, base_cert, ring_cert)
        entry = {"index": k, "dim": obj.dim, "route": cr.route_verdict.value,
                 "direct": cr.direct_verdict.value, "agree": cr.agree.value,
                 "certificate": cr.certificate.to_json()}
        rep.samples.append(entry)
        if cr.counterexample:
            rep.counterexamples.append(counterexample_bundle(tp, obj, cr, k, base_cert, ring_cert, cfg.max_len))
    return rep


def counterexample_bundle(tp, obj, cr, index, base_cert, ring_cert, max_len) -> dict:
    is_pair = isinstance(obj, PairModule)
    return {
        "sample": index,
        "kind": "pair" if is_pair else "copair",
        "object": io.pair_to_json(obj) if is_pair else io.copair_to_json(obj),
        "class": cr.tag,
        "route": cr.route_verdict.value,
        "direct": cr.direct_verdict.value,
        "routeCertificate": cr.certificate.to_json(),
        "certificates": {"base": _cert_json(base_cert), "ring": _cert_json(ring_cert)},
        "maxLen": max_len,
    }


def replay(tp: TensorPowers, bundle: dict):
    """Re-run the classification stored in a counterexample bundle."""
    if bundle["kind"] == "pair":
        obj = io.pair_from_json(bundle["object"], tp, "/object")
    else:
        obj = io.copair_from_json(bundle["object"], tp, "/object")
    certs = bundle["certificates"]
    return classify_over_t(tp, obj, bundle["class"], "both", bundle["maxLen"],
                           _cert_from_json(certs["base"], tp.base), _cert_from_json(certs["ring"], tp.ring))


# -- lemma suite -------------------------------------------------------------


def _prop(rep: VerdictReport, name: str, checked: int, failures: list) -> None:
    rep.properties.append({"name": name, "checked": checked, "passed": not failures,
                           "witnesses": failures[:5]})


def _tor_vanishes(mr: FdModule, x: FdModule, top: int, bound: int) -> bool | None:
    """Tor_n(mr, x) = 0 for 1 <= n <= top; None if undecided."""
    for n in range(1, top + 1):
        d = tor_dim(mr, x, n, bound)
        if d is None:
            return None
        if d:
            return False
    return True


def _ext_vanishes(x: FdModule, y: FdModule, top: int, bound: int) -> bool | None:
    for n in range(1, top + 1):
        d = ext_dim(x, y, n, bound)
        if d is None:
            return None
        if d:
            return False
    return True


def run_lemma_suite(tp: TensorPowers, cfg: CampaignConfig) -> VerdictReport:
    """Sampled checks of the structural lemmas about Ind, Coind, Phi and Psi."""
    rep = VerdictReport("lemmas", None, cfg, environment(tp), None)
    r = tp.base
    rng = cfg.rng()
    pairs = [random_pair(tp, cfg, rng) for _ in range(cfg.samples)]
    copairs = [random_copair(tp, cfg, rng) for _ in range(cfg.samples)]
    modules = [random_module(r, cfg, rng) for _ in range(cfg.samples)]
    right_modules = [random_module(r.opposite, cfg, rng) for _ in range(cfg.samples)]

    # Projective, injective and flat T-modules.
    fails = []
    for s in range(r.n_vertices):
        pair = ind(tp, r.indecomposable_projective(s)[0]).pair
        direct = is_projective(pair.flat)
        route = phi_membership(tp, pair, "proj").verdict
        if not direct or route is not Verdict.TRUE:
            fails.append({"vertex": s, "direct": direct, "route": route.value})
    _prop(rep, "Ind of indecomposable projectives is projective", r.n_vertices, fails)

    fails = []
    for k, pair in enumerate(pairs):
        direct = is_projective(pair.flat)
        proj = phi_membership(tp, pair, "proj").verdict
        flat = phi_membership(tp, pair, "flat").verdict
        if Verdict.of(direct) is not proj or proj is not flat:
            fails.append({"sample": k, "direct": direct, "phiProj": proj.value, "phiFlat": flat.value})
    _prop(rep, "Proj(T) = Phi(Proj R) = Flat(T) = Phi(Flat R) on samples", len(pairs), fails)

    fails = []
    for s in range(r.n_vertices):
        e = k_dual(r.indecomposable_projective(s)[0])
        cp = coind(tp, e).copair
        direct = is_injective(cp.flat)
        route = psi_membership(tp, cp, "inj").verdict
        if not direct or route is not Verdict.TRUE:
            fails.append({"vertex": s, "direct": direct, "route": route.value})
    _prop(rep, "Coind of indecomposable injectives is injective", r.n_vertices, fails)

    fails = []
    for k, cp in enumerate(copairs):
        direct = is_injective(cp.flat)
        route = psi_membership(tp, cp, "inj").verdict
        if Verdict.of(direct) is not route:
            fails.append({"sample": k, "direct": direct, "route": route.value})
    _prop(rep, "Inj(T^op) = Psi(Inj R^op) on samples", len(copairs), fails)

    # Free modules are induced from free modules.
    fails = []
    t = tp.ring
    ir = ind(tp, r.regular_module()).pair
    gen = la.zeros(ir.dim, 1)
    gen[:r.dim, 0] = r.unit
    iso = np.hstack([la.matmul(ir.flat.act(t.basis_vector(k)), gen, tp.p) for k in range(t.dim)])
    if la.rank(iso, tp.p) != t.dim or ir.dim != t.dim:
        fails.append({"dimInd": ir.dim, "dimT": t.dim})
    _prop(rep, "Ind(R) is the free module T", 1, fails)

    fails = []
    for k, cp in enumerate(copairs):
        ker, incl = k_functor(tp, cp)
        if ker.dim == 0 and cp.dim:
            fails.append({"sample": k, "dim": cp.dim})
        if cp.dim:
            soc = socle_of(cp.flat)
            if not la.in_span(incl.matrix, soc, tp.p):
                fails.append({"sample": k, "socleDim": soc.shape[1], "kerDim": ker.dim})
    _prop(rep, "ker v detects zero copairs and contains the socle", len(copairs), fails)

    # Transfer of projective and injective dimension.
    fails, checked = [], 0
    for k, x in enumerate(modules):
        pd = pd_bound(x, cfg.max_len)
        if not pd.exact:
            continue
        if not all(_tor_vanishes(tp.powers[i].as_right(), x, pd.value, cfg.max_len) for i in range(1, tp.nil_index + 1)):
            continue
        checked += 1
        pdt = pd_bound(ind(tp, x).pair.flat, cfg.max_len)
        if pdt != pd:
            fails.append({"sample": k, "pdR": str(pd), "pdT": str(pdt)})
    _prop(rep, "pd_R X = pd_T Ind(X) under Tor vanishing", checked, fails)

    fails, checked = [], 0
    for k, y in enumerate(right_modules):
        idy = id_bound(y, cfg.max_len)
        if not idy.exact:
            continue
        if not all(_ext_vanishes(tp.powers[i].as_right(), y, idy.value, cfg.max_len) for i in range(1, tp.nil_index + 1)):
            continue
        checked += 1
        idt = id_bound(coind(tp, y).copair.flat, cfg.max_len)
        if idt != idy:
            fails.append({"sample": k, "idR": str(idy), "idT": str(idt)})
    _prop(rep, "id_R^op Y = id_T^op Coind(Y) under Ext vanishing", checked, fails)

    # Canonical sequences, C Ind = 1, K Coind = 1 and the adjunctions.
    fails = []
    for k, pair in enumerate(pairs):
        try:
            canonical_presentation(tp, pair)
        except Exception as exc:  # recorded as a witness
            fails.append({"sample": k, "error": str(exc)})
        c, _ = cok_functor(tp, ind(tp, pair.x).pair)
        if not np.array_equal(c.actions, pair.x.actions):
            fails.append({"sample": k, "error": "C Ind X differs from X"})
    _prop(rep, "canonical presentation exact and C Ind = 1", len(pairs), fails)

    fails = []
    for k, cp in enumerate(copairs):
        try:
            canonical_copresentation(tp, cp)
        except Exception as exc:
            fails.append({"sample": k, "error": str(exc)})
        kk, _ = k_functor(tp, coind(tp, cp.y).copair)
        if not np.array_equal(kk.actions, cp.y.actions):
            fails.append({"sample": k, "error": "K Coind Y differs from Y"})
    _prop(rep, "canonical copresentation exact and K Coind = 1", len(copairs), fails)

    fails = []
    for k, (x, pair) in enumerate(zip(modules, pairs)):
        chk = ind_adjunction(tp, x, pair)
        if not chk.ok:
            fails.append({"sample": k, "dimT": chk.dim_over_t, "dimR": chk.dim_over_r})
    for k, (y, cp) in enumerate(zip(right_modules, copairs)):
        chk = coind_adjunction(tp, cp, y)
        if not chk.ok:
            fails.append({"sample": k, "side": "right", "dimT": chk.dim_over_t, "dimR": chk.dim_over_r})
    _prop(rep, "Ind and Coind adjunction bijections", 2 * len(pairs), fails)

    _hypo_lemmas(tp, cfg, rep, modules, pairs)
    return rep


def _hypo_lemmas(tp: TensorPowers, cfg: CampaignConfig, rep: VerdictReport, modules, pairs) -> None:
    cond = check_condition_t(tp, cfg.tor_bound)
    n = tp.nil_index
    k_top = min(cfg.tor_bound, 4)
    m_right = tp.bimodule.as_right()
    if cond.status == "holds":
        fails = []
        for k, y in enumerate(modules):
            lhs = [_tor_vanishes(tp.powers[s].as_right(), y, k_top, k_top + 1) for s in range(1, n + 1)]
            rhs = [_tor_vanishes(m_right, _power_tensor(tp, i, y), k_top, k_top + 1) for i in range(0, n + 1)]
            if None in lhs or None in rhs:
                continue
            if all(lhs) != all(rhs):
                fails.append({"sample": k, "powersVanish": all(lhs), "argumentsVanish": all(rhs)})
        _prop(rep, "Tor against powers vanishes iff Tor against M (x) powers vanishes", len(modules), fails)

        fails = []
        for side in ("left", "right"):
            base = pd_bound(tp.bimodule.as_left() if side == "left" else m_right, cfg.max_len)
            if not base.exact:
                continue
            for i in range(1, n + 1):
                pw = tp.powers[i]
                b = pd_bound(pw.as_left() if side == "left" else pw.as_right(), cfg.max_len)
                if not b.exact:
                    fails.append({"power": i, "side": side, "pd": str(b)})
        _prop(rep, "finite pd of M passes to its tensor powers", 2 * n, fails)

    fails, checked = [], 0
    for k, pair in enumerate(pairs):
        if not pair.u_hom.is_mono():
            continue
        cok, _ = cok_functor(tp, pair)
        if not all(tor_dim(m_right, _power_tensor(tp, i, cok), 1, cfg.max_len) == 0 for i in range(0, n + 1)):
            continue
        checked += 1
        if tor_dim(m_right, pair.x, 1, cfg.max_len) != 0:
            fails.append({"sample": k})
    _prop(rep, "Tor_1(M, X) = 0 for mono u with Tor-free cokernel", checked, fails)


def _power_tensor(tp: TensorPowers, i: int, y: FdModule) -> FdModule:
    if i == 0:
        return y
    return tensor_over_algebra(tp.powers[i], y).module
