"""The acceptance suite: sixteen criteria, one record each.

``run_acceptance(cfg)`` returns a ``RunReport``.  Records are sorted by
criterion id, and wall-clock times are left out unless ``timings=True``, so
two runs with the same seed serialize to identical bytes.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field

from . import __version__
from . import checks
from . import families as fam
from .hessian import (
    HessianDeterminant,
    PolyPower,
    check_gradient_relations,
    generic_rank,
    hess_is_zero,
    hessian_matrix,
    is_cone,
    profile,
    random_linear_change,
    verify_proportionality,
)
from .linalg import all_minors
from .ring import parse
from .sampling import PRIME_1MOD4, SampleConfig, stream

INVARIANCE_SEEDS = 3
DENSE_TERM_LIMIT = 5000


@dataclass
class CheckRecord:
    id: str
    title: str
    verdict: str
    measured: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    certificate: str = "exact"
    anchor: str = ""
    notes: list = field(default_factory=list)
    elapsed: float | None = None

    @property
    def passed(self):
        return self.verdict == "PASS"


@dataclass
class RunReport:
    version: str
    cfg: dict
    records: list

    @property
    def verdict(self):
        return "PASS" if all(r.passed for r in self.records) else "FAIL"

    def to_json(self):
        return {"version": self.version, "cfg": self.cfg, "verdict": self.verdict,
                "records": [asdict(r) for r in self.records]}

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, obj):
        return cls(obj["version"], obj["cfg"], [CheckRecord(**r) for r in obj["records"]])


class _Collector:
    """Accumulates sub-checks of one criterion."""

    def __init__(self):
        self.measured = {}
        self.expected = {}
        self.ok = True
        self.certs = set()
        self.notes = []

    def eq(self, key, got, want):
        self.measured[key] = got
        self.expected[key] = want
        if got != want:
            self.ok = False
        return got == want

    def true(self, key, cond, got=None):
        self.measured[key] = cond if got is None else got
        if not cond:
            self.ok = False
        return cond

    def report(self, key, rep):
        self.measured[key] = rep.verdict
        self.expected[key] = "PASS"
        self.certs.add(rep.method)
        if not rep.passed:
            self.ok = False
        return rep


def _has_nonzero_minor(M, k):
    return any(m for _, _, m in all_minors(M, k, principal=M.is_symmetric()))


# ---- criteria -------------------------------------------------------------

def c01_perazzo(cfg, c):
    inst = fam.perazzo()
    t = time.perf_counter()
    zero, cert, _ = hess_is_zero(inst.poly, cfg, "exact")
    dt = time.perf_counter() - t
    c.eq("hess_is_zero", zero, True)
    c.eq("hess_certificate", cert, "exact")
    c.eq("is_cone", is_cone(inst.poly)[0], False)
    c.true("under_1s", dt < 1.0, dt < 1.0)
    c.certs.add("exact")
    return inst.anchor


def c02_perazzo_ext(cfg, c):
    inst = fam.perazzo_ext(6)
    zero, cert, bound = hess_is_zero(inst.poly, cfg, "sample")
    c.eq("hess_is_zero", zero, True)
    c.measured["failure_bound"] = bound
    c.true("failure_bound_below_1e-20", cert == "probabilistic" and float(bound) < 1e-20)
    c.eq("is_cone", is_cone(inst.poly)[0], False)
    c.certs.add(cert)
    return inst.anchor


def c03_p7_fermat(cfg, c):
    inst = fam.p7_fermat()
    scfg = SampleConfig(prime=PRIME_1MOD4, trials=cfg.trials, seed=cfg.seed, points=100)
    pr = profile(inst.poly, scfg, rank_mod="sample")
    c.eq("hess_is_zero", pr.hess_is_zero, True)
    c.eq("generic_rank", pr.generic_rank, 6)
    c.eq("rank_mod_f", pr.rank_mod_f, 5)
    c.eq("rank_mod_method", pr.rank_mod_method, "on-hypersurface-sampling")
    c.eq("codim_dual_in_polar", pr.codim_dual_in_polar, 2)
    # codim(Y, P^2) + 1 from the base conic
    c.eq("codim_Y_plus_1", (2 - inst.observations["dim_Y"]) + 1, 2)
    c.certs.update({pr.hess_certificate, "sampled-rank"})
    return inst.anchor


def c04_p5_example(cfg, c):
    inst = fam.p5_example()
    f = inst.poly
    zero, cert, _ = hess_is_zero(f, cfg, "exact")
    c.eq("hess_is_zero", zero, True)
    c.report("gradient_relation", check_gradient_relations(f, [["x1", "x2"], ["y1", "y2"]]))
    c.eq("generic_rank", generic_rank(hessian_matrix(f), cfg), 5)
    # oracle: a nonzero principal 5x5 minor with a zero determinant
    c.eq("exact_rank_oracle", 5 if _has_nonzero_minor(hessian_matrix(f), 5) else None, 5)
    c.eq("is_cone", is_cone(f)[0], False)
    c.certs.add("exact")
    return inst.anchor


def c05_euler_pencil(cfg, c):
    rep = c.report("euler", checks.run("euler-pencil", cfg, g="z1^2 + z2^2 + z3^2"))
    c.eq("d", rep.details["d"], 2)
    return rep.anchor


def c06_scroll_duals(cfg, c):
    rep = c.report("scroll_dual(1,2) = +-closed(2)", checks.run("scroll-closed", cfg, b=2))
    c.measured["sign"] = rep.details["sign"]
    for b, method in ((2, "exact"), (3, "sample")):
        inst = fam.scroll_dual_closed(b)
        c.eq(f"b={b}.degree", inst.poly.is_homogeneous(), b + 1)
        zero, cert, _ = hess_is_zero(inst.poly, cfg, method)
        c.eq(f"b={b}.hess_is_zero", zero, True)
        c.eq(f"b={b}.certificate", cert, "exact" if b == 2 else "probabilistic")
        c.eq(f"b={b}.is_cone", is_cone(inst.poly)[0], False)
        c.certs.add(cert)
    return fam.scroll_dual_closed(2).anchor


def c07_resultant_degrees(cfg, c):
    inst = fam.scroll_dual(2, 3)
    f = inst.poly
    c.eq("total_degree", f.total_degree(), 5)
    c.eq("homogeneous", f.is_homogeneous(), 5)
    c.eq("degree_in_w", f.degree_in(inst.blocks["w"]), 3)
    c.eq("degree_in_z", f.degree_in(inst.blocks["z"]), 2)
    c.eq("n_vars", len(f.vars), 7)
    c.report("common_factor_gives_zero", checks.run("resultant-common-factor", cfg))
    return inst.anchor


def c08_resultant_invariance(cfg, c):
    rep = c.report("invariance", checks.run("resultant-invariance", cfg, count=5))
    c.measured["matrices"] = rep.details["matrices"]
    return rep.anchor


def c09_adjugate(cfg, c):
    for size in (3, 4):
        rep = c.report(f"size={size}", checks.run("adjugate", cfg, size=size))
    return rep.anchor


def c10_segre_alpha(cfg, c):
    for n, mode, want in ((2, "exact", -2), (3, "sz", -3)):
        rep = c.report(f"n={n}", checks.run("segre-alpha", cfg, n=n, mode=mode))
        c.eq(f"n={n}.constant", rep.constant, str(want))
    return rep.anchor


def c11_segre_beta(cfg, c):
    rep = c.report("n=2", checks.run("segre-beta", cfg, n=2, mode="exact"))
    c.eq("n=2.constant", rep.constant, "-16")
    c.eq("n=2.n_vars", len(fam.symmetric_det(2).poly.vars), 6)
    # exponent 5 is the hard criterion; the constant is only compared
    rep = c.report("n=3.exponent5", checks.run("segre-beta", cfg, n=3, mode="sz"))
    c.measured["n=3.constant"] = rep.constant
    c.measured["n=3.convention_match"] = rep.convention_match
    c.expected["n=3.constant"] = "-192"
    if not rep.convention_match:
        c.notes.append(f"n=3 constant {rep.constant} differs from -192 (sign convention)")
    return rep.anchor


def c12_pfaffian(cfg, c):
    for m in (1, 2):
        c.report(f"pf^2=det size {2 * m + 2}", checks.run("pf-square", cfg, m=m))
    rep = c.report("hess(Pf6)", checks.run("segre-gamma", cfg, m=2, mode="sz"))
    c.eq("constant", rep.constant, "2")
    return rep.anchor


def c13_cauchy_schwartz(cfg, c):
    for n in (1, 2, 3):
        c.report(f"lagrange n={n}", checks.run("lagrange", cfg, n=n))
    inst = fam.cauchy_schwartz(1)
    zero, cert, _ = hess_is_zero(inst.poly, cfg)
    c.eq("hess_is_zero", zero, False)
    rep = verify_proportionality(HessianDeterminant(inst.poly), PolyPower(inst.poly, 3), cfg,
                                 identity="cs-proportional", anchor=inst.anchor)
    c.report("hess = c f^3", rep)
    c.measured["c"] = rep.constant
    c.true("c_nonzero", rep.constant not in (None, "0"), rep.constant)
    return inst.anchor


def c14_dual_cayley(cfg, c):
    scfg = cfg.with_prime(PRIME_1MOD4)
    inst = fam.dual_cayley(parse("z0*z2 - z1^2"), 2, 4)
    c.report("relations", check_gradient_relations(inst.poly, inst.blocks["relation_grid"]))
    zero, cert, bound = hess_is_zero(inst.poly, scfg, "sample")
    c.eq("hess_is_zero", zero, True)
    c.eq("certificate", cert, "probabilistic")
    c.measured["failure_bound"] = bound
    c.report("r=1 reproduces pencil", checks.run("dual-cayley-pencil", cfg))
    c.certs.add(cert)
    return inst.anchor


def c15_slices(cfg, c):
    scfg = cfg.with_prime(PRIME_1MOD4)
    want = {
        "det_slice(2)": (fam.det_slice(2), {"degree": 3, "hess_is_zero": True, "generic_rank": 7,
                                            "rank_mod_f": 6, "codim_dual_in_polar": 2}),
        "sym_slice(2)": (fam.sym_slice(2), {"degree": 3, "hess_is_zero": True,
                                            "codim_dual_in_polar": 1}),
        "pf_slice(2)": (fam.pf_slice(2), {"degree": 3, "hess_is_zero": True,
                                          "codim_dual_in_polar": 4}),
    }
    for name, (inst, exp) in want.items():
        strategy = "sample" if name.startswith("pf") else None
        pr = profile(inst.poly, scfg, rank_mod=strategy)
        got = pr.numeric()
        for k, v in exp.items():
            c.eq(f"{name}.{k}", got[k], v)
        if name.startswith("pf"):
            c.measured[f"{name}.generic_rank"] = pr.generic_rank
            c.measured[f"{name}.rank_mod_f"] = pr.rank_mod_f
            c.eq(f"{name}.rank_mod_method", pr.rank_mod_method, "on-hypersurface-sampling")
        c.certs.add(pr.hess_certificate)
    return "codim(R_n^*, Z) = n^2-2; (n^2+n-4)/2; 2m^2-m-2"


def sweep_instances():
    """Every instance the criteria above construct, keyed by a stable name."""
    return {
        "perazzo": fam.perazzo(),
        "perazzo-ext(6)": fam.perazzo_ext(6),
        "p7-fermat": fam.p7_fermat(),
        "p5-example": fam.p5_example(),
        "scroll-dual-closed(2)": fam.scroll_dual_closed(2),
        "scroll-dual-closed(3)": fam.scroll_dual_closed(3),
        "scroll-dual(2,3)": fam.scroll_dual(2, 3),
        "generic-det(2)": fam.generic_det(2),
        "symmetric-det(2)": fam.symmetric_det(2),
        "pfaffian-form(2)": fam.pfaffian_form(2),
        "cauchy-schwartz(1)": fam.cauchy_schwartz(1),
        "dual-cayley(r=2,N=4)": fam.dual_cayley(parse("z0*z2 - z1^2"), 2, 4),
        "det-slice(2)": fam.det_slice(2),
        "sym-slice(2)": fam.sym_slice(2),
        "pf-slice(2)": fam.pf_slice(2),
    }


def _sampled_profile(f, cfg):
    return profile(f, cfg, rank_mod="sample", hess_method="sample").numeric()


def c16_invariance_sweep(cfg, c):
    scfg = cfg.with_prime(PRIME_1MOD4)
    for name, inst in sweep_instances().items():
        f = inst.poly
        base = _sampled_profile(f, scfg)
        if base["hess_is_zero"]:
            chain = base["dim_dual"] < base["dim_polar_image"] < base["n_vars"] - 1
            c.true(f"{name}.chain", chain,
                   f"{base['dim_dual']} < {base['dim_polar_image']} < {base['n_vars'] - 1}")
        d = f.is_homogeneous()
        sparse = math.comb(len(f.vars) + d - 1, d) > DENSE_TERM_LIMIT
        same = []
        for k in range(INVARIANCE_SEEDS):
            rng = stream(cfg.seed, f"linear-change:{name}", k)
            g, _ = random_linear_change(f, rng, sparse=sparse)
            same.append(_sampled_profile(g, scfg) == base)
        c.true(f"{name}.invariant", all(same), same)
    c.certs.update({"probabilistic", "sampled-rank"})
    return "dim X^* < dim Z_X < N; profile invariant under GL_{N+1}"


CRITERIA = [
    ("C01", "Perazzo cubic: hess = 0 exactly, not a cone", c01_perazzo),
    ("C02", "Perazzo-ext N=6: hess = 0 probabilistically, not a cone", c02_perazzo_ext),
    ("C03", "P^7 Fermat pencil ranks and codimension", c03_p7_fermat),
    ("C04", "P^5 example: hess = 0, gradient relation, rank 5", c04_p5_example),
    ("C05", "Pencil Euler relation u f_u + v f_v = d f", c05_euler_pencil),
    ("C06", "Scroll duals S(1,b)^*", c06_scroll_duals),
    ("C07", "Resultant degrees and common-factor vanishing", c07_resultant_degrees),
    ("C08", "Resultant invariance, N=1, d=2", c08_resultant_invariance),
    ("C09", "Adjugate identities 3x3 and 4x4", c09_adjugate),
    ("C10", "Segre constant alpha", c10_segre_alpha),
    ("C11", "Segre constant beta", c11_segre_beta),
    ("C12", "Pfaffian square and gamma", c12_pfaffian),
    ("C13", "Lagrange identity and Cauchy-Schwartz quartic", c13_cauchy_schwartz),
    ("C14", "Dual Cayley r=2 relations and hessian", c14_dual_cayley),
    ("C15", "Slice profiles", c15_slices),
    ("C16", "Chain inequality and linear-change invariance", c16_invariance_sweep),
]


def run_criterion(cid, cfg=None, timings=False):
    cfg = cfg or SampleConfig()
    for k, title, fn in CRITERIA:
        if k == cid:
            break
    else:
        raise KeyError(cid)
    c = _Collector()
    t = time.perf_counter()
    try:
        anchor = fn(cfg, c)
    except Exception as exc:  # a crash is a failed criterion, not a crashed run
        c.ok = False
        c.notes.append(f"{type(exc).__name__}: {exc}")
        anchor = ""
    dt = time.perf_counter() - t
    cert = "+".join(sorted(c.certs)) or "exact"
    return CheckRecord(cid, title, "PASS" if c.ok else "FAIL", c.measured, c.expected, cert,
                       anchor or "", c.notes, round(dt, 3) if timings else None)


def run_acceptance(cfg=None, only=None, timings=False):
    cfg = cfg or SampleConfig()
    ids = [k for k, _, _ in CRITERIA if only is None or k in only]
    records = [run_criterion(k, cfg, timings) for k in sorted(ids)]
    return RunReport(__version__, cfg.echo(), records)


def summary_lines(report):
    return [f"{r.id} {r.verdict} {r.title}" + (f" [{'; '.join(r.notes)}]" if r.notes else "")
            for r in report.records]
