"""Named identity checks shared by ``vhess verify`` and the acceptance run.

Each check takes keyword parameters plus a ``SampleConfig`` and returns an
``IdentityReport``.  ``REGISTRY`` maps the public id to the function and
its default parameters.
"""

from __future__ import annotations

from fractions import Fraction

from . import families as fam
from .hessian import (
    HessianDeterminant,
    IdentityReport,
    PolyPower,
    check_gradient_relations,
    hess_is_zero,
    hessian_matrix,
    verify_identity,
    verify_proportionality,
)
from .linalg import PolyMatrix, adjugate, binary_resultant, determinant, pfaffian
from .ring import VarSet, divides, euler_check, format_poly, parse
from .sampling import SampleConfig, stream

EXACT_HESS_VARS = 9


def _combine(identity, parts, anchor, cfg, method="exact"):
    ok = all(p.passed for p in parts)
    return IdentityReport(identity, method, "PASS" if ok else "FAIL", failure_bound="0",
                          anchor=anchor, cfg=cfg.echo(),
                          details={"parts": [{"identity": p.identity, "verdict": p.verdict}
                                             for p in parts]})


def _segre(inst, identity, cfg, mode):
    f = inst.poly
    k = inst.expected["hess_exponent"]
    expected = inst.expected.get("hess_constant")
    if mode is None:
        mode = "exact" if len(f.vars) <= EXACT_HESS_VARS else "sz"
    if mode == "sz":
        return verify_proportionality(HessianDeterminant(f), PolyPower(f, k), cfg,
                                      identity=identity, expected=expected, anchor=inst.anchor)
    hess = determinant(hessian_matrix(f))
    fk = f ** k
    if hess.is_zero():
        c = Fraction(0)
    else:
        c = Fraction(hess.leading_term()[1]) / Fraction(fk.leading_term()[1])
    ok = bool(c) and hess == fk.scale(c)
    rep = IdentityReport(identity, "exact", "PASS" if ok else "FAIL", failure_bound="0",
                         constant=str(c), anchor=inst.anchor, cfg=cfg.echo(),
                         details={"exponent": k, "hess_terms": len(hess)})
    if expected is not None:
        rep.expected_constant = str(expected)
        rep.convention_match = c == expected
    return rep


def segre_alpha(cfg, n=2, mode=None):
    return _segre(fam.generic_det(n), "segre-alpha", cfg, mode)


def segre_beta(cfg, n=2, mode=None):
    return _segre(fam.symmetric_det(n), "segre-beta", cfg, mode)


def segre_gamma(cfg, m=2, mode=None):
    return _segre(fam.pfaffian_form(m), "segre-gamma", cfg, mode)


def pf_square(cfg, m=2):
    A = fam.skew_matrix(2 * m + 2)
    pf = pfaffian(A)
    return verify_identity(pf * pf, determinant(A), cfg, mode="exact", identity="pf-square",
                           anchor="det(A) = Pf(A)^2")


def lagrange(cfg, n=2):
    lhs, rhs = fam.lagrange_sides(n)
    return verify_identity(lhs, rhs, cfg, mode="exact", identity="lagrange",
                           anchor="sum_{i<j} (a_i b_j - a_j b_i)^2 = |a|^2 |b|^2 - (a.b)^2")


def adjugate_identities(cfg, size=3):
    """``X X^# = det(X) I`` and ``(X^#)^# = det(X)^(size-2) X`` for a generic X."""
    X = fam.generic_matrix(size)
    adj = adjugate(X)
    det = determinant(X)
    eye = PolyMatrix.identity(size, X.vars).scale(det)
    p1 = IdentityReport("adjugate-product", "exact",
                        "PASS" if X @ adj == eye else "FAIL", failure_bound="0")
    p2 = IdentityReport("adjugate-twice", "exact",
                        "PASS" if adjugate(adj) == X.scale(det ** (size - 2)) else "FAIL",
                        failure_bound="0")
    rep = _combine("adjugate", [p1, p2], "X X^# = det(X) I, (X^#)^# = det(X)^{n-1} X", cfg)
    rep.details["size"] = size
    return rep


def resultant_invariance(cfg, count=5, entry_range=5):
    """``Res(h0, h1) = det(A)^2 Res(g0, g1)`` with ``h_i = sum_j a_ij g_j``.

    ``g0, g1`` are generic binary quadrics with symbolic coefficients, so
    each comparison is an identity of polynomials in those coefficients.
    """
    vs = VarSet(["c0", "c1", "c2", "e0", "e1", "e2", "s", "t"])
    g0 = parse("c0*s^2 + c1*s*t + c2*t^2", vs)
    g1 = parse("e0*s^2 + e1*s*t + e2*t^2", vs)
    base = binary_resultant(g0, g1)
    parts = []
    mats = []
    for k in range(count):
        rng = stream(cfg.seed, "res-inv", k)
        while True:
            a = [[Fraction(rng.randint(-entry_range, entry_range), rng.randint(1, 3))
                  for _ in range(2)] for _ in range(2)]
            det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
            if det:
                break
        h0 = g0.scale(a[0][0]) + g1.scale(a[0][1])
        h1 = g0.scale(a[1][0]) + g1.scale(a[1][1])
        ok = binary_resultant(h0, h1) == base.scale(det ** 2)
        parts.append(IdentityReport(f"res-inv-{k}", "exact", "PASS" if ok else "FAIL"))
        mats.append([[str(x) for x in r] for r in a])
    rep = _combine("resultant-invariance", parts,
                   "Res(h_0,...,h_N) = det([a_ij])^{d^N} Res(g_0,...,g_N)", cfg)
    rep.details["matrices"] = mats
    return rep


def resultant_common_factor(cfg):
    vs = VarSet(["s", "t"])
    f = parse("s - t", vs) * parse("2*s + 3*t", vs)
    g = parse("s - t", vs) * parse("s^2 + s*t + 5*t^2", vs)
    r = binary_resultant(f, g)
    return IdentityReport("resultant-common-factor", "exact", "PASS" if r.is_zero() else "FAIL",
                          failure_bound="0", anchor="Res(f,g) = 0 iff a common zero exists",
                          cfg=cfg.echo(), details={"f": format_poly(f), "g": format_poly(g)})


def euler_pencil(cfg, g="z1^2 + z2^2 + z3^2"):
    """``u f_u + v f_v = d f`` for ``f = g(ux - vy)``, d = deg g."""
    inst = fam.pencil(parse(g) if isinstance(g, str) else g, cfg=cfg)
    f = inst.poly
    d = inst.params["d"]
    lhs = euler_check(f, ["u", "v"])
    rep = verify_identity(lhs, f.scale(d), cfg, mode="exact", identity="euler-pencil",
                          anchor="u f_u + v f_v = d f")
    rep.details["d"] = d
    return rep


_RELATION_FAMILIES = {
    "p7-fermat": lambda: fam.p7_fermat(),
    "p5-example": lambda: fam.p5_example(),
    "dual-cayley": lambda: fam.dual_cayley(parse("z0*z2 - z1^2"), 2, 4),
}


def gradient_relations(cfg, family="p5-example"):
    try:
        inst = _RELATION_FAMILIES[family]()
    except KeyError:
        raise ValueError(f"no relation grid for family {family!r}") from None
    rep = check_gradient_relations(inst.poly, inst.blocks["relation_grid"],
                                   anchor="f_{x_i} f_{y_j} = f_{x_j} f_{y_i}")
    rep.cfg = cfg.echo()
    rep.details["family"] = family
    return rep


def scroll_closed(cfg, b=2):
    """``scroll_dual(1, b)`` equals the closed form up to one global sign."""
    res = fam.scroll_dual(1, b).poly
    closed = fam.scroll_dual_closed(b).poly
    sign = 1 if res == closed else (-1 if res == -closed else 0)
    return IdentityReport("scroll-closed", "exact", "PASS" if sign else "FAIL",
                          failure_bound="0", anchor="S(1,b)^* closed form", cfg=cfg.echo(),
                          details={"b": b, "sign": sign})


def dual_cayley_pencil(cfg, g="z0^2 + z1^2 + z2^2"):
    """The r = 1 dual Cayley instance is the pencil instance after renaming."""
    gp = parse(g) if isinstance(g, str) else g
    n = len(gp.vars)
    dc = fam.dual_cayley(gp, 1, n)
    pe = fam.pencil(gp, cfg=cfg)
    renamed = dc.poly.rename(fam.dual_cayley_pencil_renaming(n), pe.poly.vars)
    return IdentityReport("dual-cayley-pencil", "exact", "PASS" if renamed == pe.poly else "FAIL",
                          failure_bound="0", anchor="r = 1 gives g(ux - vy)", cfg=cfg.echo(),
                          details={"terms": len(pe.poly)})


def hess_divisibility(cfg, n=2):
    """``f^(N - dim X* - 1)`` divides ``hess f`` for the generic determinant."""
    inst = fam.generic_det(n)
    f = inst.poly
    N = len(f.vars) - 1
    k = N - inst.expected["dim_dual"] - 1
    hess = determinant(hessian_matrix(f))
    ok = divides(f ** k, hess) is not None
    return IdentityReport("hess-divisibility", "exact", "PASS" if ok else "FAIL",
                          failure_bound="0", anchor="f^{N-dim X^*-1} divides hess_f",
                          cfg=cfg.echo(), details={"n": n, "power": k})


def hess_zero(cfg, poly="x0*x3^2 + x1*x3*x4 + x2*x4^2", method=None):
    """PASS iff the hessian of a user-supplied form vanishes identically."""
    f = parse(poly) if isinstance(poly, str) else poly
    if f.is_homogeneous() is None:
        raise ValueError("hess-zero needs a nonzero homogeneous polynomial")
    zero, cert, bound = hess_is_zero(f, cfg, method)
    return IdentityReport("hess-zero", "exact" if cert == "exact" else "schwartz-zippel",
                          "PASS" if zero else "FAIL", failure_bound=bound,
                          anchor="det H(f) = 0", cfg=cfg.echo(),
                          details={"poly": format_poly(f)})


REGISTRY = {
    "segre-alpha": (segre_alpha, {"n": 2}),
    "segre-beta": (segre_beta, {"n": 2}),
    "segre-gamma": (segre_gamma, {"m": 2}),
    "pf-square": (pf_square, {"m": 2}),
    "lagrange": (lagrange, {"n": 2}),
    "adjugate": (adjugate_identities, {"size": 3}),
    "resultant-invariance": (resultant_invariance, {"count": 5}),
    "resultant-common-factor": (resultant_common_factor, {}),
    "euler-pencil": (euler_pencil, {"g": "z1^2 + z2^2 + z3^2"}),
    "gradient-relations": (gradient_relations, {"family": "p5-example"}),
    "scroll-closed": (scroll_closed, {"b": 2}),
    "dual-cayley-pencil": (dual_cayley_pencil, {"g": "z0^2 + z1^2 + z2^2"}),
    "hess-divisibility": (hess_divisibility, {"n": 2}),
    "hess-zero": (hess_zero, {"poly": "x0*x3^2 + x1*x3*x4 + x2*x4^2"}),
}


def run(check_id, cfg=None, **params):
    if check_id not in REGISTRY:
        raise KeyError(check_id)
    fn, defaults = REGISTRY[check_id]
    kw = dict(defaults)
    kw.update({k: v for k, v in params.items() if v is not None})
    return fn(cfg or SampleConfig(), **kw)
