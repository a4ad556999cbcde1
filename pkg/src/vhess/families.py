"""Generators for the named hypersurface families.

Variable naming is fixed so instances are byte-reproducible:

* pencil: ``u, v, x1..xn, y1..yn``; the k-th variable of ``g`` becomes
  ``u*x_k - v*y_k``.
* matrices: ``x{i}_{j}`` (generic), ``s{i}_{j}`` with i <= j (symmetric),
  ``a{i}_{j}`` with i < j (skew), all row-major.
* dual Cayley: ``a{i}_{j}`` for the (r+1) x (N-r+1) block A' and
  ``b{i}_{k}`` (k = 1..r) for the (r+1) x r block B'.
* scrolls: ``w0..wa, z0..zb``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .hessian import generic_rank, hessian_matrix, is_cone, rank_mod_f
from .linalg import PolyMatrix, binary_resultant, determinant, pfaffian
from .ring import Poly, VarSet, format_poly, parse
from .sampling import PRIME_1MOD4, SampleConfig

__all__ = [
    "FamilyError",
    "FamilyInstance",
    "CATALOG",
    "build",
    "perazzo",
    "perazzo_ext",
    "pencil",
    "p5_example",
    "p7_fermat",
    "dual_cayley",
    "dual_cayley_pencil_renaming",
    "scroll_dual",
    "scroll_dual_closed",
    "generic_det",
    "symmetric_det",
    "pfaffian_form",
    "det_slice",
    "sym_slice",
    "pf_slice",
    "cauchy_schwartz",
    "lagrange_sides",
    "generic_matrix",
    "symmetric_matrix",
    "skew_matrix",
    "segre_alpha",
    "segre_beta",
    "segre_gamma",
]


class FamilyError(ValueError):
    pass


@dataclass
class FamilyInstance:
    id: str
    params: dict
    poly: Poly
    blocks: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    anchor: str = ""
    sample_prime: int | None = None
    observations: dict = field(default_factory=dict)

    def __post_init__(self):
        d = self.poly.is_homogeneous()
        if "degree" in self.expected and d != self.expected["degree"]:
            raise FamilyError(f"{self.id}: degree {d}, expected {self.expected['degree']}")
        e = self.expected
        if {"codim_dual_in_polar", "dim_polar_image", "dim_dual"} <= e.keys():
            if e["codim_dual_in_polar"] != e["dim_polar_image"] - e["dim_dual"]:
                raise FamilyError(f"{self.id}: inconsistent expected profile")

    @property
    def name(self):
        ps = ",".join(f"{k}={v}" for k, v in self.params.items() if k != "g")
        return f"{self.id}({ps})" if ps else self.id

    def sample_config(self, cfg):
        """``cfg`` with this family's preferred prime, if it has one."""
        if self.sample_prime is not None:
            return cfg.with_prime(self.sample_prime)
        return cfg

    def to_json(self):
        return {
            "id": self.id,
            "params": {k: (format_poly(v) if isinstance(v, Poly) else v)
                       for k, v in self.params.items()},
            "polynomial": self.poly.to_json(),
            "text": format_poly(self.poly),
            "n_vars": len(self.poly.vars),
            "degree": self.poly.is_homogeneous(),
            "blocks": self.blocks,
            "expected": self.expected,
            "checks": self.checks,
            "anchor": self.anchor,
            "sample_prime": self.sample_prime,
            "observations": self.observations,
        }


def _expected_from_ranks(n_vars, grank=None, rmod=None, **extra):
    e = dict(extra)
    if grank is not None:
        e["generic_rank"] = grank
        e["dim_polar_image"] = grank - 1
    if rmod is not None:
        e["rank_mod_f"] = rmod
        e["dim_dual"] = rmod - 2
    if grank is not None and rmod is not None:
        e["codim_dual_in_polar"] = grank + 1 - rmod
    return e


# ---- Perazzo ---------------------------------------------------------------

def perazzo():
    f = parse("x0*x3^2 + x1*x3*x4 + x2*x4^2", VarSet([f"x{i}" for i in range(5)]))
    return FamilyInstance(
        "perazzo", {}, f,
        expected={"degree": 3, "hess_is_zero": True, "is_cone": False},
        checks=["hess-zero", "not-cone"],
        anchor="V(x_0x_3^2 + x_1x_3x_4 + x_2x_4^2) has vanishing hessian and is not a cone")


def perazzo_ext(N):
    if N < 5:
        raise FamilyError("perazzo-ext needs N >= 5")
    vs = VarSet([f"x{i}" for i in range(N + 1)])
    f = parse("x0*x3^2 + x1*x3*x4 + x2*x4^2", vs)
    for i in range(5, N + 1):
        f = f + vs.gen(f"x{i}") ** 3
    return FamilyInstance(
        "perazzo-ext", {"N": N}, f,
        expected={"degree": 3, "hess_is_zero": True, "is_cone": False},
        checks=["hess-zero", "not-cone"],
        anchor="Perazzo cubic plus sum_{i=5}^N x_i^3")


# ---- pencil construction g(ux - vy) ------------------------------------------

def pencil_varset(n):
    return VarSet(["u", "v"] + [f"x{i}" for i in range(1, n + 1)]
                  + [f"y{i}" for i in range(1, n + 1)])


def pencil(g, check_cone=True, cfg=None):
    """``f(u,v,x,y) = g(u*x_1 - v*y_1, ..., u*x_n - v*y_n)``."""
    if isinstance(g, str):
        g = parse(g)
    n = len(g.vars)
    d = g.is_homogeneous()
    if n < 2:
        raise FamilyError("pencil needs g in at least two variables")
    if d is None or d < 2:
        raise FamilyError("pencil needs g homogeneous of degree >= 2")
    if check_cone:
        cone, witness = is_cone(g)
        if cone:
            raise FamilyError(f"g is a cone; vertex directions {witness}")
    vs = pencil_varset(n)
    u, v = vs.gen("u"), vs.gen("v")
    images = {z: u * vs.gen(f"x{k}") - v * vs.gen(f"y{k}")
              for k, z in enumerate(g.vars.names, start=1)}
    f = g.substitute(images, vs)
    xs = [f"x{k}" for k in range(1, n + 1)]
    ys = [f"y{k}" for k in range(1, n + 1)]
    expected = {"degree": 2 * d, "hess_is_zero": True, "is_cone": False}
    obs = {}
    # Fermat-type loci need sqrt(-1) in F_p to have points
    cfg = (cfg or SampleConfig()).with_prime(PRIME_1MOD4)
    Hg = hessian_matrix(g)
    rho = generic_rank(Hg, cfg)
    obs["rank_hess_g"] = rho
    if rho == n:
        # Z_{Y*} is all of P^{n-1}; codim(Y, P^{n-1}) from Segre's formula on g
        rmod_g, _ = rank_mod_f(Hg, g, None, cfg)
        dim_y = rmod_g - 2
        obs["dim_Y"] = dim_y
        codim = (n - 1 - dim_y) + 1
        grank = rho + 3
        expected.update(generic_rank=grank, dim_polar_image=grank - 1,
                        codim_dual_in_polar=codim, dim_dual=grank - 1 - codim,
                        rank_mod_f=grank + 1 - codim)
    return FamilyInstance(
        "pencil", {"g": g, "n": n, "d": d}, f,
        blocks={"u": "u", "v": "v", "x": xs, "y": ys, "relation_grid": [xs, ys]},
        expected=expected,
        checks=["hess-zero", "not-cone", "gradient-relations", "euler-uv"],
        anchor="f(u,v,x,y) = g(ux_1 - vy_1, ..., ux_n - vy_n)",
        sample_prime=PRIME_1MOD4, observations=obs)


def p7_fermat():
    vs = VarSet(["z1", "z2", "z3"])
    inst = pencil(parse("z1^2 + z2^2 + z3^2", vs))
    inst.id = "p7-fermat"
    inst.params = {}
    inst.anchor = "(x_1u-y_1v)^2+(x_2u-y_2v)^2+(x_3u-y_3v)^2 in P^7"
    return inst


def p5_example():
    vs = pencil_varset(2)
    f = parse("u^2*x1^2 - 2*u*v*x1*y1 + v^2*y1^2 + u^2*x2^2 - 2*u*v*x2*y2 + v^2*y2^2 + u^4", vs)
    return FamilyInstance(
        "p5-example", {}, f,
        blocks={"u": "u", "v": "v", "x": ["x1", "x2"], "y": ["y1", "y2"],
                "relation_grid": [["x1", "x2"], ["y1", "y2"]]},
        expected={"degree": 4, "hess_is_zero": True, "is_cone": False,
                  "generic_rank": 5, "dim_polar_image": 4},
        checks=["hess-zero", "not-cone", "gradient-relations"],
        anchor="(x_1u-y_1v)^2+(x_2u-y_2v)^2+u^4, Z_X = V(x1~y2~ - x2~y1~)",
        sample_prime=PRIME_1MOD4)


# ---- dual Cayley trick -------------------------------------------------------

def dual_cayley_varset(r, N):
    cols = N - r + 1
    names = [f"a{i}_{j}" for i in range(r + 1) for j in range(cols)]
    names += [f"b{i}_{k}" for i in range(r + 1) for k in range(1, r + 1)]
    return VarSet(names)


def dual_cayley_minors(r, N):
    """The N-r+1 maximal minors ``B'_j`` of ``[A' | B']`` via Laplace expansion.

    Also returns the cofactors ``C_i`` (minors of B' with row i removed).
    """
    vs = dual_cayley_varset(r, N)
    B = [[vs.gen(f"b{i}_{k}") for k in range(1, r + 1)] for i in range(r + 1)]
    C = []
    for i in range(r + 1):
        rows = [B[k] for k in range(r + 1) if k != i]
        C.append(determinant(PolyMatrix(rows, vs)) if rows else Poly.constant(vs, 1))
    minors = []
    for j in range(N - r + 1):
        acc = Poly.zero(vs)
        for i in range(r + 1):
            term = vs.gen(f"a{i}_{j}") * C[i]
            acc = acc - term if i % 2 else acc + term
        minors.append(acc)
    return vs, minors, C


def dual_cayley(g, r, N, check_cone=True):
    """``f = g(B'_0, ..., B'_{N-r})`` on the (r+1)(N+1) entries of [A'|B']."""
    if isinstance(g, str):
        g = parse(g)
    if r < 1:
        raise FamilyError("dual-cayley needs r >= 1")
    if len(g.vars) != N - r + 1:
        raise FamilyError(f"g has {len(g.vars)} variables, expected N-r+1 = {N - r + 1}")
    d = g.is_homogeneous()
    if d is None or d < 2:
        raise FamilyError("g must be homogeneous of degree >= 2")
    if check_cone and is_cone(g)[0]:
        raise FamilyError("g is a cone")
    vs, minors, _ = dual_cayley_minors(r, N)
    f = g.substitute(dict(zip(g.vars.names, minors)), vs)
    grid = [[f"a{i}_{j}" for j in range(N - r + 1)] for i in range(r + 1)]
    return FamilyInstance(
        "dual-cayley", {"g": g, "r": r, "N": N}, f,
        blocks={"A": grid, "B": [[f"b{i}_{k}" for k in range(1, r + 1)] for i in range(r + 1)],
                "relation_grid": grid},
        expected={"degree": d * (r + 1), "hess_is_zero": True, "is_cone": False},
        checks=["hess-zero", "gradient-relations"],
        anchor="X = V(g(B'_0, ..., B'_{N-r})), B'_j = sum_i (-1)^i a_{i,j} C_i",
        sample_prime=PRIME_1MOD4)


def dual_cayley_pencil_renaming(n):
    """Variable map taking the r = 1 dual Cayley instance onto ``pencil``.

    ``B'_j = a0_j*b1_1 - a1_j*b0_1`` matches ``u*x - v*y`` with
    u = b1_1, v = b0_1, x_{j+1} = a0_j, y_{j+1} = a1_j.
    """
    m = {"b1_1": "u", "b0_1": "v"}
    for j in range(n):
        m[f"a0_{j}"] = f"x{j + 1}"
        m[f"a1_{j}"] = f"y{j + 1}"
    return m


# ---- scrolls ------------------------------------------------------------------

def scroll_dual(a, b):
    """Sylvester resultant of the generic binary forms of degrees a and b."""
    if not 1 <= a <= b:
        raise FamilyError("scroll-dual needs 1 <= a <= b")
    names = [f"w{i}" for i in range(a + 1)] + [f"z{i}" for i in range(b + 1)]
    big = VarSet(names + ["s", "t"])
    s, t = big.gen("s"), big.gen("t")
    F = sum((big.gen(f"w{i}") * s ** (a - i) * t ** i for i in range(a + 1)), Poly.zero(big))
    G = sum((big.gen(f"z{i}") * s ** (b - i) * t ** i for i in range(b + 1)), Poly.zero(big))
    res = binary_resultant(F, G, "s", "t").project(VarSet(names))
    expected = {"degree": a + b}
    if a == 1 and b >= 2:
        expected.update(hess_is_zero=True, is_cone=False)
    return FamilyInstance(
        "scroll-dual", {"a": a, "b": b}, res,
        blocks={"w": names[:a + 1], "z": names[a + 1:]},
        expected=expected,
        checks=["degree"],
        anchor="S(a,b)^* = V(Res(f,g)), degree a+b")


def scroll_dual_closed(b):
    """``sum_{i=0}^b (-w1)^(b-i) w0^i z_i``, the equation of S(1,b)^*."""
    if b < 1:
        raise FamilyError("scroll-dual-closed needs b >= 1")
    vs = VarSet(["w0", "w1"] + [f"z{i}" for i in range(b + 1)])
    w0, w1 = vs.gen("w0"), vs.gen("w1")
    f = Poly.zero(vs)
    for i in range(b + 1):
        f = f + (-w1) ** (b - i) * w0 ** i * vs.gen(f"z{i}")
    expected = {"degree": b + 1, "is_cone": False}
    if b >= 2:
        expected["hess_is_zero"] = True
    return FamilyInstance(
        "scroll-dual-closed", {"b": b}, f,
        blocks={"w": ["w0", "w1"], "z": [f"z{i}" for i in range(b + 1)]},
        expected=expected,
        checks=["hess-zero", "not-cone"],
        anchor="S(1,b)^* = V((-w_1)^b z_0 + (-w_1)^{b-1} w_0 z_1 + ... + w_0^b z_b)")


# ---- determinantal hypersurfaces ------------------------------------------------

def generic_matrix(size):
    return PolyMatrix.generic(size, size, prefix="x")


def symmetric_matrix(size):
    names = [f"s{i}_{j}" for i in range(size) for j in range(i, size)]
    vs = VarSet(names)
    rows = [[vs.gen(f"s{min(i, j)}_{max(i, j)}") for j in range(size)] for i in range(size)]
    return PolyMatrix(rows, vs, kind="symmetric")


def skew_matrix(size):
    names = [f"a{i}_{j}" for i in range(size) for j in range(i + 1, size)]
    vs = VarSet(names)
    zero = Poly.zero(vs)
    rows = [[vs.gen(f"a{i}_{j}") if i < j else (-vs.gen(f"a{j}_{i}") if i > j else zero)
             for j in range(size)] for i in range(size)]
    return PolyMatrix(rows, vs, kind="skew")


def segre_alpha(n):
    return (-1) ** (n * (n - 1) // 2) * n


def segre_beta(n):
    return (-1) ** (n * (n - 1) // 2) * 2 ** ((n + 1) * n // 2) * n


def segre_gamma(m):
    return (-1) ** m * m


def generic_det(n):
    if n < 2:
        raise FamilyError("generic-det needs n >= 2")
    X = generic_matrix(n + 1)
    f = determinant(X)
    return FamilyInstance(
        "generic-det", {"n": n}, f,
        expected={"degree": n + 1, "hess_is_zero": False,
                  "hess_exponent": (n + 1) * (n - 1), "hess_constant": segre_alpha(n),
                  "generic_rank": (n + 1) ** 2, "rank_mod_f": 2 * n + 2,
                  "dim_polar_image": (n + 1) ** 2 - 1, "dim_dual": 2 * n,
                  "codim_dual_in_polar": (n + 1) ** 2 - 1 - 2 * n},
        checks=["segre-alpha"],
        anchor="hess(f) = alpha f^{(n+1)(n-1)}, alpha = (-1)^{n(n-1)/2} n")


def symmetric_det(n):
    if n < 2:
        raise FamilyError("symmetric-det needs n >= 2")
    S = symmetric_matrix(n + 1)
    g = determinant(S)
    nv = len(g.vars)
    return FamilyInstance(
        "symmetric-det", {"n": n}, g,
        expected={"degree": n + 1, "hess_is_zero": False,
                  "hess_exponent": (n + 2) * (n - 1) // 2, "hess_constant": segre_beta(n),
                  "generic_rank": nv, "rank_mod_f": n + 2,
                  "dim_polar_image": nv - 1, "dim_dual": n,
                  "codim_dual_in_polar": nv - 1 - n},
        checks=["segre-beta"],
        anchor="hess(g) = beta g^{(n+2)(n-1)/2}, beta = (-1)^{n(n-1)/2} 2^{(n+1)n/2} n")


def pfaffian_form(m):
    if m < 2:
        raise FamilyError("pfaffian-form needs m >= 2")
    A = skew_matrix(2 * m + 2)
    pf = pfaffian(A)
    nv = len(pf.vars)
    return FamilyInstance(
        "pfaffian-form", {"m": m}, pf,
        expected={"degree": m + 1, "hess_is_zero": False,
                  "hess_exponent": (2 * m + 1) * (m - 1), "hess_constant": segre_gamma(m),
                  "generic_rank": nv, "rank_mod_f": 4 * m + 2,
                  "dim_polar_image": nv - 1, "dim_dual": 4 * m,
                  "codim_dual_in_polar": nv - 1 - 4 * m},
        checks=["segre-gamma"],
        anchor="hess(Pf) = gamma Pf^{(2m+1)(m-1)}, gamma = (-1)^m m")


def _slice(inst, var, new_id, params, codim, dim_dual, anchor):
    f = inst.poly
    keep = VarSet([n for n in f.vars.names if n != var])
    zero_images = {n: (keep.gen(n) if n != var else Poly.zero(keep)) for n in f.vars.names}
    g = f.substitute(zero_images, keep)
    nv = len(keep)
    # the polar image is a hypersurface: generic rank = number of variables - 1
    grank = nv - 1
    rmod = dim_dual + 2
    expected = _expected_from_ranks(nv, grank, rmod, degree=inst.expected["degree"],
                                    hess_is_zero=True)
    if expected["codim_dual_in_polar"] != codim:
        raise FamilyError("slice codimension bookkeeping is inconsistent")
    return FamilyInstance(new_id, params, g, expected=expected,
                          checks=["hess-zero", "codim"], anchor=anchor,
                          blocks={"sliced_variable": var})


def det_slice(n):
    """``det X`` with ``x_{n,n} = 0`` (tangent hyperplane at a corank-one matrix)."""
    return _slice(generic_det(n), f"x{n}_{n}", "det-slice", {"n": n},
                  n * n - 2, 2 * n, "R_n = X_n cap p^perp, codim(R_n^*, Z_{R_n}) = n^2 - 2")


def sym_slice(n):
    return _slice(symmetric_det(n), f"s{n}_{n}", "sym-slice", {"n": n},
                  (n * n + n - 4) // 2, n, "codim(Q_n^*, Z_{Q_n}) = (n^2+n-4)/2")


def pf_slice(m):
    k = 2 * m
    return _slice(pfaffian_form(m), f"a{k}_{k + 1}", "pf-slice", {"m": m},
                  2 * m * m - m - 2, 4 * m, "codim(F_m^*, Z_{F_m}) = 2m^2 - m - 2")


# ---- Cauchy-Schwartz quartic ---------------------------------------------------

def _ab_varset(n):
    return VarSet([f"a{i}" for i in range(n + 2)] + [f"b{i}" for i in range(n + 2)])


def lagrange_sides(n):
    """``(sum_{i<j} (a_i b_j - a_j b_i)^2, |a|^2 |b|^2 - (a.b)^2)`` for length n+2."""
    vs = _ab_varset(n)
    a = [vs.gen(f"a{i}") for i in range(n + 2)]
    b = [vs.gen(f"b{i}") for i in range(n + 2)]
    plucker = Poly.zero(vs)
    for i in range(n + 2):
        for j in range(i + 1, n + 2):
            plucker = plucker + (a[i] * b[j] - a[j] * b[i]) ** 2
    na = sum((x * x for x in a), Poly.zero(vs))
    nb = sum((x * x for x in b), Poly.zero(vs))
    dot = sum((x * y for x, y in zip(a, b)), Poly.zero(vs))
    return plucker, na * nb - dot * dot


def cauchy_schwartz(n):
    if n < 1:
        raise FamilyError("cauchy-schwartz needs n >= 1")
    _, f = lagrange_sides(n)
    expected = {"degree": 4, "hess_is_zero": False}
    if n == 1:
        expected["hess_exponent"] = 3
    return FamilyInstance(
        "cauchy-schwartz", {"n": n}, f,
        blocks={"a": [f"a{i}" for i in range(n + 2)], "b": [f"b{i}" for i in range(n + 2)]},
        expected=expected,
        checks=["lagrange", "hess-nonzero", "hess-proportional"],
        anchor="V(|a|^2 |b|^2 - (a.b)^2), by Lagrange's identity")


# ---- catalog ---------------------------------------------------------------------

CATALOG = {
    "perazzo": {"params": {}, "build": lambda p: perazzo(),
                "anchor": perazzo.__doc__ or "Perazzo cubic in P^4",
                "expected": ["degree", "hess_is_zero", "is_cone"]},
    "perazzo-ext": {"params": {"N": "int >= 5"}, "build": lambda p: perazzo_ext(p["N"]),
                    "expected": ["degree", "hess_is_zero", "is_cone"]},
    "pencil": {"params": {"g": "poly in n >= 2 vars, degree >= 2, not a cone"},
               "build": lambda p: pencil(p["g"]),
               "expected": ["degree", "hess_is_zero", "is_cone", "generic_rank",
                            "codim_dual_in_polar"]},
    "p5-example": {"params": {}, "build": lambda p: p5_example(),
                   "expected": ["degree", "hess_is_zero", "is_cone", "generic_rank"]},
    "p7-fermat": {"params": {}, "build": lambda p: p7_fermat(),
                  "expected": ["degree", "hess_is_zero", "is_cone", "generic_rank",
                               "rank_mod_f", "codim_dual_in_polar"]},
    "dual-cayley": {"params": {"g": "poly in N-r+1 vars", "r": "int >= 1", "N": "int"},
                    "build": lambda p: dual_cayley(p["g"], p["r"], p["N"]),
                    "expected": ["degree", "hess_is_zero", "is_cone"]},
    "scroll-dual": {"params": {"a": "int >= 1", "b": "int >= a"},
                    "build": lambda p: scroll_dual(p["a"], p["b"]),
                    "expected": ["degree"]},
    "scroll-dual-closed": {"params": {"b": "int >= 1"},
                           "build": lambda p: scroll_dual_closed(p["b"]),
                           "expected": ["degree", "hess_is_zero", "is_cone"]},
    "generic-det": {"params": {"n": "int >= 2"}, "build": lambda p: generic_det(p["n"]),
                    "expected": ["degree", "hess_exponent", "hess_constant"]},
    "symmetric-det": {"params": {"n": "int >= 2"}, "build": lambda p: symmetric_det(p["n"]),
                      "expected": ["degree", "hess_exponent", "hess_constant"]},
    "pfaffian-form": {"params": {"m": "int >= 2"}, "build": lambda p: pfaffian_form(p["m"]),
                      "expected": ["degree", "hess_exponent", "hess_constant"]},
    "det-slice": {"params": {"n": "int >= 2"}, "build": lambda p: det_slice(p["n"]),
                  "expected": ["degree", "hess_is_zero", "codim_dual_in_polar"]},
    "sym-slice": {"params": {"n": "int >= 2"}, "build": lambda p: sym_slice(p["n"]),
                  "expected": ["degree", "hess_is_zero", "codim_dual_in_polar"]},
    "pf-slice": {"params": {"m": "int >= 2"}, "build": lambda p: pf_slice(p["m"]),
                 "expected": ["degree", "hess_is_zero", "codim_dual_in_polar"]},
    "cauchy-schwartz": {"params": {"n": "int >= 1"},
                        "build": lambda p: cauchy_schwartz(p["n"]),
                        "expected": ["degree", "hess_is_zero", "hess_exponent"]},
}

_ANCHORS = {
    "perazzo": "V(x_0x_3^2 + x_1x_3x_4 + x_2x_4^2)",
    "perazzo-ext": "adding sum_{i=5}^N x_i^3",
    "pencil": "g(ux_1-vy_1, ..., ux_n-vy_n)",
    "p5-example": "(x_1u-y_1v)^2+(x_2u-y_2v)^2+u^4",
    "p7-fermat": "(x_1u-y_1v)^2+(x_2u-y_2v)^2+(x_3u-y_3v)^2",
    "dual-cayley": "V(g(B'_0, ..., B'_{N-r}))",
    "scroll-dual": "S(a,b)^* = V(Res(f,g))",
    "scroll-dual-closed": "S(1,b)^* = V((-w_1)^b z_0 + ... + w_0^b z_b)",
    "generic-det": "hess(f) = alpha f^{(n+1)(n-1)}",
    "symmetric-det": "hess(g) = beta g^{(n+2)(n-1)/2}",
    "pfaffian-form": "hess(Pf) = gamma Pf^{(2m+1)(m-1)}",
    "det-slice": "R_n = X_n cap p^perp",
    "sym-slice": "Q_n = S_n cap p^perp",
    "pf-slice": "F_m = A_{2m} cap p^perp",
    "cauchy-schwartz": "V(|a|^2 |b|^2 - (a.b)^2)",
}
for _k, _v in CATALOG.items():
    _v["anchor"] = _ANCHORS[_k]


def build(family_id, **params):
    try:
        entry = CATALOG[family_id]
    except KeyError:
        raise FamilyError(f"unknown family {family_id!r}") from None
    missing = [k for k in entry["params"] if k not in params]
    if missing:
        raise FamilyError(f"{family_id} needs parameters {missing}")
    return entry["build"](params)


def catalog_manifest():
    return [{"id": k, "params": v["params"], "anchor": v["anchor"],
             "expected_fields": v["expected"]} for k, v in CATALOG.items()]
