"""Hessian profiles, cone detection, and identity checks.

Ranks of polynomial matrices are measured by evaluation at random points of
F_p (a rank drop at a random point needs a nonzero minor to vanish there,
which Schwartz-Zippel bounds by ``deg/p``).  Rank modulo an irreducible
``f`` is either searched exactly through minors and divisibility, or
sampled at smooth points of V(f) over F_p, which gives a lower bound that is
attained at general points.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import _accel, gfpoly
from .linalg import (CompiledMatrix, PolyMatrix, all_minors, determinant,
                     rational_determinant)
from .ring import Poly, PolyError, divides
from .sampling import SampleConfig, failure_bound, random_point, stream

__all__ = [
    "HessianProfile",
    "IdentityReport",
    "HessianDeterminant",
    "PolyPower",
    "RankModError",
    "hessian_matrix",
    "polar_gradient",
    "hess_is_zero",
    "generic_rank",
    "rank_mod_f",
    "sample_point_on_hypersurface",
    "is_cone",
    "profile",
    "verify_identity",
    "verify_proportionality",
    "check_gradient_relations",
    "random_linear_change",
    "EXACT_SIZE_BUDGET",
    "EXACT_DEGREE_BUDGET",
]

EXACT_SIZE_BUDGET = 8
EXACT_DEGREE_BUDGET = 2
EXACT_HESS_MAX_VARS = 6


class RankModError(RuntimeError):
    pass


def hessian_matrix(f):
    """Symmetric matrix of second partials of ``f``."""
    names = f.vars.names
    grad = [f.diff(n) for n in names]
    n = len(names)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = grad[i].diff(names[j])
    return PolyMatrix(rows, f.vars, kind="symmetric")


def polar_gradient(f):
    d = f.is_homogeneous()
    if d is None or d < 2:
        raise PolyError("polar map needs a homogeneous form of degree >= 2")
    return f.gradient()


# ---- lazily evaluated expressions -----------------------------------------

class _PolyExpr:
    def __init__(self, poly):
        self.poly = poly
        self.vars = poly.vars
        self._cache = {}

    def degree_bound(self):
        return max(self.poly.total_degree(), 0)

    def eval_mod(self, point, p):
        b = self._cache.get(p)
        if b is None:
            q = self.poly if self.poly.modulus is not None else self.poly.reduce_mod_prime(p)
            exps, coefs = [], []
            for e, c in q.terms.items():
                exps.extend(e)
                coefs.append(c)
            maxdeg = max((max(e, default=0) for e in q.terms), default=0)
            b = self._cache[p] = _accel.poly_batch(
                exps, coefs, [0, len(coefs)], len(q.vars), maxdeg, p)
        return b.evaluate(point)[0]

    def eval_exact(self, point):
        return self.poly.evaluate(point)


class HessianDeterminant:
    """``det H(f)`` evaluated pointwise, never expanded symbolically."""

    def __init__(self, f):
        self.f = f
        self.vars = f.vars
        self.H = hessian_matrix(f)
        self._compiled = {}

    def degree_bound(self):
        return _hess_degree_bound(self.f)

    def eval_mod(self, point, p):
        cm = self._compiled.get(p)
        if cm is None:
            cm = self._compiled[p] = CompiledMatrix(self.H, p)
        return cm.det_at(point)

    def eval_exact(self, point):
        rows = [[e.evaluate(point) for e in r] for r in self.H.entries]
        return rational_determinant(rows)


class PolyPower:
    """``scale * base^k`` evaluated pointwise."""

    def __init__(self, base, k, scale=1):
        self.base = _PolyExpr(base)
        self.vars = base.vars
        self.k = k
        self.scale = scale

    def degree_bound(self):
        return self.base.degree_bound() * self.k

    def eval_mod(self, point, p):
        s = self.scale
        s = s.numerator * pow(s.denominator, -1, p) if isinstance(s, Fraction) else s
        return s * pow(self.base.eval_mod(point, p), self.k, p) % p

    def eval_exact(self, point):
        return self.scale * self.base.eval_exact(point) ** self.k


def _expr(x):
    if isinstance(x, Poly):
        return _PolyExpr(x)
    return x


# ---- reports -------------------------------------------------------------

@dataclass
class IdentityReport:
    identity: str
    method: str  # "exact" | "schwartz-zippel"
    verdict: str  # "PASS" | "FAIL"
    prime: int | None = None
    trials: int | None = None
    degree_bound: int | None = None
    failure_bound: str | None = None
    failure_bound_log10: float | None = None
    constant: str | None = None
    constant_residue: int | None = None
    expected_constant: str | None = None
    convention_match: bool | None = None
    anchor: str | None = None
    details: dict = field(default_factory=dict)
    cfg: dict | None = None

    @property
    def passed(self):
        return self.verdict == "PASS"

    def to_json(self):
        d = asdict(self)
        if d["failure_bound_log10"] is not None and math.isinf(d["failure_bound_log10"]):
            d["failure_bound_log10"] = None
        return d


@dataclass
class HessianProfile:
    n_vars: int
    degree: int
    hess_is_zero: bool
    hess_certificate: str  # "exact" | "probabilistic"
    hess_failure_bound: str
    generic_rank: int
    rank_mod_f: int
    rank_mod_method: str  # "exact-divisibility" | "on-hypersurface-sampling"
    rank_mod_is_lower_bound: bool
    dim_polar_image: int
    dim_dual: int
    codim_dual_in_polar: int
    is_cone: bool
    irreducible_assumed: bool = True
    cfg: dict | None = None

    NUMERIC_FIELDS = ("n_vars", "degree", "hess_is_zero", "generic_rank", "rank_mod_f",
                      "dim_polar_image", "dim_dual", "codim_dual_in_polar", "is_cone")

    def numeric(self):
        return {k: getattr(self, k) for k in self.NUMERIC_FIELDS}

    def chain_holds(self):
        """dim X* < dim Z_X < N (the strict chain for vanishing hessians)."""
        return self.dim_dual < self.dim_polar_image < self.n_vars - 1

    def to_json(self):
        return asdict(self)


# ---- hessian vanishing and ranks -----------------------------------------

def _hess_degree_bound(f):
    return len(f.vars) * max(f.total_degree() - 2, 0)


def hess_is_zero(f, cfg=None, method=None):
    """Decide whether ``det H(f)`` is the zero polynomial.

    Returns ``(is_zero, certificate, failure_bound_string)``.  ``method`` is
    ``"exact"``, ``"sample"`` or None (exact for at most six variables).
    """
    cfg = cfg or SampleConfig()
    if method is None:
        method = "exact" if len(f.vars) <= EXACT_HESS_MAX_VARS else "sample"
    H = hessian_matrix(f)
    if method == "exact":
        return determinant(H).is_zero(), "exact", "0"
    if method != "sample":
        raise ValueError(f"unknown method {method!r}")
    n = len(f.vars)
    cm = CompiledMatrix(H, cfg.prime)
    for t in range(cfg.trials):
        rng = stream(cfg.seed, "hess", t)
        if cm.rank_at(random_point(rng, n, cfg.prime)) == n:
            return False, "exact", "0"
    D = _hess_degree_bound(f)
    if D >= cfg.prime:
        raise ValueError("degree bound exceeds the prime; refusing a vacuous check")
    return True, "probabilistic", failure_bound(D, cfg.prime, cfg.trials)[1]


def generic_rank(M, cfg=None, label="rank"):
    """Max rank of ``M`` over ``cfg.trials`` random F_p evaluations."""
    cfg = cfg or SampleConfig()
    cm = M if isinstance(M, CompiledMatrix) else CompiledMatrix(M, cfg.prime)
    n = cm.nvars
    best = 0
    full = min(cm.rows, cm.cols)
    for t in range(cfg.trials):
        rng = stream(cfg.seed, label, t)
        best = max(best, cm.rank_at(random_point(rng, n, cfg.prime)))
        if best == full:
            break
    return best


def generic_rank_bound(M, rank, cfg):
    """SZ failure bound for a measured generic rank."""
    D = (rank + 1) * max(M.max_entry_degree(), 0)
    return failure_bound(D, cfg.prime, cfg.trials)[1]


class _HypersurfaceSampler:
    """Random smooth F_p-points of V(f) found on random lines."""

    def __init__(self, f, p):
        q = f if f.modulus == p else f.reduce_mod_prime(p)
        if q.modulus != p:
            raise PolyError("polynomial is over a different prime field")
        if q.is_constant():
            raise PolyError("constant polynomial has no hypersurface")
        self.p = p
        self.n = len(q.vars)
        self.degree = q.total_degree()
        polys = [q] + q.gradient()
        exps, coefs, offsets = [], [], [0]
        maxdeg = 0
        for g in polys:
            for e, c in g.terms.items():
                exps.extend(e)
                coefs.append(c)
                maxdeg = max(maxdeg, max(e, default=0))
            offsets.append(len(coefs))
        self.batch = _accel.poly_batch(exps, coefs, offsets, self.n, maxdeg, p)
        self.fbatch = _accel.poly_batch(exps[:offsets[1] * self.n], coefs[:offsets[1]],
                                        [0, offsets[1]], self.n, maxdeg, p)

    def draw(self, rng, retries=200):
        p, n, d = self.p, self.n, self.degree
        for _ in range(retries):
            base = random_point(rng, n, p)
            direc = random_point(rng, n, p)
            xs = list(range(d + 1))
            ys = [self.fbatch.evaluate([(b + x * v) % p for b, v in zip(base, direc)])[0]
                  for x in xs]
            g = gfpoly.interpolate(xs, ys, p)
            if not g:
                # line lies on V(f): any parameter works
                rts = [rng.randrange(p)]
            else:
                rts = gfpoly.roots(g, p, rng)
            rng.shuffle(rts)
            for r in rts:
                pt = [(b + r * v) % p for b, v in zip(base, direc)]
                vals = self.batch.evaluate(pt)
                if vals[0] == 0 and any(vals[1:]):
                    return pt
        raise RuntimeError("no smooth point found within the retry budget")


def sample_point_on_hypersurface(f, cfg=None, rng=None, retries=200):
    """A random point of V(f) over F_p at which the gradient is nonzero."""
    cfg = cfg or SampleConfig()
    p = f.modulus or cfg.prime
    rng = rng or stream(cfg.seed, "surface-point", 0)
    return _HypersurfaceSampler(f, p).draw(rng, retries)


def _exact_budget_ok(M):
    return max(M.rows, M.cols) <= EXACT_SIZE_BUDGET and M.max_entry_degree() <= EXACT_DEGREE_BUDGET


def rank_mod_f(M, f, strategy=None, cfg=None):
    """Rank of ``M`` over the function field of V(f), ``f`` irreducible.

    Returns ``(rank, method_tag)``.  The exact search runs descending from
    the generic rank; for symmetric ``M`` only principal minors are needed,
    since a symmetric matrix of rank r over a field has a nonsingular
    principal r x r submatrix.
    """
    cfg = cfg or SampleConfig()
    if strategy is None:
        strategy = "exact" if _exact_budget_ok(M) else "sample"
    if strategy == "exact":
        if not _exact_budget_ok(M):
            raise RankModError(
                f"exact rank mod f is limited to size <= {EXACT_SIZE_BUDGET} and entry "
                f"degree <= {EXACT_DEGREE_BUDGET}; use strategy 'sample'")
        top = generic_rank(M, cfg)
        principal = M.is_symmetric()
        for k in range(top, 0, -1):
            for _, _, m in all_minors(M, k, principal=principal):
                if m and divides(f, m) is None:
                    return k, "exact-divisibility"
        return 0, "exact-divisibility"
    if strategy != "sample":
        raise ValueError(f"unknown strategy {strategy!r}")
    p = cfg.prime
    sampler = _HypersurfaceSampler(f, p)
    cm = CompiledMatrix(M, p)
    best = 0
    for t in range(cfg.points):
        rng = stream(cfg.seed, "rank-mod-f", t)
        best = max(best, cm.rank_at(sampler.draw(rng)))
    return best, "on-hypersurface-sampling"


# ---- cones ---------------------------------------------------------------

def _nullspace(rows, ncols, modulus=None):
    """Basis of {x : rows . x = 0} over Q or F_modulus."""
    if modulus is None:
        a = [[Fraction(x) for x in r] for r in rows]
        inv = lambda x: 1 / x  # noqa: E731
        red = lambda x: x  # noqa: E731
    else:
        a = [[x % modulus for x in r] for r in rows]
        inv = lambda x: pow(x, -1, modulus)  # noqa: E731
        red = lambda x: x % modulus  # noqa: E731
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        s = inv(a[r][c])
        a[r] = [red(x * s) for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                fct = a[i][c]
                a[i] = [red(x - fct * y) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[free] = 1
        for i, pc in enumerate(pivots):
            v[pc] = red(-a[i][free])
        basis.append([x.numerator if isinstance(x, Fraction) and x.denominator == 1 else x
                      for x in v])
    return basis


def is_cone(f):
    """True iff the partials of ``f`` are linearly dependent.

    Returns ``(flag, witness)`` where ``witness`` is a basis of the linear
    relations among the partials, i.e. the directions of the vertex.
    """
    grad = f.gradient()
    monos = sorted({e for g in grad for e in g.terms})
    # columns = partials, rows = monomials: a kernel vector is a relation
    rows = [[g.terms.get(m, 0) for g in grad] for m in monos]
    n = len(grad)
    if not rows:
        basis = [[int(i == j) for i in range(n)] for j in range(n)]
    else:
        basis = _nullspace(rows, n, f.modulus)
    return bool(basis), basis


# ---- profiles ------------------------------------------------------------

def profile(f, cfg=None, rank_mod=None, hess_method=None):
    """Measured invariants of V(f) (f homogeneous, reduced, irreducible)."""
    cfg = cfg or SampleConfig()
    d = f.is_homogeneous()
    if d is None:
        raise PolyError("profile needs a nonzero homogeneous polynomial")
    H = hessian_matrix(f)
    zero, cert, bound = hess_is_zero(f, cfg, hess_method)
    grank = generic_rank(H, cfg)
    rmod, method = rank_mod_f(H, f, rank_mod, cfg)
    cone, _ = is_cone(f)
    return HessianProfile(
        n_vars=len(f.vars),
        degree=d,
        hess_is_zero=zero,
        hess_certificate=cert,
        hess_failure_bound=bound,
        generic_rank=grank,
        rank_mod_f=rmod,
        rank_mod_method=method,
        rank_mod_is_lower_bound=method == "on-hypersurface-sampling",
        dim_polar_image=grank - 1,
        dim_dual=rmod - 2,
        codim_dual_in_polar=(grank - 1) - (rmod - 2),
        is_cone=cone,
        cfg=cfg.echo(),
    )


# ---- identities ----------------------------------------------------------

def verify_identity(lhs, rhs, cfg=None, mode="sz", identity="identity", anchor=None):
    """Check ``lhs == rhs`` exactly or by Schwartz-Zippel over F_p."""
    cfg = cfg or SampleConfig()
    if mode == "exact":
        if not (isinstance(lhs, Poly) and isinstance(rhs, Poly)):
            raise TypeError("exact mode needs expanded polynomials")
        ok = lhs == rhs
        return IdentityReport(identity, "exact", "PASS" if ok else "FAIL",
                              anchor=anchor, failure_bound="0", cfg=cfg.echo())
    if mode != "sz":
        raise ValueError(f"unknown mode {mode!r}")
    L, R = _expr(lhs), _expr(rhs)
    if L.vars != R.vars:
        raise PolyError("variable-set mismatch")
    D = max(L.degree_bound(), R.degree_bound())
    if D >= cfg.prime:
        raise ValueError("degree bound exceeds the prime; refusing a vacuous check")
    p = cfg.prime
    n = len(L.vars)
    verdict, failed_at = "PASS", None
    for t in range(cfg.trials):
        pt = random_point(stream(cfg.seed, f"sz:{identity}", t), n, p)
        if L.eval_mod(pt, p) != R.eval_mod(pt, p):
            verdict, failed_at = "FAIL", t
            break
    lg, s = failure_bound(D, p, cfg.trials)
    rep = IdentityReport(identity, "schwartz-zippel", verdict, prime=p, trials=cfg.trials,
                         degree_bound=D, failure_bound=s, failure_bound_log10=lg,
                         anchor=anchor, cfg=cfg.echo())
    if failed_at is not None:
        rep.details["first_failing_trial"] = failed_at
    return rep


def _fraction_str(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def verify_proportionality(lhs, rhs, cfg=None, identity="proportionality",
                           expected=None, anchor=None, int_range=6):
    """Check ``lhs == c * rhs`` for one constant ``c`` and report ``c``.

    Over Q the constant is read off exactly from evaluations at small
    integer points; the relation ``lhs - c*rhs = 0`` is then confirmed by
    Schwartz-Zippel over F_p.  Over F_p the constant is a residue.
    """
    cfg = cfg or SampleConfig()
    L, R = _expr(lhs), _expr(rhs)
    if L.vars != R.vars:
        raise PolyError("variable-set mismatch")
    n = len(L.vars)
    p = cfg.prime
    over_q = _is_rational(lhs) and _is_rational(rhs)
    ratios = []
    details = {}
    c = None
    if over_q:
        t = 0
        attempts = 0
        while t < cfg.trials and attempts < 50 * cfg.trials:
            rng = stream(cfg.seed, f"prop-q:{identity}", attempts)
            attempts += 1
            pt = [rng.randint(-int_range, int_range) for _ in range(n)]
            r = R.eval_exact(pt)
            if r == 0:
                continue
            ratios.append(Fraction(L.eval_exact(pt)) / Fraction(r))
            t += 1
        if not ratios:
            return IdentityReport(identity, "schwartz-zippel", "FAIL", anchor=anchor,
                                  details={"reason": "rhs vanished at every sample"},
                                  cfg=cfg.echo())
        c = ratios[0]
        consistent = all(x == c for x in ratios)
        details["rational_samples"] = len(ratios)
        if not consistent:
            details["distinct_ratios"] = sorted({_fraction_str(x) for x in ratios})[:5]
            return IdentityReport(identity, "schwartz-zippel", "FAIL", anchor=anchor,
                                  constant=None, details=details, cfg=cfg.echo())
        c_mod = c.numerator * pow(c.denominator, -1, p) % p
    else:
        c_mod = None
        for t in range(cfg.trials):
            pt = random_point(stream(cfg.seed, f"prop-p:{identity}", t), n, p)
            r = R.eval_mod(pt, p)
            if r == 0:
                continue
            c_mod = L.eval_mod(pt, p) * pow(r, -1, p) % p
            break
        if c_mod is None:
            return IdentityReport(identity, "schwartz-zippel", "FAIL", anchor=anchor,
                                  details={"reason": "rhs vanished at every sample"},
                                  cfg=cfg.echo())
    D = max(L.degree_bound(), R.degree_bound())
    if D >= p:
        raise ValueError("degree bound exceeds the prime; refusing a vacuous check")
    verdict = "PASS"
    for t in range(cfg.trials):
        pt = random_point(stream(cfg.seed, f"prop-sz:{identity}", t), n, p)
        if (L.eval_mod(pt, p) - c_mod * R.eval_mod(pt, p)) % p:
            verdict = "FAIL"
            details["first_failing_trial"] = t
            break
    lg, s = failure_bound(D, p, cfg.trials)
    rep = IdentityReport(identity, "schwartz-zippel", verdict, prime=p, trials=cfg.trials,
                         degree_bound=D, failure_bound=s, failure_bound_log10=lg,
                         constant=_fraction_str(c) if c is not None else None,
                         constant_residue=c_mod, anchor=anchor, details=details,
                         cfg=cfg.echo())
    if expected is not None:
        rep.expected_constant = _fraction_str(expected)
        if c is not None:
            rep.convention_match = c == Fraction(expected)
        else:
            e = Fraction(expected)
            rep.convention_match = c_mod == e.numerator * pow(e.denominator, -1, p) % p
    return rep


def _is_rational(x):
    if isinstance(x, Poly):
        return x.modulus is None
    if isinstance(x, HessianDeterminant):
        return x.f.modulus is None
    if isinstance(x, PolyPower):
        return x.base.poly.modulus is None
    return False


def check_gradient_relations(f, grid, identity="gradient-relations", anchor=None):
    """Exact check that every 2x2 minor of ``[df/d grid[i][j]]`` vanishes.

    ``grid`` is a list of rows of variable names, e.g. ``[[x1..xn], [y1..yn]]``
    for the pencil construction.
    """
    parts = [[f.diff(n) for n in row] for row in grid]
    failures = []
    count = 0
    rows, cols = len(parts), len(parts[0])
    for i in range(rows):
        for k in range(i + 1, rows):
            for l in range(cols):
                for m in range(l + 1, cols):
                    rel = parts[i][l] * parts[k][m] - parts[i][m] * parts[k][l]
                    count += 1
                    if rel:
                        failures.append([grid[i][l], grid[i][m], grid[k][l], grid[k][m]])
    return IdentityReport(identity, "exact", "FAIL" if failures else "PASS",
                          failure_bound="0", anchor=anchor,
                          details={"relations": count, "failures": failures[:10]})


def random_linear_change(f, rng, entry_range=3, sparse=False):
    """Return ``(f(A x), A)`` for a random invertible integer matrix ``A``.

    ``sparse=True`` draws ``A`` as a permutation times a unit triangular
    matrix with a single off-diagonal entry per row, which keeps the
    transformed polynomial small for many-variable instances.
    """
    n = len(f.vars)
    while True:
        if sparse:
            perm = list(range(n))
            rng.shuffle(perm)
            A = [[0] * n for _ in range(n)]
            for i in range(n):
                A[i][perm[i]] = rng.choice([1, -1, 2, -2])
            for i in range(n - 1):
                j = rng.randrange(i + 1, n)
                A[i][perm[j]] += rng.choice([c for c in range(-entry_range, entry_range + 1) if c])
        else:
            A = [[rng.randint(-entry_range, entry_range) for _ in range(n)] for _ in range(n)]
        if rational_determinant(A) != 0:
            break
    gens = f.vars.gens(f.modulus)
    images = {}
    for i, name in enumerate(f.vars.names):
        acc = Poly.zero(f.vars, f.modulus)
        for j in range(n):
            if A[i][j]:
                acc = acc + gens[j].scale(A[i][j])
        images[name] = acc
    return f.substitute(images, f.vars), A
