"""Matrices of polynomials and of F_p scalars.

Determinants use fraction-free Bareiss elimination; adjugates and minors are
built from cofactors so they stay valid on singular matrices.  Pfaffians
follow the first-row expansion

    Pf(A) = sum_{j>1} (-1)^j a_{1j} Pf(A with rows/cols 1, j removed)

(1-based), which gives Pf([[0, a], [-a, 0]]) = a and Pf(A)^2 = det(A).
Resultants are Sylvester determinants with the first form's rows on top.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from functools import lru_cache

from . import _accel
from .ring import Poly, PolyError, VarSet, VarSetMismatch, parse, format_poly

__all__ = [
    "PolyMatrix",
    "ScalarMatrix",
    "MatrixError",
    "determinant",
    "cofactor_determinant",
    "minor",
    "all_minors",
    "adjugate",
    "pfaffian",
    "pfaffian_mod_p",
    "sylvester_matrix",
    "binary_resultant",
    "binary_discriminant",
    "binary_form_coefficients",
    "jacobian",
    "scalar_rank",
    "rational_determinant",
    "CompiledMatrix",
]


class MatrixError(ValueError):
    pass


class PolyMatrix:
    """Row-major matrix of :class:`Poly` entries sharing one VarSet.

    ``kind`` is ``"general"``, ``"symmetric"`` or ``"skew"``; the latter two
    are validated entry-wise at construction.
    """

    __slots__ = ("rows", "cols", "entries", "vars", "modulus", "kind")

    def __init__(self, entries, vars=None, kind="general"):
        entries = [list(r) for r in entries]
        if not entries or not entries[0]:
            raise MatrixError("matrix must have positive dimensions")
        ncols = len(entries[0])
        if any(len(r) != ncols for r in entries):
            raise MatrixError("ragged matrix")
        first = next((e for r in entries for e in r if isinstance(e, Poly)), None)
        if vars is None:
            if first is None:
                raise MatrixError("cannot infer the variable set")
            vars = first.vars
        modulus = first.modulus if first is not None else None
        for r in entries:
            for j, e in enumerate(r):
                if isinstance(e, Poly):
                    if e.vars != vars:
                        raise VarSetMismatch()
                    if e.modulus != modulus:
                        raise PolyError("coefficient field mismatch")
                else:
                    r[j] = Poly.constant(vars, e, modulus)
        self.rows = len(entries)
        self.cols = ncols
        self.entries = entries
        self.vars = vars
        self.modulus = modulus
        self.kind = kind
        if kind == "symmetric":
            if not self.is_symmetric():
                raise MatrixError("matrix is not symmetric")
        elif kind == "skew":
            if not self.is_skew():
                raise MatrixError("matrix is not skew-symmetric")
        elif kind != "general":
            raise MatrixError(f"unknown matrix kind {kind!r}")

    @classmethod
    def identity(cls, n, vars, modulus=None):
        one = Poly.constant(vars, 1, modulus)
        zero = Poly.zero(vars, modulus)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], vars)

    @classmethod
    def generic(cls, rows, cols, prefix="x", sep="_"):
        """Matrix of independent variables ``x{i}{sep}{j}`` and its VarSet."""
        names = [f"{prefix}{i}{sep}{j}" for i in range(rows) for j in range(cols)]
        vs = VarSet(names)
        g = vs.gens()
        return cls([g[i * cols:(i + 1) * cols] for i in range(rows)], vs)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.vars == other.vars
                and self.entries == other.entries)

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols}, vars={list(self.vars.names)!r})"

    @property
    def is_square(self):
        return self.rows == self.cols

    def is_symmetric(self):
        return self.is_square and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows) for j in range(i + 1, self.cols))

    def is_skew(self):
        return self.is_square and all(
            self.entries[i][j] == -self.entries[j][i]
            for i in range(self.rows) for j in range(i, self.cols))

    def transpose(self):
        return PolyMatrix([[self.entries[i][j] for i in range(self.rows)]
                           for j in range(self.cols)], self.vars)

    def map(self, fn):
        return PolyMatrix([[fn(e) for e in r] for r in self.entries], self.vars)

    def scale(self, c):
        return self.map(lambda e: e * c)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise MatrixError("shape mismatch")
        return PolyMatrix([[a + b for a, b in zip(r, s)]
                           for r, s in zip(self.entries, other.entries)], self.vars)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise MatrixError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = Poly.zero(self.vars, self.modulus)
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.vars)

    def submatrix(self, rows, cols):
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows], self.vars)

    def max_entry_degree(self):
        return max(e.total_degree() for r in self.entries for e in r)

    def evaluate(self, point, modulus):
        """Scalar matrix over F_modulus at ``point``."""
        return self.compile(modulus).evaluate(point)

    def compile(self, modulus):
        return CompiledMatrix(self, modulus)

    def to_json(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "vars": list(self.vars.names),
            "entries": [[format_poly(e) for e in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        vs = VarSet(obj["vars"])
        entries = [[parse(t, vs) for t in r] for r in obj["entries"]]
        if len(entries) != obj["rows"] or any(len(r) != obj["cols"] for r in entries):
            raise MatrixError("declared shape does not match entries")
        return cls(entries, vs)


class ScalarMatrix:
    """Dense matrix over F_p (entries are ints in [0, p))."""

    __slots__ = ("rows", "cols", "entries", "modulus")

    def __init__(self, entries, modulus):
        entries = [[x % modulus for x in r] for r in entries]
        if entries and any(len(r) != len(entries[0]) for r in entries):
            raise MatrixError("ragged matrix")
        self.entries = entries
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        self.modulus = modulus

    def __eq__(self, other):
        return (isinstance(other, ScalarMatrix) and self.modulus == other.modulus
                and self.entries == other.entries)

    def __repr__(self):
        return f"ScalarMatrix({self.rows}x{self.cols}, p={self.modulus})"

    def rank(self):
        return _accel.rank_mod_p(self.entries, self.modulus)

    def det(self):
        if self.rows != self.cols:
            raise MatrixError("determinant of a non-square matrix")
        return _accel.det_mod_p(self.entries, self.modulus)

    def __matmul__(self, other):
        p = self.modulus
        return ScalarMatrix(
            [[sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols)) % p
              for j in range(other.cols)] for i in range(self.rows)], p)


class CompiledMatrix:
    """A PolyMatrix packed for fast repeated evaluation over F_p."""

    def __init__(self, M, modulus):
        if M.modulus not in (None, modulus):
            raise PolyError("coefficient field mismatch")
        self.rows, self.cols = M.rows, M.cols
        self.modulus = modulus
        self.nvars = len(M.vars)
        # symmetric matrices evaluate only the upper triangle
        self.symmetric = M.kind == "symmetric" or M.is_symmetric()
        cells = [(i, j) for i in range(M.rows) for j in range(M.cols)
                 if not self.symmetric or j >= i]
        exps, coefs, offsets = [], [], [0]
        maxdeg = 0
        for i, j in cells:
            e = M.entries[i][j]
            if e.modulus is None:
                e = e.reduce_mod_prime(modulus)
            for ex, c in e.terms.items():
                exps.extend(ex)
                coefs.append(c)
                maxdeg = max(maxdeg, max(ex, default=0))
            offsets.append(len(coefs))
        self.cells = cells
        self.batch_args = (exps, coefs, offsets, self.nvars, maxdeg)
        self.batch = _accel.poly_batch(exps, coefs, offsets, self.nvars, maxdeg, modulus)

    def evaluate_rows(self, point):
        vals = self.batch.evaluate(point)
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in zip(self.cells, vals):
            out[i][j] = v
            if self.symmetric:
                out[j][i] = v
        return out

    def evaluate(self, point):
        return ScalarMatrix(self.evaluate_rows(point), self.modulus)

    def rank_at(self, point):
        return _accel.rank_mod_p(self.evaluate_rows(point), self.modulus)

    def det_at(self, point):
        return _accel.det_mod_p(self.evaluate_rows(point), self.modulus)


def _as_rows(M):
    if isinstance(M, PolyMatrix):
        return M.entries, M.vars, M.modulus
    raise TypeError("expected a PolyMatrix")


def determinant(M):
    """Exact determinant by fraction-free Bareiss elimination.

    The pivot is the first row (from the current one down) with a nonzero
    entry in the pivot column; if none exists the determinant is zero.
    """
    rows, vars, modulus = _as_rows(M)
    n = M.rows
    if n != M.cols:
        raise MatrixError("determinant of a non-square matrix")
    a = [list(r) for r in rows]
    sign = 1
    prev = None
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return Poly.zero(vars, modulus)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = akk * a[i][j]
                if aik and a[k][j]:
                    num = num - aik * a[k][j]
                if prev is not None and num:
                    num = _exact_div(num, prev)
                a[i][j] = num
            a[i][k] = Poly.zero(vars, modulus)
        prev = akk
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def _exact_div(num, den):
    if den.is_constant():
        c = den.constant_term()
        if num.modulus is None:
            return num.scale(Fraction(1) / c)
        return num.scale(pow(c, -1, num.modulus))
    return num.exact_div(den)


def cofactor_determinant(M):
    """Determinant by memoized Laplace expansion along rows (no division)."""
    rows, vars, modulus = _as_rows(M)
    n = M.rows
    if n != M.cols:
        raise MatrixError("determinant of a non-square matrix")
    zero = Poly.zero(vars, modulus)

    @lru_cache(maxsize=None)
    def det_cols(cols):
        # determinant of the rows n-len(cols).. with the given columns
        r = n - len(cols)
        if len(cols) == 1:
            return rows[r][cols[0]]
        acc = zero
        for idx, c in enumerate(cols):
            e = rows[r][c]
            if not e:
                continue
            sub = det_cols(cols[:idx] + cols[idx + 1:])
            if not sub:
                continue
            term = e * sub
            acc = acc - term if idx % 2 else acc + term
        return acc

    return det_cols(tuple(range(n)))


def minor(M, row_set, col_set):
    row_set, col_set = list(row_set), list(col_set)
    if len(row_set) != len(col_set) or not row_set:
        raise MatrixError("minor needs index sets of equal positive size")
    if len(set(row_set)) != len(row_set) or len(set(col_set)) != len(col_set):
        raise MatrixError("repeated indices in minor")
    if not all(0 <= i < M.rows for i in row_set) or not all(0 <= j < M.cols for j in col_set):
        raise MatrixError("minor index out of range")
    return determinant(M.submatrix(row_set, col_set))


def all_minors(M, k, principal=False):
    """All order-``k`` minors as ``(rows, cols, value)`` triples."""
    if not 1 <= k <= min(M.rows, M.cols):
        raise MatrixError(f"no minors of order {k}")
    out = []
    for rs in itertools.combinations(range(M.rows), k):
        col_choices = [rs] if principal else itertools.combinations(range(M.cols), k)
        for cs in col_choices:
            out.append((rs, cs, minor(M, rs, cs)))
    return out


def adjugate(M):
    """Transpose of the signed cofactor matrix."""
    n = M.rows
    if n != M.cols:
        raise MatrixError("adjugate of a non-square matrix")
    if n == 1:
        return PolyMatrix([[Poly.constant(M.vars, 1, M.modulus)]], M.vars)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rs = [r for r in range(n) if r != i]
            cs = [c for c in range(n) if c != j]
            c = determinant(M.submatrix(rs, cs))
            out[j][i] = -c if (i + j) % 2 else c
    return PolyMatrix(out, M.vars)


def _pfaffian_generic(n, entry, add, sub, mul, zero):
    if n % 2:
        raise MatrixError("Pfaffian needs an even-sized matrix")

    @lru_cache(maxsize=None)
    def pf(idx):
        if not idx:
            return None  # the empty Pfaffian is 1
        first = idx[0]
        acc = zero
        for pos in range(1, len(idx)):
            a = entry(first, idx[pos])
            if not a:
                continue
            rest = pf(idx[1:pos] + idx[pos + 1:])
            term = a if rest is None else mul(a, rest)
            # 1-based column position pos+1: sign (-1)^(pos+1)
            acc = sub(acc, term) if pos % 2 == 0 else add(acc, term)
        return acc

    return pf(tuple(range(n)))


def pfaffian(A):
    """Pfaffian of a skew-symmetric PolyMatrix of even size."""
    if A.rows != A.cols:
        raise MatrixError("Pfaffian of a non-square matrix")
    if A.rows % 2:
        raise MatrixError("Pfaffian needs an even-sized matrix")
    if not A.is_skew():
        raise MatrixError("matrix is not skew-symmetric")
    res = _pfaffian_generic(
        A.rows, lambda i, j: A.entries[i][j],
        lambda x, y: x + y, lambda x, y: x - y, lambda x, y: x * y,
        Poly.zero(A.vars, A.modulus))
    return res if res is not None else Poly.constant(A.vars, 1, A.modulus)


def pfaffian_mod_p(rows, p):
    """Pfaffian of a skew-symmetric scalar matrix over F_p."""
    n = len(rows)
    for i in range(n):
        if rows[i][i] % p or any((rows[i][j] + rows[j][i]) % p for j in range(n)):
            raise MatrixError("matrix is not skew-symmetric")
    res = _pfaffian_generic(
        n, lambda i, j: rows[i][j] % p,
        lambda x, y: (x + y) % p, lambda x, y: (x - y) % p, lambda x, y: x * y % p, 0)
    return 1 if res is None else res


def binary_form_coefficients(f, s, t, degree=None):
    """Coefficients ``[c_0..c_a]`` of ``f = sum c_i s^(a-i) t^i``.

    The coefficients are polynomials in the remaining variables, returned in
    the same VarSet as ``f``.
    """
    i_s, i_t = f.vars.positions([s, t])
    degs = {e[i_s] + e[i_t] for e in f.terms}
    if degree is None:
        if len(degs) != 1:
            raise PolyError(f"not a binary form in ({s}, {t})")
        degree = degs.pop()
    elif degs - {degree}:
        raise PolyError(f"not a binary form of degree {degree} in ({s}, {t})")
    if degree < 1:
        raise PolyError("binary form must have degree >= 1")
    coeffs = [dict() for _ in range(degree + 1)]
    for e, c in f.terms.items():
        k = e[i_t]
        e2 = list(e)
        e2[i_s] = e2[i_t] = 0
        coeffs[k][tuple(e2)] = c
    return [Poly._raw(f.vars, c, f.modulus) for c in coeffs]


def sylvester_matrix(f, g, s="s", t="t", deg_f=None, deg_g=None):
    """The (a+b)x(a+b) Sylvester matrix; ``f``'s b rows come first."""
    if f.vars != g.vars:
        raise VarSetMismatch()
    cf = binary_form_coefficients(f, s, t, deg_f)
    cg = binary_form_coefficients(g, s, t, deg_g)
    a, b = len(cf) - 1, len(cg) - 1
    n = a + b
    zero = Poly.zero(f.vars, f.modulus)
    rows = []
    for i in range(b):
        rows.append([zero] * i + cf + [zero] * (n - a - 1 - i))
    for i in range(a):
        rows.append([zero] * i + cg + [zero] * (n - b - 1 - i))
    return PolyMatrix(rows, f.vars)


def binary_resultant(f, g, s="s", t="t", deg_f=None, deg_g=None):
    return determinant(sylvester_matrix(f, g, s, t, deg_f, deg_g))


def binary_discriminant(f, s="s", t="t"):
    """``Res(df/ds, df/dt)`` for a binary form of degree d >= 2.

    For ``c0 s^2 + c1 s t + c2 t^2`` this equals ``-(c1^2 - 4 c0 c2)``.
    """
    coeffs = binary_form_coefficients(f, s, t)
    d = len(coeffs) - 1
    if d < 2:
        raise PolyError("discriminant needs degree >= 2")
    return binary_resultant(f.diff(s), f.diff(t), s, t, d - 1, d - 1)


def jacobian(maps, names=None):
    maps = list(maps)
    if not maps:
        raise MatrixError("empty map list")
    vars = maps[0].vars
    if any(m.vars != vars for m in maps):
        raise VarSetMismatch()
    names = list(vars.names) if names is None else list(names)
    return PolyMatrix([[m.diff(n) for n in names] for m in maps], vars)


def scalar_rank(M):
    return M.rank()


def rational_determinant(rows):
    """Exact determinant of a matrix of ints/Fractions (Bareiss over Z or Q)."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise MatrixError("determinant of a non-square matrix")
    if n == 0:
        return 1
    if all(x.denominator == 1 for r in a for x in r):
        b = [[int(x) for x in r] for r in a]
        sign, prev = 1, 1
        for k in range(n - 1):
            piv = next((i for i in range(k, n) if b[i][k]), None)
            if piv is None:
                return 0
            if piv != k:
                b[k], b[piv] = b[piv], b[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    b[i][j] = (b[k][k] * b[i][j] - b[i][k] * b[k][j]) // prev
            prev = b[k][k]
        return sign * b[n - 1][n - 1]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return det.numerator if det.denominator == 1 else det
