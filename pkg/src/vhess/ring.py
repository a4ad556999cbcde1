"""Sparse exact multivariate polynomials over Q or a prime field F_p.

A :class:`Poly` is an immutable map from exponent tuples to nonzero
coefficients.  Rational coefficients are Python ``int`` whenever integral and
:class:`fractions.Fraction` otherwise; coefficients of a polynomial over F_p
are ints in ``[0, p)``.  Exponent tuples are indexed by the positions of a
:class:`VarSet`, whose order also fixes the lexicographic monomial order.
"""

from __future__ import annotations

import heapq
import json
import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "VarSet",
    "Poly",
    "PolyError",
    "VarSetMismatch",
    "ParseError",
    "BadPrime",
    "parse",
    "format_poly",
    "parse_scalar",
    "coerce_scalar",
]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class PolyError(ValueError):
    pass


class VarSetMismatch(PolyError):
    def __init__(self, msg="variable-set mismatch"):
        super().__init__(msg)


class BadPrime(PolyError):
    def __init__(self, msg="bad prime"):
        super().__init__(msg)


class ParseError(PolyError):
    def __init__(self, msg, line=1, column=1):
        super().__init__(f"{msg} (line {line}, column {column})")
        self.line = line
        self.column = column


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def coerce_scalar(c, modulus=None):
    """Bring ``c`` into the coefficient domain (Q or F_modulus)."""
    if modulus is None:
        if isinstance(c, bool) or not isinstance(c, Rational):
            raise TypeError(f"not an exact rational scalar: {c!r}")
        return _norm(Fraction(c)) if not isinstance(c, int) else c
    if isinstance(c, int):
        return c % modulus
    if isinstance(c, Rational):
        den = c.denominator % modulus
        if den == 0:
            raise BadPrime()
        return c.numerator * pow(den, -1, modulus) % modulus
    raise TypeError(f"not an exact scalar: {c!r}")


def parse_scalar(text):
    """Parse ``"p"`` or ``"p/q"`` into an int or Fraction."""
    return _norm(Fraction(text.strip()))


class VarSet:
    """Ordered tuple of distinct variable names."""

    __slots__ = ("names", "index", "_hash")

    def __init__(self, names):
        names = tuple(names)
        for n in names:
            if not isinstance(n, str) or not _NAME_RE.match(n):
                raise PolyError(f"invalid variable name {n!r}")
        if len(set(names)) != len(names):
            raise PolyError("duplicate variable names")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self._hash = hash(names)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self.index

    def __eq__(self, other):
        return isinstance(other, VarSet) and self.names == other.names

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"VarSet({list(self.names)!r})"

    def gens(self, modulus=None):
        return [Poly.var(self, n, modulus) for n in self.names]

    def gen(self, name, modulus=None):
        return Poly.var(self, name, modulus)

    def positions(self, names):
        try:
            return [self.index[n] for n in names]
        except KeyError as exc:
            raise PolyError(f"unknown variable {exc.args[0]!r}") from None


class Poly:
    """Immutable sparse polynomial; ``modulus`` is None for Q."""

    __slots__ = ("vars", "terms", "modulus", "_hash")

    def __init__(self, vars, terms=None, modulus=None):
        if not isinstance(vars, VarSet):
            vars = VarSet(vars)
        self.vars = vars
        self.modulus = modulus
        self._hash = None
        n = len(vars)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != n or any(k < 0 for k in e):
                raise PolyError(f"bad exponent vector {e!r}")
            c = coerce_scalar(c, modulus)
            if c:
                prev = clean.get(e)
                if prev is not None:
                    c = prev + c
                    c = c % modulus if modulus is not None else _norm(c)
                    if not c:
                        del clean[e]
                        continue
                clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, vars, terms, modulus):
        # terms must already be canonical
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        p.modulus = modulus
        p._hash = None
        return p

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars, modulus=None):
        return cls._raw(vars, {}, modulus)

    @classmethod
    def constant(cls, vars, c, modulus=None):
        c = coerce_scalar(c, modulus)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {}, modulus)

    @classmethod
    def var(cls, vars, name, modulus=None):
        e = [0] * len(vars)
        e[vars.positions([name])[0]] = 1
        return cls._raw(vars, {tuple(e): 1}, modulus)

    @classmethod
    def monomial(cls, vars, exps, c=1, modulus=None):
        return cls(vars, {tuple(exps): c}, modulus)

    # ---- basic protocol -----------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return (self.vars == other.vars and self.modulus == other.modulus
                    and self.terms == other.terms)
        if isinstance(other, (int, Fraction)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, self.modulus, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        field = "QQ" if self.modulus is None else f"GF({self.modulus})"
        return f"Poly({format_poly(self)!r}, {list(self.vars.names)!r}, {field})"

    def __str__(self):
        return format_poly(self)

    def __len__(self):
        return len(self.terms)

    def _check(self, other):
        if self.vars != other.vars:
            raise VarSetMismatch()
        if self.modulus != other.modulus:
            raise PolyError("coefficient field mismatch")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(self.vars, other, self.modulus)

    # ---- ring operations ----------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        res = dict(a)
        m = self.modulus
        for e, c in b.items():
            v = res.get(e)
            if v is None:
                res[e] = c
            else:
                v = v + c
                if m is not None:
                    v %= m
                elif type(v) is Fraction:
                    v = _norm(v)
                if v:
                    res[e] = v
                else:
                    del res[e]
        return Poly._raw(self.vars, res, m)

    __radd__ = __add__

    def __neg__(self):
        m = self.modulus
        if m is None:
            return Poly._raw(self.vars, {e: -c for e, c in self.terms.items()}, m)
        return Poly._raw(self.vars, {e: m - c for e, c in self.terms.items()}, m)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def scale(self, c):
        c = coerce_scalar(c, self.modulus)
        if not c:
            return Poly.zero(self.vars, self.modulus)
        m = self.modulus
        if m is None:
            if type(c) is int:
                terms = {e: v * c for e, v in self.terms.items()}
            else:
                terms = {e: _norm(v * c) for e, v in self.terms.items()}
        else:
            terms = {e: v * c % m for e, v in self.terms.items()}
        return Poly._raw(self.vars, terms, m)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                return self.scale(other)
            return NotImplemented
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return Poly.zero(self.vars, self.modulus)
        m = self.modulus
        res = {}
        get = res.get
        for eb, cb in b.items():
            if not any(eb):
                for ea, ca in a.items():
                    res[ea] = get(ea, 0) + ca * cb
                continue
            for ea, ca in a.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                res[e] = get(e, 0) + ca * cb
        if m is None:
            res = {e: _norm(c) for e, c in res.items() if c}
        else:
            res = {e: c % m for e, c in res.items() if c % m}
        return Poly._raw(self.vars, res, m)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise PolyError("exponent must be a non-negative integer")
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            c = c ** k if self.modulus is None else pow(c, k, self.modulus)
            return Poly._raw(self.vars, {tuple(x * k for x in e): _norm(c)}, self.modulus)
        result = Poly.constant(self.vars, 1, self.modulus)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # ---- inspection ---------------------------------------------------

    def total_degree(self):
        """Max exponent sum; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, names):
        """Max partial degree in the given subset of variables (-1 for zero)."""
        pos = self.vars.positions(names)
        return max((sum(e[i] for i in pos) for e in self.terms), default=-1)

    def is_homogeneous(self):
        """Return the common degree of all terms, or None (also for zero)."""
        degs = {sum(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), 0)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def used_variables(self):
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return [n for n, u in zip(self.vars.names, used) if u]

    def sorted_terms(self, reverse=True):
        """Terms in lexicographic order (descending by default)."""
        return sorted(self.terms.items(), reverse=reverse)

    def leading_term(self):
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    # ---- calculus and composition -------------------------------------

    def diff(self, name):
        """Formal partial derivative with respect to ``name``."""
        i = self.vars.positions([name])[0]
        m = self.modulus
        res = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                c = c * k
                if m is not None:
                    c %= m
                    if not c:
                        continue
                res[e[:i] + (k - 1,) + e[i + 1:]] = c
        return Poly._raw(self.vars, res, m)

    def gradient(self):
        return [self.diff(n) for n in self.vars.names]

    def substitute(self, bindings, target=None):
        """Compose: replace every variable by a polynomial of a common VarSet.

        Powers of each image are memoized, so repeated images are cheap.
        """
        images = []
        for n in self.vars.names:
            if n not in bindings:
                raise PolyError(f"unbound variable {n!r}")
            images.append(bindings[n])
        polys = [im for im in images if isinstance(im, Poly)]
        if target is None:
            if not polys:
                raise PolyError("cannot infer target variable set")
            target = polys[0].vars
        m = self.modulus
        images = [im if isinstance(im, Poly) else Poly.constant(target, im, m)
                  for im in images]
        for im in images:
            if im.vars != target:
                raise VarSetMismatch()
            if im.modulus != m:
                raise PolyError("coefficient field mismatch")
        one = Poly.constant(target, 1, m)
        cache = [{0: one, 1: im} for im in images]

        def power(i, k):
            c = cache[i]
            if k not in c:
                half = power(i, k // 2)
                c[k] = half * half if k % 2 == 0 else half * half * images[i]
            return c[k]

        acc = {}
        get = acc.get
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    p = power(i, k)
                    term = p if term is None else term * p
            if term is None:
                term = one
            for te, tc in term.terms.items():
                acc[te] = get(te, 0) + c * tc
        if m is None:
            acc = {e: _norm(c) for e, c in acc.items() if c}
        else:
            acc = {e: c % m for e, c in acc.items() if c % m}
        return Poly._raw(target, acc, m)

    def rename(self, mapping, target):
        """Re-index into ``target`` by mapping each variable name to a target name."""
        pos = [target.index[mapping.get(n, n)] for n in self.vars.names]
        n = len(target)
        res = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, k in enumerate(e):
                if k:
                    new[pos[i]] += k
            res[tuple(new)] = c
        return Poly._raw(target, res, self.modulus)

    def project(self, target):
        """View in a sub-VarSet; every dropped variable must be absent."""
        keep = [self.vars.index[n] for n in target.names]
        dropped = [i for i in range(len(self.vars)) if i not in set(keep)]
        res = {}
        for e, c in self.terms.items():
            if any(e[i] for i in dropped):
                raise PolyError("polynomial involves a dropped variable")
            res[tuple(e[i] for i in keep)] = c
        return Poly._raw(target, res, self.modulus)

    def embed(self, target):
        """Same polynomial viewed in a VarSet containing all of our variables."""
        return self.rename({}, target)

    def evaluate(self, point):
        """Exact value at ``point`` (a sequence indexed like the VarSet)."""
        if len(point) != len(self.vars):
            raise PolyError(
                f"point has length {len(point)}, expected {len(self.vars)}")
        m = self.modulus
        if m is None:
            pt = [coerce_scalar(x) for x in point]
            total = 0
            for e, c in self.terms.items():
                t = c
                for x, k in zip(pt, e):
                    if k:
                        t *= x ** k
                total += t
            return _norm(Fraction(total)) if not isinstance(total, int) else total
        pt = [coerce_scalar(x, m) for x in point]
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(pt, e):
                if k:
                    t = t * pow(x, k, m) % m
            total += t
        return total % m

    def reduce_mod_prime(self, p):
        """Coefficient-wise image in F_p."""
        if self.modulus is not None:
            raise PolyError("polynomial is already over a prime field")
        res = {}
        for e, c in self.terms.items():
            v = coerce_scalar(c, p)
            if v:
                res[e] = v
        return Poly._raw(self.vars, res, p)

    # ---- division -----------------------------------------------------

    def divmod_single(self, f):
        """Reduce ``self`` by the single divisor ``f`` (lex order).

        Returns ``(q, r)`` with ``self = q*f + r`` and no term of ``r``
        divisible by the leading monomial of ``f``.
        """
        self._check(f)
        if f.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        m = self.modulus
        lead_e, lead_c = f.leading_term()
        inv = pow(lead_c, -1, m) if m is not None else Fraction(1, 1) / lead_c
        rest = [(e, c) for e, c in f.terms.items() if e != lead_e]
        work = dict(self.terms)
        heap = [tuple(-k for k in e) for e in work]
        heapq.heapify(heap)
        quot, rem = {}, {}
        while heap:
            key = heapq.heappop(heap)
            e = tuple(-k for k in key)
            c = work.pop(e, None)
            if c is None:
                continue
            while heap and heap[0] == key:
                heapq.heappop(heap)
            diff = tuple(a - b for a, b in zip(e, lead_e))
            if min(diff) < 0:
                rem[e] = c
                continue
            qc = c * inv % m if m is not None else _norm(c * inv)
            quot[diff] = qc
            for fe, fc in rest:
                te = tuple(a + b for a, b in zip(diff, fe))
                v = work.get(te, 0) - qc * fc
                if m is not None:
                    v %= m
                else:
                    v = _norm(v)
                if v:
                    if te not in work:
                        heapq.heappush(heap, tuple(-k for k in te))
                    work[te] = v
                else:
                    work.pop(te, None)
        return Poly._raw(self.vars, quot, m), Poly._raw(self.vars, rem, m)

    def exact_div(self, f):
        q, r = self.divmod_single(f)
        if r:
            raise PolyError("division is not exact")
        return q

    # ---- serialization ------------------------------------------------

    def to_json(self):
        return {
            "vars": list(self.vars.names),
            "terms": [{"coef": str(c), "exps": list(e)} for e, c in self.sorted_terms()],
            **({"modulus": self.modulus} if self.modulus is not None else {}),
        }

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        vs = VarSet(obj["vars"])
        modulus = obj.get("modulus")
        terms = {}
        for t in obj["terms"]:
            e = tuple(t["exps"])
            c = parse_scalar(str(t["coef"]))
            terms[e] = terms.get(e, 0) + c
        return cls(vs, terms, modulus)


def divides(f, p):
    """Quotient ``q`` with ``p == q*f`` if ``f`` divides ``p``, else None.

    A single polynomial is a Groebner basis of the principal ideal it
    generates, so a zero remainder under single-divisor reduction is
    equivalent to ideal membership.
    """
    if f.is_zero():
        raise PolyError("divisor must be nonzero")
    q, r = p.divmod_single(f)
    return None if r else q


def euler_check(p, names=None, weight=None):
    """Check Euler's identity ``sum x_i dp/dx_i == d*p``.

    With ``names`` given, returns ``sum_{x in names} x * dp/dx`` so callers
    can compare partial weighted sums (for instance ``u*f_u + v*f_v``).
    """
    d = p.is_homogeneous()
    if d is None and not p.is_zero():
        raise PolyError("euler_check requires a homogeneous polynomial")
    d = d or 0
    use = list(p.vars.names) if names is None else list(names)
    acc = Poly.zero(p.vars, p.modulus)
    for n in use:
        acc = acc + p.vars.gen(n, p.modulus) * p.diff(n)
    if names is not None:
        return acc
    return acc == p.scale(d)


# ---- text format ------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^]))")


def _natural_key(name):
    m = re.match(r"(.*?)(\d*)\Z", name)
    return (m.group(1), int(m.group(2)) if m.group(2) else -1, name)


def _tokenize(text):
    pos = 0
    line, col0 = 1, 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos] in " \t\r\n":
            if text[pos] == "\n":
                line += 1
                col0 = pos + 1
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - col0 + 1)
        start = m.start(m.lastgroup)
        out.append((m.lastgroup, m.group(m.lastgroup), line, start - col0 + 1))
        pos = m.end()
    out.append(("end", "", line, pos - col0 + 1))
    return out


def parse(text, vars=None, modulus=None):
    """Parse the polynomial text grammar.

    Without ``vars`` the VarSet is the set of names that occur, sorted
    naturally (``x2`` before ``x10``).
    """
    toks = _tokenize(text)
    i = 0
    raw_terms = []

    def expect_number(kind_name):
        nonlocal i
        kind, val, ln, col = toks[i]
        if kind != "num" or "/" in val:
            raise ParseError(f"expected {kind_name}", ln, col)
        i += 1
        return int(val)

    sign = 1
    kind, val, ln, col = toks[i]
    if kind == "op" and val in "+-":
        sign = -1 if val == "-" else 1
        i += 1
    while True:
        coef = Fraction(1)
        powers = []
        kind, val, ln, col = toks[i]
        if kind == "num":
            coef = Fraction(val)
            i += 1
            if toks[i][0] == "op" and toks[i][1] == "*":
                i += 1
                kind, val, ln, col = toks[i]
                if kind != "name":
                    raise ParseError("expected variable after '*'", ln, col)
            else:
                kind = None
        if kind == "name":
            while True:
                kind, val, ln, col = toks[i]
                if kind != "name":
                    raise ParseError("expected variable", ln, col)
                i += 1
                k = 1
                if toks[i][0] == "op" and toks[i][1] == "^":
                    i += 1
                    k = expect_number("exponent")
                    if k < 1:
                        raise ParseError("exponent must be >= 1", toks[i - 1][2], toks[i - 1][3])
                powers.append((val, k, ln, col))
                if toks[i][0] == "op" and toks[i][1] == "*":
                    i += 1
                    continue
                break
        elif kind is not None:
            raise ParseError("expected a term", ln, col)
        raw_terms.append((sign * coef, powers))
        kind, val, ln, col = toks[i]
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
            continue
        raise ParseError(f"unexpected {val!r}", ln, col)

    if vars is None:
        names = sorted({p[0] for _, ps in raw_terms for p in ps}, key=_natural_key)
        vars = VarSet(names)
    elif not isinstance(vars, VarSet):
        vars = VarSet(vars)
    n = len(vars)
    terms = {}
    for coef, powers in raw_terms:
        e = [0] * n
        for name, k, ln, col in powers:
            if name not in vars.index:
                raise ParseError(f"unknown variable {name!r}", ln, col)
            e[vars.index[name]] += k
        e = tuple(e)
        terms[e] = terms.get(e, 0) + coef
    return Poly(vars, terms, modulus)


def _format_coef(c):
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_poly(p):
    """Inverse of :func:`parse` (given the same VarSet)."""
    if not p.terms:
        return "0"
    names = p.vars.names
    parts = []
    for e, c in p.sorted_terms():
        mon = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        neg = p.modulus is None and c < 0
        a = -c if neg else c
        if not mon:
            body = _format_coef(a)
        elif a == 1:
            body = mon
        else:
            body = f"{_format_coef(a)}*{mon}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)
