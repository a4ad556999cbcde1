"""Dense univariate polynomials over F_p and their roots in F_p.

Polynomials are lists of residues, lowest degree first, with no trailing
zeros (the zero polynomial is ``[]``).  Roots are found Cantor-Zassenhaus
style: ``gcd(g, t^p - t)`` isolates the product of the linear factors, then
random splittings ``gcd(h, (t + a)^((p-1)/2) - 1)`` separate them.
"""

import random

__all__ = [
    "trim", "add", "sub", "mul", "divmod_poly", "powmod", "gcd", "monic",
    "evaluate", "interpolate", "roots",
]


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                 for i in range(n)])


def sub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                 for i in range(n)])


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def divmod_poly(a, b, p):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    if len(a) <= db:
        return [], trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return trim(q), trim(a[:db])


def monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def gcd(a, b, p):
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, divmod_poly(a, b, p)[1]
    return monic(a, p)


def powmod(base, e, mod, p):
    """``base^e mod mod`` over F_p by square-and-multiply."""
    result = [1]
    base = divmod_poly(base, mod, p)[1]
    while e:
        if e & 1:
            result = divmod_poly(mul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = divmod_poly(mul(base, base, p), mod, p)[1]
    return result


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def interpolate(xs, ys, p):
    """Lagrange interpolation through distinct nodes ``xs``."""
    n = len(xs)
    out = [0] * n
    for i in range(n):
        num = [1]
        den = 1
        for j in range(n):
            if j != i:
                num = mul(num, [(-xs[j]) % p, 1], p)
                den = den * (xs[i] - xs[j]) % p
        scale = ys[i] * pow(den, -1, p) % p
        for k, c in enumerate(num):
            out[k] = (out[k] + c * scale) % p
    return trim(out)


def _split(h, p, rng, out):
    # h is monic, squarefree, and a product of distinct linear factors
    if len(h) <= 1:
        return
    if len(h) == 2:
        out.append((-h[0]) % p)
        return
    while True:
        a = rng.randrange(p)
        w = powmod([a, 1], (p - 1) // 2, h, p)
        d = gcd(h, sub(w, [1], p), p)
        if 1 < len(d) < len(h):
            break
    _split(d, p, rng, out)
    _split(divmod_poly(h, d, p)[0], p, rng, out)


def roots(a, p, rng=None):
    """Distinct roots in F_p (p an odd prime), sorted ascending."""
    a = trim([c % p for c in a])
    if not a:
        raise ValueError("every element is a root of the zero polynomial")
    if len(a) == 1:
        return []
    rng = rng or random.Random(0)
    a = monic(a, p)
    found = []
    if a[0] == 0:
        found.append(0)
        while a and a[0] == 0:
            a = a[1:]
    if len(a) > 1:
        xp = powmod([0, 1], p, a, p)
        h = gcd(a, sub(xp, [0, 1], p), p)
        _split(h, p, rng, found)
    return sorted(set(found))
