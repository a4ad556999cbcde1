"""Pure-Python reference kernels over F_p.

Same signatures as the compiled ``_kernels`` module; used when the extension
is unavailable or the prime does not fit in 63 bits.
"""


def rank_mod_p(rows, p):
    """Rank of a dense matrix (list of rows of ints) over F_p."""
    a = [[x % p for x in r] for r in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    for c in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        prow = a[rank]
        inv = pow(prow[c], -1, p)
        for j in range(c, ncols):
            prow[j] = prow[j] * inv % p
        for i in range(rank + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                for j in range(c, ncols):
                    row[j] = (row[j] - f * prow[j]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def det_mod_p(rows, p):
    a = [[x % p for x in r] for r in rows]
    n = len(a)
    det = 1
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        prow = a[c]
        det = det * prow[c] % p
        inv = pow(prow[c], -1, p)
        for i in range(c + 1, n):
            row = a[i]
            f = row[c] * inv % p
            if f:
                for j in range(c, n):
                    row[j] = (row[j] - f * prow[j]) % p
    return det % p


class PolyBatch:
    """Polynomials packed for repeated evaluation over F_p.

    ``exps`` is the flat row-major exponent table (one row of ``nvars`` per
    term), ``coefs`` the residues, and polynomial ``k`` owns terms
    ``offsets[k]:offsets[k+1]``.
    """

    def __init__(self, exps, coefs, offsets, nvars, maxdeg, p):
        self.p = p
        self.nvars = nvars
        self.maxdeg = maxdeg
        self.offsets = list(offsets)
        exps = list(exps)
        # sparse (index, exponent) lists per term
        self.terms = [
            (c % p, [(i, exps[t * nvars + i]) for i in range(nvars) if exps[t * nvars + i]])
            for t, c in enumerate(coefs)
        ]

    def evaluate(self, point):
        p = self.p
        if len(point) != self.nvars:
            raise ValueError("point length mismatch")
        table = []
        for x in point:
            row = [1] * (self.maxdeg + 1)
            x %= p
            for k in range(1, self.maxdeg + 1):
                row[k] = row[k - 1] * x % p
            table.append(row)
        out = []
        terms = self.terms
        offs = self.offsets
        for k in range(len(offs) - 1):
            acc = 0
            for t in range(offs[k], offs[k + 1]):
                v, mon = terms[t]
                for i, e in mon:
                    v = v * table[i][e] % p
                acc += v
            out.append(acc % p)
        return out
