"""Incremental sparse row echelon forms over Z and over Z/p.

Rows are dicts {column: value}.  Over Z only unimodular row operations are
used (extended-gcd 2x2 blocks and integer row subtraction), so the pivot rows
always span the same lattice as the rows inserted so far.  With ``track``
each row carries its expression in the inserted rows; rows that reduce to
zero then give a basis of the integer left kernel.
"""


class CoordinateError(ValueError):
    """A vector is not in the span (lattice) it was expected to lie in."""


def ext_gcd(a, b):
    """(g, x, y) with a x + b y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _axpy(y, a, x, mod):
    """y + a x as a new sparse dict."""
    out = dict(y)
    for k, v in x.items():
        s = out.get(k, 0) + a * v
        if mod:
            s %= mod
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _lin2(a, x, b, y, mod):
    """a x + b y."""
    out = {}
    for k, v in x.items():
        out[k] = a * v
    for k, v in y.items():
        out[k] = out.get(k, 0) + b * v
    if mod:
        return {k: v % mod for k, v in out.items() if v % mod}
    return {k: v for k, v in out.items() if v}


class Echelon:
    """Pivot rows indexed by leading column.  ``modulus`` 0 means Z, else a prime."""

    def __init__(self, modulus=0, track=False):
        self.mod = modulus
        self.track = track
        self.pivots = {}  # lead column -> [row, transform]
        self.kernel = []

    @property
    def rank(self):
        return len(self.pivots)

    def add(self, row, tag=None):
        """Insert a row; returns True if it raised the rank."""
        mod = self.mod
        row = {k: (v % mod if mod else v) for k, v in row.items()}
        row = {k: v for k, v in row.items() if v}
        tr = ({tag: 1} if tag is not None else {}) if self.track else None
        while row:
            c = min(row)
            b = row[c]
            if c not in self.pivots:
                if mod:
                    inv = pow(b, -1, mod)
                    row = _lin2(inv, row, 0, {}, mod)
                    if tr is not None:
                        tr = _lin2(inv, tr, 0, {}, mod)
                elif b < 0:
                    row = {k: -v for k, v in row.items()}
                    if tr is not None:
                        tr = {k: -v for k, v in tr.items()}
                self.pivots[c] = [row, tr]
                return True
            prow, ptr = self.pivots[c]
            a = prow[c]
            if mod:
                q = b  # pivot normalised to 1
                row = _axpy(row, -q, prow, mod)
                if tr is not None:
                    tr = _axpy(tr, -q, ptr, mod)
            elif b % a == 0:
                q = b // a
                row = _axpy(row, -q, prow, 0)
                if tr is not None:
                    tr = _axpy(tr, -q, ptr, 0)
            else:
                g, x, y = ext_gcd(a, b)
                # [[x, y], [-b/g, a/g]] has determinant 1
                newp = _lin2(x, prow, y, row, 0)
                row = _lin2(-b // g, prow, a // g, row, 0)
                if tr is not None:
                    newt = _lin2(x, ptr, y, tr, 0)
                    tr = _lin2(-b // g, ptr, a // g, tr, 0)
                    self.pivots[c] = [newp, newt]
                else:
                    self.pivots[c] = [newp, None]
        if tr is not None:
            self.kernel.append(tr)
        return False

    def reduce_above(self):
        """Hermite-reduce: entries above each pivot lie in [0, pivot) (or vanish mod p)."""
        mod = self.mod
        cols = sorted(self.pivots)
        for idx, c in enumerate(cols):
            prow, ptr = self.pivots[c]
            h = prow[c]
            for c2 in cols[:idx]:
                row, tr = self.pivots[c2]
                v = row.get(c, 0)
                if not v:
                    continue
                q = v if mod else v // h
                if q:
                    row = _axpy(row, -q, prow, mod)
                    if tr is not None:
                        tr = _axpy(tr, -q, ptr, mod)
                    self.pivots[c2] = [row, tr]
        return self

    def rows(self):
        """Pivot rows in increasing order of leading column."""
        return [self.pivots[c][0] for c in sorted(self.pivots)]

    def transforms(self):
        return [self.pivots[c][1] for c in sorted(self.pivots)]

    def solve(self, vec):
        """Coefficients q (one per pivot row, in ``rows()`` order) with sum q_r row_r = vec, or None."""
        mod = self.mod
        v = {k: (x % mod if mod else x) for k, x in vec.items()}
        v = {k: x for k, x in v.items() if x}
        order = {c: r for r, c in enumerate(sorted(self.pivots))}
        q = [0] * len(order)
        while v:
            c = min(v)
            if c not in self.pivots:
                return None
            prow = self.pivots[c][0]
            h = prow[c]
            if mod:
                t = v[c]
            else:
                if v[c] % h:
                    return None
                t = v[c] // h
            q[order[c]] = t
            v = _axpy(v, -t, prow, mod)
        return q

    def coordinates(self, vec):
        q = self.solve(vec)
        if q is None:
            raise CoordinateError("vector is not in the span of the echelon rows")
        return q


def echelon_of(rows, modulus=0, reduce=True):
    e = Echelon(modulus)
    for r in rows:
        e.add(r)
    if reduce:
        e.reduce_above()
    return e


def left_kernel(rows, modulus=0):
    """Basis of {c : sum_i c_i rows[i] = 0}, as sparse dicts over the row index.

    Over Z the basis is a Z-basis of the (saturated) integer kernel.
    """
    e = Echelon(modulus, track=True)
    for i, r in enumerate(rows):
        e.add(r, tag=i)
    return e.kernel, e


def dense(sparse, length):
    out = [0] * length
    for k, v in sparse.items():
        out[k] = v
    return out


def sparse(vec):
    return {i: int(x) for i, x in enumerate(vec) if x}
