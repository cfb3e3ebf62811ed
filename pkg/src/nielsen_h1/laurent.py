"""Laurent polynomials Z[H] = Z[t1^+-1, ..., tn^+-1] and the abelianization Z[F_n] -> Z[H]."""

from .words import GroupRingElement, RankMismatch


class NotMonomial(ValueError):
    pass


class LaurentPoly:
    """Sparse Laurent polynomial; terms map exponent tuples to nonzero ints."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank, terms=None):
        self.rank = rank
        out = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != rank:
                raise RankMismatch(f"exponent vector of length {len(e)} in rank {rank}")
            if c:
                out[e] = out.get(e, 0) + c
        self.terms = {e: c for e, c in out.items() if c}

    @classmethod
    def constant(cls, rank, c):
        return cls(rank, {(0,) * rank: c})

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def variable(cls, rank, i):
        e = [0] * rank
        e[i - 1] = 1
        return cls(rank, {tuple(e): 1})

    def _check(self, other):
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.rank, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.rank, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.rank, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.rank, out)

    __rmul__ = __mul__

    def substitute(self, matrix):
        """Apply the ring map t^h -> t^(M h) induced by an integer matrix M acting on H."""
        n = self.rank
        out = {}
        for e, c in self.terms.items():
            new = tuple(sum(matrix[r][k] * e[k] for k in range(n)) for r in range(n))
            out[new] = out.get(new, 0) + c
        return LaurentPoly(n, out)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.rank, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def to_json(self):
        return [{"coeff": c, "exps": list(e)} for e, c in sorted(self.terms.items())]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"t{i + 1}" if a == 1 else f"t{i + 1}^{a}" for i, a in enumerate(e) if a)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly({self.rank}, '{self}')"


def abelianize(a: GroupRingElement) -> LaurentPoly:
    out = {}
    for w, c in a.terms.items():
        e = tuple(w.exponent_sums())
        out[e] = out.get(e, 0) + c
    return LaurentPoly(a.rank, out)


def as_signed_monomial(p: LaurentPoly):
    if len(p.terms) != 1:
        raise NotMonomial(f"{p} has {len(p.terms)} terms")
    (e, c), = p.terms.items()
    if c not in (1, -1):
        raise NotMonomial(f"{p} has coefficient {c}")
    return c, e


def det(matrix):
    """Exact determinant of a square matrix of LaurentPoly.

    Cofactor expansion memoised on the set of columns used by the rows
    processed so far: n * 2^n products instead of n!.
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    rank = matrix[0][0].rank
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix is not square")
    partial = {0: LaurentPoly.constant(rank, 1)}
    for r in range(n):
        nxt = {}
        for used, acc in partial.items():
            for c in range(n):
                bit = 1 << c
                if used & bit or matrix[r][c].is_zero():
                    continue
                # inversions: earlier rows sitting in columns to the right of c
                inv = bin(used >> (c + 1)).count("1")
                term = acc * matrix[r][c]
                if inv % 2:
                    term = -term
                key = used | bit
                nxt[key] = nxt[key] + term if key in nxt else term
        partial = {k: v for k, v in nxt.items() if not v.is_zero()}
    return partial.get((1 << n) - 1, LaurentPoly(rank))
