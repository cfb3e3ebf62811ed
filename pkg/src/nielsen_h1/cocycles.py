"""Crossed homomorphisms Aut F_n -> V_L stored by their values on P, Q, S, U.

A crossed homomorphism satisfies f(sigma tau) = f(sigma) + sigma . f(tau);
on the free group F on P, Q, S, U it is determined by the four values, and
it descends to Aut F_n exactly when it vanishes along every relator.
"""

from functools import lru_cache

from . import fox, intmat, magnus
from .automorphisms import SYMBOLS, nielsen_generator, valid_relators
from .coefficients import ZZ, VElement, act, act_by_matrices, basis_indices
from .factorization import factorize


class CertificationError(ValueError):
    pass


@lru_cache(maxsize=None)
def generator_matrices(n):
    """{(symbol, +-1): (H-matrix, H^*-matrix)} for the Nielsen generators."""
    out = {}
    for s in SYMBOLS:
        for e in (1, -1):
            m = nielsen_generator(s, n, inverse=(e == -1)).h_matrix()
            out[s, e] = (m, intmat.transpose(intmat.inverse_unimodular(m)))
    return out


class Cocycle:
    def __init__(self, n, values, ring=ZZ, label=""):
        self.n = n
        self.ring = ring
        self.label = label
        self.values = {}
        for s in SYMBOLS:
            v = values.get(s, VElement.zero(n, ring))
            if v.rank != n:
                raise ValueError("value of wrong rank")
            self.values[s] = v.with_ring(ring)

    def __call__(self, symbol):
        return self.values[symbol]

    def evaluate(self, w):
        """f(g_1 ... g_m) = sum_t (g_1 ... g_{t-1}) . f(g_t), with f(g^-1) = -g^-1 . f(g)."""
        n = self.n
        mats = generator_matrices(n)
        m = intmat.identity(n)
        dual = intmat.identity(n)
        total = VElement.zero(n, self.ring)
        for sym, e in w.letters:
            gm, gd = mats[sym, e]
            if e == 1:
                total = total + act_by_matrices(m, dual, self.values[sym])
                m = intmat.matmul(m, gm)
                dual = intmat.matmul(dual, gd)
            else:
                m = intmat.matmul(m, gm)
                dual = intmat.matmul(dual, gd)
                total = total - act_by_matrices(m, dual, self.values[sym])
        return total

    def evaluate_on_automorphism(self, sigma):
        return self.evaluate(factorize(sigma))

    def relator_residuals(self):
        """f along every catalog word that is a relator at this rank."""
        return {label: self.evaluate(w) for label, w in valid_relators(self.n)}

    def failing_relators(self):
        return [label for label, r in self.relator_residuals().items() if not r.is_zero()]

    def is_certified(self):
        return not self.failing_relators()

    def certify(self):
        bad = self.failing_relators()
        if bad:
            raise CertificationError(f"{self.label or 'cocycle'} fails relators {bad}")
        return self

    def to_vector(self):
        """Coordinates in Cros(F, V_L): (P block, Q block, S block, U block)."""
        out = []
        for s in SYMBOLS:
            out.extend(self.values[s].to_vector())
        return out

    @classmethod
    def from_vector(cls, n, vec, ring=ZZ, label=""):
        d = len(basis_indices(n))
        vals = {s: VElement.from_vector(n, vec[b * d:(b + 1) * d], ring) for b, s in enumerate(SYMBOLS)}
        return cls(n, vals, ring, label)

    def __add__(self, other):
        return Cocycle(self.n, {s: self.values[s] + other.values[s] for s in SYMBOLS}, self.ring)

    def __neg__(self):
        return Cocycle(self.n, {s: -v for s, v in self.values.items()}, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return Cocycle(self.n, {s: v * k for s, v in self.values.items()}, self.ring)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Cocycle) and self.n == other.n and self.values == other.values

    def to_json(self):
        return {"label": self.label, "ring": str(self.ring),
                "values": {s: self.values[s].to_json() for s in SYMBOLS}}

    def __repr__(self):
        vals = ", ".join(f"{s}: {self.values[s]}" for s in SYMBOLS)
        return f"Cocycle({self.label or '?'}; {vals})"


def evaluate(f, w):
    return f.evaluate(w)


def evaluate_on_automorphism(f, sigma):
    return f.evaluate_on_automorphism(sigma)


def principal(a, label="principal"):
    """f_a(sigma) = sigma . a - a."""
    n = a.rank
    vals = {s: act(nielsen_generator(s, n), a) - a for s in SYMBOLS}
    return Cocycle(n, vals, a.ring, label)


def special_a(n, ring=ZZ):
    """a = sum_{j<k} (e^k_{j,k} - e^j_{j,k}), whose principal cocycle links f_M, f_K, f_N."""
    coeffs = {}
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            coeffs[(k, j, k)] = 1
            coeffs[(j, j, k)] = -1
    return VElement(n, ring, coeffs)


NAMED = ("fM", "fK", "fN", "fa")


@lru_cache(maxsize=None)
def named_cocycle(label, n, ring=ZZ):
    """fM, fK, fa or fN = 2 fM - fK - fa, computed from their definitions and certified."""
    if n < 2:
        raise ValueError("named cocycles need n >= 2")
    if label == "fM":
        vals = {s: fox.f_M(nielsen_generator(s, n), ring,
                           sigma_inverse=nielsen_generator(s, n, inverse=True)) for s in SYMBOLS}
        f = Cocycle(n, vals, ring, "fM")
    elif label == "fK":
        f = Cocycle(n, {s: magnus.f_K(nielsen_generator(s, n), ring) for s in SYMBOLS}, ring, "fK")
    elif label == "fa":
        f = principal(special_a(n, ring), "fa")
    elif label == "fN":
        f = named_cocycle("fM", n, ring) * 2 - named_cocycle("fK", n, ring) - named_cocycle("fa", n, ring)
        f.label = "fN"
    else:
        raise ValueError(f"unknown cocycle {label!r}; choose from {NAMED}")
    return f.certify()
