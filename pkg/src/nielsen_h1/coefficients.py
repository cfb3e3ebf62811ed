"""The coefficient module V_L = H^* (x) Lambda^2 H (x) L.

Basis vectors e^i_{j,k} = e_i^* (x) e_j ^ e_k are indexed by (i, j, k) with
j < k, ordered lexicographically; this order fixes every matrix layout in
the cohomology solver.  Aut F_n acts on the left: on H by
``Automorphism.h_matrix()`` and on H^* by its inverse transpose.
"""

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import intmat


@dataclass(frozen=True)
class RingSpec:
    """Z (modulus 0) or Z/m."""

    modulus: int = 0

    def __post_init__(self):
        if self.modulus < 0 or self.modulus == 1:
            raise ValueError(f"invalid modulus {self.modulus}")

    @classmethod
    def integers(cls):
        return cls(0)

    @classmethod
    def parse(cls, text):
        t = text.strip().lower()
        if t in ("z", "zz", "int", "integers"):
            return cls(0)
        if t.startswith("mod:"):
            return cls(int(t[4:]))
        raise ValueError(f"unknown ring {text!r}; use 'z' or 'mod:<p>'")

    @property
    def is_integers(self):
        return self.modulus == 0

    @property
    def is_prime_field(self):
        m = self.modulus
        return m >= 2 and all(m % d for d in range(2, math.isqrt(m) + 1))

    @property
    def in_hypothesis(self):
        """True when L has no 2-torsion."""
        return self.modulus == 0 or self.modulus % 2 == 1

    def reduce(self, c):
        return c % self.modulus if self.modulus else c

    def __str__(self):
        return "z" if self.modulus == 0 else f"mod:{self.modulus}"


ZZ = RingSpec(0)


@lru_cache(maxsize=None)
def basis_indices(n):
    return tuple((i, j, k) for i in range(1, n + 1) for j in range(1, n + 1) for k in range(j + 1, n + 1))


@lru_cache(maxsize=None)
def basis_position(n):
    return {idx: p for p, idx in enumerate(basis_indices(n))}


def dim_V(n):
    return n * n * (n - 1) // 2


def canonicalize(i, j, k, coeff):
    """The term coeff * e_i^* (x) e_j ^ e_k as ((i, j', k'), coeff') with j' < k'."""
    if j == k:
        raise ValueError("e_j ^ e_j is not a basis element")
    if j < k:
        return (i, j, k), coeff
    return (i, k, j), -coeff


class VElement:
    __slots__ = ("rank", "ring", "coeffs")

    def __init__(self, rank, ring=ZZ, coeffs=None):
        self.rank = rank
        self.ring = ring
        out = {}
        for (i, j, k), c in (coeffs or {}).items():
            if not (1 <= i <= rank and 1 <= j < k <= rank):
                raise ValueError(f"bad basis index {(i, j, k)} for n={rank}")
            out[(i, j, k)] = out.get((i, j, k), 0) + c
        self.coeffs = {idx: ring.reduce(c) for idx, c in out.items() if ring.reduce(c)}

    @classmethod
    def zero(cls, rank, ring=ZZ):
        return cls(rank, ring)

    @classmethod
    def basis(cls, rank, i, j, k, coeff=1, ring=ZZ):
        idx, c = canonicalize(i, j, k, coeff)
        return cls(rank, ring, {idx: c})

    @classmethod
    def from_terms(cls, rank, terms, ring=ZZ):
        """Sum of (i, j, k, c) terms with arbitrary j != k."""
        out = {}
        for i, j, k, c in terms:
            idx, c = canonicalize(i, j, k, c)
            out[idx] = out.get(idx, 0) + c
        return cls(rank, ring, out)

    @classmethod
    def from_vector(cls, rank, vec, ring=ZZ):
        idx = basis_indices(rank)
        return cls(rank, ring, {idx[p]: int(c) for p, c in enumerate(vec) if c})

    def to_vector(self):
        pos = basis_position(self.rank)
        v = [0] * dim_V(self.rank)
        for idx, c in self.coeffs.items():
            v[pos[idx]] = c
        return v

    def with_ring(self, ring):
        return VElement(self.rank, ring, self.coeffs)

    def _check(self, other):
        if self.rank != other.rank or self.ring != other.ring:
            raise ValueError("VElements over different ranks or rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            out[idx] = out.get(idx, 0) + c
        return VElement(self.rank, self.ring, out)

    def __neg__(self):
        return VElement(self.rank, self.ring, {idx: -c for idx, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return VElement(self.rank, self.ring, {idx: c * k for idx, c in self.coeffs.items()})

    __rmul__ = __mul__

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, idx):
        return self.coeffs.get(idx, 0)

    def __eq__(self, other):
        if not isinstance(other, VElement):
            return NotImplemented
        return self.rank == other.rank and self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.rank, self.ring, frozenset(self.coeffs.items())))

    def to_json(self):
        return [{"i": i, "j": j, "k": k, "c": c} for (i, j, k), c in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, rank, data, ring=ZZ):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(rank, ring, {(d["i"], d["j"], d["k"]): int(d["c"]) for d in data})

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j, k), c in sorted(self.coeffs.items()):
            b = f"e^{i}_{j},{k}"
            parts.append(b if c == 1 else f"-{b}" if c == -1 else f"{c}*{b}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"VElement(n={self.rank}, {self.ring}, {self})"


def _h_and_dual(sigma_or_matrix):
    m = sigma_or_matrix.h_matrix() if hasattr(sigma_or_matrix, "h_matrix") else sigma_or_matrix
    dual = intmat.transpose(intmat.inverse_unimodular(m))
    return m, dual


def act(sigma, v):
    """Left action of an automorphism (or of its H-matrix) on v."""
    m, dual = _h_and_dual(sigma)
    return act_by_matrices(m, dual, v)


def act_by_matrices(m, dual, v):
    """Action given the H-matrix m and the H^*-matrix dual = (m^-1)^T."""
    n = v.rank
    if len(m) != n:
        raise ValueError(f"rank {len(m)} acting on V of rank {n}")
    out = {}
    for (i, j, k), c in v.coeffs.items():
        for a in range(n):
            da = dual[a][i - 1]
            if not da:
                continue
            for b in range(n):
                mb = m[b][j - 1]
                if not mb:
                    continue
                for d in range(n):
                    md = m[d][k - 1]
                    if not md or b == d:
                        continue
                    idx, s = canonicalize(a + 1, b + 1, d + 1, c * da * mb * md)
                    out[idx] = out.get(idx, 0) + s
    return VElement(n, v.ring, out)


def action_matrix(sigma_or_matrix):
    """dim V x dim V integer matrix of the action on V (exact numpy array).

    Column s is the image of the s-th basis vector.  int64 is used when the
    entries are provably small enough, object (Python int) arithmetic otherwise.
    """
    m, dual = _h_and_dual(sigma_or_matrix)
    return action_matrix_from(m, dual)


def action_matrix_from(m, dual):
    n = len(m)
    bound = max(max(abs(x) for row in m for x in row), max(abs(x) for row in dual for x in row))
    dtype = np.int64 if bound ** 3 * 2 < 2 ** 62 else object
    M = np.array(m, dtype=dtype)
    Dl = np.array(dual, dtype=dtype)
    a, b, c = _index_arrays(n)
    # coefficient of e^a_{b<c} in sigma . e^i_{j<k}:  dual[a,i] (m[b,j] m[c,k] - m[c,j] m[b,k])
    da = Dl[a[:, None], a[None, :]]
    wedge = M[b[:, None], b[None, :]] * M[c[:, None], c[None, :]] \
        - M[c[:, None], b[None, :]] * M[b[:, None], c[None, :]]
    return da * wedge


@lru_cache(maxsize=None)
def _index_arrays(n):
    rows = np.array([(i - 1, j - 1, k - 1) for i, j, k in basis_indices(n)], dtype=np.intp)
    return rows[:, 0], rows[:, 1], rows[:, 2]


def embed_H(h, ring=ZZ):
    """H -> V, e_i -> tau_1(iota_i) = sum_{j != i} e_j^* (x) e_j ^ e_i."""
    n = len(h)
    terms = [(j, j, i, c) for i, c in enumerate(h, start=1) if c for j in range(1, n + 1) if j != i]
    return VElement.from_terms(n, terms, ring)


def embedding_matrix(n):
    """dim V x n integer matrix of embed_H."""
    return [list(col) for col in zip(*[embed_H([int(t == s) for t in range(n)]).to_vector() for s in range(n)])]
