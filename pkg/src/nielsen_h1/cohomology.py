"""Z^1, B^1 and H^1(Aut F_n, V_L) from the finite presentation, plus the two applications.

A crossed homomorphism on the free group F = <P, Q, S, U> is its four values,
i.e. a vector of length 4 dim V (blocks P, Q, S, U, each in basis order).
Evaluating it along a word is linear in that vector; stacking the
evaluation matrices of all relators gives the constraint matrix whose kernel
is Z^1(Aut F_n, V_L).
"""

import os
from functools import lru_cache
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import intmat
from .automorphisms import SYMBOLS, ia_generators, inner_automorphism, nielsen_generator, relator_check, valid_relators
from .cocycles import CertificationError, Cocycle, generator_matrices, named_cocycle, NAMED
from .coefficients import ZZ, RingSpec, action_matrix, action_matrix_from, dim_V, embed_H
from .echelon import CoordinateError, Echelon, echelon_of, left_kernel
from .factorization import factorize
from .magnus import tau1
from .snf import smith_normal_form

_INT64_SAFE = 2 ** 62


def thread_count():
    env = os.environ.get("NIELSEN_H1_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"NIELSEN_H1_THREADS must be an integer, got {env!r}") from None
    return min(4, os.cpu_count() or 1)


def _check_ring(ring):
    if isinstance(ring, str):
        ring = RingSpec.parse(ring)
    if not ring.is_integers and not ring.is_prime_field:
        raise ValueError(f"only Z and Z/p with p prime are supported, got {ring}")
    return ring


def evaluation_matrix(w, n):
    """dim V x 4 dim V integer matrix sending generator values to f(w)."""
    d = dim_V(n)
    mats = generator_matrices(n)
    block = {s: b for b, s in enumerate(SYMBOLS)}
    out = np.zeros((d, 4 * d), dtype=np.int64)
    m = intmat.identity(n)
    dual = intmat.identity(n)
    bound = 0
    for sym, e in w.letters:
        gm, gd = mats[sym, e]
        if e == -1:
            m = intmat.matmul(m, gm)
            dual = intmat.matmul(dual, gd)
        a = action_matrix_from(m, dual)
        if out.dtype != object:
            bound += int(np.abs(a).max()) if a.size else 0
            if a.dtype == object or bound >= _INT64_SAFE:
                out = out.astype(object)
        cols = slice(block[sym] * d, (block[sym] + 1) * d)
        if e == 1:
            out[:, cols] += a
            m = intmat.matmul(m, gm)
            dual = intmat.matmul(dual, gd)
        else:
            out[:, cols] -= a
    return out


def constraint_matrix(n, relators=None, threads=None):
    """Stacked relator evaluation matrices: rows (relator order) x (basis order).

    Blocks are computed in parallel and written to fixed row ranges.
    """
    if relators is None:
        relators = valid_relators(n)
    d = dim_V(n)
    if not relators:
        return np.zeros((0, 4 * d), dtype=np.int64), []
    threads = threads or thread_count()
    words = [w for _, w in relators]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            blocks = list(pool.map(lambda w: evaluation_matrix(w, n), words))
    else:
        blocks = [evaluation_matrix(w, n) for w in words]
    if any(b.dtype == object for b in blocks):
        blocks = [b.astype(object) for b in blocks]
    return np.vstack(blocks), [label for label, _ in relators]


def dump_matrix(A, path):
    """Coordinate text format: 'rows cols nnz', then 1-based 'r c value' lines."""
    rows, cols = np.nonzero(A)
    with open(path, "w") as fh:
        fh.write(f"{A.shape[0]} {A.shape[1]} {len(rows)}\n")
        for r, c in zip(rows, cols):
            fh.write(f"{r + 1} {c + 1} {int(A[r, c])}\n")


def _columns_as_rows(A, mod):
    out = []
    for j in range(A.shape[1]):
        col = A[:, j]
        nz = np.nonzero(col)[0]
        row = {int(r): int(col[r]) for r in nz}
        if mod:
            row = {k: v % mod for k, v in row.items() if v % mod}
        out.append(row)
    return out


def _rows_of(A, mod=0):
    return _columns_as_rows(np.asarray(A).T, mod)


# --- Z^1 ------------------------------------------------------------------------


class CocycleSpace:
    """Z^1 as an echelon (Hermite over Z, reduced over Z/p) basis of Cros(F, V_L)-vectors."""

    def __init__(self, n, ring, constraint, labels, echelon):
        self.n = n
        self.ring = ring
        self.constraint = constraint
        self.relator_labels = labels
        self.echelon = echelon
        self.basis = echelon.rows()

    @property
    def rank(self):
        return len(self.basis)

    @property
    def length(self):
        return 4 * dim_V(self.n)

    def basis_matrix(self):
        """4 dim V x rank numpy matrix whose columns are the basis vectors."""
        B = np.zeros((self.length, self.rank), dtype=object)
        for j, row in enumerate(self.basis):
            for k, v in row.items():
                B[k, j] = v
        return B

    def vector_of(self, coords):
        out = {}
        for c, row in zip(coords, self.basis):
            if c:
                for k, v in row.items():
                    out[k] = out.get(k, 0) + c * v
        vec = [0] * self.length
        for k, v in out.items():
            vec[k] = self.ring.reduce(v)
        return vec

    def cocycle(self, coords, label=""):
        return Cocycle.from_vector(self.n, self.vector_of(coords), self.ring, label)

    def cocycles(self):
        return [self.cocycle([int(i == j) for i in range(self.rank)], f"z{j + 1}") for j in range(self.rank)]

    def coordinates(self, vec):
        """Coordinates of a Cros(F, V_L)-vector in this basis; CoordinateError if outside Z^1."""
        return self.echelon.coordinates({i: int(v) for i, v in enumerate(vec) if v})

    def residual(self, vec):
        r = self.constraint.dot(np.array(vec, dtype=object))
        if self.ring.modulus:
            r = r % self.ring.modulus
        return r


def cocycle_space(n, ring=ZZ, relators=None, certify=True, threads=None):
    """Integral (or mod p) basis of the crossed homomorphisms that kill every relator."""
    ring = _check_ring(ring)
    if n < 2:
        raise ValueError("n must be at least 2")
    A, labels = constraint_matrix(n, relators, threads)
    mod = ring.modulus
    kernel, _ = left_kernel(_columns_as_rows(A, mod), mod)
    ech = echelon_of(kernel, mod)
    space = CocycleSpace(n, ring, A, labels, ech)
    if certify:
        # independent check: the dictionary-based evaluator, not the matrix
        rels = valid_relators(n) if relators is None else relators
        for j, f in enumerate(space.cocycles()):
            bad = [lab for lab, w in rels if not f.evaluate(w).is_zero()]
            if bad:
                raise CertificationError(f"basis cocycle {j} fails relators {bad}")
    return space


# --- B^1 ------------------------------------------------------------------------


def principal_vectors(n, ring=ZZ):
    """Row s: the Cros(F, V)-vector of the principal cocycle of the s-th basis vector."""
    d = dim_V(n)
    P = np.zeros((d, 4 * d), dtype=object)
    for b, s in enumerate(SYMBOLS):
        a = action_matrix(nielsen_generator(s, n)).astype(object)
        blk = a - np.eye(d, dtype=np.int64).astype(object)
        P[:, b * d:(b + 1) * d] = blk.T
    if ring.modulus:
        P = P % ring.modulus
    return P


def invariants_rank(n, ring=ZZ):
    """Rank of V^{Aut F_n}: kernel of the stacked (sigma - 1) over the four generators."""
    P = principal_vectors(n, ring)
    ech = echelon_of(_rows_of(P, ring.modulus), ring.modulus, reduce=False)
    return dim_V(n) - ech.rank


def coboundary_space(n, ring=ZZ, space=None):
    """rank(Z^1) x dim V matrix: column s holds the Z^1-coordinates of f_{e_s}."""
    ring = _check_ring(ring)
    space = space or cocycle_space(n, ring)
    P = principal_vectors(n, ring)
    cols = []
    for s in range(P.shape[0]):
        vec = [int(x) for x in P[s]]
        try:
            cols.append(space.coordinates(vec))
        except CoordinateError as exc:
            raise CoordinateError(f"principal cocycle of basis vector {s} is not in Z^1") from exc
    return [list(r) for r in zip(*cols)] if cols else [[] for _ in range(space.rank)]


# --- H^1 ------------------------------------------------------------------------


def ground_truth_label(n, ring):
    if n < 4:
        return "no ground truth; relator catalog is not a presentation at this rank"
    if not ring.in_hypothesis:
        return "outside theorem hypothesis (L has 2-torsion)"
    if n < 5:
        return "no ground truth"
    return "ground truth: free rank 2, no torsion"


@dataclass
class Quotient:
    """Z^1 / B^1 in Z^1-coordinates.

    Over Z this wraps an SNF of the coboundary matrix; over Z/p an echelon of its columns.
    """

    ring: RingSpec
    rank: int
    free_rank: int
    torsion: list
    snf: object = None
    echelon: object = None

    def class_coordinates(self, x):
        """(free coordinates, torsion coordinates) of the class of Z^1-vector x."""
        if self.ring.is_integers:
            y = intmat.matvec(self.snf.U, x)
            diag = self.snf.diagonal + [0] * (len(y) - len(self.snf.diagonal))
            r = self.snf.rank
            tors = [y[i] % diag[i] for i in range(r) if diag[i] > 1]
            return y[r:], tors
        p = self.ring.modulus
        v = {i: c % p for i, c in enumerate(x) if c % p}
        for c in sorted(self.echelon.pivots):
            if v.get(c):
                prow = self.echelon.pivots[c][0]
                t = v[c]
                for k, val in prow.items():
                    s = (v.get(k, 0) - t * val) % p
                    if s:
                        v[k] = s
                    else:
                        v.pop(k, None)
        free = [i for i in range(self.rank) if i not in self.echelon.pivots]
        return [v.get(i, 0) for i in free], []

    def lifted_basis(self):
        """Z^1-coordinate vectors whose classes form a basis of the free part."""
        if self.ring.is_integers:
            r = self.snf.rank
            Ui = self.snf.U_inv
            return [[Ui[j][i] for j in range(self.rank)] for i in range(r, self.rank)]
        free = [i for i in range(self.rank) if i not in self.echelon.pivots]
        return [[int(j == i) for j in range(self.rank)] for i in free]

    def torsion_generators(self):
        if not self.ring.is_integers:
            return []
        Ui = self.snf.U_inv
        return [[Ui[j][i] for j in range(self.rank)]
                for i, d in enumerate(self.snf.diagonal) if d > 1]


def quotient(space, X):
    k = space.rank
    ring = space.ring
    if ring.is_integers:
        if k == 0:
            return Quotient(ring, 0, 0, [])
        A = X if X and X[0] else [[0] for _ in range(k)]
        s = smith_normal_form(A)
        return Quotient(ring, k, k - s.rank, [d for d in s.invariant_factors if d > 1], snf=s)
    p = ring.modulus
    cols = [{i: X[i][j] % p for i in range(k) if X[i][j] % p} for j in range(len(X[0]) if X else 0)]
    ech = echelon_of(cols, p)
    return Quotient(ring, k, k - ech.rank, [], echelon=ech)


@dataclass
class CohomologyResult:
    n: int
    ring: RingSpec
    free_rank: int
    torsion: list
    basis_cocycles: list
    coordinates: dict
    z1_rank: int
    b1_rank: int
    relator_count: int
    label: str
    space: object = field(default=None, repr=False)
    quotient: object = field(default=None, repr=False)
    notes: list = field(default_factory=list)

    @property
    def dimension(self):
        return self.free_rank

    def class_of(self, f):
        """(free, torsion) coordinates of the class of a cocycle."""
        return self.quotient.class_coordinates(self.space.coordinates(f.to_vector()))

    def to_json(self):
        return {
            "n": self.n,
            "ring": str(self.ring),
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "z1_rank": self.z1_rank,
            "b1_rank": self.b1_rank,
            "relators": self.relator_count,
            "label": self.label,
            "coordinates": self.coordinates,
            "basis_cocycles": [f.to_json() for f in self.basis_cocycles],
            "notes": list(self.notes),
        }


def _named_vectors(n, ring, notes):
    out = {}
    for label in NAMED:
        try:
            out[label] = named_cocycle(label, n, ring)
        except CertificationError as exc:
            notes.append(str(exc))
    return out


def h1(n, ring=ZZ, relators=None, threads=None):
    ring = _check_ring(ring)
    space = cocycle_space(n, ring, relators, threads=threads)
    X = coboundary_space(n, ring, space)
    q = quotient(space, X)
    notes = []
    dropped = relator_check(n)[1]
    if relators is None and dropped:
        notes.append(f"catalog words {', '.join(dropped)} are not relators at n={n}; they were left out, "
                     "so this is H^1 of a group surjecting onto Aut F_n (an upper bound)")
    coords = {}
    for label, f in _named_vectors(n, ring, notes).items():
        try:
            x = space.coordinates(f.to_vector())
        except CoordinateError:
            notes.append(f"{label} is not in the computed Z^1")
            continue
        free, tors = q.class_coordinates(x)
        coords[label] = {"free": free, "torsion": tors}
    basis = [space.cocycle(c, f"h{i + 1}") for i, c in enumerate(q.lifted_basis())]
    return CohomologyResult(
        n=n, ring=ring, free_rank=q.free_rank, torsion=q.torsion, basis_cocycles=basis,
        coordinates=coords, z1_rank=space.rank, b1_rank=q.rank - q.free_rank,
        relator_count=len(space.relator_labels), label=ground_truth_label(n, ring),
        space=space, quotient=q, notes=notes,
    )


@lru_cache(maxsize=32)
def cached_h1(n, ring=ZZ):
    """h1 with the default catalog, memoised per (n, ring)."""
    return h1(n, ring)


def generation_check(n, ring=ZZ, labels=("fM", "fK"), result=None):
    """Whether the classes of the given named cocycles generate H^1, and the index.

    The index is |Z^1 / (B^1 + span)|, computed from the SNF of the stacked
    coordinate matrix; None stands for infinite.
    """
    ring = _check_ring(ring)
    res = result or cached_h1(n, ring)
    space = res.space
    X = coboundary_space(n, ring, space)
    extra = [space.coordinates(named_cocycle(l, n, ring).to_vector()) for l in labels]
    k = space.rank
    M = [list(X[i]) + [e[i] for e in extra] for i in range(k)]
    if ring.is_integers:
        s = smith_normal_form(M)
        if s.rank < k:
            return False, None
        index = 1
        for d in s.invariant_factors:
            index *= d
        return index == 1, index
    p = ring.modulus
    cols = [{i: M[i][j] % p for i in range(k) if M[i][j] % p} for j in range(len(M[0]))]
    full = echelon_of(cols, p, reduce=False).rank == k
    return full, 1 if full else None


# --- applications -----------------------------------------------------------------


@dataclass
class JohnsonExtension:
    feasible: bool
    ring: RingSpec
    constraints: int
    witness: object = None
    doubled_feasible: bool = None

    def to_json(self):
        return {"feasible": self.feasible, "ring": str(self.ring), "constraints": self.constraints,
                "doubled_target_feasible": self.doubled_feasible,
                "witness": self.witness.to_json() if self.witness is not None else None}


def johnson_extension_feasible(n, ring=ZZ, space=None, generators=None):
    """Is there f in Z^1 whose restriction to IA_n is tau_1?

    Checked on the generating set of all K_ij and K_ijk (j > k); also reports
    whether 2 tau_1 extends, which locates the obstruction at the prime 2.
    """
    ring = _check_ring(ring)
    space = space or cached_h1(n, ring).space
    mod = ring.modulus
    B = space.basis_matrix()
    gens = generators if generators is not None else ia_generators(n)
    blocks, target = [], []
    for _, sigma in gens:
        E = evaluation_matrix(factorize(sigma), n).astype(object)
        blocks.append(E.dot(B))
        target.extend(tau1(sigma, ring).to_vector())
    M = np.vstack(blocks) if blocks else np.zeros((0, space.rank), dtype=object)
    if mod:
        M = M % mod
    ech = Echelon(mod, track=True)
    for j, row in enumerate(_columns_as_rows(M, mod)):
        ech.add(row, tag=j)

    def solve(t):
        q = ech.solve({i: v for i, v in enumerate(t) if v})
        if q is None:
            return None
        c = [0] * space.rank
        for qr, tr in zip(q, ech.transforms()):
            for j, v in tr.items():
                c[j] += qr * v
        c = [ring.reduce(v) for v in c]
        got = M.dot(np.array(c, dtype=object))
        if mod:
            got = got % mod
        if [int(x) for x in got] != [ring.reduce(v) for v in t]:
            raise AssertionError("Johnson extension witness does not reproduce tau_1")
        return c

    c = solve(target)
    witness = space.cocycle(c, "tau1-extension") if c is not None else None
    doubled = solve([2 * v for v in target]) is not None
    return JohnsonExtension(c is not None, ring, len(target), witness, doubled)


@dataclass
class OuterResult:
    n: int
    ring: RingSpec
    alpha_named: dict
    alpha_matrix: list
    inn_rank: int
    out_free_rank: int
    out_torsion: list
    out_basis: list
    out_in_named: list = None
    aut: CohomologyResult = field(repr=False, default=None)

    def to_json(self):
        return {"n": self.n, "ring": str(self.ring), "alpha": self.alpha_named,
                "alpha_matrix_on_h1_basis": self.alpha_matrix, "h1_inn_rank": self.inn_rank,
                "free_rank": self.out_free_rank, "torsion": list(self.out_torsion),
                "basis_in_fM_fK": self.out_in_named,
                "basis_cocycles": [f.to_json() for f in self.out_basis]}


def _multiple_of(vec, g, ring):
    """c with vec = c g, or None."""
    piv = next(i for i, x in enumerate(g) if x)
    if ring.modulus:
        c = vec[piv] * pow(g[piv], -1, ring.modulus) % ring.modulus
    else:
        if vec[piv] % g[piv]:
            return None
        c = vec[piv] // g[piv]
    return c if all(ring.reduce(a - c * b) == 0 for a, b in zip(vec, g)) else None


def restriction_to_inner(n, ring=ZZ, result=None):
    """The map alpha: H^1(Aut) -> H^1(Inn) and H^1(Out F_n, V_L) = ker alpha.

    Inn F_n is free on iota_1..iota_n and acts trivially on V, so H^1(Inn)
    is V^n; alpha is evaluation on the iota_i (through factorization).
    """
    ring = _check_ring(ring)
    res = result or cached_h1(n, ring)
    space, q = res.space, res.quotient
    d = dim_V(n)
    inner = [inner_automorphism(n, i) for i in range(1, n + 1)]
    # principal part of H^1(Inn): a -> (iota_i a - a)_i
    prin = np.vstack([(action_matrix(s).astype(object) - np.eye(d, dtype=np.int64).astype(object)) for s in inner])
    prin_rank = echelon_of(_rows_of(prin.T, ring.modulus), ring.modulus, reduce=False).rank
    inn_rank = n * d - prin_rank
    E = np.vstack([evaluation_matrix(factorize(s), n).astype(object) for s in inner])
    alpha_z1 = E.dot(space.basis_matrix())
    if ring.modulus:
        alpha_z1 = alpha_z1 % ring.modulus
    g = []
    for i in range(1, n + 1):
        g.extend(embed_H([int(t == i) for t in range(1, n + 1)], ring).to_vector())

    def alpha_of(x):
        v = alpha_z1.dot(np.array(x, dtype=object))
        return [ring.reduce(int(t)) for t in v]

    named = {}
    for label in ("fM", "fK"):
        try:
            f = named_cocycle(label, n, ring)
        except CertificationError:
            continue
        named[label] = _multiple_of(alpha_of(space.coordinates(f.to_vector())), g, ring)
    lifted = q.lifted_basis()
    images = [alpha_of(x) for x in lifted]
    alpha_matrix = [_multiple_of(v, g, ring) for v in images]
    # kernel of alpha on the free part of H^1(Aut)
    kernel, _ = left_kernel([{i: v for i, v in enumerate(img) if v} for img in images], ring.modulus)
    out_basis = []
    for kvec in kernel:
        x = [0] * space.rank
        for idx, c in kvec.items():
            for j, v in enumerate(lifted[idx]):
                x[j] += c * v
        out_basis.append(space.cocycle([ring.reduce(v) for v in x], f"out{len(out_basis) + 1}"))
    in_named = None
    cM, cK = (res.coordinates.get(l, {}).get("free") for l in ("fM", "fK"))
    if cM is not None and cK is not None and q.free_rank == 2:
        in_named = [_solve2(cM, cK, [kvec.get(i, 0) for i in range(2)], ring) for kvec in kernel]
    return OuterResult(n, ring, named, alpha_matrix, inn_rank, len(kernel), list(q.torsion), out_basis,
                       in_named, res)


def _solve2(u, v, w, ring):
    """(a, b) with a u + b v = w in L^2, or None."""
    det = u[0] * v[1] - u[1] * v[0]
    a = w[0] * v[1] - w[1] * v[0]
    b = u[0] * w[1] - u[1] * w[0]
    if ring.modulus:
        p = ring.modulus
        if det % p == 0:
            return None
        inv = pow(det, -1, p)
        return [a * inv % p, b * inv % p]
    if det == 0 or a % det or b % det:
        return None
    return [a // det, b // det]
