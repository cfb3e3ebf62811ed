"""Degree <= 2 Magnus expansions, the first Johnson map tau_1^theta, f_K and tau_1."""

from . import intmat
from .automorphisms import NotIA, is_IA
from .coefficients import ZZ, VElement
from .factorization import invert_automorphism


class TensorTrunc2:
    """c0 + c1 + c2 in Z (+) H (+) H(x)H, truncated above degree 2."""

    __slots__ = ("c0", "c1", "c2")

    def __init__(self, c0, c1, c2):
        self.c0 = c0
        self.c1 = tuple(c1)
        self.c2 = tuple(tuple(r) for r in c2)

    @classmethod
    def one(cls, n):
        return cls(1, [0] * n, [[0] * n for _ in range(n)])

    @property
    def rank(self):
        return len(self.c1)

    def __mul__(self, other):
        n = self.rank
        a0, a1, a2 = self.c0, self.c1, self.c2
        b0, b1, b2 = other.c0, other.c1, other.c2
        c1 = [a0 * b1[i] + b0 * a1[i] for i in range(n)]
        c2 = [[a0 * b2[i][j] + b0 * a2[i][j] + a1[i] * b1[j] for j in range(n)] for i in range(n)]
        return TensorTrunc2(a0 * b0, c1, c2)

    def inverse(self):
        """Truncated inverse of an element with c0 = 1."""
        if self.c0 != 1:
            raise ValueError("only unit-leading elements are inverted")
        n = self.rank
        a1, a2 = self.c1, self.c2
        c2 = [[a1[i] * a1[j] - a2[i][j] for j in range(n)] for i in range(n)]
        return TensorTrunc2(1, [-x for x in a1], c2)

    def __eq__(self, other):
        return (self.c0, self.c1, self.c2) == (other.c0, other.c1, other.c2)

    def __repr__(self):
        return f"TensorTrunc2({self.c0}, {list(self.c1)}, {[list(r) for r in self.c2]})"


class MagnusExpansion:
    """theta(x_i) = 1 + e_i + theta_2(x_i), degree-2 parts given per generator."""

    def __init__(self, n, quadratic=None):
        self.n = n
        quadratic = quadratic or {}
        self.gens = {}
        for i in range(1, n + 1):
            q = quadratic.get(i, [[0] * n for _ in range(n)])
            e = [int(t == i - 1) for t in range(n)]
            self.gens[i] = TensorTrunc2(1, e, q)
        self.inverses = {i: t.inverse() for i, t in self.gens.items()}

    @classmethod
    def standard(cls, n):
        return cls(n)

    def expand(self, w):
        out = TensorTrunc2.one(self.n)
        for idx, exp in w.syllables:
            f = self.gens[idx] if exp > 0 else self.inverses[idx]
            for _ in range(abs(exp)):
                out = out * f
        return out

    def theta2(self, w):
        return self.expand(w).c2


def expand(theta, w):
    return theta.expand(w)


def tau1_theta(theta, sigma, sigma_inverse=None):
    """T[i][a][b]: coefficient of e_i^* (x) e_a (x) e_b in tau_1^theta(sigma).

    tau_1^theta(sigma)([x_i]) = theta_2(x_i) - |sigma|^(x)2 theta_2(sigma^-1(x_i)),
    where sigma^-1(x_i) = x_i^sigma in right-action notation.
    """
    n = sigma.rank
    m = sigma.h_matrix()
    out = []
    for i in range(1, n + 1):
        base = theta.gens[i].c2
        t2 = theta.theta2(sigma.image(i))
        # (m (x) m) t2 = m t2 m^T
        moved = intmat.matmul(intmat.matmul(m, [list(r) for r in t2]), intmat.transpose(m))
        out.append([[base[a][b] - moved[a][b] for b in range(n)] for a in range(n)])
    return out


def project_to_V(tensor, ring=ZZ):
    """H^* (x) H (x) H -> H^* (x) Lambda^2 H, e_a (x) e_b -> e_a ^ e_b."""
    n = len(tensor)
    coeffs = {}
    for i in range(n):
        t = tensor[i]
        for a in range(n):
            for b in range(a + 1, n):
                c = t[a][b] - t[b][a]
                if c:
                    coeffs[(i + 1, a + 1, b + 1)] = c
    return VElement(n, ring, coeffs)


def f_K(sigma, ring=ZZ, theta=None):
    theta = theta or MagnusExpansion.standard(sigma.rank)
    return project_to_V(tau1_theta(theta, sigma), ring)


def lambda2_class(w):
    """Lambda^2 H class of a commutator-subgroup element, as {(j, k): c}, j < k."""
    n = w.rank
    t = MagnusExpansion.standard(n).expand(w)
    if any(t.c1):
        raise NotIA(f"{w} is not in the commutator subgroup")
    out = {}
    for a in range(n):
        for b in range(n):
            if t.c2[a][b] != -t.c2[b][a]:
                raise AssertionError("degree-2 Magnus coefficient is not antisymmetric")
            if a < b and t.c2[a][b]:
                out[(a + 1, b + 1)] = t.c2[a][b]
    return out


def tau1(sigma, ring=ZZ, sigma_inverse=None):
    """First Johnson homomorphism: e_i^* component is the class of x_i^-1 sigma(x_i).

    sigma(x) = x^(sigma^-1) is the left action, matching magnus_ia_generator.
    """
    if not is_IA(sigma):
        raise NotIA("tau_1 is defined on IA_n only")
    n = sigma.rank
    inv = sigma_inverse if sigma_inverse is not None else invert_automorphism(sigma)
    coeffs = {}
    for i in range(1, n + 1):
        xi = inv.image(i)
        w = type(xi).generator(n, i, -1) * xi
        for (j, k), c in lambda2_class(w).items():
            coeffs[(i, j, k)] = c
    return VElement(n, ring, coeffs)
