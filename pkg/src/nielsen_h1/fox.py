"""Fox free derivatives, the Magnus representation r_M and the crossed homomorphism f_M."""

from . import laurent
from .automorphisms import sgn
from .coefficients import ZZ, embed_H
from .factorization import invert_automorphism
from .laurent import LaurentPoly
from .words import FreeWord, GroupRingElement


class MonomialSignError(ArithmeticError):
    pass


def fox_derivative(w, j):
    """d w / d x_j in Z[F_n]."""
    n = w.rank
    if not 1 <= j <= n:
        raise ValueError(f"index {j} out of range 1..{n}")
    terms = {}
    prefix = FreeWord.identity(n)
    xj = FreeWord.generator(n, j)
    xj_inv = xj.inverse()
    for idx, exp in w.syllables:
        if idx == j:
            step = xj if exp > 0 else xj_inv
            for _ in range(abs(exp)):
                if exp > 0:
                    terms[prefix] = terms.get(prefix, 0) + 1
                    prefix = prefix * step
                else:
                    prefix = prefix * step
                    terms[prefix] = terms.get(prefix, 0) - 1
        else:
            prefix = prefix * FreeWord.generator(n, idx, exp)
    return GroupRingElement(n, terms)


def abelian_fox_row(w):
    """[ bar(d w / d x_i)^a for i = 1..n ], computed letter by letter.

    Same values as abelianize(fox_derivative(w, i).bar()) without building
    the prefixes as words.
    """
    n = w.rank
    acc = [dict() for _ in range(n)]
    expo = [0] * n
    for idx, exp in w.syllables:
        d = acc[idx - 1]
        s = 1 if exp > 0 else -1
        for _ in range(abs(exp)):
            if s < 0:
                expo[idx - 1] -= 1
            key = tuple(-e for e in expo)
            d[key] = d.get(key, 0) + s
            if s > 0:
                expo[idx - 1] += 1
    return [LaurentPoly(n, d) for d in acc]


def magnus_representation(sigma, sigma_inverse=None):
    """r_M(sigma)_{ij} = bar(d sigma(x_j) / d x_i)^a with sigma(x) = x^(sigma^-1)."""
    n = sigma.rank
    inv = sigma_inverse if sigma_inverse is not None else invert_automorphism(sigma)
    cols = [abelian_fox_row(inv.image(j)) for j in range(1, n + 1)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def act_on_laurent_matrix(sigma, matrix):
    """Entrywise sigma_*: t^h -> t^(sigma . h)."""
    m = sigma.h_matrix()
    return [[p.substitute(m) for p in row] for row in matrix]


def laurent_matmul(a, b):
    n = len(a)
    rank = a[0][0].rank
    out = []
    for i in range(n):
        row = []
        for j in range(len(b[0])):
            acc = LaurentPoly(rank)
            for k in range(len(b)):
                if not a[i][k].is_zero() and not b[k][j].is_zero():
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def f_M_monomial(sigma, sigma_inverse=None):
    """The exponent vector h in H with sgn(sigma) det r_M(sigma) = t^h."""
    d = laurent.det(magnus_representation(sigma, sigma_inverse)) * sgn(sigma)
    try:
        s, h = laurent.as_signed_monomial(d)
    except laurent.NotMonomial as exc:
        raise MonomialSignError(str(exc)) from exc
    if s != 1:
        raise MonomialSignError(f"sgn * det r_M = {d} has sign -1")
    return list(h)


def f_M(sigma, ring=ZZ, sigma_inverse=None):
    return embed_H(f_M_monomial(sigma, sigma_inverse), ring)
