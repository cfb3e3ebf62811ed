"""Randomized cross-validation checks shared by the CLI and the test-suite.

Each check returns a list of failure descriptions (empty means pass).
"""

import random

from . import fox, magnus
from .automorphisms import SYMBOLS, GenWord, evaluate_genword
from .cocycles import named_cocycle, principal
from .coefficients import ZZ, VElement
from .factorization import factorize
from .words import FreeWord, GroupRingElement


def random_free_word(rng, n, max_len):
    letters = [rng.choice([1, -1]) * rng.randint(1, n) for _ in range(rng.randint(0, max_len))]
    return FreeWord.from_letters(n, letters)


def random_genword(rng, max_len):
    return GenWord([(rng.choice(SYMBOLS), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len))])


def random_automorphism(rng, n, max_len):
    return evaluate_genword(random_genword(rng, max_len), n)


def fox_fundamental(rng, n=4, count=500, max_len=12):
    """w - 1 = sum_j (dw/dx_j)(x_j - 1)."""
    bad = []
    one = GroupRingElement.one(n)
    for _ in range(count):
        w = random_free_word(rng, n, max_len)
        rhs = GroupRingElement.zero(n)
        for j in range(1, n + 1):
            rhs = rhs + fox.fox_derivative(w, j) * (GroupRingElement.from_word(FreeWord.generator(n, j)) - one)
        if GroupRingElement.from_word(w) - one != rhs:
            bad.append(str(w))
    return bad


def magnus_crossed_rule(rng, n=4, count=100, max_len=8):
    """r_M(sigma tau) = r_M(sigma) r_M(tau)^(sigma_*)."""
    bad = []
    for _ in range(count):
        a, b = random_genword(rng, max_len), random_genword(rng, max_len)
        s, t = evaluate_genword(a, n), evaluate_genword(b, n)
        st = evaluate_genword(a * b, n)
        inv = lambda w: evaluate_genword(w.inverse(), n)
        lhs = fox.magnus_representation(st, inv(a * b))
        rhs = fox.laurent_matmul(fox.magnus_representation(s, inv(a)),
                                 fox.act_on_laurent_matrix(s, fox.magnus_representation(t, inv(b))))
        if lhs != rhs:
            bad.append(f"{a} | {b}")
    return bad


def cocycle_identity(rng, n=5, count=100, max_len=10, labels=("fM", "fK")):
    """f(ab) = f(a) + a . f(b) for generator words a, b."""
    from .coefficients import act

    bad = []
    fs = [named_cocycle(label, n) for label in labels]
    for _ in range(count):
        a, b = random_genword(rng, max_len), random_genword(rng, max_len)
        sa = evaluate_genword(a, n)
        for f in fs:
            if f.evaluate(a * b) != f.evaluate(a) + act(sa, f.evaluate(b)):
                bad.append(f"{f.label}: {a} | {b}")
    return bad


def factorization_roundtrip(rng, n=5, count=200, max_len=30):
    bad = []
    for _ in range(count):
        sigma = random_automorphism(rng, n, max_len)
        if evaluate_genword(factorize(sigma), n) != sigma:
            bad.append(str(sigma))
    return bad


def factorized_f_M(rng, n=5, count=50, max_len=20):
    """f_M evaluated through a factorization agrees with the determinant formula."""
    bad = []
    f = named_cocycle("fM", n)
    for _ in range(count):
        w = random_genword(rng, max_len)
        sigma = evaluate_genword(w, n)
        direct = fox.f_M(sigma, sigma_inverse=evaluate_genword(w.inverse(), n))
        if f.evaluate_on_automorphism(sigma) != direct:
            bad.append(str(w))
    return bad


def random_expansion(rng, n, spread=2):
    q = {i: [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)] for i in range(1, n + 1)}
    return magnus.MagnusExpansion(n, q)


def theta_independence(rng, n=5, expansions=2):
    """Changing theta_2 by q changes f_K by the principal cocycle of -proj(q).

    In particular every expansion gives a certified cocycle with the same class.
    """
    bad = []
    base = magnus.MagnusExpansion.standard(n)
    std = {s: magnus.f_K(g, ZZ, base) for s, g in _gens(n)}
    for _ in range(expansions):
        theta = random_expansion(rng, n)
        q = [[[theta.gens[i].c2[a][b] for b in range(n)] for a in range(n)] for i in range(1, n + 1)]
        shift = principal(-magnus.project_to_V(q))
        for s, g in _gens(n):
            if magnus.f_K(g, ZZ, theta) != std[s] + shift(s):
                bad.append(f"theta={theta.gens}, generator {s}")
    return bad


def _gens(n):
    from .automorphisms import nielsen_generator

    return [(s, nielsen_generator(s, n)) for s in SYMBOLS]


PROPERTY_CHECKS = {
    "fox_fundamental_identity": fox_fundamental,
    "magnus_crossed_rule": magnus_crossed_rule,
    "cocycle_identity": cocycle_identity,
    "factorization_roundtrip": factorization_roundtrip,
    "factorized_f_M": factorized_f_M,
    "theta_independence": theta_independence,
}


def run_property(name, seed=0, **kw):
    return PROPERTY_CHECKS[name](random.Random(seed), **kw)
