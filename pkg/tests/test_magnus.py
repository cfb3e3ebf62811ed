import pytest
from hypothesis import given
from hypothesis import strategies as st

from nielsen_h1 import checks, magnus
from nielsen_h1.automorphisms import (Automorphism, NotIA, compose, evaluate_genword, ia_generators,
                                      inner_automorphism, magnus_ia_generator, nielsen_generator)
from nielsen_h1.coefficients import VElement, embed_H
from nielsen_h1.magnus import MagnusExpansion, TensorTrunc2
from nielsen_h1.words import parse_word


def E(n=3):
    return MagnusExpansion.standard(n)


def test_expand_examples():
    t = E().expand(parse_word(3, "x1*x2"))
    assert t.c1 == (1, 1, 0) and t.c2[0][1] == 1 and t.c2[1][0] == 0
    inv = E().expand(parse_word(3, "x1^-1"))
    assert inv.c1 == (-1, 0, 0) and inv.c2[0][0] == 1 and sum(map(sum, inv.c2)) == 1
    comm = E().expand(parse_word(3, "x1*x2*x1^-1*x2^-1"))
    assert comm.c1 == (0, 0, 0)
    assert comm.c2 == ((0, 1, 0), (-1, 0, 0), (0, 0, 0))


def test_truncated_inverse():
    a = TensorTrunc2(1, [1, -2], [[3, 0], [1, -1]])
    assert a * a.inverse() == TensorTrunc2.one(2) == a.inverse() * a


def test_tau1_theta_examples():
    n = 4
    assert all(not any(map(any, row)) for row in magnus.tau1_theta(E(n), Automorphism.identity(n)))
    t = magnus.tau1_theta(E(n), magnus_ia_generator(n, 1, 2))
    # e_1^* (x) (e_1 (x) e_2 - e_2 (x) e_1)
    assert t[0][0][1] == 1 and t[0][1][0] == -1
    assert sum(abs(x) for blk in t for row in blk for x in row) == 2


def test_f_K_table():
    n = 5
    assert magnus.f_K(nielsen_generator("U", n)) == VElement.basis(n, 1, 1, 2, -1)
    for s in "PQS":
        assert magnus.f_K(nielsen_generator(s, n)).is_zero()


@pytest.mark.parametrize("n", [4, 5])
def test_johnson_values(n):
    for idx, k in ia_generators(n):
        i = idx[0]
        e = VElement.basis(n, i, i, idx[1]) if len(idx) == 2 else VElement.basis(n, i, idx[1], idx[2])
        assert magnus.tau1(k) == e, idx
        assert magnus.f_K(k) == 2 * e, idx


def test_tau1_on_inner():
    n = 4
    for i in range(1, n + 1):
        assert magnus.tau1(inner_automorphism(n, i)) == embed_H([int(t == i) for t in range(1, n + 1)])


def test_tau1_rejects_non_IA():
    with pytest.raises(NotIA):
        magnus.tau1(nielsen_generator("U", 3))


ia_words = st.lists(st.tuples(st.integers(0, 35), st.booleans()), max_size=5)


@given(ia_words, ia_words)
def test_tau1_is_homomorphism_on_IA(a, b):
    n = 4
    gens = [k for _, k in ia_generators(n)]
    from nielsen_h1.factorization import invert_automorphism

    def build(spec):
        out = Automorphism.identity(n)
        for idx, inv in spec:
            g = gens[idx % len(gens)]
            out = out * (invert_automorphism(g) if inv else g)
        return out

    s, t = build(a), build(b)
    assert magnus.tau1(s * t) == magnus.tau1(s) + magnus.tau1(t)


def test_symmetric_perturbation_leaves_f_K_unchanged():
    n = 4
    q = [[0] * n for _ in range(n)]
    q[0][0] = 1
    theta = MagnusExpansion(n, {1: q})
    for s in "PQSU":
        g = nielsen_generator(s, n)
        assert magnus.f_K(g, theta=theta) == magnus.f_K(g)


def test_theta_independence():
    assert checks.run_property("theta_independence", seed=11, expansions=3) == []


def test_lambda2_class_rejects_non_commutator():
    with pytest.raises(NotIA):
        magnus.lambda2_class(parse_word(2, "x1"))
