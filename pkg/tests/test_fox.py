import random

import pytest
from hypothesis import given

from conftest import genwords, letters
from nielsen_h1 import checks, fox, laurent
from nielsen_h1.automorphisms import Automorphism, evaluate_genword, inner_automorphism, nielsen_generator
from nielsen_h1.coefficients import VElement, embed_H
from nielsen_h1.laurent import LaurentPoly, abelianize
from nielsen_h1.words import FreeWord, GroupRingElement, parse_word


def ring(n, *terms):
    return GroupRingElement(n, {parse_word(n, t): c for t, c in terms})


def test_fox_examples():
    assert fox.fox_derivative(parse_word(2, "x1*x2"), 2) == ring(2, ("x1", 1))
    assert fox.fox_derivative(parse_word(2, "x1^-1"), 1) == ring(2, ("x1^-1", -1))
    # product rule by hand: d(x2^-1 x1 x2)/dx2 = -x2^-1 + x2^-1 x1
    assert fox.fox_derivative(parse_word(2, "x2^-1*x1*x2"), 2) == ring(2, ("x2^-1", -1), ("x2^-1*x1", 1))
    with pytest.raises(ValueError):
        fox.fox_derivative(parse_word(2, "x1"), 3)


@given(letters(3, 20))
def test_fundamental_identity(seq):
    w = FreeWord.from_letters(3, seq)
    one = GroupRingElement.one(3)
    total = GroupRingElement.zero(3)
    for j in (1, 2, 3):
        total = total + fox.fox_derivative(w, j) * (GroupRingElement.from_word(FreeWord.generator(3, j)) - one)
    assert total == GroupRingElement.from_word(w) - one


@given(letters(3, 20))
def test_abelian_row_matches_full_derivative(seq):
    w = FreeWord.from_letters(3, seq)
    row = fox.abelian_fox_row(w)
    assert row == [abelianize(fox.fox_derivative(w, i).bar()) for i in (1, 2, 3)]


def test_magnus_identity():
    m = fox.magnus_representation(Automorphism.identity(3))
    assert m == [[LaurentPoly.constant(3, int(i == j)) for j in range(3)] for i in range(3)]


@pytest.mark.parametrize("s", "PQSU")
def test_det_is_signed_monomial(s):
    g = nielsen_generator(s, 4)
    sign, _ = laurent.as_signed_monomial(laurent.det(fox.magnus_representation(g)))
    assert sign in (1, -1)


@given(genwords(6), genwords(6))
def test_crossed_rule(a, b):
    n = 3
    s, t = evaluate_genword(a, n), evaluate_genword(b, n)
    lhs = fox.magnus_representation(s * t)
    rhs = fox.laurent_matmul(fox.magnus_representation(s),
                             fox.act_on_laurent_matrix(s, fox.magnus_representation(t)))
    assert lhs == rhs


def test_f_M_table():
    n = 5
    assert fox.f_M(nielsen_generator("S", n)) == VElement.from_terms(n, [(j, 1, j, -1) for j in range(2, n + 1)])
    for s in "PQU":
        assert fox.f_M(nielsen_generator(s, n)).is_zero()


def test_f_M_on_inner_automorphisms():
    n = 5
    for i in range(1, n + 1):
        e = embed_H([int(t == i) for t in range(1, n + 1)])
        assert fox.f_M(inner_automorphism(n, i)) == (n - 1) * e


def test_f_M_cocycle_property():
    assert checks.run_property("cocycle_identity", seed=3, count=30, labels=("fM",)) == []


@given(genwords(8), genwords(8))
def test_f_M_direct_cocycle_identity(a, b):
    from nielsen_h1.coefficients import act
    n = 4
    s, t = evaluate_genword(a, n), evaluate_genword(b, n)
    assert fox.f_M(s * t) == fox.f_M(s) + act(s, fox.f_M(t))
