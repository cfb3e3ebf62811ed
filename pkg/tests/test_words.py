from hypothesis import given

from conftest import letters
from nielsen_h1.words import FreeWord, GroupRingElement, RankMismatch, parse_word

import pytest


def naive_reduce(seq):
    stack = []
    for a in seq:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return stack


def w(n, text):
    return parse_word(n, text)


def test_concat_examples():
    assert (w(3, "x1") * w(3, "x1^-1")).is_identity()
    assert w(3, "x1*x2") * w(3, "x2^-1*x3") == w(3, "x1*x3")
    assert (w(3, "x1^2*x2") * w(3, "x2^-1*x1^-2")).is_identity()


def test_invert_examples():
    assert FreeWord.identity(2).inverse().is_identity()
    assert w(2, "x1*x2^-1").inverse() == w(2, "x2*x1^-1")


@given(letters(4, 30))
def test_reduction_matches_stack_oracle(seq):
    assert FreeWord.from_letters(4, seq).letters() == naive_reduce(seq)


@given(letters(3), letters(3), letters(3))
def test_group_laws(a, b, c):
    a, b, c = (FreeWord.from_letters(3, s) for s in (a, b, c))
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity()
    assert (a * b).inverse() == b.inverse() * a.inverse()
    assert [x + y for x, y in zip(a.exponent_sums(), b.exponent_sums())] == (a * b).exponent_sums()


@given(letters(3, 20))
def test_str_parse_roundtrip(seq):
    u = FreeWord.from_letters(3, seq)
    assert parse_word(3, str(u)) == u


@given(letters(3), letters(3))
def test_substitute_is_homomorphism(a, b):
    ims = [w(3, "x2*x1"), w(3, "x3^-1"), w(3, "x1*x2*x3")]
    a, b = FreeWord.from_letters(3, a), FreeWord.from_letters(3, b)
    assert (a * b).substitute(ims) == a.substitute(ims) * b.substitute(ims)


def test_power_and_length():
    assert len(w(2, "x1^3*x2^-2")) == 5
    assert w(2, "x1*x2") ** -2 == w(2, "x2^-1*x1^-1*x2^-1*x1^-1")
    assert (w(2, "x1") ** 0).is_identity()


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        w(2, "x1") * w(3, "x1")
    with pytest.raises(ValueError):
        parse_word(2, "x3")


def R(n, *terms):
    return GroupRingElement(n, {w(n, t): c for t, c in terms})


def test_ring_examples():
    one, x1 = R(3, ("1", 1)), R(3, ("x1", 1))
    assert (one - x1) * (one + x1) == R(3, ("1", 1), ("x1^2", -1))
    assert (x1 * GroupRingElement.zero(3)).is_zero()
    # (x1 + x2) x1^-1 = 1 + x2 x1^-1
    assert R(3, ("x1", 1), ("x2", 1)) * R(3, ("x1^-1", 1)) == R(3, ("1", 1), ("x2*x1^-1", 1))


def test_bar_examples():
    assert R(3, ("x1*x2", 1)).bar() == R(3, ("x2^-1*x1^-1", 1))
    assert R(3, ("1", 1)).bar() == R(3, ("1", 1))
    assert R(3, ("x1", 2), ("x2*x3", -1)).bar() == R(3, ("x1^-1", 2), ("x3^-1*x2^-1", -1))


@given(letters(2, 6), letters(2, 6), letters(2, 6))
def test_bar_is_antimultiplicative_involution(a, b, c):
    p = GroupRingElement.from_word(FreeWord.from_letters(2, a)) + 2 * GroupRingElement.from_word(FreeWord.from_letters(2, b))
    q = GroupRingElement.from_word(FreeWord.from_letters(2, c)) - GroupRingElement.one(2)
    assert p.bar().bar() == p
    assert (p * q).bar() == q.bar() * p.bar()
    assert p * (q + p) == p * q + p * p
