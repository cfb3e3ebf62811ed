import numpy as np
import pytest

from nielsen_h1.automorphisms import GenWord, nielsen_generator
from nielsen_h1.cocycles import named_cocycle, principal
from nielsen_h1.coefficients import ZZ, RingSpec, VElement, act, dim_V
from nielsen_h1.cohomology import (cached_h1, coboundary_space, cocycle_space, constraint_matrix, dump_matrix,
                                   evaluation_matrix, generation_check, ground_truth_label, h1, invariants_rank,
                                   johnson_extension_feasible, principal_vectors, restriction_to_inner)
from nielsen_h1.echelon import CoordinateError

Z3, Z5, Z7 = RingSpec(3), RingSpec(5), RingSpec(7)


def test_free_group_has_no_constraints():
    n = 3
    assert cocycle_space(n, ZZ, relators=[]).rank == 2 * n * n * (n - 1)


def test_evaluation_matrix_matches_cocycle():
    n = 4
    f = named_cocycle("fK", n) + 3 * named_cocycle("fM", n)
    w = GenWord.parse("U Q^-1 S P U^-1 Q")
    got = evaluation_matrix(w, n).dot(np.array(f.to_vector(), dtype=np.int64))
    assert [int(x) for x in got] == f.evaluate(w).to_vector()


def test_assembly_independent_of_threads():
    a, la = constraint_matrix(5, threads=1)
    b, lb = constraint_matrix(5, threads=4)
    assert la == lb and np.array_equal(a, b)
    assert a.shape == (18 * 50, 200)


def test_named_and_principal_in_Z1():
    space = cached_h1(5, ZZ).space
    for label in ("fM", "fK", "fN", "fa"):
        vec = named_cocycle(label, 5).to_vector()
        space.coordinates(vec)
        assert not space.residual(vec).any()
    for row in principal_vectors(5):
        assert not space.residual(list(row)).any()


def test_non_cocycle_rejected():
    space = cached_h1(5, ZZ).space
    bad = [0] * space.length
    bad[0] = 1
    assert space.residual(bad).any()
    with pytest.raises(CoordinateError):
        space.coordinates(bad)


def test_basis_cocycles_certify():
    res = cached_h1(5, ZZ)
    for f in res.basis_cocycles + res.space.cocycles()[:5]:
        assert f.is_certified()


def test_principal_vector_of_basis_element():
    n = 4
    a = VElement.basis(n, 1, 1, 2)
    row = principal_vectors(n)[0]
    assert [int(x) for x in row] == principal(a).to_vector()
    assert principal(a)("U") == act(nielsen_generator("U", n), a) - a


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_no_invariants(n):
    assert invariants_rank(n) == 0


def test_coboundaries_have_full_rank():
    res = cached_h1(5, ZZ)
    assert res.b1_rank == dim_V(5)
    X = coboundary_space(5, ZZ, res.space)
    assert len(X) == res.z1_rank and len(X[0]) == dim_V(5)


@pytest.mark.parametrize("n,ring", [(5, ZZ), (5, Z3), (5, Z5), (5, Z7), (6, ZZ), (6, Z3), (6, Z5), (6, Z7)])
def test_h1_rank_two(n, ring):
    res = cached_h1(n, ring)
    assert (res.free_rank, res.torsion) == (2, [])
    assert res.label.startswith("ground truth")


@pytest.mark.parametrize("n", [5, 6])
def test_Z1_rank_consistent_across_rings(n):
    ranks = {cached_h1(n, r).z1_rank for r in (ZZ, Z3, Z5, Z7)}
    assert ranks == {dim_V(n) + 2}


@pytest.mark.parametrize("ring", [ZZ, Z3, Z5])
def test_fN_coordinate_identity(ring):
    c = cached_h1(5, ring).coordinates
    p = ring.modulus
    expected = [2 * a - b for a, b in zip(c["fM"]["free"], c["fK"]["free"])]
    if p:
        expected = [x % p for x in expected]
    assert c["fN"]["free"] == expected
    assert c["fa"]["free"] == [0, 0]


def test_generation():
    assert generation_check(5, ZZ) == (True, 1)
    assert generation_check(5, Z5) == (True, 1)
    assert generation_check(5, ZZ, labels=("fM",)) == (False, None)
    assert generation_check(5, ZZ, labels=("fM", "fN")) == (True, 1)
    # fK = 2 fM - fN up to coboundaries, so fK and fN only reach index 2
    assert generation_check(5, ZZ, labels=("fK", "fN")) == (False, 2)


def test_johnson_extension():
    z = johnson_extension_feasible(5, ZZ)
    assert not z.feasible and z.doubled_feasible and z.witness is None
    for ring in (Z3, Z5):
        r = johnson_extension_feasible(5, ring)
        assert r.feasible and r.witness.is_certified()


def test_outer():
    o = restriction_to_inner(5, ZZ)
    assert o.alpha_named == {"fM": 4, "fK": 2}
    assert (o.out_free_rank, o.out_torsion) == (1, [])
    assert o.inn_rank == 5 * dim_V(5)
    assert o.out_in_named == [[1, -2]]
    assert o.out_basis[0].is_certified()


def test_low_rank_labels():
    assert ground_truth_label(4, ZZ) == "no ground truth"
    assert "outside theorem hypothesis" in ground_truth_label(5, RingSpec(2))
    res = h1(3, ZZ)
    assert res.notes and "N7.1" in res.notes[0]


def test_composite_modulus_rejected():
    with pytest.raises(ValueError):
        h1(5, RingSpec(9))


def test_dump_matrix(tmp_path):
    A, _ = constraint_matrix(4)
    path = tmp_path / "m.txt"
    dump_matrix(A, path)
    lines = path.read_text().splitlines()
    rows, cols, nnz = map(int, lines[0].split())
    assert (rows, cols) == A.shape and nnz == len(lines) - 1 == np.count_nonzero(A)
    r, c, v = map(int, lines[1].split())
    assert A[r - 1, c - 1] == v
