"""Exact linear algebra: echelon forms, kernels, signatures, subspaces."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

import pytest

from lcplie.linalg import (
    Subspace,
    as_fraction,
    det,
    identity_matrix,
    inverse,
    kernel,
    mat_mul,
    mat_vec,
    matrix,
    pair_index,
    pairs,
    rank,
    rref,
    solve,
    symmetric_signature,
    vector,
)

F = Fraction


def det_by_permutations(a):
    """Leibniz expansion, usable as an oracle up to 5x5 or so."""
    n = len(a)
    total = F(0)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = F(1)
        for i in range(n):
            term *= a[i][perm[i]]
        total += sign * term
    return total


def random_matrix(rng, rows, cols, span=9):
    return matrix([[rng.randint(-span, span) for _ in range(cols)] for _ in range(rows)])


def test_as_fraction_accepts_ints_strings_fractions():
    assert as_fraction(3) == F(3)
    assert as_fraction("2/5") == F(2, 5)
    assert as_fraction(F(1, 7)) == F(1, 7)


def test_as_fraction_rejects_floats():
    with pytest.raises(TypeError):
        as_fraction(0.5)


def test_pair_index_enumerates_upper_triangle():
    n = 5
    listed = list(pairs(n))
    assert len(listed) == n * (n - 1) // 2
    for idx, (i, j) in enumerate(listed):
        assert i < j
        assert pair_index(i, j, n) == idx


def test_rref_is_canonical_for_the_row_span():
    rng = random.Random(20240)
    for _ in range(50):
        rows = rng.randint(1, 4)
        a = random_matrix(rng, rows, 4, span=4)
        echelon, pivots = rref(a)
        # invariance: shuffling and rescaling rows must not change the output
        shuffled = list(a)
        rng.shuffle(shuffled)
        scales = [F(rng.choice([1, 2, 3, -1, -2])) for _ in shuffled]
        scaled = [[c * x for x in row] for c, row in zip(scales, shuffled)]
        again, pivots2 = rref(matrix(scaled))
        assert echelon == again
        assert pivots == pivots2
        for row, p in zip(echelon, pivots, strict=True):
            assert row[p] == 1
            assert all(other[p] == 0 for other in echelon if other is not row)


def test_kernel_vectors_annihilate_and_span_the_null_space():
    rng = random.Random(77)
    for _ in range(40):
        m, n = rng.randint(1, 4), rng.randint(1, 5)
        a = random_matrix(rng, m, n, span=3)
        null = kernel(a)
        for v in null:
            assert all(x == 0 for x in mat_vec(a, v))
        assert len(null) == n - rank(a)


def test_kernel_of_empty_matrix_is_identity():
    assert kernel((), ncols=3) == identity_matrix(3)


def test_solve_and_inverse():
    a = matrix([[2, 1], [1, 1]])
    x = solve(a, vector([3, 2]))
    assert x == (F(1), F(1))
    inv = inverse(a)
    assert mat_mul(a, inv) == identity_matrix(2)
    assert solve(matrix([[1, 1], [1, 1]]), vector([0, 1])) is None


def test_det_matches_permutation_expansion():
    rng = random.Random(4096)
    for _ in range(30):
        n = rng.randint(1, 4)
        a = random_matrix(rng, n, n, span=5)
        assert det(a) == det_by_permutations(a)


def test_det_is_multiplicative():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(1, 4)
        a = random_matrix(rng, n, n, span=4)
        b = random_matrix(rng, n, n, span=4)
        assert det(mat_mul(a, b)) == det(a) * det(b)


def test_signature_on_diagonal_forms():
    assert symmetric_signature(matrix([[2, 0], [0, -3]])) == (1, 1, 0)
    assert symmetric_signature(matrix([[0, 0], [0, 0]])) == (0, 0, 2)
    assert symmetric_signature(identity_matrix(3)) == (3, 0, 0)


def test_signature_is_congruence_invariant():
    rng = random.Random(600)
    base = matrix([[1, 0, 0], [0, -1, 0], [0, 0, 0]])
    for _ in range(20):
        p = random_matrix(rng, 3, 3, span=3)
        if det(p) == 0:
            continue
        transported = mat_mul(mat_mul([list(r) for r in zip(*p)], base), p)
        assert symmetric_signature(transported) == (1, 1, 1)


def test_signature_off_diagonal_hyperbolic_plane():
    # x*y has one positive and one negative direction
    assert symmetric_signature(matrix([[0, 1], [1, 0]])) == (1, 1, 0)


class TestSubspace:
    def test_basis_is_canonical_across_generating_sets(self):
        rng = random.Random(31337)
        for _ in range(40):
            n = rng.randint(1, 5)
            gens = random_matrix(rng, rng.randint(1, 4), n, span=3)
            s = Subspace.from_vectors(gens, n)
            # closure under taking random combinations of the generators
            combos = []
            for _ in range(len(gens) + 1):
                coeffs = [rng.randint(-3, 3) for _ in gens]
                combos.append(
                    tuple(
                        sum(c * g[k] for c, g in zip(coeffs, gens)) for k in range(n)
                    )
                )
            t = Subspace.from_vectors(matrix(combos), n)
            assert t.dim <= s.dim
            assert s.contains_subspace(t)
            if t.dim == s.dim:
                assert s == t

    def test_contains_and_coordinates(self):
        s = Subspace.from_vectors(matrix([[1, 0, 1], [0, 1, 1]]), 3)
        v = vector([2, 3, 5])
        assert s.contains(v)
        coords = s.coordinates_of(v)
        rebuilt = [
            sum(c * row[k] for c, row in zip(coords, s.basis)) for k in range(3)
        ]
        assert tuple(rebuilt) == v
        assert not s.contains(vector([1, 0, 0]))
        assert s.coordinates_of(vector([1, 0, 0])) is None

    def test_zero_and_full(self):
        z = Subspace.zero(4)
        f = Subspace.full(4)
        assert z.is_zero() and z.dim == 0
        assert f.is_full() and f.dim == 4
        assert f.contains_subspace(z)

    def test_sum_and_intersection_dimension_formula(self):
        rng = random.Random(555)
        for _ in range(40):
            n = rng.randint(2, 5)
            a = Subspace.from_vectors(random_matrix(rng, rng.randint(1, 3), n, 2), n)
            b = Subspace.from_vectors(random_matrix(rng, rng.randint(1, 3), n, 2), n)
            total = a.add(b)
            meet = a.intersect(b)
            assert total.dim + meet.dim == a.dim + b.dim
            for row in meet.basis:
                assert a.contains(row) and b.contains(row)
            for row in a.basis:
                assert total.contains(row)

    def test_constraint_matrix_cuts_out_the_subspace(self):
        s = Subspace.from_vectors(matrix([[1, 2, 0], [0, 0, 1]]), 3)
        constraints = s.constraint_matrix()
        assert len(constraints) == 1
        recovered = Subspace.from_vectors(kernel(constraints), 3)
        assert recovered == s

    def test_orthogonal_complement_identity_metric(self):
        s = Subspace.from_vectors(matrix([[1, 1, 0]]), 3)
        comp = s.orthogonal_complement(identity_matrix(3))
        assert comp.dim == 2
        for row in comp.basis:
            assert sum(a * b for a, b in zip(row, (1, 1, 0))) == 0
        assert s.intersect(comp).is_zero()

    def test_orthogonal_complement_general_metric(self):
        gram = matrix([[2, 1, 0], [1, 2, 0], [0, 0, 1]])
        s = Subspace.from_vectors(matrix([[1, 0, 0]]), 3)
        comp = s.orthogonal_complement(gram)
        assert comp.dim == 2
        for row in comp.basis:
            assert sum(row[i] * gram[i][0] for i in range(3)) == 0

    def test_rejects_wrong_length_vectors(self):
        with pytest.raises(ValueError):
            Subspace.from_vectors(matrix([[1, 0]]), 3)
