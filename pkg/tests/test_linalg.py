from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hopfribbon.linalg import (
    Field,
    charpoly,
    common_kernel,
    concatenate,
    einsum,
    inverse,
    kernel,
    kronecker,
    linear_characters,
    poly_roots,
    rank,
    rref,
    solve,
    stack,
)

Q = Field.rational()
F7 = Field.prime(7)
FIELDS = [Q, F7, Field.prime(5)]


def small_matrices(max_rows=5, max_cols=5, lo=-4, hi=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def sympy_matrix(fld: Field, rows):
    return sympy.Matrix(rows)


def sympy_rank(fld: Field, rows) -> int:
    M = sympy.Matrix(rows)
    if fld.is_prime:
        # rank over F_p via sympy's modular rref
        from sympy.polys.matrices import DomainMatrix
        from sympy import GF

        dm = DomainMatrix.from_Matrix(M).convert_to(GF(fld.p))
        return dm.rank()
    return M.rank()


# -- fields and scalars -------------------------------------------------


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        Field.prime(9)


@pytest.mark.parametrize("text,value", [("3", Fraction(3)), ("-2/4", Fraction(-1, 2)), (" 6/3 ", Fraction(2))])
def test_rational_parse(text, value):
    assert Q.parse(text) == value


def test_rational_parse_rejects_nonpositive_denominator():
    with pytest.raises(ValueError):
        Q.parse("1/-2")


@given(st.fractions(max_denominator=50))
def test_rational_string_round_trip(x):
    assert Q.parse(Q.format(x)) == x


@given(st.integers(-1000, 1000))
def test_prime_string_round_trip(k):
    assert F7.parse(F7.format(k)) == k % 7


def test_prime_fraction_is_modular_inverse():
    assert F7.scalar(Fraction(1, 3)) == 5


# -- arrays -------------------------------------------------------------


def test_array_reduces_fractions():
    a = Q.array([["1/2", "2/4"], ["3", "-1/3"]])
    assert a.den == 6
    assert a.tolist_str() == [["1/2", "1/2"], ["3", "-1/3"]]


def test_arithmetic_promotes_to_python_ints():
    big = Q.array([[2**40, 1], [1, 2**40]])
    sq = big @ big
    assert sq.item(0, 0) == 2**80 + 1
    assert (sq @ big).item(0, 0) == (2**80 + 1) * 2**40 + 2 * 2**40


@given(small_matrices(3, 3), small_matrices(3, 3))
def test_matmul_matches_sympy(a, b):
    A, B = Q.array(a), Q.array(b)
    if A.shape[1] != B.shape[0]:
        return
    expect = sympy.Matrix(a) * sympy.Matrix(b)
    assert (A @ B).tolist() == [[Fraction(int(v)) for v in row] for row in expect.tolist()]


def test_einsum_three_operands_over_prime_field():
    rng = np.random.default_rng(0)
    a, b, c = (rng.integers(0, 7, size=(4, 4)) for _ in range(3))
    got = einsum("ij,jk,kl->il", F7.from_int_array(a), F7.from_int_array(b), F7.from_int_array(c))
    assert np.array_equal(got.num, (a @ b @ c) % 7)


def test_einsum_requires_explicit_output():
    with pytest.raises(ValueError):
        einsum("ij,jk", Q.eye(2), Q.eye(2))


# -- kronecker ----------------------------------------------------------


def test_kronecker_identities():
    assert kronecker(Q.eye(2), Q.eye(2)).equals(Q.eye(4))
    flip = Q.array([[0, 1], [1, 0]])
    assert kronecker(flip, Q.array([[2]])).equals(Q.array([[0, 2], [2, 0]]))


def test_flip_on_tensor_square_is_involution():
    tau = Q.zeros((4, 4)).num.copy()
    for i in range(2):
        for j in range(2):
            tau[j * 2 + i, i * 2 + j] = 1
    T = Q.from_int_array(tau)
    assert (T @ T).equals(Q.eye(4))


@given(small_matrices(2, 2), small_matrices(2, 2), small_matrices(2, 2))
def test_kronecker_associative(a, b, c):
    A, B, C = Q.array(a), Q.array(b), Q.array(c)
    assert kronecker(kronecker(A, B), C).equals(kronecker(A, kronecker(B, C)))


def test_kronecker_entry_formula():
    A = Q.array([[1, 2], [3, 4]])
    B = Q.array([[0, 5, 1], [6, 7, 2]])
    K = kronecker(A, B)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(3):
                    assert K.item(i * 2 + k, j * 3 + l) == A.item(i, j) * B.item(k, l)


# -- elimination --------------------------------------------------------


def test_kernel_examples():
    assert kernel(Q.eye(2)).shape == (0, 2)
    assert kernel(Q.array([[1, -1]])).equals(Q.array([[1, 1]]))


def test_rank_and_inverse_trivia():
    assert rank(Q.zeros((3, 4))) == 0
    assert inverse(Q.eye(3)).equals(Q.eye(3))
    assert inverse(Q.array([[1, 2], [2, 4]])) is None


@pytest.mark.parametrize("fld", FIELDS, ids=str)
@given(rows=small_matrices())
def test_rank_nullity_and_kernel(fld, rows):
    M = fld.array(rows)
    K = kernel(M)
    assert rank(M) + K.shape[0] == M.shape[1]
    assert rank(M) == sympy_rank(fld, rows)
    if K.shape[0]:
        assert (M @ K.T).is_zero()
        assert rank(K) == K.shape[0]


@pytest.mark.parametrize("fld", FIELDS, ids=str)
@given(rows=small_matrices(4, 4))
def test_inverse_verifies(fld, rows):
    M = fld.array(rows)
    if M.shape[0] != M.shape[1]:
        return
    inv = inverse(M)
    singular = sympy_rank(fld, rows) < M.shape[0]
    assert (inv is None) == singular
    if inv is not None:
        assert (M @ inv).equals(fld.eye(M.shape[0]))
        assert (inv @ M).equals(fld.eye(M.shape[0]))


@given(small_matrices(4, 4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_solve_verifies(rows, rhs):
    M = Q.array(rows)
    b = Q.array(rhs[: M.shape[0]])
    x = solve(M, b)
    augmented = sympy.Matrix(rows).row_join(sympy.Matrix(rhs[: M.shape[0]]))
    consistent = sympy.Matrix(rows).rank() == augmented.rank()
    assert (x is not None) == consistent
    if x is not None:
        assert (M @ x).equals(b)


@given(small_matrices(4, 5))
def test_rref_matches_sympy(rows):
    R, piv = rref(Q.array(rows))
    expect, expect_piv = sympy.Matrix(rows).rref()
    assert list(piv) == list(expect_piv)
    nz = expect[: len(expect_piv), :]
    assert R.tolist() == [[Fraction(int(v.p), int(v.q)) for v in row] for row in nz.tolist()]


@pytest.mark.parametrize("fld", FIELDS, ids=str)
@given(blocks=st.lists(small_matrices(3, 4, -2, 2).filter(lambda m: len(m[0]) == 4), min_size=1, max_size=4))
def test_common_kernel_equals_stacked_kernel(fld, blocks):
    arrays = [fld.array(b) for b in blocks]
    K = common_kernel(iter(arrays), 4, fld)
    stacked = concatenate(arrays, axis=0)
    K2 = kernel(stacked)
    assert K.shape[0] == K2.shape[0]
    if K.shape[0]:
        assert rref(K)[0].equals(rref(K2)[0])


# -- polynomials and eigenvalues ----------------------------------------


@pytest.mark.parametrize("fld", FIELDS, ids=str)
@given(rows=small_matrices(4, 4))
def test_charpoly_matches_sympy(fld, rows):
    M = fld.array(rows)
    if M.shape[0] != M.shape[1]:
        return
    x = sympy.Symbol("x")
    expect = sympy.Poly(sympy.Matrix(rows).charpoly(x).as_expr(), x)
    coeffs = [fld.scalar(int(c)) for c in reversed(expect.all_coeffs())]
    assert charpoly(M) == coeffs


def test_poly_roots_rational_with_multiplicity():
    # (x - 1/2)^2 (x + 3)(x^2 + 1)
    x = sympy.Symbol("x")
    p = sympy.Poly(sympy.expand((2 * x - 1) ** 2 * (x + 3) * (x**2 + 1)), x)
    coeffs = [Fraction(int(c)) for c in reversed(p.all_coeffs())]
    roots, leftover = poly_roots(Q, coeffs)
    assert sorted(roots) == [Fraction(-3), Fraction(1, 2)]
    assert leftover == 2


def test_poly_roots_prime_field():
    # x^3 - 1 over F_7 splits: 1, 2, 4
    roots, leftover = poly_roots(F7, [F7.scalar(-1), 0, 0, 1])
    assert sorted(roots) == [1, 2, 4]
    assert leftover == 0


def test_linear_characters_examples():
    sys_ = linear_characters([Q.eye(3)])
    assert len(sys_.systems) == 1
    values, basis = sys_.systems[0]
    assert list(values) == [1] and basis.shape[0] == 3

    flip = linear_characters([Q.array([[0, 1], [1, 0]])])
    assert sorted(v[0] for v, _ in flip.systems) == [-1, 1]

    rot = linear_characters([Q.array([[0, -1], [1, 0]])])
    assert rot.systems == []
    assert any("degree-2" in w for w in rot.warnings)


def test_linear_characters_rejects_noncommuting():
    a = Q.array([[1, 1], [0, 1]])
    b = Q.array([[1, 0], [1, 1]])
    with pytest.raises(ValueError):
        linear_characters([a, b])


def test_linear_characters_joint_eigenvectors():
    d1 = Q.array([[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    d2 = Q.array([[3, 0, 0], [0, 4, 0], [0, 0, 4]])
    out = linear_characters([d1, d2])
    found = sorted(tuple(v) for v, _ in out.systems)
    assert found == [(1, 3), (1, 4), (2, 4)]
    for values, basis in out.systems:
        for row in basis:
            assert (d1 @ row).equals(row * values[0])
            assert (d2 @ row).equals(row * values[1])


def test_stack_field_mismatch():
    with pytest.raises(ValueError):
        stack([Q.eye(2), F7.eye(2)])
