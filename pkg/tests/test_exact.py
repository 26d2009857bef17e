import random
from fractions import Fraction as Q

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from galdist.errors import DimensionMismatch, SingularMatrix
from galdist.exact import (
    QuadMatrix,
    QuadScalar,
    check_nonsquare,
    mat_inverse,
    permutation_matrix,
    quad_inv,
    quad_mul,
    subspace_intersect_dim,
)

D = QuadScalar.delta()

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(QuadScalar, rationals, rationals)


def rand_scalar(rng, spread=5, d=2):
    return QuadScalar(Q(rng.randint(-spread, spread), rng.randint(1, 4)),
                      Q(rng.randint(-spread, spread), rng.randint(1, 4)), d)


@pytest.mark.parametrize("x, y, expected", [
    (QuadScalar(1, 1), QuadScalar(1, -1), QuadScalar(-1, 0)),
    (QuadScalar(0, 1), QuadScalar(0, 1), QuadScalar(2, 0)),
    (QuadScalar(Q(1, 2), 0), QuadScalar(0, 2), QuadScalar(0, 1)),
])
def test_quad_mul_examples(x, y, expected):
    assert quad_mul(x, y) == expected


def test_delta_squared_is_d():
    assert D * D == 2
    assert QuadScalar.delta(3) * QuadScalar.delta(3) == 3


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        QuadScalar(1, 1, 2) * QuadScalar(1, 1, 3)


def test_square_d_rejected():
    with pytest.raises(ValueError):
        check_nonsquare(Q(9, 4))
    assert check_nonsquare(3) == 3


@given(scalars)
def test_inverse_property(x):
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            quad_inv(x)
    else:
        assert quad_mul(x, quad_inv(x)) == 1


@given(scalars)
def test_norm_vanishes_only_at_zero(x):
    assert (x.norm() == 0) == x.is_zero()
    assert x * x.conj() == x.norm()


def test_conjugation_is_field_automorphism_randomized():
    rng = random.Random(1234)
    for _ in range(10_000):
        x, y = rand_scalar(rng), rand_scalar(rng)
        assert x.conj().conj() == x
        assert (x + y).conj() == x.conj() + y.conj()
        assert (x * y).conj() == x.conj() * y.conj()


def test_fixed_field_of_conjugation():
    assert QuadScalar(3, 0).conj() == QuadScalar(3, 0)
    assert QuadScalar(3, 1).conj() != QuadScalar(3, 1)


# ---- matrices


def test_inverse_of_2x2_representative_block():
    m = QuadMatrix([[1, -D], [1, D]])
    inv = mat_inverse(m)
    # the explicit form: [[1/2, 1/2], [-1/(2 delta), 1/(2 delta)]], and 1/(2 delta) = delta/4 for d = 2
    half = QuadScalar(Q(1, 2))
    assert inv == QuadMatrix([[half, half], [QuadScalar(0, Q(-1, 4)), QuadScalar(0, Q(1, 4))]])
    assert inv.entries[1][1] == (2 * D).inverse()
    assert (m @ inv).is_identity() and (inv @ m).is_identity()


def test_inverse_identity_and_diagonal():
    assert mat_inverse(QuadMatrix.identity(4)) == QuadMatrix.identity(4)
    m = QuadMatrix([[2, 0], [0, QuadScalar(1, 1)]])
    inv = mat_inverse(m)
    assert inv.entries[0][0] == Q(1, 2)
    assert inv.entries[0][1] == 0 and inv.entries[1][0] == 0
    assert quad_mul(QuadScalar(1, 1), inv.entries[1][1]) == 1
    # (1 + delta)^{-1} = (1 - delta) / (1 - d) = -1 + delta for d = 2
    assert inv.entries[1][1] == QuadScalar(-1, 1)


def test_singular_and_nonsquare():
    with pytest.raises(SingularMatrix):
        mat_inverse(QuadMatrix([[1, D], [2, 2 * D]]))
    with pytest.raises(DimensionMismatch):
        mat_inverse(QuadMatrix([[1, 2, 3]]))


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 12])
def test_random_inverse_roundtrip(n):
    rng = random.Random(n)
    done = 0
    while done < 3:
        m = QuadMatrix([[rand_scalar(rng, 3) for _ in range(n)] for _ in range(n)])
        try:
            inv = mat_inverse(m)
        except SingularMatrix:
            continue
        assert (inv @ m).is_identity()
        assert (m @ inv).is_identity()
        done += 1


@pytest.mark.parametrize("d", [2, 3])
def test_conj_is_multiplicative_on_matrices(d):
    rng = random.Random(d)
    a = QuadMatrix([[rand_scalar(rng, d=d) for _ in range(3)] for _ in range(3)], d)
    b = QuadMatrix([[rand_scalar(rng, d=d) for _ in range(3)] for _ in range(3)], d)
    assert (a @ b).conj() == a.conj() @ b.conj()
    assert (a @ b).transpose() == b.transpose() @ a.transpose()


def test_permutation_matrix_convention():
    p = permutation_matrix((2, 3, 1))
    e1 = QuadMatrix([[1], [0], [0]])
    assert p @ e1 == QuadMatrix([[0], [1], [0]])


# ---- subspace intersections


def _column_basis(vectors, d=2):
    return QuadMatrix([list(row) for row in zip(*vectors)], d)


def _q_realification(m: QuadMatrix):
    """Columns v and delta*v, written over Q in the basis (e_k, delta e_k)."""
    cols = []
    for j in range(m.cols):
        v = [m.entries[i][j] for i in range(m.rows)]
        dv = [QuadScalar(0, 1, m.d) * x for x in v]
        for vec in (v, dv):
            cols.append([x.a for x in vec] + [x.b for x in vec])
    return sympy.Matrix(cols).T


def oracle_intersection_dim(a: QuadMatrix, b: QuadMatrix) -> int:
    """dim_K(A ∩ B) = dim_Q(A_Q ∩ B_Q) / 2, ranks by sympy over Q."""
    ra = _q_realification(a).rank()
    rb = _q_realification(b).rank()
    rab = _q_realification(a.hstack(b)).rank()
    dim_q = ra + rb - rab
    assert dim_q % 2 == 0
    return dim_q // 2


def test_intersection_examples():
    e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    assert subspace_intersect_dim(_column_basis([e1]), _column_basis([e1])) == 1
    assert subspace_intersect_dim(_column_basis([e1]), _column_basis([e2])) == 0
    a = _column_basis([(1, D, 0), e3])
    assert subspace_intersect_dim(a, a.conj()) == 1
    assert oracle_intersection_dim(a, a.conj()) == 1


def test_intersection_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        subspace_intersect_dim(QuadMatrix([[1], [0]]), QuadMatrix([[1], [0], [0]]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3), st.integers(1, 3))
def test_intersection_against_q_oracle(seed, ka, kb):
    rng = random.Random(seed)
    n = 3
    # low-spread entries so that nontrivial intersections actually occur
    a = QuadMatrix([[rand_scalar(rng, 1) for _ in range(ka)] for _ in range(n)])
    b = QuadMatrix([[rand_scalar(rng, 1) for _ in range(kb)] for _ in range(n)])
    if rng.random() < 0.5:
        b = b.hstack(a.columns([0]))
    got = subspace_intersect_dim(a, b)
    assert got == oracle_intersection_dim(a, b)
    assert got == subspace_intersect_dim(b, a)
    assert got <= min(a.rank(), b.rank())
