"""Core operator arithmetic, residual policy, and error contracts."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinphase import (
    NotDiagonalError,
    NotPSDError,
    Operator,
    ParameterError,
    ShapeError,
    Tolerance,
    build_su2,
    build_witten,
    commutator,
    diag_function,
    from_diagonal,
    identity,
    psd_sqrt,
    r_commutator,
    residual,
    zero,
)

TOL = Tolerance()


def random_operator(rng, dim):
    return Operator(rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))


complex_matrices = st.integers(min_value=0, max_value=2**32 - 1).map(
    lambda seed: random_operator(np.random.default_rng(seed), 4)
)


class TestOperator:
    def test_entries_are_square_and_counted(self):
        op = Operator(np.ones((3, 3)))
        assert op.dim == 3
        assert op.mat.size == op.dim**2

    def test_rejects_non_square(self):
        with pytest.raises(ShapeError):
            Operator(np.ones((2, 3)))

    def test_entries_read_only(self):
        op = identity(2)
        with pytest.raises(ValueError):
            op.mat[0, 0] = 5.0

    def test_adjoint_involution_exact(self):
        rng = np.random.default_rng(7)
        op = random_operator(rng, 5)
        assert np.array_equal(op.adjoint().adjoint().mat, op.mat)

    def test_shape_mismatch_raises(self):
        with pytest.raises(ShapeError):
            identity(2) @ identity(3)
        with pytest.raises(ShapeError):
            residual(identity(2), identity(3))


class TestTolerance:
    def test_scales_with_dim(self):
        assert Tolerance(1e-12).for_dim(6) == pytest.approx(6e-12)
        assert Tolerance(1e-12, scale_with_dim=False).for_dim(6) == 1e-12

    def test_rejects_negative(self):
        with pytest.raises(ParameterError):
            Tolerance(-1e-3)


class TestCommutator:
    def test_spin_half_ladder_pair(self):
        rep = build_su2("1/2")
        expected = np.diag([-1.0, 1.0]).astype(complex)
        assert np.allclose(commutator(rep.Jp, rep.Jm).mat, expected, atol=1e-15)

    def test_identity_commutes(self):
        rep = build_su2(1)
        assert residual(commutator(identity(3), rep.Jp), zero(3)) == 0.0

    def test_j0_raises_jp_spin_one(self):
        # independent oracle: explicit j=1 matrices multiplied with bare numpy
        s2 = np.sqrt(2.0)
        jp = np.array([[0, 0, 0], [s2, 0, 0], [0, s2, 0]], dtype=complex)
        j0 = np.diag([-1.0, 0.0, 1.0]).astype(complex)
        oracle = j0 @ jp - jp @ j0
        rep = build_su2(1)
        assert np.allclose(commutator(rep.J0, rep.Jp).mat, oracle, atol=1e-15)
        assert np.allclose(oracle, jp, atol=1e-15)

    @settings(max_examples=30, deadline=None)
    @given(complex_matrices, complex_matrices)
    def test_antisymmetry_exact(self, a, b):
        assert np.array_equal(commutator(a, b).mat, -commutator(b, a).mat)


class TestRCommutator:
    @settings(max_examples=30, deadline=None)
    @given(complex_matrices, complex_matrices)
    def test_r_one_reduces_to_commutator(self, a, b):
        assert np.array_equal(r_commutator(a, b, 1.0).mat, commutator(a, b).mat)

    def test_scalar_case(self):
        got = r_commutator(identity(2), identity(2), 2.0)
        assert np.allclose(got.mat, 1.5 * np.eye(2), atol=1e-15)

    def test_zero_r_rejected(self):
        with pytest.raises(ParameterError):
            r_commutator(identity(2), identity(2), 0.0)

    def test_witten_defining_relation(self):
        gens = build_witten(1, 1.2)
        assert residual(r_commutator(gens.W0, gens.Wp, 1.2), gens.Wp) < TOL.for_dim(3)


class TestDiagFunction:
    def test_identity_map(self):
        rep = build_su2(1)
        assert residual(diag_function(lambda x: x, rep.J0), rep.J0) == 0.0

    def test_quadratic_on_spin_half(self):
        rep = build_su2("1/2")
        got = diag_function(lambda x: x * (x + 1.0), rep.J0)
        assert np.allclose(got.mat, np.diag([-0.25, 0.75]), atol=1e-15)

    def test_power_weights_spin_one(self):
        rep = build_su2(1)
        got = diag_function(lambda x: 1.2 ** (-2.0 * x), rep.J0)
        assert np.allclose(got.mat, np.diag([36 / 25, 1.0, 25 / 36]), atol=1e-15)

    def test_rejects_non_diagonal(self):
        rep = build_su2(1)
        with pytest.raises(NotDiagonalError):
            diag_function(lambda x: x, rep.Jp)


class TestPsdSqrt:
    def test_diagonal_case(self):
        got = psd_sqrt(from_diagonal([4.0, 9.0]))
        assert np.allclose(got.mat, np.diag([2.0, 3.0]), atol=1e-14)

    def test_ladder_modulus_spin_one(self):
        rep = build_su2(1)
        got = psd_sqrt(rep.Jp @ rep.Jm)
        assert np.allclose(got.mat, np.diag([0.0, np.sqrt(2), np.sqrt(2)]), atol=1e-14)

    def test_zero_operator(self):
        assert residual(psd_sqrt(zero(3)), zero(3)) == 0.0

    @settings(max_examples=25, deadline=None)
    @given(complex_matrices)
    def test_square_roundtrip(self, b):
        a = b.adjoint() @ b
        root = psd_sqrt(a)
        assert residual(root @ root, a) < 1e-10

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(NotPSDError):
            psd_sqrt(from_diagonal([1.0, -0.5]))

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotPSDError):
            psd_sqrt(build_su2(1).Jp)

    def test_clamps_tiny_negative(self):
        got = psd_sqrt(from_diagonal([1.0, -1e-14]))
        assert np.allclose(got.mat, np.diag([1.0, 0.0]), atol=1e-7)


class TestResidual:
    def test_equal_operators(self):
        rep = build_su2(2)
        assert residual(rep.Jp, rep.Jp) == 0.0

    def test_identity_vs_zero(self):
        assert residual(identity(2), zero(2)) == pytest.approx(np.sqrt(2.0))

    def test_ladder_identity_high_spin(self):
        rep = build_su2("5/2")
        assert residual(commutator(rep.Jp, rep.Jm), 2.0 * rep.J0) < 1e-12 * 6
