"""Representation construction and the SU(2) defining identities."""

from fractions import Fraction

import numpy as np
import pytest

from spinphase import (
    BadSpinError,
    Tolerance,
    build_su2,
    casimir,
    commutator,
    parse_spin,
    residual,
)

TOL = Tolerance()
ALL_SPINS = [Fraction(k, 2) for k in range(1, 26)]  # 1/2 .. 25/2


class TestParseSpin:
    @pytest.mark.parametrize(
        "raw, expected",
        [("3/2", Fraction(3, 2)), ("0.5", Fraction(1, 2)), (2, Fraction(2)),
         (2.5, Fraction(5, 2)), (Fraction(7, 2), Fraction(7, 2))],
    )
    def test_accepts_half_integers(self, raw, expected):
        assert parse_spin(raw) == expected

    @pytest.mark.parametrize("raw", [0.4, "0.4", 0, -1, "-3/2", "abc", "1/3"])
    def test_rejects_non_half_integers(self, raw):
        with pytest.raises(BadSpinError):
            parse_spin(raw)


class TestBuildSu2:
    def test_spin_half_matrices(self):
        rep = build_su2("1/2")
        assert np.allclose(rep.Jp.mat, [[0, 0], [1, 0]], atol=1e-15)
        assert np.allclose(rep.J0.mat, np.diag([-0.5, 0.5]), atol=1e-15)

    def test_spin_one_elements(self):
        rep = build_su2(1)
        vals = [rep.Jp.mat[1, 0], rep.Jp.mat[2, 1]]
        assert np.allclose(vals, [np.sqrt(2), np.sqrt(2)], atol=1e-15)

    def test_lowering_is_exact_adjoint(self):
        rep = build_su2("7/2")
        assert np.array_equal(rep.Jm.mat, rep.Jp.mat.conj().T)

    def test_spin_half_ladder_identity(self):
        rep = build_su2("1/2")
        assert np.allclose(commutator(rep.Jp, rep.Jm).mat, np.diag([-1.0, 1.0]), atol=1e-15)

    @pytest.mark.parametrize("j", ALL_SPINS)
    def test_defining_relations(self, j):
        rep = build_su2(j)
        t = TOL.for_dim(rep.dim)
        assert residual(commutator(rep.J0, rep.Jp), rep.Jp) < t
        assert residual(commutator(rep.J0, rep.Jm), -1.0 * rep.Jm) < t
        assert residual(commutator(rep.Jp, rep.Jm), 2.0 * rep.J0) < t

    @pytest.mark.parametrize("j", ALL_SPINS)
    def test_edge_states_annihilated(self, j):
        rep = build_su2(j)
        top = np.zeros(rep.dim, dtype=complex)
        top[-1] = 1.0
        bottom = np.zeros(rep.dim, dtype=complex)
        bottom[0] = 1.0
        assert np.linalg.norm(rep.Jp.apply(top)) == 0.0
        assert np.linalg.norm(rep.Jm.apply(bottom)) == 0.0


class TestCasimir:
    def test_spin_half_scalar(self):
        c = casimir(build_su2("1/2"))
        assert np.allclose(c.mat, 0.75 * np.eye(2), atol=1e-15)

    def test_spin_one_scalar(self):
        c = casimir(build_su2(1))
        assert np.allclose(c.mat, 2.0 * np.eye(3), atol=1e-15)

    def test_orderings_agree(self):
        rep = build_su2("5/2")
        up = rep.Jm @ rep.Jp + rep.J0 @ rep.J0 + rep.J0
        down = rep.Jp @ rep.Jm + rep.J0 @ rep.J0 - rep.J0
        assert residual(up, down) < TOL.for_dim(rep.dim)

    @pytest.mark.parametrize("j", ALL_SPINS[:10])
    def test_commutes_with_generators(self, j):
        rep = build_su2(j)
        c = casimir(rep)
        t = TOL.for_dim(rep.dim)
        for gen in (rep.Jp, rep.Jm, rep.J0):
            assert residual(commutator(c, gen), 0.0 * c) < t
