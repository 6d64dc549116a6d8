"""Unitary phase operator of the ladder polar decomposition.

In the ascending-m basis the exponential phase operator is the cyclic shift
raising m by one step, with a single corner element exp(i*(2j+1)*theta0)
closing the cycle from the top state back to the bottom.  theta0 is the
reference angle fixing the phase window [theta0, theta0 + 2*pi).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .operators import (
    DEFAULT_TOL,
    Operator,
    Tolerance,
    commutator,
    matrix_unit,
    psd_sqrt,
    residual,
)
from .report import CheckReport
from .su2 import Su2Rep, build_su2, parse_spin

__all__ = [
    "PhaseOperator",
    "build_phase_operator",
    "polar_decompose",
    "phase_number_commutator_residual",
    "phase_recovery_ambiguity",
]


@dataclass(frozen=True)
class PhaseOperator:
    """The unitary exp(i*phi) together with its reference angle."""

    dim: int
    theta0: float
    U: Operator

    @property
    def corner_phase(self) -> complex:
        return complex(np.exp(1j * self.dim * self.theta0))

    def adjoint(self) -> Operator:
        """exp(-i*phi); phi is hermitian, so this is just U-dagger."""
        return self.U.adjoint()


def build_phase_operator(j: float | int | str | Fraction, theta0: float = 0.0) -> PhaseOperator:
    """Cyclic-shift unitary with corner phase exp(i*(2j+1)*theta0)."""
    jf = parse_spin(j)
    dim = int(jf * 2) + 1
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for i in range(dim - 1):
        mat[i + 1, i] = 1.0
    mat[0, dim - 1] = np.exp(1j * dim * theta0)
    return PhaseOperator(dim, float(theta0), Operator(mat, "exp(i*phi)"))


def polar_decompose(
    rep: Su2Rep, theta0: float = 0.0, tol: Tolerance = DEFAULT_TOL
) -> tuple[Operator, Operator, PhaseOperator]:
    """Factor the ladder pair as J+ = sqrt(J+J-) U = U sqrt(J-J+).

    Returns (sqrt(J+J-), sqrt(J-J+), phase).  All four reconstructions of
    J+ and J- are verified; the corner element of U always multiplies a zero
    modulus entry, so the result does not depend on theta0.
    """
    phase = build_phase_operator(rep.j, theta0)
    mod_p = psd_sqrt(rep.Jp @ rep.Jm, tol).relabel("sqrt(J+J-)")
    mod_m = psd_sqrt(rep.Jm @ rep.Jp, tol).relabel("sqrt(J-J+)")
    u = phase.U
    udag = phase.adjoint()
    t = tol.for_dim(rep.dim)
    worst = max(
        residual(mod_p @ u, rep.Jp),
        residual(u @ mod_m, rep.Jp),
        residual(mod_m @ udag, rep.Jm),
        residual(udag @ mod_p, rep.Jm),
    )
    if worst > t:
        raise ArithmeticError(f"polar reconstruction failed: residual {worst:.3e}")
    return mod_p, mod_m, phase


def _commutator_rhs(phase: PhaseOperator, sign: int) -> Operator:
    """Analytic form of [exp(+-i*phi), J0] (hbar = 1).

    For the upper sign: -U + (2j+1) exp(i(2j+1)theta0) |-j><j|; the lower
    sign is the adjoint-conjugated mirror with |j><-j|.
    """
    dim = phase.dim
    if sign > 0:
        corner = matrix_unit(dim, 0, dim - 1, dim * phase.corner_phase)
        return corner - phase.U
    corner = matrix_unit(dim, dim - 1, 0, dim * np.conj(phase.corner_phase))
    return -1.0 * (corner - phase.adjoint())


def phase_number_commutator_residual(
    j: float | int | str | Fraction, theta0: float = 0.0
) -> float:
    """Max residual of [exp(+-i*phi), J0] against its closed form."""
    rep = build_su2(j)
    phase = build_phase_operator(j, theta0)
    res_plus = residual(commutator(phase.U, rep.J0), _commutator_rhs(phase, +1))
    res_minus = residual(commutator(phase.adjoint(), rep.J0), _commutator_rhs(phase, -1))
    return max(res_plus, res_minus)


def phase_recovery_ambiguity(
    j: float | int | str | Fraction,
    theta0: float = 0.0,
    tol: Tolerance = DEFAULT_TOL,
) -> CheckReport:
    """Show that pinv(sqrt(J+J-)) J+ recovers exp(i*phi) except at the corner.

    The modulus sqrt(J+J-) has a zero eigenvalue at the bottom state, so the
    pseudo-inverse kills exactly the row holding the corner element: the
    reference-angle information is unrecoverable from the ladder operator.
    """
    rep = build_su2(j)
    phase = build_phase_operator(j, theta0)
    dim = rep.dim
    t = tol.for_dim(dim)

    mod_p = psd_sqrt(rep.Jp @ rep.Jm, tol)
    evals, evecs = np.linalg.eigh(mod_p.mat)
    inv = np.where(evals > t, 1.0 / np.where(evals > t, evals, 1.0), 0.0)
    pinv = Operator((evecs * inv) @ evecs.conj().T)
    candidate = pinv @ rep.Jp

    diff = candidate.mat - phase.U.mat
    corner = diff[0, dim - 1]
    off_corner = diff.copy()
    off_corner[0, dim - 1] = 0.0

    report = CheckReport()
    report.add(
        "phase_recovery_off_corner",
        float(np.linalg.norm(off_corner)),
        t,
        detail="pinv(sqrt(J+J-))*J+ matches exp(i*phi) away from the corner",
        category="phase",
    )
    report.add(
        "phase_recovery_corner_lost",
        float(abs(corner)),
        0.5,
        detail=(
            f"undetermined element at (0, {dim - 1}): true value "
            f"exp(i*(2j+1)*theta0) = {phase.corner_phase!r} is not recovered"
        ),
        category="phase",
        mode="ge",
    )
    return report
