"""The standard (2j+1)-dimensional SU(2) representation.

Basis states are ordered by ascending magnetic quantum number, m = -j .. +j,
so index i corresponds to m = i - j.  With that ordering the raising operator
is strictly lower-triangular: <j,m+1| Jp |j,m> = sqrt((j-m)(j+m+1)).

The conventions [J0, J+-] = +-J+- and [J+, J-] = 2*J0 together with these
matrix elements form a consistent set; Jx/Jy normalizations are never needed
here and are deliberately not provided.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .operators import (
    DEFAULT_TOL,
    BadSpinError,
    Operator,
    Tolerance,
    commutator,
    from_diagonal,
    residual,
)

__all__ = ["Su2Rep", "parse_spin", "spin_str", "build_su2", "casimir"]


def parse_spin(j: float | int | str | Fraction) -> Fraction:
    """Normalize a spin given as Fraction, int, float, "p/q" or decimal text.

    Returns the exact half-integer as a Fraction; anything that is not a
    positive half-integer raises BadSpinError.
    """
    try:
        if isinstance(j, Fraction):
            frac = j
        elif isinstance(j, str):
            frac = Fraction(j.strip())
        elif isinstance(j, (int, np.integer)):
            frac = Fraction(int(j))
        else:
            frac = Fraction(float(j)).limit_denominator(2)
            if abs(float(frac) - float(j)) > 1e-9:
                raise BadSpinError(f"bad spin: {j!r} is not a half-integer")
    except (ValueError, ZeroDivisionError) as exc:
        raise BadSpinError(f"bad spin: cannot parse {j!r}") from exc
    if frac.denominator not in (1, 2) or frac <= 0:
        raise BadSpinError(f"bad spin: {j!r} is not a positive half-integer")
    return frac


def spin_str(j: Fraction) -> str:
    return str(j)


@dataclass(frozen=True)
class Su2Rep:
    """The triple (J+, J-, J0) at spin j, ascending-m basis."""

    twoj: int
    Jp: Operator
    Jm: Operator
    J0: Operator

    @property
    def j(self) -> Fraction:
        return Fraction(self.twoj, 2)

    @property
    def dim(self) -> int:
        return self.twoj + 1

    def m_values(self) -> np.ndarray:
        j = self.twoj / 2.0
        return np.array([-j + i for i in range(self.dim)])

    @property
    def casimir_value(self) -> float:
        j = self.twoj / 2.0
        return j * (j + 1.0)


def build_su2(j: float | int | str | Fraction) -> Su2Rep:
    """Construct the irreducible representation at spin j."""
    jf = parse_spin(j)
    twoj = int(jf * 2)
    dim = twoj + 1
    jv = float(jf)
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for i in range(dim - 1):
        m = -jv + i
        mat[i + 1, i] = np.sqrt((jv - m) * (jv + m + 1.0))
    jp = Operator(mat, "J+")
    jm = jp.adjoint().relabel("J-")
    j0 = from_diagonal([-jv + i for i in range(dim)], "J0")
    return Su2Rep(twoj, jp, jm, j0)


def casimir(rep: Su2Rep, tol: Tolerance = DEFAULT_TOL) -> Operator:
    """J-J+ + J0(J0+1); verified against the other ordering and j(j+1)*I."""
    c_up = rep.Jm @ rep.Jp + rep.J0 @ rep.J0 + rep.J0
    c_down = rep.Jp @ rep.Jm + rep.J0 @ rep.J0 - rep.J0
    t = tol.for_dim(rep.dim)
    scalar = from_diagonal([rep.casimir_value] * rep.dim)
    if residual(c_up, c_down) > t or residual(c_up, scalar) > t:
        raise ArithmeticError("casimir orderings disagree; representation is corrupt")
    return c_up.relabel("C")


def _ladder_check(rep: Su2Rep, tol: Tolerance = DEFAULT_TOL) -> float:
    """Worst residual over the defining relations; used by tests."""
    t1 = residual(commutator(rep.J0, rep.Jp), rep.Jp)
    t2 = residual(commutator(rep.J0, rep.Jm), -1.0 * rep.Jm)
    t3 = residual(commutator(rep.Jp, rep.Jm), 2.0 * rep.J0)
    return max(t1, t2, t3)
