"""Dictionaries between M(k), the amplitude quadruple, S(k) and D(k).

Incident-wave normalizations are fixed to one; they cancel in every
identity because the equations are linear.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularMatrixError, SpectralSingularityError, ZeroTransmissionError
from .transfer import TransferMatrix

EPS_ZERO = 1e-10


@dataclass(frozen=True)
class ScatterAmplitudes:
    k: float
    r_l: complex
    r_r: complex
    t_l: complex
    t_r: complex
    reversed: bool = False

    @property
    def signed_k(self) -> float:
        return -self.k if self.reversed else self.k

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return self.r_l, self.r_r, self.t_l, self.t_r


@dataclass(frozen=True)
class ScatteringMatrix:
    """S maps incoming (A-, B+) to outgoing (A+, B-)."""

    k: float
    s11: complex
    s12: complex
    s21: complex
    s22: complex

    @property
    def array(self) -> np.ndarray:
        return np.array([[self.s11, self.s12], [self.s21, self.s22]], dtype=complex)

    @property
    def det(self) -> complex:
        return self.s11 * self.s22 - self.s12 * self.s21

    def apply(self, a_minus: complex, b_plus: complex) -> tuple[complex, complex]:
        return self.s11 * a_minus + self.s12 * b_plus, self.s21 * a_minus + self.s22 * b_plus


def d_value(a: ScatterAmplitudes) -> complex:
    """D = T^l T^r - R^l R^r."""
    return a.t_l * a.t_r - a.r_l * a.r_r


def amplitudes_from_transfer(m: TransferMatrix, eps_zero: float = EPS_ZERO) -> ScatterAmplitudes:
    m22_abs = abs(m.m22)
    if m22_abs <= eps_zero:
        raise SpectralSingularityError(m.signed_k, m22_abs, eps_zero)
    return ScatterAmplitudes(
        m.k,
        r_l=-m.m21 / m.m22,
        r_r=m.m12 / m.m22,
        t_l=m.det / m.m22,
        t_r=1 / m.m22,
        reversed=m.reversed,
    )


def transfer_from_amplitudes(a: ScatterAmplitudes) -> TransferMatrix:
    if a.t_r == 0:
        raise ZeroTransmissionError("T^r = 0: no finite transfer matrix")
    return TransferMatrix(
        a.k,
        d_value(a) / a.t_r,
        a.r_r / a.t_r,
        -a.r_l / a.t_r,
        1 / a.t_r,
        a.reversed,
    )


def smatrix_from_amplitudes(a: ScatterAmplitudes) -> ScatteringMatrix:
    # S22 = T^r: the right-incident column; this is what makes det S = D
    return ScatteringMatrix(a.k, a.t_l, a.r_r, a.r_l, a.t_r)


def jost_coefficients(m: TransferMatrix):
    """Asymptotic plane-wave coefficients of the Jost solutions.

    Returns ``(psi_minus_right, psi_plus_left)``, each a pair of coefficients
    of (e^{ikx}, e^{-ikx}):

    * psi_- equals e^{-ikx} at x -> -inf, so at x -> +inf it carries
      M (0, 1)^T = (M12, M22);
    * psi_+ equals e^{ikx} at x -> +inf, so at x -> -inf it carries
      M^{-1} (1, 0)^T = (M22, -M21) / det M.
    """
    det = m.det
    if det == 0:
        raise SingularMatrixError("transfer matrix is singular")
    return (m.m12, m.m22), (m.m22 / det, -m.m21 / det)
