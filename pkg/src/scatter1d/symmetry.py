"""Wavenumber reversal, parity, time reversal and PT acting on M and on amplitudes."""

from __future__ import annotations

import enum
from dataclasses import replace
from typing import NamedTuple

import numpy as np

from .errors import DegenerateDError, SingularMatrixError
from .scattering import EPS_ZERO, ScatterAmplitudes, d_value
from .transfer import TransferMatrix

EPS_ANALYTIC = 1e-10
EPS_NUMERIC = 1e-6

SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)


class Transform(enum.Enum):
    REVERSE_K = "reverse_k"
    PARITY = "parity"
    TIME_REVERSAL = "time_reversal"
    PT = "pt"


def _swap(m: TransferMatrix, m11, m12, m21, m22, flip_k: bool = False) -> TransferMatrix:
    return replace(m, m11=m11, m12=m12, m21=m21, m22=m22, reversed=m.reversed ^ flip_k)


def transform_transfer(m: TransferMatrix, t: Transform) -> TransferMatrix:
    """ReverseK: s1 M s1; Parity: s1 M^-1 s1; TimeReversal: s1 M* s1; PT: (M^-1)*."""
    c = np.conj
    if t is Transform.REVERSE_K:
        return _swap(m, m.m22, m.m21, m.m12, m.m11, flip_k=True)
    if t is Transform.TIME_REVERSAL:
        return _swap(m, c(m.m22), c(m.m21), c(m.m12), c(m.m11))
    det = m.det
    if abs(det) <= EPS_ZERO:
        raise SingularMatrixError(f"|det M| = {abs(det):.3e}: cannot invert")
    if t is Transform.PARITY:
        return _swap(m, m.m11 / det, -m.m21 / det, -m.m12 / det, m.m22 / det)
    if t is Transform.PT:
        cd = c(det)
        return _swap(m, c(m.m22) / cd, -c(m.m12) / cd, -c(m.m21) / cd, c(m.m11) / cd)
    raise ValueError(f"unknown transform {t!r}")


def transform_amplitudes(a: ScatterAmplitudes, t: Transform, eps_zero: float = EPS_ZERO) -> ScatterAmplitudes:
    if t is Transform.PARITY:
        return replace(a, r_l=a.r_r, r_r=a.r_l, t_l=a.t_r, t_r=a.t_l)
    d = d_value(a)
    if abs(d) <= eps_zero:
        raise DegenerateDError(abs(d), eps_zero)
    if t is Transform.REVERSE_K:
        return replace(a, r_l=-a.r_r / d, r_r=-a.r_l / d, t_l=a.t_l / d, t_r=a.t_r / d, reversed=not a.reversed)
    dc = np.conj(d)
    c = np.conj
    if t is Transform.TIME_REVERSAL:
        return replace(a, r_l=-c(a.r_r) / dc, r_r=-c(a.r_l) / dc, t_l=c(a.t_l) / dc, t_r=c(a.t_r) / dc)
    if t is Transform.PT:
        return replace(a, r_l=-c(a.r_l) / dc, r_r=-c(a.r_r) / dc, t_l=c(a.t_r) / dc, t_r=c(a.t_l) / dc)
    raise ValueError(f"unknown transform {t!r}")


def is_time_reversal_invariant(m: TransferMatrix, eps: float = EPS_ANALYTIC) -> bool:
    """M* == s1 M s1 entrywise within eps."""
    arr = m.array
    return bool(np.max(np.abs(np.conj(arr) - SIGMA1 @ arr @ SIGMA1)) <= eps)


def is_pt_symmetric_system(m: TransferMatrix, eps: float = EPS_ANALYTIC) -> bool:
    """M* M == I entrywise within eps."""
    if abs(m.det) <= EPS_ZERO:
        raise SingularMatrixError(f"|det M| = {abs(m.det):.3e}")
    arr = m.array
    return bool(np.max(np.abs(np.conj(arr) @ arr - np.eye(2))) <= eps)


class SymmetryResiduals(NamedTuple):
    time_reversal: float  # |M11* - M22|
    pt: float  # |M11* - M22 / det M|


def derived_symmetry_relations(m: TransferMatrix) -> SymmetryResiduals:
    m11c = np.conj(m.m11)
    return SymmetryResiduals(float(abs(m11c - m.m22)), float(abs(m11c - m.m22 / m.det)))
