"""Transfer matrices M(k): (A-, B-) -> (A+, B+) for plane waves e^{+-ikx}.

Delta and layer models use closed forms. Grids (and, on request, layers)
go through a fixed-step RK4 integration of two basis solutions.

Every constructor here also accepts a negative wavenumber through
:func:`transfer_at`. The result is then the transfer matrix of the problem
with k replaced by -k, expressed in the basis (e^{-ikx}, e^{ikx}); it is
stored with ``k = |k|`` and ``reversed=True``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .errors import (
    NonpositiveWavenumberError,
    SingularMatrixError,
    StepTooLargeError,
    WavenumberMismatchError,
)
from .potential import DeltaPotential, GridPotential, LayerPotential, Potential, max_abs

KAPPA_LIMIT = 1e-8
MAX_STEP_PHASE = 0.5


@dataclass(frozen=True)
class TransferMatrix:
    k: float
    m11: complex
    m12: complex
    m21: complex
    m22: complex
    reversed: bool = False

    def __post_init__(self):
        if self.det == 0:
            raise SingularMatrixError("transfer matrix has zero determinant")

    @classmethod
    def from_array(cls, k: float, arr, reversed: bool = False) -> TransferMatrix:
        a = np.asarray(arr, dtype=complex)
        return cls(k, complex(a[0, 0]), complex(a[0, 1]), complex(a[1, 0]), complex(a[1, 1]), reversed)

    @classmethod
    def identity(cls, k: float, reversed: bool = False) -> TransferMatrix:
        return cls(k, 1 + 0j, 0j, 0j, 1 + 0j, reversed)

    @property
    def array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=complex)

    @property
    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    @property
    def signed_k(self) -> float:
        return -self.k if self.reversed else self.k


class AsymptoticCoeffs(NamedTuple):
    a_minus: complex
    b_minus: complex
    a_plus: complex
    b_plus: complex


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed-step integrator settings; ``h=None`` picks :func:`default_step`."""

    h: float | None = None
    method: str = "rk4"

    def __post_init__(self):
        if self.method != "rk4":
            raise ValueError(f"unknown integration method {self.method!r}")
        if self.h is not None and not self.h > 0:
            raise ValueError("step size must be positive")


def _check_k(k: float) -> None:
    if not k > 0:
        raise NonpositiveWavenumberError(f"wavenumber must be positive, got {k}")


def _check_nonzero(k: float) -> None:
    if k == 0 or not math.isfinite(k):
        raise NonpositiveWavenumberError(f"wavenumber must be finite and nonzero, got {k}")


def _wrap(k: float, m11, m12, m21, m22) -> TransferMatrix:
    return TransferMatrix(abs(k), complex(m11), complex(m12), complex(m21), complex(m22), k < 0)


# --- closed forms ------------------------------------------------------------


def _delta_entries(g: complex, x0: float, k: float):
    a = 1j * g / (2 * k)
    ph = cmath.exp(2j * k * x0)
    return 1 - a, -a / ph, a * ph, 1 + a


def transfer_delta(g: complex, x0: float, k: float) -> TransferMatrix:
    """Transfer matrix of g*delta(x - x0); det M = 1 exactly."""
    _check_k(k)
    return _wrap(k, *_delta_entries(g, x0, k))


def interior_wavenumber(v0: complex, k: float) -> complex:
    """kappa = sqrt(k^2 - v0) on the branch Im kappa >= 0 (Re kappa >= 0 if real)."""
    kappa = cmath.sqrt(k * k - v0)
    if kappa.imag < 0 or (kappa.imag == 0 and kappa.real < 0):
        kappa = -kappa
    return kappa


def _layer_entries(v0: complex, a: float, b: float, k: float):
    width = b - a
    kappa = interior_wavenumber(v0, k)
    if abs(kappa) * width < KAPPA_LIMIT:
        # linear interior solutions alpha + beta x
        c, s_over, ks = 1.0, width, 0.0
    else:
        c = cmath.cos(kappa * width)
        s = cmath.sin(kappa * width)
        s_over, ks = s / kappa, kappa * s
    # propagator of (psi, psi') across the layer
    p11, p12, p21, p22 = c, s_over, -ks, c
    # M = W_k(b)^{-1} P W_k(a) with W_k(x) = [[e^{ikx}, e^{-ikx}], [ik e^{ikx}, -ik e^{-ikx}]]
    ea, eb = cmath.exp(1j * k * a), cmath.exp(1j * k * b)
    ik = 1j * k
    # columns of P W_k(a)
    q11 = (p11 + p12 * ik) * ea
    q21 = (p21 + p22 * ik) * ea
    q12 = (p11 - p12 * ik) / ea
    q22 = (p21 - p22 * ik) / ea
    # W_k(b)^{-1} = 1/(2ik) [[ik e^{-ikb}, e^{-ikb}], [ik e^{ikb}, -e^{ikb}]]
    m11 = (ik * q11 + q21) / (2 * ik * eb)
    m12 = (ik * q12 + q22) / (2 * ik * eb)
    m21 = (ik * q11 - q21) * eb / (2 * ik)
    m22 = (ik * q12 - q22) * eb / (2 * ik)
    return m11, m12, m21, m22


def transfer_layer(v0: complex, a: float, b: float, k: float) -> TransferMatrix:
    """Transfer matrix of a constant v0 on [a, b]."""
    _check_k(k)
    if not a < b:
        raise ValueError(f"layer edges must satisfy a < b, got [{a}, {b}]")
    return _wrap(k, *_layer_entries(v0, a, b, k))


def _product(mats) -> tuple:
    m11, m12, m21, m22 = 1 + 0j, 0j, 0j, 1 + 0j
    for n11, n12, n21, n22 in mats:
        m11, m12, m21, m22 = (
            n11 * m11 + n12 * m21,
            n11 * m12 + n12 * m22,
            n21 * m11 + n22 * m21,
            n21 * m12 + n22 * m22,
        )
    return m11, m12, m21, m22


def analytic_transfer(p: DeltaPotential | LayerPotential, k: float) -> TransferMatrix:
    """Closed-form M(k) of a delta or layer model; k may be negative."""
    _check_nonzero(k)
    if isinstance(p, DeltaPotential):
        parts = (_delta_entries(g, x, k) for x, g in p.items)
    elif isinstance(p, LayerPotential):
        parts = (_layer_entries(v, a, b, k) for a, b, v in p.items)
    else:
        raise TypeError("closed forms exist only for delta and layer models")
    return _wrap(k, *_product(parts))


# --- numerical integration ----------------------------------------------------


def default_step(p: Potential, k: float) -> float:
    return min(0.01, 0.1 / max(abs(k), 1.0), 0.1 / math.sqrt(max_abs(p) + 1.0))


def _segments(p: GridPotential | LayerPotential):
    """Yield (x0, x1, v0, v1): v is linear from v0 to v1 on [x0, x1]."""
    if isinstance(p, GridPotential):
        x = p.nodes
        v = p.values
        for i in range(len(x) - 1):
            yield x[i], x[i + 1], v[i], v[i + 1]
    else:
        prev = None
        for a, b, v in p.items:
            if prev is not None and a > prev:
                yield prev, a, 0j, 0j
            yield a, b, v, v
            prev = b


def _support(p: GridPotential | LayerPotential) -> tuple[float, float]:
    if isinstance(p, GridPotential):
        return p.x_min, p.x_max
    return p.support


def _plane_wave_state(k: float, x: float):
    e = cmath.exp(1j * k * x)
    # (psi1, dpsi1, psi2, dpsi2) for e^{ikx}, e^{-ikx}
    return [e, 1j * k * e, 1 / e, -1j * k / e]


def _integrate(p: GridPotential | LayerPotential, k: float, cfg: IntegratorConfig, record=None):
    if isinstance(p, DeltaPotential):
        raise TypeError("delta models are never integrated numerically")
    if isinstance(p, LayerPotential) and not p.items:
        return TransferMatrix.identity(abs(k), k < 0)
    h = cfg.h if cfg.h is not None else default_step(p, k)
    kappa_max = math.sqrt(abs(k * k) + max_abs(p))
    if h * max(abs(k), kappa_max) > MAX_STEP_PHASE:
        raise StepTooLargeError(f"h = {h} too large for k = {k} (h*max(|k|,|kappa|) > {MAX_STEP_PHASE})")

    k2 = k * k
    x_lo, x_hi = _support(p)
    y = _plane_wave_state(k, x_lo)
    if record is not None:
        record.append((x_lo, y[0] * y[3] - y[1] * y[2]))

    def rhs(q, v):
        c = v - k2
        return (q[1], c * q[0], q[3], c * q[2])

    for x0, x1, v0, v1 in _segments(p):
        n = max(1, math.ceil((x1 - x0) / h * (1 - 1e-12)))
        dx = (x1 - x0) / n
        dv = (v1 - v0) / n
        for j in range(n):
            va = v0 + dv * j
            vm = va + 0.5 * dv
            vb = va + dv
            k1 = rhs(y, va)
            k2_ = rhs([y[i] + 0.5 * dx * k1[i] for i in range(4)], vm)
            k3 = rhs([y[i] + 0.5 * dx * k2_[i] for i in range(4)], vm)
            k4 = rhs([y[i] + dx * k3[i] for i in range(4)], vb)
            y = [y[i] + dx / 6 * (k1[i] + 2 * k2_[i] + 2 * k3[i] + k4[i]) for i in range(4)]
            if record is not None:
                record.append((x0 + dx * (j + 1), y[0] * y[3] - y[1] * y[2]))

    # plane-wave matching at x_hi: (A, B) = W_k(x_hi)^{-1} (psi, psi')
    e = cmath.exp(1j * k * x_hi)
    ik = 1j * k

    def coeffs(psi, dpsi):
        return (ik * psi + dpsi) / (2 * ik * e), (ik * psi - dpsi) * e / (2 * ik)

    a1, b1 = coeffs(y[0], y[1])
    a2, b2 = coeffs(y[2], y[3])
    return _wrap(k, a1, a2, b1, b2)


def transfer_numeric(p: GridPotential | LayerPotential, k: float, cfg: IntegratorConfig | None = None) -> TransferMatrix:
    """Integrate two basis solutions across the support and assemble M column by column.

    The columns are the outgoing coefficients of the solutions that start as
    pure e^{ikx} and pure e^{-ikx} at the left edge. Grid nodes and layer
    edges are always step boundaries, so the integrator never steps across a
    kink or jump of v.
    """
    _check_k(k)
    return _integrate(p, k, cfg or IntegratorConfig())


def transfer_at(p: Potential, k: float, cfg: IntegratorConfig | None = None) -> TransferMatrix:
    """M at a signed wavenumber: closed form when available, integrator for grids."""
    _check_nonzero(k)
    if isinstance(p, GridPotential):
        return _integrate(p, k, cfg or IntegratorConfig())
    return analytic_transfer(p, k)


def wronskian_profile(p: GridPotential | LayerPotential, k: float, cfg: IntegratorConfig | None = None):
    """W[psi1, psi2](x) of the two integrator basis solutions at every step boundary."""
    _check_k(k)
    samples: list[tuple[float, complex]] = []
    _integrate(p, k, cfg or IntegratorConfig(), record=samples)
    return samples


# --- algebra ------------------------------------------------------------------


def compose(m_left: TransferMatrix, m_right: TransferMatrix) -> TransferMatrix:
    """Chain two scatterers: the left one acts first, so the result is m_right @ m_left.

    The caller guarantees that the left scatterer's support lies entirely to
    the left of the right one's.
    """
    if m_left.k != m_right.k or m_left.reversed != m_right.reversed:
        raise WavenumberMismatchError(f"cannot compose matrices at k={m_left.signed_k} and k={m_right.signed_k}")
    return TransferMatrix.from_array(m_left.k, m_right.array @ m_left.array, m_left.reversed)


def invert(m: TransferMatrix) -> TransferMatrix:
    d = m.det
    return replace(m, m11=m.m22 / d, m12=-m.m12 / d, m21=-m.m21 / d, m22=m.m11 / d)


def determinant(m: TransferMatrix) -> complex:
    return m.det


def apply(m: TransferMatrix, a_minus: complex, b_minus: complex) -> AsymptoticCoeffs:
    return AsymptoticCoeffs(
        complex(a_minus),
        complex(b_minus),
        m.m11 * a_minus + m.m12 * b_minus,
        m.m21 * a_minus + m.m22 * b_minus,
    )
