"""Real zeros of D(k) (coherent perfect absorption) and of M22(k) (spectral singularities).

D is complex on the real k-axis, so there is no sign change to bracket.
The search instead scans for small local minima of |f|, refines them with
golden-section search plus Gauss-Newton steps on |f|^2, and accepts a point
only when |f| falls below a threshold.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares, minimize

from .errors import BracketError, NonsingularMatrixError, NotConvergedError
from .potential import DeltaPotential, GridPotential, LayerPotential, Potential
from .scattering import ScatteringMatrix
from .transfer import IntegratorConfig, TransferMatrix, transfer_at

EPS_ACCEPT = 1e-8
EPS_ACCEPT_NUMERIC = 1e-5
COARSE_GATE = 0.1
INV_PHI = (math.sqrt(5) - 1) / 2


class Target(enum.Enum):
    CPA = "cpa"
    SS = "ss"


@dataclass(frozen=True)
class SpectralPoint:
    kind: Target
    k0: float
    residual: float
    mode: tuple[complex, complex] | None = None

    def to_dict(self) -> dict:
        out = {"kind": self.kind.value, "k0": self.k0, "residual": self.residual}
        if self.mode is not None:
            a, b = self.mode
            out["mode"] = {"a_minus": [a.real, a.imag], "b_plus": [b.real, b.imag]}
        return out


@dataclass(frozen=True)
class NoZero:
    """A refined minimum that stayed above the acceptance threshold."""

    k_min: float
    value: float


def _target_value(m: TransferMatrix, target: Target) -> complex:
    if target is Target.SS:
        return m.m22
    return m.m11 / m.m22


def target_function(p: Potential, target: Target, cfg: IntegratorConfig | None = None):
    """k -> D(k) for CPA, k -> M22(k) for spectral singularities."""
    cfg = cfg or IntegratorConfig()

    def f(k: float) -> complex:
        return _target_value(transfer_at(p, k, cfg), target)

    return f


def default_accept(p: Potential) -> float:
    return EPS_ACCEPT_NUMERIC if isinstance(p, GridPotential) else EPS_ACCEPT


def scan_minima(p: Potential, k_grid, target: Target, cfg: IntegratorConfig | None = None, gate: float = COARSE_GATE):
    """Brackets (k[i-1], k[i+1]) around strict interior local minima of |f| below ``gate``."""
    k = np.asarray(k_grid, dtype=float)
    if k.ndim != 1 or k.size < 3:
        raise ValueError("k grid needs at least 3 points")
    if np.any(k <= 0) or np.any(np.diff(k) <= 0):
        raise ValueError("k grid must be strictly positive and increasing")
    f = target_function(p, target, cfg)
    vals = np.array([abs(f(ki)) for ki in k])
    out = []
    for i in range(1, k.size - 1):
        if vals[i] < vals[i - 1] and vals[i] < vals[i + 1] and vals[i] < gate:
            out.append((float(k[i - 1]), float(k[i + 1])))
    return out


def golden_section(fun, lo: float, hi: float, tol: float = 1e-12, max_iter: int = 200) -> float:
    """Minimizer of a unimodal ``fun`` on [lo, hi]."""
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = fun(x1), fun(x2)
    for _ in range(max_iter):
        if hi - lo <= tol * max(1.0, abs(lo)):
            break
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = fun(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = fun(x2)
    return x1 if f1 < f2 else x2


def _gauss_newton(f, k: float, lo: float, hi: float, steps: int = 6) -> float:
    # minimize |f(k0) + f'(k0)(k - k0)|^2 over real k; f' by central differences
    best_k, best_v = k, abs(f(k))
    for _ in range(steps):
        h = 1e-6 * max(1.0, abs(k))
        fk = f(k)
        df = (f(k + h) - f(k - h)) / (2 * h)
        if df == 0:
            break
        k_new = min(max(k - (np.conj(df) * fk).real / abs(df) ** 2, lo), hi)
        v = abs(f(k_new))
        if v < best_v:
            best_k, best_v = k_new, v
        if abs(k_new - k) <= 1e-15 * max(1.0, abs(k)):
            break
        k = k_new
    return best_k


def refine_zero(
    p: Potential,
    bracket: tuple[float, float],
    target: Target,
    cfg: IntegratorConfig | None = None,
    eps_accept: float | None = None,
) -> SpectralPoint | NoZero:
    lo, hi = bracket
    if not (0 < lo < hi and math.isfinite(hi)):
        raise BracketError(f"invalid bracket ({lo}, {hi})")
    eps_accept = default_accept(p) if eps_accept is None else eps_accept
    f = target_function(p, target, cfg)
    k_gs = golden_section(lambda k: abs(f(k)) ** 2, lo, hi, tol=1e-10)
    k0 = _gauss_newton(f, k_gs, lo, hi)
    value = abs(f(k0))
    if value > eps_accept:
        return NoZero(float(k0), float(value))
    mode = None
    if target is Target.CPA:
        mode = cpa_mode(smatrix_at(p, k0, cfg), eps_accept=eps_accept)
    return SpectralPoint(target, float(k0), float(value), mode)


def smatrix_at(p: Potential, k: float, cfg: IntegratorConfig | None = None) -> ScatteringMatrix:
    """S(k) from the transfer matrix, without the spectral-singularity guard."""
    m = transfer_at(p, k, cfg or IntegratorConfig())
    t_r = 1 / m.m22
    return ScatteringMatrix(k, m.det * t_r, m.m12 * t_r, -m.m21 * t_r, t_r)


def cpa_mode(s: ScatteringMatrix, eps_accept: float = EPS_ACCEPT) -> tuple[complex, complex]:
    """Unit null vector (A0-, B0+) of a singular 2x2 S, in closed form."""
    if abs(s.det) > eps_accept:
        raise NonsingularMatrixError(f"|det S| = {abs(s.det):.3e} > {eps_accept:.1e}")
    # (s12, -s11) and (s22, -s21) both annihilate S up to det S; take the longer one
    cand = [(s.s12, -s.s11), (s.s22, -s.s21)]
    v = max(cand, key=lambda c: abs(c[0]) ** 2 + abs(c[1]) ** 2)
    norm = math.hypot(abs(v[0]), abs(v[1]))
    if norm == 0:
        # S vanishes identically: every vector is null
        return 1 + 0j, 0j
    return complex(v[0] / norm), complex(v[1] / norm)


def find_points(
    p: Potential,
    k_grid,
    target: Target,
    cfg: IntegratorConfig | None = None,
    eps_accept: float | None = None,
) -> list[SpectralPoint]:
    """Scan + refine pipeline; returns accepted points in increasing k."""
    points = []
    for bracket in scan_minima(p, k_grid, target, cfg):
        res = refine_zero(p, bracket, target, cfg, eps_accept)
        if isinstance(res, SpectralPoint):
            points.append(res)
    return sorted(points, key=lambda pt: pt.k0)


# --- CPA design ----------------------------------------------------------------


@dataclass(frozen=True)
class PotentialTemplate:
    """A delta or layer model whose couplings/values are the free parameters."""

    base: DeltaPotential | LayerPotential
    real_only: bool = False

    def __post_init__(self):
        if isinstance(self.base, GridPotential):
            raise TypeError("templates must be delta or layer models")
        if not 1 <= len(self.base.items) <= 4:
            raise ValueError("template needs between 1 and 4 free complex parameters")

    @property
    def n_params(self) -> int:
        return len(self.base.items)

    def initial(self) -> np.ndarray:
        vals = [it[-1] for it in self.base.items]
        return np.array(vals, dtype=complex)

    def build(self, values) -> DeltaPotential | LayerPotential:
        if isinstance(self.base, DeltaPotential):
            return DeltaPotential(tuple((x, complex(v)) for (x, _), v in zip(self.base.items, values)))
        return LayerPotential(tuple((a, b, complex(v)) for (a, b, _), v in zip(self.base.items, values)))

    def unpack(self, x: np.ndarray) -> np.ndarray:
        if self.real_only:
            return x.astype(complex)
        return x[: self.n_params] + 1j * x[self.n_params :]

    def pack(self, z: np.ndarray) -> np.ndarray:
        if self.real_only:
            return z.real.copy()
        return np.concatenate([z.real, z.imag])


@dataclass(frozen=True)
class DesignResult:
    potential: DeltaPotential | LayerPotential
    d_abs: float
    seed_index: int


def design_cpa(
    template: PotentialTemplate,
    k_target: float,
    seed: int = 0,
    restarts: int = 8,
    eps_accept: float = EPS_ACCEPT,
    scale: float = 1.5,
) -> DesignResult:
    """Tune the template parameters until |D(k_target)| < eps_accept.

    Each start runs Nelder-Mead on |D|^2 and then a least-squares polish on
    (Re D, Im D). The first start is the template itself; the others are
    drawn from a seeded normal distribution.
    """
    if not k_target > 0:
        raise ValueError("k_target must be positive")
    rng = np.random.default_rng(seed)

    def d_of(x):
        m = transfer_at(template.build(template.unpack(x)), k_target)
        return m.m11 / m.m22

    def objective(x):
        try:
            return abs(d_of(x)) ** 2
        except (ArithmeticError, ValueError):
            return np.inf

    def resid(x):
        try:
            d = d_of(x)
        except (ArithmeticError, ValueError):
            return np.array([1e6, 1e6])
        return np.array([d.real, d.imag])

    best = (np.inf, None, -1)
    x0 = template.pack(template.initial())
    for i in range(restarts):
        if i > 0:
            x0 = rng.normal(scale=scale, size=x0.size)
        nm = minimize(objective, x0, method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-30, "maxiter": 4000})
        x = nm.x
        if np.isfinite(nm.fun):
            ls = least_squares(resid, x, method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15)
            if objective(ls.x) < objective(x):
                x = ls.x
        value = math.sqrt(objective(x))
        if value < best[0]:
            best = (value, x, i)
        if value < eps_accept:
            break

    value, x, idx = best
    found = template.build(template.unpack(x)) if x is not None else None
    if not value < eps_accept:
        raise NotConvergedError(
            f"best |D({k_target})| = {value:.3e} after {restarts} starts (needed < {eps_accept:.1e})",
            best=found,
            value=value,
        )
    return DesignResult(found, value, idx)
