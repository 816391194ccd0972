"""Compactly supported potential models v(x) for -psi'' + v psi = k^2 psi.

Three models are provided: point interactions (``DeltaPotential``),
piecewise-constant slabs (``LayerPotential``) and uniformly sampled
profiles with linear interpolation (``GridPotential``).  Units follow the
Schrodinger equation above (hbar = 2m = 1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Union

import numpy as np

from .errors import DeltaEvaluationError

EPS_SYM_ANALYTIC = 1e-12
EPS_SYM_GRID = 1e-9


@dataclass(frozen=True)
class DeltaPotential:
    """v(x) = sum_j g_j delta(x - x_j).

    Coincident positions are merged by summing their couplings; the stored
    items are sorted by position.
    """

    items: tuple[tuple[float, complex], ...]

    def __post_init__(self):
        merged: dict[float, complex] = {}
        for x, g in self.items:
            x = float(x)
            if not np.isfinite(x) or not np.isfinite(complex(g)):
                raise ValueError(f"non-finite delta parameter ({x}, {g})")
            merged[x] = merged.get(x, 0j) + complex(g)
        object.__setattr__(self, "items", tuple(sorted(merged.items())))

    @property
    def positions(self) -> np.ndarray:
        return np.array([x for x, _ in self.items], dtype=float)

    @property
    def couplings(self) -> np.ndarray:
        return np.array([g for _, g in self.items], dtype=complex)


@dataclass(frozen=True)
class LayerPotential:
    """Piecewise-constant v(x): value v_i on [a_i, b_i], zero elsewhere."""

    items: tuple[tuple[float, float, complex], ...]

    def __post_init__(self):
        layers = sorted((float(a), float(b), complex(v)) for a, b, v in self.items)
        for a, b, v in layers:
            if not (np.isfinite(a) and np.isfinite(b) and np.isfinite(v)):
                raise ValueError(f"non-finite layer parameter ({a}, {b}, {v})")
            if not a < b:
                raise ValueError(f"layer edges must satisfy a < b, got [{a}, {b}]")
        for (_, b0, _), (a1, _, _) in zip(layers, layers[1:]):
            if a1 < b0:
                raise ValueError(f"overlapping layers at x = {a1}")
        object.__setattr__(self, "items", tuple(layers))

    @property
    def support(self) -> tuple[float, float]:
        return self.items[0][0], self.items[-1][1]


@dataclass(frozen=True)
class GridPotential:
    """Samples of v on a uniform grid over [x_min, x_max], zero outside."""

    x_min: float
    x_max: float
    samples: tuple[complex, ...]

    def __post_init__(self):
        samples = tuple(complex(s) for s in self.samples)
        object.__setattr__(self, "x_min", float(self.x_min))
        object.__setattr__(self, "x_max", float(self.x_max))
        object.__setattr__(self, "samples", samples)
        if len(samples) < 2:
            raise ValueError("grid potential needs at least 2 samples")
        if not (np.isfinite(self.x_min) and np.isfinite(self.x_max)) or not self.x_min < self.x_max:
            raise ValueError(f"grid window must satisfy x_min < x_max, got [{self.x_min}, {self.x_max}]")
        if not np.all(np.isfinite(samples)):
            raise ValueError("non-finite grid sample")

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, len(self.samples))

    @property
    def values(self) -> np.ndarray:
        return np.array(self.samples, dtype=complex)

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (len(self.samples) - 1)


Potential = Union[DeltaPotential, LayerPotential, GridPotential]


class SymmetryClass(NamedTuple):
    is_real: bool
    is_pt_symmetric: bool


class FaddeevCheck(NamedTuple):
    admissible: bool
    integral: float


def free_potential() -> DeltaPotential:
    return DeltaPotential(())


def check_faddeev(p: Potential) -> FaddeevCheck:
    """Evaluate the integral of (1 + |x|) |v(x)| and report admissibility.

    Exact for deltas and layers, trapezoidal on grids.
    """
    if isinstance(p, DeltaPotential):
        value = float(sum((1 + abs(x)) * abs(g) for x, g in p.items))
    elif isinstance(p, LayerPotential):
        value = 0.0
        for a, b, v in p.items:
            value += abs(v) * _int_one_plus_abs(a, b)
    else:
        x = p.nodes
        value = float(np.trapezoid((1 + np.abs(x)) * np.abs(p.values), x))
    return FaddeevCheck(bool(np.isfinite(value)), value)


def _int_one_plus_abs(a: float, b: float) -> float:
    # antiderivative of 1 + |x| is x + x|x|/2
    def prim(x):
        return x + 0.5 * x * abs(x)

    return prim(b) - prim(a)


def evaluate(p: Potential, x: float) -> complex:
    """Pointwise v(x). Grids interpolate linearly; zero outside the support."""
    if isinstance(p, DeltaPotential):
        raise DeltaEvaluationError("delta potentials have no pointwise value")
    if isinstance(p, LayerPotential):
        for a, b, v in p.items:
            if a <= x <= b:
                return v
        return 0j
    if x < p.x_min or x > p.x_max:
        return 0j
    vals = p.values
    return complex(np.interp(x, p.nodes, vals.real) + 1j * np.interp(x, p.nodes, vals.imag))


def max_abs(p: Potential) -> float:
    if isinstance(p, DeltaPotential):
        return float(np.max(np.abs(p.couplings), initial=0.0))
    if isinstance(p, LayerPotential):
        return max(abs(v) for _, _, v in p.items)
    return float(np.max(np.abs(p.values)))


def parity_reflect_conjugate(p: Potential) -> Potential:
    """Return the PT image x -> -x, v -> v*."""
    if isinstance(p, DeltaPotential):
        return DeltaPotential(tuple((-x, np.conj(g)) for x, g in p.items))
    if isinstance(p, LayerPotential):
        return LayerPotential(tuple((-b, -a, np.conj(v)) for a, b, v in p.items))
    return GridPotential(-p.x_max, -p.x_min, tuple(np.conj(p.values[::-1])))


def scale(p: Potential, factor: complex) -> Potential:
    if isinstance(p, DeltaPotential):
        return DeltaPotential(tuple((x, factor * g) for x, g in p.items))
    if isinstance(p, LayerPotential):
        return LayerPotential(tuple((a, b, factor * v) for a, b, v in p.items))
    return GridPotential(p.x_min, p.x_max, tuple(factor * p.values))


def symmetric_window(p: GridPotential) -> GridPotential:
    """Resample a grid onto [-L, L], L = max(|x_min|, |x_max|), zero padded.

    The original spacing is kept when the window lands on the node lattice,
    in which case the resampled model is identical to the input.
    """
    if p.x_min == -p.x_max:
        return p
    half = max(abs(p.x_min), abs(p.x_max))
    n_cells = 2 * half / p.spacing
    n = int(round(n_cells)) + 1
    x = np.linspace(-half, half, max(n, 2))
    vals = np.array([evaluate(p, xi) for xi in x])
    return GridPotential(-half, half, tuple(vals))


def classify_symmetry(p: Potential, eps_sym: float | None = None) -> SymmetryClass:
    """Flag realness and PT-symmetry v(-x)* = v(x) within ``eps_sym``.

    Deltas pair by mirrored positions, layers by mirrored intervals, grids by
    index reversal on a symmetric window.
    """
    if eps_sym is None:
        eps_sym = EPS_SYM_GRID if isinstance(p, GridPotential) else EPS_SYM_ANALYTIC

    if isinstance(p, DeltaPotential):
        vals = p.couplings
        is_real = bool(np.all(np.abs(vals.imag) <= eps_sym))
        x = p.positions
        is_pt = True
        for xi, g in p.items:
            # partner at -x_i: exact mirror first, else the nearest within float noise
            dist = np.abs(x + xi)
            j = int(np.argmin(dist))
            if dist[j] > eps_sym * max(1.0, abs(xi)) or abs(np.conj(vals[j]) - g) > eps_sym:
                is_pt = False
                break
        return SymmetryClass(is_real, is_pt)

    if isinstance(p, LayerPotential):
        is_real = all(abs(v.imag) <= eps_sym for _, _, v in p.items)
        mirrored = sorted(parity_reflect_conjugate(p).items, key=lambda t: t[0])
        is_pt = len(mirrored) == len(p.items) and all(
            abs(a - a2) <= eps_sym * max(1.0, abs(a))
            and abs(b - b2) <= eps_sym * max(1.0, abs(b))
            and abs(v - v2) <= eps_sym
            for (a, b, v), (a2, b2, v2) in zip(p.items, mirrored)
        )
        return SymmetryClass(is_real, is_pt)

    is_real = bool(np.all(np.abs(p.values.imag) <= eps_sym))
    sym = symmetric_window(p)
    vals = sym.values
    is_pt = bool(np.all(np.abs(np.conj(vals[::-1]) - vals) <= eps_sym))
    return SymmetryClass(is_real, is_pt)


# --- JSON potential-description files -------------------------------------


def to_dict(p: Potential) -> dict:
    if isinstance(p, DeltaPotential):
        return {
            "type": "deltas",
            "items": [{"x": x, "g_re": g.real, "g_im": g.imag} for x, g in p.items],
        }
    if isinstance(p, LayerPotential):
        return {
            "type": "layers",
            "items": [{"a": a, "b": b, "v_re": v.real, "v_im": v.imag} for a, b, v in p.items],
        }
    vals = p.values
    return {
        "type": "grid",
        "x_min": p.x_min,
        "x_max": p.x_max,
        "re": vals.real.tolist(),
        "im": vals.imag.tolist(),
    }


def from_dict(data: dict) -> Potential:
    kind = data.get("type")
    if kind == "deltas":
        return DeltaPotential(
            tuple((it["x"], complex(it.get("g_re", 0.0), it.get("g_im", 0.0))) for it in data["items"])
        )
    if kind == "layers":
        return LayerPotential(
            tuple(
                (it["a"], it["b"], complex(it.get("v_re", 0.0), it.get("v_im", 0.0)))
                for it in data["items"]
            )
        )
    if kind == "grid":
        re = list(data["re"])
        im = list(data.get("im", [0.0] * len(re)))
        if len(re) != len(im):
            raise ValueError("grid 're' and 'im' arrays differ in length")
        return GridPotential(data["x_min"], data["x_max"], tuple(complex(r, i) for r, i in zip(re, im)))
    raise ValueError(f"unknown potential type {kind!r}")


def dumps(p: Potential) -> str:
    return json.dumps(to_dict(p), indent=2)


def loads(text: str) -> Potential:
    return from_dict(json.loads(text))


def load(path: str | Path) -> Potential:
    return loads(Path(path).read_text())


def save(p: Potential, path: str | Path) -> None:
    Path(path).write_text(dumps(p) + "\n")
