import numpy as np
import pytest
from hypothesis import strategies as st

from scatter1d.potential import DeltaPotential, GridPotential, LayerPotential

finite = dict(allow_nan=False, allow_infinity=False)

# PASS/FAIL lines from the acceptance suite, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def complex_numbers(draw, max_abs=3.0):
    r = draw(st.floats(0, max_abs, **finite))
    phi = draw(st.floats(0, 2 * np.pi, **finite))
    return complex(r * np.cos(phi), r * np.sin(phi))


@st.composite
def delta_potentials(draw, max_n=4, real=False):
    n = draw(st.integers(1, max_n))
    xs = draw(st.lists(st.floats(-3, 3, **finite), min_size=n, max_size=n, unique=True))
    gs = [draw(complex_numbers()) for _ in range(n)]
    if real:
        gs = [g.real for g in gs]
    return DeltaPotential(tuple(zip(xs, gs)))


@st.composite
def layer_potentials(draw, max_n=3, real=False):
    n = draw(st.integers(1, max_n))
    edges = sorted(draw(st.lists(st.floats(-3, 3, **finite), min_size=2 * n, max_size=2 * n, unique=True)))
    vals = [draw(complex_numbers()) for _ in range(n)]
    if real:
        vals = [v.real for v in vals]
    items = [(edges[2 * i], edges[2 * i + 1], vals[i]) for i in range(n) if edges[2 * i + 1] - edges[2 * i] > 1e-3]
    if not items:
        items = [(0.0, 1.0, vals[0])]
    return LayerPotential(tuple(items))


def random_deltas(rng, n=None, real=False, max_abs=3.0):
    n = n or rng.integers(1, 5)
    xs = rng.uniform(-3, 3, n)
    gs = rng.uniform(0, max_abs, n) * np.exp(2j * np.pi * rng.uniform(size=n))
    if real:
        gs = gs.real
    return DeltaPotential(tuple(zip(xs, gs)))


def random_layers(rng, n=None, real=False, max_abs=3.0):
    n = n or rng.integers(1, 4)
    edges = np.sort(rng.uniform(-3, 3, 2 * n))
    vals = rng.uniform(0, max_abs, n) * np.exp(2j * np.pi * rng.uniform(size=n))
    if real:
        vals = vals.real
    return LayerPotential(tuple((edges[2 * i], edges[2 * i + 1], vals[i]) for i in range(n)))


def random_pt_deltas(rng, max_abs=3.0):
    n = rng.integers(1, 3)
    xs = rng.uniform(0.1, 3, n)
    gs = rng.uniform(0, max_abs, n) * np.exp(2j * np.pi * rng.uniform(size=n))
    items = [(x, g) for x, g in zip(xs, gs)] + [(-x, np.conj(g)) for x, g in zip(xs, gs)]
    if rng.uniform() < 0.5:
        items.append((0.0, rng.uniform(-max_abs, max_abs)))
    return DeltaPotential(tuple(items))


def random_pt_layers(rng, max_abs=3.0):
    n = rng.integers(1, 3)
    edges = np.sort(rng.uniform(0.05, 3, 2 * n))
    vals = rng.uniform(0, max_abs, n) * np.exp(2j * np.pi * rng.uniform(size=n))
    items = []
    for i in range(n):
        a, b = edges[2 * i], edges[2 * i + 1]
        items += [(a, b, vals[i]), (-b, -a, np.conj(vals[i]))]
    return LayerPotential(tuple(items))


def random_grid(rng, n=41, x_min=-1.0, x_max=1.0, max_abs=2.0):
    vals = rng.uniform(0, max_abs, n) * np.exp(2j * np.pi * rng.uniform(size=n))
    return GridPotential(x_min, x_max, tuple(vals))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def pt_pair():
    def make(gamma, a=1.0):
        return DeltaPotential(((a, 1j * gamma), (-a, -1j * gamma)))

    return make
