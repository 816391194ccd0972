import numpy as np
import pytest

from conftest import random_deltas, random_layers, random_pt_deltas, random_pt_layers
from scatter1d import identities as idt
from scatter1d import spectral as sp
from scatter1d import transfer as tr
from scatter1d.errors import BracketError, NonsingularMatrixError, NotConvergedError
from scatter1d.potential import DeltaPotential, GridPotential, LayerPotential
from scatter1d.scattering import ScatteringMatrix
from scatter1d.spectral import NoZero, PotentialTemplate, SpectralPoint, Target


@pytest.fixture(scope="module")
def designed():
    template = PotentialTemplate(DeltaPotential(((-1.0, 0.5 + 0.5j), (1.0, 0.5 - 0.5j))))
    return sp.design_cpa(template, 1.0, seed=3)


def dense_min(f, lo, hi, n=200_001):
    ks = np.linspace(lo, hi, n)
    vals = np.array([abs(f(k)) for k in ks])
    i = int(np.argmin(vals))
    return ks[i], vals[i]


class TestScan:
    def test_real_delta_has_no_cpa(self):
        assert sp.scan_minima(DeltaPotential(((0.0, 2.0),)), np.linspace(0.2, 5, 100), Target.CPA) == []

    def test_free_has_no_ss(self):
        assert sp.scan_minima(DeltaPotential(()), np.linspace(0.2, 5, 50), Target.SS) == []

    def test_engineered_cpa_bracketed(self, designed):
        brackets = sp.scan_minima(designed.potential, np.linspace(0.5, 1.5, 101), Target.CPA)
        assert sum(lo < 1.0 < hi for lo, hi in brackets) == 1

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            sp.scan_minima(DeltaPotential(()), [0.5, 1.0], Target.CPA)
        with pytest.raises(ValueError):
            sp.scan_minima(DeltaPotential(()), [0.0, 0.5, 1.0], Target.CPA)


class TestRefine:
    def test_finds_designed_zero(self, designed):
        pt = sp.refine_zero(designed.potential, (0.9, 1.1), Target.CPA)
        assert isinstance(pt, SpectralPoint)
        assert pt.residual < 1e-8
        assert abs(pt.k0 - 1.0) < 1e-6

    def test_near_miss_reports_no_zero(self):
        # g = -i*gamma + eps puts a shallow minimum of |D| near k = gamma/2
        p = DeltaPotential(((0.0, -2j + 0.2),))
        f = sp.target_function(p, Target.CPA)
        k_ref, v_ref = dense_min(f, 0.5, 1.5)
        assert v_ref == pytest.approx(0.05, abs=0.005)
        res = sp.refine_zero(p, (0.5, 1.5), Target.CPA)
        assert isinstance(res, NoZero)
        assert res.value == pytest.approx(v_ref, abs=1e-9)
        assert res.k_min == pytest.approx(k_ref, abs=1e-4)

    @pytest.mark.parametrize("bracket", [(1.0, 1.0), (1.2, 1.0), (0.0, 1.0)])
    def test_bad_bracket(self, bracket):
        with pytest.raises(BracketError):
            sp.refine_zero(DeltaPotential(()), bracket, Target.CPA)

    def test_spectral_singularity(self):
        # g = 2ik0 makes M22 = 1 - k0/k
        p = DeltaPotential(((0.4, 2.6j),))
        pts = sp.find_points(p, np.linspace(0.5, 2, 31), Target.SS)
        assert len(pts) == 1
        assert pts[0].k0 == pytest.approx(1.3, abs=1e-12)
        assert pts[0].mode is None

    def test_time_reversed_pair(self):
        # the CPA of -2ik0 and the spectral singularity of +2ik0 sit at the same k0
        ks = np.linspace(0.5, 2, 31)
        cpa = sp.find_points(DeltaPotential(((0.0, -2.2j),)), ks, Target.CPA)
        ss = sp.find_points(DeltaPotential(((0.0, 2.2j),)), ks, Target.SS)
        assert cpa[0].k0 == pytest.approx(ss[0].k0, abs=1e-12) == pytest.approx(1.1)


class TestCpaMode:
    def test_explicit_null_space(self):
        assert sp.cpa_mode(ScatteringMatrix(1.0, 0, 0, 0, 1)) == (1, 0)

    def test_rank_one(self):
        v = sp.cpa_mode(ScatteringMatrix(1.0, 1, 1, 1, 1))
        assert v == pytest.approx((1 / np.sqrt(2), -1 / np.sqrt(2)))

    def test_nonsingular(self):
        with pytest.raises(NonsingularMatrixError):
            sp.cpa_mode(ScatteringMatrix(1.0, 1, 0, 0, 1))

    def test_engineered(self, designed):
        s = sp.smatrix_at(designed.potential, 1.0)
        v = np.array(sp.cpa_mode(s))
        assert np.linalg.norm(v) == pytest.approx(1)
        assert np.linalg.norm(s.array @ v) < 1e-7

    def test_rescaling_invariance(self, designed):
        s = sp.smatrix_at(designed.potential, 1.0)
        v = np.array(sp.cpa_mode(s))
        c = 0.3 - 2.1j
        scaled = ScatteringMatrix(1.0, *(c * s.array).ravel())
        w = np.array(sp.cpa_mode(scaled, eps_accept=1e-6))
        assert abs(abs(np.vdot(v, w)) - 1) < 1e-12


class TestDesign:
    def test_two_delta_template(self, designed):
        assert designed.d_abs < 1e-8
        m = tr.analytic_transfer(designed.potential, 1.0)
        assert abs(m.m11 / m.m22) < 1e-8

    def test_real_template_fails(self):
        template = PotentialTemplate(DeltaPotential(((-1.0, 0.5), (1.0, 1.5))), real_only=True)
        with pytest.raises(NotConvergedError) as info:
            sp.design_cpa(template, 1.0, restarts=3)
        assert info.value.value == pytest.approx(1, abs=1e-9)
        assert info.value.best is not None

    def test_report_marks_degenerate(self, designed):
        rep = idt.full_report(designed.potential, 1.0)
        assert rep.applicability["gen_rel_l"] == idt.DEGENERATE_D
        assert rep.residuals["gen_rel_1"] <= 1e-10 and rep.residuals["gen_rel_2"] <= 1e-10

    def test_deterministic(self):
        template = PotentialTemplate(DeltaPotential(((-1.0, 1.0), (1.0, 1.0))))
        a = sp.design_cpa(template, 1.7, seed=11)
        b = sp.design_cpa(template, 1.7, seed=11)
        assert a == b

    def test_template_size(self):
        with pytest.raises(ValueError):
            PotentialTemplate(DeltaPotential(tuple((float(i), 1.0) for i in range(5))))

    def test_layer_template_and_grid_cross_check(self):
        result = sp.design_cpa(PotentialTemplate(LayerPotential(((0.0, 1.0, 1 - 1j),))), 2.0, seed=1)
        (a, b, v), = result.potential.items
        grid = GridPotential(a, b, (v,) * 11)
        pts = sp.find_points(grid, np.linspace(1.5, 2.5, 21), Target.CPA, tr.IntegratorConfig(h=0.005))
        assert len(pts) == 1
        assert pts[0].k0 == pytest.approx(2.0, abs=1e-5)
        assert pts[0].residual <= sp.EPS_ACCEPT_NUMERIC


class TestCorpus:
    def test_no_zeros_for_symmetric_potentials(self, rng):
        ks = np.linspace(0.2, 5, 60)
        makers = [
            lambda: random_deltas(rng, real=True),
            lambda: random_layers(rng, real=True),
            lambda: random_pt_deltas(rng),
            lambda: random_pt_layers(rng),
        ]
        for make in makers:
            for _ in range(5):
                p = make()
                assert sp.find_points(p, ks, Target.CPA) == []
                f = sp.target_function(p, Target.CPA)
                assert min(abs(f(k)) for k in ks) > 0.5

    def test_halving_grid_keeps_zero(self, designed):
        coarse = sp.find_points(designed.potential, np.linspace(0.5, 1.5, 41), Target.CPA)
        fine = sp.find_points(designed.potential, np.linspace(0.5, 1.5, 81), Target.CPA)
        assert len(fine) >= len(coarse) >= 1
        for pt in coarse:
            assert min(abs(pt.k0 - q.k0) for q in fine) < 1e-8

    def test_serialization(self, designed):
        pt = sp.find_points(designed.potential, np.linspace(0.5, 1.5, 41), Target.CPA)[0]
        d = pt.to_dict()
        assert d["kind"] == "cpa" and set(d["mode"]) == {"a_minus", "b_plus"}
        assert len(d["mode"]["a_minus"]) == 2
