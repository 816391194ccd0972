import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complex_numbers, delta_potentials
from oracles import delta_amplitudes_closed_form, matching_transfer_deltas
from scatter1d import scattering as sc
from scatter1d import transfer as tr
from scatter1d.errors import SpectralSingularityError, ZeroTransmissionError
from scatter1d.scattering import ScatterAmplitudes
from scatter1d.transfer import TransferMatrix

FREE = ScatterAmplitudes(1.0, 0, 0, 1, 1)

# delta g = 2 at the origin, k = 1, from the matching conditions
T_DELTA = (1 - 1j) / 2
R_DELTA = (-1 - 1j) / 2
D_DELTA = -1j  # T^2 - R^l R^r = -i/2 - i/2


def _oracle_amplitudes(m):
    """Solve the two scattering setups as linear systems in the unknown amplitudes."""
    lhs = np.array([[m[0, 1], -1], [m[1, 1], 0]])
    # left incidence: M (1, R^l) = (T^l, 0)
    r_l, t_l = np.linalg.solve(lhs, [-m[0, 0], -m[1, 0]])
    # right incidence: M (0, T^r) = (R^r, 1)
    t_r, r_r = np.linalg.solve(lhs, [0, 1])
    return r_l, r_r, t_l, t_r


class TestAmplitudes:
    def test_free(self):
        a = sc.amplitudes_from_transfer(TransferMatrix.identity(1.0))
        assert a.as_tuple() == (0, 0, 1, 1)

    def test_delta_frozen(self):
        a = sc.amplitudes_from_transfer(tr.transfer_delta(2, 0, 1))
        assert a.t_r == pytest.approx(T_DELTA, abs=1e-15)
        assert a.t_l == pytest.approx(T_DELTA, abs=1e-15)
        assert a.r_l == pytest.approx(R_DELTA, abs=1e-15)
        assert a.r_r == pytest.approx(R_DELTA, abs=1e-15)
        assert abs(a.r_l) ** 2 + abs(a.t_l) ** 2 == pytest.approx(1, abs=1e-15)

    @given(complex_numbers(), st.floats(0.1, 5))
    def test_delta_closed_form(self, g, k):
        a = sc.amplitudes_from_transfer(tr.transfer_delta(g, 0, k))
        r, t = delta_amplitudes_closed_form(g, k)
        assert a.r_l == pytest.approx(r, abs=1e-12) and a.r_r == pytest.approx(r, abs=1e-12)
        assert a.t_l == pytest.approx(t, abs=1e-12) and a.t_r == pytest.approx(t, abs=1e-12)

    def test_unit_det_gives_reciprocity(self, rng):
        for _ in range(20):
            arr = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            arr /= np.sqrt(np.linalg.det(arr))
            a = sc.amplitudes_from_transfer(TransferMatrix.from_array(1.0, arr))
            assert a.t_l == pytest.approx(a.t_r, abs=1e-12)

    def test_spectral_singularity_guard(self):
        # g = 2ik makes M22 = 1 + ig/2k vanish
        with pytest.raises(SpectralSingularityError) as info:
            sc.amplitudes_from_transfer(tr.transfer_delta(2j, 0, 1))
        assert info.value.m22_abs == 0
        near = tr.transfer_delta(2j * (1 - 1e-12), 0, 1)
        with pytest.raises(SpectralSingularityError) as info:
            sc.amplitudes_from_transfer(near)
        assert 0 < info.value.m22_abs <= 1e-10

    @given(delta_potentials(), st.floats(0.2, 5))
    @settings(max_examples=50)
    def test_against_matching_oracle(self, p, k):
        m = matching_transfer_deltas(list(p.items), k)
        if abs(m[1, 1]) < 1e-6:
            return
        a = sc.amplitudes_from_transfer(tr.analytic_transfer(p, k))
        np.testing.assert_allclose(a.as_tuple(), _oracle_amplitudes(m), rtol=1e-9, atol=1e-9)


class TestInverseDictionary:
    def test_free(self):
        np.testing.assert_array_equal(sc.transfer_from_amplitudes(FREE).array, np.eye(2))

    def test_delta(self):
        a = ScatterAmplitudes(1.0, R_DELTA, R_DELTA, T_DELTA, T_DELTA)
        np.testing.assert_allclose(sc.transfer_from_amplitudes(a).array, [[1 - 1j, -1j], [1j, 1 + 1j]], atol=1e-15)

    @given(complex_numbers(), complex_numbers(), complex_numbers(), complex_numbers())
    def test_round_trip_amplitudes(self, r_l, r_r, t_l, t_r):
        a = ScatterAmplitudes(1.0, r_l, r_r, t_l, t_r)
        if abs(t_r) < 1e-3 or abs(t_l) < 1e-3:
            return
        back = sc.amplitudes_from_transfer(sc.transfer_from_amplitudes(a))
        np.testing.assert_allclose(back.as_tuple(), a.as_tuple(), rtol=1e-13, atol=1e-13)

    def test_round_trip_matrices(self, rng):
        for _ in range(50):
            arr = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            if abs(arr[1, 1]) < 1e-8:
                continue
            m = TransferMatrix.from_array(1.0, arr)
            back = sc.transfer_from_amplitudes(sc.amplitudes_from_transfer(m))
            np.testing.assert_allclose(back.array, arr, rtol=1e-13, atol=1e-13)

    def test_zero_transmission(self):
        with pytest.raises(ZeroTransmissionError):
            sc.transfer_from_amplitudes(ScatterAmplitudes(1.0, 1, 1, 0, 0))


class TestSMatrix:
    def test_free(self):
        np.testing.assert_array_equal(sc.smatrix_from_amplitudes(FREE).array, np.eye(2))

    def test_delta_det(self):
        a = sc.amplitudes_from_transfer(tr.transfer_delta(2, 0, 1))
        s = sc.smatrix_from_amplitudes(a)
        assert s.det == pytest.approx(D_DELTA, abs=1e-15)
        assert sc.d_value(a) == pytest.approx(D_DELTA, abs=1e-15)

    @given(complex_numbers(), complex_numbers(), complex_numbers(), complex_numbers())
    def test_det_s_equals_d(self, r_l, r_r, t_l, t_r):
        a = ScatterAmplitudes(1.0, r_l, r_r, t_l, t_r)
        assert abs(sc.smatrix_from_amplitudes(a).det - sc.d_value(a)) <= 1e-15

    def test_left_incidence_column(self):
        a = ScatterAmplitudes(1.0, 0.1, 0.2j, 0.3, 0.4)
        assert sc.smatrix_from_amplitudes(a).apply(1, 0) == (0.3, 0.1)

    def test_right_incidence_column_uses_t_r(self):
        # right incidence: (A-, B+) = (0, 1) -> (A+, B-) = (R^r, T^r)
        a = ScatterAmplitudes(1.0, 0.1, 0.2j, 0.3, 0.4)
        assert sc.smatrix_from_amplitudes(a).apply(0, 1) == (0.2j, 0.4)


class TestDValue:
    def test_free(self):
        assert sc.d_value(FREE) == 1

    @given(delta_potentials(real=True), st.floats(0.2, 5))
    @settings(max_examples=50)
    def test_real_potential_unit_modulus(self, p, k):
        assert abs(abs(sc.d_value(sc.amplitudes_from_transfer(tr.analytic_transfer(p, k)))) - 1) < 1e-10

    @given(delta_potentials(), st.floats(0.2, 5))
    @settings(max_examples=50)
    def test_matrix_cross_check(self, p, k):
        m = tr.analytic_transfer(p, k)
        if abs(m.m22) < 1e-3:
            return
        d = sc.d_value(sc.amplitudes_from_transfer(m))
        assert d == pytest.approx(m.m11 / m.m22, rel=1e-10, abs=1e-12)


class TestJost:
    def test_free(self):
        right, left = sc.jost_coefficients(TransferMatrix.identity(1.0))
        # psi_- = e^{-ikx} and psi_+ = e^{ikx} everywhere
        assert right == (0, 1)
        assert left == (1, 0)

    def test_delta(self):
        right, _ = sc.jost_coefficients(tr.transfer_delta(2, 0, 1))
        assert right == pytest.approx((-1j, 1 + 1j))

    @given(complex_numbers(), st.floats(-2, 2), st.floats(0.2, 5))
    def test_definition_by_transfer(self, g, x0, k):
        m = tr.transfer_delta(g, x0, k)
        right, left = sc.jost_coefficients(m)
        # psi_+ : M (left coeffs) must be pure e^{ikx}
        out = tr.apply(m, *left)
        assert (out.a_plus, out.b_plus) == pytest.approx((1, 0), abs=1e-12)
        out = tr.apply(m, 0, 1)
        assert (out.a_plus, out.b_plus) == pytest.approx(right, abs=1e-15)

    @given(complex_numbers(), st.floats(0.2, 5))
    def test_scattering_solutions(self, g, k):
        m = tr.transfer_delta(g, 0.4, k)
        if abs(m.m22) < 1e-6:
            return
        a = sc.amplitudes_from_transfer(m)
        right, left = sc.jost_coefficients(m)
        # psi_l = T^l psi_+ : (1, R^l) at -inf
        assert a.t_l * left[0] == pytest.approx(1, abs=1e-10)
        assert a.t_l * left[1] == pytest.approx(a.r_l, abs=1e-10)
        # psi_r = T^r psi_- : (R^r, 1) at +inf
        assert a.t_r * right[0] == pytest.approx(a.r_r, abs=1e-10)
        assert a.t_r * right[1] == pytest.approx(1, abs=1e-10)
