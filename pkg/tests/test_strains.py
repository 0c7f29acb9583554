import math

import numpy as np
import pytest

from corotate.kinematics import KinematicState, builtin_motions, state_at
from corotate.rates import PrimaryLaw, corotational_rate
from corotate.spins import green_naghdi, logarithmic, zaremba_jaumann
from corotate.strains import (positivity_sweep, scale_derivative,
                              scale_function, scale_function_mirror,
                              seth_hill, seth_hill_frechet,
                              strain_rate_pairing)
from corotate.tensors import apply_mandel, random_spd, sym

M_SET = (-2.0, -1.0, 0.0, 0.25, 0.5, 1.0, 2.0)


class TestSethHill:
    def test_identity_maps_to_zero(self):
        for m in M_SET:
            np.testing.assert_allclose(seth_hill(np.eye(3), m),
                                       np.zeros((3, 3)), atol=1e-15)

    def test_almansi_member(self, rng):
        B = random_spd(rng)
        want = 0.5 * (np.eye(3) - np.linalg.inv(B))
        np.testing.assert_allclose(seth_hill(B, -1.0), want, atol=1e-12)

    def test_hencky_member(self):
        B = np.diag([math.e ** 2, 1.0, 1.0])
        np.testing.assert_allclose(seth_hill(B, 0.0), np.diag([1.0, 0, 0]),
                                   atol=1e-13)

    def test_integer_exponents_use_exact_powers(self, rng):
        B = random_spd(rng)
        np.testing.assert_allclose(seth_hill(B, 2.0),
                                   (B @ B - np.eye(3)) / 4.0, atol=1e-13)

    def test_real_exponent_spectral(self, rng):
        B = random_spd(rng)
        mu = np.linalg.eigvalsh(B)
        got = np.sort(np.linalg.eigvalsh(seth_hill(B, 0.5)))
        want = np.sort((mu ** 0.5 - 1.0))
        np.testing.assert_allclose(got, want, rtol=1e-10)

    def test_limit_m_to_zero(self, rng):
        for _ in range(10):
            B = random_spd(rng)
            e0 = seth_hill(B, 0.0)
            for m in (1e-6, -1e-6):
                assert np.linalg.norm(seth_hill(B, m) - e0) <= 1e-5

    def test_frechet_matches_fd(self, rng):
        h = 1e-6
        for m in (-1.0, 0.0, 0.5, 2.0):
            B = random_spd(rng, log_range=1.0)
            H = sym(rng.normal(size=(3, 3)))
            M = seth_hill_frechet(B, m)
            fd = (seth_hill(B + h * H, m) - seth_hill(B - h * H, m)) / (2 * h)
            assert np.linalg.norm(apply_mandel(M, H) - fd) <= 1e-6 * max(
                1.0, np.linalg.norm(fd))


class TestScaleFunctions:
    def test_normalization(self):
        # e_m(1) = 0 and e_m'(1) = 1/2 across the family
        for m in M_SET:
            assert scale_function(m, 1.0) == pytest.approx(0.0, abs=1e-15)
            assert scale_derivative(m, 1.0) == pytest.approx(0.5)
            assert scale_function_mirror(m, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_values(self):
        assert scale_function(1.0, 3.0) == pytest.approx(1.0)
        assert scale_function(0.0, math.e) == pytest.approx(0.5)
        assert scale_function_mirror(1.0, 2.0) == pytest.approx(0.25)

    def test_derivative_matches_fd(self):
        h = 1e-7
        for m in M_SET:
            for chi in (0.3, 1.0, 2.7):
                fd = (scale_function(m, chi + h)
                      - scale_function(m, chi - h)) / (2 * h)
                assert scale_derivative(m, chi) == pytest.approx(fd, rel=1e-6)

    def test_domain_errors(self):
        for fn in (scale_function, scale_derivative, scale_function_mirror):
            with pytest.raises(ValueError):
                fn(1.0, -2.0)


class TestPairing:
    def test_zj_m1_closed_form(self, rng):
        # <D[(B-1)/2], D> = <D B + B D, D>/2
        B = random_spd(rng)
        D = sym(rng.normal(size=(3, 3)))
        st = KinematicState.from_tensors(B, D)
        got = strain_rate_pairing(zaremba_jaumann(), st, 1.0)
        want = 0.5 * float(np.tensordot(D @ B + B @ D, D))
        assert got == pytest.approx(want, rel=1e-11)

    def test_gn_hencky_positive(self, rng):
        for _ in range(50):
            B = random_spd(rng)
            D = sym(rng.normal(size=(3, 3)))
            st = KinematicState.from_tensors(B, D)
            assert strain_rate_pairing(green_naghdi(), st, 0.0) > 0.0

    def test_zj_negative_powers_positive(self, rng):
        for m in (-1.0, -2.0):
            for _ in range(50):
                B = random_spd(rng)
                D = sym(rng.normal(size=(3, 3)))
                st = KinematicState.from_tensors(B, D)
                assert strain_rate_pairing(zaremba_jaumann(), st, m) > 0.0

    def test_matches_rate_inner_product(self, rng):
        # <D[E_m(B)], D> via the corotational rate of the strain field
        for m in (0.0, 1.0, 2.0):
            law = PrimaryLaw(lambda x, m=m: scale_function(m, x),
                             lambda x, m=m: scale_derivative(m, x))
            for name, motion in builtin_motions().items():
                st = state_at(motion, 0.4)
                for gen in (zaremba_jaumann(), green_naghdi(), logarithmic()):
                    rate = corotational_rate(gen, st, law)
                    want = float(np.tensordot(rate, st.D))
                    got = strain_rate_pairing(gen, st, m)
                    assert got == pytest.approx(want, rel=1e-9, abs=1e-12)

    def test_chain_rule_consistency_fd(self):
        # FD of E_m(B(t)) plus spin terms equals the composed pairing route
        h = 1e-6
        m = 0.5
        motion = builtin_motions()["rotation_shear"]
        st = state_at(motion, 0.4)
        for gen in (zaremba_jaumann(), logarithmic()):
            from corotate.spins import spin_tensor
            Om = spin_tensor(gen, st)
            E = seth_hill(st.B, m)
            fd = (seth_hill(state_at(motion, 0.4 + h).B, m)
                  - seth_hill(state_at(motion, 0.4 - h).B, m)) / (2 * h)
            rate = fd - Om @ E + E @ Om
            want = float(np.tensordot(rate, st.D))
            got = strain_rate_pairing(gen, st, m)
            assert got == pytest.approx(want, rel=1e-6)


class TestPositivitySweep:
    def test_no_counterexamples_for_positive_rates(self):
        result = positivity_sweep(["zj", "gn", "log"], (-1.0, 0.0, 1.0),
                                  n_samples=300, seed=11)
        assert result.counterexamples == ()
        assert result.min_value > 0.0
        assert len(result.samples) == 300

    def test_rows_schema(self):
        result = positivity_sweep(["zj"], (1.0,), n_samples=5, seed=3)
        rows = result.rows()
        assert len(rows) == 5
        gen, m, seed, value, running = rows[-1]
        assert gen == "zj" and m == 1.0 and seed == 7
        assert running == min(r[3] for r in rows)

    def test_deterministic(self):
        a = positivity_sweep(["gn"], (0.5,), n_samples=20, seed=5)
        b = positivity_sweep(["gn"], (0.5,), n_samples=20, seed=5)
        assert a.rows() == b.rows()

    def test_counterexamples_are_recorded_not_raised(self):
        # the Gurtin-Spear rate is not positive: the sweep must log hits
        # rather than assert them away
        result = positivity_sweep(["gs"], (1.0,), n_samples=40, seed=2)
        assert result.min_value <= 0.0 or result.counterexamples == ()
        # with shear-rich samples some pairing values hit <= 0
        values = [s.value for s in result.samples]
        assert min(values) == result.min_value
