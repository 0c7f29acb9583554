import math

import numpy as np
import pytest

from corotate.kinematics import (Composite, RigidRotation, Uniaxial,
                                 builtin_motions, state_at)
from corotate.rates import (NONCOROTATIONAL_KINDS, ProductLaw, almansi_law,
                            constant_law, corotational_rate,
                            induced_stiffness_H, isochoric_neo_hooke_law,
                            linear_law, log_law, noncorotational_rate,
                            parse_law, perfect_fluid_quadratic,
                            sigma_and_gradient)
from corotate.spins import (aifantis, green_naghdi, logarithmic,
                            zaremba_jaumann)
from corotate.stiffness import assemble_A
from corotate.tensors import (apply_mandel, commutator, random_skew,
                              random_spd, sym)

PRESETS = [linear_law(), almansi_law(), perfect_fluid_quadratic(),
           isochoric_neo_hooke_law()]
COROT = [zaremba_jaumann(), green_naghdi(), logarithmic(),
         aifantis(1, 0.5), aifantis(2, 0.5)]


def fd_gradient(law, B, H, h=1e-6):
    return (law.sigma(B + h * H) - law.sigma(B - h * H)) / (2.0 * h)


class TestStressLaws:
    def test_linear_law_gradient_is_identity(self, rng):
        sigma, M = sigma_and_gradient(linear_law(), random_spd(rng))
        np.testing.assert_allclose(M, np.eye(6), atol=1e-14)

    def test_presets_match_finite_differences(self, rng):
        for law in PRESETS + [log_law()]:
            for _ in range(10):
                B = random_spd(rng, log_range=1.0)
                H = sym(rng.normal(size=(3, 3)))
                _, M = sigma_and_gradient(law, B)
                got = apply_mandel(M, H)
                want = fd_gradient(law, B, H)
                err = np.linalg.norm(got - want)
                assert err <= 1e-6 * max(1.0, np.linalg.norm(want)), law.name

    def test_perfect_fluid_gradient_closed_form(self, rng):
        # sigma = h'(s) I and Dsigma.H = h''(s) (s/2) <B^-1, H> I, s = sqrt(det B)
        law = perfect_fluid_quadratic()
        B = random_spd(rng)
        H = sym(rng.normal(size=(3, 3)))
        s = math.sqrt(np.linalg.det(B))
        np.testing.assert_allclose(law.sigma(B), 2.0 * s * np.eye(3),
                                   rtol=1e-12)
        want = 2.0 * (s / 2.0) * float(np.tensordot(np.linalg.inv(B), H)) * np.eye(3)
        _, M = sigma_and_gradient(law, B)
        np.testing.assert_allclose(apply_mandel(M, H), want, rtol=1e-10,
                                   atol=1e-12)

    def test_isochoric_law_vanishes_at_identity(self):
        law = isochoric_neo_hooke_law()
        np.testing.assert_allclose(law.sigma(np.eye(3)), np.zeros((3, 3)),
                                   atol=1e-15)
        assert law.isochoric

    def test_isochoric_law_is_degree_zero(self, rng):
        law = isochoric_neo_hooke_law()
        B = random_spd(rng)
        np.testing.assert_allclose(law.sigma(4.0 * B), law.sigma(B), atol=1e-12)

    def test_almansi_matches_direct_formula(self, rng):
        law = almansi_law()
        B = random_spd(rng)
        want = 0.5 * (np.eye(3) - np.linalg.inv(B))
        np.testing.assert_allclose(law.sigma(B), want, atol=1e-12)

    def test_isotropy_of_presets(self, rng):
        from corotate.tensors import haar_rotation
        for law in PRESETS:
            B = random_spd(rng)
            Q = haar_rotation(rng)
            left = law.sigma(sym(Q @ B @ Q.T))
            right = Q @ law.sigma(B) @ Q.T
            np.testing.assert_allclose(left, right, atol=1e-11)

    def test_parse_law(self):
        assert parse_law("linear").name == "linear"
        assert parse_law("perfect-fluid:h=quadratic").name == \
            "perfect-fluid:h=quadratic"
        assert parse_law("isochoric-nh").isochoric
        with pytest.raises(ValueError):
            parse_law("mystery")


class TestCorotationalRates:
    def test_constant_spherical_field_has_zero_rate(self, rng):
        # the c*1 identity separating corotational from non-corotational rates
        for name, motion in builtin_motions().items():
            st = state_at(motion, 0.3)
            for gen in COROT:
                rate = corotational_rate(gen, st, constant_law(2.5))
                assert np.abs(rate).max() <= 1e-13

    def test_zaremba_jaumann_of_B(self, rng):
        st = state_at(builtin_motions()["polynomial"], 0.4)
        got = corotational_rate(zaremba_jaumann(), st, linear_law())
        want = st.B @ st.D + st.D @ st.B
        np.testing.assert_allclose(got, want, atol=1e-12)

    def test_green_naghdi_of_B(self):
        st = state_at(builtin_motions()["rotation_shear"], 0.5)
        got = corotational_rate(green_naghdi(), st, linear_law())
        want = 2.0 * st.V @ st.D @ st.V
        assert np.linalg.norm(got - want) <= 1e-10 * np.linalg.norm(want)

    def test_perfect_fluid_rates_coincide(self, rng):
        law = perfect_fluid_quadratic()
        for name, motion in builtin_motions().items():
            st = state_at(motion, 0.4)
            s = math.sqrt(np.linalg.det(st.B))
            want = 2.0 * s * float(np.trace(st.D)) * np.eye(3)
            for gen in COROT:
                got = corotational_rate(gen, st, law)
                assert np.linalg.norm(got - want) <= 1e-10 * max(
                    1.0, np.linalg.norm(want))


class TestNonCorotationalRates:
    def test_truesdell_constant_field_closed_form(self, rng):
        c = 2.5
        for name, motion in builtin_motions().items():
            st = state_at(motion, 0.3)
            got = noncorotational_rate("truesdell", st, constant_law(c))
            want = c * (np.trace(st.D) * np.eye(3) - 2.0 * st.D)
            np.testing.assert_allclose(got, want, atol=1e-12)

    def test_oldroyd_of_zero_stress_is_zero(self, rng):
        st = state_at(builtin_motions()["simple_shear"], 0.5)
        got = noncorotational_rate("oldroyd", st, constant_law(0.0))
        np.testing.assert_allclose(got, np.zeros((3, 3)))

    def test_cotter_rivlin_minus_zj_is_Dsigma_plus_sigmaD(self, rng):
        # L^T s + s L = D s + s D + s W - W s splits the CR rate into the
        # ZJ rate plus the symmetric stretch term
        for name, motion in builtin_motions().items():
            st = state_at(motion, 0.45)
            for law in (linear_law(), almansi_law()):
                s = law.sigma(st.B)
                cr = noncorotational_rate("cotter-rivlin", st, law)
                zj = corotational_rate(zaremba_jaumann(), st, law)
                np.testing.assert_allclose(cr - zj, st.D @ s + s @ st.D,
                                           atol=1e-11)

    def test_unknown_kind_rejected(self, rng):
        st = state_at(builtin_motions()["simple_shear"], 0.5)
        with pytest.raises(ValueError):
            noncorotational_rate("lie", st, linear_law())

    def test_separation_from_corotational_rates(self):
        # every non-corotational rate violates the c*1 identity on a motion
        # with tr D != 0 and deviatoric stretching
        motion = Composite(RigidRotation((0.0, 0.0, 1.0), 0.8),
                           Uniaxial.exponential(0.5))
        st = state_at(motion, 0.4)
        for kind in NONCOROTATIONAL_KINDS:
            got = noncorotational_rate(kind, st, constant_law(2.5))
            assert np.linalg.norm(got) >= 1e-3


class TestInducedStiffness:
    def test_linear_law_gives_A_itself(self, rng):
        B = random_spd(rng)
        for gen in COROT:
            H = induced_stiffness_H(gen, linear_law(), B)
            np.testing.assert_allclose(H, assemble_A(B, gen), atol=1e-12)

    def test_H_times_D_equals_corotational_rate(self, rng):
        for name, motion in builtin_motions().items():
            st = state_at(motion, 0.35)
            for gen in COROT:
                for law in (almansi_law(), isochoric_neo_hooke_law()):
                    H = induced_stiffness_H(gen, law, st.B)
                    got = apply_mandel(H, st.D)
                    want = corotational_rate(gen, st, law)
                    assert np.linalg.norm(got - want) <= 1e-9 * max(
                        1.0, np.linalg.norm(want))

    def test_perfect_fluid_H_closed_form(self, rng):
        law = perfect_fluid_quadratic()
        B = random_spd(rng)
        D = sym(rng.normal(size=(3, 3)))
        s = math.sqrt(np.linalg.det(B))
        want = 2.0 * s * float(np.trace(D)) * np.eye(3)
        for gen in COROT:
            H = induced_stiffness_H(gen, law, B)
            np.testing.assert_allclose(apply_mandel(H, D), want, rtol=1e-9,
                                       atol=1e-11)

    def test_log_law_with_log_rate_is_twice_identity(self, rng):
        # D_B log B composed with A_log = 2 [D_B log B]^-1
        B = random_spd(rng)
        H = induced_stiffness_H(logarithmic(), log_law(), B)
        np.testing.assert_allclose(H, 2.0 * np.eye(6), atol=1e-9)


class TestIdentities:
    def test_commutator_identity(self, rng):
        # [Omega, sigma(B)] = D sigma(B).[Omega, B] for isotropic laws
        for law in PRESETS:
            for _ in range(25):
                B = random_spd(rng)
                Om = random_skew(rng)
                sigma, M = sigma_and_gradient(law, B)
                lhs = commutator(Om, sigma)
                rhs = apply_mandel(M, commutator(Om, B))
                assert np.linalg.norm(lhs - rhs) <= 1e-10 * max(
                    1.0, np.linalg.norm(lhs))

    def test_frame_indifference(self):
        # superposed rotation Q(t): rate'(t) = Q rate Q^T
        base = builtin_motions()["polynomial"]
        rot = RigidRotation((0.2, 1.0, -0.5), 1.3)
        t = 0.4
        st = state_at(base, t)
        st_rot = state_at(Composite(rot, base), t)
        Q = rot.F(t)
        for gen in COROT:
            for law in (linear_law(), almansi_law()):
                r = corotational_rate(gen, st, law)
                r_rot = corotational_rate(gen, st_rot, law)
                assert np.linalg.norm(r_rot - Q @ r @ Q.T) <= 1e-8 * max(
                    1.0, np.linalg.norm(r))

    def test_norm_identity_along_motions(self):
        # 2 <D[sigma], sigma> = d/dt ||sigma||^2
        h = 1e-6
        for name, motion in builtin_motions().items():
            st = state_at(motion, 0.4)
            for gen in COROT:
                law = almansi_law()
                rate = corotational_rate(gen, st, law)
                sigma = law.sigma(st.B)
                lhs = 2.0 * float(np.tensordot(rate, sigma))

                def n2(s):
                    sig = law.sigma(state_at(motion, s).B)
                    return float(np.tensordot(sig, sig))

                rhs = (n2(0.4 + h) - n2(0.4 - h)) / (2.0 * h)
                assert abs(lhs - rhs) <= 1e-7 * max(1.0, abs(rhs))

    def test_product_law_gradient(self, rng):
        law = ProductLaw(linear_law(), almansi_law())
        B = random_spd(rng, log_range=1.0)
        H = sym(rng.normal(size=(3, 3)))
        _, M = sigma_and_gradient(law, B)
        want = fd_gradient(law, B, H)
        assert np.linalg.norm(apply_mandel(M, H) - want) <= 1e-6 * max(
            1.0, np.linalg.norm(want))
