import json

import pytest

from corotate.kinematics import (RigidRotation, builtin_motions, state_at)
from corotate.rates import almansi_law, linear_law, perfect_fluid_quadratic
from corotate.spins import (aifantis, green_naghdi, gurtin_spear, logarithmic,
                            zaremba_jaumann)
from corotate.tensors import random_sym
from corotate.verify import (CheckResult, check_chain_rule,
                             check_commutator_identity, check_constant_field,
                             check_corotated_frame_form,
                             check_invariant_conservation, check_objectivity,
                             check_perfect_fluid, check_product_rule,
                             constant_field_violation,
                             product_rule_violation, report_json, run_suite,
                             truesdell_constant_field_residual)


class TestIndividualChecks:
    def test_product_rule_residual_small(self):
        st = state_at(builtin_motions()["rotation_shear"], 0.5)
        for gen in (zaremba_jaumann(), green_naghdi(), logarithmic()):
            res = check_product_rule(gen, st, linear_law(), almansi_law())
            assert res <= 1e-10

    def test_product_rule_for_squared_field(self):
        # D[B^2] = D[B] B + B D[B]
        st = state_at(builtin_motions()["polynomial"], 0.4)
        res = check_product_rule(green_naghdi(), st, linear_law(), linear_law())
        assert res <= 1e-10

    def test_product_rule_violated_by_noncorotational(self):
        st = state_at(builtin_motions()["simple_shear"], 0.5)
        res = product_rule_violation("truesdell", st, linear_law(),
                                     linear_law())
        assert res >= 1e-3

    def test_chain_rule_residual(self):
        for gen in (zaremba_jaumann(), logarithmic(), aifantis(2, 0.5)):
            res = check_chain_rule(gen, builtin_motions()["triaxial"], 0.4,
                                   almansi_law())
            assert res <= 1e-6

    def test_constant_field(self):
        st = state_at(builtin_motions()["rotation_shear"], 0.3)
        assert check_constant_field(green_naghdi(), st) <= 1e-13
        assert constant_field_violation("oldroyd", st) >= 1e-3
        assert truesdell_constant_field_residual(st) <= 1e-13

    def test_commutator_identity(self, rng):
        from corotate.tensors import random_skew, random_spd
        res = check_commutator_identity(almansi_law(), random_spd(rng),
                                        random_skew(rng))
        assert res <= 1e-10

    def test_perfect_fluid_coincidence(self):
        st = state_at(builtin_motions()["uniaxial"], 0.6)
        gens = [zaremba_jaumann(), green_naghdi(), logarithmic()]
        res = check_perfect_fluid(gens, st, perfect_fluid_quadratic(),
                                  lambda s: 2.0)
        assert res <= 1e-10

    def test_objectivity_transforms(self):
        rot = RigidRotation((1.0, 0.4, -0.3), 2.1)
        for gen in (zaremba_jaumann(), green_naghdi(), logarithmic(),
                    gurtin_spear()):
            spin_res, rate_res = check_objectivity(
                gen, builtin_motions()["triaxial"], rot, 0.5)
            assert spin_res <= 1e-8
            assert rate_res <= 1e-8

    def test_invariant_conservation_rigid_rotation(self, rng):
        # closed form: sigma(t) = Q(t) sigma0 Q(t)^T, eigenvalues frozen
        sigma0 = random_sym(rng)
        res = check_invariant_conservation(
            zaremba_jaumann(), builtin_motions()["rotation"], sigma0)
        assert res.eig_drift <= 1e-10
        assert res.norm_drift <= 1e-10
        assert res.reorthonormalizations == 0

    def test_invariant_conservation_shear(self, rng):
        sigma0 = random_sym(rng)
        res = check_invariant_conservation(
            green_naghdi(), builtin_motions()["simple_shear"], sigma0)
        assert res.eig_drift <= 1e-8

    def test_corotated_frame_form(self):
        # direct evaluation equals Q (d/dt)[Q^T sigma Q] Q^T with the frame
        # integrated from Qdot = Omega Q
        motion = builtin_motions()["rotation_shear"]
        for gen in (zaremba_jaumann(), green_naghdi(), logarithmic()):
            res = check_corotated_frame_form(gen, motion, 0.4, almansi_law())
            assert res <= 1e-5

    def test_zero_spin_motion_keeps_sigma_exactly(self, rng):
        # uniaxial with ZJ: W = 0 and Upsilon = 0, so Q stays the identity
        sigma0 = random_sym(rng)
        res = check_invariant_conservation(
            zaremba_jaumann(), builtin_motions()["uniaxial"], sigma0)
        assert res.eig_drift == 0.0
        assert res.norm_drift == 0.0


class TestSuites:
    def test_all_suites_pass(self):
        results = run_suite("all", seed=42)
        assert results
        failures = [r for r in results if not r.passed]
        assert failures == []

    def test_unknown_suite_rejected(self):
        with pytest.raises(ValueError):
            run_suite("everything")

    def test_violation_checks_use_inverted_threshold(self):
        results = run_suite("counterexamples", seed=42)
        for r in results:
            assert "violation" in r.check
            assert r.residual >= r.threshold
            assert r.passed

    def test_report_json_schema(self):
        results = run_suite("objectivity", seed=42)
        payload = json.loads(report_json(results))
        assert payload["all_passed"] is True
        for rec in payload["results"]:
            assert set(rec) == {"check", "generator", "seed", "residual",
                                "threshold", "pass"}

    def test_reproducible_bit_for_bit(self):
        a = report_json(run_suite("objectivity", seed=7))
        b = report_json(run_suite("objectivity", seed=7))
        assert a == b

    def test_check_result_record(self):
        r = CheckResult("x", "gn", 1, 0.5, 1.0, True)
        rec = r.to_record()
        assert rec["pass"] is True and rec["check"] == "x"
