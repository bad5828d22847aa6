import math

import numpy as np
import pytest

from dickebec import ModelParams, critical_set, landmarks, solve_equilibrium
from dickebec.equilibrium import candidates, pressure, transition_report
from dickebec.model import Branch, Phase


def params(**kw):
    values = dict(beta=1.0, lam=1.0, omega=1.0, g=1.0, epsilon=0.0)
    values.update(kw)
    return ModelParams(**values)


class TestPhases:
    def test_dilute_is_normal(self):
        st = solve_equilibrium(params(epsilon=0.2), -5.0)
        assert st.phase_label is Phase.NO_BEC
        assert st.condensate_density_plus == st.condensate_density_minus == 0.0
        assert st.photon_density == 0.0

    def test_dense_is_superradiant(self):
        st = solve_equilibrium(params(epsilon=0.2), 3.0)
        assert st.phase_label is Phase.SUPERRADIANT_BEC
        assert st.photon_density > 0

    def test_intermediate_phase(self):
        p = params(g=2.6, epsilon=0.05)
        c = critical_set(p)
        assert c.intermediate_phase_present
        st = solve_equilibrium(p, 0.5 * (c.mu_c1 + c.mu_c2))
        assert st.phase_label is Phase.MINUS_ONLY_BEC
        assert st.condensate_density_minus > 0 and st.condensate_density_plus == 0

    def test_decoupled_bec_pressure(self):
        p = params(g=0.0, epsilon=0.0)
        rho_c = p.cloud.rho0(0.0)
        mu = 2 * p.lam * rho_c
        st = solve_equilibrium(p, mu)
        assert st.x == pytest.approx(0.0, abs=1e-12)
        assert st.rho == pytest.approx(2 * rho_c, rel=1e-10)
        st = solve_equilibrium(p, mu + 1.0)
        assert st.phase_label is Phase.MINUS_ONLY_BEC

    def test_pressure_vanishes_deep_in_dilute_region(self):
        p = params(epsilon=0.2)
        values = [pressure(p, mu) for mu in (-5.0, -10.0, -20.0, -40.0)]
        assert np.all(np.diff(values) < 0)
        assert values[-1] < 1e-15


@pytest.mark.parametrize("kw", [dict(epsilon=0.0), dict(epsilon=0.2),
                                dict(g=2.6, epsilon=0.05), dict(g=2.8, epsilon=0.05)])
def test_maximal_pressure_is_selected(kw):
    p = params(**kw)
    for mu in np.linspace(-1.0, 3.0, 81):
        st = solve_equilibrium(p, float(mu))
        best = max(c.pressure for c in st.candidates)
        assert st.pressure == best
        assert st.solution in st.candidates


def test_candidate_order():
    p = params(g=2.6, epsilon=0.05)
    lm = landmarks(p)
    mu = 0.5 * (max(lm.mu0, lm.mu1) + lm.mu2)
    assert [c.branch for c in candidates(p, mu)] == [
        Branch.MINUS_CONDENSATE, Branch.SUPERRADIANT, Branch.SUPERRADIANT_LOWER]


def test_tie_at_mu1_prefers_normal():
    p = params(epsilon=0.2)
    st = solve_equilibrium(p, landmarks(p).mu1)
    assert st.solution.branch is Branch.NORMAL


class TestTransitions:
    def test_first_order_without_splitting(self):
        p = params(epsilon=0.0)
        crit, trans = transition_report(p)
        assert len(trans) == 1
        t = trans[0]
        assert t.mu == crit.mu_c2
        assert t.order == "first"
        assert t.density_jump > 0
        assert abs(t.pressure_gap) < 1e-8 * abs(t.pressure_left)
        assert t.phase_left == "NoBEC" and t.phase_right == "SuperradiantBEC"
        assert t.photon_left == 0.0 and t.photon_right > 0

    def test_continuous_bec_onset(self):
        p = params(g=2.6, epsilon=0.05)
        crit, trans = transition_report(p)
        assert [t.mu for t in trans] == [crit.mu_c1, crit.mu_c2]
        onset, sr = trans
        assert onset.order == "continuous"
        assert onset.condensate_minus_right < 1e-5
        assert (onset.phase_left, onset.phase_right) == ("NoBEC", "MinusOnlyBEC")
        assert sr.phase_right == "SuperradiantBEC"

    def test_regime_a_is_continuous(self):
        p = params(epsilon=0.2)
        crit, trans = transition_report(p)
        assert crit.regime == "a"
        assert all(t.order == "continuous" for t in trans)
        assert trans[-1].mu == crit.mu2

    def test_decoupled_single_transition(self):
        crit, trans = transition_report(params(g=0.0, epsilon=0.1))
        assert len(trans) == 1
        assert trans[0].mu == crit.mu1
        assert not math.isfinite(crit.mu_c2)

    def test_as_dict(self):
        _, trans = transition_report(params(epsilon=0.0))
        d = trans[0].as_dict()
        assert d["density_jump"] == trans[0].density_jump
        assert "order" in d
