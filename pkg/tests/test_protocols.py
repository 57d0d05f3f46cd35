"""Protocol engine tests: selection rules, jammer sets, and a hand-worked transmission."""

import math

import numpy as np
import pytest
from scipy import stats

from relaysec import (InfeasibleConfigError, ProtocolChoice, ScenarioConfig,
                      classify_outage, execute_two_hop, jammer_set,
                      per_leg_budget, resolve_tau, sample_realization,
                      select_relay_optimal, select_relay_random, tau_protocol1,
                      theorem2_tau_range, trial_rng)
from relaysec.protocols import TransmissionRecord

from .test_channel import make_realization


def pair_realization(s_r, r_d):
    """Realization with only the gains max-min selection looks at."""
    n = len(s_r)
    return make_realization(s_r, np.ones(n * (n - 1) // 2), r_d, 1.0, [], [[] for _ in range(n)])


class TestSelectRelayOptimal:
    def test_picks_largest_min(self):
        real = pair_realization([0.5, 1.5, 0.3], [2.0, 1.2, 3.0])
        assert select_relay_optimal(real) == 1  # mins 0.5, 1.2, 0.3

    def test_tie_breaks_to_lowest_index(self):
        real = pair_realization([1.0, 1.0], [1.0, 2.0])
        assert select_relay_optimal(real) == 0

    def test_single_relay(self):
        real = pair_realization([0.4], [0.2])
        assert select_relay_optimal(real) == 0

    def test_permutation_equivariant(self):
        rng = trial_rng(21, 0)
        for _ in range(50):
            s_r = rng.exponential(size=6)
            r_d = rng.exponential(size=6)
            sel = select_relay_optimal(pair_realization(s_r, r_d))
            perm = rng.permutation(6)
            sel_p = select_relay_optimal(pair_realization(s_r[perm], r_d[perm]))
            assert perm[sel_p] == sel

    def test_selection_uniform_over_fresh_fading(self):
        # i.i.d. gains make the argmax symmetric across relays
        cfg = ScenarioConfig(n=8, m=0, gamma_r=1.0, gamma_e=1.0)
        counts = np.zeros(8, dtype=int)
        for t in range(20_000):
            counts[select_relay_optimal(sample_realization(cfg, trial_rng(22, t)))] += 1
        assert stats.chisquare(counts).pvalue > 0.001


class TestSelectRelayRandom:
    def test_single_relay(self):
        rng = trial_rng(1, 0)
        assert all(select_relay_random(1, rng) == 0 for _ in range(100))

    def test_uniform_frequencies(self):
        rng = trial_rng(2, 0)
        picks = np.array([select_relay_random(4, rng) for _ in range(100_000)])
        counts = np.bincount(picks, minlength=4)
        assert np.all(np.abs(counts / 100_000 - 0.25) < 0.01)
        assert stats.chisquare(counts).pvalue > 0.001

    def test_same_seed_same_sequence(self):
        a = [select_relay_random(7, trial_rng(5, t)) for t in range(50)]
        b = [select_relay_random(7, trial_rng(5, t)) for t in range(50)]
        assert a == b


class TestJammerSet:
    def real_with_gains_to_receiver(self, r_d):
        n = len(r_d)
        return make_realization(np.ones(n), np.ones(n * (n - 1) // 2), r_d, 1.0,
                                [], [[] for _ in range(n)])

    def test_zero_threshold_empty(self):
        real = self.real_with_gains_to_receiver([0.5, 0.1, 0.2])
        assert len(jammer_set(real, "D", 0, 0.0)) == 0

    def test_everyone_below_threshold(self):
        real = self.real_with_gains_to_receiver([0.5, 0.1, 0.2])
        assert set(jammer_set(real, "D", 1, 10.0)) == {0, 2}

    def test_threshold_selects_exactly(self):
        real = self.real_with_gains_to_receiver([0.05, 0.2, 0.01])
        assert set(jammer_set(real, "D", 1, 0.1)) == {0, 2}

    def test_selected_relay_never_jams(self):
        real = self.real_with_gains_to_receiver([0.001, 0.001, 0.001])
        assert 1 not in jammer_set(real, "D", 1, 1.0)

    def test_hop1_uses_gains_toward_selected_relay(self):
        # relay pair gains (0,1)=0.05, (0,2)=0.5, (1,2)=0.01
        real = make_realization([1, 1, 1], [0.05, 0.5, 0.01], [1, 1, 1], 1.0,
                                [], [[], [], []])
        assert set(jammer_set(real, 1, 1, 0.1)) == {0, 2}
        assert set(jammer_set(real, 0, 0, 0.1)) == {1}

    def test_monotone_in_tau(self):
        cfg = ScenarioConfig(n=9, m=0, gamma_r=1.0, gamma_e=1.0)
        real = sample_realization(cfg, trial_rng(30, 0))
        taus = [0.0, 0.05, 0.2, 0.8, 2.0]
        sets = [set(jammer_set(real, 3, 3, t)) for t in taus]
        for small, large in zip(sets[:-1], sets[1:]):
            assert small <= large

    def test_size_binomial_mean(self):
        # |set| ~ Binomial(n-1, 1-e^-tau)
        n, tau, trials = 11, 0.3, 20_000
        cfg = ScenarioConfig(n=n, m=0, gamma_r=1.0, gamma_e=1.0)
        sizes = np.empty(trials)
        for t in range(trials):
            real = sample_realization(cfg, trial_rng(31, t))
            sizes[t] = len(jammer_set(real, "D", 0, tau))
        expected = (n - 1) * (1.0 - math.exp(-tau))
        se = sizes.std(ddof=1) / math.sqrt(trials)
        assert abs(sizes.mean() - expected) < 3 * se


class TestTauProtocol1:
    def test_single_relay_zero(self):
        assert tau_protocol1(1, 1.0) == 0.0

    def test_desk_value(self):
        assert tau_protocol1(100, 1.0) == pytest.approx(0.07587135646925731, rel=1e-12)

    def test_inverse_sqrt_gamma_scaling(self):
        assert tau_protocol1(100, 4.0) == pytest.approx(tau_protocol1(100, 1.0) / 2.0)


class TestResolveTau:
    CFG = ScenarioConfig(n=101, m=1, gamma_r=1.0, gamma_e=1.0, eps_s=0.5, eps_t=0.5)

    def test_manual(self):
        proto = ProtocolChoice(kind="random-uniform", tau_policy="manual", tau=0.17)
        assert resolve_tau(proto, self.CFG) == 0.17

    def test_protocol1_formula(self):
        proto = ProtocolChoice(kind="optimal-maxmin", tau_policy="protocol1-formula")
        assert resolve_tau(proto, self.CFG) == tau_protocol1(101, 1.0)

    def test_theorem2_endpoints(self):
        iv = theorem2_tau_range(101, 1, 1.0, 1.0, 0.5, 0.5)
        hi = ProtocolChoice(kind="random-uniform", tau_policy="theorem2-max")
        lo = ProtocolChoice(kind="random-uniform", tau_policy="theorem2-min")
        assert resolve_tau(hi, self.CFG) == iv.tau_max
        assert resolve_tau(lo, self.CFG) == iv.tau_min

    def test_theorem2_min_nonnegative(self):
        # the raw formula only goes negative for fractional m below the budget
        # (the defensive clamp's territory); for any integer m >= 1 it is >= 0
        assert theorem2_tau_range(101, per_leg_budget(0.19) / 2, 1.0, 1.0, 0.19, 0.5).tau_min < 0
        for m in (1, 2, 17):
            cfg = ScenarioConfig(n=101, m=m, gamma_r=1.0, gamma_e=1.0,
                                 eps_s=0.9999, eps_t=0.5)
            proto = ProtocolChoice(kind="random-uniform", tau_policy="theorem2-min")
            assert resolve_tau(proto, cfg) >= 0.0

    def test_theorem2_infeasible_raises(self):
        cfg = ScenarioConfig(n=2, m=10, gamma_r=1.0, gamma_e=1.0, eps_s=0.1, eps_t=0.5)
        proto = ProtocolChoice(kind="random-uniform", tau_policy="theorem2-max")
        with pytest.raises(InfeasibleConfigError):
            resolve_tau(proto, cfg)

    def test_theorem2_requires_budgets(self):
        cfg = ScenarioConfig(n=11, m=1, gamma_r=1.0, gamma_e=1.0)
        proto = ProtocolChoice(kind="random-uniform", tau_policy="theorem2-max")
        with pytest.raises(ValueError):
            resolve_tau(proto, cfg)


class TestProtocolChoiceValidation:
    def test_manual_needs_tau(self):
        with pytest.raises(ValueError):
            ProtocolChoice(kind="random-uniform", tau_policy="manual")

    def test_negative_manual_tau(self):
        with pytest.raises(ValueError):
            ProtocolChoice(kind="random-uniform", tau_policy="manual", tau=-0.1)

    def test_tau_forbidden_without_manual(self):
        with pytest.raises(ValueError):
            ProtocolChoice(kind="random-uniform", tau_policy="protocol1-formula", tau=0.2)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            ProtocolChoice(kind="round-robin", tau_policy="manual", tau=0.1)


class TestExecuteTwoHop:
    CFG = ScenarioConfig(n=2, m=1, gamma_r=1.0, gamma_e=1.0, es=1.0, n0=1.0)

    def hand_case(self):
        return make_realization(s_r=[2.0, 0.5], rr_cond=[0.05], r_d=[1.5, 0.08],
                                s_d=1.0, s_e=[0.7], r_e=[[0.3], [0.04]])

    def test_hand_worked_record(self):
        # selected = argmax(min(2,1.5), min(0.5,0.08)) = 0; both other-relay
        # gains 0.05 and 0.08 sit below tau = 0.1, so relay 1 jams both hops.
        proto = ProtocolChoice(kind="optimal-maxmin", tau_policy="manual", tau=0.1)
        rec = execute_two_hop(self.hand_case(), proto, self.CFG)
        assert rec.selected_relay == 0
        assert set(rec.jammers_hop1) == {1}
        assert set(rec.jammers_hop2) == {1}
        assert rec.sinr_relay == pytest.approx(2.0 / (0.05 + 0.5))
        assert rec.sinr_dest == pytest.approx(1.5 / (0.08 + 0.5))
        assert rec.sinr_eves_hop1[0] == pytest.approx(0.7 / (0.04 + 0.5))
        assert rec.sinr_eves_hop2[0] == pytest.approx(0.3 / (0.04 + 0.5))

    def test_hand_worked_outage(self):
        proto = ProtocolChoice(kind="optimal-maxmin", tau_policy="manual", tau=0.1)
        flags = classify_outage(execute_two_hop(self.hand_case(), proto, self.CFG), self.CFG)
        assert not flags.t_out_hop1 and not flags.t_out_hop2 and not flags.t_out_e2e
        assert flags.s_out_hop1          # 1.296 >= 1
        assert not flags.s_out_hop2      # 0.556 < 1
        assert flags.s_out_e2e

    def test_zero_tau_degenerate(self):
        proto = ProtocolChoice(kind="optimal-maxmin", tau_policy="manual", tau=0.0)
        rec = execute_two_hop(self.hand_case(), proto, self.CFG)
        assert len(rec.jammers_hop1) == 0 and len(rec.jammers_hop2) == 0
        assert rec.sinr_relay == pytest.approx(2.0 / 0.5)

    def test_single_relay_unbounded_eve(self):
        cfg = ScenarioConfig(n=1, m=1, gamma_r=1.0, gamma_e=1.0,
                             noise_mode="interference-limited")
        real = make_realization([1.3], [], [0.9], 1.0, [0.2], [[0.5]])
        for proto in (ProtocolChoice(kind="optimal-maxmin", tau_policy="manual", tau=0.5),
                      ProtocolChoice(kind="random-uniform", tau_policy="manual", tau=0.5)):
            rec = execute_two_hop(real, proto, cfg, rng=trial_rng(0, 0))
            assert rec.selected_relay == 0
            assert len(rec.jammers_hop1) == 0 and len(rec.jammers_hop2) == 0
            assert rec.sinr_eves_hop1[0] == math.inf
            assert rec.sinr_eves_hop2[0] == math.inf

    def test_random_kind_needs_rng(self):
        proto = ProtocolChoice(kind="random-uniform", tau_policy="manual", tau=0.1)
        with pytest.raises(ValueError):
            execute_two_hop(self.hand_case(), proto, self.CFG)

    def test_independent_legs_hop2_gains(self):
        # hop 2 quantities must come from the substitute realization
        proto = ProtocolChoice(kind="optimal-maxmin", tau_policy="manual", tau=0.1)
        alt = make_realization([2.0, 0.5], [0.05], [0.9, 4.0], 1.0, [0.7], [[0.6], [2.0]])
        rec = execute_two_hop(self.hand_case(), proto, self.CFG, hop2_realization=alt)
        assert rec.selected_relay == 0
        assert len(rec.jammers_hop2) == 0      # alt r_d gains exceed tau
        assert rec.sinr_dest == pytest.approx(0.9 / 0.5)
        assert rec.sinr_eves_hop2[0] == pytest.approx(0.6 / 0.5)
        # hop 1 still from the original channel
        assert rec.sinr_relay == pytest.approx(2.0 / (0.05 + 0.5))


class TestClassifyOutage:
    CFG = ScenarioConfig(n=3, m=2, gamma_r=1.0, gamma_e=1.0)

    def record(self, sr, sd, e1, e2):
        return TransmissionRecord(selected_relay=0, jammers_hop1=np.array([], dtype=int),
                                  jammers_hop2=np.array([], dtype=int), sinr_relay=sr,
                                  sinr_dest=sd, sinr_eves_hop1=np.asarray(e1, dtype=float),
                                  sinr_eves_hop2=np.asarray(e2, dtype=float))

    def test_tiny_gamma_r_never_outage(self):
        cfg = ScenarioConfig(n=3, m=2, gamma_r=1e-12, gamma_e=1.0)
        flags = classify_outage(self.record(0.01, 0.02, [0.0, 0.0], [0.0, 0.0]), cfg)
        assert not flags.t_out_hop1 and not flags.t_out_hop2

    def test_huge_gamma_e_never_secrecy_outage(self):
        cfg = ScenarioConfig(n=3, m=2, gamma_r=1.0, gamma_e=1e12)
        flags = classify_outage(self.record(5.0, 5.0, [100.0, 3.0], [7.0, 2.0]), cfg)
        assert not flags.s_out_hop1 and not flags.s_out_hop2 and not flags.s_out_e2e

    def test_boundary_conventions(self):
        # decoding needs strictly greater; interception needs only equality
        flags = classify_outage(self.record(1.0, 2.0, [1.0, 0.2], [0.1, 0.2]), self.CFG)
        assert flags.t_out_hop1 and not flags.t_out_hop2
        assert flags.s_out_hop1 and not flags.s_out_hop2

    def test_e2e_is_or_of_hops(self):
        rng = trial_rng(40, 0)
        for _ in range(50):
            vals = rng.exponential(size=6)
            flags = classify_outage(
                self.record(vals[0], vals[1], vals[2:4], vals[4:6]), self.CFG)
            assert flags.t_out_e2e == (flags.t_out_hop1 or flags.t_out_hop2)
            assert flags.s_out_e2e == (flags.s_out_hop1 or flags.s_out_hop2)

    def test_no_eavesdroppers_no_secrecy_outage(self):
        cfg = ScenarioConfig(n=3, m=0, gamma_r=1.0, gamma_e=1.0)
        flags = classify_outage(self.record(5.0, 5.0, [], []), cfg)
        assert not flags.s_out_e2e
