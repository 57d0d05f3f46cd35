"""Secure two-hop relay transmission under cooperative jamming.

A numpy library for studying a source-relay-destination network where idle
relays jam unknown passive eavesdroppers: Rayleigh channel sampling, the
max-min and random relay-selection protocols, Monte Carlo outage estimation
with deterministic parallelism, and the closed-form eavesdropper-tolerance
bounds those simulations are validated against.
"""

from .bounds import (BoundReport, InfeasibleConfigError, MBound, TauInterval,
                     build_bound_report, combine_legs, eve_intercept_exact,
                     expected_jammers, per_leg_budget, reliability_leg_bound,
                     secrecy_leg_bound, theorem1_m_max, theorem2_tau_range,
                     theorem3_m_max)
from .channel import (ChannelRealization, ScenarioConfig, sample_gain,
                      sample_realization, sinr, trial_rng)
from .montecarlo import (LoadBalanceStats, OutageEstimate, Proportion,
                         ToleranceResult, estimate_outage, jain_index,
                         load_balance, merge_estimates, selection_entropy,
                         tolerance_search, wilson_interval)
from .protocols import (OutageFlags, ProtocolChoice, TransmissionRecord,
                        classify_outage, execute_two_hop, jammer_set,
                        resolve_tau, select_relay_optimal, select_relay_random,
                        tau_protocol1)
from .validation import CheckResult, run_oracle_suite

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "ChannelRealization", "CheckResult", "InfeasibleConfigError",
    "LoadBalanceStats", "MBound", "OutageEstimate", "OutageFlags",
    "Proportion", "ProtocolChoice", "ScenarioConfig", "TauInterval",
    "ToleranceResult", "TransmissionRecord", "build_bound_report",
    "classify_outage", "combine_legs", "estimate_outage", "eve_intercept_exact",
    "execute_two_hop", "expected_jammers", "jain_index", "jammer_set",
    "load_balance", "merge_estimates", "per_leg_budget", "reliability_leg_bound",
    "resolve_tau", "run_oracle_suite", "sample_gain", "sample_realization",
    "secrecy_leg_bound", "select_relay_optimal", "select_relay_random",
    "selection_entropy", "sinr", "tau_protocol1", "theorem1_m_max",
    "theorem2_tau_range", "theorem3_m_max", "tolerance_search", "trial_rng",
    "wilson_interval",
]
