"""Two-hop transmission protocols with cooperative jamming.

One transmission is: pick a relay, send S -> relay while nearby idle relays
jam, then send relay -> D while a second jammer set jams. A relay joins a
hop's jammer set when its (pilot-measured) gain toward that hop's legitimate
receiver is below the threshold tau, so jammers are loud at unknown
eavesdropper positions but quiet at the receiver. Two selection rules are
supported: the max-min optimal rule and uniform random selection; both reuse
the same threshold jamming, differing only in where tau comes from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import InfeasibleConfigError, theorem2_tau_range
from .channel import ChannelRealization, ScenarioConfig, sinr, sinr_many

PROTOCOL_KINDS = ("optimal-maxmin", "random-uniform")
TAU_POLICIES = ("protocol1-formula", "theorem2-max", "theorem2-min", "manual")


@dataclass(frozen=True)
class ProtocolChoice:
    """Which relay-selection rule to run and how to resolve its jamming threshold."""

    kind: str = "random-uniform"
    tau_policy: str = "protocol1-formula"
    tau: float | None = None

    def __post_init__(self):
        if self.kind not in PROTOCOL_KINDS:
            raise ValueError(f"kind must be one of {PROTOCOL_KINDS}, got {self.kind!r}")
        if self.tau_policy not in TAU_POLICIES:
            raise ValueError(f"tau_policy must be one of {TAU_POLICIES}, got {self.tau_policy!r}")
        if self.tau_policy == "manual":
            if self.tau is None or self.tau < 0:
                raise ValueError("manual tau policy requires tau >= 0")
        elif self.tau is not None:
            raise ValueError(f"tau is only meaningful with the manual policy, got {self.tau}")


@dataclass(frozen=True)
class TransmissionRecord:
    """Everything observed during one two-hop transmission."""

    selected_relay: int
    jammers_hop1: np.ndarray
    jammers_hop2: np.ndarray
    sinr_relay: float
    sinr_dest: float
    sinr_eves_hop1: np.ndarray
    sinr_eves_hop2: np.ndarray


@dataclass(frozen=True)
class OutageFlags:
    """Per-hop and end-to-end outage classification of one transmission."""

    t_out_hop1: bool
    t_out_hop2: bool
    s_out_hop1: bool
    s_out_hop2: bool
    t_out_e2e: bool
    s_out_e2e: bool


def select_relay_optimal(realization: ChannelRealization) -> int:
    """Relay with the largest min(gain to S, gain to D); ties go to the lowest index."""
    return int(np.argmax(np.minimum(realization.s_r, realization.r_d)))


def select_relay_random(n: int, rng: np.random.Generator) -> int:
    """Uniform relay pick over {0, ..., n-1}."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return int(rng.integers(0, n))


def jammer_set(realization: ChannelRealization, receiver, selected: int,
               tau: float) -> np.ndarray:
    """Indices of non-selected relays whose gain to the receiver is below tau.

    `receiver` is either a relay index (hop 1 jams around the selected relay)
    or "D" (hop 2 jams around the destination). Returned sorted ascending.
    """
    if tau < 0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    if isinstance(receiver, str):
        if receiver != "D":
            raise ValueError(f"receiver must be a relay index or 'D', got {receiver!r}")
        gains = realization.r_d
    else:
        gains = realization.gains_to_relay(int(receiver))
    idx = np.flatnonzero(gains < tau)
    return idx[idx != selected]


def tau_protocol1(n: int, gamma_r: float) -> float:
    """Jamming threshold sqrt(ln n / (8 n gamma_r)) used with max-min selection."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if gamma_r <= 0:
        raise ValueError(f"gamma_r must be > 0, got {gamma_r}")
    return math.sqrt(math.log(n) / (8.0 * n * gamma_r))


def resolve_tau(protocol: ProtocolChoice, config: ScenarioConfig) -> float:
    """Turn a tau policy into a number for this scenario.

    theorem2-* policies need eps_s and eps_t on the config and raise
    InfeasibleConfigError when the theorem-2 window is empty. The theorem2-min
    endpoint is clamped at 0 (a negative floor just means any threshold
    already satisfies secrecy).
    """
    if protocol.tau_policy == "manual":
        return float(protocol.tau)
    if protocol.tau_policy == "protocol1-formula":
        return tau_protocol1(config.n, config.gamma_r)
    if config.eps_s is None or config.eps_t is None:
        raise ValueError(f"tau policy {protocol.tau_policy!r} requires eps_s and eps_t in the scenario")
    interval = theorem2_tau_range(config.n, config.m, config.gamma_r,
                                  config.gamma_e, config.eps_s, config.eps_t)
    if not interval.feasible:
        raise InfeasibleConfigError(
            f"tau policy {protocol.tau_policy!r} has no feasible threshold: {interval.reason}")
    if protocol.tau_policy == "theorem2-max":
        return interval.tau_max
    return max(0.0, interval.tau_min)


def execute_two_hop(realization: ChannelRealization, protocol: ProtocolChoice,
                    config: ScenarioConfig, rng: np.random.Generator | None = None,
                    hop2_realization: ChannelRealization | None = None) -> TransmissionRecord:
    """Run one two-hop transmission and record every SINR.

    Hop 1: S transmits to the selected relay; jammer set 1 is thresholded
    against the selected relay. Hop 2: the selected relay transmits to D;
    jammer set 2 is thresholded against D. Each eavesdropper hears the hop's
    transmitter as signal and the hop's jammer set as interference.

    `rng` is required for random selection. `hop2_realization` substitutes a
    fresh channel for everything hop 2 touches (the independent-legs
    validation mode); by default both hops share one realization.
    """
    tau = resolve_tau(protocol, config)
    if protocol.kind == "random-uniform":
        if rng is None:
            raise ValueError("random-uniform selection needs an rng")
        selected = select_relay_random(realization.n, rng)
    else:
        selected = select_relay_optimal(realization)

    hop2 = realization if hop2_realization is None else hop2_realization

    jam1 = jammer_set(realization, selected, selected, tau)
    jam2 = jammer_set(hop2, "D", selected, tau)

    to_relay = realization.gains_to_relay(selected)
    sinr_relay = sinr(float(realization.s_r[selected]), to_relay[jam1], config)
    sinr_dest = sinr(float(hop2.r_d[selected]), hop2.r_d[jam2], config)

    eves1 = sinr_many(realization.s_e, realization.r_e[jam1, :].sum(axis=0), config)
    eves2 = sinr_many(hop2.r_e[selected, :], hop2.r_e[jam2, :].sum(axis=0), config)

    return TransmissionRecord(selected_relay=selected, jammers_hop1=jam1,
                              jammers_hop2=jam2, sinr_relay=sinr_relay,
                              sinr_dest=sinr_dest, sinr_eves_hop1=eves1,
                              sinr_eves_hop2=eves2)


def classify_outage(record: TransmissionRecord, config: ScenarioConfig) -> OutageFlags:
    """Apply the decoding thresholds to one transmission record.

    A legitimate receiver decodes iff its SINR is strictly greater than
    gamma_r; an eavesdropper succeeds iff its SINR reaches gamma_e. Both
    boundary conventions matter only on measure-zero events but are fixed
    for reproducibility.
    """
    t1 = not record.sinr_relay > config.gamma_r
    t2 = not record.sinr_dest > config.gamma_r
    s1 = bool(np.any(record.sinr_eves_hop1 >= config.gamma_e))
    s2 = bool(np.any(record.sinr_eves_hop2 >= config.gamma_e))
    return OutageFlags(t_out_hop1=t1, t_out_hop2=t2, s_out_hop1=s1,
                       s_out_hop2=s2, t_out_e2e=t1 or t2, s_out_e2e=s1 or s2)
