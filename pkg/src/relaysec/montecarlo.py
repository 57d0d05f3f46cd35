"""Replicated-trial estimation of outage probabilities and load-balance statistics.

Trials are embarrassingly parallel: trial t draws everything it needs from
the counter-based substream (seed, t), so a run can be split across any
number of workers and merged back into counts that are bit-identical to a
single-worker run. All proportions carry Wilson 95% intervals, which stay
honest at the extreme rates secrecy studies produce.

Two leg-sampling modes exist because the protocol and the closed-form
analysis disagree about hop coupling: "shared" runs both hops on one channel
realization (what the protocol actually experiences), while "independent"
redraws the channel for hop 2 (what the leg-combining identity assumes). The
estimate records the empirical hop correlation either way, so shared-mode
results document how far the independence assumption drifts.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .channel import ScenarioConfig, sample_realization, trial_rng
from .protocols import (ProtocolChoice, classify_outage, execute_two_hop,
                        resolve_tau, select_relay_optimal)

LEG_MODES = ("shared", "independent")

Z95 = 1.959963984540054  # two-sided 95% normal quantile


class Proportion(NamedTuple):
    """A point estimate with its Wilson 95% interval."""

    p: float
    lo: float
    hi: float


def wilson_interval(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        return (0.0, 1.0)
    p = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2.0 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials)) / denom
    # containment of the point estimate must survive float rounding at p = 0 or 1
    return (min(p, max(0.0, center - half)), max(p, min(1.0, center + half)))


_COUNT_KEYS = ("t_hop1", "t_hop2", "t_e2e", "t_both",
               "s_hop1", "s_hop2", "s_e2e", "s_both",
               "eve_hits_hop1", "jam1_sum", "jam1_sumsq")


def _run_trials(config: ScenarioConfig, protocol: ProtocolChoice,
                start: int, stop: int, seed: int, legs: str) -> dict[str, int]:
    """Run trials [start, stop) and return raw outcome counts."""
    c = dict.fromkeys(_COUNT_KEYS, 0)
    gamma_e = config.gamma_e
    for t in range(start, stop):
        rng = trial_rng(seed, t)
        realization = sample_realization(config, rng)
        hop2 = sample_realization(config, rng) if legs == "independent" else None
        record = execute_two_hop(realization, protocol, config, rng=rng,
                                 hop2_realization=hop2)
        flags = classify_outage(record, config)
        c["t_hop1"] += flags.t_out_hop1
        c["t_hop2"] += flags.t_out_hop2
        c["t_e2e"] += flags.t_out_e2e
        c["t_both"] += flags.t_out_hop1 and flags.t_out_hop2
        c["s_hop1"] += flags.s_out_hop1
        c["s_hop2"] += flags.s_out_hop2
        c["s_e2e"] += flags.s_out_e2e
        c["s_both"] += flags.s_out_hop1 and flags.s_out_hop2
        c["eve_hits_hop1"] += int(np.count_nonzero(record.sinr_eves_hop1 >= gamma_e))
        k = len(record.jammers_hop1)
        c["jam1_sum"] += k
        c["jam1_sumsq"] += k * k
    return c


@dataclass(frozen=True)
class OutageEstimate:
    """Pooled outcome counts from one set of trials, with derived estimates.

    Counts are stored rather than ratios so that estimates from disjoint
    trial ranges merge exactly.
    """

    config: ScenarioConfig
    protocol: ProtocolChoice
    legs: str
    seed: int
    trial_start: int
    trials: int
    counts: dict

    def _prop(self, key: str) -> Proportion:
        k = self.counts[key]
        lo, hi = wilson_interval(k, self.trials)
        return Proportion(k / self.trials, lo, hi)

    @property
    def t_hop1(self) -> Proportion:
        return self._prop("t_hop1")

    @property
    def t_hop2(self) -> Proportion:
        return self._prop("t_hop2")

    @property
    def t_e2e(self) -> Proportion:
        return self._prop("t_e2e")

    @property
    def s_hop1(self) -> Proportion:
        return self._prop("s_hop1")

    @property
    def s_hop2(self) -> Proportion:
        return self._prop("s_hop2")

    @property
    def s_e2e(self) -> Proportion:
        return self._prop("s_e2e")

    @property
    def eve_single_hop1(self) -> Proportion | None:
        """Per-eavesdropper hop-1 intercept rate, pooled over all eavesdroppers."""
        denom = self.trials * self.config.m
        if denom == 0:
            return None
        k = self.counts["eve_hits_hop1"]
        lo, hi = wilson_interval(k, denom)
        return Proportion(k / denom, lo, hi)

    @property
    def mean_jammers_hop1(self) -> float:
        return self.counts["jam1_sum"] / self.trials

    @property
    def se_jammers_hop1(self) -> float:
        """Standard error of the mean hop-1 jammer count."""
        if self.trials < 2:
            return math.inf
        s, ss = self.counts["jam1_sum"], self.counts["jam1_sumsq"]
        var = (ss - s * s / self.trials) / (self.trials - 1)
        return math.sqrt(max(0.0, var) / self.trials)

    def hop_correlation(self, outage: str) -> float | None:
        """Phi correlation between the two hops' outage indicators ("t" or "s")."""
        n1, n2 = self.counts[f"{outage}_hop1"], self.counts[f"{outage}_hop2"]
        both, n = self.counts[f"{outage}_both"], self.trials
        denom = n1 * (n - n1) * n2 * (n - n2)
        if denom == 0:
            return None
        return (both * n - n1 * n2) / math.sqrt(denom)

    def as_dict(self) -> dict:
        out = {"trials": self.trials, "seed": self.seed, "legs": self.legs}
        for key, prop in (("p_t_hop1", self.t_hop1), ("p_t_hop2", self.t_hop2),
                          ("p_t_e2e", self.t_e2e), ("p_s_hop1", self.s_hop1),
                          ("p_s_hop2", self.s_hop2), ("p_s_e2e", self.s_e2e),
                          ("p_eve_single_hop1", self.eve_single_hop1)):
            if prop is None:
                out[key] = out[f"{key}_ci_lo"] = out[f"{key}_ci_hi"] = None
            else:
                out[key], out[f"{key}_ci_lo"], out[f"{key}_ci_hi"] = prop
        out["mean_jammers_hop1"] = self.mean_jammers_hop1
        out["corr_t_hops"] = self.hop_correlation("t")
        out["corr_s_hops"] = self.hop_correlation("s")
        return out


def estimate_outage(config: ScenarioConfig, protocol: ProtocolChoice,
                    trials: int, seed: int, legs: str = "shared",
                    workers: int = 1, trial_start: int = 0) -> OutageEstimate:
    """Estimate all outage probabilities from `trials` simulated transmissions.

    The result is identical for any `workers` count: trial t always uses
    substream (seed, t), and workers only partition the trial range.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if legs not in LEG_MODES:
        raise ValueError(f"legs must be one of {LEG_MODES}, got {legs!r}")
    resolve_tau(protocol, config)  # surface an infeasible tau policy before any trial
    if workers <= 1:
        counts = _run_trials(config, protocol, trial_start, trial_start + trials, seed, legs)
        return OutageEstimate(config=config, protocol=protocol, legs=legs, seed=seed,
                              trial_start=trial_start, trials=trials, counts=counts)
    edges = np.linspace(trial_start, trial_start + trials, workers + 1).astype(int)
    ranges = [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]
    with ProcessPoolExecutor(max_workers=len(ranges)) as pool:
        futures = [pool.submit(_run_trials, config, protocol, a, b, seed, legs)
                   for a, b in ranges]
        parts = [OutageEstimate(config=config, protocol=protocol, legs=legs, seed=seed,
                                trial_start=a, trials=b - a, counts=f.result())
                 for (a, b), f in zip(ranges, futures)]
    return merge_estimates(parts)


def merge_estimates(parts: list[OutageEstimate]) -> OutageEstimate:
    """Pool estimates taken over disjoint trial ranges of one configuration.

    Merging is exact (counts add), so the result equals a single run over
    the union of the ranges. Parts with mismatched configuration, protocol,
    leg mode or seed are rejected.
    """
    if not parts:
        raise ValueError("nothing to merge")
    head = parts[0]
    for p in parts[1:]:
        if (p.config, p.protocol, p.legs, p.seed) != (head.config, head.protocol,
                                                      head.legs, head.seed):
            raise ValueError("cannot merge estimates from different runs")
    counts = dict.fromkeys(_COUNT_KEYS, 0)
    for p in parts:
        for k in _COUNT_KEYS:
            counts[k] += p.counts[k]
    return OutageEstimate(config=head.config, protocol=head.protocol, legs=head.legs,
                          seed=head.seed,
                          trial_start=min(p.trial_start for p in parts),
                          trials=sum(p.trials for p in parts), counts=counts)


@dataclass(frozen=True)
class ToleranceResult:
    """Outcome of an empirical eavesdropper-tolerance search."""

    m_max: int
    violated_at_m1: bool
    probes: tuple

    def __int__(self) -> int:
        return self.m_max


def tolerance_search(config: ScenarioConfig, protocol: ProtocolChoice,
                     eps_s: float, trials: int, m_cap: int, seed: int,
                     legs: str = "shared", workers: int = 1) -> ToleranceResult:
    """Largest m <= m_cap whose estimated secrecy outage stays within eps_s.

    Uses the Wilson upper bound of p_s_e2e (conservative at the chosen trial
    count) and doubling-then-bisection, justified by the monotonicity of
    secrecy outage in m. The jamming threshold is resolved once from the
    base configuration and frozen, so policies that depend on m do not move
    during the search.
    """
    if m_cap < 1:
        raise ValueError(f"m_cap must be >= 1, got {m_cap}")
    if not 0.0 <= eps_s <= 1.0:
        raise ValueError(f"eps_s must be in [0, 1], got {eps_s}")
    frozen = ProtocolChoice(kind=protocol.kind, tau_policy="manual",
                            tau=resolve_tau(protocol, config))
    probes: list[tuple[int, float]] = []

    def ok(m: int) -> bool:
        est = estimate_outage(replace(config, m=m), frozen, trials, seed,
                              legs=legs, workers=workers)
        upper = est.s_e2e.hi
        probes.append((m, upper))
        return upper <= eps_s

    if not ok(1):
        return ToleranceResult(0, True, tuple(probes))
    good, bad = 1, None
    while good < m_cap:
        nxt = min(2 * good, m_cap)
        if ok(nxt):
            good = nxt
        else:
            bad = nxt
            break
    if bad is None:
        return ToleranceResult(good, False, tuple(probes))
    while bad - good > 1:
        mid = (good + bad) // 2
        if ok(mid):
            good = mid
        else:
            bad = mid
    return ToleranceResult(good, False, tuple(probes))


def jain_index(counts) -> float:
    """Jain fairness (sum c)^2 / (n sum c^2): 1 when balanced, 1/n when concentrated."""
    c = np.asarray(counts, dtype=float)
    total_sq = c.sum() ** 2
    if total_sq == 0.0:
        return 1.0
    return float(total_sq / (c.size * np.sum(c * c)))


def selection_entropy(counts) -> float:
    """Entropy in nats of the empirical selection distribution."""
    c = np.asarray(counts, dtype=float)
    total = c.sum()
    if total == 0.0:
        return 0.0
    p = c[c > 0] / total
    return float(-np.sum(p * np.log(p)))


@dataclass(frozen=True)
class LoadBalanceStats:
    """Relay-selection frequencies over a run of transmission slots."""

    selection_counts: tuple
    jain_index: float
    entropy: float
    slots: int
    epochs: int
    coherence_len: int
    constant_within_epochs: bool
    seed: int

    def as_dict(self) -> dict:
        return {"selection_counts": list(self.selection_counts),
                "jain_index": self.jain_index, "entropy": self.entropy,
                "slots": self.slots, "epochs": self.epochs,
                "coherence_len": self.coherence_len,
                "constant_within_epochs": self.constant_within_epochs,
                "seed": self.seed}


def load_balance(config: ScenarioConfig, protocol: ProtocolChoice,
                 slots: int, seed: int) -> LoadBalanceStats:
    """Relay-selection statistics over slots grouped into coherence epochs.

    The channel is resampled at epoch boundaries (every coherence_len slots)
    and the relay is reselected every slot, which is what makes max-min
    selection freeze onto one relay per epoch while random selection keeps
    rotating. Only selection is simulated; no jamming threshold is needed.
    """
    if slots < 1:
        raise ValueError(f"slots must be >= 1, got {slots}")
    n, epoch_len = config.n, config.coherence_len
    counts = np.zeros(n, dtype=np.int64)
    constant = True
    epochs = (slots + epoch_len - 1) // epoch_len
    for e in range(epochs):
        rng = trial_rng(seed, e)
        realization = sample_realization(config, rng)
        k = min(epoch_len, slots - e * epoch_len)
        if protocol.kind == "optimal-maxmin":
            picks = np.array([select_relay_optimal(realization) for _ in range(k)])
        else:
            picks = rng.integers(0, n, size=k)
        np.add.at(counts, picks, 1)
        if constant and len(np.unique(picks)) > 1:
            constant = False
    return LoadBalanceStats(selection_counts=tuple(int(c) for c in counts),
                            jain_index=jain_index(counts),
                            entropy=selection_entropy(counts),
                            slots=slots, epochs=epochs, coherence_len=epoch_len,
                            constant_within_epochs=constant, seed=seed)
