"""Dual-mode Monte Carlo engine for the post-beamforming SE distribution.

Idealized mode reproduces the assumptions behind the closed-form analysis:
main-lobe-only equivalent response (N_a/sqrt(N_t)) q, binary blockage drawn
independently per path at the marginal probability p_blk. It is the oracle
the analytic module is validated against.

Realistic mode keeps the exact array responses (side lobes included), draws
one blockage probability per frame shared by all paths, and attenuates
blocked served paths by 1/eta instead of nulling them; unserved paths have
no beam and are nulled when blocked.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .beamforming import (
    Beamformer,
    PanelAllocation,
    beam_hpbw_deg,
    build_beamformer,
    equivalent_array_response_exact,
)
from .channel import blockage_attenuation, path_variances
from .config import SystemConfig
from .errors import ConfigurationError

# Trials are generated in fixed-size chunks, each with its own generator
# keyed by (seed, chunk index); results are merged in chunk order, so the
# sample sequence is reproducible no matter how chunks are scheduled.
CHUNK_TRIALS = 1 << 16

MODES = ("idealized", "realistic")


@dataclass
class TrialBatchResult:
    """Per-trial SE samples plus summary statistics for one simulation batch."""

    se_samples: np.ndarray
    mean_se: float
    mean_rsnr: float
    trials: int
    seed: int
    mode: str
    aods: np.ndarray
    _sorted: np.ndarray = field(repr=False, default=None)

    def __post_init__(self) -> None:
        if self._sorted is None:
            self._sorted = np.sort(self.se_samples)

    def empirical_cdf(self, se_bits: np.ndarray) -> np.ndarray:
        """Fraction of samples <= se_bits (right-continuous empirical CDF)."""
        idx = np.searchsorted(self._sorted, np.asarray(se_bits, dtype=float), side="right")
        return idx / self.trials


def _chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy=(seed, chunk_index)))
    )


def _chunk_sizes(n_trials: int) -> list[int]:
    full, rem = divmod(n_trials, CHUNK_TRIALS)
    return [CHUNK_TRIALS] * full + ([rem] if rem else [])


def run_trials(
    config: SystemConfig,
    alloc: PanelAllocation,
    aods: np.ndarray,
    mode: str,
    n_trials: int,
    seed: int,
) -> TrialBatchResult:
    """Simulate n_trials transmission frames and record the SE of each.

    Every frame resamples the path gains and the blockage state; the AoDs
    (and hence the beamformer in realistic mode) stay fixed for the batch.
    Deterministic for a fixed (mode, seed) regardless of chunk scheduling.
    """
    if n_trials < 1:
        raise ConfigurationError(f"n_trials must be >= 1, got {n_trials}")
    if mode not in MODES:
        raise ConfigurationError(f"mode must be one of {MODES}, got {mode!r}")
    aods = np.asarray(aods, dtype=float)
    if aods.shape != (config.num_paths,):
        raise ValueError(f"expected {config.num_paths} AoDs, got shape {aods.shape}")
    if alloc.num_panels != config.n_p or len(alloc.q) != config.num_paths:
        raise ConfigurationError(
            f"allocation {alloc.q} does not match n_p={config.n_p}, L={config.num_paths}"
        )

    stats = path_variances(config.rician_k, config.num_paths)
    gain_scale = np.sqrt(stats.variances / 2.0)
    q = alloc.as_array().astype(float)

    if mode == "idealized":
        a_eq = config.n_a / np.sqrt(config.n_t) * q
        blocked_values = None
    else:
        bf: Beamformer = build_beamformer(alloc, aods, config)
        a_eq = equivalent_array_response_exact(aods, bf)
        hpbw = beam_hpbw_deg(alloc, config.n_a)
        served = q > 0
        blocked_values = np.zeros(config.num_paths)
        blocked_values[served] = blockage_attenuation(hpbw[served])

    L = config.num_paths
    gamma_chunks = []
    for chunk_index, size in enumerate(_chunk_sizes(n_trials)):
        rng = _chunk_rng(seed, chunk_index)
        gains = gain_scale * (
            rng.standard_normal((size, L)) + 1j * rng.standard_normal((size, L))
        )
        if mode == "idealized":
            # independent binary blockage at the marginal probability p_blk
            omega = (rng.random((size, L)) >= config.p_blk).astype(float)
        else:
            # one blockage probability per frame, shared by all paths
            p_hat = rng.uniform(config.p_min, config.p_max, size=size)
            blocked = rng.random((size, L)) < p_hat[:, None]
            omega = np.where(blocked, blocked_values[None, :], 1.0)
        h_eq = np.sum(omega * gains.conj() * a_eq[None, :], axis=1)
        gamma_chunks.append(config.tx_snr * np.abs(h_eq) ** 2)

    gamma = np.concatenate(gamma_chunks)
    se = np.log2(1.0 + gamma)
    return TrialBatchResult(
        se_samples=se,
        mean_se=float(se.mean()),
        mean_rsnr=float(gamma.mean()),
        trials=n_trials,
        seed=seed,
        mode=mode,
        aods=aods,
    )


def empirical_outage(result: TrialBatchResult, target_se: float) -> float:
    """Fraction of trials with SE strictly below the target."""
    idx = np.searchsorted(result._sorted, target_se, side="left")
    return idx / result.trials


def ks_distance(result: TrialBatchResult, se_cdf) -> float:
    """Kolmogorov-Smirnov distance between the sample set and an SE CDF.

    ``se_cdf`` is a vectorized callable returning the model CDF at given SE
    values. The model may carry a point mass at SE = 0 (the all-blocked
    atom) and must be continuous elsewhere; tied zero samples are collapsed
    so the atom is compared jump-against-jump.
    """
    xs, counts = np.unique(result._sorted, return_counts=True)
    n = result.trials
    fn_hi = np.cumsum(counts) / n  # empirical CDF at xs
    fn_lo = fn_hi - counts / n  # empirical CDF just below xs
    model = np.asarray(se_cdf(xs), dtype=float)
    model_left = model.copy()
    if xs.size and xs[0] == 0.0:
        model_left[0] = 0.0
    d_plus = np.max(fn_hi - model)
    d_minus = np.max(model_left - fn_lo)
    return float(max(d_plus, d_minus, 0.0))
