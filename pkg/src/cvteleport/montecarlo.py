"""Seeded Monte Carlo verification of the analytic criteria.

Every latent Gaussian mode of a teleporter is sampled shot by shot, input
and output quadrature records are synthesized from the linear input-output
relation, and each criterion is re-estimated from sample moments together
with a standard error.  The estimates provide an independent statistical
check of the closed-form results.

Determinism contract
--------------------
All deviates come from counter-based Philox streams keyed by
(seed, stream kind, stream name, block index), where the stream name is the
latent mode_id (hashed through SHA-256) or the input-quadrature tag.
Shots are partitioned into fixed-size blocks by shot index, per-block
moment sums are merged with exact summation (math.fsum), and latent
contributions are accumulated in sorted mode_id order.  Consequently the
results are bit-identical for a given (teleporter, input, n_shots, seed)
regardless of the number of workers or of the order in which noise terms
were listed.
"""

from __future__ import annotations

import hashlib
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .quadrature import InputState, QuadratureMap
from .teleporter import Teleporter

BLOCK_SHOTS = 1 << 16
MIN_SHOTS = 100

_QUANTITIES = (
    "ts_plus",
    "ts_minus",
    "t_t",
    "vcv_plus",
    "vcv_minus",
    "v_t",
    "c_f",
    "v_cvf",
    "v_out_plus",
    "v_out_minus",
    "cov_plus",
    "cov_minus",
)


@dataclass(frozen=True)
class Estimate:
    value: float
    std_error: float


@dataclass(frozen=True)
class SampleStats:
    """Monte Carlo criteria estimates with delta-method standard errors."""

    n_shots: int
    seed: int
    ts_plus: Estimate
    ts_minus: Estimate
    t_t: Estimate
    vcv_plus: Estimate
    vcv_minus: Estimate
    v_t: Estimate
    c_f: Estimate
    v_cvf: Estimate
    v_out_plus: Estimate
    v_out_minus: Estimate
    cov_plus: Estimate
    cov_minus: Estimate

    def as_dict(self) -> dict[str, Estimate]:
        """Estimates keyed by quantity name, in canonical order."""
        return {name: getattr(self, name) for name in _QUANTITIES}


@dataclass(frozen=True)
class SignalTransferStats:
    """Injected-test-signal estimates of the signal transfer coefficients."""

    n_shots: int
    seed: int
    ts_plus_hat: Estimate
    ts_minus_hat: Estimate


def _validate(n_shots: int, seed: int) -> None:
    if n_shots < MIN_SHOTS:
        raise ValueError(f"n_shots must be at least {MIN_SHOTS}, got {n_shots}")
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned value, got {seed}")


def _stream(seed: int, kind: str, name: str, block: int) -> np.random.Generator:
    """Philox generator for one (stream, block); independent of list order."""
    digest = hashlib.sha256(f"{kind}:{name}".encode("utf-8")).digest()
    words = [int.from_bytes(digest[i : i + 8], "little") for i in range(0, 32, 8)]
    seq = np.random.SeedSequence([seed, *words, block])
    return np.random.Generator(np.random.Philox(seq))


def _block_bounds(n_shots: int) -> list[tuple[int, int]]:
    return [(start, min(start + BLOCK_SHOTS, n_shots)) for start in range(0, n_shots, BLOCK_SHOTS)]


def _quadrature_records(
    qmap: QuadratureMap,
    v_in: float,
    signal: float,
    quad_tag: str,
    seed: int,
    block: int,
    length: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Synthesize one block of input and output records for one quadrature."""
    x_in = _stream(seed, "input", quad_tag, block).standard_normal(length)
    x_in *= math.sqrt(v_in)
    if signal != 0.0:
        x_in += signal
    x_out = qmap.gain * x_in
    # Sorted accumulation keeps the record independent of the list order.
    for term in sorted(qmap.noise, key=lambda t: t.mode_id):
        z = _stream(seed, "noise", term.mode_id, block).standard_normal(length)
        x_out += (term.coefficient * math.sqrt(term.variance)) * z
    return x_in, x_out


def _block_sums(
    teleporter: Teleporter, state: InputState, use_signals: bool, seed: int, bounds: tuple[int, int]
) -> tuple[float, ...]:
    start, stop = bounds
    block = start // BLOCK_SHOTS
    length = stop - start
    sums: list[float] = []
    for quad in ("+", "-"):
        signal = state.signal(quad) if use_signals else 0.0
        x_in, x_out = _quadrature_records(
            teleporter.map_for(quad), state.variance(quad), signal, quad, seed, block, length
        )
        sums.extend(
            (
                float(x_in.sum()),
                float((x_in * x_in).sum()),
                float(x_out.sum()),
                float((x_out * x_out).sum()),
                float((x_in * x_out).sum()),
            )
        )
    return tuple(sums)


def _accumulate(
    teleporter: Teleporter,
    state: InputState,
    n_shots: int,
    seed: int,
    workers: int,
    use_signals: bool,
) -> dict[str, dict[str, float]]:
    """Sample all blocks and reduce to per-quadrature first/second moments."""
    bounds = _block_bounds(n_shots)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(
                pool.map(lambda b: _block_sums(teleporter, state, use_signals, seed, b), bounds)
            )
    else:
        blocks = [_block_sums(teleporter, state, use_signals, seed, b) for b in bounds]

    # fsum of the per-block sums is exactly rounded, hence independent of
    # both block completion order and worker count.
    totals = [math.fsum(blk[i] for blk in blocks) for i in range(10)]
    n = n_shots
    moments: dict[str, dict[str, float]] = {}
    for offset, quad in ((0, "+"), (5, "-")):
        s1_in, s2_in, s1_out, s2_out, s11 = totals[offset : offset + 5]
        moments[quad] = {
            "mean_in": s1_in / n,
            "mean_out": s1_out / n,
            "v_in": (s2_in - s1_in * s1_in / n) / (n - 1),
            "v_out": (s2_out - s1_out * s1_out / n) / (n - 1),
            "cov": (s11 - s1_in * s1_out / n) / (n - 1),
        }
    return moments


def _moment_covariance(v_in: float, v_out: float, cov: float, n: int) -> np.ndarray:
    """Sampling covariance of (v_in_hat, v_out_hat, cov_hat) under Gaussianity."""
    return (
        np.array(
            [
                [2 * v_in * v_in, 2 * cov * cov, 2 * v_in * cov],
                [2 * cov * cov, 2 * v_out * v_out, 2 * v_out * cov],
                [2 * v_in * cov, 2 * v_out * cov, v_in * v_out + cov * cov],
            ]
        )
        / (n - 1)
    )


def _delta_method_se(func, m: np.ndarray, sigma: np.ndarray) -> float:
    """Standard error of func(m) by delta-method with a numerical gradient."""
    grad = np.zeros(len(m))
    for i in range(len(m)):
        h = 1e-6 * max(abs(m[i]), 1e-3)
        up = m.copy()
        dn = m.copy()
        up[i] += h
        dn[i] -= h
        grad[i] = (func(up) - func(dn)) / (2 * h)
    variance = float(grad @ sigma @ grad)
    return math.sqrt(max(variance, 0.0))


def _criteria_from_moments(m: np.ndarray) -> dict[str, float]:
    """Every reported quantity from (v_in+, v_out+, cov+, v_in-, v_out-, cov-)."""
    vin_p, vout_p, cov_p, vin_m, vout_m, cov_m = m
    c_p = cov_p * cov_p / (vin_p * vout_p)
    c_m = cov_m * cov_m / (vin_m * vout_m)
    cov_sum = cov_p + cov_m
    c_f = cov_sum * cov_sum / ((vin_p + vin_m) * (vout_p + vout_m))
    return {
        "ts_plus": c_p,
        "ts_minus": c_m,
        "t_t": c_p + c_m,
        "vcv_plus": vout_p * (1.0 - c_p),
        "vcv_minus": vout_m * (1.0 - c_m),
        "v_t": 0.5 * (vout_p * (1.0 - c_p) + vout_m * (1.0 - c_m)),
        "c_f": c_f,
        "v_cvf": 0.5 * (vout_p + vout_m) * (1.0 - c_f),
        "v_out_plus": vout_p,
        "v_out_minus": vout_m,
        "cov_plus": cov_p,
        "cov_minus": cov_m,
    }


def sample_criteria(
    teleporter: Teleporter,
    state: InputState,
    n_shots: int,
    seed: int,
    workers: int = 1,
) -> SampleStats:
    """Estimate every criterion from n_shots synthesized quadrature records.

    Variances and covariances use the unbiased (n-1) estimator; squared
    sample correlations stand in for the signal transfer coefficients.
    Coherent test signals on the input state are ignored here (criteria are
    fluctuation quantities); use :func:`sample_signal_transfer` for the
    injected-signal route.
    """
    _validate(n_shots, seed)
    moments = _accumulate(teleporter, state, n_shots, seed, workers, use_signals=False)
    m = np.array(
        [
            moments["+"]["v_in"],
            moments["+"]["v_out"],
            moments["+"]["cov"],
            moments["-"]["v_in"],
            moments["-"]["v_out"],
            moments["-"]["cov"],
        ]
    )
    sigma = np.zeros((6, 6))
    sigma[:3, :3] = _moment_covariance(m[0], m[1], m[2], n_shots)
    sigma[3:, 3:] = _moment_covariance(m[3], m[4], m[5], n_shots)

    values = _criteria_from_moments(m)
    estimates = {}
    for name in _QUANTITIES:
        se = _delta_method_se(lambda mm, q=name: _criteria_from_moments(mm)[q], m, sigma)
        estimates[name] = Estimate(value=float(values[name]), std_error=se)
    return SampleStats(n_shots=n_shots, seed=seed, **estimates)


def sample_signal_transfer(
    teleporter: Teleporter,
    state: InputState,
    n_shots: int,
    seed: int,
    workers: int = 1,
) -> SignalTransferStats:
    """Estimate T_s by injecting DC test signals on both input quadratures.

    SNR_in uses the known signal power over the estimated input variance;
    SNR_out uses the squared sample mean of the output record over its
    fluctuation variance.  Keep |signal| <= 0.1 * sqrt(v_in) for the
    small-signal regime.  At one analysis frequency a DC offset is
    equivalent to a modulated tone for SNR purposes.
    """
    _validate(n_shots, seed)
    if state.s_plus == 0.0 or state.s_minus == 0.0:
        raise ValueError("both test-signal amplitudes must be nonzero")
    moments = _accumulate(teleporter, state, n_shots, seed, workers, use_signals=True)

    estimates = {}
    for quad, field in (("+", "ts_plus_hat"), ("-", "ts_minus_hat")):
        s = state.signal(quad)
        mom = moments[quad]
        # Fluctuation moments: means subtracted, so the DC signal does not
        # bias the variance path.
        m = np.array([mom["mean_out"], mom["v_out"], mom["v_in"]])

        def ratio(mm: np.ndarray, s2: float = s * s) -> float:
            mean_out, v_out, v_in = mm
            return (mean_out * mean_out / v_out) / (s2 / v_in)

        sigma = np.zeros((3, 3))
        sigma[0, 0] = mom["v_out"] / n_shots
        sigma[1, 1] = 2 * mom["v_out"] ** 2 / (n_shots - 1)
        sigma[2, 2] = 2 * mom["v_in"] ** 2 / (n_shots - 1)
        sigma[1, 2] = sigma[2, 1] = 2 * mom["cov"] ** 2 / (n_shots - 1)
        estimates[field] = Estimate(
            value=float(ratio(m)), std_error=_delta_method_se(ratio, m, sigma)
        )
    return SignalTransferStats(n_shots=n_shots, seed=seed, **estimates)
