"""Teleportation benchmark criteria for linear quadrature maps.

Two complementary figures of merit are computed per quadrature and then
combined:

* signal transfer T_s = SNR_out / SNR_in for a small classical test signal,
  which for these models equals the squared input-output correlation C; the
  quadrature sum T_t = T_s+ + T_s- cannot exceed 1 without entanglement,
* conditional variance V_cv = V_out * (1 - C), the residual output noise
  given the input record; the average V_t = (V_cv+ + V_cv-) / 2 cannot fall
  below 1 without entanglement.

On top of the per-quadrature quantities the module builds the field
correlation C_f and field conditional variance V_cvf, which quantify how
well the full field operator (both quadratures jointly) is preserved.  For
symmetric teleporters V_cvf = V_t; for asymmetric ones they differ and
V_cvf is the better-behaved measure.

Operating regions are classified on V_cvf: ``strong`` below 1 (true EPR
entanglement required, non-classical features can survive), ``intermediate``
in [1, 2) (entanglement demonstrable), ``classical`` at 2 and above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .quadrature import (
    InputState,
    QuadratureMap,
    added_noise_variance,
    in_out_covariance,
    output_variance,
)
from .teleporter import Teleporter

# Agreement tolerance between algebraically equivalent computation routes;
# also the snap width for region boundaries, which classify upward.
DUAL_ROUTE_TOL = 1e-12


class Region(str, Enum):
    CLASSICAL = "Classical"
    INTERMEDIATE = "Intermediate"
    STRONG = "Strong"


@dataclass(frozen=True)
class ClassicalBoundCheck:
    """Result of the classical-channel added-noise bound test."""

    product: float
    satisfied: bool


@dataclass(frozen=True)
class CriteriaReport:
    """All criteria for one teleporter/input pair, plus the region tag.

    ``input_minimum_uncertainty`` is False when the input state is not
    minimum-uncertainty, in which case the classical bound T_t <= 1 is not
    guaranteed (the quantities themselves remain well defined).
    """

    ts_plus: float
    ts_minus: float
    t_t: float
    c_plus: float
    c_minus: float
    vcv_plus: float
    vcv_minus: float
    v_t: float
    c_f: float
    v_cvf: float
    region: Region
    both_violated: bool
    input_minimum_uncertainty: bool


def signal_transfer(qmap: QuadratureMap, v_in: float) -> float:
    """Signal transfer coefficient gain**2 v_in / (gain**2 v_in + N).

    Zero-gain maps transfer no signal (returns 0 when noise is present);
    a map with zero gain and zero noise has no defined SNR and is rejected.
    """
    if not v_in > 0:
        raise ValueError(f"input variance must be > 0, got {v_in}")
    signal_power = qmap.gain * qmap.gain * v_in
    noise = added_noise_variance(qmap)
    if signal_power == 0.0 and noise == 0.0:
        raise ValueError(
            "signal transfer undefined: zero gain and zero added noise"
        )
    if signal_power == 0.0:
        return 0.0
    return signal_power / (signal_power + noise)


def correlation(qmap: QuadratureMap, v_in: float) -> float:
    """Squared input-output correlation cov**2 / (v_in * v_out).

    Equals the signal transfer coefficient when there is no cross-quadrature
    coupling, which this model enforces.
    """
    if not v_in > 0:
        raise ValueError(f"input variance must be > 0, got {v_in}")
    v_out = output_variance(qmap, v_in)
    if v_out == 0.0:
        raise ValueError("correlation undefined: output carries no fluctuations")
    cov = in_out_covariance(qmap, v_in)
    return cov * cov / (v_in * v_out)


def conditional_variance(qmap: QuadratureMap, v_in: float) -> float:
    """Conditional variance V_out * (1 - C) of the output given the input.

    Algebraically this equals the added-noise variance N; both routes are
    evaluated and must agree to 1e-12.
    """
    v_out = output_variance(qmap, v_in)
    v_cv = v_out * (1.0 - correlation(qmap, v_in))
    noise = added_noise_variance(qmap)
    if abs(v_cv - noise) > DUAL_ROUTE_TOL:
        raise AssertionError(
            f"conditional variance routes disagree: {v_cv!r} vs noise {noise!r}"
        )
    return v_cv


def t_total(teleporter: Teleporter, state: InputState) -> float:
    """Quadrature sum of signal transfer coefficients, in [0, 2]."""
    return signal_transfer(teleporter.plus, state.v_plus) + signal_transfer(
        teleporter.minus, state.v_minus
    )


def v_total(teleporter: Teleporter, state: InputState) -> float:
    """Quadrature average of conditional variances."""
    return 0.5 * (
        conditional_variance(teleporter.plus, state.v_plus)
        + conditional_variance(teleporter.minus, state.v_minus)
    )


def field_correlation(teleporter: Teleporter, state: InputState) -> float:
    """Correlation of input and output field operators, in [0, 1].

    Built from the symmetrized field-operator covariance, which in terms of
    quadrature moments is (cov+ + cov-)**2 / ((V_in+ + V_in-)(V_out+ + V_out-)).
    1 for identical fields, 0 for independent ones.
    """
    cov_sum = in_out_covariance(teleporter.plus, state.v_plus) + in_out_covariance(
        teleporter.minus, state.v_minus
    )
    v_out_sum = output_variance(teleporter.plus, state.v_plus) + output_variance(
        teleporter.minus, state.v_minus
    )
    if v_out_sum == 0.0:
        raise ValueError("field correlation undefined: output carries no fluctuations")
    return cov_sum * cov_sum / ((state.v_plus + state.v_minus) * v_out_sum)


def field_conditional_variance(teleporter: Teleporter, state: InputState) -> float:
    """Field conditional variance (V_out+ + V_out-)/2 * (1 - C_f).

    Also evaluated through the signal-transfer route
    (V_out+ + V_out- - (s+ sqrt(T_s+ V_out+ V_in+) + s- sqrt(T_s- V_out- V_in-))**2
    / (V_in+ + V_in-)) / 2, where s+- carries the sign of the in-out
    covariance (the square root alone would lose it for negative gains);
    the two routes must agree to 1e-12.  At least 1 for independent fields.
    """
    v_out_p = output_variance(teleporter.plus, state.v_plus)
    v_out_m = output_variance(teleporter.minus, state.v_minus)
    primary = 0.5 * (v_out_p + v_out_m) * (1.0 - field_correlation(teleporter, state))

    cov_p = in_out_covariance(teleporter.plus, state.v_plus)
    cov_m = in_out_covariance(teleporter.minus, state.v_minus)
    ts_route = 0.0
    for cov, qmap, v_in, v_out in (
        (cov_p, teleporter.plus, state.v_plus, v_out_p),
        (cov_m, teleporter.minus, state.v_minus, v_out_m),
    ):
        if qmap.gain == 0.0 and added_noise_variance(qmap) == 0.0:
            continue  # T_s undefined but the covariance contribution is 0
        term = math.sqrt(signal_transfer(qmap, v_in) * v_out * v_in)
        ts_route += math.copysign(term, cov) if cov != 0.0 else 0.0
    alternate = 0.5 * (
        v_out_p + v_out_m - ts_route * ts_route / (state.v_plus + state.v_minus)
    )
    if abs(primary - alternate) > DUAL_ROUTE_TOL:
        raise AssertionError(
            f"field conditional variance routes disagree: {primary!r} vs {alternate!r}"
        )
    return primary


def classical_bound_check(teleporter: Teleporter) -> ClassicalBoundCheck:
    """Added-noise uncertainty product (N+/gain+**2)(N-/gain-**2) vs 1.

    A product >= 1 is required of any map whose information crossed a
    classical channel; the bound is undefined for zero gain.
    """
    gp = teleporter.plus.gain
    gm = teleporter.minus.gain
    if gp == 0.0 or gm == 0.0:
        raise ValueError("classical bound undefined for zero gain")
    product = (added_noise_variance(teleporter.plus) / (gp * gp)) * (
        added_noise_variance(teleporter.minus) / (gm * gm)
    )
    return ClassicalBoundCheck(product=product, satisfied=product >= 1.0 - DUAL_ROUTE_TOL)


def _classify_region(v_cvf: float) -> Region:
    # Boundary values classify upward; the snap width absorbs closed-form
    # rounding (e.g. squared sqrt(2) coefficients landing 4e-16 low).
    if v_cvf >= 2.0 - DUAL_ROUTE_TOL:
        return Region.CLASSICAL
    if v_cvf >= 1.0 - DUAL_ROUTE_TOL:
        return Region.INTERMEDIATE
    return Region.STRONG


def classify(teleporter: Teleporter, state: InputState) -> CriteriaReport:
    """Evaluate every criterion and classify the operating region.

    ``both_violated`` requires strict violation of both classical bounds
    (T_t > 1 and V_t < 1, with a 1e-12 guard band so boundary cases do not
    count as violations).
    """
    ts_p = signal_transfer(teleporter.plus, state.v_plus)
    ts_m = signal_transfer(teleporter.minus, state.v_minus)
    c_p = correlation(teleporter.plus, state.v_plus)
    c_m = correlation(teleporter.minus, state.v_minus)
    vcv_p = conditional_variance(teleporter.plus, state.v_plus)
    vcv_m = conditional_variance(teleporter.minus, state.v_minus)
    t_t = ts_p + ts_m
    v_t = 0.5 * (vcv_p + vcv_m)
    c_f = field_correlation(teleporter, state)
    v_cvf = field_conditional_variance(teleporter, state)
    return CriteriaReport(
        ts_plus=ts_p,
        ts_minus=ts_m,
        t_t=t_t,
        c_plus=c_p,
        c_minus=c_m,
        vcv_plus=vcv_p,
        vcv_minus=vcv_m,
        v_t=v_t,
        c_f=c_f,
        v_cvf=v_cvf,
        region=_classify_region(v_cvf),
        both_violated=(t_t > 1.0 + DUAL_ROUTE_TOL) and (v_t < 1.0 - DUAL_ROUTE_TOL),
        input_minimum_uncertainty=state.minimum_uncertainty,
    )
