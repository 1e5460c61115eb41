"""Constructors for the teleporter models analyzed by the package.

A teleporter is a pair of quadrature maps (amplitude "+", phase "-") whose
latent noise modes are all mutually independent.  The built-in families are

* ``epr``            -- lossless symmetric scheme driven by a two-mode
                        entanglement resource of strength ``v_ent``,
* ``single_mode``    -- resource built by splitting one single-mode squeezed
                        beam (squeezing level ``v_s``) on a 50:50 splitter,
* ``classical``      -- measure-and-resend through classical channels only,
* ``custom``         -- arbitrary user-supplied quadrature maps.

Resource parameters live in (0, 1]: 1 means no squeezing/entanglement and
values toward 0 mean more.  Values above 1 are rejected rather than
reinterpreted, to prevent silent convention errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .quadrature import NoiseTerm, QuadratureMap

_SQRT_HALF = math.sqrt(0.5)


class Family(str, Enum):
    CLASSICAL = "classical"
    EPR = "epr"
    SINGLE_MODE = "single_mode"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Teleporter:
    """A pair of quadrature maps plus the family tag and its parameters.

    ``gain`` and ``resource`` record the family parameters for the built-in
    constructors and are None for custom teleporters.
    """

    plus: QuadratureMap
    minus: QuadratureMap
    family: Family = Family.CUSTOM
    gain: float | None = None
    resource: float | None = None

    def __post_init__(self) -> None:
        shared = self.plus.mode_ids & self.minus.mode_ids
        if shared:
            raise ValueError(
                f"quadrature maps share latent mode_ids {sorted(shared)}; "
                "cross-quadrature coupling is not modelled"
            )

    @property
    def symmetric(self) -> bool:
        """True when both quadratures see the same signal gain."""
        return self.plus.gain == self.minus.gain

    def map_for(self, quadrature: str) -> QuadratureMap:
        return self.plus if quadrature == "+" else self.minus


def _check_resource(value: float, name: str) -> None:
    if not 0.0 < value <= 1.0:
        raise ValueError(f"{name} must lie in (0, 1], got {value}")


def _two_term_maps(gain: float, v_first: float, v_second: float, stem: str):
    """Symmetric per-quadrature pair: coefficients (1 +/- gain)/sqrt(2)."""
    c_plus = (1.0 + gain) * _SQRT_HALF
    c_minus = (1.0 - gain) * _SQRT_HALF
    maps = []
    for quad in ("+", "-"):
        maps.append(
            QuadratureMap(
                gain=gain,
                noise=(
                    NoiseTerm(f"{stem}_corr{quad}", c_plus, v_first),
                    NoiseTerm(f"{stem}_anti{quad}", c_minus, v_second),
                ),
            )
        )
    return maps[0], maps[1]


def make_epr(gain: float, v_ent: float) -> Teleporter:
    """Lossless symmetric teleporter with EPR entanglement resource v_ent.

    Each quadrature adds two independent noise terms with coefficients
    (1+gain)/sqrt(2) and (1-gain)/sqrt(2) and variances v_ent and 1/v_ent,
    so the added noise per quadrature is
    (1+gain)**2 * v_ent / 2 + (1-gain)**2 / (2 * v_ent).
    """
    _check_resource(v_ent, "v_ent")
    plus, minus = _two_term_maps(gain, v_ent, 1.0 / v_ent, "ent")
    return Teleporter(plus, minus, Family.EPR, gain=gain, resource=v_ent)


def make_single_mode(gain: float, v_s: float) -> Teleporter:
    """Teleporter whose resource is a split single-mode squeezed beam.

    The added noise per quadrature is
    (1+gain)**2 * (1+v_s) / 4 + (1-gain)**2 * (1+1/v_s) / 4, realized as two
    independent terms with coefficients (1+gain)/sqrt(2), (1-gain)/sqrt(2)
    and variances (1+v_s)/2, (1+1/v_s)/2.
    """
    _check_resource(v_s, "v_s")
    plus, minus = _two_term_maps(
        gain, (1.0 + v_s) / 2.0, (1.0 + 1.0 / v_s) / 2.0, "sms"
    )
    return Teleporter(plus, minus, Family.SINGLE_MODE, gain=gain, resource=v_s)


def make_classical_measure_resend(gain: float) -> Teleporter:
    """Canonical classical baseline: measure both quadratures, resend.

    Per quadrature the added noise is 1 + gain**2, from a vacuum-variance
    simultaneous-measurement penalty (coefficient gain) plus the vacuum
    fluctuations of the fresh output field (coefficient 1).  Criteria-wise
    this coincides with ``make_epr(gain, 1.0)``.
    """
    maps = []
    for quad in ("+", "-"):
        maps.append(
            QuadratureMap(
                gain=gain,
                noise=(
                    NoiseTerm(f"meas{quad}", gain, 1.0),
                    NoiseTerm(f"fresh{quad}", 1.0, 1.0),
                ),
            )
        )
    return Teleporter(maps[0], maps[1], Family.CLASSICAL, gain=gain, resource=None)


def make_custom(plus: QuadratureMap, minus: QuadratureMap) -> Teleporter:
    """Teleporter from arbitrary quadrature maps.

    No classicality validation is performed; custom maps may represent
    entangled resources.  Maps sharing a latent mode_id are rejected.
    """
    return Teleporter(plus, minus, Family.CUSTOM, gain=None, resource=None)
