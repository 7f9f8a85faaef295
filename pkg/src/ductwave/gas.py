"""Perfect-gas thermodynamics and state-variable conversions.

Everything downstream (interior scheme, wall sources, characteristic
boundaries, analytic references) works in terms of the quantities defined
here: a calorically perfect gas with ratio of specific heats ``gamma``,
the conserved vector W = (rho, rho*u, rho*(e + u^2/2)), its primitive view
(rho, u, p) with p = (gamma - 1) * rho * e, and the characteristic
variables u +/- 2c/(gamma - 1) and S = p / rho^gamma.

All quantities are strict SI. Conversions are pure functions; positivity
is enforced at the conversion boundary, not inside inner arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidCharacteristicsError, InvalidStateError


@dataclass(frozen=True)
class GasModel:
    """Fluid constants and the reference rest state.

    Defaults are standard air data at p0 = 1 atm; override any of them
    through the configuration layer. Volumic viscosity is fixed to zero,
    so the visco-thermal length uses 4/3 * mu alone.
    """

    gamma: float = 1.4            # ratio of specific heats
    mu: float = 1.81e-5           # shear viscosity [Pa s]
    k_cond: float = 0.0257        # thermal conductivity [W/(m K)]
    cp: float = 1005.0            # specific heat at constant pressure [J/(kg K)]
    rho0: float = 1.2             # reference density [kg/m^3]
    p0: float = 101325.0          # reference pressure [Pa]
    theta0: float = 300.0         # wall temperature [K]

    def __post_init__(self):
        if self.gamma <= 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")
        for name in ("mu", "k_cond", "cp", "rho0", "p0", "theta0"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be strictly positive")

    @property
    def c0(self) -> float:
        """Reference sound speed sqrt(gamma * p0 / rho0) [m/s]."""
        return math.sqrt(self.gamma * self.p0 / self.rho0)

    @property
    def s0(self) -> float:
        """Reference entropy p0 / rho0^gamma."""
        return self.p0 / self.rho0 ** self.gamma

    @property
    def prandtl(self) -> float:
        """Prandtl number mu * cp / k."""
        return self.mu * self.cp / self.k_cond

    @property
    def l_visc(self) -> float:
        """Viscous length mu / (rho0 * c0) [m]."""
        return self.mu / (self.rho0 * self.c0)

    @property
    def l_vh(self) -> float:
        """Visco-thermal length with zero volumic viscosity [m]."""
        visc = (4.0 / 3.0) * self.mu / (self.rho0 * self.c0)
        therm = (self.gamma - 1.0) * self.k_cond / (self.rho0 * self.c0 * self.cp)
        return visc + therm

    @property
    def cv(self) -> float:
        """Specific heat at constant volume cp / gamma [J/(kg K)]."""
        return self.cp / self.gamma


@dataclass(frozen=True)
class PrimitiveState:
    """Primitive gas state (density, velocity, pressure) at one node."""

    rho: float
    u: float
    p: float

    def __post_init__(self):
        if not (self.rho > 0.0):
            raise InvalidStateError(f"non-positive density {self.rho}")
        if not (self.p > 0.0):
            raise InvalidStateError(f"non-positive pressure {self.p}")


@dataclass(frozen=True)
class ConservedState:
    """Conserved gas state (rho, rho*u, rho*(e + u^2/2)) at one node."""

    rho: float
    mom: float
    etot: float

    def __post_init__(self):
        if not (self.rho > 0.0):
            raise InvalidStateError(f"non-positive density {self.rho}")
        if not (self.etot - self.mom ** 2 / (2.0 * self.rho) > 0.0):
            raise InvalidStateError("non-positive internal energy")

    def __array__(self, dtype=None, copy=None):
        return np.array([self.rho, self.mom, self.etot], dtype=dtype or float)

    def as_array(self) -> np.ndarray:
        return np.array([self.rho, self.mom, self.etot])


@dataclass(frozen=True)
class CharacteristicTriple:
    """Riemann invariants u +/- 2c/(gamma-1) and entropy p/rho^gamma."""

    r_plus: float
    r_minus: float
    entropy: float

    def __post_init__(self):
        if not (self.r_plus > self.r_minus):
            raise InvalidCharacteristicsError(
                f"r_plus={self.r_plus} must exceed r_minus={self.r_minus}"
            )


def primitive_from_conserved(w: ConservedState, gas: GasModel,
                             node: int | None = None) -> PrimitiveState:
    """Convert conserved variables to (rho, u, p).

    Raises InvalidStateError (with node context, when given) if density or
    internal energy is non-positive.
    """
    if not (w.rho > 0.0):
        raise InvalidStateError(f"non-positive density {w.rho}", node=node)
    u = w.mom / w.rho
    e_int = w.etot - w.mom ** 2 / (2.0 * w.rho)
    if not (e_int > 0.0):
        raise InvalidStateError(f"non-positive internal energy {e_int}", node=node)
    return PrimitiveState(rho=w.rho, u=u, p=(gas.gamma - 1.0) * e_int)


def conserved_from_primitive(prim: PrimitiveState, gas: GasModel) -> ConservedState:
    """Convert (rho, u, p) to conserved variables."""
    etot = prim.p / (gas.gamma - 1.0) + 0.5 * prim.rho * prim.u ** 2
    return ConservedState(rho=prim.rho, mom=prim.rho * prim.u, etot=etot)


def sound_speed(prim: PrimitiveState, gas: GasModel) -> float:
    """Sound speed sqrt(gamma * p / rho) [m/s]."""
    return math.sqrt(gas.gamma * prim.p / prim.rho)


def characteristics_from_primitive(prim: PrimitiveState,
                                   gas: GasModel) -> CharacteristicTriple:
    """Riemann invariants and entropy of a primitive state."""
    c = sound_speed(prim, gas)
    gm1 = gas.gamma - 1.0
    return CharacteristicTriple(
        r_plus=prim.u + 2.0 * c / gm1,
        r_minus=prim.u - 2.0 * c / gm1,
        entropy=prim.p / prim.rho ** gas.gamma,
    )


def primitive_from_characteristics(tri: CharacteristicTriple,
                                   gas: GasModel) -> PrimitiveState:
    """Reconstruct the primitive state from (r_plus, r_minus, S).

    Inverts characteristics_from_primitive: u is the mean of the
    invariants, c their scaled difference, and rho follows from
    c^2 = gamma * S * rho^(gamma-1).
    """
    gm1 = gas.gamma - 1.0
    u = 0.5 * (tri.r_plus + tri.r_minus)
    c = gm1 * (tri.r_plus - tri.r_minus) / 4.0
    rho = (c * c / (gas.gamma * tri.entropy)) ** (1.0 / gm1)
    p = tri.entropy * rho ** gas.gamma
    return PrimitiveState(rho=rho, u=u, p=p)


def temperature_from_state(prim: PrimitiveState, gas: GasModel) -> float:
    """Temperature T = e / cv with e = p / ((gamma-1) rho) [K]."""
    e_int = prim.p / ((gas.gamma - 1.0) * prim.rho)
    return e_int / gas.cv


def rest_state(gas: GasModel) -> PrimitiveState:
    """The reference rest state (rho0, 0, p0)."""
    return PrimitiveState(rho=gas.rho0, u=0.0, p=gas.p0)


# ---------------------------------------------------------------------------
# Vectorized counterparts used by the field-level scheme. Same formulas as
# the scalar conversions, over arrays of shape (..., 3).
# ---------------------------------------------------------------------------

def primitive_arrays(w: np.ndarray, gas: GasModel):
    """Split a conserved array (..., 3) into (rho, u, p) arrays."""
    rho = w[..., 0]
    u = w[..., 1] / rho
    p = (gas.gamma - 1.0) * (w[..., 2] - 0.5 * w[..., 1] * u)
    return rho, u, p


def conserved_array(rho, u, p, gas: GasModel) -> np.ndarray:
    """Stack (rho, u, p) arrays into a conserved array (..., 3)."""
    rho = np.asarray(rho, dtype=float)
    u = np.asarray(u, dtype=float)
    p = np.asarray(p, dtype=float)
    etot = p / (gas.gamma - 1.0) + 0.5 * rho * u * u
    return np.stack([rho, rho * u, etot], axis=-1)


def sound_speed_array(rho, p, gas: GasModel) -> np.ndarray:
    return np.sqrt(gas.gamma * np.asarray(p) / np.asarray(rho))
