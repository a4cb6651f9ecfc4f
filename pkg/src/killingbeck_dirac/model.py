"""Physical parameters, derived scales and radial-equation coefficients.

Everything is expressed in natural units (hbar = c = 1, e = 1) and all
quantities are treated as pure numbers, energies labelled MeV.

The radial equation solved for ``u(r) = f_nm(r)`` (the upper component with
the ``1/sqrt(r)`` factor removed) is::

    u'' + [k2 - k_cent/r**2 + k_coul/r - k_lin*r - k_quad*r**2] u = 0

with the mass factor ``E + M`` for spin symmetry and ``E - M`` for
pseudo-spin symmetry.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError


class SymmetryMode(enum.Enum):
    SPIN = "spin"
    PSEUDO_SPIN = "pspin"


class ResidualVariant(enum.Enum):
    """Which form of the quantization condition to root-find.

    ``LITERAL`` is the spin condition in its literal form (and the
    pseudo-spin counterpart that matches the reference tables); ``DERIVATION_CONSISTENT`` rebuilds ``R = 2n``
    with the shifted magnetic number ``m'`` used everywhere.
    """

    LITERAL = "literal"
    DERIVATION_CONSISTENT = "derivation"


@dataclass(frozen=True)
class PotentialParams:
    """Killingbeck potential ``V(r) = a r^2 + b r - c/r``."""

    a: float = 0.0
    b: float = 0.0
    c_coulomb: float = 0.0

    def __post_init__(self):
        for name in ("a", "b", "c_coulomb"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class FieldConfig:
    """Uniform magnetic field ``B`` plus an Aharonov-Bohm flux line ``phi_ab``."""

    B: float = 0.0
    phi_ab: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.B) and self.B >= 0.0):
            raise ValueError("B must be finite and non-negative")
        if not math.isfinite(self.phi_ab):
            raise ValueError("phi_ab must be finite")


@dataclass(frozen=True)
class ParticleSpec:
    M: float = 5.0
    m: int = 1
    e: float = 1.0
    c_light: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.M) and self.M > 0.0):
            raise ValueError("M must be positive")
        if int(self.m) != self.m:
            raise ValueError("m must be an integer")
        if self.e != 1.0 or self.c_light != 1.0:
            raise ValueError("natural units only: e = c = 1")


@dataclass(frozen=True)
class QuantumNumbers:
    # n = 0 is admitted although the original treatment starts at n = 1
    n: int = 1
    m: int = 1

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError("n must be a non-negative integer")
        if int(self.m) != self.m:
            raise ValueError("m must be an integer")


@dataclass(frozen=True)
class DerivedScales:
    """Energy-dependent scales of the dimensionless radial equation.

    ``S`` is the product ``Q c'``, stored directly so that ``c = 0`` stays
    regular: ``S = c' - P b'``.
    """

    mode: SymmetryMode
    omega_c: float
    m_prime: float
    eps_B: float
    zeta: float
    b_prime: float
    c_prime: float
    S: float
    P: float

    @property
    def R(self) -> float:
        """Termination parameter; the series becomes a degree-n polynomial only if R = 2n."""
        return (self.zeta / math.sqrt(self.eps_B) + 0.25 * self.b_prime**2
                - 2.0 * self.P - 1.0)

    @property
    def length_scale(self) -> float:
        """Factor ``eps_B**(1/4)`` converting r to the scaled radius chi."""
        return self.eps_B**0.25


@dataclass(frozen=True)
class RadialCoefficients:
    k2: float
    k_cent: float
    k_coul: float
    k_lin: float
    k_quad: float

    def q(self, r):
        """Return ``q(r)`` in ``u'' = q(r) u``."""
        return (-self.k2 + self.k_cent / r**2 - self.k_coul / r
                + self.k_lin * r + self.k_quad * r**2)


def m_prime(m: int, phi_ab: float, e: float = 1.0, c_light: float = 1.0) -> float:
    """Magnetic quantum number shifted by the Aharonov-Bohm flux."""
    return m - e * phi_ab / (2.0 * math.pi * c_light)


def cyclotron_frequency(B: float, e: float = 1.0, c_light: float = 1.0) -> float:
    return e * B / c_light


def mass_factor(E: float, M: float, mode: SymmetryMode) -> float:
    """``E + M`` for spin symmetry, ``E - M`` for pseudo-spin symmetry."""
    return E + M if mode is SymmetryMode.SPIN else E - M


def confinement_strength(pot: PotentialParams, fields: FieldConfig,
                         part: ParticleSpec, mode: SymmetryMode, E: float) -> float:
    """``2 a (E +/- M) + omega_c**2 / 4``; may be non-positive."""
    w = cyclotron_frequency(fields.B, part.e, part.c_light)
    return 2.0 * pot.a * mass_factor(E, part.M, mode) + 0.25 * w * w


def derived_scales(pot: PotentialParams, fields: FieldConfig, part: ParticleSpec,
                   mode: SymmetryMode, E: float) -> DerivedScales:
    """Compute the scales that turn the radial equation into Heun form.

    Raises
    ------
    DomainError
        If the quadratic confinement ``eps_B`` is not positive at ``E``.
    """
    w = cyclotron_frequency(fields.B, part.e, part.c_light)
    mp = m_prime(part.m, fields.phi_ab, part.e, part.c_light)
    mf = mass_factor(E, part.M, mode)
    eps = 2.0 * pot.a * mf + 0.25 * w * w
    if not eps > 0.0:
        raise DomainError(f"eps_B = {eps!r} <= 0 at E = {E!r}")
    zeta = E * E - part.M**2 + 0.5 * mp * w
    b_prime = 2.0 * mf * pot.b / eps**0.75
    c_prime = 2.0 * mf * pot.c_coulomb / eps**0.25
    P = mp + 0.5
    return DerivedScales(
        mode=mode, omega_c=w, m_prime=mp, eps_B=eps, zeta=zeta,
        b_prime=b_prime, c_prime=c_prime, S=c_prime - P * b_prime, P=P,
    )


def radial_coefficients(pot: PotentialParams, fields: FieldConfig, part: ParticleSpec,
                        mode: SymmetryMode, E: float) -> RadialCoefficients:
    """Coefficients of the radial equation at energy ``E``.

    Pseudo-spin symmetry replaces ``(E + M) V`` by ``(E - M) V``; the
    combined substitution ``E -> -E``, ``V -> -V`` leaves ``V`` itself
    unchanged in front of the new mass factor.
    """
    e, c = part.e, part.c_light
    w = cyclotron_frequency(fields.B, e, c)
    mp = m_prime(part.m, fields.phi_ab, e, c)
    mf = mass_factor(E, part.M, mode)
    k2 = (E * E - part.M**2 + e * part.m * fields.B / (2.0 * c)
          - e * e * fields.B * fields.phi_ab / (4.0 * math.pi * c * c))
    return RadialCoefficients(
        k2=k2,
        k_cent=mp * mp - 0.25,
        k_coul=2.0 * mf * pot.c_coulomb,
        k_lin=2.0 * mf * pot.b,
        k_quad=2.0 * pot.a * mf + 0.25 * w * w,
    )
