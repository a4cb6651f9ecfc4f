"""Quantization residuals, root isolation and closed-form limit spectra."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import DomainError, DomainEverywhereInvalid, NoRootFound, SelectionFailure
from .golden import MASS, M_QUANTUM, PHI_AB, TABLE1, TABLE2, TableEntry
from .model import (
    FieldConfig,
    ParticleSpec,
    PotentialParams,
    QuantumNumbers,
    ResidualVariant,
    SymmetryMode,
    confinement_strength,
    cyclotron_frequency,
    mass_factor,
    m_prime,
)

DEFAULT_SCAN_CELLS = 2000
DEFAULT_REFINE_TOL = 1e-12
SELECTION_THRESHOLD = 1e-3


@dataclass(frozen=True)
class SolverConfig:
    pot: PotentialParams = field(default_factory=PotentialParams)
    fields: FieldConfig = field(default_factory=FieldConfig)
    part: ParticleSpec = field(default_factory=ParticleSpec)
    qn: QuantumNumbers = field(default_factory=QuantumNumbers)
    mode: SymmetryMode = SymmetryMode.SPIN
    variant: ResidualVariant = ResidualVariant.LITERAL
    window: Optional[Tuple[float, float]] = None
    scan_step: Optional[float] = None
    refine_tol: float = DEFAULT_REFINE_TOL

    def __post_init__(self):
        if self.qn.m != self.part.m:
            raise ValueError("qn.m and part.m disagree")
        if self.window is None:
            object.__setattr__(self, "window", (self.part.M, self.part.M + 1.5))
        lo, hi = self.window
        if not lo < hi:
            raise ValueError(f"empty energy window {self.window}")
        if self.scan_step is None:
            object.__setattr__(self, "scan_step", (hi - lo) / DEFAULT_SCAN_CELLS)
        if not self.scan_step > 0.0:
            raise ValueError("scan_step must be positive")
        if not self.refine_tol > 0.0:
            raise ValueError("refine_tol must be positive")

    @classmethod
    def build(cls, *, a=0.0, b=0.0, c=0.0, B=0.0, phi=0.0, M=5.0, m=1, n=1,
              mode=SymmetryMode.SPIN, variant=ResidualVariant.LITERAL,
              window=None, scan_step=None, refine_tol=DEFAULT_REFINE_TOL) -> "SolverConfig":
        """Flat-keyword constructor."""
        return cls(
            pot=PotentialParams(a, b, c), fields=FieldConfig(B, phi),
            part=ParticleSpec(M=M, m=m), qn=QuantumNumbers(n=n, m=m),
            mode=mode, variant=variant, window=window, scan_step=scan_step,
            refine_tol=refine_tol,
        )

    def with_(self, **kw) -> "SolverConfig":
        """Copy with flat parameters replaced (same keywords as :meth:`build`)."""
        flat = dict(a=self.pot.a, b=self.pot.b, c=self.pot.c_coulomb, B=self.fields.B,
                    phi=self.fields.phi_ab, M=self.part.M, m=self.part.m, n=self.qn.n,
                    mode=self.mode, variant=self.variant, window=self.window,
                    scan_step=self.scan_step, refine_tol=self.refine_tol)
        flat.update(kw)
        # derived defaults follow a new mass or window
        if "M" in kw and "window" not in kw:
            flat["window"] = None
        if ("M" in kw or "window" in kw) and "scan_step" not in kw:
            flat["scan_step"] = None
        return SolverConfig.build(**flat)


@dataclass(frozen=True)
class EnergyLevel:
    E: float
    residual: float
    bracket: Tuple[float, float]
    qn: QuantumNumbers
    mode: SymmetryMode
    variant: ResidualVariant


# -- residuals -----------------------------------------------------------------

def _eps(E: float, cfg: SolverConfig, mode: SymmetryMode) -> float:
    eps = confinement_strength(cfg.pot, cfg.fields, cfg.part, mode, E)
    if not eps > 0.0:
        raise DomainError(f"eps_B = {eps!r} <= 0 at E = {E!r}")
    return eps


def _literal_flux_root(cfg: SolverConfig) -> float:
    """``sqrt(1 - 4(1/4 - m^2 - e^2 phi^2/4pi^2c^2 + e phi/2pi c))`` in literal form."""
    e, c = cfg.part.e, cfg.part.c_light
    phi, m = cfg.fields.phi_ab, cfg.part.m
    arg = 1.0 - 4.0 * (0.25 - m * m - (e * phi) ** 2 / (4.0 * math.pi**2 * c * c)
                       + e * phi / (2.0 * math.pi * c))
    if arg < 0.0:
        raise DomainError(f"negative square-root argument {arg!r} in the flux term")
    return math.sqrt(arg)


def _literal_zeta(E: float, cfg: SolverConfig) -> float:
    e, c = cfg.part.e, cfg.part.c_light
    B, phi = cfg.fields.B, cfg.fields.phi_ab
    return (E * E - cfg.part.M**2 + e * cfg.part.m * B / (2.0 * c)
            - e * e * B * phi / (2.0 * math.pi * c * c))


def _literal(E: float, cfg: SolverConfig, mode: SymmetryMode) -> float:
    eps = _eps(E, cfg, mode)
    mf = mass_factor(E, cfg.part.M, mode)
    root = _literal_flux_root(cfg)
    return (-2.0 * math.sqrt(eps) * (0.5 * (1.0 + root) + cfg.qn.n + 0.5)
            + _literal_zeta(E, cfg) + (mf * cfg.pot.b) ** 2 / eps)


def _derivation(E: float, cfg: SolverConfig, mode: SymmetryMode) -> float:
    eps = _eps(E, cfg, mode)
    mf = mass_factor(E, cfg.part.M, mode)
    p = cfg.part
    mp = m_prime(p.m, cfg.fields.phi_ab, p.e, p.c_light)
    w = cyclotron_frequency(cfg.fields.B, p.e, p.c_light)
    zeta = E * E - p.M**2 + 0.5 * mp * w
    return zeta + (mf * cfg.pot.b) ** 2 / eps - 2.0 * math.sqrt(eps) * (cfg.qn.n + mp + 1.0)


def residual_spin(E: float, config: SolverConfig) -> float:
    """Spin-symmetric quantization residual; zero at an eigenvalue."""
    if config.variant is ResidualVariant.LITERAL:
        return _literal(E, config, SymmetryMode.SPIN)
    return _derivation(E, config, SymmetryMode.SPIN)


def residual_pspin(E: float, config: SolverConfig) -> float:
    """Pseudo-spin residual: the spin form with ``E + M`` replaced by ``E - M``."""
    if config.variant is ResidualVariant.LITERAL:
        return _literal(E, config, SymmetryMode.PSEUDO_SPIN)
    return _derivation(E, config, SymmetryMode.PSEUDO_SPIN)


def printed_pspin_residual(E: float, config: SolverConfig) -> float:
    """The unmodified literal pseudo-spin condition; diagnostic only.

    Every term is positive near the tabulated energies, so it never vanishes
    there and is not used for root finding.
    """
    eps = _eps(E, config, SymmetryMode.PSEUDO_SPIN)
    p = config.part
    phi = config.fields.phi_ab
    return (2.0 * config.qn.n + 2.0 + 2.0 * p.m - p.e * phi / (math.pi * p.c_light)
            + _literal_zeta(E, config) / math.sqrt(eps)
            - ((E - p.M) * config.pot.b) ** 2 / (math.sqrt(eps) * eps))


def residual(E: float, config: SolverConfig) -> float:
    if config.mode is SymmetryMode.SPIN:
        return residual_spin(E, config)
    return residual_pspin(E, config)


# -- root isolation ------------------------------------------------------------

def _scan_points(lo: float, hi: float, step: float) -> List[float]:
    cells = max(1, int(math.ceil((hi - lo) / step - 1e-9)))
    return [lo + (hi - lo) * i / cells for i in range(cells + 1)]


def _bisect(f, lo: float, hi: float, f_lo: float, tol: float) -> Tuple[float, float, float]:
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid, mid, mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi), lo, hi


def find_levels(config: SolverConfig) -> List[EnergyLevel]:
    """All real roots of the quantization residual inside ``config.window``.

    The window is scanned in steps of ``config.scan_step``; cells touching a
    point where the method is undefined are skipped. Each sign change is
    bisected until the bracket is narrower than ``config.refine_tol``.

    An empty list comes with a :class:`NoRootFound` warning that carries the
    range of residual values seen during the scan.

    Raises
    ------
    DomainEverywhereInvalid
        If no scan point is evaluable.
    """
    f = lambda E: residual(E, config)  # noqa: E731
    lo, hi = config.window
    xs = _scan_points(lo, hi, config.scan_step)
    vals: List[Optional[float]] = []
    for x in xs:
        try:
            vals.append(f(x))
        except DomainError:
            vals.append(None)
    finite = [v for v in vals if v is not None]
    if not finite:
        raise DomainEverywhereInvalid(
            f"residual undefined everywhere on [{lo}, {hi}]")

    levels: List[EnergyLevel] = []
    for i in range(len(xs) - 1):
        f0, f1 = vals[i], vals[i + 1]
        if f0 is None or f1 is None or (f0 < 0.0) == (f1 < 0.0):
            continue
        E, b_lo, b_hi = _bisect(f, xs[i], xs[i + 1], f0, config.refine_tol)
        if levels and abs(E - levels[-1].E) <= config.refine_tol:
            continue
        levels.append(EnergyLevel(E=E, residual=f(E), bracket=(b_lo, b_hi), qn=config.qn,
                                  mode=config.mode, variant=config.variant))
    if not levels:
        warnings.warn(NoRootFound(
            f"no sign change on [{lo}, {hi}]; residual in [{min(finite):.6g}, {max(finite):.6g}]",
            residual_min=min(finite), residual_max=max(finite)), stacklevel=2)
    return levels


def landau_limit_levels(config: SolverConfig) -> List[EnergyLevel]:
    """Closed-form level of the ``a = b = 0`` limit, ``E = sqrt(M^2 + w_c (n + m'/2 + 1))``.

    The Coulomb strength does not enter the ``R = 2n`` condition and is ignored.
    """
    if config.pot.a != 0.0 or config.pot.b != 0.0:
        raise ValueError("Landau limit requires a = b = 0")
    if not config.fields.B > 0.0:
        raise ValueError("Landau limit requires B > 0")
    if config.variant is not ResidualVariant.DERIVATION_CONSISTENT:
        raise ValueError("Landau limit is defined for the derivation-consistent variant")
    p = config.part
    w = cyclotron_frequency(config.fields.B, p.e, p.c_light)
    mp = m_prime(p.m, config.fields.phi_ab, p.e, p.c_light)
    e2 = p.M**2 + w * (config.qn.n + 0.5 * mp + 1.0)
    if e2 <= 0.0:
        return []
    E = math.sqrt(e2)
    d = config.refine_tol
    return [EnergyLevel(E=E, residual=residual(E, config), bracket=(E - d, E + d),
                        qn=config.qn, mode=config.mode, variant=config.variant)]


# -- variant pre-study ---------------------------------------------------------

def table_config(entry: TableEntry, variant: ResidualVariant, **kw) -> SolverConfig:
    return SolverConfig.build(a=entry.a, b=entry.b, c=0.0, B=entry.B, phi=PHI_AB, M=MASS,
                              m=M_QUANTUM, n=entry.n, mode=entry.mode, variant=variant, **kw)


@dataclass(frozen=True)
class VariantReport:
    """Residual magnitudes at every tabulated energy, per residual form."""

    entries: Tuple[TableEntry, ...]
    residuals: Dict[str, Tuple[float, ...]]
    printed_pspin_residual: Tuple[float, ...]
    selected: ResidualVariant

    def worst(self, variant: ResidualVariant) -> float:
        return max(self.residuals[variant.value])

    @property
    def printed_pspin_min(self) -> float:
        return min(self.printed_pspin_residual)


def variant_prestudy(entries: Iterable[TableEntry] = TABLE1 + TABLE2) -> VariantReport:
    """Evaluate each residual form at the tabulated energies and pick the best.

    Raises
    ------
    SelectionFailure
        If no variant stays below ``1e-3`` at every entry.
    """
    entries = tuple(entries)
    res: Dict[str, Tuple[float, ...]] = {}
    for variant in ResidualVariant:
        res[variant.value] = tuple(
            abs(residual(e.E, table_config(e, variant))) for e in entries)
    diag = tuple(
        abs(printed_pspin_residual(e.E, table_config(e, ResidualVariant.LITERAL)))
        for e in entries if e.mode is SymmetryMode.PSEUDO_SPIN)
    best = min(ResidualVariant, key=lambda v: max(res[v.value]))
    if max(res[best.value]) >= SELECTION_THRESHOLD:
        raise SelectionFailure(
            "no variant reproduces the tables: "
            + ", ".join(f"{k} worst {max(v):.3g}" for k, v in res.items()))
    return VariantReport(entries=entries, residuals=res, printed_pspin_residual=diag, selected=best)
