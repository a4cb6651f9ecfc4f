"""Relativistic Killingbeck bound states in magnetic and Aharonov-Bohm fields.

Energies come from the biconfluent Heun quantization condition ``R = 2n``;
an independent shooting solver for the radial equation cross-checks them in
the exactly solvable Landau limit.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DegenerateIndexError,
    DomainError,
    DomainEverywhereInvalid,
    IntegrationBlowup,
    InvalidAsymptotics,
    NoRootFound,
    SelectionFailure,
    SeriesOverflowError,
    TruncationWarning,
)
from .model import (  # noqa: E402
    DerivedScales,
    FieldConfig,
    ParticleSpec,
    PotentialParams,
    QuantumNumbers,
    RadialCoefficients,
    ResidualVariant,
    SymmetryMode,
    derived_scales,
    m_prime,
    radial_coefficients,
)
from .heun import (  # noqa: E402
    ComponentKind,
    SeriesSolution,
    TerminationReport,
    closed_form_first_three,
    component_series,
    evaluate_series,
    radial_component,
    series_coefficients,
    termination_check,
)
from .spectrum import (  # noqa: E402
    EnergyLevel,
    SolverConfig,
    VariantReport,
    find_levels,
    landau_limit_levels,
    printed_pspin_residual,
    residual,
    residual_pspin,
    residual_spin,
    variant_prestudy,
)
