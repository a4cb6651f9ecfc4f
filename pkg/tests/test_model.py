import math

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from killingbeck_dirac import (
    DomainError,
    FieldConfig,
    ParticleSpec,
    PotentialParams,
    SymmetryMode,
    derived_scales,
    m_prime,
    radial_coefficients,
)

SPIN, PSPIN = SymmetryMode.SPIN, SymmetryMode.PSEUDO_SPIN


def test_free_magnetic_scales():
    s = derived_scales(PotentialParams(), FieldConfig(B=1.0), ParticleSpec(M=5.0, m=1), SPIN, 7.3)
    assert s.omega_c == 1.0
    assert s.eps_B == 0.25
    assert s.m_prime == 1.0


def test_m_prime_with_flux():
    mp.mp.dps = 30
    expected = float(1 - mp.mpf(2) / (2 * mp.pi))
    assert m_prime(1, 2.0) == pytest.approx(expected, rel=1e-15)
    assert m_prime(1, 2.0) == pytest.approx(0.6816901, abs=1e-7)


def test_scales_at_table_root_high_precision():
    # independent mpmath evaluation of the definitions
    mp.mp.dps = 40
    a, b, B, M, E = mp.mpf("0.001"), mp.mpf("0.005"), mp.mpf(1), mp.mpf(5), mp.mpf("5.273485251")
    eps = 2 * a * (E + M) + B**2 / 4
    bp = 2 * (E + M) * b / eps ** mp.mpf(0.75)
    s = derived_scales(PotentialParams(0.001, 0.005, 0.0), FieldConfig(1.0, 2.0),
                       ParticleSpec(M=5.0, m=1), SPIN, 5.273485251)
    assert s.eps_B == pytest.approx(float(eps), rel=1e-14)
    assert s.b_prime == pytest.approx(float(bp), rel=1e-13)
    assert s.eps_B == pytest.approx(0.270546971, abs=5e-10)
    # the quoted 0.273862 is rounded loosely; the 40-digit value is 0.27386453...
    assert s.b_prime == pytest.approx(0.273862, abs=5e-6)
    assert s.b_prime == pytest.approx(0.2738645349, abs=1e-10)


def test_domain_error_when_confinement_vanishes():
    with pytest.raises(DomainError):
        derived_scales(PotentialParams(a=-1.0), FieldConfig(B=0.1), ParticleSpec(), SPIN, 5.0)
    # pseudo-spin below threshold with no field
    with pytest.raises(DomainError):
        derived_scales(PotentialParams(a=0.01), FieldConfig(B=0.0), ParticleSpec(), PSPIN, 4.0)


def test_type_guards():
    with pytest.raises(ValueError):
        FieldConfig(B=-1.0)
    with pytest.raises(ValueError):
        ParticleSpec(M=0.0)
    with pytest.raises(ValueError):
        ParticleSpec(e=2.0)
    with pytest.raises(ValueError):
        PotentialParams(a=float("nan"))


def test_radial_coefficients_free_particle():
    k = radial_coefficients(PotentialParams(), FieldConfig(), ParticleSpec(m=3), SPIN, 6.0)
    assert (k.k_coul, k.k_lin, k.k_quad) == (0.0, 0.0, 0.0)
    assert k.k_cent == 9 - 0.25


def test_radial_coulomb_coefficient():
    k = radial_coefficients(PotentialParams(c_coulomb=1.0), FieldConfig(), ParticleSpec(M=5.0),
                            SPIN, 5.0)
    assert k.k_coul == 20.0


def test_k_quad_matches_eps_at_table_root():
    args = (PotentialParams(0.001, 0.005, 0.0), FieldConfig(1.0, 2.0), ParticleSpec(M=5.0), SPIN,
            5.273485251)
    assert radial_coefficients(*args).k_quad == pytest.approx(0.270546971, abs=5e-10)
    assert radial_coefficients(*args).k_quad == derived_scales(*args).eps_B


def test_constant_term_is_zeta():
    args = (PotentialParams(0.003, 0.007, 0.4), FieldConfig(1.2, 2.0), ParticleSpec(M=5.0, m=2),
            PSPIN, 5.4)
    assert radial_coefficients(*args).k2 == pytest.approx(derived_scales(*args).zeta, rel=1e-14)


finite = st.floats(-5, 5, allow_nan=False)
params = st.builds(PotentialParams, st.floats(0, 0.1), finite, finite)
fields = st.builds(FieldConfig, st.floats(0.05, 3.0), st.floats(-10, 10))
particles = st.builds(ParticleSpec, st.floats(0.5, 10.0), st.integers(-4, 4))
modes = st.sampled_from(list(SymmetryMode))


@settings(max_examples=1000, deadline=None)
@given(params, fields, particles, modes, st.floats(0.0, 20.0))
def test_regularized_product_identity(pot, fld, part, mode, E):
    try:
        s = derived_scales(pot, fld, part, mode, E)
    except DomainError:
        return
    assert s.S == s.c_prime - s.P * s.b_prime
    k = radial_coefficients(pot, fld, part, mode, E)
    assert k.k_quad == pytest.approx(s.eps_B, rel=1e-14)


@given(st.integers(-5, 5), st.floats(-20, 20))
def test_flux_quantum_shifts_m_prime_by_one(m, phi):
    assert m_prime(m, phi + 2 * math.pi) == pytest.approx(m_prime(m, phi) - 1.0, abs=1e-14)


@given(params, fields, particles, st.floats(0.0, 5.0))
def test_mass_factor_symmetry(pot, fld, part, x):
    # spin at E and pseudo-spin at E + 2M share the same mass factor E + M
    E = x
    try:
        s1 = derived_scales(pot, fld, part, SPIN, E)
        s2 = derived_scales(pot, fld, part, PSPIN, E + 2 * part.M)
    except DomainError:
        return
    assert s1.eps_B == pytest.approx(s2.eps_B, rel=1e-12)
