"""Frobenius series of the biconfluent Heun equation and the radial spinors.

The recurrence::

    C[k+2] = ((S - b'(k+1)) C[k+1] - (R - 2k) C[k]) / ((k+2)(k+2P+1))

with ``C[-1] = 0, C[0] = 1`` generates the series ``G(y) = sum C[k] y**k``
that solves::

    y G'' + (2P + b' y - 2 y**2) G' + (R y - S) G = 0

The physical argument is ``y = -chi``: ``F(chi) = G(-chi)`` solves the
transformed radial equation ``chi F'' + (2P - b' chi - 2 chi**2) F'
+ (R chi + S) F = 0``, which is why the radial components evaluate the
series at ``-chi``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateIndexError, SeriesOverflowError, TruncationWarning
from .model import DerivedScales, SymmetryMode

DEFAULT_TERMS = 200
DEFAULT_TERMINATION_TOL = 1e-10
CONVERGENCE_TOL = 1e-12


class ComponentKind(enum.Enum):
    UPPER_SPIN = "upper"
    LOWER_SPIN = "lower"
    PSEUDO_SPIN = "pspin"


@dataclass(frozen=True)
class SeriesSolution:
    P: float
    b_prime: float
    S: float
    R: float
    coeffs: np.ndarray
    N: int


@dataclass(frozen=True)
class TerminationReport:
    terminates: bool
    degree: Optional[int]
    r_condition_met: bool
    c_condition_met: bool
    c_np1_magnitude: float


def _check_index(P: float) -> None:
    two_p = 2.0 * P
    if two_p <= 0.0 and abs(two_p - round(two_p)) < 1e-12:
        raise DegenerateIndexError(f"2P = {two_p!r} is a non-positive integer")


def series_coefficients(P: float, b_prime: float, S: float, R: float,
                        N: int = DEFAULT_TERMS) -> SeriesSolution:
    """Run the three-term recurrence up to ``C[N]``.

    Raises
    ------
    DegenerateIndexError
        If a denominator ``(k+2)(k+2P+1)`` vanishes.
    SeriesOverflowError
        If a coefficient is not finite.
    """
    if N < 2:
        raise ValueError("truncation order N must be >= 2")
    _check_index(P)
    c = np.zeros(N + 1)
    c[0] = 1.0
    prev, cur = 0.0, 1.0  # C[k], C[k+1] for k = -1
    for k in range(-1, N - 1):
        # integer part first: at k = -1 this is exactly 2P
        denom = (k + 2) * ((k + 1) + 2.0 * P)
        if denom == 0.0:
            raise DegenerateIndexError(f"vanishing denominator at k = {k}")
        nxt = ((S - b_prime * (k + 1)) * cur - (R - 2.0 * k) * prev) / denom
        if not math.isfinite(nxt):
            raise SeriesOverflowError(f"coefficient C[{k + 2}] overflowed")
        c[k + 2] = nxt
        prev, cur = cur, nxt
    c.setflags(write=False)
    return SeriesSolution(P=P, b_prime=b_prime, S=S, R=R, coeffs=c, N=N)


def closed_form_first_three(P: float, b_prime: float, S: float, R: float):
    """Explicit ``(C1, C2, C3)`` from unrolling the recurrence by hand."""
    c1 = S / (2.0 * P)
    c2 = ((S - b_prime) * c1 - R) / (2.0 * (2.0 * P + 1.0))
    c3 = ((S - 2.0 * b_prime) / (2.0 * (2.0 * P + 1.0)) * (c1 * (S - b_prime) - R)
          - c1 * (R - 2.0)) / (6.0 * (P + 1.0))
    return c1, c2, c3


def termination_check(sol: SeriesSolution, n: int,
                      tol: float = DEFAULT_TERMINATION_TOL) -> TerminationReport:
    """Test the polynomial conditions ``R = 2n`` and ``C[n+1] = 0``."""
    if n < 0 or n + 1 > sol.N:
        raise ValueError(f"need 0 <= n < N, got n = {n}, N = {sol.N}")
    r_ok = abs(sol.R - 2.0 * n) <= tol
    c_np1 = abs(float(sol.coeffs[n + 1]))
    scale = max(1.0, float(np.max(np.abs(sol.coeffs[: n + 1]))))
    c_ok = c_np1 <= tol * scale
    terms = r_ok and c_ok
    return TerminationReport(
        terminates=terms, degree=n if terms else None,
        r_condition_met=r_ok, c_condition_met=c_ok, c_np1_magnitude=c_np1,
    )


def _horner(coeffs: np.ndarray, y):
    acc = np.zeros_like(y, dtype=float)
    for ck in coeffs[::-1]:
        acc = acc * y + ck
    return acc


def evaluate_series(sol: SeriesSolution, y, warn: bool = True):
    """Sum ``C[k] y**k`` by Horner's rule.

    Coefficients are rescaled by their largest magnitude before summation and
    the scale is restored afterwards. A :class:`TruncationWarning` is issued
    when the last retained terms exceed ``1e-12`` of the partial sum.
    """
    y_arr = np.asarray(y, dtype=float)
    c = sol.coeffs
    scale = float(np.max(np.abs(c)))
    total = _horner(c / scale, y_arr) * scale
    # two trailing terms, so a vanishing parity partner cannot hide the tail
    tail = np.maximum(np.abs(c[-1] * y_arr**sol.N), np.abs(c[-2] * y_arr ** (sol.N - 1)))
    with np.errstate(invalid="ignore"):
        bad = tail > CONVERGENCE_TOL * np.abs(total)
    if warn and np.any(bad):
        worst = float(np.max(np.where(bad, tail, 0.0)))
        warnings.warn(TruncationWarning(
            f"series truncated at N = {sol.N} not converged (tail ~ {worst:.3g})",
            tail=worst), stacklevel=2)
    return float(total) if np.ndim(y) == 0 else total


def series_derivatives(sol: SeriesSolution, y):
    """Return ``(G, G', G'')`` of the truncated series at ``y``."""
    c = sol.coeffs
    k = np.arange(len(c), dtype=float)
    d1 = (c * k)[1:]
    d2 = (c * k * (k - 1.0))[2:]
    y = np.asarray(y, dtype=float)
    return _horner(c, y), _horner(d1, y), _horner(d2, y)


def canonical_residual(sol: SeriesSolution, y):
    """Residual of the truncated series in ``y G'' + (2P + b'y - 2y^2) G' + (Ry - S) G``."""
    g, g1, g2 = series_derivatives(sol, y)
    y = np.asarray(y, dtype=float)
    return (y * g2 + (2.0 * sol.P + sol.b_prime * y - 2.0 * y * y) * g1
            + (sol.R * y - sol.S) * g)


def component_exponent(scales: DerivedScales, kind: ComponentKind) -> float:
    if kind is ComponentKind.LOWER_SPIN:
        return scales.m_prime + 1.5
    return scales.m_prime + 0.5


def component_series(scales: DerivedScales, kind: ComponentKind,
                     N: int = DEFAULT_TERMS) -> SeriesSolution:
    """Build the series appropriate to one spinor component.

    The lower component raises the first Heun argument by two, which moves
    ``P`` up by one and ``R`` down by two; ``S`` keeps its form ``c' - P b'``.
    """
    want_pspin = kind is ComponentKind.PSEUDO_SPIN
    if want_pspin != (scales.mode is SymmetryMode.PSEUDO_SPIN):
        raise ValueError(f"component {kind.value} needs scales built in the matching mode")
    P, R = scales.P, scales.R
    if kind is ComponentKind.LOWER_SPIN:
        P, R = P + 1.0, R - 2.0
    S = scales.c_prime - P * scales.b_prime
    return series_coefficients(P, scales.b_prime, S, R, N)


def radial_component(scales: DerivedScales, sol: SeriesSolution,
                     kind: ComponentKind, chi, warn: bool = True):
    """``chi**p * exp(-chi (chi + b') / 2) * G(-chi)`` for the chosen component."""
    chi_arr = np.asarray(chi, dtype=float)
    if np.any(chi_arr < 0.0):
        raise ValueError("chi must be non-negative")
    p = component_exponent(scales, kind)
    with np.errstate(divide="ignore"):
        pref = np.power(chi_arr, p) * np.exp(-0.5 * chi_arr * (chi_arr + scales.b_prime))
    val = pref * evaluate_series(sol, -chi_arr, warn=warn)
    return float(val) if np.ndim(chi) == 0 else val
