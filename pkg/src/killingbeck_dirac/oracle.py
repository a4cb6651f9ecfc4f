"""Shooting eigensolver for the raw radial equation.

This is an independent check on the Heun-series spectrum: it never touches
the quantization residuals, only the radial-equation coefficients.

The equation ``u'' = q(r) u`` is mapped to a logarithmic grid ``r = exp(x)``
with ``u = sqrt(r) y``, giving ``y'' = (r**2 q(r) + 1/4) y`` whose coefficient
is regular at the origin. Numerov's method integrates outward from ``r_min``
(regular solution ``u ~ r**(|m'| + 1/2)``) and inward from ``r_max``
(Gaussian tail); the two are compared at the geometric mean of the grid ends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from .errors import IntegrationBlowup, InvalidAsymptotics
from .model import RadialCoefficients, confinement_strength, radial_coefficients
from .spectrum import SolverConfig

DEFAULT_R_MIN = 1e-6
DEFAULT_STEPS = 20000
DEFAULT_SCAN_CELLS = 100
ROOT_XTOL = 1e-10
TAIL_TOL = 1e-14
_RESCALE = 1e150


@dataclass(frozen=True)
class RadialGrid:
    r_min: float = DEFAULT_R_MIN
    r_max: float = 12.0
    steps: int = DEFAULT_STEPS

    def __post_init__(self):
        if not 0.0 < self.r_min < self.r_max:
            raise ValueError("need 0 < r_min < r_max")
        if self.steps < 1000:
            raise ValueError("need at least 1000 grid points")

    def refined(self, factor: int = 2) -> "RadialGrid":
        return RadialGrid(self.r_min, self.r_max, self.steps * factor)

    def x(self) -> np.ndarray:
        return np.linspace(math.log(self.r_min), math.log(self.r_max), self.steps)

    @property
    def mid(self) -> int:
        return self.steps // 2


@dataclass(frozen=True)
class OracleLevel:
    E: float
    match_residual: float
    grid: RadialGrid
    richardson_error: float
    E_fine: float
    nodes: int
    under_resolved: bool


def default_grid(config: SolverConfig, E: Optional[float] = None) -> RadialGrid:
    """``r_max = max(8 / eps_B**(1/4), 12)`` evaluated at the weakest confinement.

    Without ``E`` the lower window edge is used for spin symmetry (the
    smallest ``eps_B`` when ``a >= 0``) and both edges are tried otherwise.
    """
    if E is None:
        edges = config.window
    else:
        edges = (E,)
    eps = min(confinement_strength(config.pot, config.fields, config.part, config.mode, e)
              for e in edges)
    if not eps > 0.0:
        raise InvalidAsymptotics(f"eps_B = {eps!r} <= 0: no confining tail")
    return RadialGrid(DEFAULT_R_MIN, max(8.0 / eps**0.25, 12.0), DEFAULT_STEPS)


def _g(coef: RadialCoefficients, r: np.ndarray) -> np.ndarray:
    # r^2 q(r) + 1/4, with k_cent + 1/4 = m'^2
    return (coef.k_cent + 0.25 - coef.k2 * r**2 - coef.k_coul * r
            + coef.k_lin * r**3 + coef.k_quad * r**4)


def _numerov(f: np.ndarray, y0: float, y1: float, n: int) -> np.ndarray:
    """March ``y'' = g y`` for ``n`` points given Numerov weights ``f = 1 - h^2 g / 12``."""
    y = [0.0] * n
    y[0], y[1] = y0, y1
    fl = f.tolist()
    for i in range(1, n - 1):
        yi = ((12.0 - 10.0 * fl[i]) * y[i] - fl[i - 1] * y[i - 1]) / fl[i + 1]
        if not math.isfinite(yi):
            raise IntegrationBlowup(f"non-finite value at step {i + 1}")
        y[i + 1] = yi
        if abs(yi) > _RESCALE:
            for j in range(i + 2):
                y[j] /= _RESCALE
    return np.asarray(y)


def _shoot(E: float, config: SolverConfig, grid: RadialGrid):
    coef = radial_coefficients(config.pot, config.fields, config.part, config.mode, E)
    if not coef.k_quad > 0.0:
        raise InvalidAsymptotics(f"k_quad = {coef.k_quad!r} <= 0 at E = {E!r}")
    x = grid.x()
    h = x[1] - x[0]
    r = np.exp(x)
    f = 1.0 - h * h * _g(coef, r) / 12.0
    mid = grid.mid

    nu = math.sqrt(coef.k_cent + 0.25)  # |m'|
    c1 = -coef.k_coul / (2.0 * nu + 1.0)
    # y ~ r^|m'| (1 + c1 r), divided by r_min^|m'|
    y_out = _numerov(f[: mid + 2], 1.0 + c1 * r[0],
                     math.exp(nu * h) * (1.0 + c1 * r[1]), mid + 2)

    sk = math.sqrt(coef.k_quad)
    beta = coef.k_lin / (2.0 * sk)

    def tail(rr):
        # u ~ exp(-sqrt(k_quad) r^2 / 2 - beta r), y = u / sqrt(r), scaled to 1 at r_max
        return math.exp(-0.5 * sk * (rr * rr - r[-1] ** 2) - beta * (rr - r[-1])
                        - 0.5 * math.log(rr / r[-1]))

    n_in = grid.steps - mid + 1
    y_in = _numerov(f[::-1][:n_in], tail(r[-1]), tail(r[-2]), n_in)[::-1]
    # y_in covers indices mid-1 .. steps-1
    return x, y_out, y_in


def match_determinant(E: float, config: SolverConfig,
                      grid: Optional[RadialGrid] = None) -> float:
    """Normalized discrete Wronskian of the outward and inward solutions.

    It vanishes exactly when the two solutions are proportional at the
    matching point, i.e. at an eigenvalue, and has no poles in between.

    Raises
    ------
    InvalidAsymptotics
        If ``k_quad <= 0`` at ``E``.
    IntegrationBlowup
        If the integration produced a non-finite value.
    """
    grid = grid or default_grid(config, E)
    _, y_out, y_in = _shoot(E, config, grid)
    a0, a1 = y_out[-2], y_out[-1]   # indices mid, mid+1
    b0, b1 = y_in[1], y_in[2]
    w = a0 * b1 - a1 * b0
    norm = math.hypot(a0, a1) * math.hypot(b0, b1)
    if not (math.isfinite(w) and norm > 0.0):
        raise IntegrationBlowup("degenerate matching data")
    return w / norm


def eigenfunction(E: float, config: SolverConfig,
                  grid: Optional[RadialGrid] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Matched solution ``u(r)`` on the grid, scaled to unit maximum."""
    grid = grid or default_grid(config, E)
    x, y_out, y_in = _shoot(E, config, grid)
    mid = grid.mid
    scale = y_out[mid] / y_in[1] if y_in[1] != 0.0 else 1.0
    y = np.concatenate([y_out[: mid + 1], scale * y_in[2:]])
    r = np.exp(x)
    u = np.sqrt(r) * y
    return r, u / np.max(np.abs(u))


def count_nodes(u: np.ndarray, rel_floor: float = 1e-8) -> int:
    """Sign changes of ``u`` ignoring the near-zero tails."""
    big = np.abs(u) > rel_floor * np.max(np.abs(u))
    idx = np.flatnonzero(big)
    if idx.size == 0:
        return 0
    s = np.sign(u[idx[0]: idx[-1] + 1])
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def _solve_on(config: SolverConfig, grid: RadialGrid, lo: float, hi: float) -> float:
    return brentq(lambda E: match_determinant(E, config, grid), lo, hi,
                  xtol=ROOT_XTOL, rtol=4 * np.finfo(float).eps, maxiter=200)


def ode_levels(config: SolverConfig, window: Optional[Tuple[float, float]] = None,
               grid: Optional[RadialGrid] = None,
               cells: int = DEFAULT_SCAN_CELLS) -> List[OracleLevel]:
    """Eigenvalues of the radial equation inside ``window``, ascending.

    Each root is refined on ``grid`` and on a grid with twice the points;
    the reported energy is the Richardson extrapolation for a fourth-order
    scheme and ``richardson_error`` is the size of that correction.
    """
    lo, hi = window or config.window
    if not lo < hi:
        raise ValueError("empty window")
    grid = grid or default_grid(config.with_(window=(lo, hi)))
    fine = grid.refined(2)
    es = np.linspace(lo, hi, cells + 1)
    vals = [match_determinant(e, config, grid) for e in es]
    levels = []
    for i in range(cells):
        if (vals[i] < 0.0) == (vals[i + 1] < 0.0):
            continue
        e1 = _solve_on(config, grid, es[i], es[i + 1])
        # the fine-grid root moves by far less than one scan cell
        d = es[1] - es[0]
        a, b = max(lo, e1 - d), min(hi, e1 + d)
        try:
            e2 = _solve_on(config, fine, a, b)
        except ValueError:
            e2 = _solve_on(config, fine, es[i], es[i + 1])
        corr = (e2 - e1) / 15.0
        r, u = eigenfunction(e2, config, fine)
        levels.append(OracleLevel(
            E=e2 + corr,
            match_residual=match_determinant(e2, config, fine),
            grid=grid,
            richardson_error=abs(corr),
            E_fine=e2,
            nodes=count_nodes(u),
            under_resolved=bool(abs(u[-1]) > TAIL_TOL),
        ))
    return levels
