"""Self-consistency checks behind ``killingbeck verify``."""

from __future__ import annotations

import math
from typing import Callable, List, Tuple

import numpy as np

from .heun import closed_form_first_three, series_coefficients, termination_check
from .model import ResidualVariant, SymmetryMode
from .spectrum import (
    SELECTION_THRESHOLD,
    SolverConfig,
    find_levels,
    landau_limit_levels,
    variant_prestudy,
)

Check = Tuple[bool, str]


def check_prestudy() -> Check:
    rep = variant_prestudy()
    other = [v for v in ResidualVariant if v is not rep.selected][0]
    worst = rep.worst(rep.selected)
    ok = worst < SELECTION_THRESHOLD and rep.printed_pspin_min > 1.0
    return ok, (f"selected={rep.selected.value} worst={worst:.2e} "
                f"({other.value} worst={rep.worst(other):.2e}); "
                f"unmodified pseudo-spin form at table roots: min {rep.printed_pspin_min:.2f}, "
                f"max {max(rep.printed_pspin_residual):.2f} (diagnostic, never zero)")


def check_phi0_agreement() -> Check:
    worst = 0.0
    for mode in SymmetryMode:
        for n in (1, 2):
            for B in (1.0, 1.5):
                base = SolverConfig.build(a=0.005, b=0.009, B=B, phi=0.0, n=n, mode=mode)
                lit = find_levels(base)
                der = find_levels(base.with_(variant=ResidualVariant.DERIVATION_CONSISTENT))
                if len(lit) != len(der) or not lit:
                    return False, f"root count differs for mode={mode.value} n={n} B={B}"
                worst = max(worst, max(abs(x.E - y.E) for x, y in zip(lit, der)))
    return worst <= 1e-12, f"max |E_literal - E_derivation| = {worst:.1e} over 8 configs"


def check_landau_oracle() -> Check:
    from .oracle import ode_levels

    cfg = SolverConfig.build(B=1.0, phi=0.0, m=1, M=5.0, n=0,
                             variant=ResidualVariant.DERIVATION_CONSISTENT)
    closed = [landau_limit_levels(cfg.with_(n=n))[0].E for n in (0, 2)]
    found = [find_levels(cfg.with_(n=n))[0].E for n in (0, 2)]
    ode = [lv.E for lv in ode_levels(cfg, window=(5.05, 5.45))]
    if len(ode) != 2:
        return False, f"oracle found {len(ode)} levels in [5.05, 5.45], expected 2"
    d_ode = max(abs(a - b) for a, b in zip(closed, ode))
    d_res = max(abs(a - b) for a, b in zip(closed, found))
    ok = d_ode <= 1e-6 and d_res <= cfg.refine_tol
    return ok, (f"closed form {closed[0]:.10f}, {closed[1]:.10f}; "
                f"|oracle - closed| = {d_ode:.1e}, |residual root - closed| = {d_res:.1e}")


def check_recurrence(draws: int = 1000, seed: int = 2024) -> Check:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        P = rng.uniform(1e-3, 5.0)
        b, S, R = rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-10, 10)
        sol = series_coefficients(P, b, S, R, 8)
        for x, y in zip(sol.coeffs[1:4], closed_form_first_three(P, b, S, R)):
            worst = max(worst, abs(x - y) / max(abs(y), 1e-300))
    term_ok = True
    for n in (0, 2, 4, 6):
        for P in (0.5, 1.0, 1.5 + 1 / math.pi):
            sol = series_coefficients(P, 0.0, 0.0, 2.0 * n, 40)
            rep = termination_check(sol, n)
            big = np.max(np.abs(sol.coeffs))
            term_ok &= rep.terminates and rep.degree == n and bool(
                np.all(np.abs(sol.coeffs[n + 1:]) <= 1e-13 * big))
    return worst <= 1e-12 and term_ok, (
        f"{draws} draws, max relative gap {worst:.1e}; even-degree termination "
        f"{'ok' if term_ok else 'FAILED'}")


CHECKS: List[Tuple[str, Callable[[], Check]]] = [
    ("variant-prestudy", check_prestudy),
    ("phi0-agreement", check_phi0_agreement),
    ("landau-oracle", check_landau_oracle),
    ("recurrence", check_recurrence),
]


def run_checks() -> Tuple[str, bool]:
    lines = ["killingbeck verify", ""]
    all_ok = True
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        all_ok &= ok
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name:<17} {detail}")
    lines += ["", f"{'all' if all_ok else 'NOT all'} {len(CHECKS)} check groups passed"]
    return "\n".join(lines) + "\n", all_ok
