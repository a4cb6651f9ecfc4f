"""Command-line front end.

Subcommands write CSV (``# ``-prefixed manifest lines, then a header row)
to standard output or to ``--out``. Every subcommand also reads
``--config FILE`` containing ``key = value`` lines; explicit flags win.

Exit status: 0 success, 1 verification failure, 2 usage error,
3 no root found, 4 numeric domain failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
import warnings
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid

from . import __version__
from .errors import DomainError, NoRootFound, TruncationWarning
from .golden import MASS, M_QUANTUM, PHI_AB, TABLES
from .heun import (
    DEFAULT_TERMS,
    ComponentKind,
    component_series,
    radial_component,
)
from .model import ResidualVariant, SymmetryMode, derived_scales
from .spectrum import SolverConfig, find_levels, table_config, variant_prestudy

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NO_ROOT, EXIT_DOMAIN = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


# -- value parsing -------------------------------------------------------------

def _window(text: str) -> Tuple[float, float]:
    try:
        lo, hi = (float(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like LO:HI, got {text!r}")
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"window {text!r} is empty (need LO < HI)")
    return lo, hi


def _variant(text: str) -> str:
    t = text.strip().lower()
    if t not in ("auto", "literal", "derivation"):
        raise argparse.ArgumentTypeError("variant must be auto, literal or derivation")
    return t


_MODES = {"spin": SymmetryMode.SPIN, "pspin": SymmetryMode.PSEUDO_SPIN}
_KINDS = {k.value: k for k in ComponentKind}

# name -> (type, default, help)
OPTIONS: Dict[str, Tuple[Callable[[str], Any], Any, str]] = {
    "variant": (_variant, "auto", "residual form: auto (pre-study choice), literal, derivation"),
    "mode": (lambda s: _choice(s, _MODES), SymmetryMode.SPIN, "spin or pspin"),
    "n": (int, 1, "radial quantum number"),
    "m": (int, M_QUANTUM, "magnetic quantum number"),
    "a": (float, 0.001, "quadratic strength"),
    "b": (float, 0.005, "linear strength"),
    "c": (float, 0.0, "Coulomb strength"),
    "B": (float, 1.0, "magnetic field"),
    "phi": (float, PHI_AB, "Aharonov-Bohm flux"),
    "M": (float, MASS, "rest mass (MeV)"),
    "window": (_window, None, "energy window LO:HI (default M:M+1.5)"),
    "scan-step": (float, None, "scan cell width (default window/2000)"),
    "refine-tol": (float, 1e-12, "bisection tolerance in E"),
    "param": (lambda s: _choice(s, {k: k for k in ("a", "b", "B", "phi")}), "B",
              "swept parameter: a, b, B or phi"),
    "from": (float, None, "sweep start"),
    "to": (float, None, "sweep end"),
    "steps": (int, 11, "number of sweep points"),
    "E": (float, None, "energy (default: lowest level from solve)"),
    "kind": (lambda s: _choice(s, _KINDS), None, "upper, lower or pspin (default from mode)"),
    "rmax": (float, None, "outer radius (default 3 / eps_B**(1/4))"),
    "points": (int, 301, "number of radial points"),
    "terms": (int, DEFAULT_TERMS, "series truncation order"),
    "grid-steps": (int, 20000, "oracle grid points"),
    "r-min": (float, 1e-6, "oracle inner radius"),
    "r-max": (float, None, "oracle outer radius (default max(8/eps_B**(1/4), 12))"),
    "cells": (int, 100, "oracle scan cells"),
    "out": (str, None, "output file (default stdout)"),
}


def _choice(text, table):
    key = text.strip()
    if key not in table:
        raise argparse.ArgumentTypeError(f"choose from {', '.join(table)}")
    return table[key]


PHYSICS = ["mode", "n", "m", "a", "b", "c", "B", "phi", "M", "window", "scan-step",
           "refine-tol", "variant"]
COMMANDS: Dict[str, Tuple[str, List[str]]] = {
    "table1": ("reproduce the spin-symmetric table", ["variant"]),
    "table2": ("reproduce the pseudo-spin table", ["variant"]),
    "solve": ("find energy levels", PHYSICS),
    "sweep": ("energy versus one parameter", PHYSICS + ["param", "from", "to", "steps"]),
    "wavefunction": ("radial spinor component on a grid",
                     PHYSICS + ["E", "kind", "rmax", "points", "terms"]),
    "verify": ("run the self-consistency checks", []),
    "oracle": ("eigenvalues of the radial ODE by shooting",
               PHYSICS + ["grid-steps", "r-min", "r-max", "cells"]),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="killingbeck",
        description="Dirac-Killingbeck spectra in magnetic and Aharonov-Bohm fields.")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)
    for name, (help_, opts) in COMMANDS.items():
        sp = subs.add_parser(name, help=help_, description=help_)
        sp.add_argument("--config", metavar="PATH", help="key = value file")
        for opt in opts + ["out"]:
            typ, default, h = OPTIONS[opt]
            shown = getattr(default, "value", default)
            dflt = f" (default {shown})" if default is not None else ""
            sp.add_argument(f"--{opt}", dest=opt.replace("-", "_"), type=typ, default=None,
                            help=h + dflt)
    return parser


def read_config(path: str, allowed: Sequence[str]) -> Dict[str, Any]:
    """Parse a ``key = value`` file; ``#`` starts a comment."""
    out: Dict[str, Any] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (t.strip() for t in line.split("=", 1))
            key = key.lstrip("-").replace("_", "-")
            if key not in allowed:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                out[key.replace("-", "_")] = OPTIONS[key][0](value)
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise UsageError(f"{path}:{lineno}: bad value for {key!r}: {exc}")
    return out


def resolve(args: argparse.Namespace) -> Dict[str, Any]:
    """Merge built-in defaults, the config file and explicit flags, in that order."""
    allowed = COMMANDS[args.command][1] + ["out"]
    merged = {k.replace("-", "_"): OPTIONS[k][1] for k in allowed}
    if args.config:
        try:
            merged.update(read_config(args.config, allowed))
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}")
    for k in allowed:
        v = getattr(args, k.replace("-", "_"))
        if v is not None:
            merged[k.replace("-", "_")] = v
    return merged


# -- output --------------------------------------------------------------------

@dataclass
class RunManifest:
    command: str
    parameters: Dict[str, Any]
    variant: str
    version: str = __version__
    duration_s: float = 0.0
    notes: List[str] = field(default_factory=list)

    def lines(self) -> List[str]:
        params = json.dumps(_jsonable(self.parameters), sort_keys=True)
        out = [f"command: {self.command}", f"parameters: {params}",
               f"variant: {self.variant}", f"version: {self.version}",
               f"wall_clock_s: {self.duration_s:.6f}"]
        return out + [f"warning: {n}" for n in self.notes]


def _jsonable(d):
    out = {}
    for k, v in d.items():
        if k == "out":
            continue
        if isinstance(v, (SymmetryMode, ComponentKind, ResidualVariant)):
            v = v.value
        elif isinstance(v, tuple):
            v = list(v)
        out[k] = v
    return out


def fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        if math.isnan(v):
            return "NaN"
        return f"{float(v):.17g}"
    return str(v)


def render_csv(manifest: RunManifest, header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    for line in manifest.lines():
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def csv_body(text: str) -> str:
    """Strip manifest lines, leaving header and data."""
    return "".join(l for l in text.splitlines(keepends=True) if not l.startswith("# "))


# -- commands ------------------------------------------------------------------

def pick_variant(name: str) -> ResidualVariant:
    if name == "auto":
        return variant_prestudy().selected
    return ResidualVariant(name)


def config_from(p: Dict[str, Any], variant: ResidualVariant) -> SolverConfig:
    return SolverConfig.build(
        a=p["a"], b=p["b"], c=p["c"], B=p["B"], phi=p["phi"], M=p["M"], m=p["m"],
        n=p["n"], mode=p["mode"], variant=variant, window=p["window"],
        scan_step=p["scan_step"], refine_tol=p["refine_tol"])


def _resolved(p: Dict[str, Any], cfg: SolverConfig, **extra) -> Dict[str, Any]:
    """Parameters as actually used, with derived window and scan step filled in."""
    return dict(p, window=cfg.window, scan_step=cfg.scan_step, **extra)


def _levels_quiet(cfg: SolverConfig):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NoRootFound)
        return find_levels(cfg)


def cmd_table(which: str, p: Dict[str, Any]) -> Tuple[str, int]:
    variant = pick_variant(p["variant"])
    t0 = time.perf_counter()
    rows, status = [], EXIT_OK
    for entry in TABLES[which]:
        note = ""
        try:
            levels = _levels_quiet(table_config(entry, variant))
        except DomainError as exc:
            levels, note, status = [], f"domain: {exc}", EXIT_DOMAIN
        if not levels and not note:
            note = "no root in window"
            status = status or EXIT_NO_ROOT
        E = levels[0].E if levels else float("nan")
        rows.append([entry.n, entry.b, entry.a, entry.B, E, entry.E, E - entry.E, note])
    header = ["n", "b", "a", "B", "E_computed", "E_paper", "delta"]
    if any(r[-1] for r in rows):
        header.append("note")
    else:
        rows = [r[:-1] for r in rows]
    man = RunManifest(which, {"phi": PHI_AB, "M": MASS, "m": M_QUANTUM}, variant.value,
                      duration_s=time.perf_counter() - t0)
    return render_csv(man, header, rows), status


def cmd_solve(p: Dict[str, Any]) -> Tuple[str, int]:
    variant = pick_variant(p["variant"])
    t0 = time.perf_counter()
    cfg = config_from(p, variant)
    levels = _levels_quiet(cfg)
    rows = [[lv.qn.n, lv.qn.m, lv.mode.value, lv.variant.value, lv.E, lv.residual,
             lv.bracket[0], lv.bracket[1]] for lv in levels]
    man = RunManifest("solve", _resolved(p, cfg), variant.value, duration_s=time.perf_counter() - t0)
    text = render_csv(man, ["n", "m", "mode", "variant", "E", "residual",
                            "bracket_lo", "bracket_hi"], rows)
    return text, EXIT_OK if levels else EXIT_NO_ROOT


def cmd_sweep(p: Dict[str, Any]) -> Tuple[str, int]:
    if p["from"] is None or p["to"] is None:
        raise UsageError("sweep needs --from and --to")
    if not p["from"] < p["to"]:
        raise UsageError("sweep needs from < to")
    if p["steps"] < 2:
        raise UsageError("sweep needs steps >= 2")
    variant = pick_variant(p["variant"])
    t0 = time.perf_counter()
    base = config_from(p, variant)
    param = p["param"]
    rows, found = [], 0
    for v in np.linspace(p["from"], p["to"], p["steps"]):
        try:
            levels = _levels_quiet(base.with_(**{param: float(v)}))
        except (DomainError, ValueError):
            levels = []
        if levels:
            found += 1
            rows.extend([param, float(v), lv.qn.n, lv.E] for lv in levels)
        else:
            rows.append([param, float(v), base.qn.n, float("nan")])
    man = RunManifest("sweep", _resolved(p, base), variant.value, duration_s=time.perf_counter() - t0)
    return render_csv(man, ["sweep_param", "value", "n", "E"], rows), \
        EXIT_OK if found else EXIT_NO_ROOT


def cmd_wavefunction(p: Dict[str, Any]) -> Tuple[str, int]:
    if p["points"] < 2:
        raise UsageError("need at least 2 points")
    variant = pick_variant(p["variant"])
    t0 = time.perf_counter()
    cfg = config_from(p, variant)
    E = p["E"]
    if E is None:
        levels = _levels_quiet(cfg)
        if not levels:
            man = RunManifest("wavefunction", _resolved(p, cfg), variant.value)
            return render_csv(man, ["r", "chi", "value", "value_normalized"], []), EXIT_NO_ROOT
        E = levels[0].E
    kind = p["kind"] or (ComponentKind.PSEUDO_SPIN if cfg.mode is SymmetryMode.PSEUDO_SPIN
                         else ComponentKind.UPPER_SPIN)
    scales = derived_scales(cfg.pot, cfg.fields, cfg.part, cfg.mode, E)
    sol = component_series(scales, kind, p["terms"])
    rmax = p["rmax"] or 3.0 / scales.length_scale
    r = np.linspace(0.0, rmax, p["points"])
    chi = scales.length_scale * r
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TruncationWarning)
        value = radial_component(scales, sol, kind, chi)
    notes = [str(w.message) for w in caught if issubclass(w.category, TruncationWarning)]
    norm = math.sqrt(trapezoid(value**2, r))
    vn = value / norm if norm > 0.0 else value
    params = _resolved(p, cfg, E=E, kind=kind, rmax=rmax)
    man = RunManifest("wavefunction", params, variant.value,
                      duration_s=time.perf_counter() - t0, notes=notes[:1])
    rows = zip(r.tolist(), chi.tolist(), value.tolist(), vn.tolist())
    return render_csv(man, ["r", "chi", "value", "value_normalized"], rows), EXIT_OK


def cmd_oracle(p: Dict[str, Any]) -> Tuple[str, int]:
    from .oracle import RadialGrid, default_grid, ode_levels

    variant = pick_variant(p["variant"])
    t0 = time.perf_counter()
    cfg = config_from(p, variant)
    r_max = p["r_max"] or default_grid(cfg).r_max
    grid = RadialGrid(p["r_min"], r_max, p["grid_steps"])
    levels = ode_levels(cfg, grid=grid, cells=p["cells"])
    rows = [[k, lv.E, lv.E_fine, lv.richardson_error, lv.match_residual, lv.nodes,
             lv.under_resolved] for k, lv in enumerate(levels)]
    man = RunManifest("oracle", _resolved(p, cfg, r_max=r_max), variant.value, duration_s=time.perf_counter() - t0)
    text = render_csv(man, ["k", "E", "E_fine", "richardson_error", "match_residual",
                            "nodes", "under_resolved"], rows)
    return text, EXIT_OK if levels else EXIT_NO_ROOT


def cmd_verify(p: Dict[str, Any]) -> Tuple[str, int]:
    from .verify import run_checks

    report, ok = run_checks()
    return report, EXIT_OK if ok else EXIT_VERIFY


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        p = resolve(args)
        if args.command in ("table1", "table2"):
            text, status = cmd_table(args.command, p)
        else:
            handler = {"solve": cmd_solve, "sweep": cmd_sweep,
                       "wavefunction": cmd_wavefunction, "verify": cmd_verify,
                       "oracle": cmd_oracle}[args.command]
            text, status = handler(p)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"{parser.prog}: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(text, p.get("out"))
    return status


if __name__ == "__main__":
    sys.exit(main())
