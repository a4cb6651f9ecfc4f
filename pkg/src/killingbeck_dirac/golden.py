"""Tabulated reference energies (MeV) for spin and pseudo-spin symmetry.

Shared parameters: ``phi_ab = 2.0``, ``M = 5.0``, ``m = e = c = 1``.
The Coulomb strength is not specified by the tables and drops out of the
quantization condition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import SymmetryMode

PHI_AB = 2.0
MASS = 5.0
M_QUANTUM = 1
B_VALUES = (1.0, 1.2, 1.5)


@dataclass(frozen=True)
class TableEntry:
    table: str
    n: int
    b: float
    a: float
    B: float
    E: float

    @property
    def mode(self) -> SymmetryMode:
        return SymmetryMode.SPIN if self.table == "table1" else SymmetryMode.PSEUDO_SPIN


# (n, b, a) -> energies at B = 1.0, 1.2, 1.5
_TABLE1 = [
    (1, 0.005, 0.001, (5.273485251, 5.323036087, 5.397166864)),
    (1, 0.005, 0.003, (5.294470611, 5.340782661, 5.411507210)),
    (1, 0.005, 0.005, (5.314084649, 5.357668430, 5.425374208)),
    (1, 0.007, 0.001, (5.272596822, 5.322404523, 5.396754568)),
    (1, 0.007, 0.003, (5.293698069, 5.340212048, 5.411121852)),
    (1, 0.007, 0.005, (5.313401395, 5.357148110, 5.425012512)),
    (1, 0.009, 0.001, (5.271412478, 5.321562555, 5.396204891)),
    (1, 0.009, 0.003, (5.292668162, 5.339451317, 5.410608083)),
    (1, 0.009, 0.005, (5.312490493, 5.356454415, 5.424530285)),
    (2, 0.009, 0.005, (5.423823650, 5.482709813, 5.573630596)),
    (3, 0.009, 0.005, (5.533240322, 5.606436282, 5.719144859)),
    (4, 0.009, 0.005, (5.640843664, 5.727788566, 5.861330050)),
]

_TABLE2 = [
    (1, 0.005, 0.001, (5.263670129, 5.314776171, 5.390526897)),
    (1, 0.005, 0.003, (5.264248822, 5.315346229, 5.391084622)),
    (1, 0.005, 0.005, (5.264828765, 5.315917291, 5.391643106)),
    (1, 0.007, 0.001, (5.263669496, 5.314775550, 5.390526294)),
    (1, 0.007, 0.003, (5.264248187, 5.315345607, 5.391084018)),
    (1, 0.007, 0.005, (5.264828129, 5.315916668, 5.391642502)),
    (1, 0.009, 0.001, (5.263668651, 5.314774722, 5.390525490)),
    (1, 0.009, 0.003, (5.264247341, 5.315344778, 5.391083213)),
    (1, 0.009, 0.005, (5.264827281, 5.315915837, 5.391641695)),
    (2, 0.009, 0.005, (5.360133315, 5.428762792, 5.530111950)),
    (3, 0.009, 0.005, (5.454107542, 5.539632933, 5.665504273)),
    (4, 0.009, 0.005, (5.546810297, 5.648634249, 5.798024647)),
]


def _expand(name, rows):
    return tuple(
        TableEntry(name, n, b, a, B, E)
        for n, b, a, energies in rows
        for B, E in zip(B_VALUES, energies)
    )


# Each reference row spans three B columns: 12 rows give 36 (n, b, a, B) points.
TABLE1 = _expand("table1", _TABLE1)
TABLE2 = _expand("table2", _TABLE2)
TABLES = {"table1": TABLE1, "table2": TABLE2}
