import math
import warnings
from concurrent.futures import ThreadPoolExecutor

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from killingbeck_dirac import (
    DomainError,
    DomainEverywhereInvalid,
    NoRootFound,
    ResidualVariant,
    SelectionFailure,
    SolverConfig,
    SymmetryMode,
    find_levels,
    landau_limit_levels,
    printed_pspin_residual,
    residual,
    residual_pspin,
    residual_spin,
    variant_prestudy,
)
from killingbeck_dirac.golden import TABLE1, TABLE2, TableEntry
from killingbeck_dirac.spectrum import table_config

LIT, DER = ResidualVariant.LITERAL, ResidualVariant.DERIVATION_CONSISTENT
SPIN, PSPIN = SymmetryMode.SPIN, SymmetryMode.PSEUDO_SPIN


def literal_spin_condition(E, a, b, B, phi, m, M, n, pseudo=False):
    """The literal spin condition in 50-digit arithmetic (e = c = 1)."""
    mp.mp.dps = 50
    E, a, b, B, phi, M = (mp.mpf(str(v)) for v in (E, a, b, B, phi, M))
    mf = E - M if pseudo else E + M
    eps = 2 * a * mf + B**2 / 4
    root = mp.sqrt(1 - 4 * (mp.mpf(1) / 4 - m**2 - phi**2 / (4 * mp.pi**2) + phi / (2 * mp.pi)))
    return (-2 * mp.sqrt(eps) * ((1 + root) / 2 + n + mp.mpf(1) / 2)
            + E**2 - M**2 + m * B / 2 - B * phi / (2 * mp.pi) + mf**2 * b**2 / eps)


def table_row_config(mode=SPIN, variant=LIT, **kw):
    base = dict(a=0.001, b=0.005, c=0.0, B=1.0, phi=2.0, M=5.0, m=1, n=1, mode=mode,
                variant=variant)
    base.update(kw)
    return SolverConfig.build(**base)


def test_literal_spin_residual_at_table_root():
    cfg = table_row_config()
    oracle = float(literal_spin_condition(5.273485251, 0.001, 0.005, 1.0, 2.0, 1, 5.0, 1))
    assert abs(oracle) < 1e-3
    assert residual_spin(5.273485251, cfg) == pytest.approx(oracle, abs=1e-13)


def test_literal_pspin_residual_at_table_root():
    cfg = table_row_config(mode=PSPIN)
    oracle = float(literal_spin_condition(5.263670129, 0.001, 0.005, 1.0, 2.0, 1, 5.0, 1,
                                          pseudo=True))
    assert abs(oracle) < 1e-3
    assert residual_pspin(5.263670129, cfg) == pytest.approx(oracle, abs=1e-13)


def test_unmodified_pseudo_spin_form_is_far_from_zero():
    v = printed_pspin_residual(5.263670129, table_row_config(mode=PSPIN))
    assert 5.0 < v < 50.0


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 0.01), st.floats(0.0, 0.01), st.floats(0.5, 2.0), st.integers(0, 4),
       st.integers(0, 4), st.sampled_from([SPIN, PSPIN]), st.floats(5.0, 6.5))
def test_variants_agree_without_flux(a, b, B, m, n, mode, E):
    cfg = table_row_config(mode=mode, a=a, b=b, B=B, phi=0.0, m=m, n=n)
    lit = residual(E, cfg)
    der = residual(E, cfg.with_(variant=DER))
    assert lit == pytest.approx(der, rel=1e-12, abs=1e-12 * max(1.0, E * E))


def test_variants_differ_with_flux():
    cfg = table_row_config()
    assert abs(residual(5.3, cfg) - residual(5.3, cfg.with_(variant=DER))) > 0.1


def test_literal_flux_root_domain():
    # 4 m^2 + phi^2/pi^2 - 2 phi/pi < 0 needs m = 0 and 0 < phi < 2 pi
    with pytest.raises(DomainError):
        residual_spin(5.2, table_row_config(m=0, phi=2.0))


def test_find_levels_table1_row():
    levels = find_levels(table_row_config(window=(5.0, 6.0)))
    assert len(levels) == 1
    assert levels[0].E == pytest.approx(5.273485251, abs=1e-4)


def test_find_levels_table2_row():
    cfg = table_row_config(mode=PSPIN, a=0.005, b=0.009, B=1.5, n=4, window=(5.0, 6.5))
    levels = find_levels(cfg)
    assert [lv.E for lv in levels] == [pytest.approx(5.798024647, abs=1e-4)]


def test_no_root_returns_empty_with_diagnostic():
    cfg = table_row_config(mode=PSPIN, window=(5.0, 5.1))
    with pytest.warns(NoRootFound) as rec:
        assert find_levels(cfg) == []
    w = rec[0].message
    assert w.residual_min <= w.residual_max < 0.0


def test_domain_everywhere_invalid():
    cfg = table_row_config(mode=PSPIN, a=0.5, B=0.01, window=(1.0, 2.0))
    with pytest.raises(DomainEverywhereInvalid):
        find_levels(cfg)


def test_invalid_cells_are_skipped():
    # b = 0 keeps the residual finite at the edge of the pseudo-spin domain E > 4.9
    cfg = table_row_config(mode=PSPIN, a=0.05, b=0.0, B=0.2, window=(4.5, 6.5))
    with pytest.raises(DomainError):
        residual(4.6, cfg)
    full = find_levels(cfg)
    valid = find_levels(cfg.with_(window=(4.905, 6.5)))
    assert len(full) == 1
    assert [lv.E for lv in full] == pytest.approx([lv.E for lv in valid], abs=1e-12)


@pytest.mark.parametrize("entry", TABLE1 + TABLE2, ids=lambda e: f"{e.table}-n{e.n}-b{e.b}-a{e.a}-B{e.B}")
def test_root_correctness(entry):
    (lv,) = find_levels(table_config(entry, LIT))
    assert abs(lv.residual) <= 1e-10 * max(1.0, lv.E**2)
    cfg = table_config(entry, LIT)
    lo, hi = lv.bracket
    assert lo <= lv.E <= hi and hi - lo < cfg.refine_tol
    assert (residual(lo, cfg) < 0) != (residual(hi, cfg) < 0)


def test_landau_limit_values():
    cfg = SolverConfig.build(B=1.0, phi=0.0, m=1, M=5.0, n=0, variant=DER)
    assert landau_limit_levels(cfg)[0].E == pytest.approx(math.sqrt(26.5), rel=1e-15)
    assert landau_limit_levels(cfg.with_(n=2))[0].E == pytest.approx(math.sqrt(28.5), rel=1e-15)
    assert math.sqrt(26.5) == pytest.approx(5.1478151, abs=1e-7)
    assert math.sqrt(28.5) == pytest.approx(5.3385391, abs=1e-7)


def test_landau_limit_is_a_residual_root():
    cfg = SolverConfig.build(B=1.3, phi=1.1, m=2, M=5.0, n=3, variant=DER, c=0.7)
    lv = landau_limit_levels(cfg)[0]
    assert abs(lv.residual) < 1e-12
    (found,) = find_levels(cfg.with_(window=(5.0, 7.0)))
    assert found.E == pytest.approx(lv.E, abs=1e-12)


@given(st.integers(0, 5), st.floats(0.1, 3.0), st.floats(0.1, 3.0))
def test_landau_limit_increases_with_field(n, B1, B2):
    cfg = SolverConfig.build(B=1.0, phi=0.0, m=1, M=5.0, n=n, variant=DER)
    lo, hi = sorted((B1, B2))
    if hi - lo < 1e-9:
        return
    assert landau_limit_levels(cfg.with_(B=lo))[0].E < landau_limit_levels(cfg.with_(B=hi))[0].E


def test_landau_limit_preconditions():
    cfg = SolverConfig.build(B=1.0, variant=DER)
    with pytest.raises(ValueError):
        landau_limit_levels(cfg.with_(a=0.1))
    with pytest.raises(ValueError):
        landau_limit_levels(cfg.with_(B=0.0))
    with pytest.raises(ValueError):
        landau_limit_levels(cfg.with_(variant=LIT))


def test_prestudy_examples():
    e1 = next(e for e in TABLE1 if (e.n, e.b, e.a, e.B) == (1, 0.009, 0.005, 1.5))
    e2 = next(e for e in TABLE2 if (e.n, e.b, e.a, e.B) == (3, 0.009, 0.005, 1.2))
    assert e1.E == 5.424530285 and e2.E == 5.539632933
    rep = variant_prestudy([e1, e2])
    assert rep.selected is LIT
    assert rep.worst(LIT) < 1e-3
    assert len(rep.printed_pspin_residual) == 1


def test_prestudy_is_deterministic():
    assert variant_prestudy() == variant_prestudy()


def test_prestudy_fails_loudly():
    bogus = [TableEntry("table1", 1, 0.005, 0.001, 1.0, 5.9)]
    with pytest.raises(SelectionFailure):
        variant_prestudy(bogus)


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig.build(window=(6.0, 5.0))
    with pytest.raises(ValueError):
        SolverConfig.build(scan_step=-1.0)
    cfg = SolverConfig.build(M=3.0)
    assert cfg.window == (3.0, 4.5)
    assert cfg.scan_step == pytest.approx(1.5 / 2000)
    assert cfg.with_(M=4.0).window == (4.0, 5.5)


def test_parallel_evaluation_is_deterministic():
    cfgs = [table_config(e, LIT) for e in TABLE1[:12]]
    serial = [find_levels(c) for c in cfgs]
    with ThreadPoolExecutor(4) as pool:
        parallel = list(pool.map(find_levels, cfgs))
    assert serial == parallel
