import math

import numpy as np
import pytest

from frw_entanglement.cosmology import ExpansionParams, Spin
from frw_entanglement.pipeline.figures import (
    FigureName,
    figure_data,
    load_presets,
    peak_curve,
)
from frw_entanglement.utils import RunSettings


@pytest.fixture()
def quiet():
    return RunSettings(workers=1, progress=False)


def test_every_figure_has_a_preset():
    presets = load_presets()
    assert set(presets) == set(FigureName)
    assert presets[FigureName.FIG1].grid.m_range.count == 200
    assert presets[FigureName.FIG2].grid.epsilon_range.count == 100
    assert presets[FigureName.FIG3].grid.epsilon_range == [1, 2, 4, 8]
    assert presets[FigureName.FERMION_MOMENTUM].grid.spin == Spin.HALF


def test_default_preset_sizes():
    presets = load_presets()
    assert len(presets[FigureName.FIG1].grid.points()) == 40_000
    assert len(presets[FigureName.FIG2].grid.points()) == 10_000
    assert len(presets[FigureName.FIG3].grid.points()) == 4_000


@pytest.mark.asyncio
async def test_fig1_massless_column_vanishes(quiet):
    rows = await figure_data(FigureName.FIG1, resolution=3, settings=quiet)
    assert len(rows) == 9
    assert all(row.error is None for row in rows)
    assert all(row.entropy_bits == 0 for row in rows if row.m == 0)
    assert all(row.entropy_bits > 0 for row in rows if row.m > 0 and row.k == 0)


@pytest.mark.asyncio
async def test_fig2_edges_vanish(quiet):
    rows = await figure_data("fig2", resolution=5, settings=quiet)
    assert len(rows) == 25
    edges = [row for row in rows if row.epsilon == 0 or row.rho == 0]
    assert len(edges) == 9
    assert all(row.entropy_bits == 0 for row in edges)
    interior = [row for row in rows if row.epsilon > 0 and row.rho > 0]
    assert all(row.entropy_bits > 0 for row in interior)


@pytest.mark.asyncio
async def test_fig3_peaks_rise_and_shift_to_lighter_masses(quiet):
    rows = await figure_data(FigureName.FIG3, resolution=101, settings=quiet)
    peaks = []
    for epsilon in (1, 2, 4, 8):
        curve = [row for row in rows if row.epsilon == epsilon]
        best = max(curve, key=lambda row: row.entropy_bits)
        assert 0 < best.m < 10
        peaks.append((best.m, best.entropy_bits))
    assert np.all(np.diff([s for _, s in peaks]) > 0)
    masses = [m for m, _ in peaks]
    assert np.all(np.diff(masses) <= 0)
    assert masses[-1] < masses[0]


@pytest.mark.slow
@pytest.mark.asyncio
async def test_fermion_momentum_curve(quiet):
    rows = await figure_data(FigureName.FERMION_MOMENTUM, resolution=6, settings=quiet)
    assert [row.k for row in rows] == pytest.approx([0, 1, 2, 3, 4, 5])
    assert rows[0].entropy_bits < 1e-8
    assert max(row.entropy_bits for row in rows) > rows[-1].entropy_bits


def test_peak_curve(reference_expansion):
    rows = peak_curve([0.1, 1.0], reference_expansion)
    assert all(row.error is None for row in rows)
    assert rows[1].m_max > rows[0].m_max > 0


def test_peak_curve_reports_failures():
    rows = peak_curve([0.1], ExpansionParams(epsilon=0.0, rho=2.0))
    assert rows[0].error.startswith("ParameterDomainError")
    assert math.isnan(rows[0].m_max)
