"""Figure presets and the m_max ridge of the mass-momentum plane."""

import enum
import importlib.resources
import logging
from collections.abc import Iterable

import yaml
from pydantic import BaseModel, ConfigDict

from frw_entanglement import modesolver
from frw_entanglement.cosmology import ExpansionParams, Statistics
from frw_entanglement.entanglement import find_m_max
from frw_entanglement.pipeline.sweep import SweepGrid, SweepRow, run_sweep
from frw_entanglement.utils import FrwEntanglementError, RunSettings

logger = logging.getLogger(f"catalystcoop.{__name__}")

PEAK_COLUMNS = ["k", "m_max", "entropy_bits"]


class FigureName(enum.StrEnum):
    """Packaged figure presets."""

    FIG1 = "fig1"
    FIG2 = "fig2"
    FIG3 = "fig3"
    FERMION_MOMENTUM = "fermion_momentum"


class FigurePreset(BaseModel):
    """A named sweep that reproduces one figure's data."""

    model_config = ConfigDict(frozen=True)

    description: str
    grid: SweepGrid


def load_presets() -> dict[FigureName, FigurePreset]:
    """Read the figure presets shipped in ``package_data/figures.yaml``."""
    path = importlib.resources.files("frw_entanglement.package_data") / "figures.yaml"
    with path.open() as f:
        raw = yaml.safe_load(f)
    return {
        FigureName(name): FigurePreset.model_validate(preset)
        for name, preset in raw.items()
    }


async def figure_data(
    which: FigureName,
    resolution: int | None = None,
    settings: RunSettings | None = None,
) -> list[SweepRow]:
    """Sweep rows for one figure preset.

    Args:
        which: preset to run.
        resolution: if given, replaces the count of every swept range.
        settings: worker count and progress display.
    """
    preset = load_presets()[FigureName(which)]
    grid = preset.grid
    if resolution is not None:
        grid = grid.with_resolution(resolution)
    logger.info(f"Generating {which}: {preset.description}")
    return await run_sweep(grid, settings)


class PeakRow(BaseModel):
    """Location and height of the entropy peak in m for one momentum."""

    k: float
    m_max: float
    entropy_bits: float
    error: str | None = None


def peak_curve(
    k_values: Iterable[float],
    p: ExpansionParams,
    statistics: Statistics = Statistics.BOSON,
    settings: modesolver.IntegrationSettings | None = None,
) -> list[PeakRow]:
    """Trace m_max(k) and S_max(k); points whose search fails become error rows."""
    rows = []
    for k in k_values:
        try:
            m_max, s_max = find_m_max(k, p, statistics, settings)
        except FrwEntanglementError as error:
            logger.warning(f"No peak for k={k}: {error}")
            rows.append(
                PeakRow(
                    k=k,
                    m_max=float("nan"),
                    entropy_bits=float("nan"),
                    error=f"{type(error).__name__}: {error}",
                )
            )
            continue
        rows.append(PeakRow(k=k, m_max=m_max, entropy_bits=s_max))
    return rows
