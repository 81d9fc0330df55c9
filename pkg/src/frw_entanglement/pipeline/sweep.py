"""Parameter sweeps over (epsilon, rho, m, k) and their CSV emission."""

import asyncio
import itertools
import logging
import typing
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator
from tqdm import tqdm

from frw_entanglement.cosmology import ExpansionParams, ModeParams, Spin
from frw_entanglement.entanglement import CoefficientSource, entropy_for_mode
from frw_entanglement.utils import FrwEntanglementError, RunSettings

logger = logging.getLogger(f"catalystcoop.{__name__}")

SWEEP_COLUMNS = ["epsilon", "rho", "m", "k", "spin", "x", "entropy_bits"]
CSV_FLOAT_FORMAT = "%.17g"


class ParamRange(BaseModel):
    """``count`` evenly spaced values from ``min`` to ``max`` inclusive."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    min_: float = Field(alias="min", allow_inf_nan=False)
    max_: float = Field(alias="max", allow_inf_nan=False)
    count: int = Field(ge=1)

    @model_validator(mode="after")
    def check_order(self):
        """min must not exceed max."""
        if self.min_ > self.max_:
            raise ValueError(f"Range min {self.min_} exceeds max {self.max_}.")
        return self

    def values(self) -> list[float]:
        """The grid values; a single-point range is just ``min``."""
        if self.count == 1:
            return [self.min_]
        return np.linspace(self.min_, self.max_, self.count).tolist()

    def with_count(self, count: int) -> "ParamRange":
        """Same bounds at a different resolution."""
        return self.model_copy(update={"count": count})


FiniteFloat = typing.Annotated[float, Field(allow_inf_nan=False)]
# A fixed value, an explicit list of values or a {min, max, count} range
RangeSpec = FiniteFloat | list[FiniteFloat] | ParamRange


def range_values(spec: RangeSpec) -> list[float]:
    """Expand a range specification into its grid values."""
    if isinstance(spec, ParamRange):
        return spec.values()
    if isinstance(spec, list):
        return list(spec)
    return [spec]


class GridPoint(typing.NamedTuple):
    """One (epsilon, rho, m, k) evaluation of a sweep."""

    epsilon: float
    rho: float
    m: float
    k: float
    spin: Spin
    method: CoefficientSource


class SweepGrid(BaseModel):
    """A rectangular grid of expansion and mode parameters for one spin."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    m_range: RangeSpec
    k_range: RangeSpec
    epsilon_range: RangeSpec
    rho_range: RangeSpec
    spin: Spin = Spin.ONE
    method: CoefficientSource = CoefficientSource.ANALYTIC
    output_path: Path | None = None

    @model_validator(mode="after")
    def check_nonempty(self):
        """An explicit value list needs at least one entry."""
        for name in ("m_range", "k_range", "epsilon_range", "rho_range"):
            if isinstance(getattr(self, name), list) and not getattr(self, name):
                raise ValueError(f"{name} lists no values.")
        return self

    def with_resolution(self, resolution: int) -> "SweepGrid":
        """Replace the count of every {min, max, count} range."""
        update = {
            name: spec.with_count(resolution)
            for name in ("m_range", "k_range", "epsilon_range", "rho_range")
            if isinstance(spec := getattr(self, name), ParamRange)
        }
        return self.model_copy(update=update)

    def points(self) -> list[GridPoint]:
        """Grid points in row-major order: epsilon outermost, k innermost."""
        return [
            GridPoint(epsilon, rho, m, k, self.spin, self.method)
            for epsilon, rho, m, k in itertools.product(
                range_values(self.epsilon_range),
                range_values(self.rho_range),
                range_values(self.m_range),
                range_values(self.k_range),
            )
        ]


class SweepRow(BaseModel):
    """Entropy of one grid point; failed points carry nan values and an error."""

    epsilon: float
    rho: float
    m: float
    k: float
    spin: Spin
    x: float
    entropy_bits: float
    error: str | None = None

    @model_validator(mode="after")
    def check_values(self):
        """Successful rows have non-negative x and entropy."""
        if self.error is None and not (self.x >= 0 and self.entropy_bits >= 0):
            raise ValueError(f"Invalid sweep row x={self.x}, S={self.entropy_bits}")
        return self

    @classmethod
    def failed(cls, point: GridPoint, error: str) -> "SweepRow":
        """Row recording a point that could not be evaluated."""
        return cls(
            epsilon=point.epsilon,
            rho=point.rho,
            m=point.m,
            k=point.k,
            spin=point.spin,
            x=float("nan"),
            entropy_bits=float("nan"),
            error=error,
        )


def evaluate_point(point: GridPoint) -> SweepRow:
    """Evaluate a single grid point, turning domain failures into error rows."""
    try:
        result = entropy_for_mode(
            ExpansionParams(epsilon=point.epsilon, rho=point.rho),
            ModeParams(m=point.m, k=point.k, spin=point.spin),
            method=point.method,
        )
    except (FrwEntanglementError, ValueError) as error:
        logger.warning(f"Failed to evaluate {point}: {error}")
        return SweepRow.failed(point, f"{type(error).__name__}: {error}")
    return SweepRow(
        epsilon=point.epsilon,
        rho=point.rho,
        m=point.m,
        k=point.k,
        spin=point.spin,
        x=result.x,
        entropy_bits=result.entropy_bits,
    )


async def run_sweep(
    grid: SweepGrid, settings: RunSettings | None = None
) -> list[SweepRow]:
    """Evaluate every grid point, concurrently when more than one worker is configured.

    Rows come back in grid order whatever the evaluation order was. Exceptions
    that escape a worker (a crashed process, say) become error rows too.
    """
    settings = settings or RunSettings()
    points = grid.points()
    logger.info(f"Sweeping {len(points)} points with {settings.workers} worker(s).")

    with tqdm(
        total=len(points), desc="sweep", disable=not settings.progress
    ) as progress:
        if settings.workers == 1:
            rows = []
            for point in points:
                rows.append(evaluate_point(point))
                progress.update()
            return rows

        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=settings.workers) as pool:

            async def evaluate(point: GridPoint) -> SweepRow:
                row = await loop.run_in_executor(pool, evaluate_point, point)
                progress.update()
                return row

            results = await asyncio.gather(
                *(evaluate(point) for point in points), return_exceptions=True
            )

    rows = []
    for point, result in zip(points, results, strict=True):
        if isinstance(result, Exception):
            logger.error(f"Worker failed on {point}: {result!r}")
            result = SweepRow.failed(point, f"{type(result).__name__}: {result}")
        rows.append(result)
    return rows


def rows_to_csv(
    rows: Sequence[BaseModel], columns: Sequence[str] = tuple(SWEEP_COLUMNS)
) -> str:
    """Render rows as CSV; an ``error`` column is appended only if some row failed."""
    frame = pd.DataFrame(
        [row.model_dump(include=set(columns)) for row in rows], columns=list(columns)
    )
    errors = [getattr(row, "error", None) for row in rows]
    if any(errors):
        frame["error"] = [error or "" for error in errors]
    if "spin" in frame:
        frame["spin"] = frame["spin"].map(str)
    return frame.to_csv(
        index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n", na_rep="nan"
    )


def write_csv(
    rows: Sequence[BaseModel],
    path: Path,
    columns: Sequence[str] = tuple(SWEEP_COLUMNS),
):
    """Write rows to ``path`` as CSV."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(rows_to_csv(rows, columns), encoding="utf-8", newline="\n")
    logger.info(f"Wrote {len(rows)} rows to {path}")
