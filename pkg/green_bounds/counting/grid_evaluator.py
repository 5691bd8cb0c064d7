"""Parallel evaluation of lattice point counts over a grid of cells.

The strip {|x| <= 1/2, y0 <= y <= y1} is cut into square cells of side h.
Rows of cells are independent, so chunks of rows are dispatched to a
process pool and reduced with a deterministic maximum.
"""

import asyncio
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

# Absolute slack on every threshold comparison
TOLERANCE = 1e-12


@dataclass
class GridConfig:
    """Configuration for grid evaluation"""

    # Worker processes; 1 evaluates in-process
    workers: int = 1
    # Rows handed to a worker per task
    chunk_rows: int = 32

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.chunk_rows < 1:
            raise ValueError(f"chunk_rows must be >= 1, got {self.chunk_rows}")


@dataclass(frozen=True)
class GridGeometry:
    """Cell layout anchored at (-1/2, y_bottom)."""
    y_bottom: float
    y_top: float
    step: float

    @property
    def columns(self) -> int:
        return math.ceil(1.0 / self.step - 1e-9)

    @property
    def rows(self) -> int:
        return math.ceil((self.y_top - self.y_bottom) / self.step - 1e-9)

    @property
    def cells(self) -> int:
        return self.rows * self.columns

    def column_centers(self) -> np.ndarray:
        return -0.5 + self.step * (np.arange(self.columns) + 0.5)

    def row_bottom(self, row: int) -> float:
        return self.y_bottom + row * self.step


@dataclass(frozen=True)
class ChunkResult:
    """Best cell of a chunk of rows; ties resolve to the lowest (row, column)."""
    certified: int
    sample: int
    row: int
    column: int

    def beats(self, other: "ChunkResult") -> bool:
        return (self.certified, -self.row, -self.column) > (other.certified, -other.row, -other.column)


def cell_radius(step: float, y_min: float) -> float:
    """Upper bound for the hyperbolic distance from a cell centre to any point of the cell.

    The half-diagonal has Euclidean length step/sqrt(2) and lies at height
    >= y_min, so its hyperbolic length is at most step/(sqrt(2) y_min).
    """
    return step / (math.sqrt(2.0) * y_min)


def inflated_threshold(b: float, rho: float) -> float:
    return math.cosh(math.acosh(b) + 2.0 * rho)


@lru_cache(maxsize=128)
def _coprime_pairs(c_max: int, d_max: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Lower rows (c, d) with c >= 1, |d| <= d_max, gcd 1, and a0 with a0*d = 1 mod c."""
    cs, ds, a0s = [], [], []
    for c in range(1, c_max + 1):
        for d in range(-d_max, d_max + 1):
            if math.gcd(c, d) != 1:
                continue
            cs.append(c)
            ds.append(d)
            a0s.append(pow(d % c, -1, c) if c > 1 else 0)
    arrays = tuple(np.array(v, dtype=np.float64) for v in (cs, ds, a0s))
    for array in arrays:
        array.setflags(write=False)
    return arrays


def lattice_counts(xs: np.ndarray, y: float, b: float) -> np.ndarray:
    """N_SL2(Z)(x + iy, b) for every x in xs.

    For a lower row (c, d) with t = |cz + d|^2 the admissible translates
    T^k gamma_0 satisfy |Re(gamma_0 z) + k - x| <= y sqrt(2(b - 1)/t - (1 - 1/t)^2).
    Each (c, d) and (-c, -d) give the same count, as do d = +-1 for c = 0.
    """
    xs = np.asarray(xs, dtype=np.float64)
    t_max = b + math.sqrt(b * b - 1.0)
    r0 = y * math.sqrt(2.0 * (b - 1.0))
    counts = np.full(xs.shape, 2 * (2 * math.floor(r0 + TOLERANCE) + 1), dtype=np.int64)

    c_max = math.floor(math.sqrt(t_max) / y + TOLERANCE)
    if c_max < 1:
        return counts
    d_max = math.ceil(c_max / 2.0 + math.sqrt(t_max)) + 1
    c, d, a0 = (v[:, None] for v in _coprime_pairs(c_max, d_max))
    x = xs[None, :]

    s = c * x + d
    t = s * s + c * c * y * y
    radicand = 2.0 * (b - 1.0) / t - (1.0 - 1.0 / t) ** 2
    valid = radicand > -TOLERANCE
    r = y * np.sqrt(np.maximum(radicand, 0.0))
    offset = x - (a0 / c - s / (c * t))
    hi = np.floor(offset + r + TOLERANCE)
    lo = np.ceil(offset - r - TOLERANCE)
    n = np.where(valid, np.maximum(hi - lo + 1.0, 0.0), 0.0)
    counts += 2 * n.sum(axis=0).astype(np.int64)
    return counts


def evaluate_rows(geometry: GridGeometry, b: float, rows: Sequence[int]) -> ChunkResult:
    """Certified and sampled counts for a chunk of rows."""
    xs = geometry.column_centers()
    best = ChunkResult(-1, -1, -1, -1)
    best_sample = 0
    for row in rows:
        y_min = geometry.row_bottom(row)
        y0 = y_min + geometry.step / 2.0
        b_cert = inflated_threshold(b, cell_radius(geometry.step, y_min))
        certified = lattice_counts(xs, y0, b_cert)
        best_sample = max(best_sample, int(lattice_counts(xs, y0, b).max()))
        column = int(np.argmax(certified))
        candidate = ChunkResult(int(certified[column]), 0, row, column)
        if candidate.beats(best):
            best = candidate
    return ChunkResult(best.certified, best_sample, best.row, best.column)


def _reduce(results: Sequence[ChunkResult]) -> ChunkResult:
    best = results[0]
    for result in results[1:]:
        if result.beats(best):
            best = result
    return ChunkResult(best.certified, max(r.sample for r in results), best.row, best.column)


class GridEvaluator:
    """Evaluates certified lattice counts over a grid of cells.

    Work is split into row chunks; with more than one worker the chunks run
    on a process pool driven by an asyncio loop, as the result only depends
    on the set of chunk results the reduction is order independent.
    """

    def __init__(self, config: GridConfig):
        self.config = config
        logger.debug("Initialized grid evaluator with %d worker(s)", config.workers)

    def _chunks(self, geometry: GridGeometry) -> List[List[int]]:
        size = self.config.chunk_rows
        return [list(range(i, min(i + size, geometry.rows))) for i in range(0, geometry.rows, size)]

    def evaluate(self, geometry: GridGeometry, b: float) -> ChunkResult:
        start_time = time.time()
        chunks = self._chunks(geometry)
        if self.config.workers == 1 or len(chunks) == 1:
            results = [evaluate_rows(geometry, b, rows) for rows in chunks]
        else:
            try:
                asyncio.get_running_loop()
                logger.warning("Event loop already running; evaluating grid serially")
                results = [evaluate_rows(geometry, b, rows) for rows in chunks]
            except RuntimeError:
                results = asyncio.run(self._evaluate_async(geometry, b, chunks))
        result = _reduce(results)
        logger.info(
            "Evaluated %d cells (b=%s, h=%s) in %.2fs: certified=%d, sampled=%d",
            geometry.cells, b, geometry.step, time.time() - start_time,
            result.certified, result.sample,
        )
        return result

    async def _evaluate_async(
        self, geometry: GridGeometry, b: float, chunks: List[List[int]]
    ) -> List[ChunkResult]:
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=self.config.workers) as pool:
            tasks = [loop.run_in_executor(pool, evaluate_rows, geometry, b, rows) for rows in chunks]
            return list(await asyncio.gather(*tasks))
