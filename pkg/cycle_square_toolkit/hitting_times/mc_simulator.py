"""
Monte Carlo estimate of h_N(0, l) by direct simulation of the walk on C_N^2.

Trial i draws its uniforms from Generator(PCG64(SeedSequence(master_seed,
spawn_key=(i,)))), so a trial's path depends only on (master_seed, i). Totals are
kept as exact integers and summed per chunk; results do not depend on the number
of workers or the order in which chunks finish.
"""

import concurrent.futures
import logging
import warnings
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from hitting_times.closed_form import hitting_time
from hitting_times.cycle_graph import MIN_N
from hitting_times.exceptions import ConfigInvalid, TruncationWarning

logger = logging.getLogger(__name__)

# --- Configuration ---
DEFAULT_MAX_STEPS = 10**6
Z_THRESHOLD = 4
DECIMAL_PRECISION = 30
STEP_BLOCK = 4096  # largest number of uniforms fetched per generator call
FIRST_BLOCK = 16
CHUNKS_PER_WORKER = 4
MOVES = np.array([-2, -1, 1, 2], dtype=np.int64)


class WalkConfig(BaseModel):
    model_config = ConfigDict(frozen=True, strict=True)

    n: int = Field(ge=MIN_N)
    target: int = Field(ge=1)
    trials: int = Field(ge=1)
    master_seed: int = Field(ge=0, lt=2**64)
    max_steps: int = Field(default=DEFAULT_MAX_STEPS, ge=1)
    workers: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_target(self) -> "WalkConfig":
        if self.target > self.n - 1:
            raise ValueError(f"target must lie in 1..{self.n - 1}, got {self.target}")
        return self


def make_walk_config(**kwargs: Any) -> WalkConfig:
    """Validates keyword arguments into a WalkConfig, raising ConfigInvalid on bad input."""
    try:
        return WalkConfig.model_validate(kwargs)
    except ValidationError as e:
        logger.warning(f"Rejected simulation config {kwargs}: {e.error_count()} error(s)")
        raise ConfigInvalid(f"Invalid simulation config: {e}") from e


class WalkStats(BaseModel):
    """Summary of the completed trials; truncated trials only appear in truncated_trials."""

    model_config = ConfigDict(frozen=True)

    trials_completed: int
    truncated_trials: int
    step_sum: int
    step_sum_sq: int
    mean: Optional[Decimal] = None
    variance: Optional[Decimal] = None
    stderr: Optional[Decimal] = None
    variance_defined: bool = False

    def exact_mean(self) -> Optional[Fraction]:
        if self.trials_completed == 0:
            return None
        return Fraction(self.step_sum, self.trials_completed)

    def exact_variance(self) -> Optional[Fraction]:
        n = self.trials_completed
        if n < 2:
            return None
        return (self.step_sum_sq - Fraction(self.step_sum**2, n)) / (n - 1)


class WalkReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    config: WalkConfig
    stats: WalkStats
    exact: Fraction
    z_score: Optional[Decimal] = None
    flagged: bool
    degenerate: bool


class ChunkTotals(NamedTuple):
    completed: int
    step_sum: int
    step_sum_sq: int
    truncated: int


# --- Walk ---


def trial_generator(master_seed: int, trial_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(master_seed, spawn_key=(trial_index,))))


def run_trial(n: int, target: int, rng: np.random.Generator, max_steps: int) -> Optional[int]:
    """
    Walks from 0 until target is reached.

    Each step uses one uniform u, moving by (-2, -1, +1, +2)[floor(4u)].

    Returns:
        The number of steps taken, or None if max_steps passed without a hit.
    """
    position = 0
    steps = 0
    block = FIRST_BLOCK
    while steps < max_steps:
        size = min(block, max_steps - steps)
        moves = MOVES[(rng.random(size) * 4).astype(np.int64)]
        positions = (position + np.cumsum(moves)) % n
        hits = np.flatnonzero(positions == target)
        if hits.size:
            return steps + int(hits[0]) + 1
        steps += size
        position = int(positions[-1])
        block = min(block * 2, STEP_BLOCK)
    return None


def _run_chunk(n: int, target: int, master_seed: int, max_steps: int, start: int, stop: int) -> ChunkTotals:
    completed = step_sum = step_sum_sq = truncated = 0
    for trial_index in range(start, stop):
        steps = run_trial(n, target, trial_generator(master_seed, trial_index), max_steps)
        if steps is None:
            truncated += 1
            continue
        completed += 1
        step_sum += steps
        step_sum_sq += steps * steps
    return ChunkTotals(completed, step_sum, step_sum_sq, truncated)


def _chunk_bounds(trials: int, n_chunks: int) -> List[Tuple[int, int]]:
    n_chunks = max(1, min(n_chunks, trials))
    size, extra = divmod(trials, n_chunks)
    bounds = []
    start = 0
    for k in range(n_chunks):
        stop = start + size + (1 if k < extra else 0)
        bounds.append((start, stop))
        start = stop
    return bounds


def _to_decimal(value: Fraction) -> Decimal:
    return Decimal(value.numerator) / Decimal(value.denominator)


def _summarize(totals: ChunkTotals) -> WalkStats:
    stats = WalkStats(
        trials_completed=totals.completed,
        truncated_trials=totals.truncated,
        step_sum=totals.step_sum,
        step_sum_sq=totals.step_sum_sq,
    )
    mean = stats.exact_mean()
    if mean is None:
        return stats
    with localcontext() as ctx:
        ctx.prec = DECIMAL_PRECISION
        variance = stats.exact_variance()
        if variance is None:
            return stats.model_copy(update={"mean": _to_decimal(mean), "variance": Decimal(0)})
        variance_dec = _to_decimal(variance)
        stderr = (variance_dec / totals.completed).sqrt()
        return stats.model_copy(
            update={"mean": _to_decimal(mean), "variance": variance_dec, "stderr": stderr, "variance_defined": True}
        )


def simulate(cfg: WalkConfig) -> WalkStats:
    """
    Runs cfg.trials independent walks and summarizes the completed ones.

    Trials are split into contiguous chunks. With cfg.workers > 1 the chunks run
    in a process pool; otherwise they run inline.
    """
    n_chunks = 1 if cfg.workers == 1 else cfg.workers * CHUNKS_PER_WORKER
    bounds = _chunk_bounds(cfg.trials, n_chunks)
    logger.info(f"Simulating {cfg.trials} walks on C^2_{cfg.n} to vertex {cfg.target} in {len(bounds)} chunk(s)")

    results: Dict[Tuple[int, int], ChunkTotals] = {}
    args = (cfg.n, cfg.target, cfg.master_seed, cfg.max_steps)
    if cfg.workers == 1:
        for start, stop in bounds:
            results[(start, stop)] = _run_chunk(*args, start, stop)
    else:
        futures_map = {}
        with concurrent.futures.ProcessPoolExecutor(max_workers=cfg.workers) as executor:
            for start, stop in bounds:
                future = executor.submit(_run_chunk, *args, start, stop)
                futures_map[future] = (start, stop)

            for future in concurrent.futures.as_completed(futures_map):
                chunk = futures_map[future]
                try:
                    results[chunk] = future.result()
                    logger.debug(f"Chunk {chunk} finished: {results[chunk]}")
                except Exception as e:
                    logger.error(f"Simulation chunk {chunk} failed: {e}", exc_info=True)
                    raise

    totals = ChunkTotals(*(sum(values) for values in zip(*results.values())))
    if totals.truncated:
        message = f"{totals.truncated} of {cfg.trials} trials hit the {cfg.max_steps}-step cap and were excluded"
        logger.warning(message)
        warnings.warn(message, TruncationWarning, stacklevel=2)
    return _summarize(totals)


def empirical_vs_exact(cfg: WalkConfig) -> WalkReport:
    """Compares the simulated mean against the exact hitting time with a z-score."""
    stats = simulate(cfg)
    exact = hitting_time(cfg.n, cfg.target)
    mean = stats.exact_mean()

    z_score: Optional[Decimal] = None
    if mean is None:
        flagged = True
    elif stats.stderr is None or stats.stderr == 0:
        flagged = mean != exact
    else:
        with localcontext() as ctx:
            ctx.prec = DECIMAL_PRECISION
            z_score = _to_decimal(mean - exact) / stats.stderr
        flagged = abs(z_score) > Z_THRESHOLD

    if flagged:
        logger.warning(f"Simulated mean {stats.mean} is far from the exact value {exact} (z={z_score})")
    return WalkReport(
        config=cfg, stats=stats, exact=exact, z_score=z_score, flagged=flagged, degenerate=z_score is None
    )
