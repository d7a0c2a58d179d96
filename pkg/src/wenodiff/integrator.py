"""Third-order TVD Runge-Kutta time stepping."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from wenodiff.config import SchemeConfig
from wenodiff.mesh import GridSpec, apply_dirichlet, dimension_split_rhs, from_nodes, state_shape, to_nodes
from wenodiff.problems import ProblemDefinition

logger = logging.getLogger(__name__)

Operator = Callable[[np.ndarray], np.ndarray]

DEFAULT_MAX_STEPS = 10_000_000


class NumericalBlowup(RuntimeError):
    """A Runge-Kutta stage produced a non-finite value."""

    def __init__(self, step: int, stage: int, index: tuple[int, ...]):
        self.step = step
        self.stage = stage
        self.index = index
        super().__init__(f"non-finite value at step {step}, stage {stage}, index {index}")


class StepLimitExceeded(RuntimeError):
    pass


def _check_finite(u: np.ndarray, step: int, stage: int) -> None:
    if not np.all(np.isfinite(u)):
        bad = np.argwhere(~np.isfinite(np.atleast_1d(u)))[0]
        raise NumericalBlowup(step, stage, tuple(int(i) for i in bad))


def rk3_step(u: np.ndarray, rhs: Operator, dt: float, *, step: int = 0,
             post: Callable[[np.ndarray], np.ndarray] | None = None) -> np.ndarray:
    """One Shu-Osher TVD RK3 step; *post* is applied to every stage value."""
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    post = post or (lambda v: v)

    u1 = post(u + dt * rhs(u))
    _check_finite(u1, step, 1)
    u2 = post(0.75 * u + 0.25 * u1 + 0.25 * dt * rhs(u1))
    _check_finite(u2, step, 2)
    un = post(u / 3 + 2 / 3 * u2 + 2 / 3 * dt * rhs(u2))
    _check_finite(un, step, 3)
    return un


@dataclass(frozen=True)
class TimeLoopConfig:
    final_time: float
    cfl: float = 0.4
    dt: float | None = None
    max_steps: int = DEFAULT_MAX_STEPS

    def __post_init__(self) -> None:
        if self.final_time < 0:
            raise ValueError(f"final_time must be nonnegative, got {self.final_time}")
        if not self.cfl > 0:
            raise ValueError(f"cfl must be positive, got {self.cfl}")
        if self.dt is not None and not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")


@dataclass
class SolutionField:
    """Numerical solution at one time level on the full node set."""

    grid: GridSpec
    values: np.ndarray
    time: float
    steps: int = 0
    runtime_seconds: float = 0.0
    dt: float = 0.0

    @property
    def coordinates(self) -> tuple[np.ndarray, ...]:
        return self.grid.node_mesh()


def initial_state(problem: ProblemDefinition, grid: GridSpec) -> np.ndarray:
    u0 = np.asarray(problem.initial(*grid.node_mesh()), dtype=np.float64)
    u = from_nodes(u0, problem.bcs)
    assert u.shape == state_shape(grid, problem.bcs)
    return apply_dirichlet(u, problem.bcs)


def advance(problem: ProblemDefinition, grid: GridSpec, cfg: SchemeConfig,
            loop: TimeLoopConfig | None = None) -> SolutionField:
    """Integrate from the initial data at ``problem.start_time`` to the final time.

    The step size comes from the problem's rule unless *loop* overrides
    it; the last step is shortened to land on the final time exactly.
    """
    if grid.dimension != problem.dimension:
        raise ValueError(f"{problem.name} is {problem.dimension}D but the grid is {grid.dimension}D")
    loop = loop or TimeLoopConfig(problem.final_time, cfl=cfg.cfl)
    dt = loop.dt if loop.dt is not None else problem.time_step(grid.spacings, loop.cfl)

    def rhs(v):
        return dimension_split_rhs(v, problem, cfg, grid)

    def post(v):
        return apply_dirichlet(v, problem.bcs)

    t0 = problem.start_time
    if loop.final_time < t0:
        raise ValueError(f"{problem.name} starts at t = {t0}; final time {loop.final_time} is earlier")
    # whole steps of size dt, the last one shortened to hit final_time
    span = loop.final_time - t0
    nsteps = int(np.ceil(span / dt * (1 - 1e-12))) if span > 0 else 0
    if nsteps > loop.max_steps:
        raise StepLimitExceeded(f"{problem.name}: {nsteps} steps needed, limit is {loop.max_steps}")

    u = initial_state(problem, grid)
    start = time.perf_counter()
    for step in range(nsteps):
        h = dt if step < nsteps - 1 else span - (nsteps - 1) * dt
        u = rk3_step(u, rhs, h, step=step, post=post)
    runtime = time.perf_counter() - start
    logger.debug("%s: %d steps in %.2fs (dt=%.3e)", problem.name, nsteps, runtime, dt)

    return SolutionField(grid, to_nodes(u, problem.bcs), loop.final_time, nsteps, runtime, dt)
