"""Uniform node-centered grids, ghost padding and the semi-discrete operator.

An axis ``[lower, upper]`` with ``n`` cells has nodes ``x_0, ..., x_n``.
On a periodic axis ``x_n`` duplicates ``x_0`` and only ``x_0, ..., x_{n-1}``
are evolved; the duplicate is restored by :func:`to_nodes` so that norms
and dumps always see all ``n + 1`` nodes. On a Dirichlet side the boundary
node is part of the state but pinned to its value.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from wenodiff.convection import convection_rhs, max_wave_speed
from wenodiff.diffusion import diffusion_rhs

if TYPE_CHECKING:
    from wenodiff.config import SchemeConfig
    from wenodiff.problems import ProblemDefinition

GHOSTS = 3
MIN_CELLS = 6

BC_KINDS = ("periodic", "dirichlet", "extrapolate")


# {{{ grid


@dataclass(frozen=True)
class Axis:
    lower: float
    upper: float
    n: int

    def __post_init__(self) -> None:
        if self.n < MIN_CELLS:
            raise ValueError(f"need at least {MIN_CELLS} cells per axis, got {self.n}")
        if not self.upper > self.lower:
            raise ValueError(f"empty axis [{self.lower}, {self.upper}]")

    @property
    def spacing(self) -> float:
        return (self.upper - self.lower) / self.n

    def nodes(self) -> np.ndarray:
        return self.lower + np.arange(self.n + 1) * self.spacing


@dataclass(frozen=True)
class GridSpec:
    axes: tuple[Axis, ...]

    def __post_init__(self) -> None:
        if len(self.axes) not in (1, 2):
            raise ValueError(f"only 1D and 2D grids are supported, got {len(self.axes)}D")

    @classmethod
    def uniform(cls, domain: tuple[tuple[float, float], ...], n: int | tuple[int, ...]) -> GridSpec:
        ns = (n,) * len(domain) if isinstance(n, int) else tuple(n)
        return cls(tuple(Axis(lo, hi, k) for (lo, hi), k in zip(domain, ns)))

    @property
    def dimension(self) -> int:
        return len(self.axes)

    @property
    def spacings(self) -> tuple[float, ...]:
        return tuple(a.spacing for a in self.axes)

    def node_mesh(self) -> tuple[np.ndarray, ...]:
        """Coordinate arrays over all ``n + 1`` nodes, indexed ``[x]`` or ``[y, x]``."""
        if self.dimension == 1:
            return (self.axes[0].nodes(),)
        x, y = self.axes[0].nodes(), self.axes[1].nodes()
        X, Y = np.meshgrid(x, y, indexing="xy")
        return X, Y


# }}}


# {{{ boundary conditions


@dataclass(frozen=True)
class BoundaryCondition:
    """Boundary treatment of one axis, chosen per side."""

    left: str = "periodic"
    right: str = "periodic"
    left_value: float = 0.0
    right_value: float = 0.0

    def __post_init__(self) -> None:
        for kind in (self.left, self.right):
            if kind not in BC_KINDS:
                raise ValueError(f"unknown boundary kind {kind!r}; expected one of {BC_KINDS}")
        if (self.left == "periodic") != (self.right == "periodic"):
            raise ValueError("periodic boundaries must be periodic on both sides")

    @classmethod
    def periodic(cls) -> BoundaryCondition:
        return cls("periodic", "periodic")

    @classmethod
    def dirichlet(cls, left_value: float = 0.0, right_value: float = 0.0) -> BoundaryCondition:
        return cls("dirichlet", "dirichlet", left_value, right_value)

    @classmethod
    def extrapolate(cls) -> BoundaryCondition:
        return cls("extrapolate", "extrapolate")

    @property
    def is_periodic(self) -> bool:
        return self.left == "periodic"


def pad_field(field: np.ndarray, bc: BoundaryCondition, width: int = GHOSTS, axis: int = -1) -> np.ndarray:
    """Add *width* ghost values on both sides of *axis*."""
    if width != GHOSTS:
        raise ValueError(f"the schemes need exactly {GHOSTS} ghost values, got {width}")
    u = np.moveaxis(np.asarray(field, dtype=np.float64), axis, -1)
    if u.shape[-1] < width:
        raise ValueError(f"need at least {width} values along the padded axis")

    if bc.is_periodic:
        left, right = u[..., -width:], u[..., :width]
    else:
        left = _ghosts(u[..., :1], bc.left, bc.left_value, width)
        right = _ghosts(u[..., -1:], bc.right, bc.right_value, width)

    return np.moveaxis(np.concatenate([left, u, right], axis=-1), -1, axis)


def _ghosts(edge: np.ndarray, kind: str, value: float, width: int) -> np.ndarray:
    shape = edge.shape[:-1] + (width,)
    if kind == "dirichlet":
        return np.full(shape, value, dtype=np.float64)
    return np.broadcast_to(edge, shape)


# }}}


# {{{ state <-> nodes


def state_shape(grid: GridSpec, bcs: tuple[BoundaryCondition, ...]) -> tuple[int, ...]:
    sizes = [a.n if bc.is_periodic else a.n + 1 for a, bc in zip(grid.axes, bcs)]
    # arrays are indexed [y, x] in 2D
    return tuple(reversed(sizes))


def from_nodes(values: np.ndarray, bcs: tuple[BoundaryCondition, ...]) -> np.ndarray:
    """Drop the duplicated periodic end node(s) from a full node array."""
    u = np.asarray(values, dtype=np.float64)
    for d, bc in enumerate(bcs):
        if bc.is_periodic:
            axis = u.ndim - 1 - d
            u = np.take(u, np.arange(u.shape[axis] - 1), axis=axis)
    return np.array(u)


def to_nodes(state: np.ndarray, bcs: tuple[BoundaryCondition, ...]) -> np.ndarray:
    """Restore all ``n + 1`` nodes per axis from an evolved state."""
    u = np.asarray(state)
    for d, bc in enumerate(bcs):
        if bc.is_periodic:
            axis = u.ndim - 1 - d
            u = np.concatenate([u, np.take(u, [0], axis=axis)], axis=axis)
    return u


def apply_dirichlet(state: np.ndarray, bcs: tuple[BoundaryCondition, ...]) -> np.ndarray:
    """Overwrite pinned boundary nodes with their prescribed values (in place)."""
    for d, bc in enumerate(bcs):
        axis = state.ndim - 1 - d
        v = np.moveaxis(state, axis, -1)
        if bc.left == "dirichlet":
            v[..., 0] = bc.left_value
        if bc.right == "dirichlet":
            v[..., -1] = bc.right_value
    return state


def _zero_pinned(rhs: np.ndarray, bcs: tuple[BoundaryCondition, ...]) -> np.ndarray:
    for d, bc in enumerate(bcs):
        v = np.moveaxis(rhs, rhs.ndim - 1 - d, -1)
        if bc.left == "dirichlet":
            v[..., 0] = 0.0
        if bc.right == "dirichlet":
            v[..., -1] = 0.0
    return rhs


# }}}


# {{{ semi-discrete operator


def _axis_rhs(u: np.ndarray, axis: int, dx: float, bc: BoundaryCondition, problem: ProblemDefinition,
              cfg: SchemeConfig, direction: int, alpha: float | None) -> np.ndarray:
    up = pad_field(u, bc, axis=axis)
    rhs = diffusion_rhs(problem.diffusion(up), dx, cfg, axis=axis)
    if problem.flux is not None:
        rhs += convection_rhs(up, dx, problem.flux[direction], cfg.convection, alpha=alpha, axis=axis)
    return rhs


def dimension_split_rhs(u: np.ndarray, problem: ProblemDefinition, cfg: SchemeConfig,
                        grid: GridSpec) -> np.ndarray:
    """Spatial operator ``L(u)`` summed over axes, one 1D sweep per axis.

    The convection wave speed is one global bound per axis and evaluation.
    In 2D the sweeps are split over ``cfg.workers`` threads by blocks of
    rows/columns; the result does not depend on the worker count.
    """
    u = np.asarray(u, dtype=np.float64)
    bcs = problem.bcs
    total = np.zeros_like(u)
    for direction, (ax, bc) in enumerate(zip(grid.axes, bcs)):
        axis = u.ndim - 1 - direction
        alpha = None
        if problem.flux is not None:
            fp = problem.flux_prime[direction]
            alpha = max_wave_speed(fp, float(u.min()), float(u.max()), u)

        if cfg.workers == 1 or u.ndim == 1:
            total += _axis_rhs(u, axis, ax.spacing, bc, problem, cfg, direction, alpha)
            continue

        other = 1 - axis
        blocks = np.array_split(np.arange(u.shape[other]), cfg.workers)

        def work(idx, axis=axis, ax=ax, bc=bc, direction=direction, alpha=alpha, other=other):
            part = np.take(u, idx, axis=other)
            return idx, _axis_rhs(part, axis, ax.spacing, bc, problem, cfg, direction, alpha)

        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            for idx, part in pool.map(work, [b for b in blocks if b.size]):
                if other == 0:
                    total[idx, :] += part
                else:
                    total[:, idx] += part

    return _zero_pinned(total, bcs)


# }}}
