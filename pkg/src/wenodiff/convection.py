"""Fifth-order WENO for the convection term ``f(u)_x``.

Point-value finite differences with global Lax-Friedrichs splitting: each
split flux is reconstructed upwind at the interfaces by WENO-JS or by
WENO-M (JS weights passed through Henrick's mapping).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

Array = Any
FluxFunction = Callable[[Array], Array]

VARIANTS = ("js", "m")

EPS = 1.0e-6
D5 = np.array([1 / 10, 6 / 10, 3 / 10])
ALPHA_SAMPLES = 10_000


# {{{ flux splitting


@dataclass(frozen=True)
class SplitFluxPair:
    plus: np.ndarray
    minus: np.ndarray
    alpha: float


def max_wave_speed(fprime: FluxFunction, umin: float, umax: float, u: Array | None = None,
                   samples: int = ALPHA_SAMPLES) -> float:
    """Bound ``max |f'|`` over ``[umin, umax]`` by dense sampling.

    If the field *u* is given, its own values are included so that the bound
    holds at every grid point.
    """
    s = np.linspace(umin, umax, samples)
    alpha = float(np.max(np.abs(fprime(s))))
    if u is not None:
        alpha = max(alpha, float(np.max(np.abs(fprime(np.asarray(u))))))
    return alpha


def lax_friedrichs_split(u: Array, f: FluxFunction, fprime_bound: float) -> SplitFluxPair:
    if fprime_bound < 0:
        raise ValueError(f"fprime_bound must be nonnegative, got {fprime_bound}")
    u = np.asarray(u, dtype=np.float64)
    fu = f(u)
    return SplitFluxPair(0.5 * (fu + fprime_bound * u), 0.5 * (fu - fprime_bound * u), float(fprime_bound))


# }}}


# {{{ reconstruction


def _weno5_weights(v0, v1, v2, v3, v4, variant: str):
    beta0 = 13 / 12 * (v0 - 2 * v1 + v2) ** 2 + 0.25 * (v0 - 4 * v1 + 3 * v2) ** 2
    beta1 = 13 / 12 * (v1 - 2 * v2 + v3) ** 2 + 0.25 * (v1 - v3) ** 2
    beta2 = 13 / 12 * (v2 - 2 * v3 + v4) ** 2 + 0.25 * (3 * v2 - 4 * v3 + v4) ** 2

    a0 = D5[0] / (EPS + beta0) ** 2
    a1 = D5[1] / (EPS + beta1) ** 2
    a2 = D5[2] / (EPS + beta2) ** 2
    s = a0 + a1 + a2
    w0, w1, w2 = a0 / s, a1 / s, a2 / s

    if variant == "m":
        w0 = w0 * (D5[0] + D5[0] ** 2 - 3 * D5[0] * w0 + w0**2) / (D5[0] ** 2 + w0 * (1 - 2 * D5[0]))
        w1 = w1 * (D5[1] + D5[1] ** 2 - 3 * D5[1] * w1 + w1**2) / (D5[1] ** 2 + w1 * (1 - 2 * D5[1]))
        w2 = w2 * (D5[2] + D5[2] ** 2 - 3 * D5[2] * w2 + w2**2) / (D5[2] ** 2 + w2 * (1 - 2 * D5[2]))
        s = w0 + w1 + w2
        w0, w1, w2 = w0 / s, w1 / s, w2 / s
    elif variant != "js":
        raise ValueError(f"unknown convection variant: {variant!r}")

    return w0, w1, w2


def _weno5(v0, v1, v2, v3, v4, variant: str):
    w0, w1, w2 = _weno5_weights(v0, v1, v2, v3, v4, variant)
    q0 = (2 * v0 - 7 * v1 + 11 * v2) / 6
    q1 = (-v1 + 5 * v2 + 2 * v3) / 6
    q2 = (2 * v2 + 5 * v3 - v4) / 6
    return w0 * q0 + w1 * q1 + w2 * q2


def weno5_weights(window5, variant: str = "js") -> np.ndarray:
    if len(window5) != 5:
        raise ValueError(f"WENO5 needs 5 values, got {len(window5)}")
    return np.array(_weno5_weights(*window5, variant))


def weno5_interface(window5, variant: str = "js") -> Array:
    """Upwind-biased value at ``x[i+1/2]`` from ``(v[i-2], ..., v[i+2])``."""
    if len(window5) != 5:
        raise ValueError(f"WENO5 needs 5 values, got {len(window5)}")
    return _weno5(*window5, variant)


# }}}


# {{{ right-hand side


def convection_fluxes(u_padded: np.ndarray, f: FluxFunction, variant: str = "js", *,
                      alpha: float | None = None, fprime: FluxFunction | None = None,
                      axis: int = -1) -> np.ndarray:
    """Numerical fluxes at the ``n + 1`` interfaces of a 3-ghost padded field."""
    u = np.moveaxis(np.asarray(u_padded, dtype=np.float64), axis, -1)
    m = u.shape[-1] - 5
    if m < 2:
        raise ValueError("field must carry 3 ghost values on each side")
    if alpha is None:
        if fprime is None:
            raise ValueError("either alpha or fprime is required")
        alpha = max_wave_speed(fprime, float(u.min()), float(u.max()), u)

    split = lax_friedrichs_split(u, f, alpha)
    fp, fm = split.plus, split.minus
    # padded[p] holds f[p - 3]; interface j+1/2 reads f+ at j-2..j+2 and
    # f- mirrored at j+3..j-1
    plus = _weno5(*(fp[..., k : k + m] for k in range(5)), variant)
    minus = _weno5(*(fm[..., 5 - k : 5 - k + m] for k in range(5)), variant)
    return np.moveaxis(plus + minus, -1, axis)


def convection_rhs(u_padded: np.ndarray, dx: float, f: FluxFunction, variant: str = "js", *,
                   alpha: float | None = None, fprime: FluxFunction | None = None,
                   axis: int = -1) -> np.ndarray:
    """Conservative difference ``-(F_{i+1/2} - F_{i-1/2}) / dx``."""
    if not dx > 0:
        raise ValueError(f"dx must be positive, got {dx}")
    F = np.moveaxis(convection_fluxes(u_padded, f, variant, alpha=alpha, fprime=fprime, axis=axis), axis, -1)
    return np.moveaxis(-(F[..., 1:] - F[..., :-1]) / dx, -1, axis)


# }}}
