"""Sixth-order WENO numerical fluxes for the diffusion term ``b(u)_xx``.

Every kernel works on a six-point window ``(b[i-2], ..., b[i+3])`` and
returns the numerical flux at ``x[i+1/2]``. A window may hold scalars or
equally shaped arrays (one entry per interface), so the same code serves
the single-interface API and the vectorized right-hand side.

Three weightings are provided:

* ``lsz``: split positive/negative linear weights with the mapped weights
  of Henrick et al.;
* ``mweno``: split weights with Z-type weights driven by ``|beta_0 - beta_2|``;
* ``cweno-dz``: four candidates including a centered flux so that every
  linear weight is positive, with Z-type weights driven by ``tau6``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

Array = Any

SCHEMES = ("lsz", "mweno", "cweno-dz")

DEFAULT_EPS = {"lsz": 1.0e-15, "mweno": 1.0e-30, "cweno-dz": 1.0e-40}

# three-candidate linear weights (two are negative)
D = np.array([-2 / 15, 19 / 15, -2 / 15])
# split into positive and negative parts, each normalized
GAMMA_PLUS = np.array([1 / 21, 19 / 21, 1 / 21])
GAMMA_MINUS = np.array([4 / 27, 19 / 27, 4 / 27])
SIGMA_PLUS = 14 / 5
SIGMA_MINUS = 9 / 5

# four-candidate linear weights, ordered (left, middle, right, central)
C = np.array([1 / 6, 1 / 3, 1 / 6, 1 / 3])


# {{{ window handling


@dataclass(frozen=True)
class StencilWindow6:
    """Six consecutive point values of ``b(u)`` around one interface."""

    values: tuple[float, float, float, float, float, float]

    def __post_init__(self) -> None:
        if len(self.values) != 6:
            raise ValueError(f"a stencil window needs 6 values, got {len(self.values)}")
        if not all(np.isfinite(v) for v in self.values):
            raise ValueError("stencil window values must be finite")

    @classmethod
    def of(cls, values: Sequence[float]) -> StencilWindow6:
        return cls(tuple(float(v) for v in values))  # type: ignore[arg-type]

    def reversed(self) -> StencilWindow6:
        return StencilWindow6(self.values[::-1])

    def __iter__(self):
        return iter(self.values)


def _unpack(w: StencilWindow6 | Sequence[Array] | Array) -> tuple[Array, ...]:
    if isinstance(w, StencilWindow6):
        return w.values
    if isinstance(w, np.ndarray):
        if w.shape[0] != 6:
            raise ValueError(f"stencil window needs 6 entries along axis 0, got {w.shape[0]}")
        return tuple(w)
    w = tuple(w)
    if len(w) != 6:
        raise ValueError(f"stencil window needs 6 entries, got {len(w)}")
    return w


# }}}


# {{{ candidate fluxes

# coefficient rows over (b[i-2], ..., b[i+3]), evaluated once from exact rationals
_F = Fraction
SUBSTENCIL_COEFFS = (
    (_F(1, 12), _F(-1, 4), _F(-3, 4), _F(11, 12), 0, 0),
    (0, _F(1, 12), _F(-5, 4), _F(5, 4), _F(-1, 12), 0),
    (0, 0, _F(-11, 12), _F(3, 4), _F(1, 4), _F(-1, 12)),
)
CENTRAL_COEFFS = (_F(-3, 40), _F(11, 24), -2, 2, _F(-11, 24), _F(3, 40))
FD_COEFFS = (_F(-1, 90), _F(5, 36), _F(-49, 36), _F(49, 36), _F(-5, 36), _F(1, 90))

# smoothness indicators as sums of weighted squares of linear forms
BETA_FORMS = (
    ((_F(13, 12), (1, -3, 3, -1, 0, 0)), (_F(1, 4), (1, -5, 7, -3, 0, 0))),
    ((_F(13, 12), (0, 1, -3, 3, -1, 0)), (_F(1, 4), (0, 1, -1, -1, 1, 0))),
    ((_F(13, 12), (0, 0, 1, -3, 3, -1)), (_F(1, 4), (0, 0, -3, 7, -5, 1))),
)
BETA_C_FORMS = (
    (_F(4273, 20160), (1, -5, 10, -10, 5, -1)),
    (_F(29, 345600), (5, 11, -70, 94, -47, 7)),
    (_F(1, 3600), (35, -139, 230, -206, 103, -23)),
    (_F(1, 576), (7, -51, 134, -166, 99, -23)),
    (_F(1, 2304), (7, -56, 106, -76, 23, -4)),
    (_F(1, 9216), (65, -353, 690, -602, 221, -21)),
    (_F(1, 9216), (23, -63, -34, 186, -133, 21)),
    (_F(1, 2304), (13, -28, 30, -28, 13, 0)),
    (_F(2, 15), (1, -4, 6, -4, 1, 0)),
    (_F(1, 1152), (1, -12, 22, -12, 1, 0)),
)


def _floats(row):
    return tuple(float(c) for c in row)


_SUB = tuple(_floats(r) for r in SUBSTENCIL_COEFFS)
_CEN = _floats(CENTRAL_COEFFS)
_FD = _floats(FD_COEFFS)
_BETA = tuple(tuple((float(c), _floats(r)) for c, r in forms) for forms in BETA_FORMS)
_BETA_C = tuple((float(c), _floats(r)) for c, r in BETA_C_FORMS)


def _dot(row, b):
    acc = None
    for c, v in zip(row, b):
        if c == 0:
            continue
        term = c * v
        acc = term if acc is None else acc + term
    return acc


def _substencil_fluxes(*b):
    return _dot(_SUB[0], b), _dot(_SUB[1], b), _dot(_SUB[2], b)


def _central_flux(*b):
    return _dot(_CEN, b)


def _linear_fd_flux(*b):
    return _dot(_FD, b)


def substencil_fluxes(w) -> tuple[Array, Array, Array]:
    """Fluxes of the three four-point substencils ``S_0``, ``S_1``, ``S_2``."""
    return _substencil_fluxes(*_unpack(w))


def central_flux(w) -> Array:
    """Flux of the centered polynomial that makes the linear weights positive."""
    return _central_flux(*_unpack(w))


def linear_fd_flux(w) -> Array:
    """Optimal sixth-order flux on the full six-point stencil."""
    return _linear_fd_flux(*_unpack(w))


@dataclass(frozen=True)
class CandidateFluxes:
    left: Array
    middle: Array
    right: Array
    central: Array
    optimal: Array


def candidate_fluxes(w) -> CandidateFluxes:
    b = _unpack(w)
    g0, g1, g2 = _substencil_fluxes(*b)
    return CandidateFluxes(g0, g1, g2, _central_flux(*b), _linear_fd_flux(*b))


# }}}


# {{{ smoothness indicators


def _squares(forms, b):
    acc = None
    for c, row in forms:
        term = c * _dot(row, b) ** 2
        acc = term if acc is None else acc + term
    return acc


def _smoothness_indicators(*b):
    return _squares(_BETA[0], b), _squares(_BETA[1], b), _squares(_BETA[2], b)


def _central_smoothness_indicator(*b):
    return _squares(_BETA_C, b)


def _tau6(beta_l, beta_m, beta_r, beta_c):
    return np.abs(beta_c - (5 * beta_l + 14 * beta_m + 5 * beta_r) / 24)


def smoothness_indicators(w) -> tuple[Array, Array, Array]:
    return _smoothness_indicators(*_unpack(w))


def central_smoothness_indicator(w) -> Array:
    """Smoothness of the full-stencil polynomial, derivatives up to order 4."""
    return _central_smoothness_indicator(*_unpack(w))


@dataclass(frozen=True)
class SmoothnessSet:
    beta_L: Array
    beta_M: Array
    beta_R: Array
    beta_C: Array
    tau6: Array

    @classmethod
    def from_window(cls, w) -> SmoothnessSet:
        b = _unpack(w)
        beta_l, beta_m, beta_r = _smoothness_indicators(*b)
        beta_c = _central_smoothness_indicator(*b)
        return cls(beta_l, beta_m, beta_r, beta_c, _tau6(beta_l, beta_m, beta_r, beta_c))

    @classmethod
    def from_betas(cls, beta_L, beta_M, beta_R, beta_C) -> SmoothnessSet:
        return cls(beta_L, beta_M, beta_R, beta_C, _tau6(beta_L, beta_M, beta_R, beta_C))


def tau6(s: SmoothnessSet) -> Array:
    """Global indicator ``|beta_C - (5 beta_L + 14 beta_M + 5 beta_R) / 24|``."""
    return _tau6(s.beta_L, s.beta_M, s.beta_R, s.beta_C)


# }}}


# {{{ nonlinear weights


@dataclass(frozen=True)
class WeightSet:
    weights: np.ndarray
    scheme: str

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, k):
        return self.weights[k]


def _check_eps(eps: float) -> None:
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")


def _split_combine(ap0, ap1, ap2, am0, am1, am2):
    sp = ap0 + ap1 + ap2
    sm = am0 + am1 + am2
    return (
        SIGMA_PLUS * ap0 / sp - SIGMA_MINUS * am0 / sm,
        SIGMA_PLUS * ap1 / sp - SIGMA_MINUS * am1 / sm,
        SIGMA_PLUS * ap2 / sp - SIGMA_MINUS * am2 / sm,
    )


def henrick_map(omega, d):
    """Mapping that keeps ``d`` fixed and flattens the weights around it."""
    return omega * (d + d * d - 3 * d * omega + omega * omega) / (d * d + omega * (1 - 2 * d))


def _weights_lsz(beta0, beta1, beta2, eps):
    # each gamma / (beta + eps)^2; the splitting renormalizes each family
    r0 = 1 / (beta0 + eps) ** 2
    r1 = 1 / (beta1 + eps) ** 2
    r2 = 1 / (beta2 + eps) ** 2
    w0, w1, w2 = _split_combine(
        GAMMA_PLUS[0] * r0, GAMMA_PLUS[1] * r1, GAMMA_PLUS[2] * r2,
        GAMMA_MINUS[0] * r0, GAMMA_MINUS[1] * r1, GAMMA_MINUS[2] * r2,
    )
    a0 = henrick_map(w0, D[0])
    a1 = henrick_map(w1, D[1])
    a2 = henrick_map(w2, D[2])
    s = a0 + a1 + a2
    return a0 / s, a1 / s, a2 / s


def _weights_mweno(beta0, beta1, beta2, eps):
    tau = np.abs(beta0 - beta2)
    z0 = 1 + (tau / (beta0 + eps)) ** 2
    z1 = 1 + (tau / (beta1 + eps)) ** 2
    z2 = 1 + (tau / (beta2 + eps)) ** 2
    return _split_combine(
        GAMMA_PLUS[0] * z0, GAMMA_PLUS[1] * z1, GAMMA_PLUS[2] * z2,
        GAMMA_MINUS[0] * z0, GAMMA_MINUS[1] * z1, GAMMA_MINUS[2] * z2,
    )


def _weights_cweno_dz(beta_l, beta_m, beta_r, beta_c, t6, eps, p):
    a_l = C[0] * (1 + (t6 / (beta_l + eps)) ** p)
    a_m = C[1] * (1 + (t6 / (beta_m + eps)) ** p)
    a_r = C[2] * (1 + (t6 / (beta_r + eps)) ** p)
    a_c = C[3] * (1 + (t6 / (beta_c + eps)) ** p)
    s = a_l + a_m + a_r + a_c
    return a_l / s, a_m / s, a_r / s, a_c / s


def weights_lsz(betas, eps: float = DEFAULT_EPS["lsz"]) -> WeightSet:
    _check_eps(eps)
    return WeightSet(np.array(_weights_lsz(*betas, eps)), "lsz")


def weights_mweno(betas, eps: float = DEFAULT_EPS["mweno"]) -> WeightSet:
    _check_eps(eps)
    return WeightSet(np.array(_weights_mweno(*betas, eps)), "mweno")


def weights_cweno_dz(s: SmoothnessSet, eps: float = DEFAULT_EPS["cweno-dz"], p: int = 1) -> WeightSet:
    _check_eps(eps)
    if p < 1:
        raise ValueError(f"p must be a positive integer, got {p}")
    w = _weights_cweno_dz(s.beta_L, s.beta_M, s.beta_R, s.beta_C, s.tau6, eps, p)
    return WeightSet(np.array(w), "cweno-dz")


# }}}


# {{{ fluxes and right-hand side


def _flux(b, scheme: str, eps: float, p: int):
    g0, g1, g2 = _substencil_fluxes(*b)
    beta0, beta1, beta2 = _smoothness_indicators(*b)

    if scheme == "lsz":
        w0, w1, w2 = _weights_lsz(beta0, beta1, beta2, eps)
        return w0 * g0 + w1 * g1 + w2 * g2
    if scheme == "mweno":
        w0, w1, w2 = _weights_mweno(beta0, beta1, beta2, eps)
        return w0 * g0 + w1 * g1 + w2 * g2
    if scheme == "cweno-dz":
        beta_c = _central_smoothness_indicator(*b)
        t6 = _tau6(beta0, beta1, beta2, beta_c)
        w0, w1, w2, wc = _weights_cweno_dz(beta0, beta1, beta2, beta_c, t6, eps, p)
        return w0 * g0 + w1 * g1 + w2 * g2 + wc * _central_flux(*b)

    raise ValueError(f"unknown diffusion scheme: {scheme!r}")


def diffusion_flux(w, cfg) -> Array:
    """Nonlinear numerical flux ``g_{i+1/2}`` for the scheme selected in *cfg*."""
    _check_eps(cfg.diffusion_eps)
    return _flux(_unpack(w), cfg.diffusion, cfg.diffusion_eps, cfg.p)


def interface_fluxes(b_padded: np.ndarray, cfg, axis: int = -1) -> np.ndarray:
    """Fluxes at every interface of a field padded with 3 ghost values.

    For ``n`` interior values along *axis* this returns ``n + 1`` fluxes,
    at ``x[-1/2], ..., x[n-1/2]``.
    """
    b = np.moveaxis(np.asarray(b_padded, dtype=np.float64), axis, -1)
    m = b.shape[-1] - 5
    if m < 2:
        raise ValueError("field must carry 3 ghost values on each side")
    window = tuple(b[..., k : k + m] for k in range(6))
    # overflow in an unstable run surfaces as a non-finite state downstream
    with np.errstate(over="ignore", invalid="ignore"):
        g = _flux(window, cfg.diffusion, cfg.diffusion_eps, cfg.p)
    return np.moveaxis(g, -1, axis)


def diffusion_rhs(b_padded: np.ndarray, dx: float, cfg, axis: int = -1) -> np.ndarray:
    """Conservative flux difference ``(g_{i+1/2} - g_{i-1/2}) / dx^2``."""
    if not dx > 0:
        raise ValueError(f"dx must be positive, got {dx}")
    _check_eps(cfg.diffusion_eps)
    g = np.moveaxis(interface_fluxes(b_padded, cfg, axis=axis), axis, -1)
    return np.moveaxis((g[..., 1:] - g[..., :-1]) / dx**2, -1, axis)


# }}}
