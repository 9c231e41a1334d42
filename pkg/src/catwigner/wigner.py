"""Closed-form Wigner function of finite coherent superpositions.

For ``|psi> = sum_j c_j |g_j>`` with squared norm ``N``::

    W(a) = (2/pi) / N * Re sum_{j,k} conj(c_k) c_j T(g_k, g_j, a)
    T(g_k, g_j, a) = exp(-|g_j|^2/2 - |g_k|^2/2 + conj(g_k) g_j
                         + 2 (a - g_j)(conj(g_k) - conj(a)))

The phase-space integral over the displacement variable is done analytically,
so evaluation never discretizes it. With the 2/pi prefactor a coherent state
gives ``(2/pi) exp(-2|a - g|^2)`` and every Wigner function integrates to 1.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ZeroNormState
from .state import ZERO_NORM_THRESHOLD, SuperpositionState, norm_squared

WIGNER_PREFACTOR = 2.0 / np.pi


@dataclass(frozen=True)
class PhasePoint:
    x: float
    y: float

    def __post_init__(self):
        if not (np.isfinite(self.x) and np.isfinite(self.y)):
            raise ValueError("phase point must be finite")

    @property
    def alpha(self) -> complex:
        return complex(self.x, self.y)


def _as_alpha(at) -> complex:
    return at.alpha if isinstance(at, PhasePoint) else complex(at)


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self):
        bounds = (self.x_min, self.x_max, self.y_min, self.y_max)
        if not all(np.isfinite(v) for v in bounds):
            raise ValueError("grid bounds must be finite")
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("grid needs x_min < x_max and y_min < y_max")
        for name in ("nx", "ny"):
            n = getattr(self, name)
            if isinstance(n, bool) or int(n) != n or n < 2:
                raise ValueError(f"{name} must be an integer >= 2, got {n!r}")
            object.__setattr__(self, name, int(n))

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / (self.ny - 1)

    @property
    def xs(self) -> np.ndarray:
        return _axis(self.x_min, self.x_max, self.nx)

    @property
    def ys(self) -> np.ndarray:
        return _axis(self.y_min, self.y_max, self.ny)

    def corners(self) -> list[complex]:
        return [complex(x, y) for x in (self.x_min, self.x_max) for y in (self.y_min, self.y_max)]


def _axis(lo: float, hi: float, n: int) -> np.ndarray:
    # Weighted form hits symmetric points (e.g. the origin) exactly.
    c = np.arange(n, dtype=float)
    return (lo * (n - 1 - c) + hi * c) / (n - 1)


DEFAULT_GRID = GridSpec(-7.0, 7.0, -7.0, 7.0, 281, 281)


@dataclass(frozen=True, eq=False)
class WignerGrid:
    """Sampled W; ``values[r, c]`` is W at ``(spec.xs[c], spec.ys[r])``."""

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.spec.ny, self.spec.nx):
            raise ValueError(
                f"values shape {values.shape} does not match grid ({self.spec.ny}, {self.spec.nx})"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("Wigner values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


def cross_term(gamma_k: complex, gamma_j: complex, at) -> complex:
    a = _as_alpha(at)
    return complex(_cross_term(complex(gamma_k), complex(gamma_j), np.asarray(a)))


def _cross_term(gk: complex, gj: complex, alpha: np.ndarray) -> np.ndarray:
    # One exponent sum per pair, one exp call.
    const = -0.5 * abs(gj) ** 2 - 0.5 * abs(gk) ** 2 + gk.conjugate() * gj
    return np.exp(const + 2.0 * (alpha - gj) * (gk.conjugate() - np.conj(alpha)))


def pre_normalization_sum(s: SuperpositionState, alpha: np.ndarray) -> np.ndarray:
    """Complex double sum ``sum_{j,k} conj(c_k) c_j T(g_k, g_j, alpha)``.

    Mathematically real; the imaginary part is left in so callers can audit it.
    """
    alpha = np.asarray(alpha, dtype=complex)
    total = np.zeros(alpha.shape, dtype=complex)
    for tk in s.terms:
        for tj in s.terms:
            total += (tk.coeff.conjugate() * tj.coeff) * _cross_term(tk.amp, tj.amp, alpha)
    return total


def imag_residue(s: SuperpositionState, alpha: np.ndarray) -> np.ndarray:
    """``|Im S| / (|Re S| + 1)`` of the pre-normalization sum."""
    total = pre_normalization_sum(s, alpha)
    return np.abs(total.imag) / (np.abs(total.real) + 1.0)


def _checked_norm(s: SuperpositionState) -> float:
    n = norm_squared(s)
    if n <= ZERO_NORM_THRESHOLD:
        raise ZeroNormState(
            f"state has squared norm {n:.3g}; its components cancel "
            "(e.g. a cat with zero amplitude shift, or two identical cats subtracted)"
        )
    return n


def _values(s: SuperpositionState, alpha: np.ndarray, norm: float) -> np.ndarray:
    return WIGNER_PREFACTOR / norm * pre_normalization_sum(s, alpha).real


def wigner_point(s: SuperpositionState, at) -> float:
    norm = _checked_norm(s)
    return float(_values(s, np.asarray(_as_alpha(at)), norm))


def wigner_grid(
    s: SuperpositionState, spec: GridSpec = DEFAULT_GRID, workers: int | None = None
) -> WignerGrid:
    """Evaluate W on every grid point.

    Rows are computed independently with identical code whether or not
    ``workers`` is set, so the result does not depend on parallelism.
    """
    norm = _checked_norm(s)
    xs, ys = spec.xs, spec.ys

    def row(y: float) -> np.ndarray:
        return _values(s, xs + 1j * y, norm)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, ys))
    else:
        rows = [row(y) for y in ys]
    return WignerGrid(spec, np.vstack(rows))


def integrate_grid(g: WignerGrid) -> float:
    """Trapezoidal estimate of the integral of W over the grid rectangle."""
    inner = np.trapezoid(g.values, dx=g.spec.dx, axis=1)
    return float(np.trapezoid(inner, dx=g.spec.dy))
