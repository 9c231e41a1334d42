"""Truncated number-basis oracle for the Wigner function.

This path shares no code with the closed form. The Wigner function is taken
as the displaced parity

    W(a) = (2/pi) / N * sum_n (-1)^n |<n| D(-a) |psi>|^2

where ``D(-a)`` is applied exactly to each coherent label, so truncation only
ever touches plain coherent-state expansions and never a displacement matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import TruncationTooSmall, ZeroNormState
from .state import ZERO_NORM_THRESHOLD, SuperpositionState, displace_label, norm_squared

TAIL_WINDOW = 4
TAIL_MASS_TOL = 1e-10
MIN_DIM = 32
MAX_DIM = 4096

_PARITY_PREFACTOR = 2.0 / math.pi


@dataclass(frozen=True, eq=False)
class FockVector:
    """``coeffs[n] = <n|psi>`` for ``n < dim``."""

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex)
        if coeffs.ndim != 1 or coeffs.size < 1:
            raise ValueError("FockVector needs a non-empty 1-D coefficient array")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("FockVector coefficients must be finite")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def dim(self) -> int:
        return self.coeffs.size

    @classmethod
    def number_state(cls, n: int, dim: int) -> FockVector:
        c = np.zeros(dim, dtype=complex)
        c[n] = 1.0
        return cls(c)

    def norm_squared(self) -> float:
        return float(np.vdot(self.coeffs, self.coeffs).real)

    def inner(self, other: FockVector) -> complex:
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return complex(np.vdot(self.coeffs, other.coeffs))


def _coherent_rows(betas: np.ndarray, dim: int) -> np.ndarray:
    """Rows of coherent-state coefficients, one row per label in ``betas``.

    Runs the recurrence c_n = c_{n-1} * beta / sqrt(n) in log-magnitude form,
    which cannot underflow at large |beta| and never forms a factorial.
    """
    betas = np.asarray(betas, dtype=complex).reshape(-1)
    n = np.arange(dim)
    log_sqrt_fact = np.concatenate(([0.0], np.cumsum(0.5 * np.log(np.arange(1, dim)))))
    r = np.abs(betas)[:, None]
    theta = np.angle(betas)[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        n_log_r = np.where(n == 0, 0.0, n * np.log(r))
    log_mag = -0.5 * r**2 + n_log_r - log_sqrt_fact
    return np.exp(log_mag) * np.exp(1j * n * theta)


def _tail_ok(rows: np.ndarray) -> np.ndarray:
    mass = np.abs(rows) ** 2
    dim = rows.shape[1]
    tail = mass[:, max(dim - TAIL_WINDOW, 1):].sum(axis=1)
    missing = 1.0 - mass.sum(axis=1)
    return (tail < TAIL_MASS_TOL) & (missing < TAIL_MASS_TOL)


def coherent_to_fock(gamma: complex, dim: int) -> FockVector:
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rows = _coherent_rows(np.array([gamma]), dim)
    if not _tail_ok(rows)[0]:
        raise TruncationTooSmall(
            f"dim={dim} too small for coherent amplitude |{gamma}| = {abs(gamma):.3g}"
        )
    return FockVector(rows[0])


def state_to_fock(s: SuperpositionState, dim: int) -> FockVector:
    total = np.zeros(dim, dtype=complex)
    for t in s.terms:
        total += t.coeff * coherent_to_fock(t.amp, dim).coeffs
    return FockVector(total)


def parity(f: FockVector) -> float:
    """``sum_n (-1)^n |c_n|^2``."""
    signs = np.where(np.arange(f.dim) % 2 == 0, 1.0, -1.0)
    return float(signs @ (np.abs(f.coeffs) ** 2))


def oracle_wigner_point(f: FockVector, at, s: SuperpositionState | None = None) -> float:
    """Displaced-parity Wigner value at ``at``.

    With ``s`` given, ``f`` supplies the truncation and ``D(-a)|s>`` is built
    term by term. Without ``s`` only the origin is reachable, where the value is
    the parity of ``f`` itself.
    """
    alpha = complex(at.x, at.y) if hasattr(at, "x") else complex(at)
    if f.norm_squared() <= TAIL_MASS_TOL:
        raise ZeroNormState("Fock vector has (numerically) zero norm")
    if s is None:
        if alpha != 0:
            raise ValueError("a bare FockVector can only be evaluated at the origin")
        return _PARITY_PREFACTOR * parity(f) / f.norm_squared()
    norm = norm_squared(s)
    if norm <= ZERO_NORM_THRESHOLD:
        raise ZeroNormState(f"state has squared norm {norm:.3g}")
    shifted = np.zeros(f.dim, dtype=complex)
    for t in s.terms:
        phase, label = displace_label(-alpha, t.amp)
        shifted += phase * t.coeff * coherent_to_fock(label, f.dim).coeffs
    return _PARITY_PREFACTOR * parity(FockVector(shifted)) / norm


def truncation_dim(s: SuperpositionState, spec) -> int:
    """Basis size adequate for every displaced expansion on the grid.

    The largest displaced amplitude sits at a grid corner, and the truncation
    tail grows with amplitude, so certifying the worst corner certifies all.
    """
    corners = spec.corners()
    mu = max((abs(t.amp - c) for t in s.terms for c in corners), default=0.0)
    dim = max(MIN_DIM, math.ceil(mu**2 + 10 * mu + 20))
    while not _tail_ok(_coherent_rows(np.array([mu]), dim))[0]:
        dim *= 2
        if dim > MAX_DIM:
            raise TruncationTooSmall(f"no dimension <= {MAX_DIM} covers amplitude {mu:.3g}")
    return dim


def oracle_wigner_grid(s: SuperpositionState, spec, dim: int | None = None) -> np.ndarray:
    """Displaced-parity values on a grid, shape ``(ny, nx)``."""
    norm = norm_squared(s)
    if norm <= ZERO_NORM_THRESHOLD:
        raise ZeroNormState(f"state has squared norm {norm:.3g}")
    if dim is None:
        dim = truncation_dim(s, spec)
    xs = np.asarray(spec.xs)
    ys = np.asarray(spec.ys)
    alphas = (xs[None, :] + 1j * ys[:, None]).reshape(-1)
    signs = np.where(np.arange(dim) % 2 == 0, 1.0, -1.0)
    out = np.empty(alphas.size)
    chunk = max(1, 2_000_000 // dim)
    for start in range(0, alphas.size, chunk):
        a = alphas[start:start + chunk]
        shifted = np.zeros((a.size, dim), dtype=complex)
        for t in s.terms:
            # D(-a)|g> = exp(i Im(-a conj(g))) |g - a>
            phase = np.exp(1j * (-a * np.conj(t.amp)).imag)
            shifted += (phase * t.coeff)[:, None] * _coherent_rows(t.amp - a, dim)
        out[start:start + chunk] = _PARITY_PREFACTOR * ((np.abs(shifted) ** 2) @ signs) / norm
    return out.reshape(spec.ny, spec.nx)
