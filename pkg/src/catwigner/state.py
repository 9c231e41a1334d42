"""Coherent-state superpositions and their exact algebra.

A state is an ordered list of weighted coherent components ``c_j |gamma_j>``.
Coefficients are kept unnormalized so that the zero vector (for example a cat
built with no amplitude shift) stays representable; normalization happens in
the consumers that need it.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

ZERO_NORM_THRESHOLD = 1e-20
MERGE_LABEL_TOL = 1e-12
DROP_COEFF_TOL = 1e-14


def _check_finite(name: str, value: complex) -> complex:
    value = complex(value)
    if not cmath.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class CoherentTerm:
    """One weighted coherent component ``coeff * |amp>``."""

    coeff: complex
    amp: complex

    def __post_init__(self):
        object.__setattr__(self, "coeff", _check_finite("coeff", self.coeff))
        object.__setattr__(self, "amp", _check_finite("amp", self.amp))


@dataclass(frozen=True)
class SuperpositionState:
    terms: tuple[CoherentTerm, ...]

    def __init__(self, terms: Iterable[CoherentTerm | tuple[complex, complex]] = ()):
        normalized = tuple(
            t if isinstance(t, CoherentTerm) else CoherentTerm(*t) for t in terms
        )
        object.__setattr__(self, "terms", normalized)

    @classmethod
    def coherent(cls, gamma: complex, coeff: complex = 1.0) -> SuperpositionState:
        return cls([CoherentTerm(coeff, gamma)])

    @property
    def coeffs(self) -> np.ndarray:
        return np.array([t.coeff for t in self.terms], dtype=complex)

    @property
    def amps(self) -> np.ndarray:
        return np.array([t.amp for t in self.terms], dtype=complex)

    def __len__(self) -> int:
        return len(self.terms)

    def scaled(self, factor: complex) -> SuperpositionState:
        return SuperpositionState(CoherentTerm(factor * t.coeff, t.amp) for t in self.terms)

    def to_dict(self) -> dict:
        return {
            "terms": [
                {
                    "coeff": {"re": t.coeff.real, "im": t.coeff.imag},
                    "amp": {"re": t.amp.real, "im": t.amp.imag},
                }
                for t in self.terms
            ]
        }


@dataclass(frozen=True)
class CatParams:
    """Laser amplitude ``alpha_L`` and the shift ``delta_alpha`` it picks up."""

    alpha_L: complex
    delta_alpha: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha_L", _check_finite("alpha_L", self.alpha_L))
        object.__setattr__(
            self, "delta_alpha", _check_finite("delta_alpha", self.delta_alpha)
        )


def overlap(bra: complex, ket: complex) -> complex:
    """Coherent-state overlap ``<bra|ket>``.

    exp(-|ket|^2/2 - |bra|^2/2 + bra* ket), evaluated as
    exp(-|ket - bra|^2/2 + i Im(bra* ket)) so equal labels give exactly 1.
    """
    bra, ket = complex(bra), complex(ket)
    return cmath.exp(complex(-0.5 * abs(ket - bra) ** 2, (bra.conjugate() * ket).imag))


def overlap_matrix(bras: np.ndarray, kets: np.ndarray) -> np.ndarray:
    """``M[j, k] = <bras[j]|kets[k]>`` for arrays of coherent labels."""
    bras = np.asarray(bras, dtype=complex)[:, None]
    kets = np.asarray(kets, dtype=complex)[None, :]
    return np.exp(-0.5 * np.abs(kets - bras) ** 2 + 1j * (np.conj(bras) * kets).imag)


def displace_label(shift: complex, label: complex) -> tuple[complex, complex]:
    """Act with D(shift) on |label>; returns the phase and the new label.

    D(s)|b> = exp((s b* - s* b)/2) |s + b>. The exponent is purely imaginary,
    so it is evaluated as a real angle to keep the phase on the unit circle.
    """
    shift, label = complex(shift), complex(label)
    angle = (shift * label.conjugate()).imag
    return cmath.exp(1j * angle), shift + label


def displace_state(s: SuperpositionState, shift: complex) -> SuperpositionState:
    out = []
    for t in s.terms:
        phase, new_amp = displace_label(shift, t.amp)
        out.append(CoherentTerm(phase * t.coeff, new_amp))
    return SuperpositionState(out)


def build_cat(params: CatParams) -> SuperpositionState:
    """``|aL + da> - zeta |aL>`` with ``zeta = <aL|aL + da>``."""
    shifted = params.alpha_L + params.delta_alpha
    zeta = overlap(params.alpha_L, shifted)
    return SuperpositionState([CoherentTerm(1.0, shifted), CoherentTerm(-zeta, params.alpha_L)])


def combine(
    cat1: SuperpositionState,
    cat2: SuperpositionState,
    mode: Literal["difference", "sum"],
) -> SuperpositionState:
    if mode == "difference":
        second = cat2.scaled(-1.0)
    elif mode == "sum":
        second = cat2
    else:
        raise ValueError(f"mode must be 'difference' or 'sum', got {mode!r}")
    return SuperpositionState(cat1.terms + second.terms)


def cat_pair(
    a0: complex,
    a00: complex,
    da0: complex,
    da00: complex,
    mode: Literal["difference", "sum"],
) -> SuperpositionState:
    """Combine the cats built on ``a0`` (shift ``da0``) and ``a00`` (shift ``da00``)."""
    return combine(build_cat(CatParams(a0, da0)), build_cat(CatParams(a00, da00)), mode)


def inner_product(a: SuperpositionState, b: SuperpositionState) -> complex:
    if not a.terms or not b.terms:
        return 0j
    gram = overlap_matrix(a.amps, b.amps)
    return complex(np.conj(a.coeffs) @ gram @ b.coeffs)


def norm_squared(s: SuperpositionState) -> float:
    # Gram form is positive semidefinite; a negative real part is rounding only.
    return max(inner_product(s, s).real, 0.0)


def merge_terms(s: SuperpositionState, label_tol: float = MERGE_LABEL_TOL) -> SuperpositionState:
    """Merge terms with coincident labels and drop vanishing coefficients."""
    if label_tol < 0:
        raise ValueError("label_tol must be non-negative")
    labels: list[complex] = []
    coeffs: list[complex] = []
    for t in s.terms:
        for i, lab in enumerate(labels):
            if abs(t.amp - lab) < label_tol:
                coeffs[i] += t.coeff
                break
        else:
            labels.append(t.amp)
            coeffs.append(t.coeff)
    return SuperpositionState(
        CoherentTerm(c, g) for c, g in zip(coeffs, labels) if abs(c) >= DROP_COEFF_TOL
    )


def is_degenerate(s: SuperpositionState) -> bool:
    return norm_squared(s) <= ZERO_NORM_THRESHOLD


# --- JSON state schema -----------------------------------------------------


def parse_amplitude(value) -> complex:
    """Accept a bare number or ``{"re": .., "im": ..}``."""
    if isinstance(value, bool):
        raise ValueError(f"not an amplitude: {value!r}")
    if isinstance(value, (int, float)):
        return _check_finite("amplitude", value)
    if isinstance(value, dict):
        unknown = set(value) - {"re", "im"}
        if unknown:
            raise ValueError(f"unknown amplitude keys: {sorted(unknown)}")
        re, im = value.get("re", 0.0), value.get("im", 0.0)
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
            raise ValueError(f"amplitude components must be numbers: {value!r}")
        return _check_finite("amplitude", complex(re, im))
    raise ValueError(f"not an amplitude: {value!r}")


_PAIR_KEYS = ("a0", "a00", "da0", "da00")


def state_from_json(data) -> SuperpositionState:
    """Build a state from one of the accepted JSON forms.

    ``{"terms": [{"coeff": .., "amp": ..}, ...]}``, ``{"cat": {"aL": .., "da": ..}}``,
    ``{"cat_diff": {"a0", "a00", "da0", "da00"}}`` or ``{"cat_sum": {...}}``.
    """
    if not isinstance(data, dict) or len(data) != 1:
        raise ValueError("state JSON must be an object with exactly one key")
    (kind, body), = data.items()
    if kind == "terms":
        if not isinstance(body, list) or not body:
            raise ValueError("'terms' must be a non-empty list")
        terms = []
        for item in body:
            if not isinstance(item, dict) or set(item) != {"coeff", "amp"}:
                raise ValueError(f"malformed term: {item!r}")
            terms.append(CoherentTerm(parse_amplitude(item["coeff"]), parse_amplitude(item["amp"])))
        return SuperpositionState(terms)
    if kind == "cat":
        if not isinstance(body, dict) or set(body) != {"aL", "da"}:
            raise ValueError("'cat' needs exactly the keys aL, da")
        return build_cat(CatParams(parse_amplitude(body["aL"]), parse_amplitude(body["da"])))
    if kind in ("cat_diff", "cat_sum"):
        if not isinstance(body, dict) or set(body) != set(_PAIR_KEYS):
            raise ValueError(f"'{kind}' needs exactly the keys {', '.join(_PAIR_KEYS)}")
        vals = [parse_amplitude(body[k]) for k in _PAIR_KEYS]
        return cat_pair(*vals, mode="difference" if kind == "cat_diff" else "sum")
    raise ValueError(f"unknown state form {kind!r}")

