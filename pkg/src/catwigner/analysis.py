"""Sensitivity sweeps, state/Wigner distances and figure presets."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import GridMismatch, UnknownPanel, ZeroNormState
from .fock import oracle_wigner_grid, state_to_fock, truncation_dim
from .state import (
    ZERO_NORM_THRESHOLD,
    SuperpositionState,
    cat_pair,
    inner_product,
    norm_squared,
)
from .wigner import DEFAULT_GRID, GridSpec, WignerGrid, wigner_grid

Mode = Literal["difference", "sum"]

# Fixed amplitudes of the two reproduced figures and the varied shift per panel.
FIGURES: dict[int, dict] = {
    3: {
        "mode": "difference",
        "fixed": {"a0": 2.0, "a00": 2.3, "da0": -1.0},
        "swept": "da00",
        "panels": {"a": -1.2, "b": -1.3, "c": -1.4, "d": -1.5},
    },
    4: {
        "mode": "sum",
        "fixed": {"a0": 4.0, "a00": 2.0, "da00": -1.5},
        "swept": "da0",
        "panels": {"a": 0.0, "b": -0.5, "c": -1.0, "d": -2.0, "e": -2.5, "f": -3.0},
    },
}

FAMILIES = {"fig3_difference": 3, "fig4_sum": 4}
SWEPT_KEYS = {"delta_alpha_0": "da0", "delta_alpha_00": "da00"}
METRICS = ("fidelity_to_reference", "l2_adjacent", "l2_to_reference")


def figure_params(figure: int, panel: str) -> tuple[dict[str, float], Mode]:
    """Cat-pair parameters ``{a0, a00, da0, da00}`` and combination mode of a panel."""
    try:
        fig = FIGURES[int(figure)]
        value = fig["panels"][str(panel).lower()]
    except (KeyError, ValueError, TypeError):
        raise UnknownPanel(f"no panel {panel!r} in figure {figure!r}") from None
    params = dict(fig["fixed"])
    params[fig["swept"]] = value
    return params, fig["mode"]


def figure_preset(figure: int, panel: str) -> tuple[SuperpositionState, GridSpec]:
    params, mode = figure_params(figure, panel)
    return cat_pair(params["a0"], params["a00"], params["da0"], params["da00"], mode), DEFAULT_GRID


def all_panels() -> list[tuple[int, str]]:
    return [(fig, p) for fig, cfg in FIGURES.items() for p in cfg["panels"]]


def state_fidelity(a: SuperpositionState, b: SuperpositionState) -> float:
    na, nb = norm_squared(a), norm_squared(b)
    if na <= ZERO_NORM_THRESHOLD or nb <= ZERO_NORM_THRESHOLD:
        raise ZeroNormState("fidelity is undefined for a zero-norm state")
    return abs(inner_product(a, b)) ** 2 / (na * nb)


def _trapezoid_2d(values: np.ndarray, spec: GridSpec) -> float:
    return float(np.trapezoid(np.trapezoid(values, dx=spec.dx, axis=1), dx=spec.dy))


def wigner_l2_distance(g1: WignerGrid, g2: WignerGrid) -> float:
    if g1.spec != g2.spec:
        raise GridMismatch(f"grids differ: {g1.spec} vs {g2.spec}")
    return math.sqrt(max(_trapezoid_2d((g1.values - g2.values) ** 2, g1.spec), 0.0))


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter sweep over a cat-pair family.

    ``fixed`` holds the cat-pair amplitudes (``a0``, ``a00``, ``da0``, ``da00``);
    for the figure families it is filled in from the figure captions and the
    swept key is overwritten at every point. ``reference`` defaults to the
    sweep midpoint.
    """

    family: Literal["fig3_difference", "fig4_sum", "custom"]
    swept: Literal["delta_alpha_0", "delta_alpha_00"]
    start: float
    stop: float
    steps: int
    metric: Literal["fidelity_to_reference", "l2_adjacent", "l2_to_reference"] = "fidelity_to_reference"
    reference: float | None = None
    fixed: dict = field(default_factory=dict)
    mode: Mode | None = None

    def __post_init__(self):
        if self.family in FAMILIES:
            fig = FIGURES[FAMILIES[self.family]]
            merged = dict(fig["fixed"])
            merged.update(self.fixed)
            object.__setattr__(self, "fixed", merged)
            object.__setattr__(self, "mode", self.mode or fig["mode"])
        elif self.family == "custom":
            if self.mode not in ("difference", "sum"):
                raise ValueError("custom sweeps need mode 'difference' or 'sum'")
        else:
            raise ValueError(f"unknown family {self.family!r}")
        if self.swept not in SWEPT_KEYS:
            raise ValueError(f"swept must be one of {sorted(SWEPT_KEYS)}")
        missing = {"a0", "a00", "da0", "da00"} - {SWEPT_KEYS[self.swept]} - set(self.fixed)
        if missing:
            raise ValueError(f"missing fixed parameters: {sorted(missing)}")
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}")
        if isinstance(self.steps, bool) or int(self.steps) != self.steps or self.steps < 2:
            raise ValueError("steps must be an integer >= 2")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)) or self.start == self.stop:
            raise ValueError("sweep needs finite, distinct start and stop")
        if self.reference is not None and not math.isfinite(self.reference):
            raise ValueError("reference must be finite")

    @property
    def reference_value(self) -> float:
        return 0.5 * (self.start + self.stop) if self.reference is None else self.reference

    def params(self) -> list[float]:
        return np.linspace(self.start, self.stop, int(self.steps)).tolist()

    def state_at(self, value: float) -> SuperpositionState:
        p = dict(self.fixed)
        p[SWEPT_KEYS[self.swept]] = value
        return cat_pair(p["a0"], p["a00"], p["da0"], p["da00"], self.mode)


@dataclass
class SweepResult:
    spec: SweepSpec
    params: list[float]
    values: list[float]
    skipped: list[float]


def _fock_fidelity(a: SuperpositionState, b: SuperpositionState, dim: int) -> float:
    fa, fb = state_to_fock(a, dim), state_to_fock(b, dim)
    return abs(fa.inner(fb)) ** 2 / (fa.norm_squared() * fb.norm_squared())


def run_sweep(
    spec: SweepSpec,
    grid: GridSpec = DEFAULT_GRID,
    *,
    backend: Literal["closed", "oracle"] = "closed",
    workers: int | None = None,
) -> SweepResult:
    """Evaluate ``spec.metric`` along the sweep.

    Zero-norm points are left out of ``params``/``values`` and listed in
    ``skipped``. ``backend="oracle"`` recomputes everything through the Fock
    basis instead of the closed form, for cross-checking.
    """
    if backend not in ("closed", "oracle"):
        raise ValueError(f"unknown backend {backend!r}")
    all_params = spec.params()
    states = [spec.state_at(p) for p in all_params]
    keep = [norm_squared(s) > ZERO_NORM_THRESHOLD for s in states]
    params = [p for p, k in zip(all_params, keep) if k]
    kept = [s for s, k in zip(states, keep) if k]
    skipped = [p for p, k in zip(all_params, keep) if not k]

    needs_reference = spec.metric != "l2_adjacent"
    reference = spec.state_at(spec.reference_value) if needs_reference else None
    if reference is not None and norm_squared(reference) <= ZERO_NORM_THRESHOLD:
        raise ZeroNormState(f"reference state at {spec.reference_value} has zero norm")

    def pmap(fn, items):
        if workers and workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                return list(pool.map(fn, items))
        return [fn(x) for x in items]

    if spec.metric == "fidelity_to_reference":
        if backend == "closed":
            values = pmap(lambda s: state_fidelity(s, reference), kept)
        else:
            dim = max(truncation_dim(s, grid) for s in kept + [reference])
            values = pmap(lambda s: _fock_fidelity(s, reference, dim), kept)
        return SweepResult(spec, params, [float(v) for v in values], skipped)

    if backend == "closed":
        def grid_of(s):
            return wigner_grid(s, grid)
    else:
        def grid_of(s):
            return WignerGrid(grid, oracle_wigner_grid(s, grid))

    grids = pmap(grid_of, kept)
    if spec.metric == "l2_to_reference":
        ref_grid = grid_of(reference)
        values = [wigner_l2_distance(g, ref_grid) for g in grids]
    else:
        # distance to the previous retained point; the first point pairs with the second
        values = [
            wigner_l2_distance(grids[i], grids[i - 1 if i > 0 else 1]) if len(grids) > 1 else 0.0
            for i in range(len(grids))
        ]
    return SweepResult(spec, params, values, skipped)


@dataclass(frozen=True)
class Deviation:
    label: str
    max_deviation: float


VERIFY_SCOPES = {"quick": 41, "full": 281}
VERIFY_TOL = 1e-8


def verify_presets(scope: str = "quick") -> list[Deviation]:
    """Closed form against the Fock oracle for every figure panel."""
    try:
        n = VERIFY_SCOPES[scope]
    except KeyError:
        raise ValueError(f"unknown scope {scope!r}") from None
    spec = GridSpec(DEFAULT_GRID.x_min, DEFAULT_GRID.x_max, DEFAULT_GRID.y_min, DEFAULT_GRID.y_max, n, n)
    rows = []
    for fig, panel in all_panels():
        state, _ = figure_preset(fig, panel)
        closed = wigner_grid(state, spec).values
        oracle = oracle_wigner_grid(state, spec)
        rows.append(Deviation(f"fig{fig}{panel}", float(np.max(np.abs(closed - oracle)))))
    return rows
