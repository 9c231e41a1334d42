import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from catwigner.errors import ZeroNormState
from catwigner.state import CatParams, SuperpositionState, build_cat, cat_pair, displace_state, norm_squared
from catwigner.wigner import (
    DEFAULT_GRID,
    GridSpec,
    PhasePoint,
    WignerGrid,
    cross_term,
    imag_residue,
    integrate_grid,
    wigner_grid,
    wigner_point,
)

TWO_OVER_PI = 0.63661977236758134307553505349
# (2/pi) e^-2 and e^-2, 30-digit mpmath
VACUUM_AT_ONE = 0.0861571172073945191434862445731
E_MINUS_2 = 0.135335283236612691893999494972

small = st.floats(min_value=-3, max_value=3, allow_nan=False)
amps = st.builds(complex, small, small)


def coherent(g):
    return SuperpositionState.coherent(g)


def test_cross_term_diagonal():
    assert cross_term(1 - 2j, 1 - 2j, 1 - 2j) == pytest.approx(1.0, abs=1e-15)
    assert cross_term(0, 0, PhasePoint(1, 0)) == pytest.approx(E_MINUS_2, abs=1e-16)


@given(amps, amps, amps)
def test_cross_term_swap_is_conjugate(a, b, alpha):
    assert cross_term(a, b, alpha) == pytest.approx(cross_term(b, a, alpha).conjugate(), rel=1e-12, abs=1e-300)


def test_wigner_point_coherent_values():
    assert wigner_point(coherent(2), PhasePoint(2, 0)) == pytest.approx(TWO_OVER_PI, abs=1e-15)
    assert wigner_point(coherent(0), PhasePoint(1, 0)) == pytest.approx(VACUUM_AT_ONE, abs=1e-16)


@pytest.mark.parametrize("gamma", [0, 2, 2 + 1j])
def test_single_coherent_reference(gamma):
    spec = GridSpec(-6, 6, -6, 6, 101, 101)
    g = wigner_grid(coherent(gamma), spec)
    X, Y = np.meshgrid(spec.xs, spec.ys)
    ref = (2 / np.pi) * np.exp(-2 * np.abs(X + 1j * Y - gamma) ** 2)
    assert np.max(np.abs(g.values - ref)) < 1e-12


def test_even_cat_textbook_formula():
    # |a> + |-a>, real a: W = (2/pi)/N [G(x-a) + G(x+a) + 2 e^{-2|z|^2} cos(4 a y)]
    a = 1.5
    s = SuperpositionState([(1, a), (1, -a)])
    norm = 2 + 2 * np.exp(-2 * a * a)
    for x, y in [(0.0, 0.0), (0.3, -0.4), (1.5, 0.2), (-0.7, 1.1)]:
        z = complex(x, y)
        ref = (2 / np.pi) / norm * (
            np.exp(-2 * abs(z - a) ** 2) + np.exp(-2 * abs(z + a) ** 2) + 2 * np.exp(-2 * abs(z) ** 2) * np.cos(4 * a * y)
        )
        assert wigner_point(s, PhasePoint(x, y)) == pytest.approx(ref, abs=1e-14)


def test_zero_norm_rejected():
    with pytest.raises(ZeroNormState):
        wigner_point(build_cat(CatParams(2, 0)), 0)
    with pytest.raises(ZeroNormState):
        wigner_grid(build_cat(CatParams(2, 0)), GridSpec(-1, 1, -1, 1, 2, 2))


def test_scaling_invariance():
    s = cat_pair(2, 2.3, -1, -1.2, "difference")
    for at in (0.5 + 0.5j, 1.9 - 0.2j):
        assert wigner_point(s.scaled(3 - 4j), at) == pytest.approx(wigner_point(s, at), rel=1e-12)


@settings(max_examples=40)
@given(amps, amps)
def test_displacement_covariance(shift, at):
    s = cat_pair(2, 2.3, -1, -1.2, "difference")
    moved = displace_state(s, shift)
    assert wigner_point(moved, at) == pytest.approx(wigner_point(s, at - shift), abs=1e-10)


@settings(max_examples=40)
@given(st.lists(st.tuples(amps, amps), min_size=1, max_size=4), amps)
def test_realness_and_bounds(terms, at):
    s = SuperpositionState(terms)
    assume(norm_squared(s) > 1e-6)
    assert imag_residue(s, np.array([at]))[0] <= 1e-10
    w = wigner_point(s, at)
    assert -2 / np.pi - 1e-9 <= w <= 2 / np.pi + 1e-9


def test_grid_vacuum_peak_at_center():
    g = wigner_grid(coherent(0), GridSpec(-3, 3, -3, 3, 61, 61))
    r, c = np.unravel_index(np.argmax(g.values), g.values.shape)
    assert (r, c) == (30, 30)
    assert g.spec.xs[c] == 0.0 and g.spec.ys[r] == 0.0
    assert g.values[r, c] == pytest.approx(TWO_OVER_PI, abs=1e-15)


def test_grid_mirror_symmetry_for_real_states():
    s = cat_pair(4, 2, -1, -1.5, "sum")
    g = wigner_grid(s, GridSpec(-5, 5, -4, 4, 51, 41))
    assert np.max(np.abs(g.values - g.values[::-1, :])) < 1e-12


def test_grid_shape_and_layout():
    spec = GridSpec(-1, 2, 0, 1, 2, 2)
    s = cat_pair(2, 2.3, -1, -1.2, "difference")
    g = wigner_grid(s, spec)
    assert g.values.shape == (2, 2)
    assert g.values[1, 0] == wigner_point(s, PhasePoint(-1, 1))
    assert g.values[0, 1] == wigner_point(s, PhasePoint(2, 0))


def test_parallel_grid_is_bitwise_identical():
    s = cat_pair(2, 2.3, -1, -1.4, "difference")
    spec = GridSpec(-4, 4, -4, 4, 81, 77)
    a = wigner_grid(s, spec).values
    b = wigner_grid(s, spec, workers=4).values
    assert a.tobytes() == b.tobytes()


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(x_min=1, x_max=1, y_min=0, y_max=1, nx=3, ny=3),
        dict(x_min=0, x_max=1, y_min=2, y_max=1, nx=3, ny=3),
        dict(x_min=0, x_max=1, y_min=0, y_max=1, nx=1, ny=3),
        dict(x_min=0, x_max=1, y_min=0, y_max=1, nx=3, ny=2.5),
        dict(x_min=0, x_max=float("inf"), y_min=0, y_max=1, nx=3, ny=3),
    ],
)
def test_gridspec_validation(kwargs):
    with pytest.raises(ValueError):
        GridSpec(**kwargs)


def test_default_grid_has_origin_sample():
    assert DEFAULT_GRID.nx == DEFAULT_GRID.ny == 281
    assert DEFAULT_GRID.xs[140] == 0.0
    assert DEFAULT_GRID.xs[0] == -7.0 and DEFAULT_GRID.xs[-1] == 7.0


def test_integrate_vacuum():
    g = wigner_grid(coherent(0), GridSpec(-6, 6, -6, 6, 241, 241))
    assert integrate_grid(g) == pytest.approx(1.0, abs=1e-6)


def test_integrate_zero_grid():
    spec = GridSpec(-1, 1, -1, 1, 5, 7)
    assert integrate_grid(WignerGrid(spec, np.zeros((7, 5)))) == 0.0


def test_integrate_against_polynomial():
    # trapezoid is exact on bilinear functions
    spec = GridSpec(0, 2, -1, 3, 5, 9)
    X, Y = np.meshgrid(spec.xs, spec.ys)
    g = WignerGrid(spec, 1 + X + 2 * Y + X * Y)
    # integral over [0,2]x[-1,3] of 1 + x + 2y + xy = 8 + 8 + 16 + 8
    assert integrate_grid(g) == pytest.approx(40.0, rel=1e-14)


def test_wigner_grid_rejects_bad_shape():
    with pytest.raises(ValueError):
        WignerGrid(GridSpec(0, 1, 0, 1, 2, 3), np.zeros((2, 3)))
    with pytest.raises(ValueError):
        WignerGrid(GridSpec(0, 1, 0, 1, 2, 2), np.full((2, 2), np.nan))
