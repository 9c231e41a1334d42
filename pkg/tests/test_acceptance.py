"""Exit criteria for the package.

Every criterion prints one ``[PASS]``/``[FAIL]`` line (visible with ``pytest -s``
or when this file is run directly).
"""

import math

import numpy as np
import pytest

from catwigner import cli, wigner
from catwigner.analysis import SweepSpec, all_panels, figure_preset, run_sweep, state_fidelity
from catwigner.fock import oracle_wigner_grid
from catwigner.state import CatParams, SuperpositionState, build_cat, merge_terms, overlap
from catwigner.wigner import DEFAULT_GRID, GridSpec, imag_residue, integrate_grid, wigner_grid

PANELS = all_panels()
BOUND = 2 / math.pi + 1e-9


def report(number: int, name: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] AC{number} {name}: {detail}")
    assert ok, f"AC{number} {name}: {detail}"


def test_ac1_coherent_reference():
    spec = GridSpec(-6, 6, -6, 6, 101, 101)
    g = wigner_grid(SuperpositionState.coherent(2), spec)
    X, Y = np.meshgrid(spec.xs, spec.ys)
    ref = (2 / np.pi) * np.exp(-2 * np.abs(X + 1j * Y - 2) ** 2)
    dev = float(np.max(np.abs(g.values - ref)))
    report(1, "coherent reference", dev < 1e-12, f"max deviation {dev:.2e} (< 1e-12)")


def test_ac2_oracle_equivalence():
    sub = GridSpec(DEFAULT_GRID.x_min, DEFAULT_GRID.x_max, DEFAULT_GRID.y_min, DEFAULT_GRID.y_max, 41, 41)
    devs = {}
    for fig, panel in PANELS:
        s, _ = figure_preset(fig, panel)
        devs[f"{fig}{panel}"] = float(np.max(np.abs(wigner_grid(s, sub).values - oracle_wigner_grid(s, sub))))
    worst = max(devs, key=devs.get)
    report(2, "oracle equivalence", len(devs) == 10 and devs[worst] < 1e-8,
           f"{len(devs)} panels, worst {worst} = {devs[worst]:.2e} (< 1e-8)")


def test_ac3_normalization():
    spec = GridSpec(-8, 8, -8, 8, 321, 321)
    errs = {f"{f}{p}": abs(integrate_grid(wigner_grid(figure_preset(f, p)[0], spec)) - 1) for f, p in PANELS}
    worst = max(errs, key=errs.get)
    report(3, "normalization", errs[worst] < 1e-3, f"worst {worst} |integral - 1| = {errs[worst]:.2e} (< 1e-3)")


def test_ac4_degenerate_identities():
    s3b, grid = figure_preset(3, "b")
    merged = merge_terms(s3b)
    z1, z2 = overlap(2, 1), overlap(2.3, 1.0)
    explicit = SuperpositionState([(z2, 2.3), (-z1, 2.0)])
    full = wigner_grid(s3b, grid).values
    dev_merged = float(np.max(np.abs(full - wigner_grid(merged, grid).values)))
    dev_explicit = float(np.max(np.abs(full - wigner_grid(explicit, grid).values)))
    ok_a = len(merged) == 2 and dev_merged < 1e-10 and dev_explicit < 1e-10
    report(4, "(a) fig3b equals two-term cat", ok_a,
           f"{len(merged)} merged terms, grid deviation {max(dev_merged, dev_explicit):.2e} (< 1e-10)")

    s4a, _ = figure_preset(4, "a")
    fid = state_fidelity(s4a, build_cat(CatParams(2, -1.5)))
    report(4, "(b) fig4a equals cat(2,-1.5)", abs(fid - 1) <= 1e-12, f"fidelity - 1 = {fid - 1:.2e} (|.| <= 1e-12)")


def test_ac5_realness_and_bounds():
    alphas = DEFAULT_GRID.xs[None, :] + 1j * DEFAULT_GRID.ys[:, None]
    worst_res, lo, hi = 0.0, np.inf, -np.inf
    for fig, panel in PANELS:
        s, grid = figure_preset(fig, panel)
        worst_res = max(worst_res, float(np.max(imag_residue(s, alphas))))
        v = wigner_grid(s, grid).values
        lo, hi = min(lo, v.min()), max(hi, v.max())
    ok = worst_res < 1e-10 and lo >= -BOUND and hi <= BOUND
    report(5, "realness and bounds", ok, f"max Im residue {worst_res:.2e}, W in [{lo:.6f}, {hi:.6f}]")


def test_ac6_negativity():
    mins = {f"{f}{p}": float(wigner_grid(*figure_preset(f, p)).values.min()) for f, p in PANELS}
    worst = max(mins, key=mins.get)
    report(6, "negativity", all(m < 0 for m in mins.values()), f"least negative minimum {worst} = {mins[worst]:.4f}")


def test_ac7_mutation_sensitivity(monkeypatch, capsys):
    clean = cli.main(["verify", "--quick"])
    monkeypatch.setattr(wigner, "WIGNER_PREFACTOR", 1 / math.pi**2)
    mutated = cli.main(["verify", "--quick"])
    capsys.readouterr()
    with capsys.disabled():
        report(7, "mutation sensitivity", clean == 0 and mutated == 5, f"exit {clean} clean, exit {mutated} with 1/pi^2")


def test_ac8_sweep_integrity():
    spec = SweepSpec("fig3_difference", "delta_alpha_00", -1.6, -1.0, 61,
                     metric="fidelity_to_reference", reference=-1.3)
    closed = run_sweep(spec)
    oracle = run_sweep(spec, backend="oracle")
    i_ref = int(np.argmin(np.abs(np.array(closed.params) + 1.3)))
    in_range = all(0.0 <= v <= 1.0 + 1e-10 for v in closed.values)
    agree = float(np.max(np.abs(np.array(closed.values) - np.array(oracle.values))))
    ok = (len(closed.values) == 61 and abs(closed.values[i_ref] - 1.0) <= 1e-12
          and in_range and agree < 1e-6)
    report(8, "sweep integrity", ok,
           f"{len(closed.values)} rows, value at -1.3 = {closed.values[i_ref]!r}, "
           f"in [0,1]: {in_range}, oracle agreement {agree:.2e} (< 1e-6)")


def test_ac9_determinism(tmp_path, capsys):
    paths = [tmp_path / n for n in ("run1.csv", "run2.csv", "par.csv")]
    codes = [cli.main(["figure", "--id", "3", "--panel", "a", "--out", str(paths[0])]),
             cli.main(["figure", "--id", "3", "--panel", "a", "--out", str(paths[1])]),
             cli.main(["figure", "--id", "3", "--panel", "a", "--out", str(paths[2]), "--workers", "4"])]
    capsys.readouterr()
    blobs = [p.read_bytes() for p in paths]
    with capsys.disabled():
        report(9, "determinism", codes == [0, 0, 0] and blobs[0] == blobs[1] == blobs[2],
               f"{len(blobs[0])} bytes, repeat identical: {blobs[0] == blobs[1]}, "
               f"parallel identical: {blobs[0] == blobs[2]}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-s", "-q"]))
