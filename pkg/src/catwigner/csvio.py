"""CSV emission for grids and sweeps.

All numbers are written with 9 significant digits and LF line endings so that
identical runs produce identical bytes.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .analysis import SweepResult
    from .wigner import WignerGrid


def fmt(value: float) -> str:
    # + 0.0 folds negative zero
    return format(float(value) + 0.0, ".9g")


def grid_to_csv(g: WignerGrid) -> str:
    xs = [fmt(x) for x in g.spec.xs]
    lines = ["x,y,w"]
    for y, row in zip(g.spec.ys, g.values):
        ys = fmt(y)
        lines.extend(f"{x},{ys},{fmt(w)}" for x, w in zip(xs, row))
    return "\n".join(lines) + "\n"


def sweep_to_csv(result: SweepResult) -> str:
    lines = ["param,metric"]
    lines.extend(f"{fmt(p)},{fmt(v)}" for p, v in zip(result.params, result.values))
    if result.skipped:
        lines.append("# skipped: " + " ".join(fmt(p) for p in result.skipped))
    return "\n".join(lines) + "\n"


def read_grid_csv(path: str | os.PathLike) -> tuple[list[float], list[float], list[float]]:
    """Parse a grid CSV back into flat x, y, w columns."""
    xs, ys, ws = [], [], []
    with open(path, newline="") as fh:
        header = fh.readline().rstrip("\n")
        if header != "x,y,w":
            raise ValueError(f"unexpected header {header!r}")
        for line in fh:
            x, y, w = line.rstrip("\n").split(",")
            xs.append(float(x))
            ys.append(float(y))
            ws.append(float(w))
    return xs, ys, ws


def atomic_write_text(path: str | os.PathLike, text: str) -> None:
    """Write via a temp file in the target directory, then rename over the target."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
