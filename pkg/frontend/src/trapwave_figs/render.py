"""Render one image per registered figure scenario from CSV outputs.

Presentation only: the scripts read the documented CSV schemas, reshape
the long-format rows onto (t, z) lattices, downsample for speed, and
color-map.  No numerical work happens here.

Usage:  trapwave-figs --data <dir> --out <dir> [--figure <name>]
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = [
    "FigureSpec",
    "MissingInputError",
    "SchemaMismatchError",
    "FIGURES",
    "figure_specs",
    "render",
    "render_all",
    "main",
]

DPI = 150
MAX_CELLS = 200  # surfaces/heatmaps downsample to at most 200x200

SCHEMAS = {
    "trajectory": ["t", "phi", "c", "M", "A", "gamma", "ell", "a"],
    "trap": ["t", "z", "vtrap"],
    "field": ["t", "z", "re", "im", "density"],
}


class MissingInputError(FileNotFoundError):
    pass


class SchemaMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class FigureSpec:
    name: str
    kind: str  # surface | heatmap | line-overlay
    csv_paths: dict = field(default_factory=dict)  # role -> path
    labels: dict = field(default_factory=dict)
    out_path: str = ""

    def __post_init__(self):
        if self.kind not in ("surface", "heatmap", "line-overlay"):
            raise ValueError(f"unknown plot kind {self.kind!r}")


# every registered figure scenario, with its plot kind
FIGURES = {
    "fig-unmod-0.001": "surface",
    "fig-unmod-0.01": "surface",
    "fig-reg-osc-trap": "surface",
    "fig-rat-osc-trap": "surface",
    "fig-scarf-reg-trap": "surface",
    "fig-scarf-rat-trap": "surface",
    "fig-reg-osc-short": "heatmap",
    "fig-rat-osc-short": "heatmap",
    "fig-reg-osc-long": "heatmap",
    "fig-rat-osc-long": "heatmap",
    "fig-reg-osc-offaxis": "heatmap",
    "fig-rat-osc-offaxis": "heatmap",
    "fig-scarf-reg-short": "heatmap",
    "fig-scarf-rat-short": "heatmap",
    "fig-scarf-reg-long": "heatmap",
    "fig-scarf-rat-long": "heatmap",
}


def read_rows(path: str, schema: str) -> dict:
    """Read a CSV into column arrays, strictly validating the header."""
    if not os.path.exists(path):
        raise MissingInputError(path)
    expected = SCHEMAS[schema]
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaMismatchError(f"{path}: empty file")
        if header != expected:
            raise SchemaMismatchError(
                f"{path}: header {header!r}, expected {expected!r}")
        rows = list(reader)
    if not rows:
        raise SchemaMismatchError(f"{path}: no data rows")
    try:
        data = np.array(rows, dtype=float)
    except ValueError as exc:
        raise SchemaMismatchError(f"{path}: non-numeric row: {exc}") from exc
    if data.shape[1] != len(expected):
        raise SchemaMismatchError(f"{path}: ragged rows")
    return {name: data[:, i] for i, name in enumerate(expected)}


def pivot(cols: dict, value: str):
    """Long (t, z, value) rows -> t axis, z axis, value lattice."""
    t = np.unique(cols["t"])
    z = np.unique(cols["z"])
    if len(t) * len(z) != len(cols[value]):
        raise SchemaMismatchError("rows do not tile a (t, z) lattice")
    lattice = cols[value].reshape(len(t), len(z))
    return t, z, lattice


def downsample(t, z, lattice):
    st = max(1, -(-len(t) // MAX_CELLS))
    sz = max(1, -(-len(z) // MAX_CELLS))
    return t[::st], z[::sz], lattice[::st, ::sz]


def figure_specs(data_dir: str, out_dir: str,
                 names=None) -> list[FigureSpec]:
    specs = []
    for name in sorted(FIGURES if names is None else names):
        kind = FIGURES[name]
        paths = {"trajectory": os.path.join(data_dir, f"{name}-trajectory.csv")}
        if kind == "surface":
            paths["trap"] = os.path.join(data_dir, f"{name}-trap.csv")
        if kind == "heatmap":
            paths["field"] = os.path.join(data_dir, f"{name}-field.csv")
        specs.append(FigureSpec(
            name=name, kind=kind, csv_paths=paths,
            labels={"x": "t", "y": "z"},
            out_path=os.path.join(out_dir, f"{name}.png")))
    return specs


def _render_surface(ax, spec: FigureSpec):
    cols = read_rows(spec.csv_paths["trap"], "trap")
    t, z, v = downsample(*pivot(cols, "vtrap"))
    T, Z = np.meshgrid(t, z, indexing="ij")
    ax.plot_surface(T, Z, v, cmap="viridis", linewidth=0, antialiased=False)
    ax.set_xlabel(spec.labels.get("x", "t"))
    ax.set_ylabel(spec.labels.get("y", "z"))
    ax.set_zlabel("V")


def _render_heatmap(ax, spec: FigureSpec):
    cols = read_rows(spec.csv_paths["field"], "field")
    t, z, d = downsample(*pivot(cols, "density"))
    ax.pcolormesh(t, z, d.T, cmap="magma", shading="nearest")
    traj = read_rows(spec.csv_paths["trajectory"], "trajectory")
    ax.plot(traj["t"], traj["ell"], "w--", linewidth=0.8)
    ax.set_xlabel(spec.labels.get("x", "t"))
    ax.set_ylabel(spec.labels.get("y", "z"))


def _render_lines(ax, spec: FigureSpec):
    traj = read_rows(spec.csv_paths["trajectory"], "trajectory")
    for key in ("A", "c", "M", "ell"):
        ax.plot(traj["t"], traj[key], label=key, linewidth=1.0)
    ax.set_xlabel(spec.labels.get("x", "t"))
    ax.legend(loc="upper left", fontsize=8)


def render(spec: FigureSpec) -> str:
    """Write spec.out_path; raises on missing input or schema mismatch."""
    if spec.kind == "surface":
        fig = plt.figure(figsize=(6, 4))
        ax = fig.add_subplot(111, projection="3d")
        _render_surface(ax, spec)
    else:
        fig, ax = plt.subplots(figsize=(6, 4))
        if spec.kind == "heatmap":
            _render_heatmap(ax, spec)
        else:
            _render_lines(ax, spec)
    ax.set_title(spec.name, fontsize=10)
    try:
        fig.savefig(spec.out_path, dpi=DPI,
                    metadata={"Software": "trapwave-figs"})
    finally:
        plt.close(fig)
    return spec.out_path


def render_all(data_dir: str, out_dir: str, names=None) -> dict:
    """Render every figure; returns {name: None | error message}."""
    os.makedirs(out_dir, exist_ok=True)
    results = {}
    for spec in figure_specs(data_dir, out_dir, names):
        try:
            render(spec)
            results[spec.name] = None
        except (MissingInputError, SchemaMismatchError, ValueError) as exc:
            results[spec.name] = f"{type(exc).__name__}: {exc}"
    return results


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="trapwave-figs",
        description="Render figure images from trapwave CSV outputs")
    ap.add_argument("--data", required=True, help="directory with the CSVs")
    ap.add_argument("--out", required=True, help="directory for the images")
    ap.add_argument("--figure", help="render only this figure")
    args = ap.parse_args(argv)
    names = None
    if args.figure:
        if args.figure not in FIGURES:
            sys.stderr.write(f"unknown figure {args.figure!r}\n")
            return 1
        names = [args.figure]
    results = render_all(args.data, args.out, names)
    failures = {k: v for k, v in results.items() if v is not None}
    for name in sorted(results):
        status = failures.get(name)
        print(f"{'FAIL' if status else 'ok':4s} {name}"
              + (f"  ({status})" if status else ""))
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
