"""Render entpower CSV/JSON outputs as figures.

The renderer is a pure consumer of the CLI's file formats: a JSON
manifest listing labeled CSV curves (histogram densities) or sweep
arrays, with the metadata keys experiment, seed, samples, gate and bins.
No statistics are recomputed here; everything is plotting transforms.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7a", "fig7b")

REQUIRED_META = ("experiment", "seed", "samples", "gate", "bins")

AXES = {
    "fig1": ("entanglement change", "probability density"),
    "fig2": ("perturbation x (rad)", "entangling power"),
    "fig3": ("entanglement change", "probability density"),
    "fig4": ("Bures distance", "probability density"),
    "fig5": ("Hilbert-Schmidt distance", "probability density"),
    "fig6": ("residual tangle", "probability density"),
    "fig7a": ("entanglement change", "probability density"),
    "fig7b": ("entanglement change", "probability density"),
}


class SchemaError(Exception):
    """An input file is missing required metadata or malformed."""


@dataclass
class FigureSpec:
    figure_id: str
    manifest: Path
    out: Path
    title: str | None = None
    xlim: tuple | None = None


def load_manifest(path: Path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read manifest {path}: {exc}") from exc
    missing = [k for k in REQUIRED_META if k not in data]
    if missing:
        raise SchemaError(f"manifest {path} lacks metadata keys {missing}")
    if "curves" not in data and "sweeps" not in data:
        raise SchemaError(f"manifest {path} holds neither curves nor sweeps")
    return data


def load_curve_csv(path: Path) -> tuple[dict, np.ndarray, np.ndarray]:
    """Parse one histogram CSV into (metadata, bin centers, densities)."""
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise SchemaError(f"cannot read curve {path}: {exc}") from exc
    meta = {}
    body_start = 0
    for i, line in enumerate(lines):
        if line.startswith("# "):
            key, _, value = line.removeprefix("# ").partition("=")
            meta[key] = value
            continue
        body_start = i
        break
    missing = [k for k in REQUIRED_META if k not in meta]
    if missing:
        raise SchemaError(f"curve {path} lacks metadata keys {missing}")
    if lines[body_start] != "bin_center,density":
        raise SchemaError(f"curve {path} has unexpected header {lines[body_start]!r}")
    rows = [line.split(",") for line in lines[body_start + 1:] if line]
    try:
        centers = np.array([float(r[0]) for r in rows])
        dens = np.array([float(r[1]) for r in rows])
    except (ValueError, IndexError) as exc:
        raise SchemaError(f"curve {path} has a malformed data row: {exc}") from exc
    return meta, centers, dens


def _plot_curves(ax, manifest: dict, manifest_dir: Path):
    for entry in manifest["curves"]:
        _, centers, dens = load_curve_csv(manifest_dir / entry["csv"])
        ax.plot(centers, dens, lw=1.5, label=entry["label"])


def _render_sweeps(ax, manifest: dict):
    sweeps = {s["base"]: s for s in manifest["sweeps"]}
    main = sweeps.get("cnot")
    if main is None:
        raise SchemaError("fig2 manifest lacks the cnot-base sweep")
    ax.errorbar(main["xs"], main["epsilon_p"], yerr=main["epsilon_p_stderr"],
                fmt="o-", ms=4, capsize=2, label="optimal base (pi/4, x, x)")
    ax.legend(loc="lower left", fontsize=8)
    inset = sweeps.get("pi8")
    if inset is not None:
        box = ax.inset_axes([0.58, 0.58, 0.38, 0.36])
        box.errorbar(inset["xs"], inset["epsilon_p"],
                     yerr=inset["epsilon_p_stderr"], fmt="s-", ms=3,
                     capsize=2, color="tab:red")
        box.set_title("(pi/8, x, x)", fontsize=8)
        box.tick_params(labelsize=7)


def render(spec: FigureSpec):
    """Render one figure from a manifest; returns the matplotlib Figure."""
    if spec.figure_id not in FIGURE_IDS:
        raise SchemaError(f"unknown figure id {spec.figure_id!r}")
    manifest = load_manifest(spec.manifest)
    manifest_dir = Path(spec.manifest).parent
    fig, ax = plt.subplots(figsize=(6.0, 4.2))

    if spec.figure_id == "fig2":
        _render_sweeps(ax, manifest)
    else:
        _plot_curves(ax, manifest, manifest_dir)
        ax.legend(fontsize=8)

    if spec.figure_id == "fig7b":
        # the four-qubit spike dwarfs the others; clip like the source plots
        tops = [line.get_ydata().max() for line in ax.lines
                if line.get_label() != "n4"]
        if tops:
            ax.set_ylim(0, 1.15 * max(tops))

    xlabel, ylabel = AXES[spec.figure_id]
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if spec.xlim:
        ax.set_xlim(*spec.xlim)
    ax.set_title(spec.title or
                 f"{manifest['experiment']} (seed {manifest['seed']}, "
                 f"{manifest['samples']} samples)", fontsize=9)
    ax.grid(alpha=0.25)
    fig.tight_layout()
    fig.savefig(spec.out, dpi=150)
    return fig


def main(argv=None) -> int:
    p = argparse.ArgumentParser(
        prog="render_figure",
        description="Render an entpower experiment manifest as an image.")
    p.add_argument("figure", choices=FIGURE_IDS)
    p.add_argument("--manifest", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--title", default=None)
    args = p.parse_args(argv)
    try:
        fig = render(FigureSpec(figure_id=args.figure, manifest=args.manifest,
                                out=args.out, title=args.title))
        plt.close(fig)
    except (SchemaError, OSError) as exc:
        print(f"render_figure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
