"""Command-line entry point.

Each run writes delimited histogram files plus one JSON manifest:

    <out>.csv            single-curve experiments
    <out>_<label>.csv    one file per curve for multi-curve figures
    <out>.json           scalars, metadata and the curve list

Exit codes: 0 success, 1 numerical invariant violation, 2 bad configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import experiments as xp
from .errors import EntpowerError
from .gates import GateSpec
from .histogram import Histogram

EXPERIMENTS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6",
               "fig7a", "fig7b", "epower", "custom")

_DEFAULT_SAMPLES = {"fig2": 10_000}          # per sweep point
_FALLBACK_SAMPLES = 100_000
_DEFAULT_BINS = {"fig4": xp.DISTANCE_BINS, "fig5": xp.DISTANCE_BINS,
                 "fig6": xp.DW_BINS, "epower": 100}
_FALLBACK_BINS = xp.DELTA_E_BINS

SWEEP_XS = [round(k * math.pi / 48, 10) for k in range(13)]  # 0 .. pi/4


@dataclass
class RunConfig:
    experiment: str
    gate: GateSpec | None = None
    samples: int | None = None
    bins: int | None = None
    seed: int = 1
    workers: int = 1
    na: int = 2
    metric: str | None = None
    out: str | None = None

    def resolved_samples(self) -> int:
        if self.samples is not None:
            return self.samples
        return _DEFAULT_SAMPLES.get(self.experiment, _FALLBACK_SAMPLES)

    def resolved_bins(self) -> int:
        if self.bins is not None:
            return self.bins
        return _DEFAULT_BINS.get(self.experiment, _FALLBACK_BINS)


def _gate_spec(text: str) -> GateSpec:
    try:
        return GateSpec.parse(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="entpower",
        description="Monte Carlo experiments on the entangling action of quantum gates.")
    p.add_argument("experiment", choices=EXPERIMENTS)
    p.add_argument("--samples", type=int, help="sample count (per curve / sweep point)")
    p.add_argument("--bins", type=int, help="histogram bin count")
    p.add_argument("--seed", type=int, default=1, help="base RNG seed (default 1)")
    p.add_argument("--workers", type=int, default=1, help="worker threads (default 1)")
    p.add_argument("--gate", type=_gate_spec, default=None,
                   help="gate spec: cnot | utheta:<radians> | canon:<l1>,<l2>,<l3>")
    p.add_argument("--na", type=int, default=2,
                   help="qudit dimension for the custom experiment (default 2)")
    p.add_argument("--metric", choices=("bures", "hs"), default=None,
                   help="distance metric override for fig4/fig5")
    p.add_argument("--out", type=str, default=None,
                   help="output path prefix (default: the experiment id)")
    return p


def write_csv(hist: Histogram, path: Path, meta: dict) -> None:
    """Histogram as `bin_center,density` rows under `# key=value` metadata.

    The five keys experiment, seed, samples, gate and bins are always
    present; reals carry 17 significant digits so rewriting the same run
    is byte-identical.
    """
    lines = []
    for key in ("experiment", "seed", "samples", "gate", "bins"):
        lines.append(f"# {key}={meta[key]}")
    if "curve" in meta:
        lines.append(f"# curve={meta['curve']}")
    lines.append("bin_center,density")
    for c, d in zip(hist.bin_centers, hist.densities()):
        lines.append(f"{c:.17g},{d:.17g}")
    try:
        path.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write histogram to {path}: {exc}") from exc


def _base_meta(cfg: RunConfig, gate_label: str) -> dict:
    return {
        "experiment": cfg.experiment,
        "seed": cfg.seed,
        "samples": cfg.resolved_samples(),
        "gate": gate_label,
        "bins": cfg.resolved_bins(),
    }


def run(cfg: RunConfig) -> int:
    """Execute one experiment and write its artifacts; returns the exit code."""
    t0 = time.perf_counter()
    out_prefix = Path(cfg.out if cfg.out is not None else cfg.experiment)
    samples = cfg.resolved_samples()
    bins = cfg.resolved_bins()
    seed = cfg.seed
    workers = cfg.workers
    gate = cfg.gate if cfg.gate is not None else GateSpec.parse("cnot")

    curves: list[tuple[str, Histogram]] = []
    scalars: dict = {}
    sweeps: list[dict] = []
    gate_label = "none"

    try:
        if cfg.experiment == "fig1":
            gate_label = gate.label
            rep = xp.delta_e_distribution(gate, samples, bins, seed, workers)
            curves.append(("delta_e", rep.histogram))
            scalars.update(rep.scalars)

        elif cfg.experiment == "fig2":
            for base in ("cnot", "pi8"):
                reports = xp.perturbation_sweep(base, SWEEP_XS, samples, seed, workers)
                sweeps.append({
                    "base": base,
                    "xs": [r.scalars["x"] for r in reports],
                    "epsilon_p": [r.scalars["epsilon_p"] for r in reports],
                    "epsilon_p_stderr": [r.scalars["epsilon_p_stderr"] for r in reports],
                })
            scalars["points_per_sweep"] = len(SWEEP_XS)

        elif cfg.experiment == "fig3":
            widths = []
            for n_a in range(2, 7):
                rep = xp.random_pair_distribution(n_a, samples, bins, seed,
                                                  workers, stream=n_a)
                curves.append((f"na{n_a}", rep.histogram))
                widths.append(rep.scalars["width"])
                scalars[f"width_na{n_a}"] = rep.scalars["width"]
                scalars[f"mean_e_na{n_a}"] = rep.scalars["mean_e"]
                scalars[f"mean_e_na{n_a}_stderr"] = rep.scalars["mean_e_stderr"]
            alpha, r2 = xp.power_law_fit(list(range(2, 7)), widths)
            scalars["power_law_alpha"] = alpha
            scalars["power_law_r_squared"] = r2

        elif cfg.experiment in ("fig4", "fig5"):
            metric = cfg.metric or ("bures" if cfg.experiment == "fig4" else "hs")
            gate_label = "cnot"
            rep = xp.cnot_mixed_distance(metric, samples, bins, seed, workers)
            curves.append(("full", rep.histogram))
            curves.append(("region1", rep.curves["region1"]))
            curves.append(("region2", rep.curves["region2"]))
            scalars.update(rep.scalars)
            scalars["metric"] = metric
            if metric == "bures":
                from .metrics import bures_ball_radius
                scalars["ball_radius"] = bures_ball_radius()
            else:
                scalars["ball_radius"] = math.sqrt(1.0 / 12.0)

        elif cfg.experiment == "fig6":
            rep = xp.dw_distribution(samples, bins, seed, workers)
            curves.append(("dw", rep.histogram))
            scalars.update(rep.scalars)

        elif cfg.experiment == "fig7a":
            gate_label = "cnot"
            rep = xp.multiqubit_delta_e(3, samples, bins, seed, workers)
            curves.append(("ab", rep.histogram))
            curves.append(("ac", rep.curves["ac"]))
            curves.append(("bc", rep.curves["bc"]))
            scalars.update(rep.scalars)

        elif cfg.experiment == "fig7b":
            gate_label = "cnot"
            widths = {}
            for n in (2, 3, 4):
                rep = xp.multiqubit_delta_e(n, samples, bins, seed, workers, stream=n)
                curves.append((f"n{n}", rep.histogram))
                widths[n] = rep.scalars["width"]
                scalars[f"width_n{n}"] = rep.scalars["width"]
            scalars["widths_decreasing"] = float(widths[2] > widths[3] > widths[4])

        elif cfg.experiment == "epower":
            gate_label = gate.label
            rep = xp.entangling_power(gate, samples, seed, workers, bins)
            curves.append(("e_out", rep.histogram))
            scalars.update(rep.scalars)

        elif cfg.experiment == "custom":
            rep = xp.random_pair_distribution(cfg.na, samples, bins, seed, workers)
            curves.append((f"na{cfg.na}", rep.histogram))
            scalars.update(rep.scalars)

    except EntpowerError as exc:
        print(f"entpower: numerical invariant violated: {exc}", file=sys.stderr)
        return 1

    meta = _base_meta(cfg, gate_label)
    curve_entries = []
    try:
        if len(curves) == 1:
            label, hist = curves[0]
            csv_path = Path(f"{out_prefix}.csv")
            write_csv(hist, csv_path, dict(meta, curve=label))
            curve_entries.append({"label": label, "csv": csv_path.name})
        else:
            for label, hist in curves:
                csv_path = Path(f"{out_prefix}_{label}.csv")
                write_csv(hist, csv_path, dict(meta, curve=label))
                curve_entries.append({"label": label, "csv": csv_path.name})

        manifest = dict(meta)
        manifest["workers"] = workers
        manifest["runtime_seconds"] = time.perf_counter() - t0
        manifest["scalars"] = scalars
        manifest["curves"] = curve_entries
        if sweeps:
            manifest["sweeps"] = sweeps
        json_path = Path(f"{out_prefix}.json")
        json_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    except OSError as exc:
        print(f"entpower: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(experiment=args.experiment, gate=args.gate,
                    samples=args.samples, bins=args.bins, seed=args.seed,
                    workers=args.workers, na=args.na, metric=args.metric,
                    out=args.out)
    if cfg.samples is not None and cfg.samples < 1:
        print("entpower: --samples must be >= 1", file=sys.stderr)
        return 2
    if cfg.workers < 1:
        print("entpower: --workers must be >= 1", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
