"""Monte Carlo experiments: distributions of entanglement changes,
entangling-power estimates, mixed-state distances and multipartite
residuals.

Sampling is split into fixed-size chunks; chunk c of curve k draws from
the substream (seed, (k << 32) | c) and chunk results are merged in
chunk order, so a run is bit-identical for any worker count. Reported
scalars follow the convention that `<name>_stderr` is the standard
error of the plain sample-mean estimator `<name>`.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from .errors import NonPositiveWidth
from .gates import GateSpec, canonical_gate
from .histogram import Histogram, width_half_height
from .kernels import (kernel_cnot_mixed, kernel_delta_e_gate, kernel_dw,
                      kernel_entangling_power, kernel_multiqubit_delta_e,
                      kernel_random_pair)
from .sampling import RngStream

DEFAULT_CHUNK = 20_000

DELTA_E_BINS = 201       # default over [-1, 1]
DISTANCE_BINS = 200      # default over [0, sqrt(2)]
DW_BINS = 100            # default over [0, 1]


@dataclass
class ExperimentReport:
    """One experiment's histogram(s), scalar estimators and provenance."""

    histogram: Histogram | None
    scalars: dict = field(default_factory=dict)
    runtime_seconds: float = 0.0
    curves: dict = field(default_factory=dict)   # label -> Histogram, beyond the primary
    meta: dict = field(default_factory=dict)


def chunk_plan(samples: int, chunk: int = DEFAULT_CHUNK) -> list[int]:
    """Chunk sizes for a run; a pure function of the sample count only,
    so the substream plan never depends on the worker count."""
    full, rest = divmod(int(samples), chunk)
    return [chunk] * full + ([rest] if rest else [])


def stream_id(curve: int, chunk_index: int) -> int:
    return (int(curve) << 32) | int(chunk_index)


def run_chunked(kernel, samples: int, seed: int, curve: int = 0,
                workers: int = 1, chunk: int = DEFAULT_CHUNK) -> dict:
    """Evaluate `kernel(rng, n)` over the chunk plan and merge results.

    Array values are concatenated in chunk order and integer counters are
    summed, which keeps the merged output independent of scheduling.
    """
    sizes = chunk_plan(samples, chunk)
    tasks = [(i, n) for i, n in enumerate(sizes)]

    def one(task):
        i, n = task
        return kernel(RngStream(seed, stream_id(curve, i)), n)

    if workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, tasks))
    else:
        parts = [one(t) for t in tasks]

    merged: dict = {}
    for key in parts[0]:
        vals = [p[key] for p in parts]
        if isinstance(vals[0], np.ndarray):
            merged[key] = np.concatenate(vals)
        else:
            merged[key] = sum(vals)
    return merged


def _mean_stderr(x: np.ndarray) -> tuple[float, float]:
    m = float(x.mean())
    se = float(x.std(ddof=1) / math.sqrt(x.size)) if x.size > 1 else 0.0
    return m, se


def _width_scalars(hist: Histogram, prefix: str = "") -> dict:
    d = hist.densities()
    p0 = d[hist.bin_of(0.0)]
    peak = float(d.max())
    out = {
        f"{prefix}width": width_half_height(hist),
        f"{prefix}p0_density": float(p0),
        f"{prefix}max_density": peak,
    }
    # flag reference-height ambiguity: the mode exceeding the zero bin by
    # more than 10 percent means the two width conventions would differ
    out[f"{prefix}peak_over_p0"] = peak / p0 if p0 > 0 else float("inf")
    return out


def delta_e_distribution(gate: GateSpec, samples: int, bins: int = DELTA_E_BINS,
                         seed: int = 0, workers: int = 1,
                         stream: int = 0) -> ExperimentReport:
    """Distribution of the entanglement change a gate causes on
    Haar-random two-qubit pure states."""
    t0 = time.perf_counter()
    u = gate.to_matrix()
    data = run_chunked(partial(kernel_delta_e_gate, u=u), samples, seed,
                       curve=stream, workers=workers)
    hist = Histogram.empty(-1.0, 1.0, bins, meta={"seed": seed, "gate": gate.label})
    hist.add(data["delta_e"])
    mean, se = _mean_stderr(data["delta_e"])
    scalars = {
        "mean_delta_e": mean, "mean_delta_e_stderr": se,
        "max_abs_delta_e": float(np.abs(data["delta_e"]).max()),
    }
    scalars.update(_width_scalars(hist))
    return ExperimentReport(histogram=hist, scalars=scalars,
                            runtime_seconds=time.perf_counter() - t0,
                            meta={"gate": gate.label, "samples": samples, "seed": seed})


def random_pair_distribution(n_a: int, samples: int, bins: int = DELTA_E_BINS,
                             seed: int = 0, workers: int = 1,
                             stream: int = 0) -> ExperimentReport:
    """Entanglement change between two independently Haar-drawn pure
    states of an n_a x n_a system (no gate involved)."""
    if not 2 <= n_a <= 6:
        raise ValueError("n_a must be between 2 and 6")
    t0 = time.perf_counter()
    data = run_chunked(partial(kernel_random_pair, n_a=n_a), samples, seed,
                       curve=stream, workers=workers)
    hist = Histogram.empty(-1.0, 1.0, bins, meta={"seed": seed, "n_a": n_a})
    hist.add(data["delta_e"])
    mean_e, se_e = _mean_stderr(data["e_marginal"])
    scalars = {"mean_e": mean_e, "mean_e_stderr": se_e}
    scalars.update(_width_scalars(hist))
    return ExperimentReport(histogram=hist, scalars=scalars,
                            runtime_seconds=time.perf_counter() - t0,
                            meta={"n_a": n_a, "samples": samples, "seed": seed})


def entangling_power(gate: GateSpec, samples: int, seed: int = 0,
                     workers: int = 1, bins: int = 100,
                     stream: int = 0) -> ExperimentReport:
    """Mean output entanglement of a gate over Haar product inputs."""
    t0 = time.perf_counter()
    u = gate.to_matrix()
    data = run_chunked(partial(kernel_entangling_power, u=u), samples, seed,
                       curve=stream, workers=workers)
    hist = Histogram.empty(0.0, 1.0, bins, meta={"seed": seed, "gate": gate.label})
    hist.add(data["e"])
    ep, se = _mean_stderr(data["e"])
    return ExperimentReport(histogram=hist,
                            scalars={"epsilon_p": ep, "epsilon_p_stderr": se},
                            runtime_seconds=time.perf_counter() - t0,
                            meta={"gate": gate.label, "samples": samples, "seed": seed})


def perturbation_sweep(base: str, xs, samples: int, seed: int = 0,
                       workers: int = 1) -> list[ExperimentReport]:
    """Entangling power along the family (l1, x, x) for l1 fixed by `base`
    ("cnot" for pi/4, "pi8" for pi/8). Each sweep point draws from its
    own substream family (curve index = point index)."""
    l1 = {"cnot": math.pi / 4, "pi8": math.pi / 8}[base]
    reports = []
    for i, x in enumerate(xs):
        t0 = time.perf_counter()
        u = canonical_gate(l1, x, x)
        data = run_chunked(partial(kernel_entangling_power, u=u), samples,
                           seed, curve=i, workers=workers)
        ep, se = _mean_stderr(data["e"])
        reports.append(ExperimentReport(
            histogram=None,
            scalars={"x": float(x), "epsilon_p": ep, "epsilon_p_stderr": se},
            runtime_seconds=time.perf_counter() - t0,
            meta={"base": base, "x": float(x), "samples": samples, "seed": seed}))
    return reports


def cnot_mixed_distance(metric: str, samples: int, bins: int = DISTANCE_BINS,
                        seed: int = 0, workers: int = 1,
                        stream: int = 0) -> ExperimentReport:
    """Distance travelled by separable two-qubit mixed states under CNOT,
    split into the purity <= 1/3 ball (region I) and its complement."""
    t0 = time.perf_counter()
    data = run_chunked(partial(kernel_cnot_mixed, metric=metric), samples,
                       seed, curve=stream, workers=workers)
    hi = math.sqrt(2.0)
    meta = {"seed": seed, "metric": metric}
    hist = Histogram.empty(0.0, hi, bins, meta=meta)
    hist.add(data["d"])
    region1 = data["region1"]
    h1 = Histogram.empty(0.0, hi, bins, meta=dict(meta, region="I"))
    h1.add(data["d"][region1])
    h2 = Histogram.empty(0.0, hi, bins, meta=dict(meta, region="II"))
    h2.add(data["d"][~region1])
    mean_d, se_d = _mean_stderr(data["d"])
    p_acc = data["accepted"] / data["candidates"]
    scalars = {
        "mean_d": mean_d, "mean_d_stderr": se_d,
        "fraction_region1": float(region1.mean()),
        "acceptance_fraction": p_acc,
        "acceptance_fraction_stderr": math.sqrt(p_acc * (1.0 - p_acc) / data["candidates"]),
        "max_purity_drift": float(data["chunk_drift_max"].max()),
    }
    for label, mask in (("region1", region1), ("region2", ~region1)):
        if mask.any():
            m, se = _mean_stderr(data["d"][mask])
            scalars[f"mean_d_{label}"] = m
            scalars[f"mean_d_{label}_stderr"] = se
    if data["chunk_min_ppt_after"].size:
        scalars["min_ppt_after_region1"] = float(data["chunk_min_ppt_after"].min())
    return ExperimentReport(histogram=hist, scalars=scalars,
                            runtime_seconds=time.perf_counter() - t0,
                            curves={"region1": h1, "region2": h2},
                            meta={"metric": metric, "samples": samples, "seed": seed})


def dw_distribution(samples: int, bins: int = DW_BINS, seed: int = 0,
                    workers: int = 1, stream: int = 0) -> ExperimentReport:
    """Distribution of the monogamy residual over Haar three-qubit states."""
    t0 = time.perf_counter()
    data = run_chunked(kernel_dw, samples, seed, curve=stream, workers=workers)
    raw = data["dw_raw"]
    hist = Histogram.empty(0.0, 1.0, bins, meta={"seed": seed})
    hist.add(np.clip(raw, 0.0, 1.0))
    mean, se = _mean_stderr(raw)
    d = hist.densities()
    scalars = {
        "mean_dw": mean, "mean_dw_stderr": se,
        "min_dw_raw": float(raw.min()), "max_dw_raw": float(raw.max()),
        "mode_center": float(hist.bin_centers[int(d.argmax())]),
    }
    return ExperimentReport(histogram=hist, scalars=scalars,
                            runtime_seconds=time.perf_counter() - t0,
                            meta={"samples": samples, "seed": seed})


def multiqubit_delta_e(n: int, samples: int, bins: int = DELTA_E_BINS,
                       seed: int = 0, workers: int = 1,
                       stream: int = 0) -> ExperimentReport:
    """Entanglement change of the AB pair when CNOT acts on qubits (0, 1)
    of a Haar n-qubit pure state; for n = 3 the AC and BC pair histograms
    come along for free."""
    if n not in (2, 3, 4):
        raise ValueError("n must be 2, 3 or 4")
    t0 = time.perf_counter()
    data = run_chunked(partial(kernel_multiqubit_delta_e, n_qubits=n), samples,
                       seed, curve=stream, workers=workers)
    meta = {"seed": seed, "n_qubits": n}
    hist = Histogram.empty(-1.0, 1.0, bins, meta=dict(meta, pair="ab"))
    hist.add(data["ab"])
    mean, se = _mean_stderr(data["ab"])
    scalars = {"mean_delta_e": mean, "mean_delta_e_stderr": se}
    scalars.update(_width_scalars(hist))
    curves = {}
    for label in ("ac", "bc"):
        if label in data:
            h = Histogram.empty(-1.0, 1.0, bins, meta=dict(meta, pair=label))
            h.add(data[label])
            curves[label] = h
            scalars[f"width_{label}"] = width_half_height(h)
    return ExperimentReport(histogram=hist, scalars=scalars,
                            runtime_seconds=time.perf_counter() - t0,
                            curves=curves,
                            meta={"n_qubits": n, "samples": samples, "seed": seed})


def power_law_fit(n_values, widths) -> tuple[float, float]:
    """Least-squares fit of log W against log N; returns (alpha, r_squared)
    for the model W ~ N^(-alpha)."""
    n_values = np.asarray(n_values, dtype=float)
    widths = np.asarray(widths, dtype=float)
    if n_values.size < 3:
        raise NonPositiveWidth("need at least 3 points to fit")
    if (widths <= 0).any():
        raise NonPositiveWidth("widths must be positive")
    x = np.log(n_values)
    y = np.log(widths)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_res = float((resid ** 2).sum())
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(-slope), r2


def run_parallel(experiment: str, params: dict, workers: int, seed: int) -> ExperimentReport:
    """Dispatch an experiment by id with a given worker count and seed.

    The substream plan depends only on the sample count, so the merged
    counts are bit-identical for every worker count.
    """
    runners = {
        "delta_e": lambda p: delta_e_distribution(workers=workers, seed=seed, **p),
        "random_pair": lambda p: random_pair_distribution(workers=workers, seed=seed, **p),
        "entangling_power": lambda p: entangling_power(workers=workers, seed=seed, **p),
        "cnot_mixed": lambda p: cnot_mixed_distance(workers=workers, seed=seed, **p),
        "dw": lambda p: dw_distribution(workers=workers, seed=seed, **p),
        "multiqubit": lambda p: multiqubit_delta_e(workers=workers, seed=seed, **p),
    }
    if experiment not in runners:
        raise ValueError(f"unknown experiment {experiment!r}")
    return runners[experiment](dict(params))
