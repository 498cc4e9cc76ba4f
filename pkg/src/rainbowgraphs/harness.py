"""Seeded Monte Carlo experiments over the extraction/coupling pipeline.

Modes:
  lemma3   -- sample a coloured random digraph, run the flow extraction,
              record whether the flow reaches d*n.
  lemma4   -- run the binomial-truncation coupling, record k_max.
  pipeline -- extraction, per-vertex shuffle, truncation, orientation
              coalescing, then exact rainbow search for a target graph
              (n <= 16).
  sweep    -- any of the above across a parameter grid, with Wilson
              confidence intervals per grid point.

Every trial draws from a substream keyed by (master seed, trial index,
purpose tag), so records are identical whatever the execution order or
parallelism degree.  JSONL output is byte-stable for a fixed seed;
wall-clock timings are kept on the in-memory records but excluded from
serialisation for that reason.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .coupling import couple
from .flow import build_network, extract_via_permutation, max_flow
from .graphs import (
    coalesce_orientation,
    sample_coloured_digraph,
    split_probability,
)
from .rng import substream
from .search import EXACT_SEARCH_CAP, find_rainbow_copy_exact
from . import targets

MODES = ("lemma3", "lemma4", "pipeline")
SWEEP_AXES = ("p", "kappa", "d", "n")
TARGET_FAMILIES = ("grid", "hypercube", "cycle", "path", "matching", "tree")

_JSONL_FIELDS = (
    "trial",
    "seed",
    "mode",
    "success",
    "flow_value",
    "k_max",
    "inner_arc_count",
    "pipeline_verdict",
    "notes",
)


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    p: float
    kappa: int
    eps: float
    d: int
    trials: int
    seed: int
    mode: str
    target_family: str | None = None
    target_size: int | None = None
    sweep_axis: str | None = None
    sweep_values: tuple[float, ...] = ()
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.trials < 0:
            raise ValueError(f"need trials >= 0, got {self.trials}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p={self.p} outside [0, 1]")
        if self.kappa < 1:
            raise ValueError(f"need kappa >= 1, got {self.kappa}")
        if self.mode not in MODES and self.mode != "sweep":
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    mode: str
    success: bool
    flow_value: int | None = None
    k_max: int | None = None
    inner_arc_count: int | None = None
    pipeline_verdict: str | None = None
    notes: str = ""
    elapsed: float = 0.0  # not serialised: varies between identical runs

    def to_json(self) -> str:
        payload = {k: getattr(self, k) for k in _JSONL_FIELDS}
        return json.dumps(payload, separators=(",", ":"), sort_keys=False)


def build_target(family: str, size: int, seed: int) -> targets.TargetGraph:
    if family == "grid":
        return targets.make_grid(size)
    if family == "hypercube":
        return targets.make_hypercube(size)
    if family == "cycle":
        return targets.make_cycle(size)
    if family == "path":
        return targets.make_path(size)
    if family == "matching":
        return targets.make_matching(size)
    if family == "tree":
        return targets.random_tree(size, substream(seed, "target-tree"))
    raise ValueError(f"unknown target family {family!r}")


def _pad_target(h: targets.TargetGraph, n: int) -> targets.TargetGraph:
    """Pad a non-spanning target with isolated vertices so the spanning
    search applies."""
    if h.n_H > n:
        raise ValueError(f"target has {h.n_H} vertices but host has {n}")
    if h.n_H == n:
        return h
    return targets.TargetGraph(name=h.name, n_H=n, edges=h.edges)


def _lemma3_trial(config: ExperimentConfig, t: int) -> TrialRecord:
    start = time.perf_counter()
    rng = substream(config.seed, t, "lemma3")
    p1 = split_probability(config.p).p1
    dgr = sample_coloured_digraph(config.n, p1, config.kappa, rng)
    value, _ = max_flow(build_network(dgr, config.d))
    success = value == config.d * config.n
    return TrialRecord(
        trial=t,
        seed=config.seed,
        mode="lemma3",
        success=success,
        flow_value=value,
        elapsed=time.perf_counter() - start,
    )


def _lemma4_trial(config: ExperimentConfig, t: int) -> TrialRecord:
    start = time.perf_counter()
    rng = substream(config.seed, t, "lemma4")
    out = couple(config.n, config.d, config.p, config.eps, rng)
    return TrialRecord(
        trial=t,
        seed=config.seed,
        mode="lemma4",
        success=out.success,
        k_max=out.k_max,
        inner_arc_count=len(out.inner.arcs) if out.inner is not None else None,
        elapsed=time.perf_counter() - start,
    )


def _pipeline_trial(config: ExperimentConfig, t: int) -> TrialRecord:
    start = time.perf_counter()
    n, d = config.n, config.d
    p1 = split_probability(config.p).p1
    dgr = sample_coloured_digraph(
        n, p1, config.kappa, substream(config.seed, t, "pipe-sample")
    )
    rainbow = extract_via_permutation(
        dgr, d, substream(config.seed, t, "pipe-perm")
    )
    if rainbow is None:
        return TrialRecord(
            trial=t, seed=config.seed, mode="pipeline", success=False,
            flow_value=None, pipeline_verdict="extraction-failed",
            elapsed=time.perf_counter() - start,
        )
    # The deterministic flow decomposition imposes an arc order; a fresh
    # per-vertex shuffle restores exchangeability before truncation.
    shuffle_rng = substream(config.seed, t, "pipe-shuffle")
    by_tail = rainbow.digraph.arcs_by_tail()
    arcs = []
    for v in range(n):
        row = list(by_tail[v])
        shuffle_rng.shuffle(row)
        arcs.extend((v, h, c) for h, c in row)
    shuffled = type(rainbow.digraph)(
        n=n, kappa=rainbow.digraph.kappa, arcs=tuple(arcs)
    )
    p_inner = (2.0 - config.eps) * d / n
    if not 0.0 <= p_inner < 1.0:
        raise ValueError(
            f"(2-eps)d/n = {p_inner} is not a probability; reduce d or raise n"
        )
    p1_inner = split_probability(p_inner).p1
    trunc_rng = substream(config.seed, t, "pipe-truncate")
    counts = trunc_rng.binomial(n - 1, p1_inner, size=n)
    k_max = int(counts.max())
    if k_max > d:
        return TrialRecord(
            trial=t, seed=config.seed, mode="pipeline", success=False,
            flow_value=d * n, k_max=k_max, pipeline_verdict="coupling-failed",
            elapsed=time.perf_counter() - start,
        )
    by_tail = shuffled.arcs_by_tail()
    inner_arcs = tuple(
        (v, h, c) for v in range(n) for h, c in by_tail[v][: int(counts[v])]
    )
    inner = type(shuffled)(n=n, kappa=shuffled.kappa, arcs=inner_arcs)
    host = coalesce_orientation(inner, substream(config.seed, t, "pipe-coalesce"))
    h = _pad_target(
        build_target(config.target_family, config.target_size, config.seed), n
    )
    emb = find_rainbow_copy_exact(host, h)
    return TrialRecord(
        trial=t,
        seed=config.seed,
        mode="pipeline",
        success=emb is not None,
        flow_value=d * n,
        k_max=k_max,
        inner_arc_count=len(inner_arcs),
        pipeline_verdict="found" if emb is not None else "no-embedding",
        elapsed=time.perf_counter() - start,
    )


_TRIAL_FN = {
    "lemma3": _lemma3_trial,
    "lemma4": _lemma4_trial,
    "pipeline": _pipeline_trial,
}


def _run_one(args: tuple[ExperimentConfig, int]) -> TrialRecord:
    config, t = args
    return _TRIAL_FN[config.mode](config, t)


def run_trials(config: ExperimentConfig) -> list[TrialRecord]:
    """Run config.trials independent trials of the configured mode.

    Records come back ordered by trial index whatever the parallelism.
    """
    if config.mode not in _TRIAL_FN:
        raise ValueError(f"mode {config.mode!r} is not a trial mode")
    if config.mode == "pipeline":
        if config.target_family is None or config.target_size is None:
            raise ValueError("pipeline mode needs a target family and size")
        if config.n > EXACT_SEARCH_CAP:
            raise ValueError(
                f"pipeline needs n <= {EXACT_SEARCH_CAP}, got {config.n}"
            )
    work = [(config, t) for t in range(config.trials)]
    if config.jobs > 1 and config.trials > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            records = list(pool.map(_run_one, work))
    else:
        records = [_run_one(w) for w in work]
    return sorted(records, key=lambda r: r.trial)


run_lemma3 = run_trials
run_lemma4 = run_trials
run_pipeline = run_trials


def wilson_interval(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials == 0:
        return 0.0, 1.0
    phat = successes / trials
    denom = 1.0 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass(frozen=True)
class SweepPoint:
    point: float
    trials: int
    successes: int
    rate: float
    ci_lo: float
    ci_hi: float

    def to_csv_row(self) -> str:
        return (
            f"{self.point:g},{self.trials},{self.successes},"
            f"{self.rate:.6f},{self.ci_lo:.6f},{self.ci_hi:.6f}"
        )


@dataclass(frozen=True)
class SweepResult:
    records: list[TrialRecord]
    summary: list[SweepPoint]

    def to_csv(self) -> str:
        lines = ["point,trials,successes,rate,ci_lo,ci_hi"]
        lines.extend(p.to_csv_row() for p in self.summary)
        return "\n".join(lines) + "\n"


def run_sweep(config: ExperimentConfig, mode: str | None = None) -> SweepResult:
    """Run `mode` (default: the config's base mode) at every grid value of
    the sweep axis; each point reuses the same master seed with its own
    substreams via the changed parameter."""
    axis = config.sweep_axis
    if axis not in SWEEP_AXES:
        raise ValueError(f"sweep axis must be one of {SWEEP_AXES}, got {axis!r}")
    base_mode = mode or (config.mode if config.mode != "sweep" else None)
    if base_mode not in _TRIAL_FN:
        raise ValueError(f"sweep needs a trial mode, got {base_mode!r}")
    records: list[TrialRecord] = []
    summary: list[SweepPoint] = []
    for value in config.sweep_values:
        cast = float(value) if axis == "p" else int(value)
        point_config = replace(
            config, mode=base_mode, sweep_axis=None, sweep_values=(), **{axis: cast}
        )
        recs = run_trials(point_config)
        successes = sum(r.success for r in recs)
        lo, hi = wilson_interval(successes, len(recs))
        records.extend(recs)
        summary.append(
            SweepPoint(
                point=float(value),
                trials=len(recs),
                successes=successes,
                rate=successes / len(recs) if recs else 0.0,
                ci_lo=lo,
                ci_hi=hi,
            )
        )
    return SweepResult(records=records, summary=summary)


def records_to_jsonl(records: list[TrialRecord]) -> str:
    return "".join(r.to_json() + "\n" for r in records)
