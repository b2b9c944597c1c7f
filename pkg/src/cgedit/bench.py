"""Benchmark harness: planted instances, every requested solver, one CSV row each."""

from __future__ import annotations

import csv
import statistics
import sys
import time
from collections.abc import Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .cograph import is_cograph
from .editing import METHODS, edit, heuristic_edit
from .editing.oracle import SINGLE_BOUND
from .generate import generate_perturbed_cograph, gnp


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class BenchRecord:
    instance: str
    n: int
    k: int
    method: str
    cost: int
    runtime: float
    recovered_exactly: bool


CSV_FIELDS = tuple(f.name for f in fields(BenchRecord))


@dataclass(frozen=True)
class BenchConfig:
    sizes: tuple[int, ...]
    ks: tuple[int, ...]
    methods: tuple[str, ...] = ("greedy",)
    reps: int = 1
    seed: int = 0
    workers: int = 1
    verify: bool = True
    scaling_sizes: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.sizes:
            raise ConfigError("sizes must not be empty")
        if not self.ks:
            raise ConfigError("ks must not be empty")
        for n in self.sizes:
            if n < 1:
                raise ConfigError(f"sizes must be positive, got {n}")
            for k in self.ks:
                if not 0 <= k <= n * (n - 1) // 2:
                    raise ConfigError(f"k={k} out of range for n={n}")
        for m in self.methods:
            if m not in METHODS:
                raise ConfigError(f"unknown method {m!r}; expected one of {', '.join(METHODS)}")
        if "bruteforce" in self.methods and max(self.sizes) > SINGLE_BOUND:
            raise ConfigError(f"bruteforce needs every size <= {SINGLE_BOUND}, got {max(self.sizes)}")
        if self.reps < 1:
            raise ConfigError("reps must be at least 1")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")


_KEYS = {"sizes": "sizes", "n": "sizes", "ks": "ks", "k": "ks", "methods": "methods",
         "reps": "reps", "seed": "seed", "workers": "workers", "verify": "verify",
         "scaling_sizes": "scaling_sizes"}


def config_from_mapping(data: dict) -> BenchConfig:
    kwargs = {}
    for key, value in data.items():
        if key not in _KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        name = _KEYS[key]
        if name in ("sizes", "ks", "methods", "scaling_sizes"):
            value = tuple(value) if isinstance(value, (list, tuple)) else (value,)
        kwargs[name] = value
    try:
        return BenchConfig(**kwargs)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path: str) -> BenchConfig:
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from None
    return config_from_mapping(data)


def instance_seed(seed: int, n: int, k: int, rep: int) -> int:
    return int(np.random.SeedSequence([seed, n, k, rep]).generate_state(1)[0])


def _run_instance(args: tuple[str, int, int, int, tuple[str, ...], bool]) -> list[BenchRecord]:
    name, n, k, iseed, methods, verify = args
    inst = generate_perturbed_cograph(n, k, iseed)
    out = []
    for method in methods:
        t0 = time.perf_counter()
        r = edit(inst.graph, method, seed=iseed)
        dt = time.perf_counter() - t0
        if verify and not is_cograph(r.result_graph):
            raise AssertionError(f"{method} on {name} did not produce a cograph")
        out.append(BenchRecord(name, n, k, method, r.cost, dt, r.result_graph == inst.cograph))
    return out


def run_benchmark(config: BenchConfig) -> Iterator[BenchRecord]:
    """Records in a fixed order: sizes, then ks, then repetitions, then methods."""
    jobs = [(f"n{n}-k{k}-r{rep}", n, k, instance_seed(config.seed, n, k, rep), config.methods, config.verify)
            for n in config.sizes for k in config.ks for rep in range(config.reps)]
    if config.workers == 1:
        for job in jobs:
            yield from _run_instance(job)
        return
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        for recs in pool.map(_run_instance, jobs):
            yield from recs


def write_csv(records: Iterable[BenchRecord], stream) -> list[BenchRecord]:
    w = csv.DictWriter(stream, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    kept = []
    for r in records:
        row = asdict(r)
        row["runtime"] = f"{r.runtime:.6f}"
        row["recovered_exactly"] = int(r.recovered_exactly)
        w.writerow(row)
        kept.append(r)
    return kept


def read_csv(stream) -> list[BenchRecord]:
    rd = csv.DictReader(stream)
    if tuple(rd.fieldnames or ()) != CSV_FIELDS:
        raise ValueError(f"unexpected CSV header {rd.fieldnames}")
    return [BenchRecord(row["instance"], int(row["n"]), int(row["k"]), row["method"], int(row["cost"]),
                        float(row["runtime"]), row["recovered_exactly"] == "1") for row in rd]


def summary(records: Iterable[BenchRecord]) -> dict[str, float]:
    by: dict[str, list[int]] = {}
    for r in records:
        by.setdefault(r.method, []).append(r.cost)
    return {m: statistics.fmean(c) for m, c in by.items()}


@dataclass(frozen=True)
class ScalingRow:
    n: int
    decomposition: float
    editing: float


def scaling_table(sizes: Iterable[int], reps: int = 3, seed: int = 0, p: float = 0.5) -> list[ScalingRow]:
    """Median greedy phase times on G(n, p) graphs, decomposition timed apart from editing."""
    rows = []
    for n in sizes:
        dec, ed = [], []
        for rep in range(reps):
            g = gnp(n, p, np.random.default_rng(instance_seed(seed, n, 0, rep)))
            t: dict = {}
            heuristic_edit(g, timings=t)
            dec.append(t["decomposition"])
            ed.append(t["editing"])
        rows.append(ScalingRow(n, statistics.median(dec), statistics.median(ed)))
    return rows


def format_scaling(rows: list[ScalingRow]) -> str:
    lines = [f"{'n':>6} {'decomp_s':>10} {'edit_s':>10} {'edit_ratio':>10}"]
    prev = None
    for r in rows:
        ratio = f"{r.editing / prev.editing:10.2f}" if prev and prev.editing > 0 else f"{'':>10}"
        lines.append(f"{r.n:>6} {r.decomposition:>10.4f} {r.editing:>10.4f} {ratio}")
        prev = r
    return "\n".join(lines)
