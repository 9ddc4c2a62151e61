from __future__ import annotations

import csv
import dataclasses
import json
import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import jsonschema
import numpy as np
from scipy.stats import binomtest, linregress

from qdisttest.baselines.sampling import BASELINES, SampleBudget
from qdisttest.core.functional import schatten_distance, shannon_entropy, von_neumann_entropy
from qdisttest.core.generate import generate
from qdisttest.core.io import load_distribution
from qdisttest.core.linalg import MAX_MATRIX_DIM
from qdisttest.core.states import ClassicalDistribution, DensityOperator
from qdisttest.oracles.derived import product_oracle
from qdisttest.oracles.oracle import PurifiedOracle, purify_classical, purify_density
from qdisttest.testers import MATRIX_MAX_N, BinSchedule, EntropySchedule, TesterVerdict
from qdisttest.utils.errors import ConfigError, InvariantError
from qdisttest.utils.resolve import tester_resolver

from .config import TWO_SAMPLE, ExperimentConfig
from .keys import BASELINE_PREFIX, COLUMNS, CSV_SCHEMA_VERSION, WALL_TIME, ResultKeys

SCHEMA_PATH = Path(__file__).parent / "schema" / "summary.schema.json"
# distances at most this are treated as identical instances
CLOSE_ATOL = 1e-12
CONFIDENCE = 0.95

Instance = ClassicalDistribution | DensityOperator


def build_instance(spec: dict, as_density: bool = False) -> Instance:
    """Instance from a generator spec, e.g. `{"kind": "zipf", "n": 8}`, or
    from a distribution file, `{"kind": "file", "path": "p.json"}`."""
    kwargs = {k: v for k, v in spec.items() if k != "kind"}
    try:
        if spec["kind"] == "file":
            x = load_distribution(kwargs["path"])
            return x.as_density() if as_density and isinstance(x, ClassicalDistribution) else x
        return generate(spec["kind"], as_density=as_density, **kwargs)
    except KeyError as e:
        raise ConfigError(f"cannot build instance {spec}: missing {e}")
    except (OSError, TypeError, ValueError) as e:
        raise ConfigError(f"cannot build instance {spec}: {e}")


def build_oracle(x: Instance) -> PurifiedOracle:
    """Fresh oracle, with its own query counter, for an instance."""
    if isinstance(x, ClassicalDistribution):
        return purify_classical(x)
    return purify_density(x)


def instances(config: ExperimentConfig) -> tuple[Instance, Instance | None]:
    name = config.tester_name
    x = build_instance(config.instance, as_density=name == "entropy_quantum")
    if name == "entropy_classical" and not isinstance(x, ClassicalDistribution):
        raise ConfigError(f"entropy_classical needs a classical instance, got {config.instance}.")
    y = None
    if name in TWO_SAMPLE:
        y = build_instance(config.other if config.other is not None else config.instance)
        if y.n != x.n:
            raise ConfigError(f"instances live on n={x.n} and n={y.n}.")
    if name == "independence" and int(np.prod(config.factor)) != x.n:
        raise ConfigError(f"factor={config.factor} does not factor n={x.n}.")
    return x, y


def check_matrix_size(config: ExperimentConfig, x: Instance) -> None:
    """Matrix mode refuses instances whose encodings exceed the caps."""
    if config.mode != "matrix":
        return
    name = config.tester_name
    if x.n > MATRIX_MAX_N:
        logging.warning(f"matrix mode refused for n={x.n}")
        raise ConfigError(f"matrix mode supports n <= {MATRIX_MAX_N}, got n={x.n}.")
    o = build_oracle(x)
    d_a, n = o.d_a, o.n
    if name == "independence":
        d_a = product_oracle(o, *config.factor).d_a
    # mixtures and half differences add a qubit to the widest ancilla
    dim = d_a * n * n * (1 if name.startswith("entropy") else 2)
    if dim > MAX_MATRIX_DIM:
        logging.warning(f"matrix mode refused for encoding dimension {dim}")
        raise ConfigError(f"matrix mode supports encodings of dimension <= {MAX_MATRIX_DIM}, got {dim}.")


def ground_truth(config: ExperimentConfig, x: Instance, y: Instance | None) -> tuple[float, str]:
    """Entropy or distance of the instance, and the verdict a correct
    tester must give ("" when both are admissible)."""
    name = config.tester_name
    if name == "entropy_classical":
        return shannon_entropy(x), ""  # type: ignore
    if name == "entropy_quantum":
        return von_neumann_entropy(x), ""  # type: ignore
    if name == "independence":
        prod = product_oracle(build_oracle(x), *config.factor).source
        d = schatten_distance(x, prod, 1.0)
    else:
        alpha = {"l2_classical_robust": 2.0, "l2_quantum": 2.0, "l3_closeness": 3.0, "l1_closeness": 1.0}[name]
        d = schatten_distance(x, y, alpha)  # type: ignore
    if d >= config.eps:
        return d, "far"
    if name.startswith("l2") and d <= (1.0 - config.nu) * config.eps:
        return d, "close"
    return d, "close" if d <= CLOSE_ATOL else ""


def trial_seeds(seed: int, trials: int) -> list[int]:
    """Independent per-trial seeds spawned from the master seed."""
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(trials)]


def call_tester(config: ExperimentConfig, x: Instance, y: Instance | None, seed: int) -> TesterVerdict:
    name = config.tester_name
    fn = tester_resolver(name)
    o = build_oracle(x)
    if name.startswith("entropy"):
        return fn(o, config.eps, seed, config.mode)
    if name == "independence":
        return fn(o, *config.factor, config.eps, seed, config.mode)
    o2 = build_oracle(y)  # type: ignore
    if name == "l2_classical_robust":
        return fn(o, o2, config.eps, config.nu, seed, config.mode)
    if name == "l2_quantum":
        return fn(o, o2, config.eps, config.nu, seed, config.mode, config.route)
    return fn(o, o2, config.eps, seed, config.mode)


def baseline_value(config: ExperimentConfig, x: Instance, y: Instance | None, seed: int) -> float:
    kind = config.baseline["kind"]  # type: ignore
    budget = SampleBudget(int(config.baseline["samples"]), seed)  # type: ignore
    if kind == "plugin_entropy":
        # sampling in the eigenbasis for density instances
        p = x if isinstance(x, ClassicalDistribution) else ClassicalDistribution(x.spectrum / x.spectrum.sum())
        return BASELINES[kind](p, budget)
    if not (isinstance(x, ClassicalDistribution) and isinstance(y, ClassicalDistribution)):
        raise ConfigError("the collision_l2 baseline needs two classical instances.")
    return BASELINES[kind](x, y, budget)


def columns(config: ExperimentConfig) -> list[str]:
    out = list(COLUMNS)
    if config.baseline is not None:
        out.append(BASELINE_PREFIX + config.baseline["kind"])
    if config.timing:
        out.append(WALL_TIME)
    return out


def run_trial(
    config: ExperimentConfig, x: Instance, y: Instance | None, truth: tuple[float, str], trial: int, seed: int
) -> dict:
    start = time.perf_counter()
    v = call_tester(config, x, y, seed)
    value, expected = truth
    row = {
        ResultKeys.Trial: trial,
        ResultKeys.Seed: seed,
        ResultKeys.Tester: v.tester,
        ResultKeys.Decision: v.decision or "",
        ResultKeys.Estimate: v.estimate,
        ResultKeys.Exact: v.exact,
        ResultKeys.Ground_truth: value,
        ResultKeys.Expected: expected,
        ResultKeys.Queries: v.queries,
        ResultKeys.Trace: json.dumps([s.to_dict() for s in v.trace], sort_keys=True),
    }
    if v.decision is None:
        error = abs(v.estimate - value)  # type: ignore
        row[ResultKeys.Error] = error
        row[ResultKeys.Success] = int(error <= config.eps)
    else:
        row[ResultKeys.Error] = ""
        row[ResultKeys.Success] = int(expected == "" or v.decision == expected)
    if config.baseline is not None:
        row[BASELINE_PREFIX + config.baseline["kind"]] = baseline_value(config, x, y, seed)
    if config.timing:
        row[WALL_TIME] = time.perf_counter() - start
    return row


def summarize(config: ExperimentConfig, rows: list[dict], truth: tuple[float, str]) -> dict:
    trials = len(rows)
    successes = sum(int(r[ResultKeys.Success]) for r in rows)
    ci = binomtest(successes, trials).proportion_ci(confidence_level=CONFIDENCE, method="wilson")
    queries = np.array([r[ResultKeys.Queries] for r in rows], dtype=np.float64)
    q = np.percentile(queries, [0, 25, 50, 75, 100])
    errors = [r[ResultKeys.Error] for r in rows if r[ResultKeys.Error] != ""]
    summary = {
        "csv_schema": {"version": CSV_SCHEMA_VERSION, "columns": columns(config)},
        "tester": config.tester_name,
        "mode": config.mode,
        "trials": trials,
        "seed": config.seed,
        "ground_truth": truth[0],
        "expected": truth[1],
        "success": {
            "count": successes,
            "rate": successes / trials,
            "wilson_low": float(ci.low),
            "wilson_high": float(ci.high),
            "confidence": CONFIDENCE,
        },
        "queries": {
            "min": float(q[0]),
            "p25": float(q[1]),
            "median": float(q[2]),
            "p75": float(q[3]),
            "max": float(q[4]),
            "mean": float(queries.mean()),
        },
        "error": {"mean": float(np.mean(errors)), "max": float(np.max(errors))} if errors else None,
        "config": config.to_dict(),
    }
    if errors:
        estimates = [float(r[ResultKeys.Estimate]) for r in rows]
        summary["estimate"] = {"mean": float(np.mean(estimates)), "median": float(np.median(estimates))}
    if config.baseline is not None:
        key = BASELINE_PREFIX + config.baseline["kind"]
        summary[key] = {"samples": int(config.baseline["samples"]), "mean": float(np.mean([r[key] for r in rows]))}
    return summary


def validate_summary(summary: dict) -> None:
    with open(SCHEMA_PATH) as f:
        schema = json.load(f)
    try:
        jsonschema.validate(summary, schema)
    except jsonschema.ValidationError as e:
        raise InvariantError(f"summary does not match {SCHEMA_PATH.name}: {e.message}")


def write_csv(path: str | os.PathLike, fieldnames: list[str], rows: list[dict]) -> None:
    with open(path, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=fieldnames, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r)


def write_json(path: str | os.PathLike, obj: dict) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def summary_path(out: str | os.PathLike) -> Path:
    p = Path(out)
    return p.with_name(p.stem + ".summary.json")


def run(config: ExperimentConfig) -> tuple[list[dict], dict]:
    """Run `config.trials` seeded trials and, when `config.out` is set,
    write the rows as CSV and the summary next to it.

    Trials go to a thread pool; rows come back in trial order, so the
    output only depends on the config and the master seed.
    """
    x, y = instances(config)
    check_matrix_size(config, x)
    truth = ground_truth(config, x, y)
    seeds = trial_seeds(config.seed, config.trials)
    logging.info(f"running {config.tester_name} x {config.trials} in {config.mode} mode, truth={truth[0]:.6g}")
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        rows = list(pool.map(lambda i: run_trial(config, x, y, truth, i, seeds[i]), range(config.trials)))
    summary = summarize(config, rows, truth)
    validate_summary(summary)
    if config.out is not None:
        write_csv(config.out, columns(config), rows)
        write_json(summary_path(config.out), summary)
    return rows, summary


def polylog_factor(tester: str, n: int, eps: float, nu: float = 0.5) -> float:
    """Logarithmic factor of the predicted query count at (n, ε), divided
    out before fitting normalized slopes."""
    if tester in ("entropy_classical", "entropy_quantum"):
        m = n if tester == "entropy_quantum" else 1
        s = EntropySchedule(eps, n, m)
        return math.sqrt(math.log(n * m / eps)) * math.log(2.0 / s.beta) * math.log(1.0 / s.eta)
    if tester in ("l2_classical_robust", "l1_closeness", "independence"):
        if tester != "l2_classical_robust":
            eps, nu = eps / math.sqrt(n), 0.5
        b = BinSchedule(eps, nu)
        return b.size**2 * (b.bin_repetitions + math.log(1.0 / b.theta))
    return 1.0


def scaling_sweep(config: ExperimentConfig) -> dict:
    """Median query count over the grid `config.sweep` and the log-log
    slopes against the swept parameter, raw and after dividing out
    `polylog_factor`. Writes the grid as CSV when `config.out` is set."""
    if config.sweep is None:
        raise ConfigError("scaling_sweep requires a sweep table.")
    param, values = config.sweep["param"], list(config.sweep["values"])
    name = config.tester_name
    points = []
    for v in values:
        changes: dict = {"sweep": None, "out": None}
        if param == "n":
            changes["instance"] = {**config.instance, "n": int(v)}
            if config.other is not None:
                changes["other"] = {**config.other, "n": int(v)}
        else:
            changes["eps"] = float(v)
        point = dataclasses.replace(config, **changes)
        _, summary = run(point)
        n = build_instance(point.instance).n
        median = summary["queries"]["median"]
        factor = polylog_factor(name, n, point.eps, point.nu)
        points.append(
            {
                param: v,
                "median_queries": median,
                "normalized_queries": median / factor,
                "success_rate": summary["success"]["rate"],
            }
        )
    xs = np.log(np.asarray(values, dtype=np.float64))
    raw = linregress(xs, np.log([p["median_queries"] for p in points]))
    normalized = linregress(xs, np.log([p["normalized_queries"] for p in points]))
    result = {
        "tester": name,
        "param": param,
        "points": points,
        "slope_raw": float(raw.slope),
        "slope_normalized": float(normalized.slope),
    }
    logging.info(f"{name} sweep over {param}: slope {raw.slope:.3f}, normalized {normalized.slope:.3f}")
    if config.out is not None:
        write_csv(config.out, [param, "median_queries", "normalized_queries", "success_rate"], points)
        write_json(summary_path(config.out), result)
    return result
