import inspect


class ResultKeys:
    """Class that holds the column names of a result CSV row."""

    Trial = "trial"  # index of the trial, rows are written in this order
    Seed = "seed"  # seed spawned for the trial from the master seed
    Tester = "tester"

    Decision = "decision"  # "far" or "close", empty for estimators
    Estimate = "estimate"  # Ĥ for estimators, the decision statistic for testers
    Exact = "exact"  # the same statistic with exact amplitudes
    Ground_truth = "ground_truth"  # entropy or distance of the instance
    Expected = "expected"  # "far", "close" or empty when both are admissible
    Error = "error"  # |estimate - ground_truth| for estimators
    Success = "success"

    Queries = "queries"  # total oracle calls charged
    Trace = "trace"  # per-stage queries as JSON


# optional columns
BASELINE_PREFIX = "baseline_"
WALL_TIME = "wall_time"

CSV_SCHEMA_VERSION = 1

KEYS = [
    a[1]
    for a in inspect.getmembers(ResultKeys, lambda a: not (inspect.isroutine(a)))
    if not (a[0].startswith("__") and a[0].endswith("__"))
]

# column order of the CSV
COLUMNS = [
    ResultKeys.Trial,
    ResultKeys.Seed,
    ResultKeys.Tester,
    ResultKeys.Decision,
    ResultKeys.Estimate,
    ResultKeys.Exact,
    ResultKeys.Ground_truth,
    ResultKeys.Expected,
    ResultKeys.Error,
    ResultKeys.Success,
    ResultKeys.Queries,
    ResultKeys.Trace,
]

assert sorted(COLUMNS) == sorted(KEYS)
