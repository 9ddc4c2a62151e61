"""Command-line front end: `qdisttest <subcommand> [options]`."""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys

from qdisttest.ampest.circuit import ensure_validated
from qdisttest.poly.build import build_P, build_Q, build_S
from qdisttest.testers.identities import ensure_identities
from qdisttest.utils.errors import EXIT_CONFIG, EXIT_INVARIANT, EXIT_OK, InvariantError

from .config import ExperimentConfig, apply_overrides, load_config
from .run import run, scaling_sweep

# parameters of the selftest certification sweep
SELFTEST_T = (1.0, 2.0, 4.0)
SELFTEST_BETA = (0.5, 0.25)
SELFTEST_ETA = 0.1


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=str, default=None, help="experiment file (.json or .toml)")
    parser.add_argument("--seed", type=int, default=None, help="master seed")
    parser.add_argument("--mode", choices=["matrix", "semantic", "exact"], default=None)
    parser.add_argument("--out", type=str, default=None, help="CSV output path; the summary goes next to it")
    parser.add_argument("--trials", type=int, default=None)
    parser.add_argument("--eps", type=float, default=None)
    parser.add_argument("--nu", type=float, default=None)
    parser.add_argument("--kind", type=str, default=None, help="instance generator, e.g. dirichlet-random")
    parser.add_argument("--n", type=int, default=None, help="instance dimension")
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--timing", action="store_true", help="add a wall_time column")
    parser.add_argument("--bits", action="store_true", help="print entropies in bits")
    parser.add_argument(
        "--set", action="append", default=[], metavar="KEY=VALUE", help="override a config entry (dotted keys)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdisttest", description="Query-model distribution testers.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="estimate Shannon or von Neumann entropy")
    p.add_argument("--quantum", action="store_true")
    _common(p)
    p = sub.add_parser("l2test", help="robust l2 closeness")
    p.add_argument("--quantum", action="store_true")
    p.add_argument("--route", choices=["auto", "maximally_entangled", "swap"], default=None)
    _common(p)
    p = sub.add_parser("l1test", help="l1 closeness")
    _common(p)
    p = sub.add_parser("l3test", help="l3 closeness of density operators")
    _common(p)
    p = sub.add_parser("independence", help="independence of a distribution on [n]x[m]")
    p.add_argument("--factor", type=int, nargs=2, default=None, metavar=("N_A", "N_B"))
    _common(p)
    p = sub.add_parser("sweep", help="query scaling over a grid of n or eps")
    p.add_argument("--tester", type=str, default=None)
    p.add_argument("--param", choices=["n", "eps"], default=None)
    p.add_argument("--values", type=float, nargs="+", default=None)
    _common(p)

    p = sub.add_parser("poly", help="print a certified approximation polynomial")
    p.add_argument("which", choices=["S", "P", "Q"])
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--t", type=float, default=2.0)
    p.add_argument("--eta", type=float, default=0.1)
    sub.add_parser("selftest", help="run the build gates")
    return parser


def _tester(args: argparse.Namespace) -> str | None:
    if args.command == "entropy":
        return "entropy_quantum" if args.quantum else "entropy_classical"
    if args.command == "l2test":
        return "l2_quantum" if args.quantum else "l2_classical_robust"
    return {"l1test": "l1_closeness", "l3test": "l3_closeness", "independence": "independence"}.get(args.command)


def make_config(args: argparse.Namespace) -> ExperimentConfig:
    """Config file (or defaults), then subcommand and flags, then `--set`."""
    base = load_config(args.config) if args.config else None
    d = base.to_dict() if base is not None else {}
    tester = _tester(args) if args.command != "sweep" else args.tester
    if tester is not None:
        d["tester"] = tester
    flags = {
        "seed": args.seed,
        "mode": args.mode,
        "out": args.out,
        "trials": args.trials,
        "eps": args.eps,
        "nu": args.nu,
        "workers": args.workers,
        "route": getattr(args, "route", None),
        "factor": getattr(args, "factor", None),
    }
    d.update({k: v for k, v in flags.items() if v is not None})
    if args.timing:
        d["timing"] = True
    instance = dict(d.get("instance") or {"kind": "uniform", "n": 16})
    if args.kind is not None:
        instance = {"kind": args.kind, **{k: v for k, v in instance.items() if k == "n"}}
    if args.n is not None:
        instance["n"] = args.n
    d["instance"] = instance
    if args.command == "sweep" and (args.param is not None or args.values is not None):
        sweep = dict(d.get("sweep") or {})
        if args.param is not None:
            sweep["param"] = args.param
        if args.values is not None:
            sweep["values"] = [int(v) if sweep.get("param") == "n" else v for v in args.values]
        d["sweep"] = sweep
    return apply_overrides(ExperimentConfig.from_dict(d), args.set)


def _in_bits(summary: dict) -> dict:
    out = dict(summary)
    out["ground_truth"] = summary["ground_truth"] / math.log(2.0)
    if summary.get("error") is not None:
        out["error"] = {k: v / math.log(2.0) for k, v in summary["error"].items()}
    if summary.get("estimate") is not None:
        out["estimate"] = {k: v / math.log(2.0) for k, v in summary["estimate"].items()}
    out["unit"] = "bits"
    return out


def selftest() -> dict:
    """AE circuit validation, the symbolic identities and a small
    certification sweep."""
    report: dict = {"ae_circuit_tv": ensure_validated()}
    ensure_identities()
    report["identities"] = "ok"
    certs = []
    for t in SELFTEST_T:
        certs.append(("P", t, build_P(t, SELFTEST_ETA)))
        for beta in SELFTEST_BETA:
            certs.append(("Q", t, build_Q(t, beta, SELFTEST_ETA)))
    for beta in SELFTEST_BETA:
        certs.append(("S", beta, build_S(beta, SELFTEST_ETA)))
    for name, param, poly in certs:
        if not poly.is_certified:
            raise InvariantError(f"{name}({param}) failed certification: {poly.certificate.failures()}")  # type: ignore
    report["certified"] = [{"poly": name, "param": param, "degree": poly.degree} for name, param, poly in certs]
    return report


def _poly(args: argparse.Namespace) -> dict:
    if args.which == "S":
        return build_S(args.beta, args.eta).to_dict()
    if args.which == "P":
        return build_P(args.t, args.eta).to_dict()
    return build_Q(args.t, args.beta, args.eta).to_dict()


def _print(obj: dict) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "selftest":
            _print(selftest())
        elif args.command == "poly":
            _print(_poly(args))
        elif args.command == "sweep":
            _print(scaling_sweep(make_config(args)))
        else:
            config = make_config(args)
            _, summary = run(config)
            _print(_in_bits(summary) if args.bits and config.tester_name.startswith("entropy") else summary)
    except InvariantError as e:
        logging.error(str(e))
        return EXIT_INVARIANT
    except ValueError as e:
        # ConfigError and invalid parameters rejected by the library
        logging.error(str(e))
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
