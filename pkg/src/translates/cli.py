"""Command line entry point: ``translates <experiment> [options]``.

Writes ``<experiment>.json`` and ``<experiment>.csv`` into ``--out`` (a
directory) or prints the JSON report to stdout.  Exit status: 0 when every
internal check passes, 1 when one fails, 2 on invalid input.
"""

import argparse
import os
import sys
from fractions import Fraction

from .experiments import ALIASES, EXPERIMENTS, ExperimentConfig, _load_toml, run_experiment

_FIELDS = ("p", "n", "N", "depth", "trials", "seed", "epsilon", "samples", "out", "base",
           "lambdas", "input")


def _number(text):
    """Integers stay integers, ``a/b`` and decimals become exact fractions."""
    try:
        return int(text)
    except ValueError:
        return Fraction(text)


def _lambdas(text):
    return [Fraction(x) for x in text.replace(";", ",").split(",") if x.strip()]


def build_parser():
    ap = argparse.ArgumentParser(prog="translates", description=__doc__.splitlines()[0])
    ap.add_argument("experiment", choices=sorted(list(EXPERIMENTS) + list(ALIASES)))
    ap.add_argument("--p", type=_number, help="exponent p >= 1")
    ap.add_argument("--n", type=int, help="size parameter (range of n, translates, grid points)")
    ap.add_argument("--N", type=int, help="truncation or witness range")
    ap.add_argument("--depth", type=int, help="dyadic or Rademacher depth")
    ap.add_argument("--trials", type=int, help="number of sampled trials")
    ap.add_argument("--seed", type=int, help="master seed")
    ap.add_argument("--epsilon", type=Fraction, help="tolerance for partition building")
    ap.add_argument("--samples", type=int, help="Monte Carlo samples per moment")
    ap.add_argument("--out", help="output directory for the JSON and CSV files")
    ap.add_argument("--base", help="base step function as 'lo hi value; ...' triples")
    ap.add_argument("--lambdas", type=_lambdas, help="comma separated translations")
    ap.add_argument("--input", help="input file (CSV for fit, TOML for span-distance)")
    ap.add_argument("--config", help="TOML file with the same keys plus a [tolerances] table")
    return ap


def load_config(args):
    values = {}
    if args.config:
        with open(args.config, "rb") as fh:
            data = _load_toml(fh)
        for key, val in data.items():
            if key == "tolerances" or key in _FIELDS:
                values[key] = val
            else:
                raise ValueError(f"unknown config key {key!r}")
        for key in ("p", "epsilon"):
            if isinstance(values.get(key), str):
                values[key] = _number(values[key])
        if "lambdas" in values:
            values["lambdas"] = [Fraction(str(x)) for x in values["lambdas"]]
    for key in _FIELDS:
        v = getattr(args, key)
        if v is not None:
            values[key] = v
    values.setdefault("seed", 0)
    return ExperimentConfig(experiment=args.experiment, **values)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        result = run_experiment(cfg)
    except (ValueError, KeyError, OSError) as exc:
        print(f"translates: error: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        os.makedirs(cfg.out, exist_ok=True)
        base = os.path.join(cfg.out, result.name)
        with open(base + ".json", "w") as fh:
            fh.write(result.to_json() + "\n")
        with open(base + ".csv", "w") as fh:
            fh.write(result.to_csv())
    else:
        print(result.to_json())
    for name, ok in sorted(result.checks.items()):
        print(f"{'PASS' if ok else 'FAIL'} {result.name}: {name}", file=sys.stderr)
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
