"""Command line interface.

Subcommands::

    fairloop run <config.json> [--seed N] [--out DIR] [--override k=v ...]
                               [--jobs N]
    fairloop rank --relevance r.csv --groups g.csv [--constraint KIND]
                  [--epsilon E[,E...]] [--pi W,W,...] [--user-weights W,...]
                  [--seed N] [--out DIR]
    fairloop list-experiments

Exit codes: 0 success, 2 configuration error, 3 infeasible optimization,
4 numerical failure. Errors print one machine-parsable line on stderr:
``error: <kind>: <detail>``.

A config file is a strict-schema JSON object::

    {"experiment": "tradeoff", "seed": 7, "out_dir": "out",
     "params": { ...experiment-specific keys... }}

Unknown keys anywhere are rejected. Every run writes ``manifest.json``
echoing the fully resolved config (defaults applied, seed included),
the package version, timestamps, and a content digest per output file;
feeding a manifest back to ``run`` reproduces the outputs byte for
byte. ``--out`` takes precedence over the FAIRLOOP_OUT environment
variable, which takes precedence over the config's ``out_dir``.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys
from pathlib import Path

from . import __version__
from .defaults import DEFAULTS_VERSION, defaults_for
from .errors import (ConfigError, DecompositionError, DegenerateGroupError,
                     FairloopError, InfeasibleError, SchemaError)
from .experiments import EXPERIMENT_DESCRIPTIONS, RUNNERS
from .io_utils import sha256_of, write_json

_DEFAULT_SEED = 0


def _parse_override_value(raw: str):
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def apply_overrides(config: dict, overrides: list[str]) -> dict:
    """Apply ``key=value`` overrides; bare keys fall through to params."""
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        key, raw = item.split("=", 1)
        value = _parse_override_value(raw)
        path = key.split(".")
        top_level = {"experiment", "seed", "out_dir"}
        if len(path) == 1 and key not in top_level:
            path = ["params", key]
        target = config
        for part in path[:-1]:
            target = target.setdefault(part, {})
            if not isinstance(target, dict):
                raise ConfigError(f"override path {key!r} crosses a non-object")
        target[path[-1]] = value
    return config


def resolve_config(config: dict) -> dict:
    """Validate strictly and fill defaults; returns the resolved config."""
    if not isinstance(config, dict):
        raise ConfigError("config must be a JSON object")
    if "config" in config and "experiment" not in config:
        config = config["config"]  # accept a manifest back as input
    allowed_top = {"experiment", "seed", "params", "out_dir", "defaults_version"}
    unknown = set(config) - allowed_top
    if unknown:
        raise ConfigError(f"unknown config key {sorted(unknown)[0]!r}")
    experiment = config.get("experiment")
    if experiment not in RUNNERS:
        raise ConfigError(f"unknown experiment {experiment!r}; "
                          f"choose from {sorted(RUNNERS)}")
    params = defaults_for(experiment)
    given = config.get("params", {})
    if not isinstance(given, dict):
        raise ConfigError("params must be an object")
    unknown = set(given) - set(params)
    if unknown:
        raise ConfigError(f"unknown params key {sorted(unknown)[0]!r} "
                          f"for experiment {experiment!r}")
    params.update(given)
    seed = config.get("seed", _DEFAULT_SEED)
    if not isinstance(seed, int) or seed < 0 or seed >= 2 ** 64:
        raise ConfigError("seed must be a 64-bit unsigned integer")
    return {"experiment": experiment, "seed": seed, "params": params,
            "out_dir": config.get("out_dir", "out"),
            "defaults_version": DEFAULTS_VERSION}


def run_experiment(config: dict, out_dir: Path, jobs: int = 1) -> tuple[Path, dict]:
    """Execute a resolved config; write outputs and the manifest."""
    started = _dt.datetime.now(_dt.timezone.utc).isoformat()
    runner = RUNNERS[config["experiment"]]
    files, summary = runner(config["params"], out_dir, config["seed"], jobs=jobs)
    finished = _dt.datetime.now(_dt.timezone.utc).isoformat()
    manifest = {
        "config": config,
        "artifact_version": __version__,
        "started": started,
        "finished": finished,
        "outputs": [{"path": f.name, "sha256": sha256_of(f)} for f in files],
        "summary": summary,
    }
    manifest_path = write_json(out_dir / "manifest.json", manifest)
    return manifest_path, manifest


def _resolve_out_dir(cli_out: str | None, config_out: str) -> Path:
    if cli_out:
        return Path(cli_out)
    env = os.environ.get("FAIRLOOP_OUT")
    if env:
        return Path(env)
    return Path(config_out)


def _cmd_run(args) -> int:
    config_path = args.config_flag or args.config
    if not config_path:
        raise ConfigError("a config path is required (positional or --config)")
    with open(config_path) as fh:
        raw = json.load(fh)
    raw = apply_overrides(raw if isinstance(raw, dict) else {}, args.override)
    config = resolve_config(raw)
    if args.seed is not None:
        config["seed"] = args.seed
    out_dir = _resolve_out_dir(args.out, config["out_dir"])
    config["out_dir"] = str(out_dir)
    manifest_path, manifest = run_experiment(config, out_dir,
                                             jobs=max(1, args.jobs))
    print(f"wrote {len(manifest['outputs'])} file(s) to {out_dir} "
          f"(manifest: {manifest_path})")
    return 0


def _cmd_rank(args) -> int:
    params = defaults_for("rank")
    params["relevance_csv"] = args.relevance
    params["groups_csv"] = args.groups
    params["constraint"] = args.constraint
    if args.epsilon:
        params["epsilon"] = [float(v) for v in args.epsilon.split(",")]
    if args.pi:
        params["pi"] = [float(v) for v in args.pi.split(",")]
    if args.user_weights:
        params["user_weights"] = [float(v) for v in args.user_weights.split(",")]
    config = {"experiment": "rank", "seed": args.seed or _DEFAULT_SEED,
              "params": params, "out_dir": args.out or "out"}
    config = resolve_config(config)
    config["params"].update(params)
    out_dir = _resolve_out_dir(args.out, config["out_dir"])
    _, manifest = run_experiment(config, out_dir)
    print(json.dumps(manifest["summary"], indent=2, sort_keys=True))
    return 0


def _cmd_list(_args) -> int:
    for name in sorted(EXPERIMENT_DESCRIPTIONS):
        print(f"{name:12s} {EXPERIMENT_DESCRIPTIONS[name]}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairloop",
        description="Deterministic fairness experiments for recommender feedback loops.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment from a JSON config")
    p_run.add_argument("config", nargs="?", default=None,
                       help="path to a config (or manifest) JSON file")
    p_run.add_argument("--config", dest="config_flag", default=None,
                       help="alternative to the positional config path")
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--out", default=None, help="output directory")
    p_run.add_argument("--override", action="append", default=[],
                       metavar="KEY=VALUE", help="override a config entry (repeatable)")
    p_run.add_argument("--jobs", type=int, default=1,
                       help="worker threads for embarrassingly parallel steps")
    p_run.set_defaults(func=_cmd_run)

    p_rank = sub.add_parser("rank", help="fairness-constrained ranking from CSVs")
    p_rank.add_argument("--relevance", required=True)
    p_rank.add_argument("--groups", required=True)
    p_rank.add_argument("--constraint", default="exposure_floor",
                        choices=["exposure_floor", "impact_floor",
                                 "opportunity_floor", "exposure_equal"])
    p_rank.add_argument("--epsilon", default=None,
                        help="per-group floor(s), comma separated or a single value")
    p_rank.add_argument("--pi", default=None,
                        help="explicit position weights, comma separated")
    p_rank.add_argument("--user-weights", default=None,
                        help="per-user weights, comma separated")
    p_rank.add_argument("--seed", type=int, default=None)
    p_rank.add_argument("--out", default=None)
    p_rank.set_defaults(func=_cmd_rank)

    p_list = sub.add_parser("list-experiments", help="list runnable experiments")
    p_list.set_defaults(func=_cmd_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, SchemaError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 2
    except InfeasibleError as exc:
        print(f"error: infeasible: {exc}", file=sys.stderr)
        return 3
    except (DegenerateGroupError, DecompositionError, FairloopError,
            FloatingPointError) as exc:
        print(f"error: numerical: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
