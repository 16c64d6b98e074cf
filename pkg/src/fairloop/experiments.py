"""Experiment runners behind the command line interface.

Each runner takes a fully resolved parameter dict (see
:mod:`fairloop.defaults`), an output directory, and a seed, writes its
CSV/JSON outputs, and returns the list of written files plus a small
summary. Given identical parameters and seed, outputs are byte
identical.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from . import controller as ctrl
from . import creators, defaults, longterm, opinions, population
from .core import GroupPartition, PositionWeights, dcg_weights
from .errors import ConfigError
from .io_utils import (load_groups_csv, load_relevance_csv,
                       load_relevance_stream_csv, write_csv, write_json)
from .ranking import FairnessConstraintKind, fair_rank
from .rng import RandomSource


def run_opinion(params: dict, out_dir: Path, seed: int,
                jobs: int = 1) -> tuple[list[Path], dict]:
    sim_params = opinions.OpinionParams(
        alpha=params["alpha"], epsilon=params["epsilon"],
        n_users=params["n_users"], horizon=params["horizon"],
        group_splits=tuple((f, tuple(rng)) for f, rng in params["group_splits"]))
    traj = opinions.run_opinion_sim(sim_params, RandomSource(seed))

    # engagement belongs to the step that produced state t (blank at t=0)
    rows = []
    for t in range(traj.opinions.shape[0]):
        for u in range(traj.opinions.shape[1]):
            eng = "" if t == 0 else traj.engagements[t - 1, u]
            rows.append((t, u, traj.opinions[t, u], eng))
    f1 = write_csv(out_dir / "opinion_trajectories.csv",
                   ["t", "user_id", "x", "engagement"], rows)
    mean_eng = traj.mean_engagement
    f2 = write_csv(out_dir / "opinion_summary.csv",
                   ["t", "mean_engagement", "polarization"],
                   [(t, "" if t == 0 else mean_eng[t - 1],
                     traj.polarization[t])
                    for t in range(traj.opinions.shape[0])])
    summary = {"final_polarization": traj.polarization[-1],
               "time_averaged_engagement": traj.time_averaged_engagement}
    return [f1, f2], summary


def run_tradeoff(params: dict, out_dir: Path, seed: int,
                 jobs: int = 1) -> tuple[list[Path], dict]:
    rows = opinions.tradeoff_sweep(
        params["epsilon_grid"], RandomSource(seed),
        n_users=params["n_users"], horizon=params["horizon"],
        trials=params["trials"], alpha=params["alpha"],
        group_splits=tuple((f, tuple(r)) for f, r in params["group_splits"]),
        jobs=jobs)
    path = write_csv(out_dir / "tradeoff.csv",
                     ["epsilon", "mean_eng", "sd_eng", "mean_pol", "sd_pol"],
                     [(r["epsilon"], r["mean_engagement"], r["sd_engagement"],
                       r["mean_polarization"], r["sd_polarization"]) for r in rows])
    return [path], {"n_epsilon": len(rows)}


def run_population(params: dict, out_dir: Path, seed: int,
                   jobs: int = 1) -> tuple[list[Path], dict]:
    sim_params = population.PopulationParams(
        n=params["n"], init_counts=tuple(params["init_counts"]),
        rec_prob=tuple(params["rec_prob"]), horizon=params["horizon"])
    traj = population.run_population_sim(sim_params, RandomSource(seed))
    rows = []
    for t, (n1, n2) in enumerate(traj):
        rows.append((t, 1, n1))
        rows.append((t, 2, n2))
    path = write_csv(out_dir / "population.csv", ["t", "group", "count"], rows)
    final = traj[-1]
    return [path], {"final_counts": [int(final[0]), int(final[1])],
                    "final_share_group_1": float(final[0] / params["n"])}


def _market_from_params(market: dict) -> creators.CreatorMarket:
    return creators.CreatorMarket(
        group_sizes=np.array(market["group_sizes"], dtype=float),
        relevance=np.array(market["relevance"], dtype=float),
        retention_threshold=market["theta"],
        retention_slope=market["kappa"])


def run_creators(params: dict, out_dir: Path, seed: int,
                 jobs: int = 1) -> tuple[list[Path], dict]:
    market = _market_from_params(params["market"])
    kind = params["constraint"]
    if kind not in ("exposure", "opportunity"):
        raise ConfigError(f"constraint must be 'exposure' or 'opportunity', got {kind!r}")
    grid = params["exposure_grid"] if kind == "exposure" else params["opportunity_grid"]
    records = creators.epsilon_sweep(market, f"{kind}_floor", grid)

    m, g = market.n_creators, market.n_groups
    header = (["epsilon"] + [f"exp_{i + 1}" for i in range(m)]
              + [f"p_{i + 1}" for i in range(m)] + ["utility"]
              + [f"fut_u_{u + 1}" for u in range(g)] + ["status"])
    rows = []
    for rec in records:
        rows.append([rec["epsilon"]] + list(rec["exposures"]) + list(rec["retention"])
                    + [rec["utility"]] + list(rec["future_utility"]) + [rec["status"]])
    path = write_csv(out_dir / f"creators_{kind}.csv", header, rows)
    n_ok = sum(r["status"] == "optimal" for r in records)
    return [path], {"constraint": kind, "n_feasible": n_ok, "n_grid": len(records)}


def _controller_stream(params: dict) -> list[np.ndarray]:
    stream = params["stream"]
    kind = stream.get("kind")
    if kind == "alternating":
        odd = np.array(defaults.ALTERNATING_STREAM["odd"])
        even = np.array(defaults.ALTERNATING_STREAM["even"])
        return [odd if (t % 2 == 1) else even
                for t in range(1, params["horizon"] + 1)]
    if kind == "csv":
        return load_relevance_stream_csv(Path(stream["path"]))
    raise ConfigError(f"unknown stream kind {kind!r}")


def run_controller(params: dict, out_dir: Path, seed: int,
                   jobs: int = 1) -> tuple[list[Path], dict]:
    stream = _controller_stream(params)
    groups = GroupPartition(np.array(params["item_groups"], dtype=int),
                            m=int(max(params["item_groups"])))
    pi = PositionWeights(np.array(params["pi"], dtype=float))
    run = ctrl.run_horizon(stream, groups, pi, np.array(params["targets"]),
                           gain=params["gain"], T=params["horizon"],
                           mode=params["mode"])
    m = len(params["targets"])
    header = (["t"] + [f"s_{j + 1}" for j in range(m)]
              + [f"boost_{j + 1}" for j in range(m)] + ["ranking", "utility"])
    rows = []
    cum = np.zeros(m)
    for t in range(run.step_exposures.shape[0]):
        cum = cum + run.step_exposures[t]
        ranking = ";".join(str(i) for i in run.rankings[t][0])
        rows.append([t + 1] + list(cum) + list(run.boosts[t]) + [ranking,
                                                                 run.utilities[t]])
    path = write_csv(out_dir / "controller.csv", header, rows)
    shortfall = np.maximum(0.0, run.tracker.targets - run.tracker.s)
    return [path], {"total_utility": run.total_utility,
                    "final_exposure": [float(v) for v in run.tracker.s],
                    "target_shortfall": [float(v) for v in shortfall]}


def run_longterm(params: dict, out_dir: Path, seed: int,
                 jobs: int = 1) -> tuple[list[Path], dict]:
    spec = longterm.HorizonSpec(
        T=params["T"], gamma=params["gamma"],
        dynamics_params=longterm.DynamicsParams(
            eta=params["eta"], theta=params["theta"], kappa=params["kappa"]),
        reward_params=longterm.RewardParams(
            group_sizes=np.array(params["group_sizes"], dtype=float),
            base_interest=np.array(params["base_interest"], dtype=float)))
    report = longterm.compare(spec, np.array(params["v0"], dtype=float),
                              h=params["grid_spacing"])

    files = []
    for name in ("myopic", "farsighted"):
        traj = report[f"{name}_trajectory"]
        mgroups = traj["states"].shape[1]
        header = (["t"] + [f"v_{j + 1}" for j in range(mgroups)]
                  + [f"beta_{j + 1}" for j in range(mgroups)] + ["reward"])
        rows = [[t] + list(traj["states"][t]) + list(traj["betas"][t])
                + [traj["rewards"][t]] for t in range(traj["states"].shape[0])]
        files.append(write_csv(out_dir / f"longterm_{name}.csv", header, rows))

    summary = {
        "myopic_value": report["myopic_value"],
        "farsighted_value": report["farsighted_value"],
        "farsighted_beta": [float(b) for b in report["farsighted_beta"]],
        "terminal_engagement_myopic":
            [float(v) for v in report["terminal_engagement_myopic"]],
        "terminal_engagement_farsighted":
            [float(v) for v in report["terminal_engagement_farsighted"]],
    }
    files.append(write_json(out_dir / "longterm_report.json", summary))
    return files, summary


def run_rank(params: dict, out_dir: Path, seed: int,
             jobs: int = 1) -> tuple[list[Path], dict]:
    if not params.get("relevance_csv") or not params.get("groups_csv"):
        raise ConfigError("rank requires relevance_csv and groups_csv paths")
    relevance, users, items = load_relevance_csv(Path(params["relevance_csv"]))
    groups = load_groups_csv(Path(params["groups_csv"]), items)

    pi = (PositionWeights(np.array(params["pi"], dtype=float))
          if params.get("pi") else dcg_weights(relevance.n_items))
    weights = (np.array(params["user_weights"], dtype=float)
               if params.get("user_weights") else None)
    eps = list(params.get("epsilon") or [])
    if params["constraint"] == "exposure_equal":
        constraint = FairnessConstraintKind.exposure_equal()
    else:
        if not eps:
            eps = [0.0] * groups.m
        if len(eps) == 1:
            eps = eps * groups.m
        constraint = FairnessConstraintKind(params["constraint"],
                                            np.array(eps, dtype=float))

    result = fair_rank(relevance, groups, pi, constraint, weights,
                       RandomSource(seed))
    payload = {
        "users": users,
        "items": items,
        "rankings": {user: [items[i] for i in ranking]
                     for user, ranking in zip(users, result.rankings)},
        "objective_value": result.objective_value,
        "exposures": {f"group_{j + 1}": float(e)
                      for j, e in enumerate(result.exposures)},
        "constraint": params["constraint"],
        "epsilon": [float(e) for e in eps],
    }
    path = write_json(out_dir / "ranking.json", payload)
    return [path], {"objective_value": result.objective_value}


RUNNERS = {
    "controller": run_controller,
    "creators": run_creators,
    "longterm": run_longterm,
    "opinion": run_opinion,
    "population": run_population,
    "rank": run_rank,
    "tradeoff": run_tradeoff,
}

EXPERIMENT_DESCRIPTIONS = {
    "controller": "exposure tracking over a horizon with proportional or dual-ascent control",
    "creators": "creator allocation sweep under exposure or opportunity floors",
    "longterm": "myopic versus farsighted exposure policy over a discounted horizon",
    "opinion": "opinion dynamics of one population under a diversity level",
    "population": "group composition drift under recommendation-driven churn",
    "rank": "one-shot fairness-constrained ranking from relevance and group CSVs",
    "tradeoff": "Monte Carlo engagement/polarization sweep across diversity levels",
}
