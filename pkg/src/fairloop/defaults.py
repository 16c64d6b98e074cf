"""Versioned defaults for every experiment parameter.

Any parameter an experiment config leaves unset is taken from here, and
the fully resolved config (including these values and the defaults
version) is echoed into the run manifest, so a manifest alone
reproduces a run exactly.
"""

from __future__ import annotations

import copy

DEFAULTS_VERSION = "1"

#: Three-group creator market used by the creators experiment.
CREATOR_MARKET = {
    "group_sizes": [100, 100, 10],
    "relevance": [[0.9, 0.1, 0.0],
                  [0.9, 0.4, 0.0],
                  [0.2, 0.9, 0.1]],
    "theta": 0.10,
    "kappa": 100.0,
}

EXPERIMENT_DEFAULTS: dict[str, dict] = {
    "opinion": {
        "epsilon": 0.0,
        "alpha": 0.1,
        "n_users": 100,
        "horizon": 200,
        "group_splits": [[0.5, [0.5, 0.7]], [0.5, [0.3, 0.5]]],
    },
    "tradeoff": {
        "epsilon_grid": [round(0.1 * k, 1) for k in range(11)],
        "alpha": 0.1,
        "n_users": 100,
        "horizon": 30,
        "trials": 200,
        "group_splits": [[0.5, [0.5, 0.7]], [0.5, [0.3, 0.5]]],
    },
    "population": {
        "n": 1000,
        "init_counts": [495, 505],
        "rec_prob": [0.40, 0.50],
        "horizon": 200,
    },
    "creators": {
        "constraint": "exposure",
        "market": CREATOR_MARKET,
        # grids chosen to straddle the retention threshold (exposure)
        # and the full opportunity range
        "exposure_grid": [round(0.01 * k, 2) for k in range(34)],
        "opportunity_grid": [round(0.02 * k, 2) for k in range(51)],
    },
    "controller": {
        "mode": "p_control",
        "gain": 3.0,
        "horizon": 6,
        "targets": [4.5, 4.5],
        "pi": [1.0, 0.5, 0.25],
        "item_groups": [1, 2, 2],
        "stream": {"kind": "alternating"},
    },
    "longterm": {
        "v0": [0.2, 0.8],
        "group_sizes": [100, 100],
        "base_interest": [1.5, 1.0],
        "eta": 0.3,
        "theta": 0.3,
        "kappa": 20.0,
        "gamma": 0.95,
        "T": 60,
        "grid_spacing": 0.05,
    },
    "rank": {
        "relevance_csv": None,
        "groups_csv": None,
        "constraint": "exposure_floor",
        "epsilon": [],
        "pi": None,
        "user_weights": None,
    },
}

#: Built-in alternating-demand stream for the controller experiment:
#: odd steps favor the group-2 items, even steps favor the group-1 item.
ALTERNATING_STREAM = {
    "odd": [0.2, 0.9, 0.8],
    "even": [0.9, 0.3, 0.2],
}


def defaults_for(experiment: str) -> dict:
    return copy.deepcopy(EXPERIMENT_DEFAULTS[experiment])
