"""Figure construction from experiment CSVs.

Each figure builder takes validated tables and returns a matplotlib
Figure; :func:`render` drives the whole pipeline (validate, build,
save). Rendering is deterministic: a bundled style sheet pins colors
and fonts, the Agg backend is forced, and PNG output carries no
timestamps, so identical inputs produce identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .schemas import FIGURES, family_columns, floats, read_table

STYLE_FILE = Path(__file__).with_name("fairloop.mplstyle")

#: The primary CSV file name each figure expects (for manifest lookup).
MANIFEST_SOURCES = {
    "polarization": "opinion_trajectories.csv",
    "diversity": "opinion_trajectories.csv",
    "tradeoff": "tradeoff.csv",
    "representation": "population.csv",
    "creators_exposure": "creators_exposure.csv",
    "creators_opportunity": "creators_opportunity.csv",
    "controller": "controller.csv",
}


@dataclass(frozen=True)
class FigureSpec:
    """What to draw, from which CSVs, to which file."""

    figure: str
    inputs: tuple[Path, ...]
    output: Path
    band_sd: float = 1.0  # half-width of shaded bands, in standard deviations
    dpi: int = 120

    def __post_init__(self):
        if self.figure not in FIGURES:
            raise ValueError(f"unknown figure {self.figure!r}; "
                             f"choose from {list(FIGURES)}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")
        object.__setattr__(self, "inputs", tuple(Path(p) for p in self.inputs))
        object.__setattr__(self, "output", Path(self.output))


def _group_series(table, key_col, value_col):
    """Split one long table into {key: (t, values)} series."""
    keys = table[key_col]
    t = floats(table, "t")
    values = floats(table, value_col)
    series: dict[str, tuple[list, list]] = {}
    for key, ti, vi in zip(keys, t, values):
        series.setdefault(key, ([], []))
        series[key][0].append(ti)
        series[key][1].append(vi)
    return series


def _opinion_trajectories(table, title):
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for _, (t, x) in sorted(_group_series(table, "user_id", "x").items(),
                            key=lambda kv: int(kv[0])):
        ax.plot(t, x, linewidth=0.7, alpha=0.6)
    ax.set_xlabel("t")
    ax.set_ylabel("x")
    ax.set_ylim(-0.02, 1.02)
    ax.set_title(title)
    return fig


def build_polarization(tables, spec):
    return _opinion_trajectories(tables[0], "opinion trajectories (aligned only)")


def build_diversity(tables, spec):
    return _opinion_trajectories(tables[0], "opinion trajectories (with diversity)")


def build_tradeoff(tables, spec):
    table = tables[0]
    eps = np.array(floats(table, "epsilon"))
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for mean_col, sd_col, label in (("mean_eng", "sd_eng", "engagement"),
                                    ("mean_pol", "sd_pol", "negative polarization")):
        mean = np.array(floats(table, mean_col))
        sd = np.array(floats(table, sd_col))
        if label == "negative polarization":
            mean = -mean
        line, = ax.plot(eps, mean, marker="o", label=label)
        ax.fill_between(eps, mean - spec.band_sd * sd, mean + spec.band_sd * sd,
                        color=line.get_color(), alpha=0.25, linewidth=0)
    ax.set_xlabel("epsilon")
    ax.set_ylabel("mean_eng / -mean_pol")
    ax.set_title("engagement versus polarization")
    ax.legend()
    return fig


def build_representation(tables, spec):
    table = tables[0]
    series = _group_series(table, "group", "count")
    groups = sorted(series)
    first = [series[g][1][0] for g in groups]
    last = [series[g][1][-1] for g in groups]
    x = np.arange(len(groups))
    width = 0.38
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.bar(x - width / 2, first, width, label="initial")
    ax.bar(x + width / 2, last, width, label="final")
    ax.set_xticks(x, [f"group {g}" for g in groups])
    ax.set_ylabel("count")
    ax.set_title("population composition drift")
    ax.legend()
    return fig


def _build_creators(table, title):
    eps, p_cols, fut_cols = (np.array(floats(table, "epsilon")),
                             family_columns(table, "p_"),
                             family_columns(table, "fut_u_"))
    feasible = np.array([s == "optimal" for s in table["status"]])
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(6.4, 6.4), sharex=True)
    for col in p_cols:
        vals = np.array(floats(table, col))
        top.plot(eps[feasible], vals[feasible], marker=".",
                 label=f"creator {col.split('_')[1]}")
    top.axhline(0.5, linestyle=":", linewidth=0.8)
    top.set_ylabel("retention probability")
    top.set_title(title)
    top.legend()
    utility = np.array(floats(table, "utility"))
    bottom.plot(eps[feasible], utility[feasible], marker=".", label="utility")
    scale = np.nanmax(utility[feasible]) if feasible.any() else 1.0
    for col in fut_cols:
        vals = np.array(floats(table, col))
        bottom.plot(eps[feasible], vals[feasible] * scale, marker=".",
                    linestyle="--",
                    label=f"future utility group {col.split('_')[2]} (scaled)")
    bottom.set_xlabel("epsilon")
    bottom.set_ylabel("utility")
    bottom.legend()
    return fig


def build_creators_exposure(tables, spec):
    return _build_creators(tables[0], "exposure floor sweep")


def build_creators_opportunity(tables, spec):
    return _build_creators(tables[0], "opportunity floor sweep")


def build_controller(tables, spec):
    table = tables[0]
    t = np.array(floats(table, "t"))
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for col in family_columns(table, "s_"):
        vals = np.array(floats(table, col))
        line, = ax.plot(t, vals, marker="o",
                        label=f"group {col.split('_')[1]} cumulative")
        # linear pace toward the final cumulative target of this run
        ax.plot([0, t[-1]], [0, vals[-1]], linestyle=":", linewidth=0.8,
                color=line.get_color())
    ax.set_xlabel("t")
    ax.set_ylabel("cumulative exposure")
    ax.set_title("exposure tracking")
    ax.legend()
    return fig


BUILDERS = {
    "polarization": build_polarization,
    "diversity": build_diversity,
    "tradeoff": build_tradeoff,
    "representation": build_representation,
    "creators_exposure": build_creators_exposure,
    "creators_opportunity": build_creators_opportunity,
    "controller": build_controller,
}


def build_figure(spec: FigureSpec):
    """Validate inputs and build the matplotlib Figure (not saved)."""
    tables = [read_table(path, spec.figure) for path in spec.inputs]
    with plt.style.context(str(STYLE_FILE)):
        return BUILDERS[spec.figure](tables, spec)


def render(spec: FigureSpec) -> Path:
    """Build and write the figure; returns the output path."""
    fig = build_figure(spec)
    try:
        spec.output.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(spec.output, dpi=spec.dpi, metadata={"Software": "fairloop-plots"})
    finally:
        plt.close(fig)
    return spec.output
