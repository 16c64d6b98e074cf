import json
import subprocess
import sys

import pytest


def run_experiment(config: dict, tmp_path, name: str):
    """Drive the fairloop CLI (the producing side's public interface)."""
    cfg_path = tmp_path / f"{name}.json"
    cfg_path.write_text(json.dumps(config))
    out_dir = tmp_path / name
    proc = subprocess.run(
        [sys.executable, "-m", "fairloop", "run", str(cfg_path),
         "--out", str(out_dir)],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return out_dir


@pytest.fixture(scope="session")
def golden(tmp_path_factory):
    """Golden CSVs for every figure, produced by the experiment runner."""
    root = tmp_path_factory.mktemp("golden")
    dirs = {}
    dirs["polarization"] = run_experiment(
        {"experiment": "opinion", "seed": 7,
         "params": {"epsilon": 0.0, "horizon": 60, "n_users": 40}},
        root, "opinion_aligned")
    dirs["diversity"] = run_experiment(
        {"experiment": "opinion", "seed": 7,
         "params": {"epsilon": 0.2, "horizon": 60, "n_users": 40}},
        root, "opinion_diverse")
    dirs["tradeoff"] = run_experiment(
        {"experiment": "tradeoff", "seed": 3,
         "params": {"epsilon_grid": [0.0, 0.25, 0.5, 0.75, 1.0],
                    "trials": 20, "horizon": 15, "n_users": 40}},
        root, "tradeoff")
    dirs["representation"] = run_experiment(
        {"experiment": "population", "seed": 11, "params": {"horizon": 80}},
        root, "population")
    dirs["creators_exposure"] = run_experiment(
        {"experiment": "creators", "seed": 0,
         "params": {"constraint": "exposure"}},
        root, "creators_exposure")
    dirs["creators_opportunity"] = run_experiment(
        {"experiment": "creators", "seed": 0,
         "params": {"constraint": "opportunity"}},
        root, "creators_opportunity")
    dirs["controller"] = run_experiment(
        {"experiment": "controller", "seed": 0}, root, "controller")
    return dirs
