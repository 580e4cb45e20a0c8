"""Session fixtures: generate walk CSVs through the permwalk CLI."""

import shutil
import subprocess
import sys

import pytest


def permwalk_cmd():
    exe = shutil.which("permwalk")
    if exe:
        return [exe]
    return [sys.executable, "-m", "permwalk.cli"]


def run_permwalk(*args):
    subprocess.run(permwalk_cmd() + list(args), check=True,
                   capture_output=True, text=True)


@pytest.fixture(scope="session")
def csv_dir(tmp_path_factory):
    """The three walk configurations of the localisation figures plus the
    marked-site curves, produced through the CLI's external interface."""
    out = tmp_path_factory.mktemp("csv")
    run_permwalk("walk", "--family", "hopping", "--n", "20",
                 "--initial", "10,15", "--output", str(out / "fig1a.csv"))
    run_permwalk("walk", "--family", "ring", "--n", "20",
                 "--initial", "10,15", "--output", str(out / "fig1b.csv"))
    run_permwalk("walk", "--family", "hopping", "--n", "10",
                 "--initial", "5", "--output", str(out / "fig1c.csv"))
    run_permwalk("marked", "--n", "4", "--betas", "0,0.05,1",
                 "--output", str(out / "fig2.csv"))
    return out
