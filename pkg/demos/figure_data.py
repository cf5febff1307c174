"""Write the CSV data behind every figure into a directory (default ./figure_data).

Each file is exactly what the matching ``fractalcalc`` command prints, so the
two routes can be diffed against each other.
"""

import argparse
from pathlib import Path

from fractalcalc import physics
from fractalcalc.cli import main
from fractalcalc.ode import LinearFDEProblem, solve_local, solve_nonlocal
from fractalcalc.staircase import TRIADIC

COMMANDS = {
    "staircase.csv": ["staircase", "--n", "512"],
    "local_ode.csv": ["ode", "--kind", "local", "--n", "512"],
    "nonlocal_ode_b033.csv": ["ode", "--kind", "nonlocal", "--beta", "0.33", "--n", "512"],
    "nonlocal_ode_b025.csv": ["ode", "--kind", "nonlocal", "--beta", "0.25", "--n", "512"],
    "blair_strain.csv": ["blair", "--betas", "0", "--n", "512"],
    "blair_stress.csv": ["blair", "--beta", "0.5", "--n", "512"],
}


def run(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    for name, argv in COMMANDS.items():
        main([*argv, "--out", str(out / name)])
        rows = (out / name).read_text().count("\n") - 1
        print(f"{name:<24} {rows:>4} rows   fractalcalc {' '.join(argv)}")

    # the same data through the library, for a quick sanity print
    y = solve_local(LinearFDEProblem(grid_n=512))
    z = solve_nonlocal(LinearFDEProblem("nonlocal-caputo", beta=0.33, grid_n=512))
    print(f"\nlocal solution at x=1: {y.value[-1]:.6f}   non-local (beta 0.33): {z.value[-1]:.6f}")
    sweep = physics.blair_sweep(physics.BlairParams(), [0.5], physics.step_strain(), 512, TRIADIC)
    print(f"Blair stress at t=1 for beta 0.5: {sweep.columns['beta_0.5'][-1]:.6f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", nargs="?", default="figure_data", type=Path)
    run(ap.parse_args().out)
