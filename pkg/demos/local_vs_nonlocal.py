"""Relaxation on the Cantor set: local decay against memory-driven decay.

The local equation relaxes like exp(-S(x)) and is flat across every gap of
the set.  The non-local version keeps a power-law tail, and the Grunwald
stepper tracks its closed form as the grid is refined.
"""

import numpy as np

from fractalcalc.ode import (
    LinearFDEProblem,
    compare_runs,
    gl_stepper,
    nonlocal_solution_u,
    solve_local,
    solve_nonlocal,
)
from fractalcalc.staircase import TRIADIC

alpha = TRIADIC.alpha
local = solve_local(LinearFDEProblem(grid_n=513))
print("   x      S(x)   local   beta=0.33  beta=0.25")
runs = {b: solve_nonlocal(LinearFDEProblem("nonlocal-caputo", beta=b, grid_n=513)) for b in (0.33, 0.25)}
for i in range(0, 513, 64):
    print(f"{local.x[i]:6.3f}  {local.s[i]:6.3f}  {local.value[i]:6.4f}  "
          f"{runs[0.33].value[i]:9.4f}  {runs[0.25].value[i]:9.4f}")

gap = compare_runs(local, runs[0.33])
print(f"\nlargest local/non-local gap {gap.meta['max_gap']:.3f} at x = {gap.meta['argmax_x']:.3f}")

print("\nGrunwald stepper against the closed form (beta 0.33, u in [0.1, 1]):")
for k in range(8, 13):
    run = gl_stepper(LinearFDEProblem("nonlocal-caputo", beta=0.33, grid_n=2**k))
    mask = run.s >= 0.1
    exact = nonlocal_solution_u(run.s[mask], 0.33, alpha)
    err = np.max(np.abs(run.value[mask] - exact) / np.abs(exact))
    print(f"  n = 2^{k:<2}  max relative error {err:.2e}")
