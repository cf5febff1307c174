"""Two physical examples on the Cantor set.

Tautochrone: the density c S^(-1/2) gives the same descent time from every
starting height.  Blair element: a step strain on the set produces a stress
that relaxes like S(t)^(-beta); beta = 0 is a spring, larger beta adds memory.
"""

import math

import numpy as np

from fractalcalc import physics
from fractalcalc.staircase import staircase_inverse

params = physics.TautochroneParams(g_f=0.5, T=math.pi)
heights = np.array([0.05, 0.2, 0.5, 0.8, 1.0])
times = physics.descent_time(params, heights)
print(f"tautochrone density coefficient c = {physics.tautochrone_coefficient(params):.6f}")
for u, t in zip(heights, times):
    print(f"  start at S = {u:4.2f}: descent time {t:.12f}")

print("\nBlair stress under a unit step strain (E = chi = 1):")
t = staircase_inverse(np.array([0.1, 0.25, 0.5, 1.0]))
print("   t      " + "  ".join(f"beta={b:<4}" for b in (0.0, 0.25, 0.5, 0.6)))
for ti in t:
    row = [physics.blair_stress(physics.BlairParams(beta=b), physics.step_strain(), ti)
           for b in (0.0, 0.25, 0.5, 0.6)]
    print(f"  {ti:6.4f}  " + "  ".join(f"{v:9.5f}" for v in row))
