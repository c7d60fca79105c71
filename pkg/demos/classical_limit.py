"""Quantum totals flowing into the classical curve as the level index grows.

For n = 1, 10, 100, 1000 this evaluates the degeneracy-weighted total
radial density and measures its L1 and sup distance to the classical
bounce-weighted density on [0, 0.99].  The distances fall roughly like
1/n: by n = 1000 the two curves are indistinguishable at plot resolution,
and both put most of the probability near the wall.

Writes per-level CSVs and an overlay SVG into ./demo_out (override with
argv[1]).
"""

import os
import sys

import numpy as np

from sphwell import classical as cl
from sphwell import numerics as nm
from sphwell import quantum as qm
from sphwell.cli import write_svg

out_dir = sys.argv[1] if len(sys.argv) > 1 else "demo_out"
os.makedirs(out_dir, exist_ok=True)

grid = nm.uniform_grid(0.99, 1000)
r = grid.points
classical_curve = nm.DensityCurve(grid, cl.classical_total_density(r))

print(f"{'n':>5} {'l_max':>6} {'degeneracy':>11} {'L1':>10} {'sup':>10}")
curves = [("classical", r, classical_curve.values)]
for n in (1, 10, 100, 1000):
    spec = qm.level_spec(n)
    quantum_curve = qm.total_radial_density(n, grid)
    l1 = nm.curve_distance(quantum_curve, classical_curve, "l1")
    sup = nm.curve_distance(quantum_curve, classical_curve, "sup")
    print(f"{n:>5} {spec.l_max:>6} {spec.degeneracy:>11} {l1:>10.6f} {sup:>10.4f}")
    np.savetxt(os.path.join(out_dir, f"total_n{n}.csv"),
               np.column_stack([r, quantum_curve.values]), delimiter=",",
               header="r,density", comments="")
    if n in (1, 1000):
        curves.append((f"quantum n={n}", r, quantum_curve.values))

write_svg(os.path.join(out_dir, "classical_limit.svg"), curves)
print(f"\nwrote total_n*.csv and classical_limit.svg to {out_dir}/")
print("(the same table comes from: sphwell compare --n-list 1,10,100,1000 "
      "--out compare.csv)")
