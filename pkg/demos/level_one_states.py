"""The first energy level of the spherical box, state by state.

Level n = 1 sits at energy pi^2/2 and holds ten orthonormal states:
two with l = 0 plus three (l = 1) and five (l = 2).  This script shows
why no single l = 0 state resembles the classical uniform density but
their equal-weight mean does, and assembles the level's total density
from the 2/10, 3/10, 5/10 degeneracy weights.

Writes CSVs and SVGs into ./demo_out (override with argv[1]).
"""

import os
import sys

import numpy as np

from sphwell import numerics as nm
from sphwell import quantum as qm
from sphwell.cli import write_svg

out_dir = sys.argv[1] if len(sys.argv) > 1 else "demo_out"
os.makedirs(out_dir, exist_ok=True)

spec = qm.level_spec(1)
print(f"level n=1: energy {spec.energy:.6f} (hbar^2/mu a^2), "
      f"l_max {spec.l_max}, degeneracy {spec.degeneracy}, "
      f"weights {spec.weights.tolist()}")

grid = nm.uniform_grid(1.0, 600)
r = grid.points

# The two l = 0 basis choices: regular/irregular, or the two Hankel
# combinations.  Individually lumpy or flat -- but both bases average to
# exactly the classical uniform density 1/a.
b = qm.state_radial_density(qm.radial_state(1, 0, branch="J"), grid)
n0 = qm.state_radial_density(qm.radial_state(1, 0, branch="N0"), grid)
h1 = qm.state_radial_density(qm.radial_state(1, 0, branch="H1"), grid)
mean0 = qm.mean_radial_density(1, 0, grid)
print(f"l=0 regular branch at r=0.5: {b.values[300]:.6f} (2 sin^2(pi r))")
print(f"l=0 irregular branch at r=0: {n0.values[0]:.6f} (2 cos^2(pi r))")
print(f"l=0 Hankel branch, any r:    {h1.values[123]:.6f}")
print(f"max |mean(l=0) - 1| = {np.max(np.abs(mean0.values - 1.0)):.2e}")

mean1 = qm.mean_radial_density(1, 1, grid)
mean2 = qm.mean_radial_density(1, 2, grid)
total = qm.total_radial_density(1, grid)
mass = qm.density_mass(lambda rr: qm.total_density_values(1, rr))
print(f"total density: value 0.2 at the origin ({total.values[0]:.6f}), "
      f"{total.values[-1]:.4f} at the wall, mass {mass:.10f}")

# the textbook ground state, by contrast, is forced to vanish at the wall
conventional = qm.conventional_radial_density(1, 0, grid)
print(f"textbook ground state at r=0.999: "
      f"{qm.conventional_density_values(1, 0, np.array([0.999]))[0]:.3e}")

header = "r,density"
for name, curve in [("state_l0_regular", b), ("state_l0_irregular", n0),
                    ("mean_l0", mean0), ("mean_l1", mean1), ("mean_l2", mean2),
                    ("total_n1", total), ("conventional_ground", conventional)]:
    np.savetxt(os.path.join(out_dir, f"{name}.csv"),
               np.column_stack([r, curve.values]), delimiter=",", header=header,
               comments="")

write_svg(os.path.join(out_dir, "level_one_l0_states.svg"), [
    ("regular", r, b.values),
    ("irregular", r, n0.values),
    ("mean", r, mean0.values),
])
write_svg(os.path.join(out_dir, "level_one_means.svg"), [
    ("mean l=0", r, mean0.values),
    ("mean l=1", r, mean1.values),
    ("mean l=2", r, mean2.values),
    ("total", r, total.values),
])
print(f"\nwrote per-state and per-l CSVs plus two SVGs to {out_dir}/")
