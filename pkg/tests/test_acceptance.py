"""Acceptance suite: eleven numbered criteria, one test each.

Every test prints a ``[criterion N] PASS``/``FAIL`` line (visible with
``pytest -s`` or on failure) and pins its tolerance inline.

Criterion 7 is a known honest failure at (n=10, l=30): the advertised
upper bound on the centrifugal expectation presumes a non-negative radial
kinetic expectation, which does not hold for eigenstates that are nonzero
at the wall (the integration-by-parts boundary term chi(1) chi'(1)/2
outweighs the bulk term there).  The other 35 (n, l) pairs in the sweep
satisfy both bounds.  See tests/test_quantum.py for the pinned value of
the violating pair.
"""

import math

import numpy as np
import pytest

from sphwell import classical as cl
from sphwell import numerics as nm
from sphwell import quantum as qm
from sphwell import specfun as sf
from sphwell.cli import main as cli_main

PI = math.pi


def _report(number, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {number}] {status}: {detail}")
    return ok


def test_criterion_1_level_one_structure():
    spec = qm.level_spec(1)
    ok = (
        spec.l_max == 2
        and spec.degeneracy == 10
        and spec.weights.tolist() == [0.2, 0.3, 0.5]
        and spec.energy == 0.5 * PI * PI
    )
    assert _report(1, ok, f"l_max={spec.l_max} degeneracy={spec.degeneracy} "
                          f"weights={spec.weights.tolist()} energy={spec.energy!r} "
                          "(exact integer/rational facts, zero tolerance)")


def test_criterion_2_normalization_constants():
    a2_10 = qm.normalization_constant_sq(1, 0, check=True, check_tol=1e-9)
    a2_11 = qm.normalization_constant_sq(1, 1, check=True, check_tol=1e-9)
    a2_12 = qm.normalization_constant_sq(1, 2, check=True, check_tol=1e-9)
    ok = (
        abs(a2_10 - 2 * PI**2) < 1e-12 * a2_10
        and abs(a2_11 - 2 * PI**2) < 1e-12 * a2_11
        and abs(a2_12 - 2 * PI**4 / (PI**2 - 6)) < 1e-12 * a2_12
    )
    assert _report(2, ok, f"A2(1,0)={a2_10!r} A2(1,1)={a2_11!r} A2(1,2)={a2_12!r} "
                          "match 2*pi^2, 2*pi^2, 2*pi^4/(pi^2-6); "
                          "closed form vs quadrature < 1e-9 relative")


def test_criterion_3_l0_mean_is_classical_uniform():
    grid = nm.uniform_grid(1.0, 1000)
    worst = 0.0
    for n in (1, 5, 10):
        curve = qm.mean_radial_density(n, 0, grid)
        worst = max(worst, float(np.max(np.abs(curve.values - 1.0))))
    ok = worst < 1e-12
    assert _report(3, ok, f"max |mean l=0 density - 1| = {worst:.3e} < 1e-12 "
                          "for n in {1, 5, 10} on a 1000-point grid")


def test_criterion_4_classical_normalization():
    mass = cl.classical_density_mass(tol=1e-10)
    rs = np.arange(1, 100) / 100.0
    sup = max(
        abs(cl.classical_total_density_by_quadrature(float(r), 1e-10)
            - cl.classical_total_density(float(r)))
        for r in rs
    )
    ok = abs(mass - 1.0) < 1e-9 and sup < 1e-8
    assert _report(4, ok, f"closed-form mass = {mass!r} (|mass-1| < 1e-9); "
                          f"sup |quadrature - closed form| on r=0.01..0.99 = {sup:.3e} < 1e-8")


def test_criterion_5_monte_carlo_oracle():
    config = cl.McConfig(mode="paper", samples=10**7, bins=100, seed=42, r_max=0.99)
    curve = cl.mc_radial_density(config)
    want = cl.classical_total_density(curve.grid.points)
    dev_paper = float(np.max(np.abs(curve.values - want)))
    cap_paper = 0.01 * float(want.max())

    config = cl.McConfig(mode="liouville", samples=10**7, bins=100, seed=42, r_max=0.99)
    curve = cl.mc_radial_density(config)
    want = cl.liouville_total_density(curve.grid.points)
    dev_liouville = float(np.max(np.abs(curve.values - want)))
    cap_liouville = 0.01 * float(want.max())

    ok = dev_paper < cap_paper and dev_liouville < cap_liouville
    assert _report(5, ok, f"1e7 samples, 100 bins, seed 42: paper sup dev "
                          f"{dev_paper:.4f} < {cap_paper:.4f}; liouville sup dev "
                          f"{dev_liouville:.4f} < {cap_liouville:.4f} (1% of curve max)")


def test_criterion_6_per_sigma_normalization():
    worst = max(abs(cl.p_sigma_mass(s, tol=1e-10) - 1.0) for s in (0.0, 0.25, 0.5, 0.9))
    ok = worst < 1e-9
    assert _report(6, ok, f"max |int P_sigma dr - 1| = {worst:.3e} < 1e-9 "
                          "for sigma in {0, 0.25, 0.5, 0.9}")


def test_criterion_7_centrifugal_sandwich():
    violations = []
    checked = 0
    for n in (1, 2, 3, 10):
        upper = (n * PI) ** 2 / 2
        for l in range(1, qm.allowed_l_max(n) + 1):
            value = qm.centrifugal_expectation(n, l, tol=1e-10)
            checked += 1
            if not (l * (l + 1) / 2 - 1e-8 <= value <= upper + 1e-8):
                violations.append((n, l, value, l * (l + 1) / 2, upper))
    detail = (f"{checked} (n, l) pairs checked; violations: "
              + (", ".join(f"(n={n}, l={l}): {v:.6f} outside [{lo}, {hi:.4f}]"
                           for n, l, v, lo, hi in violations) or "none")
              + " -- the upper bound presumes a non-negative radial kinetic "
                "expectation, which fails for wall-nonvanishing states at "
                "near-maximal l (boundary term chi(1)chi'(1)/2 = 69.54 vs "
                "bulk 57.47 at the violating pair)")
    assert _report(7, not violations, detail)


def test_criterion_8_convergence_to_classical_limit():
    grid = np.linspace(0.0, 0.99, 1000)
    classical_curve = cl.classical_total_density(grid)
    distances = []
    for n in (1, 10, 100, 1000):
        values = qm.total_density_values(n, grid)
        distances.append(float(np.trapezoid(np.abs(values - classical_curve), grid)))
    ok = all(a > b for a, b in zip(distances, distances[1:]))
    assert _report(8, ok, "L1 distances to the classical curve for n = 1, 10, 100, 1000: "
                          + ", ".join(f"{d:.6f}" for d in distances)
                          + " (strictly decreasing)")


def test_criterion_9_boundary_contrast():
    r = np.array([0.999])
    conventional = float(qm.conventional_density_values(1, 0, r)[0])
    total = float(qm.total_density_values(1, r)[0])
    ok = conventional < 1e-4 and total > 1.0
    assert _report(9, ok, f"at r = 0.999: textbook ground-state density "
                          f"{conventional:.3e} < 1e-4, level-1 total density "
                          f"{total:.4f} > 1")


def _series_j(l, x, terms=60):
    pref = x**l
    for m in range(1, 2 * l + 2, 2):
        pref /= m
    term = total = 1.0
    for k in range(1, terms + 1):
        term *= -0.5 * x * x / (k * (2 * l + 2 * k + 1))
        total += term
    return pref * total


def test_criterion_10_special_function_suite():
    # j_l against the 60-term ascending series
    series_worst = 0.0
    for l in range(11):
        for x in np.arange(0.1, 2.01, 0.1):
            want = _series_j(l, float(x))
            got = sf.sph_bessel_j(l, float(x))
            series_worst = max(series_worst, abs(got - want) / abs(want))

    # Wronskian residual via the recurrence derivatives
    wronskian_worst = 0.0
    for l in (0, 1, 2, 3, 5, 8, 13, 21, 34, 50):
        for x in (0.5, 1.0, 2.0, 5.0, 10.0, 50.0):
            j_l, j_u = sf.sph_bessel_j(l, x), sf.sph_bessel_j(l + 1, x)
            n_l, n_u = sf.sph_bessel_n(l, x), sf.sph_bessel_n(l + 1, x)
            jp = j_l - (l + 2) / x * j_u
            np_ = n_l - (l + 2) / x * n_u
            wronskian_worst = max(wronskian_worst, abs((j_u * np_ - jp * n_u) * x * x - 1.0))

    # zeros of the order-zero function are multiples of pi
    zeros_worst = max(abs(sf.sph_bessel_zero(0, k) - k * PI) for k in range(1, 11))

    # spherical-harmonic Gram matrix over l, l' <= 4
    nodes, weights = np.polynomial.legendre.leggauss(24)
    thetas = np.arccos(nodes)
    phis = 2 * PI * np.arange(64) / 64
    labels = [(l, m) for l in range(5) for m in range(-l, l + 1)]
    table = np.array([
        [[sf.sph_harmonic(l, m, th, ph) for ph in phis] for th in thetas]
        for (l, m) in labels
    ])
    w = weights[:, None] * (2 * PI / 64)
    gram = np.einsum("iab,jab,ab->ij", table.conj(), table, w)
    gram_worst = float(np.max(np.abs(gram - np.eye(len(labels)))))

    ok = (series_worst < 1e-12 and wronskian_worst < 1e-10
          and zeros_worst < 1e-12 and gram_worst < 1e-10)
    assert _report(10, ok, f"series rel err {series_worst:.2e} < 1e-12; Wronskian residual "
                           f"{wronskian_worst:.2e} < 1e-10; j0 zeros off by {zeros_worst:.2e} "
                           f"< 1e-12; Gram deviation {gram_worst:.2e} < 1e-10")


def test_criterion_11_reproducibility_across_threads(tmp_path):
    flags = ["classical", "mc", "--mode", "paper", "--samples", "4000000",
             "--bins", "100", "--seed", "42"]
    path_a = tmp_path / "run_a.csv"
    path_b = tmp_path / "run_b.csv"
    assert cli_main(flags + ["--threads", "1", "--out", str(path_a)]) == 0
    assert cli_main(flags + ["--threads", "4", "--out", str(path_b)]) == 0
    bytes_a = path_a.read_bytes()
    bytes_b = path_b.read_bytes()
    ok = bytes_a == bytes_b
    assert _report(11, ok, f"CLI runs with threads 1 vs 4, identical flags and seed: "
                           f"{len(bytes_a)}-byte CSVs byte-identical = {ok}")
