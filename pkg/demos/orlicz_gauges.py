#!/usr/bin/env python3
"""Tour of the four gauge families: values, inverses, doubling probes.

Run:  python demos/orlicz_gauges.py
"""

import _path  # noqa: F401

from oll import OrliczFunction, delta2_probe, phi_eval, phi_inverse, phi_params

gauges = {
    "power p=2": OrliczFunction.power(2.0),
    "exp - 1": OrliczFunction.exp_minus_one(),
    "shifted linear a=1 c=1": OrliczFunction.shifted_linear(1.0, 1.0),
    "capped power p=2 b=2": OrliczFunction.capped_power(2.0, 2.0),
}

print("values phi(s) on a small grid")
grid = [0.0, 0.5, 1.0, 1.5, 2.0, 3.0]
for name, phi in gauges.items():
    vals = ", ".join(f"{phi_eval(phi, s):8.4g}" for s in grid)
    print(f"  {name:24s} [{vals}]")

print("\nright generalized inverses sup{s : phi(s) <= y}")
for name, phi in gauges.items():
    ys = [0.0, 0.5, 1.0, 4.0, float("inf")]
    vals = ", ".join(f"{phi_inverse(phi, y):8.4g}" for y in ys)
    print(f"  {name:24s} [{vals}]")

print("\ndegeneracy parameters (a_phi: leaves zero, b_phi: jumps to infinity)")
for name, phi in gauges.items():
    a, b = phi_params(phi)
    print(f"  {name:24s} a_phi={a:<6g} b_phi={b:g}")

print("\ndoubling-condition probes phi(2s) <= M phi(s) on [1, 4096]")
for name, phi in gauges.items():
    rep = delta2_probe(phi)
    verdict = "satisfied" if rep.satisfied_on_grid else "refuted  "
    print(f"  {name:24s} {verdict} observed M = {rep.max_ratio:g}")
print("\nThe exponential gauge is the interesting case: its doubling ratio")
print("grows like e^s, so no fixed constant works once the grid is wide.")
