#!/usr/bin/env python3
"""From a simple function to its rearrangement, modular, and norm.

Run:  python demos/norms_and_rearrangement.py
"""

import math

import _path  # noqa: F401

from oll import (
    AtomSet,
    AtomicSpace,
    CompositionSystem,
    OrliczFunction,
    SimpleFunction,
    Transformation,
    WeightFunction,
    char_norm_formula,
    distribution,
    luxemburg_norm_info,
    modular,
    rearrangement,
)

# two atoms: index 0 carries mass 1/2, index 1 carries mass 1
space = AtomicSpace.from_table({0: 0.5, 1: 1.0})
g = SimpleFunction.of({0: 3.0, 1: 1.0})
print(f"g = 3*chi_0 + 1*chi_1 on masses (0.5, 1.0)")

print("\ndistribution function mu_g(lam) = mass of {|g| > lam}")
for lam in (0.0, 0.5, 1.0, 2.0, 3.0):
    print(f"  mu_g({lam}) = {distribution(space, g, lam)}")

steps = rearrangement(space, g)
print("\ndecreasing rearrangement g* (value on [prev, t))")
prev = 0.0
for t, v in zip(steps.breakpoints, steps.values):
    print(f"  g* = {v} on [{prev}, {t})")
    prev = t

system = CompositionSystem(
    space,
    Transformation.shift(0),
    OrliczFunction.power(2.0),
    WeightFunction.constant(1.0),
    1.0,
)
print("\nmodular I(g/lam) = sum phi(v_i/lam) (H(t_i) - H(t_{i-1}))")
for lam in (1.0, 2.0, math.sqrt(5.5)):
    print(f"  I(g/{lam:.6f}) = {modular(system, g, lam):.12f}")

info = luxemburg_norm_info(system, g)
print("\nLuxemburg norm by bracketing + bisection")
print(f"  norm           = {info.value:.12f}")
print(f"  closed form    = {math.sqrt(5.5):.12f}   (sqrt of sum v^2 m in the L^2 case)")
print(f"  iterations     = {info.iterations}, final bracket width = {info.residual:.3g}")
print(f"  I(g/norm)      = {info.modular_at_value:.12f}  (feasible side, <= 1)")

A = AtomSet.of([0, 1])
print("\ncharacteristic functions have a closed-form norm: 1/phi_inverse(1/H(mu(A)))")
print(f"  ||chi_A|| = {char_norm_formula(system, A):.12f} for mu(A) = 1.5")
