#!/usr/bin/env python3
"""Orbit-norm traces of the composition operator on three spaces.

Run:  python demos/orbit_simulation.py
"""

import _path  # noqa: F401

from oll import (
    AtomSet,
    AtomicSpace,
    CompositionSystem,
    OrliczFunction,
    SimpleFunction,
    Transformation,
    WeightFunction,
    criterion_sequence,
    is_wandering,
    orbit_norms,
)

window = (-64, 64)
phi = OrliczFunction.power(1.0)
h = WeightFunction.constant(1.0)

systems = {
    "halving masses, shift": CompositionSystem(
        AtomicSpace.geometric(0.5, window), Transformation.shift(1), phi, h, 2.0
    ),
    "counting, shift": CompositionSystem(
        AtomicSpace.counting(window), Transformation.shift(1), phi, h, 1.0
    ),
    "decaying both ways": CompositionSystem(
        AtomicSpace.bilateral_geometric(0.5, window), Transformation.shift(1), phi, h, 2.0
    ),
}

g = SimpleFunction.characteristic(AtomSet.of([0]))
print("orbit norms ||C^n chi_0|| for n = -5..5")
ns = list(range(-5, 6))
print("  n:".ljust(24), "  ".join(f"{n:>8d}" for n in ns))
for name, system in systems.items():
    trace = dict(orbit_norms(system, g, (-5, 5)).entries)
    print(f"  {name:22s}", "  ".join(f"{trace[n]:8.4g}" for n in ns))

print("\ncriterion quantities c_n = phi_inverse(1/H(mu(tau^-n A))) for A = {0}")
for name, system in systems.items():
    trace = dict(criterion_sequence(system, AtomSet.of([0]), (-5, 5)).entries)
    print(f"  {name:22s}", "  ".join(f"{trace[n]:8.4g}" for n in ns))

print("\nthe unit shift wanders; backward iterates of {0} never meet:")
for name, system in systems.items():
    print(f"  {name:22s} wandering({{0}}, |n|<=5) = {is_wandering(system, AtomSet.of([0]), (-5, 5))}")
print("\nNorms double along the halving-mass orbit, stay flat on the")
print("counting space, and shrink in both directions on the decaying one;")
print("the criterion traces mirror the norms reciprocally, as they must.")
