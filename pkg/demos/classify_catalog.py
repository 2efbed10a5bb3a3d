#!/usr/bin/env python3
"""Classify every catalog system and print the verdict matrix.

Run:  python demos/classify_catalog.py
"""

import os

import _path  # noqa: F401

from oll import NOTIONS, classify, oracle_classify, parse_config

CONFIG_DIR = os.path.join(os.path.dirname(__file__), "..", "configs")

print("verdict matrix: criterion verdict (* when the orbit-norm oracle disagrees)")
header = "config".ljust(26) + "".join(n.ljust(18) for n in NOTIONS)
print(header)
print("-" * len(header))
for name in sorted(os.listdir(CONFIG_DIR)):
    cfg = parse_config(os.path.join(CONFIG_DIR, name))
    cells = []
    for notion in NOTIONS:
        crit = classify(cfg.system, cfg.fam, notion)
        orac = oracle_classify(cfg.system, cfg.fam, notion)
        mark = "" if crit.status == orac.status else "*"
        cells.append((crit.status + mark).ljust(18))
    print(name.replace(".toml", "").ljust(26) + "".join(cells))

print()
cfg = parse_config(os.path.join(CONFIG_DIR, "bilateral-growth.toml"))
verdict = classify(cfg.system, cfg.fam, "uniform")
b_class, c_class = verdict.bipartition
print("uniform expansivity of the bilateral-growth system comes with a")
print(f"certifying decomposition: {len(b_class)} sets blow up under forward")
print(f"iterates, {len(c_class)} under backward ones; together they cover all")
print(f"{len(cfg.fam.sets)} test sets.")
