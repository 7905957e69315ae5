"""Walkthrough: forced generator values and the obstruction report for the unknot conormal."""
from __future__ import annotations

# %% forced values near the two poles
from cellular_dga import builders
from cellular_dga.aug_search import constraint_probe
from cellular_dga.free_dga import CellularDGA
from cellular_dga.monodromy import obstruction_report

dga = CellularDGA(builders.conormal_unknot())
labels = {g.label(): g for g in dga.gens}
for name in ("a[s.A0](1,2)", "b[s.B0](1,2)", "a[n.A0](1,2)", "b[n.B0](1,2)"):
    print(name, "->", constraint_probe(dga, labels[name], rho=1))

# %% the report (graded, small enough to enumerate)
print(obstruction_report(dga, [], rho=0, basepoint="s.A0").table())
