"""Walkthrough: augmentations of the crossed torus and the monodromy of its transverse loop."""
from __future__ import annotations

# %% build the complex and its algebra
from cellular_dga import builders
from cellular_dga.aug_search import list_augmentations
from cellular_dga.free_dga import CellularDGA
from cellular_dga.monodromy import continuation, fiber_homology, load_loops, monodromy_on_homology

dga = CellularDGA(builders.torus_curve())
print(dga.dump())

# %% every augmentation, its fiber homology at w and its loop matrices
loop = load_loops(builders.torus_loops())[0]
for i, aug in enumerate(list_augmentations(dga, rho=1)):
    cont = continuation(dga, aug, loop)
    hmap = monodromy_on_homology(dga, aug, loop)
    print(i, fiber_homology(dga, aug, "w"), cont.to_strings(), hmap.to_strings())
