"""Walkthrough: augmentation existence for fronts over trivalent graphs versus face parity."""
from __future__ import annotations

# %% the graph corpus
import time

from cellular_dga import builders
from cellular_dga.aug_search import exists_augmentation

for g in builders.graph_corpus():
    start = time.perf_counter()
    fc = builders.tz_complex(g)
    found = exists_augmentation(fc, rho=1)
    print(f"{g.name:<22} genus {g.genus}  faces {[len(f) for f in g.faces]}  "
          f"even {builders.even_faces(g)!s:<5}  augmentation {found!s:<5}  "
          f"{len(fc.cells)} cells  {time.perf_counter() - start:.1f}s")
