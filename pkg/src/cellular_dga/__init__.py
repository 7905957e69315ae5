"""Cellular DGAs of Legendrian surfaces over GF(2): augmentations, chain homotopy diagrams, monodromy."""
from __future__ import annotations

from .aug_search import (SearchConfig, SearchResult, brute_force, count_augmentations, exists_augmentation,
                         list_augmentations, staged_search)
from .chd import CHD, Augmentation, aug_to_chd, chd_to_aug, validate_chd
from .free_dga import CellularDGA
from .front_model import FrontComplex, load, save, validate

__all__ = [
    "Augmentation", "CHD", "CellularDGA", "FrontComplex", "SearchConfig", "SearchResult",
    "aug_to_chd", "brute_force", "chd_to_aug", "count_augmentations", "exists_augmentation",
    "list_augmentations", "load", "save", "staged_search", "validate", "validate_chd",
]
