"""Bundled example sets: a 6-state UPB in C^2⊗C^2⊗C^2⊗C^3 and an 8-state UPB
in C^2⊗C^2⊗C^3⊗C^3, both with integer amplitudes."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .product import ProductStateSet, load_set


def example_path(n: int) -> Path:
    if n not in (1, 2):
        raise ValueError(f"no bundled example {n}")
    return Path(str(resources.files("upbforge") / "data" / f"example{n}.json"))


def example(n: int) -> ProductStateSet:
    return load_set(example_path(n))
