"""Input files for the curves and surfaces used throughout the test-suite."""
from __future__ import annotations

from importlib import resources
from pathlib import Path

CORPUS = (
    "cayley_a",
    "cayley_b",
    "line_arrangement",
    "fermat_surface",
    "fermat_curve",
    "nodal_cubic",
    "quintic_nonwh",
)


def fixture_path(name: str) -> Path:
    if name not in CORPUS:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(CORPUS)}")
    return Path(str(resources.files(__package__).joinpath(f"{name}.txt")))
