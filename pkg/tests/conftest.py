from __future__ import annotations

from pathlib import Path

import pytest

from ambipref import Instance, load_instance

INSTANCE_DIR = Path(__file__).resolve().parent.parent / "instances"


@pytest.fixture(scope="session")
def disjoint_pair() -> Instance:
    """Two interval belief sets on two states with a gap between them."""
    return load_instance(INSTANCE_DIR / "disjoint_pair.json")


@pytest.fixture(scope="session")
def touching_intervals() -> Instance:
    """Two intervals sharing exactly the prior (2/5, 3/5)."""
    return load_instance(INSTANCE_DIR / "touching_intervals.json")


@pytest.fixture(scope="session")
def overlapping_intervals() -> Instance:
    """Intervals with a fat overlap, so no hyperplane can cut the first set."""
    return load_instance(INSTANCE_DIR / "overlapping_intervals.json")
