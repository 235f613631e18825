"""
Shared fixtures; puts the repository root on sys.path so tests import the
top-level packages the way cap_cover.py does.
"""
from pathlib import Path
import sys

import numpy as np
import pytest

ROOT: Path = Path(__file__).resolve().parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from services.sampling import DEFAULT_SEED  # noqa: E402
from sphere_objects.quadrature_object import DEFAULT_SPEC, QuadratureSpec  # noqa: E402


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for ad hoc geometry tests."""
    return np.random.Generator(np.random.Philox(DEFAULT_SEED))


@pytest.fixture
def spec() -> QuadratureSpec:
    """The default quadrature settings."""
    return DEFAULT_SPEC


@pytest.fixture
def loose_spec() -> QuadratureSpec:
    """Looser settings for quadrature-heavy tests that compare against simulation."""
    return QuadratureSpec(abs_tol=1e-7, rel_tol=1e-7, table_nodes=32)


@pytest.fixture
def repo_root() -> Path:
    """Repository root, where cap_cover.py lives."""
    return ROOT
