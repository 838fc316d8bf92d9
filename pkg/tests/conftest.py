"""Shared fixtures.

The full identity suite on the bundled model is expensive relative to
the rest of the tests, so it is computed once per session and shared.
"""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ccmv import (
    ManifoldModel,
    StructureConstants,
    build_abelian,
    build_heisenberg,
    levi_civita,
    riemann,
    run_suite,
)


@pytest.fixture(scope="session")
def heisenberg() -> ManifoldModel:
    return build_heisenberg()


@pytest.fixture(scope="session")
def abelian() -> ManifoldModel:
    return build_abelian()


@pytest.fixture(scope="session")
def heis_conn(heisenberg):
    return levi_civita(heisenberg)


@pytest.fixture(scope="session")
def heis_curv(heisenberg, heis_conn):
    return riemann(heisenberg, heis_conn)


@pytest.fixture(scope="session")
def heis_suite(heisenberg):
    return run_suite(heisenberg)


def make_nilpotent_model(seed: int) -> ManifoldModel:
    """Random two-step nilpotent perturbation of the bundled model.

    Horizontal pairs bracket into the vertical span only, and vertical
    directions are central, so the Jacobi identity holds by construction;
    callers still assert it before use.
    """
    rng = random.Random(f"nilpotent:{seed}")
    base = build_heisenberg()
    entries = {}
    for i in range(4):
        for j in range(i + 1, 4):
            for k in (4, 5):
                value = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                if value:
                    entries[(i, j, k)] = value
    constants = StructureConstants.from_entries(base.dim, entries)
    return ManifoldModel(name=f"nilpotent-{seed}", n=base.n,
                         constants=constants, G=base.G, H=base.H, J=base.J)


@pytest.fixture(scope="session")
def heis_path(tmp_path_factory) -> str:
    """A model file on disk for command-line tests."""
    from ccmv import HEISENBERG_CCM
    path = tmp_path_factory.mktemp("models") / "heisenberg.ccm"
    path.write_text(HEISENBERG_CCM, encoding="utf-8")
    return str(path)
