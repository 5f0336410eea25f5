import sys
from pathlib import Path

import numpy as np
import pytest

from wm import InputVariant

sys.path.insert(0, str(Path(__file__).parent))

# the parity variant from the legacy run-log example
PARITY = InputVariant(ident="VariantA", comment="Comment for VariantA",
                     n=0.3, eta=1.0, kf=1.0, rhof=0.3, anus=0.35,
                     viscosity=1.1e-8, permeabil=1.0,
                     i_sealed=1, i_seepage=0, i_eta=1)

ELASTIC = InputVariant(ident="elastic", n=0.3, eta=1.0, kf=0.0, rhof=0.0,
                       anus=0.25, viscosity=0.0, permeabil=1.0,
                       i_sealed=0, i_seepage=0, i_eta=1)


def random_variant(rng: np.random.Generator, lossless: bool = False,
                   **overrides) -> InputVariant:
    fields = dict(
        ident=f"v{int(rng.integers(10 ** 9))}",
        comment="",
        n=float(rng.uniform(0.06, 0.94)),
        eta=float(10.0 ** rng.uniform(-1.0, 1.0)),
        kf=float(rng.uniform(0.1, 4.0)),
        rhof=float(rng.uniform(0.05, 2.0)),
        anus=float(rng.uniform(-0.8, 0.45)),
        viscosity=0.0 if lossless else float(10.0 ** rng.uniform(-9.0, -2.0)),
        permeabil=float(10.0 ** rng.uniform(-2.0, 2.0)),
        i_sealed=int(rng.integers(0, 2)),
        i_seepage=0 if lossless else int(rng.integers(0, 2)),
        i_eta=int(rng.integers(1, 3)),
        iDrawGraph=0,
    )
    fields.update(overrides)
    return InputVariant(**fields)


@pytest.fixture
def parity() -> InputVariant:
    return PARITY


@pytest.fixture
def elastic() -> InputVariant:
    return ELASTIC


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240811)
