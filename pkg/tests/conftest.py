import json

import numpy as np
import pytest

from hurwitzradon.exactmat import RationalMatrix


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ("HURWITZRADON_SEED", "HURWITZRADON_BUDGET", "HURWITZRADON_SUBSET_LIMIT"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture
def random_matrix():
    def make(rng, size, low=-2, high=2):
        values = rng.integers(low, high + 1, size=(size, size))
        return RationalMatrix.from_rows([[int(v) for v in row] for row in values])

    return make


@pytest.fixture
def write_json(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return write
