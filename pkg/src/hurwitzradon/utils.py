import hashlib
import json
import os
from enum import Enum
from typing import Any, List, Optional

import numpy as np


class Claim(Enum):
    CLIFFORD_RHO1 = "clifford_rho1"
    NONSINGULAR_RHO2 = "nonsingular_rho2"


class PencilStatus(Enum):
    PROVEN_NONSINGULAR = "proven_nonsingular"
    REFUTED = "refuted"
    SAMPLED_CLEAN = "sampled_clean"


class Method(Enum):
    CLIFFORD_CERTIFICATE = "clifford_certificate"
    EXACT_N1 = "exact_n1"
    EXACT_N2_STURM = "exact_n2_sturm"
    SAMPLING = "sampling"


class Certificate(Enum):
    CLOSED_FORM = "closed_form"
    EXACT_VERIFICATION = "exact_verification"
    CLIFFORD_CERTIFICATE = "clifford_certificate"
    EXACT_N1 = "exact_n1"
    EXACT_N2_STURM = "exact_n2_sturm"
    SAMPLING = "sampling"
    PARITY_ARGUMENT = "parity_argument"
    SUBSET_SEARCH = "subset_search"
    TABLE_BOUND = "table_bound"
    NONE = "none"


class SearchLimitWarning(UserWarning):
    """An estimator stopped at its subset or sampling limit; the reported value is a lower bound."""


class TableMismatchWarning(UserWarning):
    """A certified estimate differs from the closed-form table value."""


class SamplingOnlyWarning(UserWarning):
    """A verdict rests on sampling rather than on an exact proof."""


class TableBoundExceeded(ValueError):
    """A witness was requested above the closed-form value of its pair."""


class CliffordStructureNotFound(ValueError):
    """
    No family of the requested rank satisfies the Clifford-structure identities.

    Args:
        message: The error message.
        partial: The largest qualifying family found.
    """

    def __init__(self, message: str, partial: list):
        super().__init__(message)
        self.partial = partial


DEFAULT_SEED = 0
DEFAULT_BUDGET = 2000
DEFAULT_SUBSET_LIMIT = 5000


def _resolve_int(value: Optional[int], env_name: str, default: int) -> int:
    if value is not None:
        return int(value)
    raw = os.environ.get(env_name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise ValueError(f"The {env_name} environment variable must be an integer, got {raw!r}.") from e


def resolve_seed(seed: Optional[int] = None) -> int:
    """
    Returns the seed to use: the explicit value if given, else ``HURWITZRADON_SEED``, else 0.
    """
    seed = _resolve_int(seed, "HURWITZRADON_SEED", DEFAULT_SEED)
    if seed < 0:
        raise ValueError(f"Seeds must be non-negative, got {seed}.")
    return seed


def resolve_budget(budget: Optional[int] = None) -> int:
    budget = _resolve_int(budget, "HURWITZRADON_BUDGET", DEFAULT_BUDGET)
    if budget < 0:
        raise ValueError(f"Sampling budgets must be non-negative, got {budget}.")
    return budget


def resolve_subset_limit(limit: Optional[int] = None) -> int:
    limit = _resolve_int(limit, "HURWITZRADON_SUBSET_LIMIT", DEFAULT_SUBSET_LIMIT)
    if limit < 1:
        raise ValueError(f"Subset limits must be positive, got {limit}.")
    return limit


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def probe_points(dim: int, count: int, seed: int, low: int = -3, high: int = 3) -> List[List[int]]:
    """
    Deterministic integer probe points of R^dim minus the origin.

    The standard basis vectors come first, followed by seeded random integer vectors with entries
    in ``[low, high]``. Points are drawn one at a time, so a shorter request is always a prefix of a
    longer one with the same seed.

    Args:
        dim: The ambient dimension.
        count: The number of points to return.
        seed: Seed of the random part.
        low: Smallest random entry.
        high: Largest random entry.

    Returns:
        A list of ``count`` non-zero integer vectors.
    """
    if dim < 1:
        raise ValueError(f"The dimension must be positive, got {dim}.")

    points = []
    for k in range(min(dim, count)):
        points.append([1 if i == k else 0 for i in range(dim)])

    rng = make_rng(seed)
    while len(points) < count:
        x = [int(v) for v in rng.integers(low, high + 1, size=dim)]
        if any(x):
            points.append(x)
    return points


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(obj: Any) -> str:
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()
