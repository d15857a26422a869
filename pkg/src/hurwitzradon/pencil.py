import warnings
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from .exactmat import (
    ONE,
    ZERO,
    Polynomial,
    RationalMatrix,
    columns_to_matrix,
    count_real_roots,
    det,
    first_anticommutator_failure,
    linear_combination,
    mat_mul,
    mat_vec,
    nullspace,
    real_root_intervals,
    refine_root,
)
from .types import PencilVerdict
from .utils import (
    Method,
    PencilStatus,
    SamplingOnlyWarning,
    make_rng,
    probe_points,
    resolve_budget,
    resolve_seed,
)

DEFAULT_PROBES = 200

# Directions drawn per batched SVD call.
_CHUNK = 256
# Sampled minima below this fraction of the largest matrix norm are sent to exact confirmation.
_NEAR_ZERO = 1e-6
_DENOMINATORS = (1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 24, 32, 64, 100, 1000)


def _validate(matrices: Sequence[RationalMatrix]) -> List[RationalMatrix]:
    matrices = list(matrices)
    if not matrices:
        raise ValueError("A pencil needs at least one matrix.")
    for k, m in enumerate(matrices):
        if not isinstance(m, RationalMatrix):
            raise TypeError(f"Matrix {k + 1} is a {type(m).__name__}, expected a RationalMatrix.")
    size = matrices[0].rows
    for k, m in enumerate(matrices):
        if m.shape != (size, size):
            raise ValueError(f"Matrix {k + 1} is {m.rows}x{m.cols}; every matrix must be {size}x{size}.")
    return matrices


def is_singular_combination(t: Sequence[Fraction], matrices: Sequence[RationalMatrix]) -> bool:
    return any(t) and det(linear_combination(t, matrices)) == 0


def clifford_certificate(matrices: Sequence[RationalMatrix]) -> Optional[int]:
    """
    The sign ``epsilon`` if ``A_i A_j + A_j A_i = 2 epsilon delta_ij I`` holds exactly, else None.

    Either sign certifies the pencil: ``(sum t_i A_i)^2 = epsilon |t|^2 I`` is invertible for ``t != 0``.
    """
    matrices = _validate(matrices)
    size = matrices[0].rows
    square = mat_mul(matrices[0], matrices[0])
    for epsilon in (1, -1):
        if square == RationalMatrix.identity(size) * epsilon and first_anticommutator_failure(matrices, epsilon) is None:
            return epsilon
    return None


def pencil_polynomial(a1: RationalMatrix, a2: RationalMatrix) -> Polynomial:
    """
    ``det(A_1 + s A_2)`` as an exact polynomial in ``s``, interpolated at ``s = 0..N``.
    """
    _validate([a1, a2])
    xs = list(range(a1.rows + 1))
    return Polynomial.interpolate(xs, [det(a1 + a2 * s) for s in xs])


def _decide_two(a1: RationalMatrix, a2: RationalMatrix) -> PencilVerdict:
    method = Method.EXACT_N2_STURM
    if det(a1) == 0:
        return PencilVerdict(status=PencilStatus.REFUTED, method=method, counterexample=[ONE, ZERO])
    if det(a2) == 0:
        return PencilVerdict(status=PencilStatus.REFUTED, method=method, counterexample=[ZERO, ONE])

    # Off the axes every direction is a multiple of (1, s).
    p = pencil_polynomial(a1, a2)
    if count_real_roots(p) == 0:
        return PencilVerdict(status=PencilStatus.PROVEN_NONSINGULAR, method=method)

    intervals = real_root_intervals(p)
    for lo, hi in intervals:
        root, _ = refine_root(p, lo, hi)
        if root is not None:
            return PencilVerdict(status=PencilStatus.REFUTED, method=method, counterexample=[ONE, root])
    _, interval = refine_root(p, *intervals[0], max_steps=64)
    return PencilVerdict(status=PencilStatus.REFUTED, method=method, root_interval=interval)


def _exact_refutation(
    matrices: List[RationalMatrix], seed: int, probes: int
) -> Optional[Tuple[List[Fraction], Optional[List[Fraction]]]]:
    """
    Exact searches for a singular combination. Returns ``t`` and, when known, a kernel vector of ``sum t_i A_i``.
    """
    # Linearly dependent matrices: some combination is the zero matrix.
    dependence = nullspace(columns_to_matrix([m.entries for m in matrices]))
    if dependence:
        return dependence[0], None

    n = len(matrices)
    for i, m in enumerate(matrices):
        if det(m) == 0:
            return [ONE if k == i else ZERO for k in range(n)], None

    # A point x with dependent columns A_1 x, ..., A_n x gives t with (sum t_i A_i) x = 0.
    for x in probe_points(matrices[0].rows, probes, seed):
        kernel = nullspace(columns_to_matrix([mat_vec(m, x) for m in matrices]))
        if kernel:
            return kernel[0], [Fraction(v) for v in x]
    return None


def _sigma_min(stack: np.ndarray, directions: np.ndarray) -> np.ndarray:
    combos = np.tensordot(directions, stack, axes=1)
    return np.linalg.svd(combos, compute_uv=False)[:, -1]


def _sample_sphere(
    stack: np.ndarray, budget: int, rng: np.random.Generator, verbose: bool, keep: int = 4
) -> Tuple[float, List[np.ndarray]]:
    """
    Draws ``budget`` directions uniformly on the sphere and returns the smallest singular value seen with the
    best few directions. Chunks are reduced in order, so the result only depends on the seed.
    """
    n = stack.shape[0]
    best: List[Tuple[float, np.ndarray]] = []
    pbar = tqdm(total=budget, desc="Sampling pencil", unit="sample", disable=not verbose)
    for start in range(0, budget, _CHUNK):
        size = min(_CHUNK, budget - start)
        directions = rng.standard_normal((size, n))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        sigmas = _sigma_min(stack, directions)
        for k in np.argsort(sigmas, kind="stable")[:keep]:
            best.append((float(sigmas[k]), directions[k]))
        best = sorted(best, key=lambda item: item[0])[:keep]
        pbar.update(size)
    pbar.close()
    return (best[0][0] if best else float("inf")), [t for _, t in best]


def _refine_direction(stack: np.ndarray, t: np.ndarray, iterations: int = 200) -> Tuple[np.ndarray, float]:
    """
    Compass search for a local minimum of the smallest singular value on the sphere.
    """
    n = stack.shape[0]
    best = float(_sigma_min(stack, t[None, :])[0])
    step = 0.1
    for _ in range(iterations):
        if step < 1e-12:
            break
        trials = np.repeat(t[None, :], 2 * n, axis=0)
        trials[np.arange(n), np.arange(n)] += step
        trials[n + np.arange(n), np.arange(n)] -= step
        trials /= np.linalg.norm(trials, axis=1, keepdims=True)
        sigmas = _sigma_min(stack, trials)
        k = int(np.argmin(sigmas))
        if sigmas[k] < best:
            t, best = trials[k], float(sigmas[k])
        else:
            step /= 2
    return t, best


def _rationalize(t: np.ndarray, matrices: List[RationalMatrix]) -> Optional[List[Fraction]]:
    scaled = t / np.max(np.abs(t))
    tried = set()
    for bound in _DENOMINATORS:
        candidate = tuple(Fraction(float(v)).limit_denominator(bound) for v in scaled)
        if candidate in tried:
            continue
        tried.add(candidate)
        if is_singular_combination(candidate, matrices):
            return list(candidate)
    return None


def _float_search(
    matrices: List[RationalMatrix], budget: int, seed: int, verbose: bool
) -> Tuple[Optional[List[Fraction]], Optional[float]]:
    if budget == 0:
        return None, None
    stack = np.stack([m.to_numpy() for m in matrices])
    scale = max(float(np.linalg.norm(s)) for s in stack) or 1.0

    observed, candidates = _sample_sphere(stack, budget, make_rng(seed), verbose)
    for t in candidates:
        t, sigma = _refine_direction(stack, t)
        observed = min(observed, sigma)
        if sigma < _NEAR_ZERO * scale:
            exact = _rationalize(t, matrices)
            if exact is not None:
                return exact, observed
    return None, observed


def check_span(
    matrices: Sequence[RationalMatrix],
    sampling_budget: Optional[int] = None,
    seed: Optional[int] = None,
    verbose: bool = False,
) -> PencilVerdict:
    """
    Decides, or probes, whether every non-zero combination ``sum t_i A_i`` is invertible.

    The routes are tried in order: an exact Clifford certificate (either sign), the exact determinant for a
    single matrix, Sturm root counting on ``det(A_1 + s A_2)`` for two matrices, and for three or more
    exact probes followed by seeded sphere sampling. Sampling never proves nonsingularity, and a sampled
    near-singular direction only refutes after an exact ``det = 0`` at a rational approximation.

    Args:
        matrices: Square matrices of a common size.
        sampling_budget: Sphere directions to sample, defaults to ``HURWITZRADON_BUDGET`` or 2000.
        seed: Sampling seed, defaults to ``HURWITZRADON_SEED`` or 0.
        verbose: Show a progress bar while sampling.

    Returns:
        PencilVerdict: ``proven_nonsingular``, ``refuted`` (with an exact counterexample, or a certified
        root interval when two matrices vanish only at an irrational ratio) or ``sampled_clean``.
    """
    matrices = _validate(matrices)

    if clifford_certificate(matrices) is not None:
        return PencilVerdict(status=PencilStatus.PROVEN_NONSINGULAR, method=Method.CLIFFORD_CERTIFICATE)

    if len(matrices) == 1:
        if det(matrices[0]) != 0:
            return PencilVerdict(status=PencilStatus.PROVEN_NONSINGULAR, method=Method.EXACT_N1)
        return PencilVerdict(status=PencilStatus.REFUTED, method=Method.EXACT_N1, counterexample=[ONE])

    if len(matrices) == 2:
        return _decide_two(*matrices)

    seed = resolve_seed(seed)
    budget = resolve_budget(sampling_budget)
    found = _exact_refutation(matrices, seed, DEFAULT_PROBES)
    if found is not None:
        return PencilVerdict(status=PencilStatus.REFUTED, method=Method.SAMPLING, counterexample=found[0])

    t, observed = _float_search(matrices, budget, seed, verbose)
    if t is not None:
        return PencilVerdict(
            status=PencilStatus.REFUTED,
            method=Method.SAMPLING,
            counterexample=t,
            samples=budget,
            min_sigma_observed=observed,
        )

    warnings.warn(
        f"No singular combination among {len(matrices)} matrices after {budget} samples; nonsingularity is not proven.",
        SamplingOnlyWarning,
    )
    return PencilVerdict(
        status=PencilStatus.SAMPLED_CLEAN, method=Method.SAMPLING, samples=budget, min_sigma_observed=observed
    )


def refute_search(
    matrices: Sequence[RationalMatrix],
    seed: Optional[int] = None,
    budget: Optional[int] = None,
    probes: int = DEFAULT_PROBES,
) -> Optional[List[Fraction]]:
    """
    Searches for an exact ``t != 0`` with ``det(sum t_i A_i) = 0``.

    Exact checks run first (linear dependence, singular members, integer probe points shared with the
    field sampler, and for two matrices the rational roots of ``det(A_1 + s A_2)``), then a seeded sphere
    search minimizes the smallest singular value and confirms each near-zero exactly.

    Returns:
        The counterexample ``t``, or None if none was found within the budget.
    """
    matrices = _validate(matrices)
    seed = resolve_seed(seed)
    budget = resolve_budget(budget)

    found = _exact_refutation(matrices, seed, probes)
    if found is not None:
        return found[0]

    if len(matrices) == 2:
        verdict = _decide_two(*matrices)
        if verdict.counterexample is not None:
            return list(verdict.counterexample)

    t, _ = _float_search(matrices, budget, seed, verbose=False)
    return t


def kernel_vector(t: Sequence[Fraction], matrices: Sequence[RationalMatrix]) -> Optional[List[Fraction]]:
    """
    A non-zero integer vector ``x`` with ``(sum t_i A_i) x = 0``, or None if the combination is invertible.
    """
    basis = nullspace(linear_combination(list(t), list(matrices)))
    return basis[0] if basis else None
