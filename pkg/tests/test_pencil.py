import warnings
from fractions import Fraction

import numpy as np
import pytest

from hurwitzradon.clifford import build_epsilon_family, symmetric_family
from hurwitzradon.exactmat import Polynomial, RationalMatrix, block, det, linear_combination, mat_mul, mat_vec
from hurwitzradon.pencil import (
    check_span,
    clifford_certificate,
    is_singular_combination,
    kernel_vector,
    pencil_polynomial,
    refute_search,
)
from hurwitzradon.utils import Method, PencilStatus, SamplingOnlyWarning

P = RationalMatrix.from_rows([[1, 0], [0, -1]])
Q = RationalMatrix.from_rows([[0, 1], [1, 0]])
J = RationalMatrix.from_rows([[0, 1], [-1, 0]])
I2 = RationalMatrix.identity(2)


def test_clifford_certificate_both_signs():
    assert clifford_certificate([P, Q]) == 1
    assert clifford_certificate([J]) == -1
    assert clifford_certificate([I2, J]) is None


def test_single_matrix():
    verdict = check_span([RationalMatrix.from_rows([[2, 1], [1, 1]])])
    assert (verdict.status, verdict.method) == (PencilStatus.PROVEN_NONSINGULAR, Method.EXACT_N1)

    verdict = check_span([RationalMatrix.diag([1, 0])])
    assert (verdict.status, verdict.method) == (PencilStatus.REFUTED, Method.EXACT_N1)
    assert verdict.counterexample == [1]


def test_clifford_pair_is_proven():
    verdict = check_span([P, Q])
    assert (verdict.status, verdict.method) == (PencilStatus.PROVEN_NONSINGULAR, Method.CLIFFORD_CERTIFICATE)


def test_identity_and_rotation_have_no_real_root():
    # det(I + sJ) = 1 + s^2.
    verdict = check_span([I2, J])
    assert (verdict.status, verdict.method) == (PencilStatus.PROVEN_NONSINGULAR, Method.EXACT_N2_STURM)


def test_identity_and_reflection_are_refuted():
    # det(I + sP) = 1 - s^2 vanishes at s = +-1.
    verdict = check_span([I2, P])
    assert verdict.status == PencilStatus.REFUTED
    assert verdict.method == Method.EXACT_N2_STURM
    assert is_singular_combination(verdict.counterexample, [I2, P])


def test_singular_member_is_refuted_on_the_axis():
    verdict = check_span([I2, RationalMatrix.diag([1, 0])])
    assert verdict.counterexample == [0, 1]


def test_rational_root_gives_exact_counterexample():
    # det(A1 + sI) = (1 + s)(s - 2).
    a1 = RationalMatrix.from_rows([[1, 0], [0, -2]])
    verdict = check_span([a1, I2])
    assert verdict.status == PencilStatus.REFUTED
    assert verdict.counterexample[1] in (-1, 2)


def test_irrational_root_gives_isolating_interval():
    # det(A1 + sI) = s^2 - 2.
    a1 = RationalMatrix.from_rows([[0, 2], [1, 0]])
    verdict = check_span([a1, I2])
    assert verdict.status == PencilStatus.REFUTED
    assert verdict.counterexample is None
    lo, hi = verdict.root_interval
    assert lo < hi
    assert pencil_polynomial(a1, I2)(lo) * pencil_polynomial(a1, I2)(hi) <= 0


def test_pencil_polynomial_matches_determinants():
    a1 = RationalMatrix.from_rows([[1, 2, 0], [0, 1, 1], [3, 0, 1]])
    a2 = RationalMatrix.from_rows([[0, 1, 1], [1, 0, 0], [2, 1, 0]])
    p = pencil_polynomial(a1, a2)
    for s in (Fraction(-7, 3), Fraction(1, 2), 5):
        assert p(s) == det(a1 + a2 * s)


def test_clifford_family_of_three_is_proven_without_sampling():
    family = build_epsilon_family(3, 1).matrices
    verdict = check_span(family)
    assert (verdict.status, verdict.method) == (PencilStatus.PROVEN_NONSINGULAR, Method.CLIFFORD_CERTIFICATE)


def test_dependent_matrices_are_refuted():
    verdict = check_span([I2, P, I2 + P])
    assert verdict.status == PencilStatus.REFUTED
    assert linear_combination(verdict.counterexample, [I2, P, I2 + P]).is_zero()


def test_planted_kernel_is_found_by_probes():
    # e1 is an eigenvector of A2 and A3, so the probe at e1 finds a singular combination.
    a1 = RationalMatrix.from_rows([[1, 0, 1], [0, 1, 1], [1, 1, 3]])
    a2 = RationalMatrix.identity(3)
    a3 = RationalMatrix.from_rows([[2, 0, 0], [0, 3, 0], [0, 0, 5]])
    verdict = check_span([a1, a2, a3], sampling_budget=0)
    assert verdict.status == PencilStatus.REFUTED
    assert is_singular_combination(verdict.counterexample, [a1, a2, a3])


def test_sampling_never_proves():
    # Symmetric Clifford family with one member scaled: still nonsingular but no certificate.
    a, b, c = symmetric_family(4, 3)
    family = [a * 2, b, c]
    with pytest.warns(SamplingOnlyWarning):
        verdict = check_span(family, sampling_budget=300, seed=3)
    assert verdict.status == PencilStatus.SAMPLED_CLEAN
    assert verdict.method == Method.SAMPLING
    assert verdict.samples == 300
    assert verdict.min_sigma_observed > 0.5


def test_sampling_is_deterministic_for_a_seed():
    a, b, c = symmetric_family(4, 3)
    family = [a * 2, b, c]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        first = check_span(family, sampling_budget=200, seed=11)
        second = check_span(family, sampling_budget=200, seed=11)
    assert first == second


def test_validation_errors():
    with pytest.raises(ValueError):
        check_span([])
    with pytest.raises(ValueError):
        check_span([I2, RationalMatrix.identity(3)])
    with pytest.raises(TypeError):
        check_span([np.eye(2)])


def test_refute_search_and_kernel_vector():
    t = refute_search([I2, P], seed=0, budget=100)
    assert t is not None
    x = kernel_vector(t, [I2, P])
    assert any(x)
    assert mat_vec(linear_combination(t, [I2, P]), x) == [0, 0]
    assert refute_search([P, Q], seed=0, budget=100) is None
    assert kernel_vector([1, 0], [P, Q]) is None


def test_polynomial_of_clifford_pair_is_negative_definite():
    p = pencil_polynomial(P, Q)
    assert p == Polynomial([-1, 0, -1])
    assert mat_mul(P, Q) == -mat_mul(Q, P)


def _random_rational_vector(rng, n):
    while True:
        t = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 10))) for _ in range(n)]
        if any(t):
            return t


@pytest.mark.parametrize(
    "family",
    [[P, Q], [I2, J], build_epsilon_family(3, 1).matrices, build_epsilon_family(3, -1).matrices],
    ids=["clifford-pair", "identity-rotation", "positive-triple", "negative-triple"],
)
def test_proven_nonsingular_span_has_no_singular_combination(family):
    assert check_span(family).status == PencilStatus.PROVEN_NONSINGULAR
    rng = np.random.default_rng(5)
    for _ in range(500):
        assert det(linear_combination(_random_rational_vector(rng, len(family)), family)) != 0


def _changes_sign_on_circle(a1, a2, angles=10**4):
    # det(-A) = det(A) in even dimension, so half a turn covers every direction.
    theta = np.linspace(0, np.pi, angles)
    combos = np.cos(theta)[:, None, None] * a1.to_numpy() + np.sin(theta)[:, None, None] * a2.to_numpy()
    signs = np.sign(np.linalg.det(combos))
    return bool(np.any(signs[:-1] * signs[1:] < 0))


def test_two_matrix_verdict_agrees_with_angle_grid(random_matrix):
    rotation = block([[J, RationalMatrix.zeros(2)], [RationalMatrix.zeros(2), J]])
    pairs = [(RationalMatrix.identity(4), rotation)]
    for seed in range(40):
        rng = np.random.default_rng(300 + seed)
        pairs.append((random_matrix(rng, 4), random_matrix(rng, 4)))

    proven = 0
    for a1, a2 in pairs:
        verdict = check_span([a1, a2])
        assert verdict.method == Method.EXACT_N2_STURM
        if verdict.status == PencilStatus.PROVEN_NONSINGULAR:
            proven += 1
            assert not _changes_sign_on_circle(a1, a2)
        else:
            assert verdict.status == PencilStatus.REFUTED
        if _changes_sign_on_circle(a1, a2):
            assert verdict.status == PencilStatus.REFUTED
    assert proven > 0


@pytest.mark.parametrize("c1, c2", [(Fraction(3, 2), 1), (Fraction(-2, 5), Fraction(7, 3)), (5, Fraction(-1, 4))])
def test_verdict_is_invariant_under_rescaling(c1, c2, random_matrix):
    pairs = [(P, Q), (I2, J), (I2, P)]
    rng = np.random.default_rng(17)
    pairs += [(random_matrix(rng, 4), random_matrix(rng, 4)) for _ in range(10)]
    for a1, a2 in pairs:
        assert check_span([a1 * c1, a2 * c2]).status == check_span([a1, a2]).status
