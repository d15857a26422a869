"""
End-to-end checks of the closed forms, the witness constructions and the exact deciders on seeded families.
"""

import json

import numpy as np
import pytest

from hurwitzradon.cli import EXIT_OK, run
from hurwitzradon.clifford import CliffordElement, CliffordSignature, build_epsilon_family, extend_to_algebra_hom
from hurwitzradon.exactmat import (
    RationalMatrix,
    block,
    columns_to_matrix,
    det,
    linear_combination,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
)
from hurwitzradon.gmanifold import (
    ComplexGenerator,
    ComplexLinearAction,
    LinearAction,
    assemble_clifford_structure,
    catalogue_action,
    estimate_rho_g,
    estimate_rho_minus,
    estimate_rho_plus,
    killing_skew_check,
    read_back_homomorphism,
    realify,
    sample_complex_independence,
    sample_pointwise_independence,
)
from hurwitzradon.hurwitz import ord2, rho, supported_tags, table_value
from hurwitzradon.liepairs import build_rho1_witness, odd_sl_impossibility
from hurwitzradon.pairs._complex_general import pauli_family
from hurwitzradon.pencil import check_span, is_singular_combination, kernel_vector, refute_search
from hurwitzradon.types import CliffordStructureWitness
from hurwitzradon.utils import Certificate, Method, PencilStatus

DYADIC = [1, 2, 4, 8, 16]


def hr(*argv):
    lines = []
    code = run(list(argv), out=lines.append)
    return code, json.loads(lines[0])


def test_rho_closed_form_from_the_command_line():
    values = {}
    for n in range(1, 65):
        code, result = hr("rho", str(n))
        assert code == EXIT_OK
        values[n] = result["rho"]
    assert all(values[n] == 1 for n in range(1, 65, 2))
    assert [values[n] for n in (2, 4, 8, 16, 32, 64)] == [2, 4, 8, 9, 10, 12]
    for n in range(1, 5):
        assert values[16 * n] == values[n] + 8


def test_table_is_self_consistent():
    for tag in supported_tags():
        grid = {"su(p,q;D)": [[1, 2], [2, 3]], "sl(1,D)": [[]]}.get(tag, [[n] for n in range(1, 33)])
        for sizes in grid:
            value = table_value(tag, sizes)
            assert 0 <= value.rho1 <= value.rho2
    for n in range(1, 33):
        assert table_value("so(N,N)", [n]).rho1 == rho(n)
        assert table_value("gl(N,C)", [n]).rho1 == 2 * ord2(n) + 1
        for tag in ("sl(2N+1,R)", "sl(2N+1,C)", "sl(2N+1,H)"):
            value = table_value(tag, [n])
            assert (value.rho1, value.rho2) == (0, 1)


@pytest.mark.parametrize("n", DYADIC)
def test_split_orthogonal_witnesses_from_the_command_line(n, tmp_path):
    path = str(tmp_path / "witness.json")
    code, result = hr("witness", "--pair", "so(N,N)", "--size", str(n), "--n", str(rho(n)), "--emit", path)
    assert code == EXIT_OK
    assert len(result["matrices"]) == rho(n)

    code, check = hr("check-witness", path)
    assert code == EXIT_OK
    assert check["ok"]
    assert check["relation"]["checked"] == rho(n) ** 2


def _random_family(rng, random_matrix):
    size = int(rng.integers(2, 6))
    count = int(rng.integers(1, 4))
    return [random_matrix(rng, size) for _ in range(count)]


def test_field_sampler_and_pencil_refuter_certify_each_other(random_matrix):
    flagged, refuted = set(), set()
    for seed in range(100):
        rng = np.random.default_rng(seed)
        family = _random_family(rng, random_matrix)
        report = sample_pointwise_independence(
            LinearAction(dim=family[0].rows, generators=family), points=40, seed=seed, harvest=False
        )
        t = refute_search(family, seed=seed, budget=200, probes=40)

        for k in report.dependent_points:
            # A dependency among A_i x at a dependent point is a singular combination.
            x = report.points[k]
            coefficients = nullspace(columns_to_matrix([mat_vec(a, x) for a in family]))
            assert coefficients
            assert det(linear_combination(coefficients[0], family)) == 0
        if t is not None:
            # The kernel vector of the singular combination is a point where the fields are dependent.
            assert det(linear_combination(t, family)) == 0
            x = kernel_vector(t, family)
            assert x is not None
            assert rank(columns_to_matrix([mat_vec(a, x) for a in family])) < len(family)

        if not report.independent_everywhere_sampled:
            flagged.add(seed)
        if t is not None:
            refuted.add(seed)

    # The refuter checks the sampler's points before sampling, so it refutes every family the sampler flags.
    assert flagged <= refuted
    assert refuted


def _invertible(rng, random_matrix, size):
    while True:
        u = random_matrix(rng, size)
        if det(u) != 0:
            return u


def test_two_matrix_pencils_with_planted_roots(random_matrix):
    for seed in range(50):
        rng = np.random.default_rng(1000 + seed)
        u = _invertible(rng, random_matrix, 4)
        d = [int(v) for v in rng.choice([-3, -2, -1, 1, 2, 3], size=4)]
        a1, a2 = mat_mul(u, RationalMatrix.diag(d)), u
        # det(A1 + s A2) = det(U) (d_1 + s) ... (d_4 + s).
        verdict = check_span([a1, a2])
        assert verdict.status == PencilStatus.REFUTED
        assert verdict.method == Method.EXACT_N2_STURM
        assert is_singular_combination(verdict.counterexample, [a1, a2])
        assert -verdict.counterexample[1] in d


def test_two_matrix_pencils_without_roots(random_matrix):
    rotation = RationalMatrix.from_rows([[0, 1], [-1, 0]])
    k = block([[rotation, RationalMatrix.zeros(2)], [RationalMatrix.zeros(2), rotation]])
    i4 = RationalMatrix.identity(4)
    for seed in range(50):
        rng = np.random.default_rng(2000 + seed)
        u = _invertible(rng, random_matrix, 4)
        while True:
            alpha, beta, gamma, delta = (int(v) for v in rng.integers(-3, 4, size=4))
            if alpha * delta - beta * gamma != 0:
                break
        # (a I + b K) is invertible unless a = b = 0, which no real s reaches.
        a1 = mat_mul(u, i4 * alpha + k * beta)
        a2 = mat_mul(u, i4 * gamma + k * delta)
        verdict = check_span([a1, a2])
        assert verdict.status == PencilStatus.PROVEN_NONSINGULAR
        assert verdict.method in (Method.EXACT_N2_STURM, Method.CLIFFORD_CERTIFICATE)


def test_odd_special_linear_has_no_clifford_element():
    for m in (3, 5, 7, 9):
        assert odd_sl_impossibility(m, seed=0, candidates=200).impossible
    estimate = estimate_rho_g(catalogue_action("sl(3,R)"), sampling_budget=200, seed=0)
    assert estimate.value == 1
    assert estimate.certificate == Certificate.EXACT_N1.value
    assert estimate_rho_minus(catalogue_action("sl(3,R)")).value == 0


def _random_element(rng, signature):
    blades = signature.blades()
    picks = rng.choice(len(blades), size=min(4, len(blades)), replace=False)
    return CliffordElement(signature, {blades[int(b)]: int(rng.integers(-3, 4)) for b in picks})


def test_clifford_core_on_random_samples():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        p = int(rng.integers(0, 6))
        signature = CliffordSignature(p=p, q=int(rng.integers(0, 6 - p)))
        x, y, z = (_random_element(rng, signature) for _ in range(3))
        assert (x * y) * z == x * (y * z)

    homs = [extend_to_algebra_hom(build_epsilon_family(5, epsilon)) for epsilon in (1, -1)]
    for _ in range(500):
        hom = homs[int(rng.integers(0, 2))]
        blades = hom.signature.blades()
        a, b = (CliffordElement.blade(hom.signature, blades[int(rng.integers(0, len(blades)))]) for _ in range(2))
        assert hom(a * b) == mat_mul(hom(a), hom(b))

    for n in range(1, 10):
        for epsilon in (1, -1):
            assert build_epsilon_family(n, epsilon).n == n


def test_clifford_structure_round_trip():
    identity = RationalMatrix.identity(4)
    witness = assemble_clifford_structure(catalogue_action("o(4)"), identity, 3)
    hom = read_back_homomorphism(witness)
    signature = hom.signature
    for i, image in enumerate(witness.frame_images, start=1):
        assert hom(CliffordElement.generator(signature, i)) == image
        assert image.is_skew()
    for a in signature.blades():
        for b in signature.blades():
            x, y = CliffordElement.blade(signature, a), CliffordElement.blade(signature, b)
            assert hom(x * y) == mat_mul(hom(x), hom(y))
    assert killing_skew_check(LinearAction(dim=4, generators=witness.frame_images), identity).ok

    # The other direction: a skew Clifford family is a structure.
    family = build_epsilon_family(3, -1)
    assert CliffordStructureWitness(rank=3, metric=identity, frame_images=family.matrices).rank == 3

    for n in (2, 4):
        witnesses = build_rho1_witness(f"so({n},{n})", rho(n)).matrices
        report = killing_skew_check(LinearAction(dim=2 * n, generators=witnesses), RationalMatrix.identity(2 * n))
        assert not report.ok


def _complex_family(rng, random_matrix):
    k = int(rng.integers(0, 3))
    size = 2**k
    base = list(pauli_family(k))
    picks = rng.choice(len(base), size=int(rng.integers(1, len(base) + 1)), replace=False)
    generators = []
    for p in picks:
        real, imag = base[int(p)]
        sign = int(rng.choice([-1, 1]))
        generators.append(ComplexGenerator(real=real * sign, imag=imag * sign))
    if rng.random() < 0.5:
        generators.append(
            ComplexGenerator(real=random_matrix(rng, size, -1, 1), imag=random_matrix(rng, size, -1, 1))
        )
    return ComplexLinearAction(dim=size, generators=generators)


def test_estimates_are_invariant_under_realification(random_matrix):
    for seed in range(20):
        rng = np.random.default_rng(3000 + seed)
        action = _complex_family(rng, random_matrix)
        real = realify(action)
        assert estimate_rho_minus(action).value == estimate_rho_minus(real).value
        assert estimate_rho_g(action, sampling_budget=0).value == estimate_rho_g(real, sampling_budget=0).value
        complex_report = sample_complex_independence(action, points=20, seed=seed)
        real_report = sample_pointwise_independence(real, points=20, seed=seed, harvest=False)
        assert complex_report.ranks == real_report.ranks


@pytest.mark.parametrize("n", DYADIC)
def test_split_orthogonal_fields_reach_rho(n):
    action = catalogue_action(f"so({n},{n})")
    assert estimate_rho_minus(action).value == rho(n)
    assert estimate_rho_g(action, sampling_budget=0).value == rho(n)


@pytest.mark.parametrize("n", DYADIC)
def test_orthogonal_fields_reach_rho_minus_one(n):
    action = catalogue_action(f"o({n})")
    assert estimate_rho_g(action, sampling_budget=0).value == rho(n) - 1
    assert estimate_rho_plus(action).value == rho(n) - 1
