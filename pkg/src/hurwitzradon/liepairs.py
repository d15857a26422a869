from typing import List, Optional, Sequence, Union

import numpy as np

from .clifford import verify_epsilon_family
from .exactmat import RationalMatrix
from .main_pair import CartanPair
from .pencil import check_span
from .types import ClassicalPairKind, EpsilonFamily, ImpossibilityReport, WitnessCheck, WitnessFamily
from .utils import Claim, PencilStatus, make_rng, resolve_seed


def make_pair(kind: Union[ClassicalPairKind, str], sizes: Sequence[int] = ()) -> CartanPair:
    """
    Builds a catalogued pair.

    Args:
        kind: A pair kind with its ``sizes`` (``"so(N,N)", [8]``), a ClassicalPairKind, or a concrete label
            such as ``"so(8,8)"`` when ``sizes`` is empty.
        sizes: The size parameters of the kind.

    Returns:
        CartanPair: The pair with its membership equations, basis and witness builders.
    """
    if isinstance(kind, ClassicalPairKind):
        return CartanPair(kind.tag, kind.sizes)
    if not sizes and "N" not in kind and "M" not in kind:
        return CartanPair.from_label(kind)
    return CartanPair(kind, sizes)


def _as_pair(pair: Union[CartanPair, str]) -> CartanPair:
    return pair if isinstance(pair, CartanPair) else make_pair(pair)


def p_membership(pair: Union[CartanPair, str], a: RationalMatrix) -> bool:
    """
    Whether ``a`` lies in the image of the Cartan subspace. Raises ValueError on a size mismatch.
    """
    return _as_pair(pair).p_membership(a)


def p_basis(pair: Union[CartanPair, str]) -> List[RationalMatrix]:
    return _as_pair(pair).p_basis()


def build_rho1_witness(pair: Union[CartanPair, str], n: int) -> WitnessFamily:
    """
    Builds ``n`` Clifford witnesses ``A_i A_j + A_j A_i = 2 delta_ij I`` inside the Cartan subspace.

    Requests above the closed-form value of the pair are refused with TableBoundExceeded; the refusal
    trusts the table and is not a search result.

    Args:
        pair: The pair, or its concrete label.
        n: The family size.

    Returns:
        WitnessFamily: The exactly verified family with claim ``clifford_rho1``.
    """
    pair = _as_pair(pair)
    matrices = pair.build_rho1_witness(n)
    family = EpsilonFamily.model_construct(epsilon=1, n=len(matrices), dim=pair.rep_dim, matrices=matrices)
    report = verify_epsilon_family(family)
    if not report.ok or not all(pair.p_membership(a) for a in matrices):
        raise RuntimeError(f"The synthesized witness for {pair.label} failed its own verification: {report}.")
    return WitnessFamily(
        pair=pair.label, n=n, matrices=matrices, claim=Claim.CLIFFORD_RHO1, note=f"{n} of {pair.targets()[0]} (closed form)"
    )


def build_rho2_witness(pair: Union[CartanPair, str], n: int) -> WitnessFamily:
    """
    Builds ``n`` elements of the Cartan subspace spanning a nonsingular pencil.

    Clifford-capable pairs reuse their Clifford witnesses; ``o(N)`` uses the ``rho(N) - 1`` skew family and odd
    ``sl(M,R)`` the single matrix ``diag(1, ..., 1, -(M-1))``.
    """
    pair = _as_pair(pair)
    matrices = pair.build_rho2_witness(n)
    return WitnessFamily(
        pair=pair.label,
        n=n,
        matrices=matrices,
        claim=Claim.NONSINGULAR_RHO2,
        note=f"{n} of {pair.targets()[1]}",
    )


def _check_odd(m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < 3 or m % 2 == 0:
        raise ValueError(f"The odd sl argument needs an odd M >= 3, got {m!r}.")


def _random_candidate(rng: np.random.Generator, m: int, kind: int):
    """
    A random symmetric integer matrix ``S`` and scale ``s``; the candidate is ``S / s``.
    """
    if kind == 0:
        # Traceless symmetric, small entries.
        upper = np.triu(rng.integers(-2, 3, size=(m, m)))
        s = upper + np.triu(upper, 1).T
        s[-1, -1] = -np.trace(s[:-1, :-1])
        return s, 1
    if kind == 1:
        # Involution Q D Q^T for a signed permutation Q and a +-1 diagonal D.
        q = np.zeros((m, m), dtype=np.int64)
        q[np.arange(m), rng.permutation(m)] = rng.choice([-1, 1], size=m)
        d = np.diag(rng.choice([-1, 1], size=m))
        return q @ d @ q.T, 1
    # Householder reflection I - 2 v v^T / v^T v, scaled by v^T v.
    v = np.zeros(m, dtype=np.int64)
    while not v.any():
        v = rng.integers(-3, 4, size=m)
    scale = int(v @ v)
    return scale * np.eye(m, dtype=np.int64) - 2 * np.outer(v, v), scale


def odd_sl_impossibility(m: int, seed: Optional[int] = None, candidates: int = 1000) -> ImpossibilityReport:
    """
    Certifies that no traceless symmetric ``A`` of odd size ``M`` satisfies ``A^2 = I``.

    A symmetric ``A`` with ``A^2 = I`` has eigenvalues +1 and -1 with multiplicities ``p + q = M``, and
    ``tr A = p - q``; ``p - q = 0`` has no solution for odd ``M``. The seeded search then examines traceless
    symmetric matrices and symmetric involutions and confirms that each breaks one of the two conditions.

    Args:
        m: An odd size, at least 3.
        seed: Seed of the candidate search.
        candidates: The number of candidates.

    Returns:
        ImpossibilityReport: The argument and the search tally.
    """
    _check_odd(m)
    seed = resolve_seed(seed)
    solutions = [(p, m - p) for p in range(m + 1) if p - (m - p) == 0]

    rng = make_rng(seed)
    violations = 0
    for k in range(candidates):
        s, scale = _random_candidate(rng, m, k % 3)
        involution = np.array_equal(s @ s, scale * scale * np.eye(m, dtype=np.int64))
        traceless = int(np.trace(s)) == 0
        if not (np.array_equal(s, s.T) and involution and traceless):
            violations += 1

    return ImpossibilityReport(
        m=m,
        impossible=not solutions and violations == candidates,
        argument=(
            f"A symmetric A with A^2 = I has eigenvalues +1 and -1 with multiplicities p + q = {m}; "
            f"tr A = p - q = 0 would force p = q, impossible since {m} is odd."
        ),
        multiplicity_solutions=solutions,
        candidates=candidates,
        violations=violations,
        seed=seed,
    )


def build_rho2_witness_odd_sl(m: int) -> WitnessFamily:
    """
    The single invertible traceless symmetric matrix ``diag(1, ..., 1, -(M-1))`` of ``sl(M,R)``, M odd.
    """
    _check_odd(m)
    return build_rho2_witness(CartanPair("sl(M,R)", [m]), 1)


def check_witness(
    family: WitnessFamily, sampling_budget: Optional[int] = None, seed: Optional[int] = None
) -> WitnessCheck:
    """
    Re-verifies a witness family: membership of every matrix, then the Clifford identity (``clifford_rho1``)
    or the pencil decision (``nonsingular_rho2``).
    """
    pair = make_pair(family.pair)
    membership = [pair.p_membership(a) for a in family.matrices]
    if not family.matrices:
        return WitnessCheck(ok=True, membership=membership)

    if family.claim == Claim.CLIFFORD_RHO1:
        fam = EpsilonFamily.model_construct(
            epsilon=1, n=family.n, dim=family.matrices[0].rows, matrices=list(family.matrices)
        )
        report = verify_epsilon_family(fam)
        return WitnessCheck(ok=all(membership) and report.ok, membership=membership, relation=report)

    verdict = check_span(family.matrices, sampling_budget=sampling_budget, seed=seed)
    return WitnessCheck(
        ok=all(membership) and verdict.status != PencilStatus.REFUTED, membership=membership, verdict=verdict
    )
