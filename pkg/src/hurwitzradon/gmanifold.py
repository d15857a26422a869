import math
import warnings
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .clifford import AlgebraHomomorphism, extend_to_algebra_hom
from .exactmat import (
    RationalLike,
    RationalMatrix,
    anticommutator,
    columns_to_matrix,
    det,
    is_positive_definite,
    mat_mul,
    mat_vec,
    rank,
    realify_matrix,
    to_rational,
)
from .hurwitz import rho
from .liepairs import make_pair, odd_sl_impossibility
from .main_pair import CartanPair
from .pencil import check_span, kernel_vector, refute_search
from .types import CliffordStructureWitness, EpsilonFamily, FieldSampleReport, KillingReport, Matrix, RhoEstimate
from .utils import (
    Certificate,
    CliffordStructureNotFound,
    PencilStatus,
    SearchLimitWarning,
    TableMismatchWarning,
    probe_points,
    resolve_budget,
    resolve_seed,
    resolve_subset_limit,
)

# A sampled-only extension is accepted when the smallest singular value seen stays above this
# fraction of the largest generator norm.
SAMPLED_ACCEPT_MARGIN = 0.05

# Pairwise recombinations A + B and A - B are searched only below this many generators.
_RECOMBINATION_LIMIT = 24


class LinearAction(BaseModel):
    """
    A linear action on ``R^N`` minus the origin, given by the images of chosen Lie algebra elements.

    Args:
        dim: The dimension ``N``.
        generators: The ``N x N`` generator images.
        label: The catalogued pair the generators come from, if any.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    dim: int = Field(..., ge=1)
    generators: List[Matrix] = []
    label: Optional[str] = None

    @model_validator(mode="after")
    def check_generators(self):
        for k, g in enumerate(self.generators):
            if g.shape != (self.dim, self.dim):
                raise ValueError(f"Generator {k + 1} is {g.rows}x{g.cols}; the action is on R^{self.dim}.")
        return self


class ComplexGenerator(BaseModel):
    """
    A complex matrix ``A + iB`` stored as its real and imaginary parts.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    real: Matrix
    imag: Matrix

    @model_validator(mode="after")
    def check_parts(self):
        if self.real.shape != self.imag.shape or not self.real.is_square:
            raise ValueError(
                f"Real part is {self.real.rows}x{self.real.cols} but imaginary part is {self.imag.rows}x{self.imag.cols}."
            )
        return self

    def __mul__(self, other: "ComplexGenerator") -> "ComplexGenerator":
        a, b, c, d = self.real, self.imag, other.real, other.imag
        return ComplexGenerator(real=mat_mul(a, c) - mat_mul(b, d), imag=mat_mul(a, d) + mat_mul(b, c))

    def __add__(self, other: "ComplexGenerator") -> "ComplexGenerator":
        return ComplexGenerator(real=self.real + other.real, imag=self.imag + other.imag)

    def scaled(self, factor: RationalLike) -> "ComplexGenerator":
        return ComplexGenerator(real=self.real * factor, imag=self.imag * factor)

    def is_zero(self) -> bool:
        return self.real.is_zero() and self.imag.is_zero()

    def realified(self) -> RationalMatrix:
        return realify_matrix(self.real, self.imag)


class ComplexLinearAction(BaseModel):
    """
    A complex linear action on ``C^N`` minus the origin.

    Args:
        dim: The complex dimension ``N``.
        generators: The generator images as (real, imaginary) pairs.
        label: A free-form label.
    """

    dim: int = Field(..., ge=1)
    generators: List[ComplexGenerator] = []
    label: Optional[str] = None

    @model_validator(mode="after")
    def check_generators(self):
        for k, g in enumerate(self.generators):
            if g.real.shape != (self.dim, self.dim):
                raise ValueError(f"Generator {k + 1} is {g.real.rows}x{g.real.cols}; the action is on C^{self.dim}.")
        return self

    def fundamental_field_at(
        self, i: int, x: Sequence[RationalLike], y: Sequence[RationalLike]
    ) -> Tuple[List[Fraction], List[Fraction]]:
        """
        ``(A_i + iB_i)(x + iy)`` as its real and imaginary parts.
        """
        _check_index(i, len(self.generators))
        _check_point(list(x) + list(y))
        g = self.generators[i]
        real = [u - v for u, v in zip(mat_vec(g.real, x), mat_vec(g.imag, y))]
        imag = [u + v for u, v in zip(mat_vec(g.imag, x), mat_vec(g.real, y))]
        return real, imag


def _check_index(i: int, n: int) -> None:
    if not 0 <= i < n:
        raise ValueError(f"Generator index {i} is out of range for {n} generators.")


def _check_point(x: Sequence[RationalLike]) -> List[Fraction]:
    x = [to_rational(v) for v in x]
    if not any(x):
        raise ValueError("x = 0 is not a point of the punctured space.")
    return x


def fundamental_field_at(action: LinearAction, i: int, x: Sequence[RationalLike]) -> List[Fraction]:
    """
    The fundamental vector field of generator ``i`` (0-based) at ``x``: ``A_i x``.
    """
    _check_index(i, len(action.generators))
    x = _check_point(x)
    if len(x) != action.dim:
        raise ValueError(f"The point has {len(x)} coordinates; the action is on R^{action.dim}.")
    return mat_vec(action.generators[i], x)


def flat_connection_operator(action: LinearAction, i: int) -> RationalMatrix:
    """
    The covariant derivative of the fundamental field of generator ``i`` under the flat connection.

    For a linear field ``x -> A x`` the coordinate derivative is the constant endomorphism ``A`` itself.
    """
    _check_index(i, len(action.generators))
    g = action.generators[i]
    return RationalMatrix(g.rows, g.cols, g.entries)


def _rank_at(generators: Sequence[RationalMatrix], x: Sequence[Fraction]) -> int:
    if not generators:
        return 0
    return rank(columns_to_matrix([mat_vec(g, x) for g in generators]))


def sample_pointwise_independence(
    action: LinearAction,
    points: int = 200,
    seed: Optional[int] = None,
    harvest: bool = True,
    budget: Optional[int] = None,
) -> FieldSampleReport:
    """
    Exact ranks of the fundamental fields ``[A_1 x | ... | A_n x]`` at sampled points.

    The points are the standard basis vectors, seeded random integer points, and, with ``harvest``, a kernel
    vector of any exact singular combination the pencil refuter finds.

    Args:
        action: The action.
        points: The number of basis and random points.
        seed: Seed of the random points and of the refuter.
        harvest: Add near-kernel points found by the pencil refuter.
        budget: Sampling budget of the refuter.

    Returns:
        FieldSampleReport: The points and ranks.
    """
    seed = resolve_seed(seed)
    generators = list(action.generators)
    xs = [[Fraction(v) for v in x] for x in probe_points(action.dim, points, seed)]

    if harvest and generators:
        t = refute_search(generators, seed=seed, budget=budget, probes=points)
        if t is not None:
            x = kernel_vector(t, generators)
            if x is not None:
                xs.append(x)

    ranks = [_rank_at(generators, x) for x in xs]
    n = len(generators)
    return FieldSampleReport(
        n=n,
        points=xs,
        ranks=ranks,
        independent_everywhere_sampled=all(r == n for r in ranks),
        dependent_points=[k for k, r in enumerate(ranks) if r != n],
    )


def realify_point(x: Sequence[RationalLike], y: Sequence[RationalLike]) -> List[Fraction]:
    """
    The real coordinates ``(x; y)`` of ``x + iy``.
    """
    return [to_rational(v) for v in x] + [to_rational(v) for v in y]


def sample_complex_independence(
    action: ComplexLinearAction, points: int = 200, seed: Optional[int] = None
) -> FieldSampleReport:
    """
    Real ranks of the complex fundamental fields at sampled points ``x + iy``, reported at ``(x; y)``.

    The points are those the real sampler draws on ``R^2N``, so the report can be compared with the
    realified action point by point.
    """
    seed = resolve_seed(seed)
    n = len(action.generators)
    xs, ranks = [], []
    for p in probe_points(2 * action.dim, points, seed):
        x, y = p[: action.dim], p[action.dim :]
        columns = []
        for i in range(n):
            real, imag = action.fundamental_field_at(i, x, y)
            columns.append(real + imag)
        xs.append(realify_point(x, y))
        ranks.append(rank(columns_to_matrix(columns)) if columns else 0)
    return FieldSampleReport(
        n=n,
        points=xs,
        ranks=ranks,
        independent_everywhere_sampled=all(r == n for r in ranks),
        dependent_points=[k for k, r in enumerate(ranks) if r != n],
    )


def realify(action: ComplexLinearAction) -> LinearAction:
    """
    The real form of a complex action: every ``A + iB`` becomes ``[[A, -B], [B, A]]`` on ``R^2N``.
    """
    return LinearAction(dim=2 * action.dim, generators=[g.realified() for g in action.generators], label=action.label)


def _rational_sqrt(value: Fraction) -> Optional[Fraction]:
    if value <= 0:
        return None
    num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if num * num != value.numerator or den * den != value.denominator:
        return None
    return Fraction(num, den)


def _scalar_square(square: RationalMatrix) -> Optional[Fraction]:
    c = square[0, 0]
    return c if square == RationalMatrix.identity(square.rows) * c else None


def _normalized(a: RationalMatrix, epsilon: int) -> Optional[RationalMatrix]:
    """
    ``a / sqrt(|c|)`` when ``a^2 = c I`` with ``sign(c) = epsilon`` and ``|c|`` a rational square.
    """
    if a.is_zero():
        return None
    c = _scalar_square(mat_mul(a, a))
    root = _rational_sqrt(epsilon * c) if c is not None else None
    return a * (1 / root) if root is not None else None


def _normalized_complex(a: ComplexGenerator) -> Optional[ComplexGenerator]:
    if a.is_zero():
        return None
    square = a * a
    if not square.imag.is_zero():
        return None
    c = _scalar_square(square.real)
    root = _rational_sqrt(c) if c is not None else None
    return a.scaled(1 / root) if root is not None else None


def _recombinations(generators: list, add: Callable, negate: Callable) -> list:
    if len(generators) > _RECOMBINATION_LIMIT:
        return []
    out = []
    for i in range(len(generators)):
        for j in range(i + 1, len(generators)):
            out.append(add(generators[i], generators[j]))
            out.append(add(generators[i], negate(generators[j])))
    return out


def _unique(items: list) -> list:
    seen, out = set(), []
    for item in items:
        key = (item.real, item.imag) if isinstance(item, ComplexGenerator) else item
        if key not in seen:
            seen.add(key)
            out.append(item)
    return out


def _max_anticommuting_family(candidates: list, anticommute: Callable, limit: int) -> Tuple[List[int], bool]:
    """
    The largest pairwise anticommuting subset, by depth-first branch and bound over at most ``limit`` nodes.

    Returns:
        The chosen indices and whether the search was exhaustive.
    """
    k = len(candidates)
    adjacent = [[False] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            adjacent[i][j] = adjacent[j][i] = anticommute(candidates[i], candidates[j])

    best: List[int] = []
    nodes = 0
    exhausted = True

    def extend(current: List[int], remaining: List[int]) -> None:
        nonlocal best, nodes, exhausted
        if len(current) > len(best):
            best = list(current)
        for pos, v in enumerate(remaining):
            if len(current) + len(remaining) - pos <= len(best):
                return
            nodes += 1
            if nodes > limit:
                exhausted = False
                return
            extend(current + [v], [w for w in remaining[pos + 1 :] if adjacent[v][w]])

    extend([], list(range(k)))
    return best, exhausted


def _real_clifford_search(
    generators: Sequence[RationalMatrix], epsilon: int, limit: int, metric: Optional[RationalMatrix] = None
) -> Tuple[List[RationalMatrix], bool]:
    pool = list(generators) + _recombinations(list(generators), lambda a, b: a + b, lambda a: -a)
    candidates = []
    for a in pool:
        a = _normalized(a, epsilon)
        if a is not None and (metric is None or _metric_skew(a, metric)):
            candidates.append(a)
    candidates = _unique(candidates)
    chosen, exhausted = _max_anticommuting_family(
        candidates, lambda a, b: anticommutator(a, b).is_zero(), limit
    )
    return [candidates[k] for k in chosen], exhausted


def _metric_skew(a: RationalMatrix, metric: RationalMatrix) -> bool:
    return (mat_mul(a.T, metric) + mat_mul(metric, a)).is_zero()


def _catalogued(action: LinearAction) -> Optional[CartanPair]:
    if not action.label:
        return None
    try:
        return make_pair(action.label)
    except ValueError:
        return None


def _limit_warning(mode: str, value: int) -> None:
    warnings.warn(f"The {mode} search stopped at its subset limit; {value} is a lower bound.", SearchLimitWarning)


def _cross_check(mode: str, value: int, expected: Optional[int], exhausted: bool) -> None:
    if expected is not None and exhausted and value != expected:
        warnings.warn(
            f"The certified {mode} estimate {value} differs from the closed-form value {expected}.", TableMismatchWarning
        )


def estimate_rho_minus(
    action: Union[LinearAction, ComplexLinearAction], subset_limit: Optional[int] = None
) -> RhoEstimate:
    """
    The largest family in the span of the generators with ``A_i A_j + A_j A_i = 2 delta_ij I`` exactly.

    Candidates are the generators and their pairwise sums and differences, rescaled to square to ``I`` when
    possible; a branch and bound search picks the largest anticommuting subset. Complex actions are searched
    with complex products.

    Args:
        action: A real or complex action.
        subset_limit: Search nodes to expand, defaults to ``HURWITZRADON_SUBSET_LIMIT`` or 5000.

    Returns:
        RhoEstimate: The certified value, the witnesses and, for catalogued pairs, the closed-form value.
    """
    limit = resolve_subset_limit(subset_limit)

    if isinstance(action, ComplexLinearAction):
        pool = list(action.generators) + _recombinations(
            list(action.generators), lambda a, b: a + b, lambda a: a.scaled(-1)
        )
        candidates = _unique([c for c in (_normalized_complex(a) for a in pool) if c is not None])
        chosen, exhausted = _max_anticommuting_family(
            candidates, lambda a, b: (a * b + b * a).is_zero(), limit
        )
        witnesses = [candidates[k].realified() for k in chosen]
        pair = None
    else:
        witnesses, exhausted = _real_clifford_search(action.generators, 1, limit)
        pair = _catalogued(action)

    value = len(witnesses)
    expected = pair.targets()[0] if pair is not None else None
    if not exhausted:
        _limit_warning("rho-minus", value)
    _cross_check("rho-minus", value, expected, exhausted)

    certificate = Certificate.CLIFFORD_CERTIFICATE if value else Certificate.SUBSET_SEARCH
    if value == 0 and pair is not None and pair.rep_dim % 2 and pair.label.startswith("sl(") and pair.rep_dim >= 3:
        if odd_sl_impossibility(pair.rep_dim, candidates=30).impossible:
            certificate = Certificate.PARITY_ARGUMENT

    return RhoEstimate(
        mode="minus",
        value=value,
        certificate=certificate.value,
        witnesses=witnesses,
        lower_bound_only=not exhausted,
        table_value=expected,
    )


def estimate_rho_plus(
    action: LinearAction, metric: Optional[RationalMatrix] = None, subset_limit: Optional[int] = None
) -> RhoEstimate:
    """
    The largest metric-skew family in the span of the generators with ``T_i T_j + T_j T_i = -2 delta_ij I``.

    There are no closed-form values for this mode, so no cross-check is made.
    """
    limit = resolve_subset_limit(subset_limit)
    metric = RationalMatrix.identity(action.dim) if metric is None else metric
    _require_metric(metric, action.dim)

    witnesses, exhausted = _real_clifford_search(action.generators, -1, limit, metric)
    if not exhausted:
        _limit_warning("rho-plus", len(witnesses))
    certificate = Certificate.CLIFFORD_CERTIFICATE if witnesses else Certificate.SUBSET_SEARCH
    return RhoEstimate(
        mode="plus", value=len(witnesses), certificate=certificate.value, witnesses=witnesses, lower_bound_only=not exhausted
    )


def _accepts(verdict, scale: float) -> bool:
    if verdict.status == PencilStatus.PROVEN_NONSINGULAR:
        return True
    return (
        verdict.status == PencilStatus.SAMPLED_CLEAN
        and verdict.min_sigma_observed is not None
        and verdict.min_sigma_observed >= SAMPLED_ACCEPT_MARGIN * scale
    )


def estimate_rho_g(
    action: Union[LinearAction, ComplexLinearAction],
    sampling_budget: Optional[int] = None,
    seed: Optional[int] = None,
    subset_limit: Optional[int] = None,
) -> RhoEstimate:
    """
    The largest number of generators, or Clifford recombinations of them, whose span is a nonsingular pencil.

    The search starts from the largest exact Clifford family of either sign, falls back to single invertible
    generators and exactly decided pairs, then grows the family greedily. Extensions past two matrices rest
    on sampling and are skipped when the budget is 0. Complex actions are realified first.

    Args:
        action: A real or complex action.
        sampling_budget: Directions sampled per pencil, defaults to ``HURWITZRADON_BUDGET`` or 2000.
        seed: Sampling seed, defaults to ``HURWITZRADON_SEED`` or 0.
        subset_limit: Search nodes and pencil checks, defaults to ``HURWITZRADON_SUBSET_LIMIT`` or 5000.

    Returns:
        RhoEstimate: The value with the pencil verdict certifying it.
    """
    if isinstance(action, ComplexLinearAction):
        action = realify(action)
    budget = resolve_budget(sampling_budget)
    seed = resolve_seed(seed)
    limit = resolve_subset_limit(subset_limit)
    generators = [g for g in action.generators if not g.is_zero()]
    pair = _catalogued(action)
    expected = pair.targets()[1] if pair is not None else None

    current: List[RationalMatrix] = []
    exhausted = True
    for epsilon in (1, -1):
        family, done = _real_clifford_search(generators, epsilon, limit)
        exhausted = exhausted and done
        if len(family) > len(current):
            current = family

    if not current:
        current = next(([g] for g in generators if det(g) != 0), [])

    tried = 0
    if len(current) < 2:
        for i in range(len(generators)):
            for j in range(i + 1, len(generators)):
                tried += 1
                if check_span([generators[i], generators[j]]).status == PencilStatus.PROVEN_NONSINGULAR:
                    current = [generators[i], generators[j]]
                    break
            if len(current) == 2 or tried >= limit:
                break

    scale = max((math.sqrt(sum(float(e) ** 2 for e in g.entries)) for g in generators), default=1.0)
    # No linear space of invertible N x N matrices has dimension above rho(N).
    cap = rho(action.dim)
    for g in generators:
        if len(current) >= cap or tried >= limit:
            break
        if len(current) >= 2 and budget == 0:
            break
        if any(g == c for c in current):
            continue
        tried += 1
        verdict = check_span(current + [g], sampling_budget=budget, seed=seed)
        if _accepts(verdict, scale):
            current = current + [g]
    if tried >= limit:
        exhausted = False

    verdicts = [check_span(current, sampling_budget=budget, seed=seed)] if current else []
    certificate = verdicts[0].method.value if verdicts else Certificate.NONE.value
    value = len(current)
    if not exhausted:
        _limit_warning("rho-g", value)
    if verdicts and verdicts[0].status != PencilStatus.SAMPLED_CLEAN:
        _cross_check("rho-g", value, expected, exhausted)

    return RhoEstimate(
        mode="g",
        value=value,
        certificate=certificate,
        witnesses=current,
        lower_bound_only=not exhausted,
        table_value=expected,
        verdicts=verdicts,
    )


def _require_metric(metric: RationalMatrix, dim: int) -> None:
    if metric.shape != (dim, dim):
        raise ValueError(f"The metric is {metric.rows}x{metric.cols}; the action is on R^{dim}.")
    if not is_positive_definite(metric):
        raise ValueError("The metric must be symmetric positive definite.")


def killing_skew_check(action: LinearAction, metric: RationalMatrix) -> KillingReport:
    """
    Checks ``A_i^T M + M A_i = 0`` for every generator: the fields are Killing fields of the constant metric
    ``M``, equivalently their flat covariant derivatives are ``M``-skew.
    """
    _require_metric(metric, action.dim)
    failures = [k + 1 for k, g in enumerate(action.generators) if not _metric_skew(g, metric)]
    return KillingReport(ok=not failures, failures=failures)


def assemble_clifford_structure(
    action: LinearAction, metric: RationalMatrix, n: int, subset_limit: Optional[int] = None
) -> CliffordStructureWitness:
    """
    A rank ``n`` Clifford structure on the trivial bundle: ``n`` metric-skew endomorphisms from the span of
    the generators with ``T_i T_j + T_j T_i = -2 delta_ij I``.

    Args:
        action: The action.
        metric: A constant symmetric positive definite metric.
        n: The rank.
        subset_limit: Search nodes to expand.

    Returns:
        CliffordStructureWitness: The verified structure.

    Raises:
        CliffordStructureNotFound: No family of rank ``n`` was found; carries the best partial family.
    """
    if n < 1:
        raise ValueError(f"A Clifford structure needs rank n >= 1, got {n}.")
    _require_metric(metric, action.dim)
    family, exhausted = _real_clifford_search(action.generators, -1, resolve_subset_limit(subset_limit), metric)
    if len(family) < n:
        qualifier = "" if exhausted else " within the subset limit"
        raise CliffordStructureNotFound(
            f"Found at most {len(family)} metric-skew generators with T_i T_j + T_j T_i = -2 delta_ij I{qualifier}; "
            f"rank {n} was requested.",
            partial=family,
        )
    return CliffordStructureWitness(rank=n, metric=metric, frame_images=family[:n])


def read_back_homomorphism(witness: CliffordStructureWitness) -> AlgebraHomomorphism:
    """
    Recovers the algebra homomorphism ``Cl(0, n) -> End(R^N)`` from the frame of a Clifford structure and
    checks that it sends the frame to metric-skew endomorphisms.
    """
    family = EpsilonFamily(
        epsilon=-1, n=witness.rank, dim=witness.metric.rows, matrices=list(witness.frame_images)
    )
    hom = extend_to_algebra_hom(family)
    for i in range(1, witness.rank + 1):
        if not _metric_skew(hom.image((i,)), witness.metric):
            raise ValueError(f"The image of e{i} is not skew with respect to the metric.")
    return hom


def catalogue_action(pair: Union[CartanPair, str]) -> LinearAction:
    """
    The generator set of a catalogued pair: its synthesized witnesses first, then the basis of its
    Cartan subspace.
    """
    pair = pair if isinstance(pair, CartanPair) else make_pair(pair)
    rho1, rho2 = pair.targets()
    if rho1:
        witnesses = pair.build_rho1_witness(rho1)
    elif rho2:
        witnesses = pair.build_rho2_witness(rho2)
    else:
        witnesses = []
    return LinearAction(dim=pair.rep_dim, generators=witnesses + pair.p_basis(), label=pair.label)
