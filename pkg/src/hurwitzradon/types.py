from fractions import Fraction
from typing import Annotated, Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer, PlainValidator, WithJsonSchema, model_validator

from .exactmat import RationalMatrix, first_anticommutator_failure, format_rational, mat_mul, to_rational
from .utils import Claim, Method, PencilStatus


def _validate_matrix(value: Any) -> RationalMatrix:
    if isinstance(value, RationalMatrix):
        return value
    return RationalMatrix.from_json(value)


Matrix = Annotated[
    RationalMatrix,
    PlainValidator(_validate_matrix),
    PlainSerializer(lambda m: m.to_json(), return_type=dict),
    WithJsonSchema(
        {
            "type": "object",
            "properties": {
                "rows": {"type": "integer", "minimum": 0},
                "cols": {"type": "integer", "minimum": 0},
                "entries": {"type": "array", "items": {"type": "string"}},
            },
            "required": ["rows", "cols", "entries"],
        }
    ),
]

Rational = Annotated[
    Fraction,
    PlainValidator(to_rational),
    PlainSerializer(format_rational, return_type=str),
    WithJsonSchema({"type": "string", "pattern": r"^-?\d+(/\d+)?$"}),
]


class HurwitzDecomposition(BaseModel):
    """
    The dyadic decomposition ``n = 2^(4a+b) (2c+1)`` behind the Hurwitz-Radon number.

    Args:
        n: The decomposed positive integer.
        a: Number of full factors 16.
        b: Remaining power of two, between 0 and 3.
        c: Index of the odd part, which is ``2c+1``.
        rho: The Hurwitz-Radon number ``8a + 2^b``.
    """

    n: int = Field(..., ge=1)
    a: int = Field(..., ge=0)
    b: int = Field(..., ge=0, le=3)
    c: int = Field(..., ge=0)
    rho: int

    @model_validator(mode="after")
    def check_decomposition(self):
        if self.n != 2 ** (4 * self.a + self.b) * (2 * self.c + 1):
            raise ValueError(f"{self.n} != 2^(4*{self.a}+{self.b}) * (2*{self.c}+1).")
        if self.rho != 8 * self.a + 2**self.b:
            raise ValueError("rho must equal 8a + 2^b.")
        return self


class ClassicalPairKind(BaseModel):
    """
    A row of the classical pair table with its size parameters.

    Args:
        tag: The normalized row tag, e.g. ``so(N,N)`` or ``su(p,q;D)``.
        sizes: The size parameters in the order of the tag (N, or p and q).
    """

    tag: str
    sizes: List[int] = []


class TableValue(BaseModel):
    """
    Closed-form values of the two generalized Hurwitz-Radon numbers of a classical pair.

    Args:
        pair: The row tag.
        sizes: The size parameters.
        rho1: The value of the Clifford-type number.
        rho2: The value of the nonsingular-span number.
        synthesizer: Whether explicit witnesses can be synthesized for this row.
    """

    pair: str
    sizes: List[int]
    rho1: int
    rho2: int
    synthesizer: bool = False


class AnticommutatorFailure(BaseModel):
    """
    The first violated anticommutator identity of a family. Indices are 1-based.

    Args:
        i: Index of the first matrix.
        j: Index of the second matrix.
        row: Row of the offending entry.
        col: Column of the offending entry.
        actual: The entry of ``T_i T_j + T_j T_i``.
        expected: The entry required by the relation.
    """

    i: int
    j: int
    row: int
    col: int
    actual: Rational
    expected: Rational


class VerificationReport(BaseModel):
    """
    Outcome of an exact check of ``T_i T_j + T_j T_i = 2 epsilon delta_ij I``.

    Args:
        ok: Whether every identity holds.
        epsilon: The sign the family was checked against.
        checked: The number of ordered pairs examined.
        failure: The first failing identity, if any.
    """

    ok: bool
    epsilon: int
    checked: int
    failure: Optional[AnticommutatorFailure] = None


class EpsilonFamily(BaseModel):
    """
    Matrices ``T_1..T_n`` with ``T_i T_j + T_j T_i = 2 epsilon delta_ij I``, verified on construction.

    Use ``EpsilonFamily.model_construct`` to hold a family without verification.

    Args:
        epsilon: The sign of the squares, +1 or -1.
        n: The number of matrices.
        dim: The matrix size.
        matrices: The matrices.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    epsilon: int
    n: int = Field(..., ge=1)
    dim: int = Field(..., ge=1)
    matrices: List[Matrix]

    @model_validator(mode="after")
    def check_relations(self):
        if self.epsilon not in (1, -1):
            raise ValueError(f"epsilon must be +1 or -1, got {self.epsilon}.")
        if len(self.matrices) != self.n:
            raise ValueError(f"Expected {self.n} matrices, got {len(self.matrices)}.")
        if any(m.shape != (self.dim, self.dim) for m in self.matrices):
            raise ValueError(f"Every matrix must be {self.dim}x{self.dim}.")
        failure = first_anticommutator_failure(self.matrices, self.epsilon)
        if failure is not None:
            i, j, r, c, actual, expected = failure
            raise ValueError(
                f"The anticommutator of T{i + 1} and T{j + 1} has entry {actual} at ({r + 1}, {c + 1}), expected {expected}."
            )
        return self


class WitnessFamily(BaseModel):
    """
    Elements ``A_1..A_n`` of the image of the Cartan subspace together with the relation they claim.

    Args:
        pair: The concrete pair label, e.g. ``so(8,8)``.
        n: The number of matrices.
        matrices: The witness matrices.
        claim: ``clifford_rho1`` (``A_i A_j + A_j A_i = 2 delta_ij I``) or ``nonsingular_rho2``
            (every non-zero combination is invertible).
        note: Where the construction comes from.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    pair: str
    n: int = Field(..., ge=0)
    matrices: List[Matrix]
    claim: Claim
    note: Optional[str] = None

    @model_validator(mode="after")
    def check_size(self):
        if len(self.matrices) != self.n:
            raise ValueError(f"Expected {self.n} matrices, got {len(self.matrices)}.")
        return self


class WitnessCheck(BaseModel):
    """
    Exact re-verification of a witness family.

    Args:
        ok: Whether the claim holds.
        membership: Per-matrix membership in the Cartan subspace.
        relation: The anticommutator report (Clifford claims only).
        verdict: The pencil verdict (nonsingular claims only).
    """

    ok: bool
    membership: List[bool]
    relation: Optional[VerificationReport] = None
    verdict: Optional["PencilVerdict"] = None


class ImpossibilityReport(BaseModel):
    """
    Certificate that no traceless symmetric ``A`` of odd size ``M`` satisfies ``A^2 = I``.

    Args:
        m: The odd matrix size.
        impossible: Always True when the argument goes through.
        argument: The parity argument in words.
        multiplicity_solutions: Integer pairs ``(p, q)`` with ``p + q = M`` and ``p - q = 0`` (empty).
        candidates: The number of random candidates examined.
        violations: The number of candidates violating ``A^2 = I`` or ``tr A = 0`` (equals ``candidates``).
        seed: The seed of the random search.
    """

    m: int
    impossible: bool
    argument: str
    multiplicity_solutions: List[Tuple[int, int]]
    candidates: int
    violations: int
    seed: int


class PencilVerdict(BaseModel):
    """
    The outcome of testing whether every non-zero combination ``sum t_i A_i`` is invertible.

    Args:
        status: ``proven_nonsingular``, ``refuted`` or ``sampled_clean``.
        method: ``clifford_certificate``, ``exact_n1``, ``exact_n2_sturm`` or ``sampling``.
        counterexample: A rational ``t`` with ``det(sum t_i A_i) = 0`` exactly.
        root_interval: For two matrices, an isolating interval ``(lo, hi]`` of an irrational root ``s`` of
            ``det(A_1 + s A_2)``, given when no exact counterexample exists.
        samples: The number of sampled directions.
        min_sigma_observed: The smallest singular value seen while sampling.
    """

    status: PencilStatus
    method: Method
    counterexample: Optional[List[Rational]] = None
    root_interval: Optional[Tuple[Rational, Rational]] = None
    samples: int = 0
    min_sigma_observed: Optional[float] = None

    @model_validator(mode="after")
    def check_status(self):
        if self.status == PencilStatus.REFUTED and self.counterexample is None and self.root_interval is None:
            raise ValueError("A refuted verdict needs a counterexample or a certified root interval.")
        if self.status == PencilStatus.PROVEN_NONSINGULAR and self.method == Method.SAMPLING:
            raise ValueError("Sampling cannot prove nonsingularity.")
        return self


class FieldSampleReport(BaseModel):
    """
    Ranks of the fundamental vector fields ``[A_1 x | ... | A_n x]`` at sampled points.

    Args:
        n: The number of fields.
        points: The sampled points.
        ranks: The exact rank at every point.
        independent_everywhere_sampled: Whether every rank equals ``n``.
        dependent_points: Indices of the points where the fields are dependent.
    """

    n: int
    points: List[List[Rational]]
    ranks: List[int]
    independent_everywhere_sampled: bool
    dependent_points: List[int] = []

    @model_validator(mode="after")
    def check_ranks(self):
        if self.independent_everywhere_sampled != all(r == self.n for r in self.ranks):
            raise ValueError("independent_everywhere_sampled must hold exactly when every rank equals n.")
        return self


class RhoEstimate(BaseModel):
    """
    A certified lower bound for one of the generalized Hurwitz-Radon numbers of an action.

    Args:
        mode: ``minus`` (Clifford relation), ``plus`` (skew Clifford relation) or ``g`` (nonsingular span).
        value: The certified value.
        certificate: The method certifying ``value``.
        witnesses: The matrices realizing ``value``.
        lower_bound_only: Whether the search stopped at its limit before exhausting the generators.
        table_value: The closed-form value, when the action comes from a catalogued pair.
        verdicts: Pencil verdicts backing a ``g`` estimate.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    mode: str
    value: int
    certificate: str
    witnesses: List[Matrix] = []
    lower_bound_only: bool = False
    table_value: Optional[int] = None
    verdicts: List[PencilVerdict] = []


class KillingReport(BaseModel):
    """
    Check of ``A_i^T M + M A_i = 0`` for every generator.

    Args:
        ok: Whether every generator is metric-skew.
        failures: 1-based indices of the generators that are not.
    """

    ok: bool
    failures: List[int] = []


class CliffordStructureWitness(BaseModel):
    """
    A rank ``n`` Clifford structure on the trivial bundle over the punctured space.

    Args:
        rank: The rank ``n``.
        metric: The constant metric, symmetric positive definite.
        frame_images: The images of the orthonormal frame, metric-skew with
            ``T_i T_j + T_j T_i = -2 delta_ij I``.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    rank: int = Field(..., ge=1)
    metric: Matrix
    frame_images: List[Matrix]

    @model_validator(mode="after")
    def check_structure(self):
        if len(self.frame_images) != self.rank:
            raise ValueError(f"Expected {self.rank} frame images, got {len(self.frame_images)}.")
        for k, g in enumerate(self.frame_images):
            if not (mat_mul(g.T, self.metric) + mat_mul(self.metric, g)).is_zero():
                raise ValueError(f"Frame image {k + 1} is not skew with respect to the metric.")
        if first_anticommutator_failure(self.frame_images, -1) is not None:
            raise ValueError("The frame images do not satisfy T_i T_j + T_j T_i = -2 delta_ij I.")
        return self


class CommandResult(BaseModel):
    """
    The JSON envelope printed by every ``hr`` command. The command payload is stored as extra fields.

    Args:
        command: The subcommand name.
        inputs_digest: SHA-256 of the canonicalized inputs.
        certificate: The method certifying the payload.
        seed: The seed used, if the command is randomized.
    """

    model_config = ConfigDict(extra="allow")

    command: str
    inputs_digest: str
    certificate: str
    seed: Optional[int] = None

    def payload(self) -> Dict[str, Any]:
        return dict(self.model_extra or {})


WitnessCheck.model_rebuild()
