from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from .exactmat import (
    ONE,
    ZERO,
    RationalLike,
    RationalMatrix,
    first_anticommutator_failure,
    kron,
    mat_mul,
    to_rational,
)
from .hurwitz import ord2, rho
from .types import AnticommutatorFailure, EpsilonFamily, VerificationReport

Blade = Tuple[int, ...]


class CliffordSignature(BaseModel):
    """
    The signature of ``Cl(p, q)``: ``p`` generators square to +1 and the following ``q`` to -1.

    Args:
        p: Number of generators with square +1.
        q: Number of generators with square -1.
    """

    model_config = ConfigDict(frozen=True)

    p: int = Field(0, ge=0)
    q: int = Field(0, ge=0)

    @property
    def generators(self) -> int:
        return self.p + self.q

    @property
    def dimension(self) -> int:
        return 2**self.generators

    def square(self, i: int) -> int:
        if not 1 <= i <= self.generators:
            raise ValueError(f"Generator index {i} is out of range for Cl({self.p},{self.q}).")
        return 1 if i <= self.p else -1

    def blades(self) -> List[Blade]:
        """
        Every basis blade, ordered by grade and then lexicographically.
        """
        n = self.generators
        out = []
        for mask in range(2**n):
            out.append(tuple(i + 1 for i in range(n) if mask >> i & 1))
        return sorted(out, key=lambda b: (len(b), b))

    @classmethod
    def for_epsilon(cls, n: int, epsilon: int) -> "CliffordSignature":
        """
        The algebra whose generators square to ``epsilon``: ``Cl(n, 0)`` for +1 and ``Cl(0, n)`` for -1.
        """
        if epsilon not in (1, -1):
            raise ValueError(f"epsilon must be +1 or -1, got {epsilon}.")
        return cls(p=n, q=0) if epsilon == 1 else cls(p=0, q=n)


def _check_blade(blade: Blade, signature: CliffordSignature) -> Blade:
    blade = tuple(blade)
    if any(b <= a for a, b in zip(blade, blade[1:])):
        raise ValueError(f"Blade {blade} is not strictly increasing.")
    if blade and not (1 <= blade[0] and blade[-1] <= signature.generators):
        raise ValueError(f"Blade {blade} has indices outside 1..{signature.generators}.")
    return blade


def _blade_product(a: Blade, b: Blade, signature: CliffordSignature) -> Tuple[int, Blade]:
    # Sorting the concatenation a + b costs one sign per inversion between the two words;
    # repeated generators then meet and contract to their square.
    inversions = sum(1 for i in a for j in b if i > j)
    sign = -1 if inversions % 2 else 1
    common = set(a) & set(b)
    for k in common:
        sign *= signature.square(k)
    return sign, tuple(sorted(set(a) ^ set(b)))


class CliffordElement:
    """
    An element of ``Cl(p, q)`` over the rationals, stored as a map from blades to coefficients.

    Args:
        signature: The algebra the element lives in.
        coefficients: Map from strictly increasing generator index tuples (1-based) to rational coefficients.
    """

    __slots__ = ("signature", "coefficients")

    def __init__(self, signature: CliffordSignature, coefficients: Optional[Mapping[Blade, RationalLike]] = None):
        terms: Dict[Blade, Fraction] = {}
        for blade, value in (coefficients or {}).items():
            value = to_rational(value)
            if value:
                blade = _check_blade(blade, signature)
                terms[blade] = terms.get(blade, ZERO) + value
        self.signature = signature
        self.coefficients = {k: v for k, v in terms.items() if v}

    @classmethod
    def scalar(cls, signature: CliffordSignature, value: RationalLike = 1) -> "CliffordElement":
        return cls(signature, {(): value})

    @classmethod
    def generator(cls, signature: CliffordSignature, i: int) -> "CliffordElement":
        signature.square(i)
        return cls(signature, {(i,): ONE})

    @classmethod
    def blade(cls, signature: CliffordSignature, indices: Iterable[int], value: RationalLike = 1) -> "CliffordElement":
        return cls(signature, {tuple(indices): value})

    def __getitem__(self, blade: Blade) -> Fraction:
        return self.coefficients.get(tuple(blade), ZERO)

    def is_zero(self) -> bool:
        return not self.coefficients

    def _same_algebra(self, other: "CliffordElement") -> None:
        if self.signature != other.signature:
            raise ValueError(
                f"Cannot combine elements of Cl({self.signature.p},{self.signature.q}) "
                f"and Cl({other.signature.p},{other.signature.q})."
            )

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        self._same_algebra(other)
        terms = dict(self.coefficients)
        for blade, value in other.coefficients.items():
            terms[blade] = terms.get(blade, ZERO) + value
        return CliffordElement(self.signature, terms)

    def __neg__(self) -> "CliffordElement":
        return CliffordElement(self.signature, {k: -v for k, v in self.coefficients.items()})

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self + (-other)

    def __mul__(self, other: Union["CliffordElement", RationalLike]) -> "CliffordElement":
        if isinstance(other, CliffordElement):
            return blade_mul(self, other)
        factor = to_rational(other)
        return CliffordElement(self.signature, {k: factor * v for k, v in self.coefficients.items()})

    def __rmul__(self, other: RationalLike) -> "CliffordElement":
        return self * other

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.signature == other.signature and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash((self.signature.p, self.signature.q, frozenset(self.coefficients.items())))

    def __repr__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for blade in sorted(self.coefficients, key=lambda b: (len(b), b)):
            name = "".join(f"e{i}" for i in blade) or "1"
            parts.append(f"{self.coefficients[blade]}*{name}")
        return " + ".join(parts)


def blade_mul(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    """
    The Clifford product, the bilinear extension of ``e_i^2 = +1`` (i <= p), ``e_i^2 = -1`` (i > p) and
    ``e_i e_j = -e_j e_i`` (i != j).
    """
    x._same_algebra(y)
    terms: Dict[Blade, Fraction] = {}
    for a, u in x.coefficients.items():
        for b, v in y.coefficients.items():
            sign, blade = _blade_product(a, b, x.signature)
            terms[blade] = terms.get(blade, ZERO) + sign * u * v
    return CliffordElement(x.signature, terms)


# 2x2 signed permutation seeds: P and Q are symmetric with square I, J is skew with square -I,
# the three pairwise anticommute and PQ = J.
_I2 = RationalMatrix.identity(2)
_P = RationalMatrix.from_rows([[1, 0], [0, -1]])
_Q = RationalMatrix.from_rows([[0, 1], [1, 0]])
_J = RationalMatrix.from_rows([[0, 1], [-1, 0]])


def _product(matrices: Iterable[RationalMatrix]) -> RationalMatrix:
    matrices = list(matrices)
    out = matrices[0]
    for m in matrices[1:]:
        out = mat_mul(out, m)
    return out


@lru_cache(maxsize=1)
def _sixteen() -> Tuple[RationalMatrix, ...]:
    # Eight skew anticommuting complex structures on R^16.
    return (kron(_J, RationalMatrix.identity(8)),) + tuple(kron(_P, m) for m in _skew_dyadic(3))


@lru_cache(maxsize=None)
def _skew_dyadic(m: int) -> Tuple[RationalMatrix, ...]:
    """
    ``rho(2^m) - 1`` skew anticommuting matrices with square ``-I`` at size ``2^m``.
    """
    if m == 0:
        return ()
    if m == 1:
        return (_J,)
    if m == 2:
        return (kron(_J, _I2), kron(_P, _J), kron(_Q, _J))
    if m == 3:
        # The right quaternion units commute with the left ones of size 4.
        right = (kron(_I2, _J), kron(_J, _P), kron(_J, _Q))
        return (
            (kron(_J, RationalMatrix.identity(4)),)
            + tuple(kron(_P, left) for left in _skew_dyadic(2))
            + tuple(kron(_Q, r) for r in right)
        )

    sixteen = _sixteen()
    if m == 4:
        return sixteen
    # Period 16: the volume element of the size-16 family is symmetric, squares to I and
    # anticommutes with each of its factors.
    omega = _product(sixteen)
    inner = RationalMatrix.identity(2 ** (m - 4))
    return tuple(kron(k, omega) for k in _skew_dyadic(m - 4)) + tuple(kron(inner, f) for f in sixteen)


def skew_family(dim: int, k: int) -> List[RationalMatrix]:
    """
    ``k`` skew-symmetric signed permutation matrices of size ``dim`` with ``T_i T_j + T_j T_i = -2 delta_ij I``.

    The family lives on the 2-adic part of ``dim`` and is tensored with the identity on the odd part.

    Args:
        dim: The matrix size.
        k: The number of matrices, at most ``rho(dim) - 1``.

    Returns:
        The matrices.
    """
    if dim < 1:
        raise ValueError(f"The dimension must be positive, got {dim}.")
    if k < 0 or k > rho(dim) - 1:
        raise ValueError(f"A skew Clifford family at size {dim} has at most rho({dim}) - 1 = {rho(dim) - 1} members, asked for {k}.")

    v = ord2(dim)
    odd = RationalMatrix.identity(dim >> v)
    return [kron(t, odd) for t in _skew_dyadic(v)[:k]]


def symmetric_family(dim: int, k: int) -> List[RationalMatrix]:
    """
    ``k`` symmetric signed permutation matrices of even size ``dim`` with ``T_i T_j + T_j T_i = 2 delta_ij I``.

    The order is ``Q (x) I``, then ``J (x) K`` for the skew family ``K`` of size ``dim / 2``, then ``P (x) I``, so
    every prefix but the full family is block off-diagonal. At most ``rho(dim / 2) + 1`` members.
    """
    if dim < 2 or dim % 2:
        raise ValueError(f"Symmetric families with more than one member need an even size, got {dim}.")
    half = dim // 2
    limit = rho(half) + 1
    if k < 0 or k > limit:
        raise ValueError(f"A symmetric Clifford family at size {dim} has at most rho({half}) + 1 = {limit} members, asked for {k}.")

    identity = RationalMatrix.identity(half)
    full = [kron(_Q, identity)] + [kron(_J, s) for s in skew_family(half, rho(half) - 1)] + [kron(_P, identity)]
    return full[:k]


def build_epsilon_family(n: int, epsilon: int) -> EpsilonFamily:
    """
    Builds ``n`` signed permutation matrices with ``T_i T_j + T_j T_i = 2 epsilon delta_ij I``.

    The size is the smallest power of two the doubling recursion reaches: ``2^m`` with ``rho(2^m) - 1 >= n``
    for ``epsilon = -1`` (skew matrices), and ``2^(m+1)`` with ``rho(2^m) + 1 >= n`` for ``epsilon = +1``
    (symmetric matrices; ``n = 1`` gives ``[[1]]``).

    Args:
        n: The number of matrices, at least 1.
        epsilon: The sign of the squares, +1 or -1.

    Returns:
        EpsilonFamily: The verified family.
    """
    if n < 1:
        raise ValueError(f"A family needs n >= 1, got {n}.")
    if epsilon not in (1, -1):
        raise ValueError(f"epsilon must be +1 or -1, got {epsilon}.")

    if epsilon == 1 and n == 1:
        matrices = [RationalMatrix.identity(1)]
    elif epsilon == 1:
        m = 0
        while rho(2**m) + 1 < n:
            m += 1
        matrices = symmetric_family(2 ** (m + 1), n)
    else:
        m = 1
        while rho(2**m) - 1 < n:
            m += 1
        matrices = skew_family(2**m, n)

    return EpsilonFamily(epsilon=epsilon, n=n, dim=matrices[0].rows, matrices=matrices)


def verify_epsilon_family(fam: EpsilonFamily) -> VerificationReport:
    """
    Re-checks all ``n^2`` anticommutator identities of a family exactly.

    Families created with ``EpsilonFamily.model_construct`` are accepted, so unverified data can be reported on.

    Returns:
        VerificationReport: Success, or the first failing pair (1-based) and entry.
    """
    matrices = list(fam.matrices)
    n = len(matrices)
    failure = first_anticommutator_failure(matrices, fam.epsilon)
    if failure is None:
        return VerificationReport(ok=True, epsilon=fam.epsilon, checked=n * n)

    i, j, r, c, actual, expected = failure
    return VerificationReport(
        ok=False,
        epsilon=fam.epsilon,
        checked=i * n + j + 1,
        failure=AnticommutatorFailure(i=i + 1, j=j + 1, row=r + 1, col=c + 1, actual=actual, expected=expected),
    )


class AlgebraHomomorphism:
    """
    The algebra map ``Cl -> End(R^N)`` sending ``e_i`` to ``T_i``.

    Args:
        family: A family satisfying its anticommutator relations.
    """

    def __init__(self, family: EpsilonFamily):
        report = verify_epsilon_family(family)
        if not report.ok:
            f = report.failure
            raise ValueError(
                f"The family does not satisfy its relations: T{f.i} T{f.j} + T{f.j} T{f.i} has {f.actual} "
                f"at ({f.row}, {f.col}), expected {f.expected}."
            )
        self.family = family
        self.signature = CliffordSignature.for_epsilon(len(family.matrices), family.epsilon)
        self.dim = family.matrices[0].rows
        self._images: Dict[Blade, RationalMatrix] = {(): RationalMatrix.identity(self.dim)}

    def image(self, blade: Blade) -> RationalMatrix:
        """
        The ordered product ``T_{i1} ... T_{ik}`` of a blade.
        """
        blade = _check_blade(blade, self.signature)
        if blade not in self._images:
            self._images[blade] = mat_mul(self.image(blade[:-1]), self.family.matrices[blade[-1] - 1])
        return self._images[blade]

    def __call__(self, x: CliffordElement) -> RationalMatrix:
        if x.signature != self.signature:
            raise ValueError(
                f"The homomorphism is defined on Cl({self.signature.p},{self.signature.q}), "
                f"got an element of Cl({x.signature.p},{x.signature.q})."
            )
        out = RationalMatrix.zeros(self.dim)
        for blade, value in x.coefficients.items():
            out = out + self.image(blade) * value
        return out


def extend_to_algebra_hom(fam: EpsilonFamily) -> AlgebraHomomorphism:
    """
    Extends ``e_i -> T_i`` to the unique algebra homomorphism on ``Cl(n, 0)`` (epsilon = +1) or
    ``Cl(0, n)`` (epsilon = -1). Raises ValueError if the family does not satisfy its relations.
    """
    return AlgebraHomomorphism(fam)
