import re
from functools import lru_cache
from typing import List, Optional, Tuple

from ..base_pair import BasePair
from ..exactmat import RationalMatrix, elementary, kron, mat_mul, realify_matrix
from ..hurwitz import ord2, table_value
from ..types import TableValue
from ..utils import Claim

SUPPORTED_KINDS = {
    "gl(N,C)": [Claim.CLIFFORD_RHO1, Claim.NONSINGULAR_RHO2],
    "u(N)": [Claim.CLIFFORD_RHO1, Claim.NONSINGULAR_RHO2],
}

_LABEL = re.compile(r"^(?:gl\((\d+),C\)|u\((\d+)\))$")

ComplexMatrix = Tuple[RationalMatrix, RationalMatrix]


def parse_label(label: str) -> Optional[Tuple[str, List[int]]]:
    match = _LABEL.match(label)
    if not match:
        return None
    return "gl(N,C)", [int(match.group(1) or match.group(2))]


def _complex_kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    (ar, ai), (br, bi) = a, b
    return kron(ar, br) - kron(ai, bi), kron(ar, bi) + kron(ai, br)


@lru_cache(maxsize=None)
def pauli_family(k: int) -> Tuple[ComplexMatrix, ...]:
    """
    ``2k + 1`` anticommuting Hermitian matrices of size ``2^k`` with square ``I``, as (real, imaginary) pairs.
    """
    if k == 0:
        return ((RationalMatrix.identity(1), RationalMatrix.zeros(1)),)
    size = 2 ** (k - 1)
    identity = (RationalMatrix.identity(size), RationalMatrix.zeros(size))
    zero2 = RationalMatrix.zeros(2)
    sigma_x = (RationalMatrix.from_rows([[0, 1], [1, 0]]), zero2)
    sigma_y = (zero2, RationalMatrix.from_rows([[0, -1], [1, 0]]))
    sigma_z = (RationalMatrix.from_rows([[1, 0], [0, -1]]), zero2)
    return (_complex_kron(sigma_x, identity), _complex_kron(sigma_y, identity)) + tuple(
        _complex_kron(sigma_z, h) for h in pauli_family(k - 1)
    )


class ComplexGeneralPairAdapter(BasePair):
    """
    ``gl(N,C)`` realified on ``R^2N``; ``p`` is the Hermitian matrices, whose real forms are the symmetric
    matrices commuting with multiplication by ``i``.
    """

    def __init__(self, kind: str, sizes: List[int]):
        (self.n,) = sizes
        self.label = f"gl({self.n},C)"
        self.rep_dim = 2 * self.n
        zero = RationalMatrix.zeros(self.n)
        self._i = realify_matrix(zero, RationalMatrix.identity(self.n))

    def p_membership(self, a: RationalMatrix) -> bool:
        return a.is_symmetric() and mat_mul(a, self._i) == mat_mul(self._i, a)

    def p_basis(self) -> List[RationalMatrix]:
        zero = RationalMatrix.zeros(self.n)
        basis = [realify_matrix(elementary(self.n, i, i), zero) for i in range(self.n)]
        for i in range(self.n):
            for j in range(i + 1, self.n):
                basis.append(realify_matrix(elementary(self.n, i, j) + elementary(self.n, j, i), zero))
                basis.append(realify_matrix(zero, elementary(self.n, i, j) - elementary(self.n, j, i)))
        return basis

    def table(self) -> TableValue:
        return table_value("gl(N,C)", [self.n])

    def targets(self) -> Tuple[int, int]:
        value = self.table()
        return value.rho1, value.rho2

    def complex_witness(self, n: int) -> List[ComplexMatrix]:
        """
        The unrealified witness: Hermitian Pauli products on the 2-adic part, identity on the odd part.
        """
        self._require_size(n, self.targets()[0], "A Clifford witness")
        k = ord2(self.n)
        odd = (RationalMatrix.identity(self.n >> k), RationalMatrix.zeros(self.n >> k))
        return [_complex_kron(h, odd) for h in pauli_family(k)[:n]]

    def build_rho1_witness(self, n: int) -> List[RationalMatrix]:
        return [realify_matrix(re, im) for re, im in self.complex_witness(n)]

    def build_rho2_witness(self, n: int) -> List[RationalMatrix]:
        self._require_size(n, self.targets()[1], "A nonsingular witness")
        return self.build_rho1_witness(n)
