import re
from typing import List, Optional, Tuple

from ..base_pair import BasePair
from ..clifford import symmetric_family
from ..exactmat import RationalMatrix, elementary
from ..hurwitz import table_value
from ..types import TableValue
from ..utils import Claim

SUPPORTED_KINDS = {
    "gl(N,R)": [Claim.CLIFFORD_RHO1, Claim.NONSINGULAR_RHO2],
}

_LABEL = re.compile(r"^gl\((\d+),R\)$")


def parse_label(label: str) -> Optional[Tuple[str, List[int]]]:
    match = _LABEL.match(label)
    return ("gl(N,R)", [int(match.group(1))]) if match else None


def symmetric_basis(n: int) -> List[RationalMatrix]:
    basis = [elementary(n, i, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            basis.append(elementary(n, i, j) + elementary(n, j, i))
    return basis


class RealGeneralPairAdapter(BasePair):
    """
    ``gl(N,R)`` with the Cartan involution ``X -> -X^T``; ``p`` is the symmetric matrices.
    """

    def __init__(self, kind: str, sizes: List[int]):
        (self.n,) = sizes
        self.label = f"gl({self.n},R)"
        self.rep_dim = self.n

    def p_membership(self, a: RationalMatrix) -> bool:
        return a.is_symmetric()

    def p_basis(self) -> List[RationalMatrix]:
        return symmetric_basis(self.n)

    def table(self) -> TableValue:
        return table_value("gl(N,R)", [self.n])

    def targets(self) -> Tuple[int, int]:
        value = self.table()
        return value.rho1, value.rho2

    def _family(self, n: int) -> List[RationalMatrix]:
        if self.n % 2:
            return [RationalMatrix.identity(self.n)]
        return symmetric_family(self.n, n)

    def build_rho1_witness(self, n: int) -> List[RationalMatrix]:
        self._require_size(n, self.targets()[0], "A Clifford witness")
        return self._family(n)

    def build_rho2_witness(self, n: int) -> List[RationalMatrix]:
        self._require_size(n, self.targets()[1], "A nonsingular witness")
        return self._family(n)
