import re
from typing import List, Optional, Tuple

from ..base_pair import BasePair
from ..clifford import symmetric_family
from ..exactmat import RationalMatrix, elementary
from ..hurwitz import table_value
from ..types import TableValue
from ..utils import Claim

SUPPORTED_KINDS = {
    "sl(M,R)": [Claim.CLIFFORD_RHO1, Claim.NONSINGULAR_RHO2],
    "sl(2N,R)": [Claim.CLIFFORD_RHO1, Claim.NONSINGULAR_RHO2],
    "sl(2N+1,R)": [Claim.NONSINGULAR_RHO2],
}

_LABEL = re.compile(r"^sl\((\d+),R\)$")


def parse_label(label: str) -> Optional[Tuple[str, List[int]]]:
    match = _LABEL.match(label)
    return ("sl(M,R)", [int(match.group(1))]) if match else None


class RealSpecialPairAdapter(BasePair):
    """
    ``sl(M,R)``; ``p`` is the traceless symmetric matrices. Accepts the table tags ``sl(2N,R)`` and
    ``sl(2N+1,R)`` with their ``N``.
    """

    def __init__(self, kind: str, sizes: List[int]):
        (size,) = sizes
        if kind == "sl(2N,R)":
            size = 2 * size
        elif kind == "sl(2N+1,R)":
            size = 2 * size + 1
        self.m = size
        self.label = f"sl({self.m},R)"
        self.rep_dim = self.m

    def p_membership(self, a: RationalMatrix) -> bool:
        return a.is_symmetric() and a.trace() == 0

    def p_basis(self) -> List[RationalMatrix]:
        basis = [elementary(self.m, i, i) - elementary(self.m, i + 1, i + 1) for i in range(self.m - 1)]
        for i in range(self.m):
            for j in range(i + 1, self.m):
                basis.append(elementary(self.m, i, j) + elementary(self.m, j, i))
        return basis

    def table(self) -> TableValue:
        if self.m % 2 == 0:
            return table_value("sl(2N,R)", [self.m // 2])
        if self.m == 1:
            return table_value("sl(1,R)")
        return table_value("sl(2N+1,R)", [(self.m - 1) // 2])

    def targets(self) -> Tuple[int, int]:
        value = self.table()
        return value.rho1, value.rho2

    def build_rho1_witness(self, n: int) -> List[RationalMatrix]:
        self._require_size(n, self.targets()[0], "A Clifford witness")
        return symmetric_family(self.m, n)

    def build_rho2_witness(self, n: int) -> List[RationalMatrix]:
        self._require_size(n, self.targets()[1], "A nonsingular witness")
        if self.m % 2 == 0:
            return symmetric_family(self.m, n)
        # diag(1, ..., 1, -(M-1)): traceless, symmetric and invertible.
        return [RationalMatrix.diag([1] * (self.m - 1) + [-(self.m - 1)])]
