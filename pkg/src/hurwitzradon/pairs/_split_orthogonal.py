import re
from typing import List, Optional, Tuple

from ..base_pair import BasePair
from ..clifford import symmetric_family
from ..exactmat import RationalMatrix, block, elementary, mat_mul, transpose
from ..hurwitz import table_value
from ..types import TableValue
from ..utils import Claim

SUPPORTED_KINDS = {
    "so(N,N)": [Claim.CLIFFORD_RHO1, Claim.NONSINGULAR_RHO2],
}

_LABEL = re.compile(r"^so\((\d+),(\d+)\)$")


def parse_label(label: str) -> Optional[Tuple[str, List[int]]]:
    match = _LABEL.match(label)
    if not match:
        return None
    p, q = int(match.group(1)), int(match.group(2))
    if p != q:
        raise ValueError(f"Only the split form so(N,N) is catalogued, got {label}.")
    return "so(N,N)", [p]


class SplitOrthogonalPairAdapter(BasePair):
    """
    ``so(N,N)`` on ``R^2N`` with form ``diag(I_N, -I_N)``; ``p`` is the block family ``(0 B; B^T 0)``.
    """

    def __init__(self, kind: str, sizes: List[int]):
        (self.n_half,) = sizes
        self.label = f"so({self.n_half},{self.n_half})"
        self.rep_dim = 2 * self.n_half
        identity = RationalMatrix.identity(self.n_half)
        zero = RationalMatrix.zeros(self.n_half)
        self.form = block([[identity, zero], [zero, -identity]])

    def p_membership(self, a: RationalMatrix) -> bool:
        # Symmetric elements of so(N,N): symmetric and anticommuting with the form.
        return a.is_symmetric() and (mat_mul(a, self.form) + mat_mul(self.form, a)).is_zero()

    def p_basis(self) -> List[RationalMatrix]:
        zero = RationalMatrix.zeros(self.n_half)
        basis = []
        for i in range(self.n_half):
            for j in range(self.n_half):
                b = elementary(self.n_half, i, j)
                basis.append(block([[zero, b], [transpose(b), zero]]))
        return basis

    def table(self) -> TableValue:
        return table_value("so(N,N)", [self.n_half])

    def targets(self) -> Tuple[int, int]:
        value = self.table()
        return value.rho1, value.rho2

    def build_rho1_witness(self, n: int) -> List[RationalMatrix]:
        # A_1 = (0 I; I 0) and A_{i+1} = (0 K_i; -K_i 0) for a skew Clifford family K.
        self._require_size(n, self.targets()[0], "A Clifford witness")
        return symmetric_family(self.rep_dim, n)

    def build_rho2_witness(self, n: int) -> List[RationalMatrix]:
        self._require_size(n, self.targets()[1], "A nonsingular witness")
        return symmetric_family(self.rep_dim, n)
