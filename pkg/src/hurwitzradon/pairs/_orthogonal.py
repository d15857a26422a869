import re
from typing import List, Optional, Tuple

from ..base_pair import BasePair
from ..clifford import skew_family
from ..exactmat import RationalMatrix, elementary
from ..hurwitz import sphere_vector_fields
from ..utils import Claim, TableBoundExceeded

SUPPORTED_KINDS = {
    "o(N)": [Claim.NONSINGULAR_RHO2],
}

_LABEL = re.compile(r"^s?o\((\d+)\)$")


def parse_label(label: str) -> Optional[Tuple[str, List[int]]]:
    match = _LABEL.match(label)
    return ("o(N)", [int(match.group(1))]) if match else None


class OrthogonalPairAdapter(BasePair):
    """
    ``O(N)`` acting on ``R^N`` with ``s`` the whole of ``o(N)``: the skew-symmetric matrices.

    No skew matrix squares to ``+I``, so there are no Clifford witnesses; the nonsingular bound is the
    ``rho(N) - 1`` Hurwitz-Radon fields on the sphere.
    """

    def __init__(self, kind: str, sizes: List[int]):
        (self.n,) = sizes
        self.label = f"o({self.n})"
        self.rep_dim = self.n
        self.form = RationalMatrix.identity(self.n)

    def p_membership(self, a: RationalMatrix) -> bool:
        return a.is_skew()

    def p_basis(self) -> List[RationalMatrix]:
        return [
            elementary(self.n, i, j) - elementary(self.n, j, i) for i in range(self.n) for j in range(i + 1, self.n)
        ]

    def table(self) -> None:
        return None

    def targets(self) -> Tuple[int, int]:
        return 0, sphere_vector_fields(self.n)

    def build_rho1_witness(self, n: int) -> List[RationalMatrix]:
        if n < 1:
            raise ValueError(f"A witness family needs n >= 1, got {n}.")
        raise TableBoundExceeded(f"{self.label} has no Clifford witness: no skew matrix squares to +I; asked for {n}.")

    def build_rho2_witness(self, n: int) -> List[RationalMatrix]:
        self._require_size(n, self.targets()[1], "A nonsingular witness")
        return skew_family(self.n, n)
