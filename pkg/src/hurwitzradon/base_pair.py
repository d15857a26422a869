from abc import ABC
from typing import List, Optional, Tuple

from hurwitzradon.exactmat import RationalMatrix
from hurwitzradon.types import TableValue
from hurwitzradon.utils import TableBoundExceeded


class BasePair(ABC):
    """
    A classical pair ``(g, iota)`` seen through the image ``iota(s)`` of its chosen subspace ``s`` (the Cartan
    subspace ``p``, or all of ``o(N)``) inside the ``N x N`` real matrices.

    Attributes:
        label: The concrete pair, e.g. ``so(8,8)``.
        rep_dim: The real dimension ``N`` of the representation after realification.
        form: The invariant bilinear form, when the pair has one.
    """

    label: str
    rep_dim: int
    form: Optional[RationalMatrix] = None

    def p_membership(self, a: RationalMatrix) -> bool:
        """
        Tests whether a matrix lies in ``iota(s)``.

        Args:
            a: An ``N x N`` matrix.

        Returns:
            bool: True iff ``a`` satisfies the linear equations cutting out ``iota(s)``.
        """
        pass

    def p_basis(self) -> List[RationalMatrix]:
        """
        A rational basis of ``iota(s)``.

        Returns:
            List[RationalMatrix]: The basis, every element passing ``p_membership``.
        """
        pass

    def table(self) -> Optional[TableValue]:
        """
        The closed-form values of the pair, or None when the pair is not a table row.
        """
        pass

    def targets(self) -> Tuple[int, int]:
        """
        The largest family sizes the witness builders accept, as ``(rho1, rho2)``.
        """
        pass

    def build_rho1_witness(self, n: int) -> List[RationalMatrix]:
        """
        Builds ``n`` elements of ``iota(s)`` with ``A_i A_j + A_j A_i = 2 delta_ij I``.

        Args:
            n: The family size, at most the first target.

        Returns:
            List[RationalMatrix]: The witness matrices.
        """
        pass

    def build_rho2_witness(self, n: int) -> List[RationalMatrix]:
        """
        Builds ``n`` elements of ``iota(s)`` whose non-zero combinations are all invertible.

        Args:
            n: The family size, at most the second target.

        Returns:
            List[RationalMatrix]: The witness matrices.
        """
        pass

    def _require_size(self, n: int, bound: int, what: str) -> None:
        if n < 1:
            raise ValueError(f"A witness family needs n >= 1, got {n}.")
        if n > bound:
            raise TableBoundExceeded(
                f"{what} of {self.label} has at most {bound} members (closed-form value); asked for {n}."
            )
