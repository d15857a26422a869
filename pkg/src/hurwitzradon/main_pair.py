import glob
import importlib
import os
from typing import List, Optional, Sequence, Tuple

from .base_pair import BasePair
from .exactmat import RationalMatrix
from .hurwitz import ascii_tag, parse_pair_kind
from .types import TableValue
from .utils import Claim


def _pair_modules() -> List[str]:
    pair_files = glob.glob(os.path.join(os.path.dirname(__file__), "pairs", "_*.py"))
    modules = sorted(os.path.basename(f)[1:-3] for f in pair_files)
    if "_init__" in modules:
        modules.remove("_init__")
    return modules


def _import_pair_module(name: str):
    return importlib.import_module(f"hurwitzradon.pairs._{name}")


class CartanPair(BasePair):
    """
    A catalogued classical pair with an explicit image of its Cartan subspace.

    Args:
        kind: The pair kind, e.g. ``so(N,N)``, ``gl(N,ℝ)``, ``sl(2N,R)``, ``o(N)`` or ``gl(N,C)``.
        sizes: The size parameters of the kind.
    """

    def __init__(self, kind: str, sizes: Sequence[int] = ()):
        self.kind = ascii_tag(kind)
        self.sizes = list(sizes)
        for value in self.sizes:
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ValueError(f"Size parameters must be positive integers, got {value!r}.")

        self.adapter, self.supported_claims = self._get_pair_adapter()
        self.label = self.adapter.label
        self.rep_dim = self.adapter.rep_dim
        self.form = self.adapter.form

    @classmethod
    def from_label(cls, label: str) -> "CartanPair":
        """
        Builds a pair from a concrete label such as ``so(8,8)``, ``gl(4,R)``, ``sl(3,R)``, ``o(4)`` or ``gl(2,C)``.
        """
        normalized = ascii_tag(label)
        for name in _pair_modules():
            parsed = _import_pair_module(name).parse_label(normalized)
            if parsed is not None:
                kind, sizes = parsed
                return cls(kind, sizes)
        raise ValueError(
            f"Pair label '{label}' is not recognized. Use a concrete label such as so(8,8), gl(4,R), sl(3,R), o(4) or gl(2,C)."
        )

    def _get_pair_adapter(self) -> Tuple[BasePair, List[Claim]]:
        modules = _pair_modules()

        module = None
        for name in modules:
            candidate = _import_pair_module(name)
            if self.kind in candidate.SUPPORTED_KINDS:
                module, module_name = candidate, name
                break

        if module is None:
            supported = ", ".join(k for name in modules for k in _import_pair_module(name).SUPPORTED_KINDS)
            try:
                parse_pair_kind(self.kind, self.sizes)
            except ValueError:
                raise ValueError(f"Pair kind '{self.kind}' is not supported. Supported kinds are: {supported}.")
            raise ValueError(
                f"Pair kind '{self.kind}' has no witness synthesizer. "
                f"Use hurwitz.table_value for its closed-form value; synthesized kinds are: {supported}."
            )

        # Construct the adapter class name from the module name
        class_name = "".join(part.capitalize() for part in module_name.split("_")) + "PairAdapter"
        adapter_class = getattr(module, class_name)

        if len(self.sizes) != 1:
            raise ValueError(f"Pair kind '{self.kind}' takes one size parameter, got {len(self.sizes)}.")
        return adapter_class(self.kind, self.sizes), module.SUPPORTED_KINDS[self.kind]

    def p_membership(self, a: RationalMatrix) -> bool:
        if a.shape != (self.rep_dim, self.rep_dim):
            raise ValueError(f"{self.label} acts on R^{self.rep_dim}; got a {a.rows}x{a.cols} matrix.")
        return self.adapter.p_membership(a)

    def p_basis(self) -> List[RationalMatrix]:
        return self.adapter.p_basis()

    def table(self) -> Optional[TableValue]:
        return self.adapter.table()

    def targets(self) -> Tuple[int, int]:
        return self.adapter.targets()

    def build_rho1_witness(self, n: int) -> List[RationalMatrix]:
        if Claim.CLIFFORD_RHO1 not in self.supported_claims:
            self.adapter._require_size(n, 0, "A Clifford witness")
        return self.adapter.build_rho1_witness(n)

    def build_rho2_witness(self, n: int) -> List[RationalMatrix]:
        return self.adapter.build_rho2_witness(n)

    def __repr__(self) -> str:
        return f"CartanPair({self.label})"
