import sys
import warnings


def showwarning(message, category, filename, lineno, file=None, line=None):
    print(f"{category.__name__}: {message}", file=file or sys.stderr)


warnings.showwarning = showwarning

from .exactmat import Polynomial, RationalMatrix
from .hurwitz import decompose, parse_pair_kind, rho, table_value
from .clifford import CliffordElement, CliffordSignature, build_epsilon_family, extend_to_algebra_hom, verify_epsilon_family
from .main_pair import CartanPair
from .liepairs import build_rho1_witness, build_rho2_witness, check_witness, make_pair, odd_sl_impossibility
from .pencil import check_span, refute_search
from .gmanifold import (
    ComplexLinearAction,
    LinearAction,
    assemble_clifford_structure,
    estimate_rho_g,
    estimate_rho_minus,
    estimate_rho_plus,
    realify,
    sample_pointwise_independence,
)
