from ._split_orthogonal import SplitOrthogonalPairAdapter
from ._real_general import RealGeneralPairAdapter
from ._real_special import RealSpecialPairAdapter
from ._orthogonal import OrthogonalPairAdapter
from ._complex_general import ComplexGeneralPairAdapter
