import re
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple, Union

from .exactmat import to_rational
from .types import ClassicalPairKind, HurwitzDecomposition, TableValue


def decompose(n: int) -> HurwitzDecomposition:
    """
    Writes ``n = 2^(4a+b) (2c+1)`` with ``0 <= b <= 3``.

    Args:
        n: A positive integer.

    Returns:
        HurwitzDecomposition: The unique ``(a, b, c)`` together with ``rho(n)``.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"Expected a positive integer, got {n!r}.")
    if n < 1:
        raise ValueError(f"The Hurwitz-Radon decomposition needs n >= 1, got {n}.")

    v = ord2(n)
    a, b = divmod(v, 4)
    c = (n >> v) // 2
    return HurwitzDecomposition(n=n, a=a, b=b, c=c, rho=8 * a + 2**b)


def ord2(n: int) -> int:
    """
    The 2-adic valuation of a positive integer.
    """
    if n < 1:
        raise ValueError(f"ord2 needs n >= 1, got {n}.")
    return (n & -n).bit_length() - 1


def rho(n: int) -> int:
    """
    The Hurwitz-Radon number ``rho(n) = 8a + 2^b``.
    """
    return decompose(n).rho


def rho_extended(q: Union[int, str, Fraction]) -> int:
    """
    ``rho`` on positive rationals: ``rho(q)`` for integers and 0 otherwise.

    The 0 convention lets table rows such as ``rho(N/2) + 1`` evaluate for every N. It is not part of the
    classical definition.
    """
    q = to_rational(q)
    if q <= 0:
        raise ValueError(f"rho_extended needs a positive argument, got {q}.")
    if q.denominator != 1:
        return 0
    return rho(q.numerator)


def sphere_vector_fields(n: int) -> int:
    """
    ``rho(n) - 1``: the number of pointwise independent vector fields on the sphere of R^n realized by
    linear (Hurwitz-Radon) fields.
    """
    return rho(n) - 1


_FIELD_ALIASES = {"ℝ": "R", "ℂ": "C", "ℍ": "H", "𝔻": "D"}
_FRAKTUR_ALIASES = {"𝔰": "s", "𝔬": "o", "𝔩": "l", "𝔤": "g", "𝔲": "u", "𝔭": "p"}

# Tag -> (size parameter names, formula for the common value of rho1 and rho2).
_TABLE: Dict[str, Tuple[Tuple[str, ...], Callable[..., int]]] = {
    "so(N,N)": (("N",), lambda N: rho(N)),
    "gl(N,R)": (("N",), lambda N: rho_extended(Fraction(N, 2)) + 1),
    "sp(N,R)": (("N",), lambda N: rho_extended(Fraction(N, 2)) + 2),
    "sp(N,C)": (("N",), lambda N: rho_extended(Fraction(N, 2)) + 3),
    "sp(N,N)": (("N",), lambda N: rho_extended(Fraction(N, 2)) + 4),
    "gl(N,H)": (("N",), lambda N: rho_extended(Fraction(N, 4)) + 5),
    "so*(2N)": (("N",), lambda N: rho_extended(Fraction(N, 8)) + 6),
    "so(N,C)": (("N",), lambda N: rho_extended(Fraction(N, 16)) + 7),
    "gl(N,C)": (("N",), lambda N: 2 * ord2(N) + 1),
    "su(N,N)": (("N",), lambda N: 2 * ord2(N) + 2),
    "sl(2N,R)": (("N",), lambda N: rho(N) + 1),
    "sl(2N,C)": (("N",), lambda N: 2 * ord2(N) + 3),
    "sl(2N,H)": (("N",), lambda N: rho_extended(Fraction(N, 2)) + 5),
    "sl(1,D)": ((), lambda: 0),
    "su(p,q;D)": (("p", "q"), lambda p, q: 0),
    "sl(2N+1,D)": (("N",), lambda N: 0),
}

# Rows with an explicit witness construction in the pair catalogue.
SYNTHESIZED_ROWS = ("so(N,N)", "gl(N,R)", "sl(2N,R)", "gl(N,C)")

_DIVISION_ALGEBRA_ROW = re.compile(r"^(sl\(1|su\(p,q;|sl\(2N\+1),?[RCHD]\)$")


def supported_tags() -> List[str]:
    return list(_TABLE)


def ascii_tag(tag: str) -> str:
    """
    Strips whitespace and replaces blackboard bold and Fraktur letters by their ASCII forms.
    """
    tag = "".join(tag.split())
    for alias, letter in _FIELD_ALIASES.items():
        tag = tag.replace(alias, letter)
    for alias, letter in _FRAKTUR_ALIASES.items():
        tag = tag.replace(alias, letter)
    return tag


def _normalize_tag(tag: str) -> str:
    tag = ascii_tag(tag)
    match = _DIVISION_ALGEBRA_ROW.match(tag)
    if match:
        prefix = match.group(1)
        tag = prefix + ("," if prefix.startswith("sl") else "") + "D)"
    return tag


def parse_pair_kind(tag: str, sizes: Sequence[int] = ()) -> ClassicalPairKind:
    """
    Validates a table row tag and its size parameters.

    Args:
        tag: A row tag such as ``so(N,N)``, ``gl(N,ℂ)`` or ``sl(2N+1,ℝ)``. Field letters may be ASCII or
            blackboard bold; ``sl(1,·)``, ``su(p,q;·)`` and ``sl(2N+1,·)`` accept any field letter.
        sizes: The size parameters of the row.

    Returns:
        ClassicalPairKind: The normalized row.
    """
    normalized = _normalize_tag(tag)
    if normalized not in _TABLE:
        raise ValueError(f"Pair kind '{tag}' is not in the table. Supported kinds are: {', '.join(_TABLE)}.")

    names, _ = _TABLE[normalized]
    sizes = list(sizes)
    if len(sizes) != len(names):
        expected = ", ".join(names) if names else "no size parameters"
        raise ValueError(f"Pair kind '{normalized}' takes {expected}; got {len(sizes)} size parameter(s).")
    for name, value in zip(names, sizes):
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise ValueError(f"Size parameter {name} of '{normalized}' must be a positive integer, got {value!r}.")
    if normalized == "su(p,q;D)" and sizes[0] == sizes[1]:
        raise ValueError("The su(p,q;D) row requires p != q; su(N,N) has its own row.")
    return ClassicalPairKind(tag=normalized, sizes=sizes)


def table_value(pair: Union[ClassicalPairKind, str], sizes: Sequence[int] = ()) -> TableValue:
    """
    Closed-form values of ``rho1`` and ``rho2`` for a classical pair with its standard representation.

    The two values agree except on ``sl(2N+1, D)``, where ``rho1 = 0`` and ``rho2 = 1``.

    Args:
        pair: A ClassicalPairKind, or a row tag together with ``sizes``.
        sizes: The size parameters when ``pair`` is a tag.

    Returns:
        TableValue: The values of the row.
    """
    kind = pair if isinstance(pair, ClassicalPairKind) else parse_pair_kind(pair, sizes)
    kind = parse_pair_kind(kind.tag, kind.sizes)
    _, formula = _TABLE[kind.tag]
    value = formula(*kind.sizes)
    rho2 = 1 if kind.tag == "sl(2N+1,D)" else value
    return TableValue(
        pair=kind.tag, sizes=kind.sizes, rho1=value, rho2=rho2, synthesizer=kind.tag in SYNTHESIZED_ROWS
    )
