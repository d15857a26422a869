import math
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np


RationalLike = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value: RationalLike) -> Fraction:
    """
    Converts an integer, a canonical ``"p/q"`` string or a Fraction into a Fraction.

    Floats are rejected: every entry of the exact layer must be given exactly.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not accepted as rational values.")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Malformed rational {value!r}. Expected 'p' or 'p/q'.") from e
    raise TypeError(f"Unsupported rational type {type(value).__name__}. Must be int, str (p/q) or Fraction.")


def format_rational(value: Fraction) -> str:
    return str(value)


class RationalMatrix:
    """
    A dense, immutable matrix over the rationals.

    Args:
        rows: The number of rows.
        cols: The number of columns.
        entries: The entries in row-major order.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[RationalLike]):
        entries = tuple(to_rational(e) for e in entries)
        if rows < 0 or cols < 0:
            raise ValueError(f"Matrix dimensions must be non-negative, got {rows}x{cols}.")
        if len(entries) != rows * cols:
            raise ValueError(f"A {rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}.")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable.")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]]) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, 0, [])
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("Every row must have the same number of entries.")
        return cls(len(rows), width, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "RationalMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence[RationalLike]) -> "RationalMatrix":
        n = len(values)
        values = [to_rational(v) for v in values]
        return cls(n, n, [values[i] if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def from_json(cls, data: dict) -> "RationalMatrix":
        """
        Reads the matrix JSON format ``{"rows": r, "cols": c, "entries": ["p/q", ...]}``.
        """
        if not isinstance(data, dict):
            raise ValueError("A matrix must be a JSON object with 'rows', 'cols' and 'entries'.")
        try:
            rows, cols, entries = data["rows"], data["cols"], data["entries"]
        except KeyError as e:
            raise ValueError(f"Matrix JSON is missing the {e.args[0]!r} field.") from e
        if not isinstance(rows, int) or not isinstance(cols, int) or not isinstance(entries, list):
            raise ValueError("Matrix JSON needs integer 'rows'/'cols' and a list of 'entries'.")
        return cls(rows, cols, entries)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [format_rational(e) for e in self.entries]}

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_numpy(self) -> np.ndarray:
        return np.array([float(e) for e in self.entries], dtype=float).reshape(self.rows, self.cols)

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> Tuple[Fraction, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> "RationalMatrix":
        return transpose(self)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_symmetric(self) -> bool:
        return self.is_square and self == transpose(self)

    def is_skew(self) -> bool:
        return self.is_square and self == -transpose(self)

    def trace(self) -> Fraction:
        _require_square(self, "trace")
        return sum((self[i, i] for i in range(self.rows)), ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        _require_same_shape(self, other, "add")
        return RationalMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        _require_same_shape(self, other, "subtract")
        return RationalMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, [-a for a in self.entries])

    def __mul__(self, scalar: RationalLike) -> "RationalMatrix":
        if isinstance(scalar, RationalMatrix):
            return NotImplemented
        return scale(self, scalar)

    __rmul__ = __mul__

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return mat_mul(self, other)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_rational(e) for e in self.row(i)) + "]" for i in range(self.rows))
        return f"RationalMatrix([{body}])"


def _require_square(a: RationalMatrix, what: str) -> None:
    if not a.is_square:
        raise ValueError(f"Cannot compute the {what} of a non-square {a.rows}x{a.cols} matrix.")


def _require_same_shape(a: RationalMatrix, b: RationalMatrix, what: str) -> None:
    if a.shape != b.shape:
        raise ValueError(f"Cannot {what} a {a.rows}x{a.cols} matrix and a {b.rows}x{b.cols} matrix.")


def mat_mul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """
    Exact matrix product. Zero entries are skipped, so signed permutation matrices multiply in linear time.
    """
    if a.cols != b.rows:
        raise ValueError(f"Cannot multiply a {a.rows}x{a.cols} matrix by a {b.rows}x{b.cols} matrix.")

    b_rows = [[(j, v) for j, v in enumerate(b.row(k)) if v] for k in range(b.rows)]
    out = []
    for i in range(a.rows):
        acc = [ZERO] * b.cols
        for k, a_ik in enumerate(a.row(i)):
            if a_ik:
                for j, b_kj in b_rows[k]:
                    acc[j] += a_ik * b_kj
        out.extend(acc)
    return RationalMatrix(a.rows, b.cols, out)


def mat_vec(a: RationalMatrix, x: Sequence[RationalLike]) -> List[Fraction]:
    if len(x) != a.cols:
        raise ValueError(f"Cannot apply a {a.rows}x{a.cols} matrix to a vector of length {len(x)}.")
    x = [to_rational(v) for v in x]
    return [sum((a_ij * x_j for a_ij, x_j in zip(a.row(i), x) if a_ij), ZERO) for i in range(a.rows)]


def transpose(a: RationalMatrix) -> RationalMatrix:
    return RationalMatrix(a.cols, a.rows, [a[i, j] for j in range(a.cols) for i in range(a.rows)])


def scale(a: RationalMatrix, scalar: RationalLike) -> RationalMatrix:
    scalar = to_rational(scalar)
    return RationalMatrix(a.rows, a.cols, [scalar * e for e in a.entries])


def linear_combination(coefficients: Sequence[RationalLike], matrices: Sequence[RationalMatrix]) -> RationalMatrix:
    if len(coefficients) != len(matrices) or not matrices:
        raise ValueError("Need one coefficient per matrix and at least one matrix.")
    rows, cols = matrices[0].shape
    acc = [ZERO] * (rows * cols)
    for t, m in zip(coefficients, matrices):
        if m.shape != (rows, cols):
            raise ValueError("All matrices of a linear combination must have the same shape.")
        t = to_rational(t)
        if t:
            for k, e in enumerate(m.entries):
                if e:
                    acc[k] += t * e
    return RationalMatrix(rows, cols, acc)


def kron(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    rows, cols = a.rows * b.rows, a.cols * b.cols
    entries = [ZERO] * (rows * cols)
    for i in range(a.rows):
        for j in range(a.cols):
            a_ij = a[i, j]
            if not a_ij:
                continue
            for k in range(b.rows):
                for l in range(b.cols):
                    b_kl = b[k, l]
                    if b_kl:
                        entries[(i * b.rows + k) * cols + j * b.cols + l] = a_ij * b_kl
    return RationalMatrix(rows, cols, entries)


def block(blocks: Sequence[Sequence[RationalMatrix]]) -> RationalMatrix:
    """
    Assembles a block matrix from a grid of equally sized rows of blocks.
    """
    rows = []
    for block_row in blocks:
        height = block_row[0].rows
        if any(b.rows != height for b in block_row):
            raise ValueError("Blocks in the same block row must have the same height.")
        for i in range(height):
            rows.append([e for b in block_row for e in b.row(i)])
    return RationalMatrix.from_rows(rows)


def anticommutator(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    return mat_mul(a, b) + mat_mul(b, a)


def first_anticommutator_failure(
    matrices: Sequence[RationalMatrix], epsilon: int
) -> Optional[Tuple[int, int, int, int, Fraction, Fraction]]:
    """
    Checks ``T_i T_j + T_j T_i = 2 epsilon delta_ij I`` for every ordered pair.

    Returns:
        None when all identities hold, else ``(i, j, row, col, actual, expected)`` for the first failing
        pair (0-based indices, pairs scanned in row-major order).
    """
    if not matrices:
        return None
    n = matrices[0].rows
    for m in matrices:
        _require_square(m, "anticommutator")
        if m.rows != n:
            raise ValueError("All matrices of a family must have the same size.")

    products = {}
    for i, a in enumerate(matrices):
        for j, b in enumerate(matrices):
            products[i, j] = mat_mul(a, b)

    for i in range(len(matrices)):
        for j in range(len(matrices)):
            value = products[i, j] + products[j, i]
            diagonal = Fraction(2 * epsilon) if i == j else ZERO
            for r in range(n):
                for c in range(n):
                    expected = diagonal if r == c else ZERO
                    if value[r, c] != expected:
                        return i, j, r, c, value[r, c], expected
    return None


def _cofactor_det(m: List[List[Fraction]]) -> Fraction:
    n = len(m)
    if n == 0:
        return ONE
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = ZERO
    for j, pivot in enumerate(m[0]):
        if pivot:
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            total += (-1 if j % 2 else 1) * pivot * _cofactor_det(minor)
    return total


def _bareiss_det(m: List[List[int]]) -> int:
    n = len(m)
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // previous
        previous = m[k][k]
    return sign * m[n - 1][n - 1]


def det(a: RationalMatrix) -> Fraction:
    """
    Exact determinant: cofactor expansion up to size 4, fraction-free Bareiss elimination above.
    """
    _require_square(a, "determinant")
    if a.rows <= 4:
        return _cofactor_det(a.to_rows())

    # Clear denominators row by row so that Bareiss runs over the integers.
    rows = []
    denominator = 1
    for i in range(a.rows):
        row = a.row(i)
        row_scale = math.lcm(*(e.denominator for e in row))
        denominator *= row_scale
        rows.append([int(e * row_scale) for e in row])
    return Fraction(_bareiss_det(rows), denominator)


def rref(a: RationalMatrix) -> Tuple[List[List[Fraction]], List[int]]:
    """
    Reduced row echelon form. Returns the reduced rows and the pivot columns.
    """
    m = a.to_rows()
    pivots = []
    r = 0
    for c in range(a.cols):
        pivot = next((i for i in range(r, a.rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [e * inv for e in m[r]]
        for i in range(a.rows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [e - factor * p for e, p in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == a.rows:
            break
    return m, pivots


def rank(a: RationalMatrix) -> int:
    return len(rref(a)[1])


def nullspace(a: RationalMatrix) -> List[List[Fraction]]:
    """
    A basis of the right kernel, each vector scaled to integer entries.
    """
    m, pivots = rref(a)
    free = [c for c in range(a.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * a.cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -m[r][f]
        basis.append(_integral(v))
    return basis


def _integral(v: List[Fraction]) -> List[Fraction]:
    common = math.lcm(*(e.denominator for e in v))
    ints = [int(e * common) for e in v]
    g = math.gcd(*ints)
    if g > 1:
        ints = [e // g for e in ints]
    return [Fraction(e) for e in ints]


def columns_to_matrix(columns: Sequence[Sequence[RationalLike]]) -> RationalMatrix:
    if not columns:
        raise ValueError("Need at least one column.")
    height = len(columns[0])
    return RationalMatrix(height, len(columns), [to_rational(columns[j][i]) for i in range(height) for j in range(len(columns))])


def is_positive_definite(a: RationalMatrix) -> bool:
    """
    Sylvester's criterion on a symmetric matrix: every leading principal minor is positive.
    """
    if not a.is_symmetric():
        return False
    for k in range(1, a.rows + 1):
        minor = RationalMatrix.from_rows([a.row(i)[:k] for i in range(k)])
        if det(minor) <= 0:
            return False
    return True


class Polynomial:
    """
    A univariate polynomial with rational coefficients.

    Args:
        coefficients: Coefficients in ascending degree. Trailing zeros are dropped, so the zero
            polynomial has an empty coefficient list.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[RationalLike] = ()):
        coefficients = [to_rational(c) for c in coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(coefficients))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable.")

    @classmethod
    def from_roots(cls, roots: Iterable[RationalLike], leading: RationalLike = 1) -> "Polynomial":
        p = cls([leading])
        for r in roots:
            p = p * cls([-to_rational(r), 1])
        return p

    @classmethod
    def interpolate(cls, xs: Sequence[RationalLike], ys: Sequence[RationalLike]) -> "Polynomial":
        """
        The unique polynomial of degree < len(xs) through the given points (Newton divided differences).
        """
        xs = [to_rational(x) for x in xs]
        coef = [to_rational(y) for y in ys]
        if len(xs) != len(coef) or len(set(xs)) != len(xs):
            raise ValueError("Interpolation needs one value per distinct node.")
        n = len(xs)
        for j in range(1, n):
            for i in range(n - 1, j - 1, -1):
                coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
        p = cls([coef[-1]]) if n else cls()
        for i in range(n - 2, -1, -1):
            p = p * cls([-xs[i], 1]) + cls([coef[i]])
        return p

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else ZERO

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x: RationalLike) -> Fraction:
        x = to_rational(x)
        acc = ZERO
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (ZERO,) * (n - len(self.coefficients))
        b = other.coefficients + (ZERO,) * (n - len(other.coefficients))
        return Polynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coefficients)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: Union["Polynomial", RationalLike]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = to_rational(other)
            return Polynomial(c * other for c in self.coefficients)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [ZERO] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("Polynomial division by the zero polynomial.")
        remainder = list(self.coefficients)
        quotient = [ZERO] * max(len(remainder) - other.degree, 0)
        lead = other.leading
        while len(remainder) - 1 >= other.degree and remainder:
            shift = len(remainder) - 1 - other.degree
            factor = remainder[-1] / lead
            quotient[shift] = factor
            for k, c in enumerate(other.coefficients):
                remainder[shift + k] -= factor * c
            remainder.pop()
            while remainder and remainder[-1] == 0:
                remainder.pop()
        return Polynomial(quotient), Polynomial(remainder)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coefficients) if k)

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self * (1 / self.leading)

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree(self) -> "Polynomial":
        """
        The square-free part ``p / gcd(p, p')``; it has the same distinct roots as ``p``.
        """
        if self.degree < 1:
            return self
        return self // self.gcd(self.derivative())

    def to_json(self) -> List[str]:
        return [format_rational(c) for c in self.coefficients]

    def __repr__(self) -> str:
        return f"Polynomial([{', '.join(format_rational(c) for c in self.coefficients)}])"


def char_poly(a: RationalMatrix) -> Polynomial:
    """
    ``det(tI - A)`` by the Faddeev-LeVerrier recursion.
    """
    _require_square(a, "characteristic polynomial")
    n = a.rows
    coefficients = [ZERO] * (n + 1)
    coefficients[n] = ONE
    identity = RationalMatrix.identity(n)
    m = RationalMatrix.zeros(n)
    for k in range(1, n + 1):
        m = mat_mul(a, m) + identity * coefficients[n - k + 1]
        coefficients[n - k] = -mat_mul(a, m).trace() / k
    return Polynomial(coefficients)


def sturm_sequence(p: Polynomial) -> List[Polynomial]:
    if p.is_zero():
        raise ValueError("The Sturm sequence of the zero polynomial is undefined.")
    sequence = [p, p.derivative()]
    while not sequence[-1].is_zero():
        sequence.append(-(sequence[-2] % sequence[-1]))
    return sequence[:-1]


def _sign_at(p: Polynomial, x: Union[Fraction, float]) -> int:
    if isinstance(x, float) and math.isinf(x):
        lead = 1 if p.leading > 0 else -1
        return lead if x > 0 or p.degree % 2 == 0 else -lead
    value = p(x)
    return (value > 0) - (value < 0)


def sign_variations(sequence: Sequence[Polynomial], x: Union[Fraction, float]) -> int:
    signs = [s for s in (_sign_at(p, x) for p in sequence) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(
    p: Polynomial,
    lower: Optional[RationalLike] = None,
    upper: Optional[RationalLike] = None,
    lower_closed: bool = False,
    upper_closed: bool = False,
) -> int:
    """
    Counts the distinct real roots of ``p`` in an interval with Sturm sign variations.

    Args:
        p: A non-zero polynomial.
        lower: The lower bound, or None for minus infinity.
        upper: The upper bound, or None for plus infinity.
        lower_closed: Whether a root at ``lower`` counts.
        upper_closed: Whether a root at ``upper`` counts.

    Returns:
        The exact number of distinct real roots in the interval.
    """
    if p.is_zero():
        raise ValueError("Cannot count the roots of the zero polynomial.")
    lo = -math.inf if lower is None else to_rational(lower)
    hi = math.inf if upper is None else to_rational(upper)
    if lo > hi:
        raise ValueError(f"Empty interval: lower bound {lower} exceeds upper bound {upper}.")
    if lo == hi:
        return int(lower_closed and upper_closed and p(lo) == 0)

    q = p.squarefree()
    sequence = sturm_sequence(q)
    # V(lo) - V(hi) counts the roots in the half-open interval (lo, hi].
    count = sign_variations(sequence, lo) - sign_variations(sequence, hi)
    if upper is not None and not upper_closed and q(hi) == 0:
        count -= 1
    if lower is not None and lower_closed and q(lo) == 0:
        count += 1
    return count


def root_bound(p: Polynomial) -> Fraction:
    """
    Cauchy's bound: every real root lies in ``[-B, B]``.
    """
    lead = abs(p.leading)
    return 1 + max((abs(c) / lead for c in p.coefficients[:-1]), default=ZERO)


def real_root_intervals(p: Polynomial) -> List[Tuple[Fraction, Fraction]]:
    """
    Isolating intervals ``(lo, hi]``, one per distinct real root, sorted ascending.
    """
    q = p.squarefree()
    if q.degree < 1:
        return []
    sequence = sturm_sequence(q)
    bound = root_bound(q)
    pending = [(-bound, bound, sign_variations(sequence, -bound), sign_variations(sequence, bound))]
    intervals = []
    while pending:
        lo, hi, v_lo, v_hi = pending.pop()
        count = v_lo - v_hi
        if count == 1:
            intervals.append((lo, hi))
        elif count > 1:
            mid = (lo + hi) / 2
            v_mid = sign_variations(sequence, mid)
            pending.append((lo, mid, v_lo, v_mid))
            pending.append((mid, hi, v_mid, v_hi))
    return sorted(intervals)


def simplest_rational(lo: Fraction, hi: Fraction) -> Fraction:
    """
    The rational with the smallest denominator in the closed interval ``[lo, hi]``.
    """
    if lo > hi:
        lo, hi = hi, lo
    if lo <= 0 <= hi:
        return ZERO
    if hi < 0:
        return -simplest_rational(-hi, -lo)
    floor = math.floor(lo)
    if floor == lo or floor + 1 <= hi:
        return Fraction(floor if floor == lo else floor + 1)
    return floor + 1 / simplest_rational(1 / (hi - floor), 1 / (lo - floor))


def refine_root(
    p: Polynomial, lo: Fraction, hi: Fraction, max_steps: int = 200
) -> Tuple[Optional[Fraction], Tuple[Fraction, Fraction]]:
    """
    Bisects an isolating interval ``(lo, hi]`` of a single root of ``p``.

    At every step the midpoint and the simplest rational of the interval are tested for an exact zero,
    so any rational root is eventually recovered exactly.

    Returns:
        The exact rational root if one was found, and the final isolating interval.
    """
    q = p.squarefree()
    if q(hi) == 0:
        return hi, (lo, hi)
    sequence = sturm_sequence(q)
    v_lo = sign_variations(sequence, lo)
    for _ in range(max_steps):
        candidate = simplest_rational(lo, hi)
        if lo < candidate <= hi and q(candidate) == 0:
            return candidate, (lo, hi)
        mid = (lo + hi) / 2
        if q(mid) == 0:
            return mid, (lo, hi)
        v_mid = sign_variations(sequence, mid)
        if v_lo - v_mid == 1:
            hi = mid
        else:
            lo, v_lo = mid, v_mid
    return None, (lo, hi)


def inverse(a: RationalMatrix) -> RationalMatrix:
    _require_square(a, "inverse")
    n = a.rows
    augmented = RationalMatrix.from_rows([list(a.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)])
    m, pivots = rref(augmented)
    if pivots[:n] != list(range(n)):
        raise ValueError("The matrix is singular and has no inverse.")
    return RationalMatrix.from_rows([row[n:] for row in m])


def realify_matrix(real: RationalMatrix, imag: RationalMatrix) -> RationalMatrix:
    """
    The real form ``[[A, -B], [B, A]]`` of the complex matrix ``A + iB``.
    """
    if real.shape != imag.shape:
        raise ValueError(f"Real part is {real.rows}x{real.cols} but imaginary part is {imag.rows}x{imag.cols}.")
    return block([[real, -imag], [imag, real]])


def elementary(n: int, i: int, j: int) -> RationalMatrix:
    """
    The ``n x n`` matrix unit ``E_ij`` (0-based indices).
    """
    return RationalMatrix(n, n, [ONE if (r, c) == (i, j) else ZERO for r in range(n) for c in range(n)])
