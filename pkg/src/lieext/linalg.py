"""Exact dense linear algebra over the rationals.

Vectors are tuples of ``Fraction``; matrices are immutable ``Matrix`` objects.
Nothing in this module touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

__all__ = [
    "Rational",
    "Vector",
    "Matrix",
    "NotInvertibleError",
    "to_rational",
    "parse_rational",
    "format_rational",
    "vector",
    "zero_vector",
    "unit_vector",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "vec_combine",
    "is_zero_vector",
    "rref",
    "rank",
    "kernel_basis",
    "determinant",
    "inverse",
    "solve",
    "integer_scaled",
]

Rational = Fraction
Vector = tuple


class NotInvertibleError(ArithmeticError):
    """Raised when a singular matrix is inverted."""


def to_rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused on purpose: they would silently carry binary rounding.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if q == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(q: Fraction) -> str:
    q = to_rational(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- vectors -----------------------------------------------------------------

def vector(values: Iterable) -> tuple:
    return tuple(to_rational(v) for v in values)


def zero_vector(n: int) -> tuple:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> tuple:
    return tuple(Fraction(1 if k == i else 0) for k in range(n))


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def vec_combine(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> tuple:
    """Return sum(c_i * v_i) as a length-n vector."""
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k in range(n):
                if v[k]:
                    out[k] += c * v[k]
    return tuple(out)


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


# -- matrices ----------------------------------------------------------------

class Matrix:
    """Immutable dense matrix with Fraction entries."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(to_rational(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged matrix rows")
        else:
            width = ncols or 0
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def _trusted(cls, rows: tuple, ncols: int) -> "Matrix":
        m = object.__new__(cls)
        m._rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    # construction helpers
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        z = Fraction(0)
        return cls._trusted(tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._trusted(tuple(unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        vals = [to_rational(e) for e in entries]
        return cls._trusted(
            tuple(tuple(vals[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        cols = [vector(c) for c in columns]
        if not cols:
            return cls.zeros(nrows or 0, 0)
        n = len(cols[0])
        return cls._trusted(tuple(tuple(c[i] for c in cols) for i in range(n)), len(cols))

    @classmethod
    def block(cls, blocks: Sequence[Sequence["Matrix"]]) -> "Matrix":
        rows = []
        for block_row in blocks:
            height = block_row[0].nrows
            if any(b.nrows != height for b in block_row):
                raise ValueError("block heights differ")
            for i in range(height):
                rows.append(sum((b._rows[i] for b in block_row), ()))
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ValueError("block widths differ")
        return cls._trusted(tuple(rows), width)

    @classmethod
    def block_diag(cls, *mats: "Matrix") -> "Matrix":
        grid = []
        for i, a in enumerate(mats):
            grid.append([a if i == j else cls.zeros(a.nrows, b.ncols) for j, b in enumerate(mats)])
        return cls.block(grid)

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple:
        return self._rows

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._trusted(tuple(tuple(self._rows[i][j] for j in cols) for i in rows), len(cols))

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    @property
    def T(self) -> "Matrix":
        if not (self.nrows and self.ncols):
            return Matrix.zeros(self.ncols, self.nrows)
        return Matrix._trusted(tuple(zip(*self._rows)), self.nrows)

    # arithmetic
    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._trusted(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._trusted(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._trusted(tuple(tuple(-a for a in r) for r in self._rows), self.ncols)

    def __mul__(self, c) -> "Matrix":
        c = to_rational(c)
        return Matrix._trusted(tuple(tuple(c * a for a in r) for r in self._rows), self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = list(zip(*other._rows)) if other.nrows else [()] * other.ncols
            return Matrix._trusted(
                tuple(
                    tuple(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols)
                    for r in self._rows
                ),
                other.ncols,
            )
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError(f"shape mismatch {self.shape} @ vector of length {len(v)}")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in self._rows)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square() or k < 0:
            raise ValueError("integer powers need a square matrix and k >= 0")
        out = Matrix.identity(self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self._rows)
        return f"Matrix([{body}])"

    # serialisation
    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in self._rows]

    @classmethod
    def from_json(cls, data) -> "Matrix":
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("a matrix must be a list of rows")
        return cls(data)


# -- elimination -------------------------------------------------------------

def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns."""
    a = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        if piv != 1:
            a[r] = [x / piv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Matrix._trusted(tuple(tuple(row) for row in a), ncols), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> list[tuple]:
    """Basis of the null space, one vector per free column (unit entry there)."""
    reduced, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -reduced[row, f]
        basis.append(tuple(v))
    return basis


def determinant(m: Matrix) -> Fraction:
    """Bareiss fraction-free elimination, run on an integer rescaling of m."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return Fraction(1)
    scale = 1
    a = []
    for r in m.rows:
        d = lcm(*(x.denominator for x in r))
        scale *= d
        a.append([int(x * d) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], scale)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise NotInvertibleError("non-square matrix")
    n = m.nrows
    aug = Matrix._trusted(
        tuple(r + unit_vector(n, i) for i, r in enumerate(m.rows)), 2 * n
    )
    reduced, pivots = rref(aug)
    if pivots[:n] != tuple(range(n)):
        raise NotInvertibleError("matrix is singular")
    return Matrix._trusted(tuple(r[n:] for r in reduced.rows), n)


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """One solution of m x = b, or None if the system is inconsistent."""
    aug = Matrix._trusted(tuple(r + (to_rational(bi),) for r, bi in zip(m.rows, b)), m.ncols + 1)
    reduced, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [Fraction(0)] * m.ncols
    for row, pc in enumerate(pivots):
        x[pc] = reduced[row, m.ncols]
    return tuple(x)


def integer_scaled(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Positive rational multiple of v with integer entries."""
    d = lcm(*(to_rational(x).denominator for x in v)) if v else 1
    return tuple(int(x * d) for x in v)
