"""Finite-dimensional real Lie algebras given by rational structure constants."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import (
    Matrix,
    format_rational,
    is_zero_vector,
    kernel_basis,
    rank,
    rref,
    to_rational,
    unit_vector,
    vector,
    zero_vector,
)

__all__ = [
    "LieAlgebra",
    "NotALieAlgebraError",
    "Subspace",
    "jacobi_defect",
    "catalog",
    "CATALOG_NAMES",
    "derived_subalgebra",
    "center",
    "is_ideal",
    "is_subalgebra",
    "is_derivation",
    "is_abelian_subspace",
]


class NotALieAlgebraError(ValueError):
    """Structure constants that violate the Jacobi identity."""


class LieAlgebra:
    """Lie algebra on R^n with basis e_0..e_{n-1}.

    ``brackets`` holds entries ``(i, j, k, c)`` meaning the e_k-component of
    [e_i, e_j] is c.  Indices are 0-based; antisymmetry is implied, so an entry
    with i > j is stored as (j, i, k, -c).  Pass ``check=False`` to build a
    candidate that has not been verified against Jacobi.
    """

    def __init__(self, dim: int, brackets: Iterable = (), labels: Sequence[str] | None = None,
                 *, check: bool = True):
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        self.dim = dim
        table: dict[tuple[int, int], list[Fraction]] = {}
        for entry in brackets:
            i, j, k, c = entry
            c = to_rational(c)
            for idx in (i, j, k):
                if not 0 <= idx < dim:
                    raise ValueError(f"bracket index {idx} out of range for dimension {dim}")
            if i == j:
                if c:
                    raise ValueError(f"[e{i}, e{i}] must vanish")
                continue
            if i > j:
                i, j, c = j, i, -c
            table.setdefault((i, j), [Fraction(0)] * dim)[k] += c
        self._table = {key: tuple(v) for key, v in table.items() if any(v)}
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i + 1}" for i in range(dim))
        if check:
            bad = jacobi_defect(self)
            if bad:
                (i, j, k), v = bad[0]
                raise NotALieAlgebraError(
                    f"Jacobi identity fails on (e{i + 1}, e{j + 1}, e{k + 1}): "
                    f"{[format_rational(x) for x in v]}"
                )

    @classmethod
    def abelian(cls, dim: int) -> "LieAlgebra":
        return cls(dim)

    @classmethod
    def from_bracket_function(cls, dim: int, fn, *, check: bool = True) -> "LieAlgebra":
        """Build from a function returning [e_i, e_j] as a vector, for i < j."""
        entries = []
        for i, j in combinations(range(dim), 2):
            for k, c in enumerate(fn(i, j)):
                if c:
                    entries.append((i, j, k, c))
        return cls(dim, entries, check=check)

    @property
    def structure_constants(self) -> tuple[tuple[int, int, int, Fraction], ...]:
        return tuple(
            (i, j, k, c)
            for (i, j), v in sorted(self._table.items())
            for k, c in enumerate(v)
            if c
        )

    def basis_bracket(self, i: int, j: int) -> tuple:
        if i == j:
            return zero_vector(self.dim)
        if i < j:
            return self._table.get((i, j), zero_vector(self.dim))
        v = self._table.get((j, i))
        return tuple(-c for c in v) if v else zero_vector(self.dim)

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        out = [Fraction(0)] * self.dim
        for (i, j), v in self._table.items():
            c = x[i] * y[j] - x[j] * y[i]
            if c:
                for k in range(self.dim):
                    if v[k]:
                        out[k] += c * v[k]
        return tuple(out)

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of ad(x) acting on coordinate columns."""
        return Matrix.from_columns(
            [self.bracket(x, unit_vector(self.dim, j)) for j in range(self.dim)]
        ) if self.dim else Matrix.zeros(0, 0)

    def ad_basis(self, i: int) -> Matrix:
        return self.ad(unit_vector(self.dim, i))

    def basis(self) -> list[tuple]:
        return [unit_vector(self.dim, i) for i in range(self.dim)]

    def is_abelian(self) -> bool:
        return not self._table

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.dim == other.dim and self._table == other._table

    def __hash__(self) -> int:
        return hash((self.dim, tuple(sorted(self._table.items()))))

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, brackets={len(self.structure_constants)} entries)"

    # serialisation, 1-based as in the CLI formats
    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "brackets": [[i + 1, j + 1, k + 1, format_rational(c)]
                         for i, j, k, c in self.structure_constants],
        }

    @classmethod
    def from_json(cls, data) -> "LieAlgebra":
        if not isinstance(data, dict):
            raise ValueError("algebra: expected an object with 'dim' and 'brackets'")
        if "dim" not in data:
            raise ValueError("algebra: missing field 'dim'")
        dim = data["dim"]
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise ValueError("algebra: field 'dim' must be a non-negative integer")
        raw = data.get("brackets", [])
        if not isinstance(raw, list):
            raise ValueError("algebra: field 'brackets' must be a list")
        entries = []
        for n, e in enumerate(raw):
            if not (isinstance(e, list) and len(e) == 4 and all(isinstance(t, int) for t in e[:3])):
                raise ValueError(f"algebra: field 'brackets[{n}]' must be [i, j, k, \"c\"]")
            try:
                c = to_rational(e[3])
            except (TypeError, ValueError, ZeroDivisionError):
                raise ValueError(f"algebra: field 'brackets[{n}]' has a malformed coefficient") from None
            if not all(1 <= t <= dim for t in e[:3]):
                raise ValueError(f"algebra: field 'brackets[{n}]' has an index outside 1..{dim}")
            entries.append((e[0] - 1, e[1] - 1, e[2] - 1, c))
        return cls(dim, entries)


def jacobi_defect(g: LieAlgebra) -> list[tuple[tuple[int, int, int], tuple]]:
    """Basis triples i<j<k where the cyclic Jacobi sum is non-zero."""
    bad = []
    basis = g.basis()
    for i, j, k in combinations(range(g.dim), 3):
        ei, ej, ek = basis[i], basis[j], basis[k]
        total = [Fraction(0)] * g.dim
        for a, b, c in ((ei, ej, ek), (ej, ek, ei), (ek, ei, ej)):
            t = g.bracket(g.bracket(a, b), c)
            total = [x + y for x, y in zip(total, t)]
        if any(total):
            bad.append(((i, j, k), tuple(total)))
    return bad


# -- catalog -----------------------------------------------------------------

CATALOG_NAMES = ("R3", "h1", "r3", "r3_lambda", "r3_delta", "so3", "sl2")


def catalog(name: str, lam=None, delta=None) -> LieAlgebra:
    """The 3-dimensional algebras used throughout, by name.

    r3_lambda takes any ``lam`` (the classification only needs -1 <= lam <= 1,
    other values give isomorphic algebras); r3_delta takes any ``delta``.
    """
    one = Fraction(1)
    if name == "R3":
        entries = []
    elif name == "h1":
        entries = [(0, 1, 2, one)]
    elif name == "r3":
        entries = [(0, 1, 1, one), (0, 2, 1, one), (0, 2, 2, one)]
    elif name == "r3_lambda":
        if lam is None:
            raise ValueError("r3_lambda needs a value for lambda")
        lam = to_rational(lam)
        entries = [(0, 1, 1, one), (0, 2, 2, lam)]
    elif name == "r3_delta":
        if delta is None:
            raise ValueError("r3_delta needs a value for delta")
        d = to_rational(delta)
        entries = [(0, 1, 1, one), (0, 1, 2, d), (0, 2, 1, -d), (0, 2, 2, one)]
    elif name == "so3":
        entries = [(0, 1, 2, one), (0, 2, 1, -one), (1, 2, 0, one)]
    elif name == "sl2":
        entries = [(0, 1, 1, 2 * one), (0, 2, 2, -2 * one), (1, 2, 0, one)]
    else:
        raise KeyError(f"unknown algebra {name!r}; choose from {', '.join(CATALOG_NAMES)}")
    return LieAlgebra(3, entries)


# -- subspaces ---------------------------------------------------------------

class Subspace:
    """Linear subspace of R^n stored as a basis of independent columns."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vecs = [vector(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in R^{ambient_dim}")
        self.ambient_dim = ambient_dim
        if vecs:
            _, pivots = rref(Matrix.from_columns(vecs))
            vecs = [vecs[p] for p in pivots]
        self.basis = tuple(vecs)

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls(n, [unit_vector(n, i) for i in range(n)])

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        return cls(n, [unit_vector(n, i) for i in indices])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Matrix:
        return Matrix.from_columns(self.basis) if self.basis else Matrix.zeros(self.ambient_dim, 0)

    def contains(self, v: Sequence) -> bool:
        v = vector(v)
        if is_zero_vector(v):
            return True
        return rank(Matrix.from_columns(list(self.basis) + [v])) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        if not self.dim or not other.dim:
            return Subspace(self.ambient_dim)
        a, b = self.matrix(), other.matrix()
        stacked = Matrix.block([[a, -b]])
        vecs = []
        for k in kernel_basis(stacked):
            coeffs = k[: self.dim]
            vecs.append(a @ coeffs)
        return Subspace(self.ambient_dim, vecs)

    def image(self, m: Matrix) -> "Subspace":
        return Subspace(m.nrows, [m @ v for v in self.basis])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and self.contains_subspace(other)
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.dim))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in R^{self.ambient_dim})"


def derived_subalgebra(g: LieAlgebra) -> Subspace:
    return Subspace(g.dim, [g.basis_bracket(i, j) for i, j in combinations(range(g.dim), 2)])


def center(g: LieAlgebra) -> Subspace:
    if g.dim == 0:
        return Subspace(0)
    stacked = Matrix.block([[g.ad_basis(i)] for i in range(g.dim)])
    return Subspace(g.dim, kernel_basis(stacked))


def is_subalgebra(g: LieAlgebra, s: Subspace) -> bool:
    return all(s.contains(g.bracket(x, y)) for x, y in combinations(s.basis, 2))


def is_ideal(g: LieAlgebra, s: Subspace) -> bool:
    return all(s.contains(g.bracket(e, x)) for e in g.basis() for x in s.basis)


def is_abelian_subspace(g: LieAlgebra, s: Subspace) -> bool:
    return all(is_zero_vector(g.bracket(x, y)) for x, y in combinations(s.basis, 2))


def is_derivation(g: LieAlgebra, d: Matrix) -> bool:
    """D[x, y] == [Dx, y] + [x, Dy] on all basis pairs."""
    if d.shape != (g.dim, g.dim):
        raise ValueError("derivation must be a square matrix of the algebra's dimension")
    basis = g.basis()
    for i, j in combinations(range(g.dim), 2):
        x, y = basis[i], basis[j]
        lhs = d @ g.bracket(x, y)
        rhs = [a + b for a, b in zip(g.bracket(d @ x, y), g.bracket(x, d @ y))]
        if list(lhs) != rhs:
            return False
    return True
