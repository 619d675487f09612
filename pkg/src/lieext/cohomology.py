"""Chevalley-Eilenberg cochains in degrees 1 and 2 for a representation.

A 1-cochain k -> h is a Matrix whose column m is the image of e_m.  A
2-cochain is a ``TwoCochain``: an alternating bilinear map given on pairs i<j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .lie import LieAlgebra, Subspace, center, is_derivation
from .linalg import (
    Matrix,
    format_rational,
    kernel_basis,
    rank,
    to_rational,
    unit_vector,
    vec_add,
    vec_sub,
    vector,
    zero_vector,
)

__all__ = [
    "Representation",
    "OneCochain",
    "TwoCochain",
    "NotACocycleError",
    "d1",
    "d2",
    "coboundary_of",
    "is_one_cocycle",
    "is_two_cocycle",
    "d1_matrix",
    "d2_matrix",
    "z1_basis",
    "b1_basis",
    "h1_dim",
    "z2_dim",
    "h2_dim",
]

OneCochain = Matrix


class NotACocycleError(ValueError):
    pass


@dataclass(frozen=True)
class Representation:
    """Linear map pi from ``source`` to gl(target), one matrix per basis vector.

    Nothing is enforced at construction; use ``is_homomorphism`` and
    ``acts_by_derivations`` to validate.
    """

    source: LieAlgebra
    target: LieAlgebra
    matrices: tuple

    def __post_init__(self):
        mats = tuple(self.matrices)
        object.__setattr__(self, "matrices", mats)
        if len(mats) != self.source.dim:
            raise ValueError(f"need {self.source.dim} matrices, got {len(mats)}")
        m = self.target.dim
        for a in mats:
            if a.shape != (m, m):
                raise ValueError(f"representation matrices must be {m}x{m}")

    @classmethod
    def adjoint(cls, g: LieAlgebra) -> "Representation":
        return cls(g, g, tuple(g.ad_basis(i) for i in range(g.dim)))

    @classmethod
    def coadjoint(cls, g: LieAlgebra) -> "Representation":
        """pi(x) = -ad(x)^T on the abelian dual space."""
        return cls(g, LieAlgebra(g.dim), tuple(-g.ad_basis(i).T for i in range(g.dim)))

    @classmethod
    def trivial(cls, k: LieAlgebra, h: LieAlgebra) -> "Representation":
        return cls(k, h, tuple(Matrix.zeros(h.dim, h.dim) for _ in range(k.dim)))

    def of(self, x: Sequence) -> Matrix:
        out = Matrix.zeros(self.target.dim, self.target.dim)
        for c, a in zip(x, self.matrices):
            if c:
                out = out + a * c
        return out

    def act(self, x: Sequence, v: Sequence) -> tuple:
        out = zero_vector(self.target.dim)
        for c, a in zip(x, self.matrices):
            if c:
                out = vec_add(out, tuple(c * t for t in a @ v))
        return out

    def homomorphism_defects(self) -> list[tuple[int, int]]:
        bad = []
        k = self.source
        for i, j in combinations(range(k.dim), 2):
            a, b = self.matrices[i], self.matrices[j]
            if a @ b - b @ a != self.of(k.basis_bracket(i, j)):
                bad.append((i, j))
        return bad

    def is_homomorphism(self) -> bool:
        return not self.homomorphism_defects()

    def acts_by_derivations(self) -> bool:
        return all(is_derivation(self.target, a) for a in self.matrices)


# -- 2-cochains --------------------------------------------------------------

class TwoCochain:
    """Alternating bilinear map R^n x R^n -> R^m stored on basis pairs i<j."""

    __slots__ = ("source_dim", "target_dim", "_values")

    def __init__(self, source_dim: int, target_dim: int, values: dict | None = None):
        self.source_dim = source_dim
        self.target_dim = target_dim
        vals = {}
        for (i, j), v in (values or {}).items():
            v = vector(v)
            if len(v) != target_dim:
                raise ValueError("cochain value has the wrong length")
            if i == j:
                if any(v):
                    raise ValueError("a 2-cochain must vanish on (e_i, e_i)")
                continue
            if i > j:
                i, j, v = j, i, tuple(-c for c in v)
            if any(v):
                vals[(i, j)] = vec_add(vals.get((i, j), zero_vector(target_dim)), v)
        self._values = {key: v for key, v in vals.items() if any(v)}

    @classmethod
    def zero(cls, source_dim: int, target_dim: int) -> "TwoCochain":
        return cls(source_dim, target_dim)

    @classmethod
    def from_function(cls, source_dim: int, target_dim: int,
                      fn: Callable[[tuple, tuple], Sequence]) -> "TwoCochain":
        """Sample a bilinear function on basis pairs i<j."""
        values = {}
        for i, j in combinations(range(source_dim), 2):
            values[(i, j)] = fn(unit_vector(source_dim, i), unit_vector(source_dim, j))
        return cls(source_dim, target_dim, values)

    def value(self, i: int, j: int) -> tuple:
        if i == j:
            return zero_vector(self.target_dim)
        if i < j:
            return self._values.get((i, j), zero_vector(self.target_dim))
        v = self._values.get((j, i))
        return tuple(-c for c in v) if v else zero_vector(self.target_dim)

    def __call__(self, x: Sequence, y: Sequence) -> tuple:
        out = [Fraction(0)] * self.target_dim
        for (i, j), v in self._values.items():
            c = x[i] * y[j] - x[j] * y[i]
            if c:
                for k in range(self.target_dim):
                    out[k] += c * v[k]
        return tuple(out)

    evaluate = __call__

    def items(self):
        return sorted(self._values.items())

    def is_zero(self) -> bool:
        return not self._values

    def image(self) -> Subspace:
        return Subspace(self.target_dim, self._values.values())

    def coordinates(self) -> tuple:
        """Flat coordinate vector: pairs i<j in lexicographic order, then target index."""
        out = []
        for i, j in combinations(range(self.source_dim), 2):
            out.extend(self.value(i, j))
        return tuple(out)

    def __add__(self, other: "TwoCochain") -> "TwoCochain":
        vals = dict(self._values)
        for key, v in other._values.items():
            vals[key] = vec_add(vals.get(key, zero_vector(self.target_dim)), v)
        return TwoCochain(self.source_dim, self.target_dim, vals)

    def __neg__(self) -> "TwoCochain":
        return TwoCochain(self.source_dim, self.target_dim,
                          {k: tuple(-c for c in v) for k, v in self._values.items()})

    def __sub__(self, other: "TwoCochain") -> "TwoCochain":
        return self + (-other)

    def __mul__(self, c) -> "TwoCochain":
        c = to_rational(c)
        return TwoCochain(self.source_dim, self.target_dim,
                          {k: tuple(c * x for x in v) for k, v in self._values.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TwoCochain)
            and (self.source_dim, self.target_dim) == (other.source_dim, other.target_dim)
            and self._values == other._values
        )

    def __hash__(self) -> int:
        return hash((self.source_dim, self.target_dim, tuple(sorted(self._values.items()))))

    def __repr__(self) -> str:
        return f"TwoCochain({self.source_dim}->{self.target_dim}, {len(self._values)} pairs)"

    def to_json(self) -> dict:
        return {
            "source_dim": self.source_dim,
            "target_dim": self.target_dim,
            "pairs": [[i + 1, j + 1, [format_rational(c) for c in v]] for (i, j), v in self.items()],
        }

    @classmethod
    def from_json(cls, data) -> "TwoCochain":
        if not isinstance(data, dict):
            raise ValueError("cochain: expected an object")
        for key in ("source_dim", "target_dim"):
            if not isinstance(data.get(key), int):
                raise ValueError(f"cochain: field '{key}' must be an integer")
        n, m = data["source_dim"], data["target_dim"]
        values = {}
        for idx, e in enumerate(data.get("pairs", [])):
            if not (isinstance(e, list) and len(e) == 3 and isinstance(e[2], list)):
                raise ValueError(f"cochain: field 'pairs[{idx}]' must be [i, j, [..]]")
            i, j = e[0] - 1, e[1] - 1
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"cochain: field 'pairs[{idx}]' has an index out of range")
            values[(i, j)] = e[2]
        return cls(n, m, values)


# -- differentials -----------------------------------------------------------

def _check_cochain_shape(rho: Representation, theta: Matrix) -> None:
    if theta.shape != (rho.target.dim, rho.source.dim):
        raise ValueError(
            f"1-cochain must be {rho.target.dim}x{rho.source.dim}, got {theta.shape[0]}x{theta.shape[1]}"
        )


def d1(rho: Representation, theta: Matrix) -> TwoCochain:
    """d theta(x, y) = pi(x) theta(y) - pi(y) theta(x) - theta([x, y])."""
    _check_cochain_shape(rho, theta)
    k = rho.source

    def value(x, y):
        a = rho.act(x, theta @ y)
        b = rho.act(y, theta @ x)
        return vec_sub(vec_sub(a, b), theta @ k.bracket(x, y))

    return TwoCochain.from_function(k.dim, rho.target.dim, value)


def d2(rho: Representation, alpha: TwoCochain) -> dict[tuple[int, int, int], tuple]:
    """d alpha on basis triples i<j<k; only non-zero values are returned.

    d alpha(x, y, z) = sum_cyc alpha([x, y], z) - sum_cyc pi(x) alpha(y, z).
    """
    k = rho.source
    basis = k.basis()
    out = {}
    for i, j, l in combinations(range(k.dim), 3):
        x, y, z = basis[i], basis[j], basis[l]
        total = zero_vector(rho.target.dim)
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            total = vec_add(total, alpha(k.bracket(a, b), c))
            total = vec_sub(total, rho.act(a, alpha(b, c)))
        if any(total):
            out[(i, j, l)] = total
    return out


def coboundary_of(rho: Representation, v: Sequence) -> Matrix:
    """theta_v(x) = pi(x) v."""
    v = vector(v)
    return Matrix.from_columns([a @ v for a in rho.matrices]) if rho.matrices \
        else Matrix.zeros(rho.target.dim, 0)


def is_one_cocycle(rho: Representation, theta: Matrix) -> bool:
    return d1(rho, theta).is_zero()


def is_two_cocycle(rho: Representation, alpha: TwoCochain) -> bool:
    return not d2(rho, alpha)


def _unit_cochain(m: int, n: int, r: int, c: int) -> Matrix:
    return Matrix.from_columns([unit_vector(m, r) if col == c else zero_vector(m) for col in range(n)])


def d1_matrix(rho: Representation) -> Matrix:
    """Matrix of d1 on the flattened 1-cochain.

    Unknowns are taken column-major: all entries of theta(e_1) first, then
    theta(e_2), and so on.  Rows are the flattened 2-cochain coordinates.
    """
    m, n = rho.target.dim, rho.source.dim
    cols = []
    for c in range(n):
        for r in range(m):
            cols.append(d1(rho, _unit_cochain(m, n, r, c)).coordinates())
    npairs = n * (n - 1) // 2
    if not cols:
        return Matrix.zeros(npairs * m, 0)
    if not cols[0]:
        return Matrix.zeros(0, len(cols))
    return Matrix.from_columns(cols)


def _unflatten_column_major(v: Sequence, m: int, n: int) -> Matrix:
    return Matrix.from_columns([v[c * m:(c + 1) * m] for c in range(n)])


def z1_basis(rho: Representation) -> list[Matrix]:
    m, n = rho.target.dim, rho.source.dim
    a = d1_matrix(rho)
    if a.nrows == 0:
        return [_unit_cochain(m, n, r, c) for c in range(n) for r in range(m)]
    return [_unflatten_column_major(v, m, n) for v in kernel_basis(a)]


def b1_basis(rho: Representation) -> list[Matrix]:
    m = rho.target.dim
    images = [coboundary_of(rho, unit_vector(m, r)) for r in range(m)]
    flat = Subspace(m * rho.source.dim, [sum((tuple(c) for c in t.columns()), ()) for t in images])
    return [_unflatten_column_major(v, m, rho.source.dim) for v in flat.basis]


def h1_dim(rho: Representation) -> int:
    return len(z1_basis(rho)) - len(b1_basis(rho))


def d2_matrix(rho: Representation) -> Matrix:
    """Matrix of d2 from flattened 2-cochains to flattened 3-cochains."""
    n, m = rho.source.dim, rho.target.dim
    pairs = list(combinations(range(n), 2))
    triples = list(combinations(range(n), 3))
    cols = []
    for p in pairs:
        for r in range(m):
            alpha = TwoCochain(n, m, {p: unit_vector(m, r)})
            dv = d2(rho, alpha)
            col = []
            for t in triples:
                col.extend(dv.get(t, zero_vector(m)))
            cols.append(col)
    if not cols:
        return Matrix.zeros(len(triples) * m, 0)
    if not triples or m == 0:
        return Matrix.zeros(0, len(cols))
    return Matrix.from_columns(cols)


def z2_dim(rho: Representation) -> int:
    a = d2_matrix(rho)
    return a.ncols - (rank(a) if a.nrows else 0)


def h2_dim(rho: Representation) -> int:
    b = d1_matrix(rho)
    return z2_dim(rho) - (rank(b) if b.nrows and b.ncols else 0)


def center_contains_image(h: LieAlgebra, alpha: TwoCochain) -> bool:
    return center(h).contains_subspace(alpha.image())
