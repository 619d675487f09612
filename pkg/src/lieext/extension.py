"""Extensions 0 -> h -> g -> k -> 0 built from (pi, alpha), and their splitting.

The extended algebra always lists the k basis first, then the h basis, so a
vector of g is (x, y) with x in k and y in h.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .cohomology import Representation, TwoCochain, d2
from .lie import LieAlgebra, Subspace, center, is_ideal
from .linalg import Matrix, NotInvertibleError, inverse, unit_vector

__all__ = [
    "ExtensionData",
    "ExtendedAlgebra",
    "ValidationReport",
    "InvalidExtensionError",
    "validate_extension",
    "build_extension",
    "split_extension",
    "semidirect",
    "tangent_algebra",
    "cotangent_algebra",
]


class InvalidExtensionError(ValueError):
    pass


@dataclass(frozen=True)
class ExtensionData:
    k: LieAlgebra
    h: LieAlgebra
    pi: Representation
    alpha: TwoCochain

    def __post_init__(self):
        if self.pi.source != self.k or self.pi.target != self.h:
            raise ValueError("representation must map k into gl(h)")
        if (self.alpha.source_dim, self.alpha.target_dim) != (self.k.dim, self.h.dim):
            raise ValueError("alpha must be a 2-cochain on k with values in h")


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def validate_extension(data: ExtensionData) -> ValidationReport:
    failures = []
    if not data.pi.is_homomorphism():
        failures.append("pi is not a homomorphism")
    if not data.pi.acts_by_derivations():
        failures.append("pi does not act by derivations of h")
    if not center(data.h).contains_subspace(data.alpha.image()):
        failures.append("the image of alpha is not central in h")
    if d2(data.pi, data.alpha):
        failures.append("alpha is not a 2-cocycle")
    return ValidationReport(not failures, tuple(failures))


@dataclass(frozen=True)
class ExtendedAlgebra:
    g: LieAlgebra
    k_dim: int
    h_dim: int
    data: ExtensionData | None = field(default=None, compare=False)

    @property
    def k_range(self) -> range:
        return range(0, self.k_dim)

    @property
    def h_range(self) -> range:
        return range(self.k_dim, self.k_dim + self.h_dim)

    def k_subspace(self) -> Subspace:
        return Subspace.coordinate(self.g.dim, self.k_range)

    def h_subspace(self) -> Subspace:
        return Subspace.coordinate(self.g.dim, self.h_range)

    def embed_k(self, x) -> tuple:
        return tuple(x) + (0,) * self.h_dim

    def embed_h(self, y) -> tuple:
        return (0,) * self.k_dim + tuple(y)

    def product_structure(self) -> Matrix:
        """E = +1 on k and -1 on h."""
        return Matrix.diag([1] * self.k_dim + [-1] * self.h_dim)


def _extension_bracket(data: ExtensionData):
    n = data.k.dim
    k, h, pi, alpha = data.k, data.h, data.pi, data.alpha

    def fn(a: int, b: int) -> tuple:
        if b < n:
            x, y = unit_vector(n, a), unit_vector(n, b)
            return k.bracket(x, y) + alpha(x, y)
        if a < n:
            return (0,) * n + pi.matrices[a].col(b - n)
        return (0,) * n + h.basis_bracket(a - n, b - n)

    return fn


def build_extension(data: ExtensionData, *, check: bool = True) -> ExtendedAlgebra:
    """Bracket on k + h from (pi, alpha).

    With ``check`` the data is validated first and the result is verified
    against Jacobi; ``check=False`` yields an unchecked candidate.
    """
    if check:
        report = validate_extension(data)
        if not report.ok:
            raise InvalidExtensionError("; ".join(report.failures))
    n, m = data.k.dim, data.h.dim
    g = LieAlgebra.from_bracket_function(n + m, _extension_bracket(data), check=check)
    return ExtendedAlgebra(g, n, m, data)


def semidirect(k: LieAlgebra, h: LieAlgebra, pi: Representation) -> ExtendedAlgebra:
    return build_extension(ExtensionData(k, h, pi, TwoCochain.zero(k.dim, h.dim)))


def tangent_algebra(k: LieAlgebra) -> ExtendedAlgebra:
    """k acting on a copy of itself (made abelian) by the adjoint action."""
    h = LieAlgebra(k.dim)
    pi = Representation(k, h, tuple(k.ad_basis(i) for i in range(k.dim)))
    return semidirect(k, h, pi)


def cotangent_algebra(k: LieAlgebra) -> ExtendedAlgebra:
    """k acting on its dual by the coadjoint action."""
    pi = Representation.coadjoint(k)
    return semidirect(k, pi.target, pi)


def split_extension(g: LieAlgebra, h_sub: Subspace, k_sub: Subspace) -> ExtensionData:
    """Recover (k, h, pi, alpha) from an ideal h and a linear complement k.

    The returned algebras use the given bases of k_sub and h_sub as their
    standard bases.
    """
    if h_sub.ambient_dim != g.dim or k_sub.ambient_dim != g.dim:
        raise ValueError("subspaces must live in the algebra")
    if h_sub.dim + k_sub.dim != g.dim:
        raise ValueError("k and h must have complementary dimensions")
    if not is_ideal(g, h_sub):
        raise ValueError("h is not an ideal")
    n, m = k_sub.dim, h_sub.dim
    basis = list(k_sub.basis) + list(h_sub.basis)
    try:
        coords = inverse(Matrix.from_columns(basis))
    except NotInvertibleError:
        raise ValueError("k and h do not span the algebra") from None

    def in_basis(a: int, b: int) -> tuple:
        return coords @ g.bracket(basis[a], basis[b])

    k_entries, h_entries, alpha_vals = [], [], {}
    pi_cols = [[None] * m for _ in range(n)]
    for a, b in combinations(range(n + m), 2):
        v = in_basis(a, b)
        if b < n:
            k_entries += [(a, b, c, v[c]) for c in range(n) if v[c]]
            alpha_vals[(a, b)] = v[n:]
        elif a < n:
            pi_cols[a][b - n] = v[n:]
        else:
            h_entries += [(a - n, b - n, c - n, v[c]) for c in range(n, n + m) if v[c]]
    k = LieAlgebra(n, k_entries)
    h = LieAlgebra(m, h_entries)
    pi = Representation(k, h, tuple(Matrix.from_columns(cols) if m else Matrix.zeros(0, 0)
                                    for cols in pi_cols))
    return ExtensionData(k, h, pi, TwoCochain(n, m, alpha_vals))

