"""Almost complex and almost product structures on Lie algebras.

J is always a square Matrix acting on coordinate columns of the algebra.
For an extension k + h, the block form of J lists the k coordinates first.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .cohomology import NotACocycleError, Representation, TwoCochain, d1
from .extension import ExtendedAlgebra, ExtensionData, build_extension, split_extension
from .lie import LieAlgebra, Subspace, center, derived_subalgebra, is_ideal, is_subalgebra
from .linalg import (
    Matrix,
    NotInvertibleError,
    determinant,
    inverse,
    kernel_basis,
    rank,
    rref,
    unit_vector,
    vec_add,
    vec_sub,
)

__all__ = [
    "AlmostComplexStructure",
    "AlmostProductStructure",
    "nijenhuis",
    "nijenhuis_defects",
    "is_integrable",
    "ComplexClass",
    "classify_cs",
    "subspace_type",
    "j_from_cocycle",
    "alpha_from_j",
    "p22_construct",
    "T1Report",
    "t1_decompose",
    "ComplexIdealReport",
    "complex_ideal_J",
    "ExtendedIdealReport",
    "extended_complex_ideal_J",
    "is_holomorphic_action",
    "is_compatible_bilinear",
    "ProductReport",
    "product_structure_checks",
    "is_complex_product_pair",
]


class AlmostComplexStructure:
    """A linear map J with J^2 = -1."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Matrix):
        if not matrix.is_square() or matrix @ matrix != -Matrix.identity(matrix.nrows):
            raise ValueError("not an almost complex structure: J^2 != -1")
        self.matrix = matrix

    @property
    def dim(self) -> int:
        return self.matrix.nrows

    def __matmul__(self, v):
        return self.matrix @ v

    def __eq__(self, other) -> bool:
        return isinstance(other, AlmostComplexStructure) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"AlmostComplexStructure({self.matrix!r})"


class AlmostProductStructure:
    """A linear map E with E^2 = 1 and E != 1."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Matrix):
        n = matrix.nrows
        if not matrix.is_square() or matrix @ matrix != Matrix.identity(n):
            raise ValueError("not an almost product structure: E^2 != 1")
        if matrix == Matrix.identity(n):
            raise ValueError("the identity is not an almost product structure")
        self.matrix = matrix

    def eigenspace(self, sign: int) -> Subspace:
        n = self.matrix.nrows
        return Subspace(n, kernel_basis(self.matrix - Matrix.identity(n) * sign))


def _as_matrix(J) -> Matrix:
    return J.matrix if isinstance(J, (AlmostComplexStructure, AlmostProductStructure)) else J


# -- Nijenhuis ---------------------------------------------------------------

def nijenhuis(g: LieAlgebra, J, x: Sequence, y: Sequence) -> tuple:
    """[Jx, Jy] - J[Jx, y] - J[x, Jy] - [x, y]."""
    J = _as_matrix(J)
    if J.shape != (g.dim, g.dim) or len(x) != g.dim or len(y) != g.dim:
        raise ValueError("dimension mismatch between J, vectors and algebra")
    jx, jy = J @ x, J @ y
    out = g.bracket(jx, jy)
    out = vec_sub(out, J @ vec_add(g.bracket(jx, y), g.bracket(x, jy)))
    return vec_sub(out, g.bracket(x, y))


def nijenhuis_defects(g: LieAlgebra, J, u: Subspace | None = None) -> list[tuple[int, int]]:
    """Index pairs where N_J is non-zero, over the basis of u (default: all of g)."""
    basis = list(u.basis) if u is not None else g.basis()
    return [
        (a, b)
        for a, b in combinations(range(len(basis)), 2)
        if any(nijenhuis(g, J, basis[a], basis[b]))
    ]


def is_integrable(g: LieAlgebra, J, u: Subspace | None = None) -> bool:
    """N_J == 0.  Passing a totally real u with g = u + Ju checks only u x u."""
    if u is not None:
        M = _as_matrix(J)
        if rank(Matrix.from_columns(list(u.basis) + [M @ v for v in u.basis])) != g.dim \
                or 2 * u.dim != g.dim:
            raise ValueError("u is not a totally real half of g")
    return not nijenhuis_defects(g, J, u)


@dataclass(frozen=True)
class ComplexClass:
    bi_invariant: bool
    abelian: bool

    @property
    def kind(self) -> str:
        if self.bi_invariant and self.abelian:
            return "bi_invariant+abelian"
        if self.bi_invariant:
            return "bi_invariant"
        if self.abelian:
            return "abelian"
        return "generic"


def classify_cs(g: LieAlgebra, J) -> ComplexClass:
    J = _as_matrix(J)
    basis = g.basis()
    bi, ab = True, True
    for x, y in combinations(basis, 2):
        if bi and J @ g.bracket(x, y) != g.bracket(x, J @ y):
            bi = False
        if ab and g.bracket(J @ x, J @ y) != g.bracket(x, y):
            ab = False
    return ComplexClass(bi, ab)


def subspace_type(J, V: Subspace) -> str:
    J = _as_matrix(J)
    images = [J @ v for v in V.basis]
    r = rank(Matrix.from_columns(list(V.basis) + images)) if V.dim else 0
    if r == V.dim:
        return "complex"
    if r == 2 * V.dim:
        return "totally_real"
    return "neither"


# -- totally real constructions ----------------------------------------------

def j_from_cocycle(n: int, j: Matrix, sign: int = 1) -> AlmostComplexStructure:
    """J on k + h (dim k = dim h = n) with J = j on k and J = -j^{-1} on h.

    ``sign=-1`` returns -J, that is J = -j on k and J = j^{-1} on h.
    """
    if j.shape != (n, n):
        raise ValueError(f"j must be {n}x{n}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    jinv = inverse(j)
    zero = Matrix.zeros(n, n)
    J = Matrix.block([[zero, -jinv], [j, zero]])
    return AlmostComplexStructure(J if sign == 1 else -J)


def alpha_from_j(h: LieAlgebra, j: Matrix) -> TwoCochain:
    """alpha_j(x, y) = [jx, jy]_h."""
    n = j.ncols
    if j.nrows != h.dim:
        raise ValueError("j must take values in h")
    return TwoCochain.from_function(n, h.dim, lambda x, y: h.bracket(j @ x, j @ y))


def _is_two_step_or_abelian(h: LieAlgebra) -> bool:
    return center(h).contains_subspace(derived_subalgebra(h))


def p22_construct(k: LieAlgebra, h: LieAlgebra, pi: Representation, j: Matrix, *,
                  sign: int = 1, force: bool = False) -> tuple[ExtendedAlgebra, AlmostComplexStructure]:
    """g = k + h with alpha = alpha_j, and the totally real J built from j.

    Raises when j is not a 1-cocycle or is singular.  With ``force`` the
    cocycle check is skipped and the bracket is built unchecked, so that a
    bad j can be examined through its Nijenhuis tensor.
    """
    if k.dim != h.dim:
        raise ValueError("k and h must have the same dimension")
    if not _is_two_step_or_abelian(h):
        raise ValueError("h must be abelian or 2-step nilpotent")
    if determinant(j) == 0:
        raise NotInvertibleError("j is singular")
    if not force and not d1(pi, j).is_zero():
        raise NotACocycleError("j is not a 1-cocycle")
    data = ExtensionData(k, h, pi, alpha_from_j(h, j))
    ext = build_extension(data, check=not force)
    return ext, j_from_cocycle(k.dim, j, sign)


@dataclass(frozen=True)
class T1Report:
    h_is_ideal: bool
    h_two_step_or_abelian: bool
    j: Matrix
    j_is_cocycle: bool
    alpha_matches: bool
    data: ExtensionData

    @property
    def ok(self) -> bool:
        return self.h_is_ideal and self.h_two_step_or_abelian and self.j_is_cocycle and self.alpha_matches


def t1_decompose(g: LieAlgebra, J, k_sub: Subspace) -> T1Report:
    """Split g = k + Jk along an ideal Jk and recover the cocycle j = J|_k."""
    J = _as_matrix(J)
    # echelon basis, so a coordinate ideal keeps its standard coordinates
    images = [J @ v for v in k_sub.basis]
    echelon = rref(Matrix(images))[0].rows if images else ()
    h_sub = Subspace(g.dim, [r for r in echelon if any(r)])
    if h_sub.dim != k_sub.dim or 2 * k_sub.dim != g.dim or (k_sub + h_sub).dim != g.dim:
        raise ValueError("g is not the direct sum of k and Jk")
    if not is_ideal(g, h_sub):
        raise ValueError("Jk is not an ideal")
    data = split_extension(g, h_sub, k_sub)
    coords = inverse(Matrix.from_columns(list(k_sub.basis) + list(h_sub.basis)))
    n = k_sub.dim
    j = Matrix.from_columns([(coords @ (J @ v))[n:] for v in k_sub.basis])
    return T1Report(
        h_is_ideal=True,
        h_two_step_or_abelian=_is_two_step_or_abelian(data.h),
        j=j,
        j_is_cocycle=d1(data.pi, j).is_zero(),
        alpha_matches=data.alpha == alpha_from_j(data.h, j),
        data=data,
    )


# -- complex ideals ----------------------------------------------------------

def _commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


@dataclass(frozen=True)
class ComplexIdealReport:
    j1_integrable: bool
    j2_integrable: bool
    cond_i: bool
    cond_ii: bool
    integrable: bool

    @property
    def agree(self) -> bool:
        predicted = self.j1_integrable and self.j2_integrable and self.cond_i and self.cond_ii
        return predicted == self.integrable


def _condition_i(pi: Representation, J1: Matrix, J2: Matrix, eps: int) -> bool:
    # eps [pi(J1 x), J2] y + [pi(x), J2] J2 y = 0 for basis x, y
    for a, x in enumerate(pi.source.basis()):
        m = _commutator(pi.of(J1 @ x), J2) * eps + _commutator(pi.matrices[a], J2) @ J2
        if not m.is_zero():
            return False
    return True


def _condition_ii(alpha: TwoCochain, J1: Matrix, J2: Matrix, eps: int) -> bool:
    # alpha(J1x, J1y) - alpha(x, y) - eps J2 (alpha(J1x, y) + alpha(x, J1y)) = 0
    basis = [unit_vector(J1.nrows, i) for i in range(J1.nrows)]
    for x, y in combinations(basis, 2):
        v = vec_sub(alpha(J1 @ x, J1 @ y), alpha(x, y))
        w = J2 @ vec_add(alpha(J1 @ x, y), alpha(x, J1 @ y))
        if any(vec_sub(v, tuple(eps * c for c in w))):
            return False
    return True


def complex_ideal_J(ext: ExtendedAlgebra, J1: Matrix, J2: Matrix,
                    eps: int) -> tuple[AlmostComplexStructure, ComplexIdealReport]:
    """J = (J1, eps J2) on k + h, with the componentwise integrability conditions."""
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    J1 = AlmostComplexStructure(J1).matrix
    J2 = AlmostComplexStructure(J2).matrix
    data = ext.data
    if data is None:
        raise ValueError("the extension must carry its (pi, alpha) data")
    J = AlmostComplexStructure(Matrix.block_diag(J1, J2 * eps))
    report = ComplexIdealReport(
        j1_integrable=is_integrable(data.k, J1),
        j2_integrable=is_integrable(data.h, J2),
        cond_i=_condition_i(data.pi, J1, J2, eps),
        cond_ii=_condition_ii(data.alpha, J1, J2, eps),
        integrable=is_integrable(ext.g, J),
    )
    return J, report


@dataclass(frozen=True)
class ExtendedIdealReport:
    squares_to_minus_one: bool
    j_beta: bool
    j_in_k: bool
    j_kh: bool
    j_in_h: bool
    jh_integrable: bool
    integrable: bool

    @property
    def agree(self) -> bool:
        conds = (self.j_beta, self.j_in_k, self.j_kh, self.j_in_h, self.jh_integrable)
        return all(conds) == self.integrable if self.squares_to_minus_one else True

    @property
    def failing(self) -> tuple[str, ...]:
        names = ("j_beta", "j_in_k", "j_kh", "j_in_h", "jh_integrable")
        return tuple(n for n in names if not getattr(self, n))


def extended_complex_ideal_J(ext: ExtendedAlgebra, J_h: Matrix, j: Matrix,
                             beta: Matrix) -> tuple[Matrix, ExtendedIdealReport]:
    """Candidate J~ with J~ = j + beta on k and J~ = J_h on h.

    Returns the raw matrix (it need not square to -1) and a report of the
    separate conditions for integrability alongside the full Nijenhuis check.
    """
    data = ext.data
    if data is None:
        raise ValueError("the extension must carry its (pi, alpha) data")
    n, m = data.k.dim, data.h.dim
    if j.shape != (n, n) or J_h.shape != (m, m) or beta.shape != (m, n):
        raise ValueError("shape mismatch for j, J_h or beta")
    Jt = Matrix.block([[j, Matrix.zeros(n, m)], [beta, J_h]])
    squares = Jt @ Jt == -Matrix.identity(n + m)
    k, h, pi, alpha = data.k, data.h, data.pi, data.alpha
    kb, hb = k.basis(), h.basis()

    j_beta = (j @ j == -Matrix.identity(n)) and (J_h @ J_h == -Matrix.identity(m)) \
        and J_h @ beta == -(beta @ j)

    j_in_k = all(
        not any(vec_sub(vec_sub(vec_sub(k.bracket(j @ x, j @ y), j @ k.bracket(j @ x, y)),
                                j @ k.bracket(x, j @ y)), k.bracket(x, y)))
        for x, y in combinations(kb, 2)
    )

    def kh_defect(x, y):
        bx = beta @ x
        lhs = vec_add(pi.act(j @ x, J_h @ y), h.bracket(bx, J_h @ y))
        rhs = pi.act(x, y)
        rhs = vec_add(rhs, J_h @ pi.act(j @ x, y))
        rhs = vec_add(rhs, J_h @ pi.act(x, J_h @ y))
        rhs = vec_add(rhs, J_h @ h.bracket(bx, y))
        return vec_sub(lhs, rhs)

    j_kh = all(not any(kh_defect(x, y)) for x in kb for y in hb)

    def h_component_defect(x, y):
        jx, jy, bx, by = j @ x, j @ y, beta @ x, beta @ y
        lhs = vec_sub(alpha(jx, jy), alpha(x, y))
        lhs = vec_sub(lhs, J_h @ alpha(x, jy))
        lhs = vec_sub(lhs, J_h @ alpha(jx, y))
        rhs = vec_add(beta @ k.bracket(jx, y), beta @ k.bracket(x, jy))
        rhs = vec_sub(rhs, h.bracket(bx, by))
        rhs = vec_add(rhs, pi.act(jy, bx))
        rhs = vec_sub(rhs, pi.act(jx, by))
        rhs = vec_sub(rhs, J_h @ pi.act(y, bx))
        rhs = vec_add(rhs, J_h @ pi.act(x, by))
        return vec_sub(lhs, rhs)

    j_in_h = all(not any(h_component_defect(x, y)) for x, y in combinations(kb, 2))

    report = ExtendedIdealReport(
        squares_to_minus_one=squares,
        j_beta=j_beta,
        j_in_k=j_in_k,
        j_kh=j_kh,
        j_in_h=j_in_h,
        jh_integrable=is_integrable(h, J_h),
        integrable=squares and is_integrable(ext.g, Jt),
    )
    return Jt, report


def is_holomorphic_action(pi: Representation, J2: Matrix) -> bool:
    return all(_commutator(a, J2).is_zero() for a in pi.matrices)


def is_compatible_bilinear(B, J1: Matrix) -> bool:
    """B(J1 x, J1 y) == B(x, y) on basis pairs.

    B is either a TwoCochain (vector valued) or a square Matrix (a scalar form).
    """
    if isinstance(B, Matrix):
        return J1.T @ B @ J1 == B
    basis = [unit_vector(J1.nrows, i) for i in range(J1.nrows)]
    return all(B(J1 @ x, J1 @ y) == B(x, y) for x, y in combinations(basis, 2))


# -- product structures ------------------------------------------------------

@dataclass(frozen=True)
class ProductReport:
    bracket_identity: bool
    eigenspaces_subalgebras: bool
    paracomplex: bool

    @property
    def integrable(self) -> bool:
        return self.bracket_identity

    @property
    def agree(self) -> bool:
        return self.bracket_identity == self.eigenspaces_subalgebras


def product_structure_checks(g: LieAlgebra, E) -> ProductReport:
    E = AlmostProductStructure(_as_matrix(E))
    M = E.matrix
    identity = True
    for x, y in combinations(g.basis(), 2):
        lhs = g.bracket(M @ x, M @ y)
        rhs = vec_add(vec_sub(M @ g.bracket(M @ x, y), g.bracket(x, y)), M @ g.bracket(x, M @ y))
        if lhs != rhs:
            identity = False
            break
    plus, minus = E.eigenspace(1), E.eigenspace(-1)
    return ProductReport(
        bracket_identity=identity,
        eigenspaces_subalgebras=is_subalgebra(g, plus) and is_subalgebra(g, minus),
        paracomplex=plus.dim == minus.dim,
    )


def is_complex_product_pair(J, E) -> bool:
    J, E = _as_matrix(J), _as_matrix(E)
    return J @ E == -(E @ J)

