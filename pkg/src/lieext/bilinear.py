"""Metrics, 2-forms and generalized complex structures, all as Gram matrices.

A bilinear form b is stored as its Gram matrix G with b(x, y) = x^T G y.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .cohomology import Representation, d1
from .complex_structures import AlmostComplexStructure, is_integrable, j_from_cocycle, subspace_type
from .extension import cotangent_algebra
from .lie import LieAlgebra, Subspace, is_abelian_subspace, is_ideal, is_subalgebra
from .linalg import Matrix, determinant, inverse, kernel_basis, rank

__all__ = [
    "Metric",
    "SymplecticForm",
    "inertia",
    "subspace_metric_type",
    "is_hermitian",
    "is_anti_hermitian",
    "metric_sum",
    "metric_pair",
    "hermitian_from_B",
    "anti_hermitian_from_B",
    "is_closed",
    "symplectic_orthogonal",
    "subspace_symplectic_type",
    "omega_from_metric",
    "metric_from_omega",
    "is_pseudo_kahler",
    "is_complex_symplectic",
    "IsotropicIdealReport",
    "isotropic_ideal_report",
    "JhReport",
    "jh_subalgebra_check",
    "hyperbolic_metric",
    "GcsReport",
    "gcs_check",
    "gcs_type",
    "gcs_from_cocycle",
]


class Metric:
    """Symmetric non-degenerate bilinear form."""

    __slots__ = ("gram",)

    def __init__(self, gram: Matrix):
        if not gram.is_square() or gram.T != gram:
            raise ValueError("a metric needs a symmetric Gram matrix")
        if determinant(gram) == 0:
            raise ValueError("metric is degenerate")
        self.gram = gram

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def __call__(self, x, y):
        return sum((a * b for a, b in zip(x, self.gram @ y)), 0)

    def signature(self) -> tuple[int, int]:
        p, n, _ = inertia(self.gram)
        return p, n


class SymplecticForm:
    """Skew-symmetric non-degenerate bilinear form; closedness needs an algebra."""

    __slots__ = ("gram",)

    def __init__(self, gram: Matrix):
        if not gram.is_square() or gram.T != -gram:
            raise ValueError("a symplectic form needs a skew-symmetric Gram matrix")
        if determinant(gram) == 0:
            raise ValueError("2-form is degenerate")
        self.gram = gram

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def __call__(self, x, y):
        return sum((a * b for a, b in zip(x, self.gram @ y)), 0)

    def closed(self, g: LieAlgebra) -> bool:
        return is_closed(g, self)


def _gram(form) -> Matrix:
    return form.gram if isinstance(form, (Metric, SymplecticForm)) else form


def _jmat(J) -> Matrix:
    return J.matrix if isinstance(J, AlmostComplexStructure) else J


def inertia(gram: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric matrix by symmetric pivoting."""
    a = [list(r) for r in gram.rows]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        p = next((i for i in active if a[i][i]), None)
        if p is None:
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # replace e_i by e_i + e_j, which has non-zero square 2 a_ij
            for r in range(n):
                a[r][i] += a[r][j]
            for c in range(n):
                a[i][c] += a[j][c]
            p = i
        d = a[p][p]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(p)
        for i in active:
            f = a[i][p] / d
            if f:
                for c in range(n):
                    a[i][c] -= f * a[p][c]
        for i in active:
            a[p][i] = a[i][p] = 0
    return pos, neg, n - pos - neg


def subspace_metric_type(m, V: Subspace) -> str:
    G = _gram(m)
    if V.dim == 0:
        return "isotropic"
    B = V.matrix()
    restricted = B.T @ G @ B
    if restricted.is_zero():
        return "totally_isotropic" if 2 * V.dim == G.nrows else "isotropic"
    if determinant(restricted) != 0:
        return "non_degenerate"
    return "other"


def is_hermitian(m, J) -> bool:
    G, J = _gram(m), _jmat(J)
    return J.T @ G @ J == G


def is_anti_hermitian(m, J) -> bool:
    G, J = _gram(m), _jmat(J)
    return J.T @ G @ J == -G


def _check_b_j(B: Matrix, j: Matrix) -> Matrix:
    if B.T != B or determinant(B) == 0:
        raise ValueError("B must be symmetric and non-degenerate")
    return inverse(j)


def metric_sum(B: Matrix, j: Matrix) -> Metric:
    """<(x1, j y1), (x2, j y2)> = B(x1, x2) + B(y1, y2)."""
    jinv = _check_b_j(B, j)
    return Metric(Matrix.block_diag(B, jinv.T @ B @ jinv))


def metric_pair(B: Matrix, j: Matrix) -> Metric:
    """<(x1, j y1), (x2, j y2)> = B(x1, y2) + B(x2, y1)."""
    jinv = _check_b_j(B, j)
    n = B.nrows
    zero = Matrix.zeros(n, n)
    return Metric(Matrix.block([[zero, B @ jinv], [jinv.T @ B, zero]]))


def anti_hermitian_from_B(B: Matrix, j: Matrix) -> Metric:
    """<(x1, y1), (x2, y2)> = -B(x1, j^{-1} y2) - B(x2, j^{-1} y1).

    k and h are totally isotropic, and the totally real J built from j
    satisfies <Jx, Jy> = -<x, y>.
    """
    jinv = _check_b_j(B, j)
    n = B.nrows
    zero = Matrix.zeros(n, n)
    return Metric(Matrix.block([[zero, -(B @ jinv)], [-(jinv.T @ B), zero]]))


def hermitian_from_B(B: Matrix, j: Matrix) -> Metric:
    """<(x1, y1), (x2, y2)> = B(x1, x2) + B(j^{-1} y1, j^{-1} y2).

    Hermitian for the totally real J built from j, with k orthogonal to h.
    A Hermitian metric making both k and h isotropic does not exist when
    dim k is odd, since it would need a non-degenerate skew form on k.
    """
    return metric_sum(B, j)


def is_closed(g: LieAlgebra, omega) -> bool:
    """w([x,y],z) + w([y,z],x) + w([z,x],y) == 0 on basis triples."""
    W = _gram(omega)
    basis = g.basis()

    def w(x, y):
        return sum((a * b for a, b in zip(x, W @ y)), 0)

    for x, y, z in combinations(basis, 3):
        if w(g.bracket(x, y), z) + w(g.bracket(y, z), x) + w(g.bracket(z, x), y):
            return False
    return True


def symplectic_orthogonal(omega, V: Subspace) -> Subspace:
    W = _gram(omega)
    if V.dim == 0:
        return Subspace.whole(W.nrows)
    return Subspace(W.nrows, kernel_basis(V.matrix().T @ W))


def subspace_symplectic_type(omega, V: Subspace) -> str:
    W = _gram(omega)
    if V.dim == 0:
        return "isotropic"
    B = V.matrix()
    restricted = B.T @ W @ B
    if restricted.is_zero():
        return "lagrangian" if 2 * V.dim == W.nrows else "isotropic"
    if determinant(restricted) != 0:
        return "symplectic"
    return "other"


def omega_from_metric(m, J) -> Matrix:
    """Gram matrix of w(x, y) = <x, Jy>.  Skew exactly when the metric is Hermitian."""
    return _gram(m) @ _jmat(J)


def metric_from_omega(omega, J) -> Matrix:
    """Inverse of omega_from_metric: <x, y> = w(x, -Jy)."""
    return -(_gram(omega) @ _jmat(J))


def _nondegenerate_closed_skew(g: LieAlgebra, W: Matrix) -> bool:
    return W.T == -W and determinant(W) != 0 and is_closed(g, W)


def is_pseudo_kahler(g: LieAlgebra, omega, J) -> bool:
    W, J = _gram(omega), _jmat(J)
    return _nondegenerate_closed_skew(g, W) and is_integrable(g, J) and J.T @ W @ J == W


def is_complex_symplectic(g: LieAlgebra, omega, J) -> bool:
    W, J = _gram(omega), _jmat(J)
    return _nondegenerate_closed_skew(g, W) and is_integrable(g, J) and J.T @ W @ J == -W


# -- isotropic ideals --------------------------------------------------------

@dataclass(frozen=True)
class IsotropicIdealReport:
    symplectic: bool
    ideal: bool
    isotropic: bool
    abelian: bool

    @property
    def hypotheses(self) -> bool:
        return self.symplectic and self.ideal and self.isotropic

    @property
    def ok(self) -> bool:
        """The conclusion holds whenever the hypotheses do."""
        return not self.hypotheses or self.abelian


def isotropic_ideal_report(g: LieAlgebra, omega, h_sub: Subspace) -> IsotropicIdealReport:
    W = _gram(omega)
    return IsotropicIdealReport(
        symplectic=_nondegenerate_closed_skew(g, W),
        ideal=is_ideal(g, h_sub),
        isotropic=subspace_symplectic_type(W, h_sub) in ("isotropic", "lagrangian"),
        abelian=is_abelian_subspace(g, h_sub),
    )


@dataclass(frozen=True)
class JhReport:
    base: IsotropicIdealReport
    integrable: bool
    jh_subalgebra: bool
    totally_real: bool
    semidirect: bool

    @property
    def hypotheses(self) -> bool:
        return self.base.hypotheses and self.integrable

    @property
    def ok(self) -> bool:
        if not self.hypotheses:
            return True
        if not (self.base.abelian and self.jh_subalgebra):
            return False
        return self.semidirect or not self.totally_real


def jh_subalgebra_check(g: LieAlgebra, omega, J, h_sub: Subspace) -> JhReport:
    J = _jmat(J)
    jh = Subspace(g.dim, [J @ v for v in h_sub.basis])
    totally_real = subspace_type(J, h_sub) == "totally_real"
    semidirect = (
        is_subalgebra(g, jh) and is_ideal(g, h_sub)
        and jh.dim + h_sub.dim == g.dim and (jh + h_sub).dim == g.dim
    )
    return JhReport(
        base=isotropic_ideal_report(g, omega, h_sub),
        integrable=is_integrable(g, J),
        jh_subalgebra=is_subalgebra(g, jh),
        totally_real=totally_real,
        semidirect=semidirect,
    )


# -- generalized complex structures on T*k -----------------------------------

def hyperbolic_metric(n: int) -> Metric:
    """Neutral metric (x + f, y + g) -> f(y) + g(x) on R^n + (R^n)^*."""
    zero, one = Matrix.zeros(n, n), Matrix.identity(n)
    return Metric(Matrix.block([[zero, one], [one, zero]]))


@dataclass(frozen=True)
class GcsReport:
    hermitian: bool
    integrable: bool

    @property
    def ok(self) -> bool:
        return self.hermitian and self.integrable


def _even(k: LieAlgebra) -> int:
    if k.dim % 2:
        raise ValueError("the dimension of k must be even")
    return k.dim


def gcs_check(k: LieAlgebra, J) -> GcsReport:
    n = _even(k)
    J = _jmat(J)
    return GcsReport(
        hermitian=is_hermitian(hyperbolic_metric(n), J),
        integrable=is_integrable(cotangent_algebra(k).g, J),
    )


def gcs_type(J) -> str:
    """'complex_type', 'symplectic_type', or 'type_<k>' with rank(j2) = 2(n - k).

    J = [[j1, j2], [j3, j4]] on k + k^* with n = dim k / 2 in the usual
    convention; dim k = 2n.
    """
    J = _jmat(J)
    dim_k = J.nrows // 2
    if dim_k % 2:
        raise ValueError("the dimension of k must be even")
    n = dim_k // 2
    j1 = J.submatrix(range(dim_k), range(dim_k))
    j2 = J.submatrix(range(dim_k), range(dim_k, 2 * dim_k))
    j3 = J.submatrix(range(dim_k, 2 * dim_k), range(dim_k))
    j4 = J.submatrix(range(dim_k, 2 * dim_k), range(dim_k, 2 * dim_k))
    if j2.is_zero() and j3.is_zero():
        return "complex_type"
    if j1.is_zero() and j4.is_zero():
        return "symplectic_type"
    r = rank(j2)
    if r % 2:
        raise ValueError("rank of the off-diagonal block is odd")
    return f"type_{n - r // 2}"


def gcs_from_cocycle(k: LieAlgebra, j: Matrix) -> AlmostComplexStructure:
    """J(x, f) = (-j^{-1} f, j x) on T*k from a coadjoint 1-cocycle j.

    Compatibility with the neutral metric needs j skew, i.e. j is a
    symplectic form on k; the cocycle condition is then its closedness.
    """
    _even(k)
    rho = Representation.coadjoint(k)
    if not d1(rho, j).is_zero():
        raise ValueError("j is not a 1-cocycle of the coadjoint representation")
    if j.T != -j:
        raise ValueError("j must be skew-symmetric to be compatible with the neutral metric")
    return j_from_cocycle(k.dim, j)
