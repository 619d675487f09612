import itertools
import random

import pytest
import sympy
from hypothesis import given

from lieext.bilinear import (
    Metric,
    SymplecticForm,
    anti_hermitian_from_B,
    gcs_check,
    gcs_from_cocycle,
    gcs_type,
    hermitian_from_B,
    hyperbolic_metric,
    inertia,
    is_anti_hermitian,
    is_closed,
    is_complex_symplectic,
    is_hermitian,
    is_pseudo_kahler,
    isotropic_ideal_report,
    jh_subalgebra_check,
    metric_from_omega,
    metric_pair,
    metric_sum,
    omega_from_metric,
    subspace_metric_type,
    subspace_symplectic_type,
    symplectic_orthogonal,
)
from lieext.cohomology import Representation, d1
from lieext.complex_structures import j_from_cocycle, p22_construct
from lieext.extension import cotangent_algebra
from lieext.lie import LieAlgebra, Subspace, catalog
from lieext.linalg import Matrix, determinant, inverse
from lieext.solver import CaseSpec, build_rep, solve_case

from support import (
    N4,
    lagrangian_witness_forms,
    nilpotent_coadjoint_witness,
    rand_inner_product,
    rand_invertible,
    rand_matrix,
    rngs,
    to_sympy,
)

I2, I3 = Matrix.identity(2), Matrix.identity(3)
J0 = Matrix([[0, -1], [1, 0]])
R2 = LieAlgebra(2)


def std_J(n: int) -> Matrix:
    return Matrix.block_diag(*([J0] * (n // 2)))


def k_and_h(n: int = 3) -> tuple[Subspace, Subspace]:
    return Subspace.coordinate(2 * n, range(n)), Subspace.coordinate(2 * n, range(n, 2 * n))


def sympy_inertia(m: Matrix) -> tuple[int, int, int]:
    """Signs of the eigenvalues of a symmetric matrix, counted with sympy."""
    pos = neg = zero = 0
    for ev, mult in to_sympy(m).eigenvals().items():
        sign = sympy.sign(sympy.nsimplify(ev).evalf(50))
        if sign > 0:
            pos += mult
        elif sign < 0:
            neg += mult
        else:
            zero += mult
    return pos, neg, zero


# -- forms and subspaces ---------------------------------------------------------

def test_metric_and_form_constructors_validate():
    with pytest.raises(ValueError):
        Metric(Matrix([[1, 1], [0, 1]]))
    with pytest.raises(ValueError):
        Metric(Matrix([[1, 1], [1, 1]]))
    with pytest.raises(ValueError):
        SymplecticForm(Matrix.identity(2))
    assert SymplecticForm(J0).dim == 2


def test_subspace_metric_types():
    hyp = hyperbolic_metric(3)
    k, h = k_and_h()
    assert subspace_metric_type(hyp, k) == "totally_isotropic"
    assert subspace_metric_type(hyp, h) == "totally_isotropic"
    assert subspace_metric_type(hyp, Subspace.whole(6)) == "non_degenerate"
    # a null line in a (1,1) plane equals its own orthogonal, the maximal isotropic case
    plane = Metric(Matrix.diag([1, -1]))
    assert subspace_metric_type(plane, Subspace(2, [(1, 1)])) == "totally_isotropic"
    assert subspace_metric_type(Metric(Matrix.diag([1, -1, 1, -1])), Subspace(4, [(1, 1, 0, 0)])) == "isotropic"
    assert subspace_metric_type(Metric(Matrix.diag([1, -1, 1])), Subspace(3, [(1, 1, 0), (0, 0, 1)])) == "other"


def test_symplectic_subspaces():
    w = std_J(4)
    assert subspace_symplectic_type(w, Subspace.coordinate(4, (0, 2))) == "lagrangian"
    assert subspace_symplectic_type(w, Subspace.coordinate(4, (0,))) == "isotropic"
    assert subspace_symplectic_type(w, Subspace.coordinate(4, (0, 1))) == "symplectic"
    V = Subspace.coordinate(4, (0, 2))
    assert symplectic_orthogonal(w, V) == V


# -- hermitian predicates ----------------------------------------------------------

def test_euclidean_metric_and_rotation():
    assert is_hermitian(Metric(I2), J0)
    assert not is_anti_hermitian(Metric(I2), J0)
    assert is_anti_hermitian(Metric(Matrix.diag([1, -1])), J0)


@given(rngs)
def test_hermitian_predicate_matches_pointwise_definition(rng):
    p = rand_invertible(rng, 4)
    J = p @ std_J(4) @ inverse(p)
    G = rand_inner_product(rng, 4)
    if rng.random() < 0.5:
        G = G + J.T @ G @ J
    x, y = (rand_matrix(rng, 4, 1, -2, 2) for _ in range(2))
    pointwise = ((J @ x).T @ G @ (J @ y)) == (x.T @ G @ y)
    if is_hermitian(G, J):
        assert pointwise
    basis_check = all(
        ((J @ Matrix([[1 if r == a else 0] for r in range(4)])).T @ G
         @ (J @ Matrix([[1 if r == b else 0] for r in range(4)])))[0, 0] == G[a, b]
        for a in range(4) for b in range(4)
    )
    assert basis_check == is_hermitian(G, J)


# -- totally real metric constructions --------------------------------------------

def test_identity_data_blocks():
    Z = Matrix.zeros(3, 3)
    assert metric_sum(I3, I3).gram == Matrix.identity(6)
    assert metric_pair(I3, I3).gram == Matrix.block([[Z, I3], [I3, Z]])
    assert anti_hermitian_from_B(I3, I3).gram == Matrix.block([[Z, -I3], [-I3, Z]])


def test_degenerate_inputs_are_rejected():
    with pytest.raises(ValueError):
        metric_sum(Matrix.diag([1, 1, 0]), I3)
    with pytest.raises(ValueError):
        metric_pair(Matrix([[1, 2, 0], [0, 1, 0], [0, 0, 1]]), I3)
    with pytest.raises(Exception):
        anti_hermitian_from_B(I3, Matrix.diag([1, 0, 1]))


@given(rngs)
def test_totally_real_metric_constructions(rng):
    B, j = rand_inner_product(rng, 3), rand_invertible(rng, 3)
    J = j_from_cocycle(3, j)
    k, h = k_and_h()
    s = metric_sum(B, j)
    assert is_hermitian(s, J)
    assert subspace_metric_type(s, k) == subspace_metric_type(s, h) == "non_degenerate"
    p = metric_pair(B, j)
    assert is_anti_hermitian(p, J)
    assert subspace_metric_type(p, k) == subspace_metric_type(p, h) == "totally_isotropic"
    assert inertia(p.gram) == (3, 3, 0)
    a = anti_hermitian_from_B(B, j)
    assert is_anti_hermitian(a, J)
    assert subspace_metric_type(a, k) == subspace_metric_type(a, h) == "totally_isotropic"
    assert determinant(a.gram) != 0
    herm = hermitian_from_B(B, j)
    assert is_hermitian(herm, J) and determinant(herm.gram) != 0


def test_inertia_matches_sympy_eigenvalues():
    for m in (Matrix([[0, 1], [1, 0]]), Matrix([[1, 2, 0], [2, 1, 0], [0, 0, -3]]),
              Matrix([[0, 0, 1], [0, 0, 0], [1, 0, 0]]), Matrix.diag([2, -1, 0, 5])):
        assert inertia(m) == sympy_inertia(m)


@given(rngs)
def test_inertia_is_a_congruence_invariant(rng):
    d = [rng.choice((-2, -1, 0, 1, 3)) for _ in range(4)]
    p = rand_invertible(rng, 4)
    m = p.T @ Matrix.diag(d) @ p
    expected = (sum(x > 0 for x in d), sum(x < 0 for x in d), d.count(0))
    assert inertia(m) == expected


def hermitian_isotropic_grams(j: Matrix) -> list[Matrix]:
    """Basis of symmetric G = [[0, C], [C^T, 0]] with J^T G J = G for J built from j."""
    J = j_from_cocycle(3, j).matrix
    Z = Matrix.zeros(3, 3)
    units = []
    for r, c in itertools.product(range(3), range(3)):
        C = Matrix([[1 if (a, b) == (r, c) else 0 for b in range(3)] for a in range(3)])
        units.append(Matrix.block([[Z, C], [C.T, Z]]))
    syms = sympy.symbols("c0:9")
    G = sum((s * to_sympy(u) for s, u in zip(syms, units)), sympy.zeros(6, 6))
    eqs = list(to_sympy(J).T * G * to_sympy(J) - G)
    A, _ = sympy.linear_eq_to_matrix(eqs, syms)
    return [sum((v[i] * to_sympy(units[i]) for i in range(9)), sympy.zeros(6, 6)) for v in A.nullspace()]


@pytest.mark.parametrize("seed", range(3))
def test_no_hermitian_metric_makes_both_halves_isotropic_in_odd_dimension(seed):
    # Hermitian and block off-diagonal forces C j skew; a 3x3 skew matrix is singular,
    # so every such Gram matrix is degenerate.  The generic determinant vanishes identically.
    j = rand_invertible(random.Random(seed), 3) if seed else Matrix.identity(3)
    basis = hermitian_isotropic_grams(j)
    assert basis, "the solution space should be non-trivial (C j skew has 3 parameters)"
    assert len(basis) == 3
    t = sympy.symbols("t0:%d" % len(basis))
    G = sum((ti * b for ti, b in zip(t, basis)), sympy.zeros(6, 6))
    assert sympy.expand(G.det()) == 0


def test_even_dimension_does_admit_such_a_metric():
    # contrast: on 2 + 2 the same conditions leave a non-degenerate solution
    j = Matrix.identity(2)
    J = j_from_cocycle(2, j).matrix
    Z = Matrix.zeros(2, 2)
    G = Matrix.block([[Z, J0], [J0.T, Z]])
    assert is_hermitian(G, J) and determinant(G) != 0
    k = Subspace.coordinate(4, (0, 1))
    assert subspace_metric_type(G, k) == "totally_isotropic"


# -- symplectic forms ----------------------------------------------------------------

def test_abelian_forms_are_closed():
    assert is_closed(LieAlgebra(4), std_J(4))


def test_omega_metric_round_trip():
    assert omega_from_metric(Metric(I2), J0) == J0
    assert metric_from_omega(omega_from_metric(Metric(I2), J0), J0) == I2


@given(rngs)
def test_omega_from_metric_compatibility_classes(rng):
    B, j = rand_inner_product(rng, 3), rand_invertible(rng, 3)
    J = j_from_cocycle(3, j).matrix
    for m, sign in ((hermitian_from_B(B, j), 1), (anti_hermitian_from_B(B, j), -1)):
        w = omega_from_metric(m, J)
        assert J.T @ w @ J == w * sign
        assert metric_from_omega(w, J) == m.gram
    w = omega_from_metric(hermitian_from_B(B, j), J)
    assert w.T == -w


def test_pseudo_kahler_and_complex_symplectic_on_R4():
    R4 = LieAlgebra(4)
    J = std_J(4)
    assert is_pseudo_kahler(R4, std_J(4), J)
    anti = Matrix([[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]])
    assert J.T @ anti @ J == -anti
    assert is_complex_symplectic(R4, anti, J)
    assert not is_pseudo_kahler(R4, anti, J)


@given(rngs)
def test_pseudo_kahler_flag_is_closedness_for_hermitian_omega(rng):
    spec = CaseSpec("r3_lambda", "H1", "i", eta=1, lam=0) if rng.random() < 0.5 \
        else CaseSpec("r3_lambda", "R3", "iii", eta=1, nu=0, lam=0)
    rho = build_rep(spec)
    ext, J = p22_construct(rho.source, rho.target, rho, solve_case(spec).witness)
    B = rand_inner_product(rng, 3)
    w = omega_from_metric(hermitian_from_B(B, solve_case(spec).witness), J)
    assert is_pseudo_kahler(ext.g, w, J) == is_closed(ext.g, w)


# -- isotropic ideals ---------------------------------------------------------------

def test_lagrangian_ideals_in_witnesses():
    found = lagrangian_witness_forms()
    assert len(found) == 3
    for ext, J, W in found:
        h = ext.h_subspace()
        assert subspace_symplectic_type(W, h) == "lagrangian"
        report = isotropic_ideal_report(ext.g, W, h)
        assert report.hypotheses and report.abelian and report.ok
        jh = jh_subalgebra_check(ext.g, W, J, h)
        assert jh.hypotheses and jh.jh_subalgebra and jh.ok


def test_non_isotropic_ideal_is_not_claimed_abelian():
    g = LieAlgebra(4, [(0, 1, 2, 1)])
    W = Matrix([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])
    assert is_closed(g, W)
    report = isotropic_ideal_report(g, W, Subspace.coordinate(4, (1, 2)))
    assert not report.isotropic and not report.hypotheses and report.ok


# -- the Omega example: sign analysis ------------------------------------------------

@given(rngs)
def test_omega_example_compatibility_sign(rng):
    # Omega((x1, t y1), (x2, t y2)) = B(x1, J1 y2) - B(x2, J1 y1) on k + h with J = (J1, s J2)
    # and t J1 = r J2 t.  It is J-invariant when s == r and J-anti-invariant when s == -r.
    p = rand_invertible(rng, 2)
    J1 = p @ J0 @ inverse(p)
    B = rand_inner_product(rng, 2)
    B = B + J1.T @ B @ J1
    t = rand_invertible(rng, 2)
    tinv = inverse(t)
    Z = Matrix.zeros(2, 2)
    BJ = B @ J1
    W = Matrix.block([[Z, BJ @ tinv], [-(tinv.T @ BJ.T), Z]])
    assert W.T == -W
    for r in (1, -1):
        J2 = t @ J1 @ tinv * r
        assert t @ J1 == J2 @ t * r
        for s in (1, -1):
            J = Matrix.block_diag(J1, J2 * s)
            assert J.T @ W @ J == W * (s * r)


# -- generalized complex structures -----------------------------------------------

def test_hyperbolic_metric():
    Z = Matrix.zeros(2, 2)
    assert hyperbolic_metric(2).gram == Matrix.block([[Z, I2], [I2, Z]])


def test_complex_type_gcs_on_R2():
    J2 = -J0.T
    J = Matrix.block_diag(J0, J2)
    report = gcs_check(R2, J)
    assert report.hermitian and report.integrable and report.ok
    assert gcs_type(J) == "complex_type"


def test_symplectic_type_gcs_on_R2():
    J = gcs_from_cocycle(R2, J0)
    assert J.matrix @ J.matrix == -Matrix.identity(4)
    assert gcs_check(R2, J).ok
    assert gcs_type(J) == "symplectic_type"


def test_type_arithmetic():
    # dim k = 4, n = 2: rank(j2) = 2 gives type 1
    J = Matrix.block_diag(J0, J0, J0, J0)
    assert gcs_type(J) == "complex_type"
    P = Matrix.from_columns([Matrix.identity(8).col(i) for i in (0, 4, 2, 3, 1, 5, 6, 7)])
    mixed = P @ J @ P.T
    assert mixed @ mixed == -Matrix.identity(8)
    assert gcs_type(mixed) == "type_1"


def test_odd_dimension_is_rejected():
    with pytest.raises(ValueError, match="even"):
        gcs_check(catalog("h1"), Matrix.identity(6))
    with pytest.raises(ValueError, match="even"):
        gcs_from_cocycle(catalog("h1"), Matrix.identity(3))


def test_non_cocycle_or_non_skew_is_rejected():
    with pytest.raises(ValueError, match="skew"):
        gcs_from_cocycle(R2, Matrix.identity(2))
    # on h1 x R, e1*^e2* + e3*^e4* is not closed: d(e3*^e4*) = -e1*^e2*^e4*
    bad = Matrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    assert not is_closed(N4, bad)
    with pytest.raises(ValueError, match="cocycle"):
        gcs_from_cocycle(N4, bad)


def test_gcs_on_a_four_dimensional_nilpotent_algebra():
    j = nilpotent_coadjoint_witness()
    assert d1(Representation.coadjoint(N4), j).is_zero()
    J = gcs_from_cocycle(N4, j)
    assert gcs_check(N4, J).ok
    assert gcs_type(J) == "symplectic_type"
    # reading j back from the symplectic-type structure gives a coadjoint cocycle
    back = J.matrix.submatrix(range(4, 8), range(4))
    assert back == j
    assert d1(Representation.coadjoint(N4), back).is_zero()
    g = cotangent_algebra(N4).g
    assert g.dim == 8
