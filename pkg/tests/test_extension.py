import pytest
import sympy
from hypothesis import given

from lieext.cohomology import Representation, TwoCochain
from lieext.complex_structures import alpha_from_j
from lieext.extension import (
    ExtensionData,
    InvalidExtensionError,
    build_extension,
    cotangent_algebra,
    semidirect,
    split_extension,
    tangent_algebra,
    validate_extension,
)
from lieext.lie import LieAlgebra, Subspace, catalog, is_ideal, is_subalgebra, jacobi_defect
from lieext.linalg import Matrix, unit_vector
from lieext.solver import CaseSpec, build_rep, solve_case

from support import rand_case, rand_matrix, rand_q, rngs, to_sympy

R3 = catalog("R3")
h1 = catalog("h1")


def zero_alpha(k: LieAlgebra, h: LieAlgebra) -> TwoCochain:
    return TwoCochain.zero(k.dim, h.dim)


def test_semidirect_data_validates():
    rho = build_rep(CaseSpec("r3", "H1", "ii", eta=2, nu=1, mu=-1))
    assert validate_extension(ExtensionData(rho.source, rho.target, rho, zero_alpha(rho.source, rho.target)))


def test_tangent_data_validates():
    k = catalog("so3")
    rho = Representation.adjoint(k)
    assert validate_extension(ExtensionData(k, k, rho, zero_alpha(k, k)))


def test_non_central_alpha_is_reported():
    rho = Representation.trivial(R3, h1)
    alpha = TwoCochain(3, 3, {(0, 1): (1, 0, 0)})
    report = validate_extension(ExtensionData(R3, h1, rho, alpha))
    assert not report.ok
    assert "the image of alpha is not central in h" in report.failures
    with pytest.raises(InvalidExtensionError, match="central"):
        build_extension(ExtensionData(R3, h1, rho, alpha))


def test_each_failure_is_named():
    k = catalog("h1")
    e12 = Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    bad_pi = Representation(k, R3, (e12, e12.T, Matrix.zeros(3, 3)))
    report = validate_extension(ExtensionData(k, R3, bad_pi, zero_alpha(k, R3)))
    assert report.failures == ("pi is not a homomorphism",)
    not_derivation = Representation(R3, h1, (Matrix.identity(3), Matrix.zeros(3, 3), Matrix.zeros(3, 3)))
    report = validate_extension(ExtensionData(R3, h1, not_derivation, zero_alpha(R3, h1)))
    assert report.failures == ("pi does not act by derivations of h",)
    # on r3 with trivial coefficients d alpha(e1,e2,e3) = 2 alpha(e2,e3)
    k = catalog("r3")
    triv = Representation.trivial(k, R3)
    report = validate_extension(ExtensionData(k, R3, triv, TwoCochain(3, 3, {(1, 2): (1, 0, 0)})))
    assert report.failures == ("alpha is not a 2-cocycle",)


def test_abelian_pieces_give_abelian_algebra():
    ext = build_extension(ExtensionData(R3, R3, Representation.trivial(R3, R3), zero_alpha(R3, R3)))
    assert ext.g == LieAlgebra(6)


def test_central_alpha_on_abelian_k_is_two_step_nilpotent():
    alpha = TwoCochain(3, 3, {(0, 1): (1, 0, 0)})
    ext = build_extension(ExtensionData(R3, R3, Representation.trivial(R3, R3), alpha))
    g = ext.g
    assert g.bracket(unit_vector(6, 0), unit_vector(6, 1)) == unit_vector(6, 3)
    for a in g.basis():
        for b in g.basis():
            for c in g.basis():
                assert not any(g.bracket(g.bracket(a, b), c))
    assert not is_subalgebra(g, ext.k_subspace())


def test_solvable_extension_example():
    spec = CaseSpec("r3_lambda", "R3", "iii", eta=1, nu=0, lam=0)
    rho = build_rep(spec)
    ext = build_extension(ExtensionData(rho.source, R3, rho, zero_alpha(rho.source, R3)))
    assert ext.g.dim == 6
    assert jacobi_defect(ext.g) == []
    assert is_ideal(ext.g, ext.h_subspace())


def test_tangent_and_cotangent_examples():
    assert tangent_algebra(R3).g == LieAlgebra(6)
    assert jacobi_defect(tangent_algebra(h1).g) == []
    cot = cotangent_algebra(h1)
    oracle = [-to_sympy(h1.ad_basis(i)).T for i in range(3)]
    for i, a in enumerate(cot.data.pi.matrices):
        assert to_sympy(a) == oracle[i]
    # ad(e1) sends e2 to e3, so the coadjoint action sends e3* to -e2*
    assert cot.g.bracket(unit_vector(6, 0), unit_vector(6, 5)) == tuple(-x for x in unit_vector(6, 4))


def test_split_round_trip_on_built_extension():
    alpha = TwoCochain(3, 3, {(0, 1): (0, 0, 2)})
    k = catalog("R3")
    rho = Representation(k, h1, (Matrix.zeros(3, 3),) * 3)
    data = ExtensionData(k, h1, rho, alpha)
    ext = build_extension(data)
    back = split_extension(ext.g, ext.h_subspace(), ext.k_subspace())
    assert back == data


def test_split_of_direct_sum():
    g = build_extension(ExtensionData(h1, R3, Representation.trivial(h1, R3), zero_alpha(h1, R3))).g
    back = split_extension(g, Subspace.coordinate(6, (3, 4, 5)), Subspace.coordinate(6, (0, 1, 2)))
    assert back.k == h1
    assert back.alpha.is_zero()
    assert all(a == Matrix.zeros(3, 3) for a in back.pi.matrices)


def test_split_recovers_alpha_from_a_solver_witness():
    spec = CaseSpec("r3_lambda", "H1", "i", eta=1, lam=0)
    result = solve_case(spec)
    rho = build_rep(spec)
    alpha = alpha_from_j(h1, result.witness)
    assert not alpha.is_zero()
    ext = build_extension(ExtensionData(rho.source, h1, rho, alpha))
    assert split_extension(ext.g, ext.h_subspace(), ext.k_subspace()).alpha == alpha


def test_split_errors():
    g = tangent_algebra(h1).g
    with pytest.raises(ValueError, match="ideal"):
        split_extension(g, Subspace.coordinate(6, (0, 1, 2)), Subspace.coordinate(6, (3, 4, 5)))
    with pytest.raises(ValueError, match="span"):
        split_extension(g, Subspace.coordinate(6, (3, 4, 5)), Subspace.coordinate(6, (2, 3, 4)))
    with pytest.raises(ValueError, match="complementary"):
        split_extension(g, Subspace.coordinate(6, (3, 4, 5)), Subspace.coordinate(6, (0, 1)))


def test_product_structure():
    ext = tangent_algebra(R3)
    assert ext.product_structure() == Matrix.diag([1, 1, 1, -1, -1, -1])


def random_central_alpha(rng, h: LieAlgebra) -> TwoCochain:
    centre = [1, 1, 1] if h == R3 else [0, 0, 1]
    vals = {}
    for p in ((0, 1), (0, 2), (1, 2)):
        vals[p] = tuple(rand_q(rng, -2, 2) * c for c in centre)
    return TwoCochain(3, 3, vals)


@given(rngs)
def test_jacobi_holds_exactly_when_the_data_validates(rng):
    spec = rand_case(rng)
    rho = build_rep(spec)
    k, h = rho.source, rho.target
    choice = rng.randrange(3)
    if choice == 0:
        alpha = zero_alpha(k, h)
    elif choice == 1:
        alpha = alpha_from_j(h, rand_matrix(rng, 3, 3, -2, 2))
        if h == h1:
            alpha = random_central_alpha(rng, h)
    else:
        alpha = random_central_alpha(rng, h)
    mats = list(rho.matrices)
    if rng.random() < 0.5:
        i = rng.randrange(3)
        mats[i] = mats[i] + rand_matrix(rng, 3, 3, -1, 1)
    data = ExtensionData(k, h, Representation(k, h, tuple(mats)), alpha)
    valid = validate_extension(data).ok
    g = build_extension(data, check=False).g
    assert valid == (jacobi_defect(g) == [])


@given(rngs)
def test_round_trip_and_ideal_invariants(rng):
    spec = rand_case(rng)
    rho = build_rep(spec)
    k, h = rho.source, rho.target
    alpha = random_central_alpha(rng, h) if rng.random() < 0.5 else zero_alpha(k, h)
    data = ExtensionData(k, h, rho, alpha)
    if not validate_extension(data):
        return
    ext = build_extension(data)
    assert is_ideal(ext.g, ext.h_subspace())
    assert is_subalgebra(ext.g, ext.k_subspace()) == alpha.is_zero()
    sub = [[ext.g.bracket(ext.embed_h(x), ext.embed_h(y))[3:] for y in h.basis()] for x in h.basis()]
    assert sub == [[h.bracket(x, y) for y in h.basis()] for x in h.basis()]
    assert split_extension(ext.g, ext.h_subspace(), ext.k_subspace()) == data


def test_semidirect_matches_sympy_bracket():
    rho = build_rep(CaseSpec("r3_delta", "R3", "ii", eta=1, nu=2, mu=3, delta=1))
    g = semidirect(rho.source, R3, rho).g
    # [e1, e5] is pi(e1) e2 in h coordinates
    col = to_sympy(rho.matrices[0]) * sympy.Matrix([0, 1, 0])
    assert list(g.bracket(unit_vector(6, 0), unit_vector(6, 4))[3:]) == list(col)
