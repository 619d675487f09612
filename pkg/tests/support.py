"""Random generators and independent oracles shared by the tests."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Sequence

import sympy
from hypothesis import strategies as st

from lieext.cohomology import Representation, z1_basis
from lieext.complex_structures import p22_construct
from lieext.extension import cotangent_algebra, tangent_algebra
from lieext.lie import CATALOG_NAMES, LieAlgebra, catalog
from lieext.linalg import Matrix, determinant, kernel_basis
from lieext.solver import K_FAMILIES, REP_TYPES, CaseSpec, build_rep, known_solution_witnesses

# Seeds drive the structured generators below.
rngs = st.integers(min_value=0, max_value=2**32 - 1).map(random.Random)

GRID = [Fraction(x) for x in ("-2", "-1", "-1/2", "0", "1/2", "1", "2")]


def rand_q(rng: random.Random, lo: int = -4, hi: int = 4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice((1, 1, 1, 2, 3)))


def rand_matrix(rng: random.Random, r: int, c: int, lo: int = -4, hi: int = 4) -> Matrix:
    return Matrix([[rand_q(rng, lo, hi) for _ in range(c)] for _ in range(r)])


def rand_invertible(rng: random.Random, n: int) -> Matrix:
    while True:
        m = rand_matrix(rng, n, n)
        if determinant(m) != 0:
            return m


def rand_inner_product(rng: random.Random, n: int) -> Matrix:
    """Positive definite symmetric matrix A^T A + I."""
    a = rand_matrix(rng, n, n, -3, 3)
    return a.T @ a + Matrix.identity(n)


def rand_catalog(rng: random.Random) -> LieAlgebra:
    name = rng.choice(CATALOG_NAMES)
    lam = Fraction(rng.randint(-4, 4), 4) if name == "r3_lambda" else None
    delta = rand_q(rng) if name == "r3_delta" else None
    return catalog(name, lam=lam, delta=delta)


def rand_case(rng: random.Random, h: str | None = None) -> CaseSpec:
    h = h or rng.choice(("R3", "H1"))
    k = rng.choice(K_FAMILIES)
    return CaseSpec(
        k, h, rng.choice(REP_TYPES[h]),
        eta=rng.choice(GRID), nu=rng.choice(GRID), mu=rng.choice(GRID),
        eps1=rng.choice((0, 1, rand_q(rng))), eps2=rng.choice((0, 1, rand_q(rng))),
        lam=Fraction(rng.randint(-4, 4), 4) if k == "r3_lambda" else None,
        delta=rand_q(rng) if k == "r3_delta" else None,
    )


def rand_representation(rng: random.Random) -> Representation:
    """A genuine representation drawn from several constructions."""
    kind = rng.randrange(5)
    if kind == 0:
        return Representation.adjoint(rand_catalog(rng))
    if kind == 1:
        return Representation.coadjoint(rand_catalog(rng))
    if kind == 2:
        return Representation.trivial(rand_catalog(rng), LieAlgebra(rng.randint(1, 3)))
    if kind == 3:
        return build_rep(rand_case(rng))
    ext = tangent_algebra(rand_catalog(rng)) if rng.random() < 0.5 else cotangent_algebra(rand_catalog(rng))
    return Representation.adjoint(ext.g)


# -- oracles -----------------------------------------------------------------

def leibniz_det(m: Matrix) -> Fraction:
    n = m.nrows
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Fraction(sign)
        for i in range(n):
            term *= m[i, perm[i]]
        total += term
    return total


def to_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m.rows])


def structure_bracket(g: LieAlgebra, x, y) -> list[Fraction]:
    """[x, y] summed straight from the structure constants."""
    out = [Fraction(0)] * g.dim
    for i, j, k, c in g.structure_constants:
        out[k] += c * (x[i] * y[j] - x[j] * y[i])
    return out


def integrable_via_eigenspace(g: LieAlgebra, J: Matrix) -> bool:
    """g^{1,0} = {x - iJx} is closed under the bracket.

    Splitting [x - iJx, y - iJy] into real and imaginary parts, this says
    J([x,y] - [Jx,Jy]) = [Jx,y] + [x,Jy] for all basis x, y.
    """
    basis = g.basis()
    for x in basis:
        for y in basis:
            jx, jy = J @ x, J @ y
            real = [a - b for a, b in zip(structure_bracket(g, x, y), structure_bracket(g, jx, jy))]
            imag = [a + b for a, b in zip(structure_bracket(g, jx, y), structure_bracket(g, x, jy))]
            if list(J @ real) != imag:
                return False
    return True


def symbolic_cocycle_system(spec: CaseSpec) -> tuple[sympy.Matrix, list]:
    """Cocycle equations for j with symbolic entries, derived with sympy."""
    k = spec.k_algebra()
    rho = build_rep(spec)
    syms = sympy.symbols("j41 j42 j43 j51 j52 j53 j61 j62 j63")
    J = sympy.Matrix(3, 3, syms)
    P = [to_sympy(a) for a in rho.matrices]
    E = [sympy.Matrix([1 if i == r else 0 for r in range(3)]) for i in range(3)]
    eqs = []
    for a in range(3):
        for b in range(a + 1, 3):
            br = sympy.Matrix([sympy.Rational(c.numerator, c.denominator) for c in k.basis_bracket(a, b)])
            eqs.extend(list(P[a] * J * E[b] - P[b] * J * E[a] - J * br))
    A, _ = sympy.linear_eq_to_matrix(eqs, syms)
    return A, list(syms)


def closed_forms_vanishing_on(g: LieAlgebra, h_idx: Sequence[int]) -> list[Matrix]:
    """Basis of closed skew forms W on g with W = 0 on the coordinate span h_idx."""
    n = g.dim
    units = []
    for a, b in combinations(range(n), 2):
        if a in h_idx and b in h_idx:
            continue
        units.append(Matrix([[1 if (r, c) == (a, b) else -1 if (r, c) == (b, a) else 0
                              for c in range(n)] for r in range(n)]))
    basis = g.basis()
    rows = []
    for x, y, z in combinations(basis, 3):
        row = []
        for U in units:
            def w(u, v):
                return sum((p * q for p, q in zip(u, U @ v)), Fraction(0))
            row.append(w(g.bracket(x, y), z) + w(g.bracket(y, z), x) + w(g.bracket(z, x), y))
        rows.append(row)
    ker = kernel_basis(Matrix(rows)) if rows else [tuple(int(i == r) for i in range(len(units)))
                                                   for r in range(len(units))]
    return [sum((U * v[i] for i, U in enumerate(units)), Matrix.zeros(n, n)) for v in ker]


def nondegenerate_combination(forms: list[Matrix], rng: random.Random, tries: int = 50) -> Matrix | None:
    if not forms:
        return None
    n = forms[0].nrows
    for _ in range(tries):
        W = sum((F * rng.randint(-3, 3) for F in forms), Matrix.zeros(n, n))
        if determinant(W) != 0:
            return W
    return None


# -- shared corpora -----------------------------------------------------------

# h1 x R: [e1, e2] = e3
N4 = LieAlgebra(4, [(0, 1, 2, 1)])


def lagrangian_witness_forms():
    """p22 witnesses on k = h1 with a closed form for which the h-range is Lagrangian."""
    out = []
    rng = random.Random(0)
    for fam in known_solution_witnesses():
        if fam.complex or fam.k != "h1":
            continue
        spec, j, _ = fam.instantiate(fam.default_values())
        rho = build_rep(spec)
        ext, J = p22_construct(rho.source, rho.target, rho, j)
        W = nondegenerate_combination(closed_forms_vanishing_on(ext.g, (3, 4, 5)), rng)
        if W is not None:
            out.append((ext, J, W))
    return out


def nilpotent_coadjoint_witness() -> Matrix:
    """An invertible skew element of Z^1(N4, ad*), found by a small search of z1_basis."""
    rho = Representation.coadjoint(N4)
    basis = z1_basis(rho)
    for coeffs in product((0, 1, -1), repeat=len(basis)):
        j = Matrix.zeros(4, 4)
        for c, b in zip(coeffs, basis):
            if c:
                j = j + b * c
        if j.T == -j and determinant(j) != 0:
            return j
    raise AssertionError("no invertible skew cocycle found")
