"""Search for invertible 1-cocycles j: k -> h with dim k = dim h = 3.

Given k and a rank-one representation pi(x) = phi(x) t of k on h (h = R^3 or
the Heisenberg algebra h1), the cocycle equations for j are linear in its nine
entries.  An invertible solution yields a totally real complex structure on
the 6-dimensional extension g = k + h.

The nine unknowns are ordered j41, j42, j43, j51, ..., j63: row r of j is the
(r+4)-th coordinate of g (an h coordinate), column c is the k basis vector
e_{c+1}.  A kernel vector v therefore reshapes row-major into j.
"""

from __future__ import annotations

import json
import random
import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from importlib import resources
from typing import Mapping, Sequence

from .cohomology import Representation, d1, is_two_cocycle
from .expr import condition_holds, evaluate, names_in
from .complex_structures import alpha_from_j, is_integrable, p22_construct, subspace_type
from .lie import LieAlgebra, catalog, center, derived_subalgebra
from .linalg import Matrix, determinant, format_rational, integer_scaled, kernel_basis, to_rational, unit_vector

__all__ = [
    "K_FAMILIES",
    "H_TARGETS",
    "REP_TYPES",
    "CaseSpec",
    "SolveResult",
    "WitnessSearch",
    "rep_matrix",
    "build_rep",
    "rank_one_rep_exists",
    "cocycle_system",
    "assemble_cocycle_system",
    "reshape",
    "flatten",
    "search_witness",
    "find_invertible_witness",
    "verify_witness",
    "solve_case",
    "InadmissibleError",
    "WitnessFamily",
    "FamilyReport",
    "known_solution_witnesses",
    "check_family",
    "DEFAULT_GRID",
    "TableLine",
    "TableRow",
    "LineReport",
    "TableReport",
    "expected_table",
    "line_points",
    "reproduce_table",
]

K_FAMILIES = ("h1", "r3", "r3_lambda", "r3_delta")
H_TARGETS = ("R3", "H1")
REP_TYPES = {"R3": ("i", "ii", "iii", "iv"), "H1": ("i", "ii")}
_PARAMS_BY_TYPE = {
    ("R3", "i"): ("eta", "nu", "mu"),
    ("R3", "ii"): ("eta", "nu", "mu"),
    ("R3", "iii"): ("eta", "nu"),
    ("R3", "iv"): ("eta",),
    ("H1", "i"): ("eta", "nu", "mu"),
    ("H1", "ii"): ("eta", "nu", "mu"),
}
DEFAULT_DRAWS = 10_000


def _q(x) -> Fraction:
    return to_rational(x)


@dataclass(frozen=True)
class CaseSpec:
    """One point of the search: k, h, the type of t and all parameters.

    pi(e1) = t, pi(e2) = eps1 t, pi(e3) = eps2 t.  Any eps attached to a basis
    vector that lies in the derived algebra of k is set to zero, since a
    representation with one-dimensional image vanishes there.
    """

    k_family: str
    h_target: str
    rep_type: str
    eta: Fraction = Fraction(0)
    nu: Fraction = Fraction(0)
    mu: Fraction = Fraction(0)
    eps1: Fraction = Fraction(0)
    eps2: Fraction = Fraction(0)
    lam: Fraction | None = None
    delta: Fraction | None = None

    def __post_init__(self):
        if self.k_family not in K_FAMILIES:
            raise ValueError(f"k must be one of {', '.join(K_FAMILIES)}")
        if self.h_target not in H_TARGETS:
            raise ValueError(f"h must be one of {', '.join(H_TARGETS)}")
        if self.rep_type not in REP_TYPES[self.h_target]:
            raise ValueError(f"type {self.rep_type!r} is not available for h = {self.h_target}")
        for name in ("eta", "nu", "mu", "eps1", "eps2"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        for name in ("lam", "delta"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, _q(v))
        if self.k_family == "r3_lambda":
            if self.lam is None:
                raise ValueError("r3_lambda needs lambda")
            if not -1 <= self.lam <= 1:
                raise ValueError("r3_lambda requires -1 <= lambda <= 1")
        elif self.lam is not None:
            object.__setattr__(self, "lam", None)
        if self.k_family == "r3_delta":
            if self.delta is None:
                raise ValueError("r3_delta needs delta")
        elif self.delta is not None:
            object.__setattr__(self, "delta", None)
        derived = _derived_coordinates(self.k_family, self.lam, self.delta)
        if 1 in derived:
            object.__setattr__(self, "eps1", Fraction(0))
        if 2 in derived:
            object.__setattr__(self, "eps2", Fraction(0))

    @property
    def params(self) -> tuple[str, ...]:
        return _PARAMS_BY_TYPE[(self.h_target, self.rep_type)]

    def k_algebra(self) -> LieAlgebra:
        return catalog(self.k_family, lam=self.lam, delta=self.delta)

    def h_algebra(self) -> LieAlgebra:
        return catalog("R3") if self.h_target == "R3" else catalog("h1")

    def label(self) -> str:
        parts = [f"{p}={format_rational(getattr(self, p))}" for p in self.params]
        for name in ("eps1", "eps2"):
            if getattr(self, name):
                parts.append(f"{name}={format_rational(getattr(self, name))}")
        if self.lam is not None:
            parts.insert(0, f"lambda={format_rational(self.lam)}")
        if self.delta is not None:
            parts.insert(0, f"delta={format_rational(self.delta)}")
        return ";".join(parts)

    def to_json(self) -> dict:
        out = {"k": self.k_family, "h": self.h_target, "type": self.rep_type}
        for name in ("eta", "nu", "mu", "eps1", "eps2"):
            out[name] = format_rational(getattr(self, name))
        if self.lam is not None:
            out["lambda"] = format_rational(self.lam)
        if self.delta is not None:
            out["delta"] = format_rational(self.delta)
        return out

    @classmethod
    def from_json(cls, data) -> "CaseSpec":
        if not isinstance(data, dict):
            raise ValueError("case: expected an object")
        for key in ("k", "h", "type"):
            if not isinstance(data.get(key), str):
                raise ValueError(f"case: field '{key}' must be a string")
        kwargs = {}
        for src, dst in (("eta", "eta"), ("nu", "nu"), ("mu", "mu"), ("eps1", "eps1"),
                         ("eps2", "eps2"), ("lambda", "lam"), ("delta", "delta")):
            if src in data:
                try:
                    kwargs[dst] = to_rational(data[src])
                except (TypeError, ValueError, ZeroDivisionError):
                    raise ValueError(f"case: field '{src}' is not a rational") from None
        return cls(data["k"], data["h"], data["type"], **kwargs)


@lru_cache(maxsize=None)
def _derived_coordinates(k_family: str, lam, delta) -> frozenset[int]:
    """Basis indices e_i (0-based) lying in the derived algebra of k."""
    d = derived_subalgebra(catalog(k_family, lam=lam, delta=delta))
    return frozenset(i for i in range(3) if d.contains(unit_vector(3, i)))


def rep_matrix(spec: CaseSpec) -> Matrix:
    """The matrix of t = pi(e1) for the case's type and parameters."""
    eta, nu, mu = spec.eta, spec.nu, spec.mu
    if spec.h_target == "R3":
        rows = {
            "i": [[eta, 0, 0], [0, nu, 0], [0, 0, mu]],
            "ii": [[eta, 0, 0], [0, nu, -mu], [0, mu, nu]],
            "iii": [[eta, 0, 0], [0, nu, 1], [0, 0, nu]],
            "iv": [[eta, 1, 0], [0, eta, 1], [0, 0, eta]],
        }[spec.rep_type]
    else:
        rows = {
            "i": [[eta, nu, 0], [mu, -eta, 0], [0, 0, 0]],
            "ii": [[eta, nu, 0], [mu, 1 - eta, 0], [0, 0, 1]],
        }[spec.rep_type]
    return Matrix(rows)


def build_rep(spec: CaseSpec) -> Representation:
    t = rep_matrix(spec)
    return Representation(spec.k_algebra(), spec.h_algebra(), (t, t * spec.eps1, t * spec.eps2))


def rank_one_rep_exists(k: LieAlgebra) -> bool:
    """A representation with one-dimensional image exists iff k is not perfect."""
    return derived_subalgebra(k).dim < k.dim


# -- the linear system -------------------------------------------------------

def cocycle_system(rho: Representation) -> Matrix:
    """Coefficient matrix of d1 j = 0 in the entries of j, ordered row-major.

    Rows: basis pairs (a, b) with a < b in lexicographic order, and for each
    pair one row per h coordinate s.  The row encodes
    pi(e_a) j(e_b) - pi(e_b) j(e_a) - j([e_a, e_b]) at coordinate s.
    """
    k = rho.source
    n, m = k.dim, rho.target.dim
    rows = []
    for a, b in combinations(range(n), 2):
        pa, pb = rho.matrices[a], rho.matrices[b]
        c = k.basis_bracket(a, b)
        for s in range(m):
            row = [Fraction(0)] * (m * n)
            for r in range(m):
                row[r * n + b] += pa[s, r]
                row[r * n + a] -= pb[s, r]
            for l in range(n):
                row[s * n + l] -= c[l]
            rows.append(row)
    return Matrix(rows) if rows else Matrix.zeros(0, m * n)


def assemble_cocycle_system(spec: CaseSpec) -> Matrix:
    return cocycle_system(build_rep(spec))


def reshape(v: Sequence, n: int = 3) -> Matrix:
    """Row-major vector of length n*n to an n x n matrix."""
    return Matrix([list(v[r * n:(r + 1) * n]) for r in range(n)])


def flatten(j: Matrix) -> tuple:
    return tuple(x for row in j.rows for x in row)


# -- witness search ----------------------------------------------------------

@dataclass(frozen=True)
class WitnessSearch:
    witness: Matrix | None
    coefficients: tuple | None
    det: Fraction | None
    points: int
    complete: bool

    def log(self) -> dict:
        return {
            "points": self.points,
            "complete_grid": self.complete,
            "hit": None if self.coefficients is None else
            {"coefficients": list(self.coefficients), "det": format_rational(self.det)},
        }


def _grid_values(n: int) -> tuple[int, ...]:
    """n+1 distinct integers, enough to decide a degree-n polynomial on a grid."""
    vals = [0]
    k = 1
    while len(vals) < n + 1:
        vals.append(k)
        if len(vals) < n + 1:
            vals.append(-k)
        k += 1
    return tuple(vals)


def _det_int(entries: list[int], n: int) -> int:
    if n == 3:
        a, b, c, d, e, f, g, h, i = entries
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if n == 2:
        a, b, c, d = entries
        return a * d - b * c
    if n == 1:
        return entries[0]
    return int(determinant(Matrix([entries[r * n:(r + 1) * n] for r in range(n)])))


_FULL_GRID_LIMIT = 4 ** 6


def search_witness(kernel: Sequence[Sequence], n: int = 3, *, seed: int = 0,
                   draws: int = DEFAULT_DRAWS) -> WitnessSearch:
    """Find c with det(sum c_m B_m) != 0, B_m the kernel vectors as n x n matrices.

    det(sum c_m B_m) is a polynomial of degree n in c.  With n+1 values per
    coordinate the full grid decides whether it vanishes identically, so the
    grid is enumerated exhaustively when it has at most 4**6 points; the
    enumeration goes by increasing support so sparse witnesses come first.
    Larger kernels get the sparse 0/1 candidates and then ``draws`` seeded
    random points with coordinates in -3..3.
    """
    d = len(kernel)
    if d == 0:
        return WitnessSearch(None, None, None, 0, True)
    basis = [integer_scaled(v) for v in kernel]
    size = n * n

    def combo(coeffs: dict[int, int]) -> list[int]:
        out = [0] * size
        for m, c in coeffs.items():
            bm = basis[m]
            for t in range(size):
                if bm[t]:
                    out[t] += c * bm[t]
        return out

    def hit(coeffs: dict[int, int], entries: list[int], det: int, points: int, complete: bool):
        full = tuple(coeffs.get(m, 0) for m in range(d))
        return WitnessSearch(reshape([Fraction(x) for x in entries], n), full, Fraction(det), points, complete)

    grid = _grid_values(n)
    nonzero = grid[1:]
    points = 0
    full_grid = len(grid) ** d <= _FULL_GRID_LIMIT
    if full_grid:
        for s in range(1, d + 1):
            for support in combinations(range(d), s):
                for values in product(nonzero, repeat=s):
                    coeffs = dict(zip(support, values))
                    entries = combo(coeffs)
                    points += 1
                    det = _det_int(entries, n)
                    if det:
                        return hit(coeffs, entries, det, points, True)
        return WitnessSearch(None, None, None, points, True)

    for s in range(1, min(n, d) + 1):
        for support in combinations(range(d), s):
            coeffs = dict.fromkeys(support, 1)
            entries = combo(coeffs)
            points += 1
            det = _det_int(entries, n)
            if det:
                return hit(coeffs, entries, det, points, False)
    rng = random.Random(seed)
    for _ in range(draws):
        coeffs = {m: rng.randint(-3, 3) for m in range(d)}
        entries = combo(coeffs)
        points += 1
        det = _det_int(entries, n)
        if det:
            return hit(coeffs, entries, det, points, False)
    return WitnessSearch(None, None, None, points, False)


def find_invertible_witness(kernel: Sequence[Sequence], n: int = 3, *, seed: int = 0) -> Matrix | None:
    return search_witness(kernel, n, seed=seed).witness


# -- verification ------------------------------------------------------------

def verify_witness(rho: Representation, j: Matrix) -> dict[str, bool]:
    """Build g and J from j and run the checks that certify a witness."""
    checks = {"invertible": determinant(j) != 0, "cocycle": d1(rho, j).is_zero()}
    if not (checks["invertible"] and checks["cocycle"]):
        return checks
    h = rho.target
    alpha = alpha_from_j(h, j)
    checks["alpha_central"] = center(h).contains_subspace(alpha.image())
    checks["alpha_cocycle"] = is_two_cocycle(rho, alpha)
    ext, J = p22_construct(rho.source, h, rho, j)
    checks["square"] = J.matrix @ J.matrix == -Matrix.identity(ext.g.dim)
    checks["integrable"] = is_integrable(ext.g, J)
    checks["k_totally_real"] = subspace_type(J, ext.k_subspace()) == "totally_real"
    checks["h_totally_real"] = subspace_type(J, ext.h_subspace()) == "totally_real"
    return checks


@dataclass(frozen=True)
class SolveResult:
    spec: CaseSpec
    system: Matrix
    kernel: tuple
    witness: Matrix | None
    verified: bool
    certified: bool
    search_log: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel)

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "kernel_dim": self.kernel_dim,
            "kernel": [[format_rational(x) for x in v] for v in self.kernel],
            "witness": None if self.witness is None else self.witness.to_json(),
            "verified": self.verified,
            "certified_absent": self.witness is None and self.certified,
            "checks": self.checks,
            "search_log": self.search_log,
        }


def solve_case(spec: CaseSpec, *, seed: int = 0) -> SolveResult:
    rho = build_rep(spec)
    system = cocycle_system(rho)
    kernel = tuple(kernel_basis(system))
    search = search_witness(kernel, 3, seed=seed)
    checks: dict = {}
    verified = False
    if search.witness is not None:
        checks = verify_witness(rho, search.witness)
        verified = all(checks.values())
    return SolveResult(spec, system, kernel, search.witness, verified, search.complete,
                       search.log(), checks)



# -- corpus of known solution families ---------------------------------------

_PARAM_NAMES = ("eta", "nu", "mu", "eps1", "eps2", "lam", "delta")


class InadmissibleError(ValueError):
    """Parameter values outside a family's domain."""


def _load_data(name: str):
    return json.loads(resources.files("lieext").joinpath("data", name).read_text())


@dataclass(frozen=True)
class WitnessFamily:
    """A parametrised family of cocycles j together with the t it solves.

    ``params`` maps a parameter name to an expression in the free symbols;
    ``free`` lists the free parameters.  Every symbol of the template that is
    not a parameter is a free entry of j.  Non-real families keep their
    template as text only.
    """

    id: str
    h: str
    k: str
    type: str
    complex: bool
    j: tuple
    det: str
    params: Mapping[str, str] = field(default_factory=dict)
    free: tuple = ()
    conditions: tuple = ()
    instance: Mapping[str, str] = field(default_factory=dict)
    printed_params: str = ""
    erratum: str | None = None

    @classmethod
    def from_json(cls, data: dict) -> "WitnessFamily":
        return cls(
            id=data["id"], h=data["h"], k=data["k"], type=data["type"],
            complex=data["complex"],
            j=tuple(tuple(row) for row in data["j"]), det=data["det"],
            params=dict(data.get("params", {})), free=tuple(data.get("free", ())),
            conditions=tuple(data.get("conditions", ())),
            instance=dict(data.get("instance", {})),
            printed_params=data.get("printed_params", ""), erratum=data.get("erratum"),
        )

    def entry_symbols(self) -> tuple[str, ...]:
        """Free entries of j, i.e. template symbols that are not parameters."""
        names = set()
        for row in self.j:
            for e in row:
                names |= names_in(e)
        for e in self.params.values():
            names |= names_in(e)
        return tuple(sorted(names - set(_PARAM_NAMES)))

    def symbols(self) -> tuple[str, ...]:
        return tuple(self.free) + self.entry_symbols()

    def default_values(self) -> dict[str, Fraction]:
        """Every free symbol set to 1 except the documented alternates."""
        values = dict.fromkeys(self.symbols(), Fraction(1))
        values.update({name: to_rational(v) for name, v in self.instance.items()})
        return values

    def instantiate(self, values: Mapping[str, Fraction]) -> tuple[CaseSpec, Matrix, Fraction]:
        """(spec, j, det formula value) at the given free-symbol values."""
        if self.complex:
            raise InadmissibleError(f"{self.id} is not a real family")
        env = {name: to_rational(values[name]) for name in self.symbols()}
        try:
            for name, expr in self.params.items():
                env[name] = evaluate(expr, env)
            if not all(condition_holds(c, env) for c in self.conditions):
                raise InadmissibleError(f"{self.id}: conditions fail")
            j = Matrix([[evaluate(e, env) for e in row] for row in self.j])
            det = evaluate(self.det, env)
        except ZeroDivisionError:
            raise InadmissibleError(f"{self.id}: division by zero") from None
        kwargs = {name: env.get(name, Fraction(0)) for name in ("eta", "nu", "mu", "eps1", "eps2")}
        if self.k == "r3_lambda":
            kwargs["lam"] = env["lam"]
        if self.k == "r3_delta":
            kwargs["delta"] = env["delta"]
        for name in ("eps1", "eps2"):
            if kwargs[name] and not _eps_allowed(self.k, kwargs.get("lam"), kwargs.get("delta"), name):
                raise InadmissibleError(f"{self.id}: {name} sits on the derived algebra")
        try:
            spec = CaseSpec(self.k, self.h, self.type, **kwargs)
        except ValueError as exc:
            raise InadmissibleError(f"{self.id}: {exc}") from None
        return spec, j, det


def _eps_allowed(k_family: str, lam, delta, name: str) -> bool:
    index = 1 if name == "eps1" else 2
    return index not in _derived_coordinates(k_family, lam, delta)


@lru_cache(maxsize=1)
def known_solution_witnesses() -> tuple[WitnessFamily, ...]:
    return tuple(WitnessFamily.from_json(d) for d in _load_data("witnesses.json"))


@dataclass(frozen=True)
class FamilyReport:
    family: WitnessFamily
    default_checks: dict
    solver_verified: bool
    samples: tuple
    ok: bool

    def failures(self) -> list[str]:
        out = [f"default: {name}" for name, passed in self.default_checks.items() if not passed]
        if not self.solver_verified:
            out.append("default: solver found no verified witness")
        for values, cocycle, det_agrees in self.samples:
            label = ",".join(f"{k}={format_rational(v)}" for k, v in values.items())
            if not cocycle:
                out.append(f"sample {label}: not a cocycle")
            if not det_agrees:
                out.append(f"sample {label}: det formula disagrees")
        return out


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.choice((1, 1, 2, 3)))


def check_family(family: WitnessFamily, *, samples: int = 3, seed: int = 0,
                 max_tries: int = 1000) -> FamilyReport:
    """Verify a real family end to end.

    The default instance must be an invertible cocycle passing every witness
    check, and the solver must reach a verified witness at the same
    parameters.  At ``samples`` random admissible instantiations the template
    must be a cocycle and the det formula must equal the determinant.
    """
    spec, j, det = family.instantiate(family.default_values())
    rho = build_rep(spec)
    checks = verify_witness(rho, j)
    checks["det_formula"] = determinant(j) == det
    solver_ok = solve_case(spec, seed=seed).verified
    rng = random.Random(f"{seed}:{family.id}")
    found = []
    for _ in range(max_tries):
        if len(found) == samples:
            break
        values = {name: _random_rational(rng) for name in family.symbols()}
        if family.k == "r3_lambda" and "lam" in family.free:
            values["lam"] = Fraction(rng.randint(-4, 4), 4)
        try:
            s_spec, s_j, s_det = family.instantiate(values)
        except InadmissibleError:
            continue
        found.append((values, d1(build_rep(s_spec), s_j).is_zero(), determinant(s_j) == s_det))
    ok = all(checks.values()) and solver_ok and len(found) == samples and all(
        c and d for _, c, d in found)
    return FamilyReport(family, checks, solver_ok, tuple(found), ok)


# -- reproduction of the existence tables ------------------------------------

DEFAULT_GRID = tuple(Fraction(x) for x in ("-2", "-1", "-1/2", "0", "1/2", "1", "2"))
EPS_VALUES = (Fraction(0), Fraction(1))


@dataclass(frozen=True)
class TableLine:
    """One parameter constraint of a "yes" row.

    ``set`` assigns expressions to parameters; ``sample`` names entries of j
    that the expressions use and that are drawn from the grid.  ``printed``
    keeps the constraint as originally tabulated when it had to be corrected.
    """

    text: str
    set: Mapping[str, str]
    conditions: tuple = ()
    sample: tuple = ()
    printed: Mapping[str, str] | None = None
    printed_conditions: tuple | None = None
    erratum: str | None = None

    @classmethod
    def from_json(cls, data: dict) -> "TableLine":
        pc = data.get("printed_conditions")
        return cls(data["text"], dict(data["set"]), tuple(data.get("conditions", ())),
                   tuple(data.get("sample", ())), data.get("printed"),
                   None if pc is None else tuple(pc), data.get("erratum"))

    def constraints(self, printed: bool = False) -> tuple[dict, tuple]:
        """(assignments, conditions), optionally as originally tabulated."""
        if not printed:
            return dict(self.set), self.conditions
        conditions = self.conditions if self.printed_conditions is None else self.printed_conditions
        return dict(self.printed if self.printed is not None else self.set), conditions


@dataclass(frozen=True)
class TableRow:
    h: str
    k: str
    type: str
    expected: str
    lines: tuple = ()
    domain: str | None = None
    complex_only: bool = False

    @classmethod
    def from_json(cls, h: str, data: dict) -> "TableRow":
        return cls(h, data["k"], data["type"], data["expected"],
                   tuple(TableLine.from_json(d) for d in data.get("lines", ())),
                   data.get("domain"), data.get("complex_only", False))


@lru_cache(maxsize=None)
def expected_table(table: int) -> tuple[TableRow, ...]:
    data = _load_data("tables.json")[str(table)]
    return tuple(TableRow.from_json(data["h"], row) for row in data["rows"])


def _free_symbols(row: TableRow, assigned) -> list[str]:
    names = list(_PARAMS_BY_TYPE[(row.h, row.type)]) + ["eps1", "eps2"]
    if row.k == "r3_lambda":
        names.append("lam")
    if row.k == "r3_delta":
        names.append("delta")
    return [n for n in names if n not in assigned]


def line_points(row: TableRow, line: TableLine | None, grid: Sequence = DEFAULT_GRID,
                *, printed: bool = False) -> list[tuple[dict, CaseSpec]]:
    """Admissible grid points of one line (or of a "no" row when line is None).

    Free parameters and sampled j entries range over ``grid``; eps ranges over
    {0, 1} unless fixed, and eps on a derived direction is skipped.  Lambda
    is kept in [-1, 1].  Points where an expression divides by zero or a
    condition fails are not admissible.
    """
    assigned, conditions = ({}, ()) if line is None else line.constraints(printed)
    if row.domain:
        conditions = conditions + (row.domain,)
    free = _free_symbols(row, assigned)
    sampled = () if line is None else line.sample
    axes = [EPS_VALUES if n in ("eps1", "eps2") else grid for n in free]
    axes += [grid] * len(sampled)
    points = []
    seen = set()
    for values in product(*axes):
        env = dict(zip(list(free) + list(sampled), values))
        try:
            for name, expr in assigned.items():
                env[name] = evaluate(expr, env)
            if not all(condition_holds(c, env) for c in conditions):
                continue
        except ZeroDivisionError:
            continue
        lam, delta = env.get("lam"), env.get("delta")
        if row.k == "r3_lambda" and not -1 <= lam <= 1:
            continue
        if any(env.get(e) and not _eps_allowed(row.k, lam, delta, e) for e in ("eps1", "eps2")):
            continue
        spec = CaseSpec(row.k, row.h, row.type, eta=env.get("eta", 0), nu=env.get("nu", 0),
                        mu=env.get("mu", 0), eps1=env.get("eps1", 0), eps2=env.get("eps2", 0),
                        lam=lam, delta=delta)
        if spec in seen:
            continue
        seen.add(spec)
        points.append((env, spec))
    return points


@dataclass(frozen=True)
class LineReport:
    row: TableRow
    line: TableLine | None
    points: int
    witnesses: int
    verified: int
    certified: int
    status: str
    failures: tuple = ()

    @property
    def params(self) -> str:
        parts = []
        if self.row.domain:
            parts.append(self.row.domain.replace("lam", "lambda"))
        if self.line is not None:
            parts.append(self.line.text)
        return "; ".join(parts)

    @property
    def observed(self) -> str:
        text = f"{self.verified}/{self.points} verified"
        if self.row.expected == "no":
            text += f", {self.certified} certified"
        return text

    def csv_row(self) -> list[str]:
        return [self.row.k, self.row.type, self.params, self.row.expected, self.observed, self.status]


@dataclass(frozen=True)
class TableReport:
    table: int
    lines: tuple

    @property
    def ok(self) -> bool:
        return all(r.status in ("match", "complex-only") for r in self.lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "type", "params", "expected", "observed", "status"])
        for r in self.lines:
            writer.writerow(r.csv_row())
        return buf.getvalue()


def _solve_summary(spec: CaseSpec) -> tuple[bool, bool, bool]:
    result = solve_case(spec)
    return result.witness is not None, result.verified, result.certified


def _summaries(specs: list[CaseSpec], jobs: int) -> dict:
    unique = sorted(set(specs), key=lambda s: json.dumps(s.to_json(), sort_keys=True))
    if jobs > 1 and len(unique) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_solve_summary, unique, chunksize=8))
    else:
        results = [_solve_summary(s) for s in unique]
    return dict(zip(unique, results))


def reproduce_table(table: int, grid: Sequence = DEFAULT_GRID, *, jobs: int = 1,
                    printed: bool = False) -> TableReport:
    """Check every row of an existence table over a parameter grid.

    A "no" row matches when no grid point has a witness; a "yes" line matches
    when every admissible point of its constraints has a verified witness.
    Rows whose only solutions are non-real report "complex-only" when no real
    witness turns up.  With ``printed`` the constraints are taken as
    originally tabulated instead of corrected.
    """
    grid = tuple(to_rational(g) for g in grid)
    work = []
    for row in expected_table(table):
        targets = row.lines if row.expected == "yes" else (None,)
        for line in targets:
            work.append((row, line, line_points(row, line, grid, printed=printed)))
    summary = _summaries([spec for _, _, pts in work for _, spec in pts], jobs)
    reports = []
    for row, line, pts in work:
        outcomes = [(spec, summary[spec]) for _, spec in pts]
        witnesses = sum(w for _, (w, _, _) in outcomes)
        verified = sum(v for _, (_, v, _) in outcomes)
        certified = sum(c and not w for _, (w, _, c) in outcomes)
        if row.expected == "yes":
            failures = tuple(s.label() for s, (_, v, _) in outcomes if not v)
            good = bool(outcomes) and not failures
        else:
            failures = tuple(s.label() for s, (w, _, _) in outcomes if w)
            good = not failures
        status = "mismatch" if not good else "complex-only" if row.complex_only else "match"
        reports.append(LineReport(row, line, len(outcomes), witnesses, verified, certified,
                                  status, failures))
    return TableReport(table, tuple(reports))
