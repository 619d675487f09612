"""Command-line interface.

Every subcommand reads and writes the JSON formats of the library: rationals
are "p/q" strings, basis indices are 1-based.  Exit status is 0 on success,
1 when a verification fails and 2 on a usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bilinear import (
    anti_hermitian_from_B,
    gcs_check,
    gcs_from_cocycle,
    gcs_type,
    hermitian_from_B,
    is_anti_hermitian,
    is_closed,
    is_complex_symplectic,
    is_hermitian,
    is_pseudo_kahler,
    metric_pair,
    metric_sum,
    subspace_metric_type,
    subspace_symplectic_type,
)
from .cohomology import Representation, b1_basis, h1_dim, h2_dim, z1_basis, z2_dim
from .complex_structures import is_integrable, j_from_cocycle, p22_construct, subspace_type
from .lie import CATALOG_NAMES, LieAlgebra, Subspace, catalog
from .linalg import Matrix, determinant, parse_rational
from .solver import DEFAULT_GRID, CaseSpec, build_rep, reproduce_table, solve_case

__all__ = ["main", "run", "UsageError"]

OK, FAILED, USAGE = 0, 1, 2

GCS_EXAMPLES = {
    # abelian R^2 with j = e^12
    "R2": (LieAlgebra(2), [["0", "-1"], ["1", "0"]]),
    # h3 + R with [e1, e2] = e3 and the closed form e^14 + e^23
    "h3R": (LieAlgebra(4, [(0, 1, 2, 1)]),
            [["0", "0", "0", "-1"], ["0", "0", "-1", "0"], ["0", "1", "0", "0"], ["1", "0", "0", "0"]]),
}


class UsageError(ValueError):
    """Bad flags or malformed input; reported with exit status 2."""


def _rational(text: str):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _read_json(path: str | None, what: str, stdin_data=None):
    if path is None:
        if stdin_data is None:
            raise UsageError(f"{what}: no input given")
        return stdin_data
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{what}: cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _stdin_json():
    try:
        return json.loads(sys.stdin.read())
    except json.JSONDecodeError as exc:
        raise UsageError(f"stdin: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _field(data, key: str, what: str):
    if not isinstance(data, dict) or key not in data:
        raise UsageError(f"{what}: missing field '{key}'")
    return data[key]


def _matrix(data, what: str, shape: tuple[int, int] | None = None) -> Matrix:
    try:
        m = Matrix.from_json(data)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{what}: {exc}") from None
    if shape is not None and m.shape != shape:
        raise UsageError(f"{what}: expected a {shape[0]}x{shape[1]} matrix, got {m.nrows}x{m.ncols}")
    return m


def _algebra(data, what: str) -> LieAlgebra:
    try:
        return LieAlgebra.from_json(data)
    except ValueError as exc:
        msg = str(exc).removeprefix("algebra: ")
        raise UsageError(f"{what}: {msg}") from None


# -- case flags shared by solve and cocycles ---------------------------------

def _add_case_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", dest="k_family", help="h1, r3, r3_lambda or r3_delta")
    p.add_argument("--h", dest="h_target", help="R3 or H1")
    p.add_argument("--type", dest="rep_type", help="i, ii, iii or iv")
    for name in ("eta", "nu", "mu", "eps1", "eps2", "lambda", "delta"):
        p.add_argument(f"--{name}", type=_rational)
    p.add_argument("--stdin", action="store_true", help="read the case as JSON from stdin")


def _case(args) -> CaseSpec:
    if args.stdin:
        data = _stdin_json()
        try:
            return CaseSpec.from_json(data)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    for flag, value in (("--k", args.k_family), ("--h", args.h_target), ("--type", args.rep_type)):
        if value is None:
            raise UsageError(f"case: {flag} is required")
    kwargs = {n: getattr(args, n) for n in ("eta", "nu", "mu", "eps1", "eps2") if getattr(args, n) is not None}
    kwargs["lam"] = getattr(args, "lambda")
    kwargs["delta"] = args.delta
    try:
        return CaseSpec(args.k_family, args.h_target, args.rep_type, **kwargs)
    except ValueError as exc:
        raise UsageError(f"case: {exc}") from None


# -- subcommands -------------------------------------------------------------

def cmd_catalog(args) -> int:
    if args.name is None:
        _emit({"names": list(CATALOG_NAMES)})
        return OK
    try:
        g = catalog(args.name, lam=getattr(args, "lambda"), delta=args.delta)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"catalog: {exc.args[0]}") from None
    _emit({"name": args.name, **g.to_json()})
    return OK


def _bundle(spec: CaseSpec, j: Matrix) -> dict:
    ext, J = p22_construct(spec.k_algebra(), spec.h_algebra(), build_rep(spec), j)
    return {"algebra": ext.g.to_json(), "J": J.matrix.to_json(), "k_dim": ext.k_dim}


def cmd_solve(args) -> int:
    spec = _case(args)
    result = solve_case(spec, seed=args.seed)
    out = result.to_json()
    if args.bundle and result.witness is not None:
        bundle = _bundle(spec, result.witness)
        Path(args.bundle).write_text(json.dumps(bundle, indent=2) + "\n")
    _emit(out)
    return FAILED if result.witness is not None and not result.verified else OK


def _check(name: str, passed: bool) -> dict:
    return {"check": name, "pass": bool(passed)}


def verify_bundle(g: LieAlgebra, J: Matrix, k_dim: int, metric: Matrix | None = None,
                  omega: Matrix | None = None) -> dict:
    """Structured pass/fail report for an algebra, an endomorphism and optional forms."""
    n = g.dim
    if J.shape != (n, n):
        raise UsageError(f"J: expected a {n}x{n} matrix, got {J.nrows}x{J.ncols}")
    if not 0 <= k_dim <= n:
        raise UsageError(f"k_dim: must lie in 0..{n}")
    checks = [_check("J^2 = -1", J @ J == -Matrix.identity(n))]
    info: dict = {}
    if checks[0]["pass"]:
        checks.append(_check("Nijenhuis tensor vanishes", is_integrable(g, J)))
        k_sub = Subspace.coordinate(n, range(k_dim))
        h_sub = Subspace.coordinate(n, range(k_dim, n))
        info["k"] = subspace_type(J, k_sub)
        info["h"] = subspace_type(J, h_sub)
        if metric is not None:
            sym = metric.T == metric and determinant(metric) != 0
            checks.append(_check("metric is symmetric and non-degenerate", sym))
            if sym:
                herm, anti = is_hermitian(metric, J), is_anti_hermitian(metric, J)
                info["metric"] = "hermitian" if herm else "anti_hermitian" if anti else "neither"
                info["metric_k"] = subspace_metric_type(metric, k_sub)
                info["metric_h"] = subspace_metric_type(metric, h_sub)
                checks.append(_check(f"metric is {info['metric'].replace('_', '-')}", herm or anti))
        if omega is not None:
            skew = omega.T == -omega and determinant(omega) != 0
            checks.append(_check("omega is skew and non-degenerate", skew))
            if skew:
                checks.append(_check("omega is closed", is_closed(g, omega)))
                pk = is_pseudo_kahler(g, omega, J)
                cs = is_complex_symplectic(g, omega, J)
                info["omega"] = "pseudo_kahler" if pk else "complex_symplectic" if cs else "neither"
                info["omega_k"] = subspace_symplectic_type(omega, k_sub)
                info["omega_h"] = subspace_symplectic_type(omega, h_sub)
                checks.append(_check(f"omega is {info['omega'].replace('_', '-')}", pk or cs))
    return {"checks": checks, "classification": info, "ok": all(c["pass"] for c in checks)}


def cmd_verify(args) -> int:
    if args.stdin:
        bundle = _stdin_json()
    elif args.algebra is None:
        raise UsageError("verify: give ALGEBRA and J files, a bundle file, or --stdin")
    else:
        first = _read_json(args.algebra, "algebra")
        if isinstance(first, dict) and "J" in first:
            bundle = first
        else:
            if args.J is None:
                raise UsageError("verify: missing the J file")
            bundle = {"algebra": first, "J": _read_json(args.J, "J")}
    g = _algebra(_field(bundle, "algebra", "bundle"), "algebra")
    J = _matrix(_field(bundle, "J", "bundle"), "J")
    k_dim = args.k_dim if args.k_dim is not None else bundle.get("k_dim", g.dim // 2)
    if not isinstance(k_dim, int) or isinstance(k_dim, bool):
        raise UsageError("bundle: field 'k_dim' must be an integer")
    metric = _read_json(args.metric, "metric") if args.metric else bundle.get("metric")
    omega = _read_json(args.omega, "omega") if args.omega else bundle.get("omega")
    shape = (g.dim, g.dim)
    metric = None if metric is None else _matrix(metric, "metric", shape)
    omega = None if omega is None else _matrix(omega, "omega", shape)
    report = verify_bundle(g, J, k_dim, metric, omega)
    _emit(report)
    return OK if report["ok"] else FAILED


def _grid(text: str) -> tuple:
    if text == "default":
        return DEFAULT_GRID
    try:
        values = tuple(parse_rational(t) for t in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"grid: {exc}") from None
    if len(set(values)) != len(values):
        raise UsageError("grid: values must be distinct")
    return values


def cmd_table(args) -> int:
    if args.jobs < 1:
        raise UsageError("table: --jobs must be at least 1")
    report = reproduce_table(args.table, _grid(args.grid), jobs=args.jobs, printed=args.printed)
    text = report.to_csv()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return OK if report.ok else FAILED


def _representation(data) -> Representation:
    source = _algebra(_field(data, "source", "representation"), "source")
    target = _algebra(_field(data, "target", "representation"), "target")
    mats = _field(data, "matrices", "representation")
    if not isinstance(mats, list):
        raise UsageError("representation: field 'matrices' must be a list")
    shape = (target.dim, target.dim)
    try:
        return Representation(source, target,
                              tuple(_matrix(m, f"matrices[{i}]", shape) for i, m in enumerate(mats)))
    except ValueError as exc:
        raise UsageError(f"representation: {exc}") from None


def cmd_cocycles(args) -> int:
    if args.rep is not None:
        rho = _representation(_read_json(args.rep, "representation"))
    else:
        rho = build_rep(_case(args))
    z1 = z1_basis(rho)
    _emit({
        "z1_dim": len(z1),
        "b1_dim": len(b1_basis(rho)),
        "h1_dim": h1_dim(rho),
        "z2_dim": z2_dim(rho),
        "h2_dim": h2_dim(rho),
        "z1_basis": [m.to_json() for m in z1],
    })
    return OK


def cmd_metrics(args) -> int:
    if args.stdin:
        data = _stdin_json()
        B = _matrix(_field(data, "B", "input"), "B")
        j = _matrix(_field(data, "j", "input"), "j")
    else:
        if args.B is None or args.j is None:
            raise UsageError("metrics: give --B and --j files, or --stdin")
        B = _matrix(_read_json(args.B, "B"), "B")
        j = _matrix(_read_json(args.j, "j"), "j")
    n = B.nrows
    if B.shape != (n, n) or j.shape != (n, n):
        raise UsageError("metrics: B and j must be square of the same size")
    if B.T != B or determinant(B) == 0:
        raise UsageError("B: must be symmetric and non-degenerate")
    if determinant(j) == 0:
        raise UsageError("j: must be invertible")
    J = j_from_cocycle(n, j)
    k_sub = Subspace.coordinate(2 * n, range(n))
    h_sub = Subspace.coordinate(2 * n, range(n, 2 * n))
    out = {}
    for name, build in (("hermitian_from_B", hermitian_from_B), ("anti_hermitian_from_B", anti_hermitian_from_B),
                        ("metric_pair", metric_pair), ("metric_sum", metric_sum)):
        m = build(B, j)
        out[name] = {
            "gram": m.gram.to_json(),
            "hermitian": is_hermitian(m, J),
            "anti_hermitian": is_anti_hermitian(m, J),
            "k": subspace_metric_type(m, k_sub),
            "h": subspace_metric_type(m, h_sub),
            "signature": list(m.signature()),
        }
    if args.emit:
        _emit(out[args.emit]["gram"])
    else:
        _emit({"J": J.matrix.to_json(), "metrics": out})
    return OK


def cmd_gcs(args) -> int:
    if args.example:
        k, j_rows = GCS_EXAMPLES[args.example]
        j = Matrix(j_rows)
    else:
        if args.algebra is None or args.j is None:
            raise UsageError("gcs: give --example, or --algebra and --j")
        k = _algebra(_read_json(args.algebra, "algebra"), "algebra")
        j = _matrix(_read_json(args.j, "j"), "j", (k.dim, k.dim))
    try:
        J = gcs_from_cocycle(k, j)
    except ValueError as exc:
        _emit({"ok": False, "error": str(exc)})
        return FAILED
    report = gcs_check(k, J)
    _emit({
        "J": J.matrix.to_json(),
        "hermitian": report.hermitian,
        "integrable": report.integrable,
        "type": gcs_type(J),
        "ok": report.ok,
    })
    return OK if report.ok else FAILED


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lieext", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="print a 3-dimensional algebra of the catalog")
    p.add_argument("--name", choices=CATALOG_NAMES)
    p.add_argument("--lambda", type=_rational)
    p.add_argument("--delta", type=_rational)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("solve", help="search an invertible cocycle for one case")
    _add_case_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bundle", metavar="FILE", help="write algebra, J and k_dim of the witness here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check J, and optionally a metric or 2-form, on an algebra")
    p.add_argument("algebra", nargs="?", help="algebra JSON file, or a bundle written by solve")
    p.add_argument("J", nargs="?", help="J matrix JSON file")
    p.add_argument("--k-dim", type=int, help="k is spanned by the first K_DIM basis vectors")
    forms = p.add_mutually_exclusive_group()
    forms.add_argument("--metric", metavar="FILE")
    forms.add_argument("--omega", metavar="FILE")
    p.add_argument("--stdin", action="store_true", help="read a bundle from stdin")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="reproduce an existence table as CSV")
    p.add_argument("table", type=int, choices=(1, 2))
    p.add_argument("--grid", default="default", help="'default' or comma separated rationals")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--printed", action="store_true", help="use the constraints as originally tabulated")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("cocycles", help="cohomology dimensions of a representation")
    _add_case_flags(p)
    p.add_argument("--rep", metavar="FILE", help="representation JSON with source, target, matrices")
    p.set_defaults(func=cmd_cocycles)

    p = sub.add_parser("metrics", help="metrics built from an inner product B and a cocycle j")
    p.add_argument("--B", metavar="FILE")
    p.add_argument("--j", metavar="FILE")
    p.add_argument("--stdin", action="store_true", help="read {\"B\": ..., \"j\": ...} from stdin")
    p.add_argument("--emit", choices=("hermitian_from_B", "anti_hermitian_from_B", "metric_pair", "metric_sum"),
                   help="print only this Gram matrix")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("gcs", help="generalized complex structure on T*k from a cocycle")
    p.add_argument("--example", choices=sorted(GCS_EXAMPLES))
    p.add_argument("--algebra", metavar="FILE")
    p.add_argument("--j", metavar="FILE")
    p.set_defaults(func=cmd_gcs)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lieext {args.command}: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
