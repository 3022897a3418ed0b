"""Command-line interface: kernel evaluation, Gram assembly, transforms,
basis tabulation, and the verification suite.

Structured input is JSON, matrices and grids are CSV with floats written
to 17 significant digits; quaternion-valued columns appear as four-column
groups suffixed .w/.x/.y/.z.  Runs are deterministic: randomized checks
draw from a fixed seed unless --seed overrides it.

Exit codes: 0 success / all checks passed, 1 numerical check failure,
2 bad input (schema or value errors, reported with the offending field).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bases import hermite_h, hermite_psi, rbf_basis_c, rbf_basis_q
from .gram import GRAM_KERNELS, build_gram, psd_check
from .hypercomplex import ImaginaryUnit, Quaternion
from .kernels import (NORMALIZATIONS, exponential_kernel, fock_kernel_d,
                      polynomial_kernel, rbf_kernel_d, rbf_kernel_qslice)
from .quadrature import DEFAULT_QUAD_ORDER
from .transforms import (HermiteCoeffFunction, HermiteCoeffFunctionD,
                         rbf_sb_transform, rbf_sb_transform_d, sb_transform)
from .verify import CRITERIA, DEFAULT_SEED, VerifyConfig, run_all


class InputError(Exception):
    """Schema or value problem in user-supplied input."""


def _fmt(value: float) -> str:
    return f"{float(value):.17g}"


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"input file not found: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}")


def _require(data: dict, field: str, where: str):
    if field not in data:
        raise InputError(f"{where}: missing required field {field!r}")
    return data[field]


def _write_lines(lines: list[str], path: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_complex(item, where: str) -> complex:
    if isinstance(item, (int, float)):
        return complex(item)
    if isinstance(item, list) and len(item) == 2 \
            and all(isinstance(v, (int, float)) for v in item):
        return complex(item[0], item[1])
    raise InputError(f"{where}: expected [re, im], got {item!r}")


def _parse_point(kernel_id: str, item, where: str):
    if kernel_id == "rbf-qslice":
        if not (isinstance(item, list) and len(item) == 4):
            raise InputError(f"{where}: quaternion points are [w, x, y, z]")
        return Quaternion.from_list(item)
    if kernel_id in ("rbf-complex", "fock"):
        if isinstance(item, list) and item and isinstance(item[0], list):
            return np.array([_parse_complex(v, where) for v in item])
        return np.array([_parse_complex(item, where)])
    if not isinstance(item, list):
        item = [item]
    if not all(isinstance(v, (int, float)) for v in item):
        raise InputError(f"{where}: real points are lists of numbers")
    return np.asarray(item, dtype=float)


def _kernel_value(kernel_id: str, params: dict, a, b):
    if kernel_id == "rbf-real":
        diff = a - b
        return float(np.exp(-np.dot(diff, diff) / params["gamma"] ** 2))
    if kernel_id == "rbf-complex":
        return rbf_kernel_d(params["gamma"], a, b)
    if kernel_id == "fock":
        return fock_kernel_d(params["alpha"], a, b)
    if kernel_id == "rbf-qslice":
        return rbf_kernel_qslice(params["gamma"], a, b)
    if kernel_id == "polynomial":
        return polynomial_kernel(a, b, params["degree"])
    return exponential_kernel(a, b)


def _kernel_params(kernel_id: str, data: dict, args) -> dict:
    params: dict = {}
    if kernel_id in ("rbf-real", "rbf-complex", "rbf-qslice"):
        gamma = data.get("gamma", args.gamma)
        if gamma is None:
            raise InputError("kernel: supply gamma in the JSON or via --gamma")
        if gamma <= 0:
            raise InputError("kernel: gamma must be positive")
        params["gamma"] = float(gamma)
    if kernel_id == "fock":
        alpha = data.get("alpha")
        if alpha is None:
            gamma = data.get("gamma", args.gamma)
            if gamma is None:
                raise InputError("kernel: fock needs alpha, or gamma to "
                                 "derive alpha = 2/gamma^2")
            alpha = 2.0 / float(gamma) ** 2
        params["alpha"] = float(alpha)
    if kernel_id == "polynomial":
        params["degree"] = int(_require(data, "degree", "kernel"))
    return params


def cmd_kernel(args) -> int:
    data = _load_json(args.input)
    kernel_id = _require(data, "kernel", "kernel input")
    if kernel_id not in GRAM_KERNELS:
        raise InputError(f"kernel: unknown kernel {kernel_id!r}; "
                         f"choose from {GRAM_KERNELS}")
    params = _kernel_params(kernel_id, data, args)
    pairs = _require(data, "pairs", "kernel input")
    lines = []
    header = ("pair,value.w,value.x,value.y,value.z"
              if kernel_id == "rbf-qslice" else "pair,value.re,value.im")
    lines.append(header)
    for i, pair in enumerate(pairs):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise InputError(f"pairs[{i}]: expected [point, point]")
        a = _parse_point(kernel_id, pair[0], f"pairs[{i}][0]")
        b = _parse_point(kernel_id, pair[1], f"pairs[{i}][1]")
        value = _kernel_value(kernel_id, params, a, b)
        if isinstance(value, Quaternion):
            lines.append(f"{i}," + ",".join(_fmt(v) for v in value.to_list()))
        else:
            value = complex(value)
            lines.append(f"{i},{_fmt(value.real)},{_fmt(value.imag)}")
    _write_lines(lines, args.output)
    return 0


def cmd_gram(args) -> int:
    data = _load_json(args.input)
    kernel_id = _require(data, "kernel", "gram input")
    if kernel_id not in GRAM_KERNELS:
        raise InputError(f"gram: unknown kernel {kernel_id!r}")
    params = _kernel_params(kernel_id, data, args)
    raw_points = _require(data, "points", "gram input")
    points = [_parse_point(kernel_id, p, f"points[{i}]")
              for i, p in enumerate(raw_points)]
    if kernel_id != "rbf-qslice":
        points = np.stack(points)
    try:
        gram = build_gram(kernel_id, params, points)
    except (TypeError, ValueError) as exc:
        raise InputError(f"gram: {exc}")
    report = psd_check(gram, tol=args.tol)

    lines = []
    n = gram.size
    if gram.is_quaternionic:
        header = ",".join(f"g{b}.{c}" for b in range(n) for c in "wxyz")
        lines.append(header)
        for a in range(n):
            row = [_fmt(v) for b in range(n) for v in gram.entries[a, b]]
            lines.append(",".join(row))
    else:
        entries = np.asarray(gram.entries, dtype=complex)
        lines.append(",".join(f"g{b}.re,g{b}.im" for b in range(n)))
        for a in range(n):
            row = []
            for b in range(n):
                row += [_fmt(entries[a, b].real), _fmt(entries[a, b].imag)]
            lines.append(",".join(row))
    _write_lines(lines, args.output)

    payload = {"kernel": kernel_id, "params": params, "size": n,
               "min_eig": report.min_eigenvalue, "tol": report.tol,
               "psd": report.psd, "points_hash": gram.points_hash}
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    else:
        sys.stdout.write(json.dumps(payload) + "\n")
    return 0


def _transform_d(args, data) -> int:
    """Several-complex-variable branch of the transform command."""
    dim = args.dim
    fn_data = _require(data, "hermite", "transform input")
    nu_phi = float(_require(fn_data, "nu", "transform input.hermite"))
    raw_terms = _require(fn_data, "terms", "transform input.hermite")
    terms = []
    for i, item in enumerate(raw_terms):
        where = f"transform input.hermite.terms[{i}]"
        if not (isinstance(item, list) and len(item) == 2):
            raise InputError(f"{where}: expected [multi_index, [re, im]]")
        index, coeff = item
        if not (isinstance(index, list) and len(index) == dim):
            raise InputError(f"{where}: multi-index must have length {dim}")
        terms.append((tuple(int(n) for n in index),
                      _parse_complex(coeff, where)))
    try:
        phi = HermiteCoeffFunctionD(nu_phi, dim, tuple(terms))
    except (TypeError, ValueError) as exc:
        raise InputError(f"transform input.hermite: {exc}")
    grid = _require(data, "grid", "transform input")
    raw_points = _require(grid, "points", "transform input.grid")
    points = []
    for i, item in enumerate(raw_points):
        where = f"grid.points[{i}]"
        if not (isinstance(item, list) and len(item) == dim):
            raise InputError(f"{where}: points in C^{dim} are lists of "
                             f"{dim} [re, im] pairs")
        points.append(tuple(_parse_complex(v, where) for v in item))
    if args.gamma is None:
        raise InputError("transform: the C^d transform needs --gamma")

    header = ",".join(f"z{l}.re,z{l}.im" for l in range(dim))
    lines = [header + ",value.re,value.im"]
    for z in points:
        try:
            value = rbf_sb_transform_d(args.gamma, dim, phi, z,
                                       quad_order=args.quad_order)
        except (TypeError, ValueError) as exc:
            raise InputError(f"transform: {exc}")
        row = [v for zl in z for v in (zl.real, zl.imag)]
        row += [value.real, value.imag]
        lines.append(",".join(_fmt(v) for v in row))
    _write_lines(lines, args.output)
    return 0


def cmd_transform(args) -> int:
    data = _load_json(args.input)
    if "samples" in data:
        raise InputError(
            "transform: sampled input carries no decay certificate the "
            "quadrature can trust; provide the function as "
            '{"hermite": {"nu": ..., "coeffs": [[w,x,y,z], ...]}}')
    if args.dim is not None and args.dim != 1:
        return _transform_d(args, data)
    fn_data = _require(data, "hermite", "transform input")
    nu_phi = float(_require(fn_data, "nu", "transform input.hermite"))
    coeffs = _require(fn_data, "coeffs", "transform input.hermite")
    try:
        phi = HermiteCoeffFunction(
            nu_phi, tuple(Quaternion.from_list(c) for c in coeffs))
    except (TypeError, ValueError) as exc:
        raise InputError(f"transform input.hermite.coeffs: {exc}")
    grid = _require(data, "grid", "transform input")
    raw_points = _require(grid, "points", "transform input.grid")
    points = []
    for i, item in enumerate(raw_points):
        if not (isinstance(item, list) and len(item) == 4):
            raise InputError(f"grid.points[{i}]: quaternions are [w, x, y, z]")
        points.append(Quaternion.from_list(item))

    if args.gamma is not None:
        def apply(q):
            return rbf_sb_transform(args.gamma, phi, q, args.normalization,
                                    quad_order=args.quad_order)
    elif args.nu is not None:
        def apply(q):
            return sb_transform(args.nu, phi, q, args.normalization,
                                quad_order=args.quad_order)
    else:
        raise InputError("transform: choose the target with --gamma "
                         "(RBF-side) or --nu (Fock-side)")

    lines = ["q.w,q.x,q.y,q.z,value.w,value.x,value.y,value.z"]
    for q in points:
        try:
            value = apply(q)
        except (TypeError, ValueError) as exc:
            raise InputError(f"transform: {exc}")
        lines.append(",".join(_fmt(v) for v in q.to_list() + value.to_list()))
    _write_lines(lines, args.output)
    return 0


def _parse_grid(text: str) -> np.ndarray:
    try:
        start, stop, count = text.split(":")
        return np.linspace(float(start), float(stop), int(count))
    except ValueError:
        raise InputError("grid must be start:stop:count")


def cmd_basis(args) -> int:
    xs = _parse_grid(args.grid)
    lines = []
    if args.family in ("hermite-h", "hermite-psi"):
        if args.nu is None:
            raise InputError("basis: hermite families need --nu")
        fn = hermite_h if args.family == "hermite-h" else hermite_psi
        lines.append("x," + ",".join(f"n{n}" for n in range(args.n_max + 1)))
        for x in xs:
            vals = [fn(args.nu, n, float(x)) for n in range(args.n_max + 1)]
            lines.append(_fmt(x) + "," + ",".join(_fmt(v) for v in vals))
    elif args.family == "rbf-c":
        if args.gamma is None:
            raise InputError("basis: rbf families need --gamma")
        lines.append("x," + ",".join(f"n{n}.re,n{n}.im"
                                     for n in range(args.n_max + 1)))
        for x in xs:
            z = complex(x, args.imag)
            row = [_fmt(x)]
            for n in range(args.n_max + 1):
                v = rbf_basis_c(args.gamma, n, z)
                row += [_fmt(v.real), _fmt(v.imag)]
            lines.append(",".join(row))
    elif args.family == "rbf-q":
        if args.gamma is None:
            raise InputError("basis: rbf families need --gamma")
        unit = ImaginaryUnit(1.0, 0.0, 0.0)
        lines.append("x," + ",".join(f"n{n}.{c}" for n in range(args.n_max + 1)
                                     for c in "wxyz"))
        for x in xs:
            q = Quaternion(float(x), args.imag, 0.0, 0.0)
            row = [_fmt(x)]
            for n in range(args.n_max + 1):
                row += [_fmt(v) for v in rbf_basis_q(args.gamma, n, q).to_list()]
            lines.append(",".join(row))
    else:
        raise InputError(f"basis: unknown family {args.family!r}")
    _write_lines(lines, args.output)
    return 0


def cmd_verify(args) -> int:
    only = None
    if args.only:
        only = [name.strip() for name in args.only.split(",")]
        unknown = [n for n in only if n not in CRITERIA]
        if unknown:
            raise InputError(f"verify: unknown criteria {unknown}; "
                             f"choose from {sorted(CRITERIA)}")
    cfg = VerifyConfig(gamma=args.gamma if args.gamma is not None else 1.0,
                       quad_order=args.quad_order,
                       normalization=args.normalization,
                       tol_scale=args.tol, seed=args.seed)
    results = run_all(cfg, only)
    payload = {"config": {"gamma": cfg.gamma, "quad_order": cfg.quad_order,
                          "normalization": cfg.normalization,
                          "tol_scale": cfg.tol_scale, "seed": cfg.seed},
               "checks": [r.to_json() for r in results],
               "passed": all(r.passed for r in results)}
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        sys.stdout.write(f"[{status}] {r.check} {r.params} "
                         f"value={r.value:.3e} bound={r.bound:.3e}\n")
    sys.stdout.write("verify: all checks passed\n" if payload["passed"]
                     else "verify: FAILURES present\n")
    return 0 if payload["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbffock",
        description="Gaussian RBF kernels, Fock spaces, and their transforms")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gamma", type=float, default=None,
                        help="Gaussian kernel width parameter")
    common.add_argument("--quad-order", type=int, default=DEFAULT_QUAD_ORDER,
                        help="Gauss-Hermite order, 8 to 512 (default 80)")
    common.add_argument("--dim", type=int, default=None,
                        help="dimension for quadrature-backed commands, "
                        "1 to 3")
    common.add_argument("--output", default=None, help="CSV output path "
                        "(stdout when omitted)")

    p = sub.add_parser("kernel", parents=[common],
                       help="evaluate kernel values for point pairs")
    p.add_argument("--input", required=True, help="JSON with kernel id, "
                   "parameters, and pairs")
    p.set_defaults(fn=cmd_kernel)

    p = sub.add_parser("gram", parents=[common],
                       help="assemble a kernel Gram matrix and certify PSD")
    p.add_argument("--input", required=True,
                   help="JSON with kernel id, parameters, and points")
    p.add_argument("--report", default=None, help="JSON report path")
    p.add_argument("--tol", type=float, default=None,
                   help="PSD tolerance (default size*eps*|G|)")
    p.set_defaults(fn=cmd_gram)

    p = sub.add_parser("transform", parents=[common],
                       help="apply a Segal-Bargmann-type transform")
    p.add_argument("--input", required=True,
                   help="JSON with the hermite-coefficient function and grid")
    p.add_argument("--nu", type=float, default=None,
                   help="Fock-side transform scale (alternative to --gamma)")
    p.add_argument("--normalization", choices=list(NORMALIZATIONS),
                   default="unitary")
    p.set_defaults(fn=cmd_transform)

    p = sub.add_parser("basis", parents=[common],
                       help="tabulate basis functions on a grid to CSV")
    p.add_argument("--family", required=True,
                   choices=["rbf-q", "rbf-c", "hermite-h", "hermite-psi"])
    p.add_argument("--nu", type=float, default=None)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--grid", default="-2:2:81", help="start:stop:count")
    p.add_argument("--imag", type=float, default=0.0,
                   help="imaginary offset of the evaluation line")
    p.set_defaults(fn=cmd_basis)

    p = sub.add_parser("verify", parents=[common],
                       help="run the full property-verification suite")
    p.add_argument("--normalization", choices=list(NORMALIZATIONS),
                   default="unitary")
    p.add_argument("--tol", type=float, default=1.0,
                   help="multiplier applied to every check bound")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--report", default=None, help="JSON report path")
    p.add_argument("--only", default=None,
                   help="comma-separated criterion names")
    p.set_defaults(fn=cmd_verify)
    return parser


def _validate_common(args) -> None:
    if getattr(args, "gamma", None) is not None and args.gamma <= 0:
        raise InputError("--gamma must be positive")
    if getattr(args, "nu", None) is not None and args.nu <= 0:
        raise InputError("--nu must be positive")
    if not 8 <= getattr(args, "quad_order", DEFAULT_QUAD_ORDER) <= 512:
        raise InputError("--quad-order must lie in [8, 512]")
    dim = getattr(args, "dim", None)
    if dim is not None and not 1 <= dim <= 3:
        raise InputError("--dim must lie in [1, 3]")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate_common(args)
        return args.fn(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
