"""Command-line front end: evaluation, asymptotic tables, Laurent/expansion
coefficient dumps, and verification-suite runs.

Output is deterministic: CSV (RFC 4180, header row, shortest round-trip
decimals) or JSON lines, with no timestamps unless --stamp is given.
Exit codes: 0 success, 1 failed verification checks, 2 usage/config
errors, 64 if any evaluation row failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import QfuncError
from .harness import SuiteConfig, asymptotic_decay_report, run_suite
from .qcalc import QBase, lattice_decompose
from .qexp import KindTag, lambda_laurent_table, lambda_product, qexp_eval
from .qbessel import (
    BesselSpec,
    bessel_value,
    type3_asymptotic_bracket,
    type3_coeff,
)

__all__ = ["OutputRecord", "main"]


@dataclass(frozen=True)
class OutputRecord:
    """One evaluated point, ready for CSV or JSON serialization."""

    function: str
    kind: int
    family: str
    nu: float
    q: float
    z_or_u: complex
    value: complex
    err_estimate: float
    error: str = ""


def _fmt(x: float) -> str:
    """Shortest decimal that round-trips to the same float."""
    return repr(float(x))


def _parse_complex(text: str) -> complex:
    """Parse 're' or 're,im' into a complex number."""
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected 're' or 're,im', got {text!r}")


_EVAL_HEADER = [
    "function",
    "kind",
    "family",
    "nu",
    "q",
    "arg_re",
    "arg_im",
    "value_re",
    "value_im",
    "err_estimate",
    "error",
]


def _record_row(r: OutputRecord) -> List[str]:
    return [
        r.function,
        str(r.kind),
        r.family,
        _fmt(r.nu) if r.family else "",
        _fmt(r.q),
        _fmt(r.z_or_u.real),
        _fmt(r.z_or_u.imag),
        _fmt(r.value.real),
        _fmt(r.value.imag),
        _fmt(r.err_estimate),
        r.error,
    ]


def _record_json(r: OutputRecord) -> str:
    return json.dumps(
        {
            "function": r.function,
            "kind": r.kind,
            "family": r.family,
            "nu": r.nu if r.family else None,
            "q": r.q,
            "arg": [r.z_or_u.real, r.z_or_u.imag],
            "value": [r.value.real, r.value.imag],
            "err_estimate": r.err_estimate,
            "error": r.error or None,
        },
        separators=(",", ":"),
    )


def _maybe_num(text: str):
    """Recover int/float typing for JSON output of tabular cells."""
    try:
        return int(text)
    except ValueError:
        try:
            return float(text)
        except ValueError:
            return text


def _emit_rows(header: List[str], rows: List[List[str]], fmt: str, out) -> None:
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\r\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        for row in rows:
            cells = [_maybe_num(c) for c in row]
            out.write(json.dumps(dict(zip(header, cells)), separators=(",", ":")) + "\n")


def _base_from_args(args) -> QBase:
    return QBase(args.q, tol=args.tol, max_terms=args.max_terms)


def _eval_args(args) -> List[complex]:
    points: List[complex] = []
    if args.u is not None:
        points.extend(args.u)
    if args.z is not None:
        points.extend(args.z)
    if args.grid is not None:
        start, stop, count = args.grid
        n = int(count)
        if n < 1:
            raise argparse.ArgumentTypeError("grid count must be >= 1")
        step = (stop - start) / (n - 1) if n > 1 else 0.0
        points.extend(complex(start + i * step, 0.0) for i in range(n))
    return points


def cmd_eval(args) -> int:
    fn = args.fn
    base = _base_from_args(args)
    points = _eval_args(args)
    if not points:
        print("error: no evaluation points given (--u/--z/--grid)", file=sys.stderr)
        return 2
    family = fn[6:] if fn.startswith("bessel") else ""
    if family and family not in ("J", "Y", "I", "K"):
        print(f"error: unknown function {fn!r}", file=sys.stderr)
        return 2
    records: List[OutputRecord] = []
    failed = False
    for p in points:
        value: complex = complex(math.nan, math.nan)
        err = 0.0
        msg = ""
        try:
            if fn == "qexp":
                sv = qexp_eval(KindTag.from_j(args.kind), p, base)
                value, err = sv.value, sv.err_estimate
            elif fn == "lambda":
                value = lambda_product(KindTag.from_j(args.kind), p, base)
            elif family:
                spec = BesselSpec(KindTag.from_j(args.kind), family, args.nu)
                sv = bessel_value(spec, p, base)
                value, err = sv.value, sv.err_estimate
            else:
                print(f"error: unknown function {fn!r}", file=sys.stderr)
                return 2
        except QfuncError as exc:
            msg = f"{type(exc).__name__}: {exc}"
            failed = True
        records.append(
            OutputRecord(
                function=fn,
                kind=args.kind,
                family=family,
                nu=args.nu if family else 0.0,
                q=args.q,
                z_or_u=p,
                value=value,
                err_estimate=err,
                error=msg,
            )
        )
    if args.format == "csv":
        _emit_rows(_EVAL_HEADER, [_record_row(r) for r in records], "csv", sys.stdout)
    else:
        for r in records:
            sys.stdout.write(_record_json(r) + "\n")
    return 64 if failed else 0


def cmd_asym(args) -> int:
    selector = args.selector
    head, _, tail = selector.partition(":")
    try:
        j = int(tail)
    except ValueError:
        print(f"error: selector must look like 'K:2' or 'qexp:1', got {selector!r}", file=sys.stderr)
        return 2
    if head not in ("qexp", "J", "Y", "I", "K") or j not in (1, 2, 3):
        print(f"error: unknown selector {selector!r}", file=sys.stderr)
        return 2
    n_range = list(range(args.n_start, args.n_stop - 1, -1))
    header = ["n", "exact_abs", "asym_abs", "rel_error"]
    kind3 = head != "qexp" and j == 3
    if kind3:
        header += ["ratio", "phi_min", "phi_max"]
    rows: List[List[str]] = []
    if n_range:
        base = QBase(args.q, tol=args.tol, max_terms=args.max_terms)
        report = asymptotic_decay_report(selector, (args.q, args.nu, args.lam), n_range)
        for n, rel in report:
            u = args.q ** (n + args.lam)
            pt = lattice_decompose(u, base)
            if head == "qexp":
                exact = qexp_eval(KindTag.from_j(j), u, base).value
                from .qexp import qexp_asymptotic

                leading = qexp_asymptotic(KindTag.from_j(j), pt, base).leading
                row = [str(n), _fmt(abs(exact)), _fmt(abs(leading)), _fmt(rel)]
            else:
                spec = BesselSpec(KindTag.from_j(j), head, args.nu)
                if j == 3:
                    exact = bessel_value(spec, u / (1.0 - args.q**2), base).value
                    est, br = type3_asymptotic_bracket(head, args.nu, pt, base)
                    leading = est.leading
                    ratio = abs(exact) / abs(leading)
                    row = [
                        str(n),
                        _fmt(abs(exact)),
                        _fmt(abs(leading)),
                        _fmt(rel),
                        _fmt(ratio),
                        _fmt(br.phi_min),
                        _fmt(br.phi_max),
                    ]
                else:
                    from .qbessel import bessel_asymptotic, bessel_reference

                    exact = bessel_reference(spec, u, base)
                    leading = bessel_asymptotic(spec, pt, base).leading
                    row = [str(n), _fmt(abs(exact)), _fmt(abs(leading)), _fmt(rel)]
            rows.append(row)
    _emit_rows(header, rows, args.format, sys.stdout)
    return 0


def cmd_laurent(args) -> int:
    base = QBase(args.q, tol=args.tol, max_terms=args.max_terms)
    if args.which == "lambda":
        table = lambda_laurent_table(KindTag.from_j(args.kind), args.window, base)
        header = ["l", "coeff"]
        rows = [[str(l), _fmt(table.coeffs[l])] for l in sorted(table.coeffs)]
    else:
        header = ["l", "sign", "c1", "c2", "c3"]
        rows = []
        for l in range(args.window, 0, -1):
            c = type3_coeff(l, "minus", args.nu, base)
            rows.append([str(-l), "minus", _fmt(c.c1), _fmt(c.c2), _fmt(c.c3)])
        for l in range(0, args.window + 1):
            c = type3_coeff(l, "plus", args.nu, base)
            rows.append([str(l), "plus", _fmt(c.c1), _fmt(c.c2), _fmt(c.c3)])
    _emit_rows(header, rows, args.format, sys.stdout)
    return 0


def _parse_config_file(path: str) -> SuiteConfig:
    kwargs = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, _, val = line.partition("=")
            key = key.strip()
            val = val.strip()
            if key == "q_grid":
                kwargs["q_grid"] = tuple(float(x) for x in val.split(",") if x)
            elif key == "nu_grid":
                kwargs["nu_grid"] = tuple(float(x) for x in val.split(",") if x)
            elif key == "lattice_points":
                pts = []
                for item in val.split(","):
                    if not item:
                        continue
                    n_s, _, lam_s = item.partition(":")
                    pts.append((int(n_s), float(lam_s)))
                kwargs["lattice_points"] = tuple(pts)
            elif key == "tol_pass":
                kwargs["tol_pass"] = float(val)
            elif key == "seed":
                kwargs["seed"] = int(val)
            else:
                raise ValueError(f"unknown config key {key!r}")
    return SuiteConfig(**kwargs)


def cmd_verify(args) -> int:
    if args.config is not None:
        try:
            config = _parse_config_file(args.config)
        except (OSError, ValueError) as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return 2
    else:
        config = SuiteConfig(seed=args.seed) if args.seed is not None else SuiteConfig()
    results = run_suite(config)
    payload = [
        {
            "check_id": r.check_id,
            "worst_residual": r.worst_residual,
            "location": r.location,
            "pass": r.passed,
        }
        for r in results
    ]
    if args.stamp:
        doc = {"generated_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()), "results": payload}
    else:
        doc = payload
    sys.stdout.write(json.dumps(doc, indent=2, allow_nan=True) + "\n")
    return 0 if all(r.passed for r in results) else 1


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--tol", type=float, default=1e-12)
    common.add_argument("--max-terms", type=int, default=100000)
    common.add_argument("--seed", type=int, default=None)

    parser = argparse.ArgumentParser(
        prog="qfunc",
        description="q-exponentials and q^2-Bessel functions: evaluation, "
        "asymptotics, expansion coefficients, and a verification suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate a function on points")
    p_eval.add_argument(
        "--fn",
        required=True,
        choices=("qexp", "lambda", "besselJ", "besselY", "besselI", "besselK"),
    )
    p_eval.add_argument("--kind", type=int, default=1, choices=(1, 2, 3))
    p_eval.add_argument("--nu", type=float, default=0.5)
    p_eval.add_argument("--q", type=float, required=True)
    p_eval.add_argument("--u", type=_parse_complex, action="append", help="argument 're' or 're,im'; repeatable")
    p_eval.add_argument("--z", type=_parse_complex, action="append", help="alias of --u for Bessel entry points")
    p_eval.add_argument(
        "--grid",
        type=float,
        nargs=3,
        metavar=("START", "STOP", "COUNT"),
        help="linear real grid of COUNT points",
    )
    p_eval.set_defaults(func=cmd_eval)

    p_asym = sub.add_parser("asym", parents=[common], help="asymptotic decay table")
    p_asym.add_argument("--selector", required=True, help="'qexp:j' or 'F:j' with F in J,Y,I,K")
    p_asym.add_argument("--q", type=float, required=True)
    p_asym.add_argument("--nu", type=float, default=0.25)
    p_asym.add_argument("--lam", type=float, default=0.3)
    p_asym.add_argument("--n-start", type=int, default=-2)
    p_asym.add_argument("--n-stop", type=int, default=-8)
    p_asym.set_defaults(func=cmd_asym)

    p_lau = sub.add_parser("laurent", parents=[common], help="dump coefficient tables")
    p_lau.add_argument("--which", choices=("lambda", "bessel"), default="lambda")
    p_lau.add_argument("--kind", type=int, default=1, choices=(1, 2, 3))
    p_lau.add_argument("--q", type=float, required=True)
    p_lau.add_argument("--nu", type=float, default=0.25)
    p_lau.add_argument("--window", type=int, default=10)
    p_lau.set_defaults(func=cmd_laurent)

    p_ver = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p_ver.add_argument("--config", help="flat key=value config file")
    p_ver.add_argument("--stamp", action="store_true", help="include a timestamp in the report")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
