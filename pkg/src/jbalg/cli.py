"""Command-line front end.

Four subcommands: ``compute`` evaluates a named binary expression on two
element files, ``verify`` runs registry entries and writes chain reports,
``gen`` writes random fixtures (single elements or dominated pairs), and
``report`` aggregates a directory of chain reports into a summary table.

Exit codes: 0 success; verify/report return the number of failing links
(clamped to 250); 2 domain/positivity/parameter errors; 3 sampler failure;
4 unknown registry id; 5 malformed report file.  Errors print one JSON line
to standard error: {"error": <class>, "message": <text>}.

All numeric output goes through the deterministic 17-significant-digit
serializer, so identical seeds produce byte-identical files.  JE_THREADS
caps verification parallelism (0 or unset = serial); parallel runs reduce
to the same reports as serial ones.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .calculus import spectrum
from .elements import (
    JordanElement,
    albert,
    element_from_dict,
    element_to_dict,
    spin_factor,
    sym_matrix,
)
from .entropy import (
    BoundKind,
    EntropyParams,
    ab_geometric_mean,
    bound_expr,
    geometric_mean,
    harmonic_mean,
    rel_entropy,
    rel_entropy_ab,
    rel_entropy_xlogx,
    tsallis,
    tsallis_lb,
)
from .errors import (
    DomainError,
    IncompatibleAlgebrasError,
    InvalidElementError,
    JBAlgError,
    ParameterError,
    PositivityError,
    ReportFormatError,
    SamplerError,
    SingularityError,
    UnknownIdError,
)
from .orders import hypothesis_pair, random_positive
from .quadrature import (
    QuadratureConfig,
    quad_integral_S,
    quad_integral_T,
    quad_integral_geo,
)
from .registry import (
    default_run_ids,
    get_entry,
    report_dumps,
    report_from_dict,
    run_entry,
)

__all__ = ["main"]

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_SAMPLER = 3
EXIT_UNKNOWN_ID = 4
EXIT_BAD_REPORT = 5
# Failing-link counts share the 8-bit exit space with the error codes above;
# clamping below 251 keeps large counts from wrapping around to 0.
MAX_FAIL_EXIT = 250

_DOMAIN_ERRORS = (
    DomainError,
    PositivityError,
    SingularityError,
    ParameterError,
    InvalidElementError,
    IncompatibleAlgebrasError,
)

EXPRESSIONS = (
    "S",
    "T",
    "S_ab",
    "T_lb",
    "geo",
    "ab_geo",
    "harm",
    "xlogx",
    "bound:I",
    "bound:II",
    "bound:III",
    "bound:IV",
    "bound:V",
    "bound:Id",
    "bound:IId",
    "bound:IIId",
    "bound:Vd",
    "quad:S",
    "quad:T",
    "quad:geo",
)


def _emit_error(exc: BaseException) -> None:
    line = json.dumps({"error": type(exc).__name__, "message": str(exc)})
    print(line, file=sys.stderr)


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _require(value, flag: str):
    if value is None:
        raise ParameterError(f"this expression requires {flag}")
    return value


def _load_element(path: str) -> JordanElement:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InvalidElementError(f"cannot read element file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidElementError(f"element file {path!r} is not JSON: {exc}") from exc
    # gen wraps elements in fixture objects; accept those directly too.
    if isinstance(data, dict) and "element" in data:
        data = data["element"]
    return element_from_dict(data)


def _algebra_from_flags(backend: str, dim: int | None):
    if backend == "albert":
        return albert()
    if dim is None:
        raise ParameterError(f"--dim is required for backend {backend!r}")
    if backend == "sym":
        return sym_matrix(dim)
    if backend == "spin":
        return spin_factor(dim)
    raise ParameterError(f"unknown backend {backend!r}")


# ---------------------------------------------------------------------------
# compute

def _evaluate(name, a, b, args):
    """Returns (result element, params actually consumed)."""
    if name == "S":
        return rel_entropy(a, b), {}
    if name == "T":
        lam = _require(args.lam, "--lambda")
        return tsallis(a, b, lam), {"lambda": lam}
    if name == "S_ab":
        alpha = _require(args.alpha, "--alpha")
        beta = _require(args.beta, "--beta")
        return rel_entropy_ab(a, b, alpha, beta), {"alpha": alpha, "beta": beta}
    if name == "T_lb":
        lam = _require(args.lam, "--lambda")
        beta = _require(args.beta, "--beta")
        return tsallis_lb(a, b, lam, beta), {"lambda": lam, "beta": beta}
    if name == "geo":
        lam = _require(args.lam, "--lambda")
        return geometric_mean(a, b, lam), {"lambda": lam}
    if name == "ab_geo":
        alpha = _require(args.alpha, "--alpha")
        beta = _require(args.beta, "--beta")
        return ab_geometric_mean(a, b, alpha, beta), {"alpha": alpha, "beta": beta}
    if name == "harm":
        # the weight t in [0, 1] rides the --lambda flag
        lam = _require(args.lam, "--lambda")
        return harmonic_mean(a, b, lam), {"lambda": lam}
    if name == "xlogx":
        return rel_entropy_xlogx(a, b), {}
    if name.startswith("bound:"):
        try:
            kind = BoundKind(name.split(":", 1)[1])
        except ValueError:
            raise ParameterError(f"unknown bound kind {name!r}") from None
        params = EntropyParams(
            alpha=args.alpha, beta=args.beta, lam=args.lam, delta=args.delta
        )
        return bound_expr(kind, a, b, params), params.to_dict()
    if name.startswith("quad:"):
        config = QuadratureConfig(nodes=args.nodes)
        which = name.split(":", 1)[1]
        if which == "S":
            return quad_integral_S(a, b, config), {"nodes": args.nodes}
        lam = _require(args.lam, "--lambda")
        if which == "T":
            return quad_integral_T(a, b, lam, config), {
                "lambda": lam, "nodes": args.nodes,
            }
        if which == "geo":
            return quad_integral_geo(a, b, lam, config), {
                "lambda": lam, "nodes": args.nodes,
            }
        raise ParameterError(f"unknown quadrature expression {name!r}")
    raise ParameterError(
        f"unknown expression {name!r}; choose one of {', '.join(EXPRESSIONS)}"
    )


def cmd_compute(args) -> int:
    a = _load_element(args.operands[0])
    b = _load_element(args.operands[1])
    result, params = _evaluate(args.expression, a, b, args)
    sp = spectrum(result)
    payload = {
        "expression": args.expression,
        "params": params,
        "result": element_to_dict(result),
        "spectrum": {
            "values": list(sp.values),
            "multiplicities": list(sp.multiplicities),
        },
    }
    _write_text(args.out, report_dumps(payload) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

def _parse_dims(raw: str | None):
    if raw is None:
        return None
    try:
        dims = tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError:
        raise ParameterError(f"--dim expects an integer or comma list, got {raw!r}")
    if not dims:
        raise ParameterError(f"--dim expects an integer or comma list, got {raw!r}")
    return dims


def _entry_backends(entry, selector: str | None):
    if "scalar" in entry.backends:
        return ("scalar",) if selector in (None, "scalar") else ()
    if selector is None:
        return entry.backends
    return (selector,) if selector in entry.backends else ()


def cmd_verify(args) -> int:
    dims = _parse_dims(args.dim)
    run_all = args.target == "all"
    ids = default_run_ids() if run_all else (args.target,)

    reports = []
    for eid in ids:
        entry = get_entry(eid)
        backends = _entry_backends(entry, args.backend)
        if not run_all:
            if not backends:
                raise ParameterError(
                    f"entry {eid!r} supports backends {entry.backends}, "
                    f"got {args.backend!r}"
                )
            if args.backend is None:
                backends = backends[:1]
        for kind in backends:
            rep = run_entry(
                eid,
                None if kind == "scalar" else kind,
                dims=dims,
                trials=args.trials,
                cond=args.cond,
                seed=args.seed,
                tol=args.tol,
                negate=args.negate,
            )
            reports.append(rep)
            if run_all:
                status = "pass" if rep.passed else "FAIL"
                print(
                    f"{eid} [{kind}] {status} ({rep.trials} trials)",
                    file=sys.stderr,
                )

    if run_all or len(reports) > 1:
        if args.out is not None:
            out_dir = Path(args.out)
            out_dir.mkdir(parents=True, exist_ok=True)
            for rep in reports:
                name = f"{rep.theorem_id}_{rep.backend['algebra']}.json"
                (out_dir / name).write_text(rep.to_json() + "\n", encoding="utf-8")
        else:
            body = report_dumps([rep.to_dict() for rep in reports])
            sys.stdout.write(body + "\n")
    else:
        _write_text(args.out, reports[0].to_json() + "\n")

    failing = sum(rep.failing_links() for rep in reports)
    return min(failing, MAX_FAIL_EXIT)


# ---------------------------------------------------------------------------
# gen

_HYPOTHESIS_ALIASES = {
    "A^b<=B": "leq",
    "A^b>=B": "geq",
    "leq": "leq",
    "geq": "geq",
}


def cmd_gen(args) -> int:
    algebra = _algebra_from_flags(args.backend, args.dim)
    if args.what == "element":
        x = random_positive(algebra, args.cond, args.seed)
        payload = {
            "kind": "element",
            "backend": args.backend,
            "cond": args.cond,
            "seed": args.seed,
            "element": element_to_dict(x),
        }
    else:
        direction = _HYPOTHESIS_ALIASES.get(args.hypothesis)
        if direction is None:
            raise ParameterError(
                f"unknown hypothesis {args.hypothesis!r}; "
                f"use 'A^b<=B' or 'A^b>=B'"
            )
        a, b = hypothesis_pair(
            algebra,
            args.seed,
            beta=args.beta,
            delta=args.delta,
            direction=direction,
            cond=args.cond,
        )
        payload = {
            "kind": "pair",
            "hypothesis": args.hypothesis,
            "backend": args.backend,
            "beta": args.beta,
            "delta": args.delta,
            "cond": args.cond,
            "seed": args.seed,
            "a": element_to_dict(a),
            "b": element_to_dict(b),
        }
    _write_text(args.out, report_dumps(payload) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# report

def _summary_row(rep) -> dict:
    margins = [
        link["worst_margin"]
        for link in rep.links
        if link["worst_margin"] is not None
    ]
    return {
        "theorem_id": rep.theorem_id,
        "backend": rep.backend["algebra"],
        "dim": "|".join(str(d) for d in rep.backend["dims"]),
        "trials": rep.trials,
        "worst_margin": min(margins) if margins else None,
        "verdict": "pass" if rep.passed else "fail",
    }


_CSV_COLUMNS = ("theorem_id", "backend", "dim", "trials", "worst_margin", "verdict")


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def cmd_report(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        raise ReportFormatError(str(directory), "not a directory")
    rows = []
    failing = 0
    for path in sorted(directory.glob("*.json")):
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            rep = report_from_dict(data)
        except (json.JSONDecodeError, OSError, JBAlgError) as exc:
            reason = getattr(exc, "reason", None) or str(exc)
            raise ReportFormatError(str(path), reason) from exc
        rows.append(_summary_row(rep))
        failing += rep.failing_links()

    if args.format == "json":
        body = report_dumps(rows) + "\n"
    else:
        lines = [",".join(_CSV_COLUMNS)]
        for row in rows:
            lines.append(",".join(_csv_cell(row[c]) for c in _CSV_COLUMNS))
        body = "\n".join(lines) + "\n"
    _write_text(args.out, body)
    return min(failing, MAX_FAIL_EXIT)


# ---------------------------------------------------------------------------
# parser

def _add_param_flags(sub) -> None:
    sub.add_argument("--alpha", type=float, default=None)
    sub.add_argument("--beta", type=float, default=None)
    sub.add_argument("--lambda", dest="lam", type=float, default=None)
    sub.add_argument("--delta", type=float, default=None)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jbalg",
        description=(
            "Evaluate operator-entropy expressions on JB-algebra elements "
            "and verify operator-inequality chains."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_compute = subs.add_parser(
        "compute", help="evaluate a named expression on two element files"
    )
    p_compute.add_argument("expression", metavar="EXPR")
    p_compute.add_argument("operands", metavar="FILE", nargs=2)
    _add_param_flags(p_compute)
    p_compute.add_argument("--nodes", type=int, default=128)
    p_compute.add_argument("--out", default=None)
    p_compute.add_argument("--format", choices=("json",), default="json")
    p_compute.set_defaults(func=cmd_compute)

    p_verify = subs.add_parser(
        "verify", help="run one registry entry (or all) and emit chain reports"
    )
    p_verify.add_argument("target", metavar="ID|all")
    p_verify.add_argument("--backend", choices=("sym", "spin", "albert", "scalar"))
    p_verify.add_argument("--dim", default=None, help="dimension or comma list")
    p_verify.add_argument("--trials", type=int, default=None)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--tol", type=float, default=None)
    p_verify.add_argument("--cond", type=float, default=None)
    p_verify.add_argument("--negate", action="store_true")
    p_verify.add_argument("--out", default=None, help="file (single id) or directory (all)")
    p_verify.add_argument("--format", choices=("json",), default="json")
    p_verify.set_defaults(func=cmd_verify)

    p_gen = subs.add_parser(
        "gen", help="generate a random positive element or dominated pair"
    )
    p_gen.add_argument("what", choices=("element", "pair"))
    p_gen.add_argument("--backend", choices=("sym", "spin", "albert"), required=True)
    p_gen.add_argument("--dim", type=int, default=None)
    p_gen.add_argument("--cond", type=float, default=10.0)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--hypothesis", default="A^b<=B")
    p_gen.add_argument("--beta", type=float, default=1.0)
    p_gen.add_argument("--delta", type=float, default=1.0)
    p_gen.add_argument("--out", default=None)
    p_gen.add_argument("--format", choices=("json",), default="json")
    p_gen.set_defaults(func=cmd_gen)

    p_report = subs.add_parser(
        "report", help="aggregate a directory of chain reports into a summary"
    )
    p_report.add_argument("directory", metavar="DIR")
    p_report.add_argument("--format", choices=("csv", "json"), default="csv")
    p_report.add_argument("--out", default=None)
    p_report.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _DOMAIN_ERRORS as exc:
        _emit_error(exc)
        return EXIT_DOMAIN
    except SamplerError as exc:
        _emit_error(exc)
        return EXIT_SAMPLER
    except UnknownIdError as exc:
        _emit_error(exc)
        return EXIT_UNKNOWN_ID
    except ReportFormatError as exc:
        _emit_error(exc)
        return EXIT_BAD_REPORT
    except OSError as exc:
        _emit_error(exc)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
