"""Command-line front end.

Every subcommand writes one JSON report envelope to stdout (CSV instead with
``--format csv`` for matrices and spectra). Exit codes: 0 success, 1 domain
error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .algebra import FourGroup, Multivector, Ring, Signature, norm_form, scalar_part
from .binor import (
    binor_inf,
    binor_signature,
    binor_sum,
    binor_sup,
    binor_xand,
    binor_xor,
    complement_top,
    full_algebra_state,
    monomial_grade,
)
from .dirac import (
    MU_INDICES,
    MassMode,
    OctadConfig,
    build_toy_model,
    commutator_xp,
    eta_moduli_oracle,
    eta_spectrum,
    evolution_derivative_error,
    octad_factorization_check,
    time_spectrum,
    time_spectrum_oracle,
)
from .errors import CliffordError
from .expr import parse_expression, print_expression
from .hierarchy import (
    ConventionConfig,
    hierarchy_chain,
    match_paper_chain,
    reference_consistency,
    search_convention,
)
from .matrix_rep import OperatorMatrix, jordan_wigner_rep

COMMANDS = ("eval", "binor", "hierarchy", "rep", "dirac")

DEFAULTS = {
    "ring": "rational",
    "gens": 3,
    "signature": None,
    "max": 6,
    "form": "I",
    "square_rule": "Q",
    "notation": "PlusFirst",
    "n": 1,
    "tau": 1.0,
    "hbar": 1.0,
    "report": "time-spectrum",
    "mass_mode": "octad1",
    "time_index": 1,
    "delta": None,
    "seed": 0,
    "format": "json",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="clifflogic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", metavar="{" + ",".join(COMMANDS) + "}")

    def common(p):
        p.add_argument("--config", help="JSON file of option defaults (flags take precedence)")
        p.add_argument("--format", choices=["json", "csv"], default=None)

    p = sub.add_parser("eval", help="evaluate a Clifford expression")
    common(p)
    p.add_argument("expression")
    p.add_argument("--ring", choices=[r.value for r in Ring], default=None)
    p.add_argument("--gens", type=int, default=None, help="number of generators (all square +1)")
    p.add_argument("--signature", default=None, help="generator squares, e.g. '++-'")

    p = sub.add_parser("binor", help="binor logic operations over GF(2)")
    common(p)
    p.add_argument(
        "op", choices=["xor", "sum", "sup", "inf", "xand", "complement", "grade", "full"]
    )
    p.add_argument("operands", nargs="*")
    p.add_argument("--gens", type=int, default=None)

    p = sub.add_parser("hierarchy", help="iterated Clifford hierarchy and convention search")
    common(p)
    p.add_argument("--max", type=int, default=None)
    p.add_argument("--search", action="store_true", help="rank all 16 conventions")
    p.add_argument("--form", choices=[g.value for g in FourGroup], default=None)
    p.add_argument("--square-rule", choices=["Q", "MinusQ"], default=None)
    p.add_argument("--notation", choices=["PlusFirst", "MinusFirst"], default=None)

    p = sub.add_parser("rep", help="Jordan-Wigner generator matrices")
    common(p)
    p.add_argument("--gens", type=int, default=None)
    p.add_argument("--signature", default=None)

    p = sub.add_parser("dirac", help="finite Dirac toy model reports")
    common(p)
    p.add_argument("--n", type=int, default=None, help="octad count N")
    p.add_argument("--tau", type=float, default=None, help="chronon")
    p.add_argument("--hbar", type=float, default=None)
    p.add_argument("--signature", default=None, help="8 octad generator squares")
    p.add_argument(
        "--report",
        choices=["time-spectrum", "eta-spectrum", "commutators", "factorization", "evolution"],
        default=None,
    )
    p.add_argument("--mass-mode", choices=[m.value for m in MassMode], default=None)
    p.add_argument("--time-index", type=int, default=None)
    p.add_argument("--delta", type=float, default=None, help="finite-difference step")
    p.add_argument("--seed", type=int, default=None)
    return parser


def _options(args: argparse.Namespace) -> dict:
    config = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config file {args.config}: {exc}")
        if not isinstance(config, dict):
            raise UsageError("config file must hold a JSON object")
    opts = {}
    for key, default in DEFAULTS.items():
        value = getattr(args, key, None)
        opts[key] = value if value is not None else config.get(key, default)
    return opts


def _signature(opts: dict, fallback_gens: int) -> Signature:
    if opts["signature"] is not None:
        return Signature.parse(opts["signature"])
    return Signature.euclidean(int(opts["gens"] if opts["gens"] is not None else fallback_gens))


def _scalar_text(v) -> str | float:
    # floats stay numeric in JSON; exact scalars print as "a/b"
    return v if isinstance(v, float) else str(v)


def _terms(x: Multivector) -> list[dict]:
    return [
        {"blade": [i + 1 for i in range(x.sig.k) if bits >> i & 1], "coeff": _scalar_text(c)}
        for bits, c in sorted(x.items())
    ]


# -- subcommands --------------------------------------------------------------


def cmd_eval(args, opts) -> tuple[dict, dict, dict]:
    ring = Ring(opts["ring"])
    sig = _signature(opts, 3)
    value = parse_expression(args.expression, ring, sig)
    letters = ring is Ring.GF2
    results = {
        "expression": args.expression,
        "value": print_expression(value, letters=letters),
        "terms": _terms(value),
        "grades": sorted(value.grades()),
        "scalar_part": _scalar_text(scalar_part(value)),
    }
    if ring is not Ring.GF2:
        results["norm"] = {g.value: _scalar_text(norm_form(value, g)) for g in FourGroup}
    config = {"ring": ring.value, "signature": str(sig)}
    return config, results, {}


def cmd_binor(args, opts) -> tuple[dict, dict, dict]:
    sig = binor_signature(int(opts["gens"]))
    arity = {"complement": 1, "grade": 1, "full": 0}.get(args.op, 2)
    if len(args.operands) != arity:
        raise UsageError(f"binor {args.op} takes {arity} operand(s), got {len(args.operands)}")
    xs = [parse_expression(t, Ring.GF2, sig) for t in args.operands]
    ops = {
        "xor": binor_xor,
        "sum": binor_sum,
        "sup": binor_sup,
        "inf": binor_inf,
        "xand": binor_xand,
    }
    results: dict = {"op": args.op, "operands": [print_expression(x, letters=True) for x in xs]}
    if args.op in ops:
        value = ops[args.op](*xs)
    elif args.op == "complement":
        value = complement_top(xs[0])
    elif args.op == "grade":
        results["grade"] = monomial_grade(xs[0])
        return {"gens": sig.k}, results, {}
    else:
        value = full_algebra_state(sig)
    results["value"] = print_expression(value, letters=True)
    results["term_count"] = len(value)
    return {"gens": sig.k}, results, {}


def _convention(opts) -> ConventionConfig:
    return ConventionConfig.from_dict(
        {
            "form_variant": opts["form"],
            "square_rule": opts["square_rule"],
            "notation_order": opts["notation"],
        }
    )


def cmd_hierarchy(args, opts) -> tuple[dict, dict, dict]:
    n_max = int(opts["max"])
    results: dict = {"reference_consistency": reference_consistency()}
    if args.search:
        rows = search_convention(n_max)
        results["table"] = [report.to_dict() for _, report in rows]
        best = rows[0][1]
        results["best"] = best.to_dict()
        results["tied_best"] = [
            r.cfg.to_dict() for _, r in rows if r.n_matches == best.n_matches
        ]
        config = {"max": n_max, "search": True}
    else:
        cfg = _convention(opts)
        chain = hierarchy_chain(n_max, cfg)
        results["chain"] = [lv.to_dict() for lv in chain.levels]
        results["match"] = match_paper_chain(cfg, n_max).to_dict()
        config = {"max": n_max, "search": False, **cfg.to_dict()}
    return config, results, {}


def cmd_rep(args, opts) -> tuple[dict, dict, dict]:
    sig = _signature(opts, 2)
    rep = jordan_wigner_rep(sig)
    results = {"generators": sig.k, "spinor_dim": rep.spinor_dim, "faithful": rep.faithful}
    if opts["format"] == "csv":
        results["csv"] = _rep_csv(rep)
    return {"signature": str(sig)}, results, {"anticommutator_max_deviation": rep.deviation}


def _rep_csv(rep) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["generator", "row", "col", "re", "im"])
    for g, m in enumerate(rep.matrices, start=1):
        coo = m.tocoo()
        for r, c, v in sorted(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist())):
            w.writerow([g, r, c, repr(float(v.real) + 0.0), repr(float(v.imag) + 0.0)])
    return buf.getvalue()


def _spectrum_csv(report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["re", "im", "multiplicity"])
    for v, n in zip(report.values, report.multiplicities):
        w.writerow([repr(round(v.real, 12) + 0.0), repr(round(v.imag, 12) + 0.0), n])
    return buf.getvalue()


def cmd_dirac(args, opts) -> tuple[dict, dict, dict]:
    squares = Signature.parse(opts["signature"]).squares if opts["signature"] else (1,) * 8
    cfg = OctadConfig(
        N=int(opts["n"]),
        tau=float(opts["tau"]),
        hbar=float(opts["hbar"]),
        octad_squares=squares,
        time_index=int(opts["time_index"]),
        mass_mode=MassMode(opts["mass_mode"]),
    )
    report = opts["report"]
    results: dict = {"report": report}
    residuals: dict = {}
    needs_eig = report in ("time-spectrum", "eta-spectrum")
    ops = build_toy_model(cfg, eigensolve=needs_eig) if report != "factorization" else None
    if report == "time-spectrum":
        spec = time_spectrum(cfg, ops)
        results["spectrum"] = spec.to_dict()
        results["eigenvalues_over_tau"] = spec.extras["values_in_tau"]
        results["oracle"] = {str(k): v for k, v in time_spectrum_oracle(cfg.N).items()}
        residuals["max_eigenpair_residual"] = spec.max_residual
        residuals["integer_deviation"] = spec.extras["integer_deviation"]
    elif report == "eta-spectrum":
        spec = eta_spectrum(cfg, ops)
        results["spectrum"] = spec.to_dict()
        results["oracle_moduli"] = [str(m) for m in eta_moduli_oracle(cfg.N)]
        residuals["max_eigenpair_residual"] = spec.max_residual
    elif report == "commutators":
        rows = [commutator_xp(cfg, mu, nu, ops).to_dict() for mu in MU_INDICES for nu in MU_INDICES]
        results["commutators"] = rows
        residuals["max_fit_residual"] = max(r["residual"] for r in rows)
    elif report == "factorization":
        ok, dev = octad_factorization_check(cfg)
        results["factorizes"] = ok
        residuals["max_deviation"] = dev
    else:
        rng = np.random.default_rng(int(opts["seed"]))
        a = rng.normal(size=(cfg.dim, cfg.dim)) + 1j * rng.normal(size=(cfg.dim, cfg.dim))
        x = OperatorMatrix(a + a.conj().T)
        err = evolution_derivative_error(cfg, x, opts["delta"], ops)
        results["seed"] = int(opts["seed"])
        residuals["relative_derivative_error"] = err
    if opts["format"] == "csv" and needs_eig:
        results["csv"] = _spectrum_csv(spec)
    config = cfg.to_dict()
    if ops is not None:
        config["provenance"] = {k: v for k, v in ops.provenance.items() if k != "config"}
    return config, results, residuals


HANDLERS = {
    "eval": cmd_eval,
    "binor": cmd_binor,
    "hierarchy": cmd_hierarchy,
    "rep": cmd_rep,
    "dirac": cmd_dirac,
}


def envelope(command: str, config: dict, results: dict, residuals: dict, timestamp: bool = True) -> dict:
    env = {
        "command": command,
        "config": config,
        "results": results,
        "residuals": residuals,
        "tool_version": __version__,
    }
    if timestamp:
        env["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return env


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"


def run_command(argv: list[str]) -> tuple[int, str, str]:
    """Run one CLI invocation; returns ``(exit_code, stdout_text, stderr_text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage() + "clifflogic: error: a subcommand is required")
        opts = _options(args)
        config, results, residuals = HANDLERS[args.command](args, opts)
        if opts["format"] == "csv" and "csv" not in results:
            raise UsageError(f"--format csv is only available for matrices and spectra, not {args.command}")
    except UsageError as exc:
        text = str(exc)
        if not text.startswith("usage:"):
            text = f"clifflogic: error: {text}"
        return 2, "", f"{text}\n"
    except SystemExit as exc:
        # --help and --version
        return int(exc.code or 0), "", ""
    except CliffordError as exc:
        detail = {"type": type(exc).__name__, "message": str(exc)}
        for attr in ("line", "column"):
            if getattr(exc, attr, None) is not None:
                detail[attr] = getattr(exc, attr)
        err = {"command": argv[0] if argv else None, "error": detail}
        return 1, dumps(err), f"error: {exc}\n"
    csv_text = results.pop("csv", None)
    if csv_text is not None:
        return 0, csv_text, ""
    return 0, dumps(envelope(args.command, config, results, residuals)), ""


def main(argv: list[str] | None = None) -> int:
    code, out, err = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
