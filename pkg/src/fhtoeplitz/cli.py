"""Command-line entry point: ``fhtoeplitz {bulk,gap,dets,slepian,verify}``.

Exit status is 0 on success, 1 for invalid input and 2 when a numerical
consistency check (or an acceptance criterion) fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import acceptance, bulk, determinants, gap, slepian
from .errors import ConsistencyError, FHToeplitzError, PreconditionError, UnsupportedError
from .fourier import FourierSeries
from .oracle import toeplitz_determinant
from .symbols import (
    FHDescriptor,
    SmoothUnimodalSymbol,
    TwoLevelSymbol,
    named_symbol,
    near_period,
    parse_symbol_config,
)

BULK_COLUMNS = ["n", "j", "lambda_hat", "lambda_exact", "abs_error", "phase_residual"]
GAP_COLUMNS = [
    "n",
    "k",
    "lambda_hat",
    "lambda_exact",
    "pair_lambda_nq",
    "distance",
    "distance_times_n_log_n",
]
DETS_COLUMNS = ["n", "log_det_exact", "log_det_asymptotic", "rel_error", "fitted_slope"]
SLEPIAN_COLUMNS = ["c", "n", "k", "lambda_k", "target", "deviation"]

# symbols without singularities for the determinant table
DETS_BUILTINS = {
    "szego-cos": lambda: FourierSeries(np.array([0.5, 0.0, 0.5], dtype=complex)),
    "szego-anchor": determinants.szego_anchor,
    "identity": lambda: FourierSeries(np.array([0.0], dtype=complex)),
}


@dataclass
class RunConfig:
    subcommand: str
    symbol: object = None
    symbol_name: str = ""
    n_list: list = field(default_factory=list)
    eps: float = 0.1
    out: Path | None = None
    fmt: str = "csv"
    seed: int = acceptance.DEFAULT_SEED
    extra: dict = field(default_factory=dict)


class CliError(Exception):
    def __init__(self, message: str, status: int = 1):
        super().__init__(message)
        self.status = status


# ---------------------------------------------------------------- output


def _cell(x):
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return "" if math.isnan(x) else repr(float(x))
    return str(x)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return None if math.isnan(x) else x
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    return x


def _render(columns, rows, fmt: str, extra: dict | None = None) -> str:
    if fmt == "json":
        doc = {"columns": columns, "rows": [{c: _jsonable(r.get(c)) for c in columns} for r in rows]}
        if extra:
            doc.update(_jsonable(extra))
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def _emit(cfg: RunConfig, text: str, suffix: str = "") -> None:
    if cfg.out is None:
        # side reports need a file to go to
        if not suffix:
            sys.stdout.write(text)
        return
    path = cfg.out if not suffix else cfg.out.with_name(cfg.out.stem + suffix)
    path.write_text(text)


# ---------------------------------------------------------------- commands


def cmd_bulk(cfg: RunConfig) -> int:
    sym = cfg.symbol
    if not isinstance(sym, SmoothUnimodalSymbol):
        raise CliError("bulk: smooth symbol required")
    rows, reports = [], []
    for n in cfg.n_list:
        pred = bulk.predict_bulk_spectrum(sym, n)
        exact = bulk.exact_spectrum(sym, n)
        for j, lam, ex, res in zip(pred.j, pred.lam_hat, exact, pred.phase_residual):
            rows.append(
                {"n": n, "j": j, "lambda_hat": lam, "lambda_exact": ex, "abs_error": abs(lam - ex), "phase_residual": res}
            )
        reports.append(bulk.corollary_report(sym, n, cfg.eps, eigenvalues=exact).to_dict())
    if cfg.fmt == "json":
        _emit(cfg, _render(BULK_COLUMNS, rows, "json", {"symbol": cfg.symbol_name, "corollary": reports}))
    else:
        _emit(cfg, _render(BULK_COLUMNS, rows, "csv"))
        _emit(cfg, json.dumps(_jsonable({"corollary": reports}), indent=2, sort_keys=True) + "\n", ".corollary.json")
    return 0


def cmd_gap(cfg: RunConfig) -> int:
    sym = cfg.symbol
    if not isinstance(sym, TwoLevelSymbol):
        raise CliError("gap: two-level symbol required")
    if sym.rational_arc is None:
        raise UnsupportedError("gap: the arc length must be 2*pi*p/q (give p and q)")
    q = near_period(sym)
    p = sym.rational_arc[0]
    rows, summary = [], []
    for n in cfg.n_list:
        pred = gap.predict_gap_spectrum(sym, n, cfg.eps)
        exact = gap.exact_gap_spectrum(sym, n, cfg.eps)
        partner = gap.exact_gap_spectrum(sym, n + q, cfg.eps / 2)
        match = gap.match_near_periodic(exact, partner, q, p)
        ex_by_k = exact.by_label()
        pair_by_k = {k: lam_q for k, _, lam_q, _ in match.pairs}
        labels = sorted(set(int(k) for k in pred.k) | set(ex_by_k))
        pred_by_k = pred.by_label()
        scale = n * math.log(n)
        for k in labels:
            lam_ex = ex_by_k.get(k)
            lam_q = pair_by_k.get(k)
            dist = abs(lam_ex - lam_q) if lam_ex is not None and lam_q is not None else None
            rows.append(
                {
                    "n": n,
                    "k": k,
                    "lambda_hat": pred_by_k.get(k),
                    "lambda_exact": lam_ex,
                    "pair_lambda_nq": lam_q,
                    "distance": dist,
                    "distance_times_n_log_n": None if dist is None else dist * scale,
                }
            )
        summary.append(
            {"n": n, "q": q, "p": p, "max_distance_n_log_n": match.scaled_max(), "unmatched": match.unmatched}
        )
    if cfg.fmt == "json":
        _emit(cfg, _render(GAP_COLUMNS, rows, "json", {"q": q, "p": p, "matches": summary}))
    else:
        _emit(cfg, _render(GAP_COLUMNS, rows, "csv"))
        print(f"near period q = {q}", file=sys.stderr)
    return 0


def cmd_dets(cfg: RunConfig) -> int:
    sym = cfg.symbol
    rows = []
    extra = {"symbol": cfg.symbol_name}
    if isinstance(sym, FourierSeries):
        for r in determinants.szego_check(sym, cfg.n_list):
            rel = r["abs_error"] / max(abs(r["limit"]), 1e-300) if r["limit"] != 0 else r["abs_error"]
            rows.append(
                {
                    "n": r["n"],
                    "log_det_exact": r["log_det"],
                    "log_det_asymptotic": r["limit"],
                    "rel_error": rel,
                }
            )
        slope = _slope([r["n"] for r in rows], [abs(r["log_det_exact"] - r["log_det_asymptotic"]) for r in rows])
    elif isinstance(sym, FHDescriptor):
        # no exact coefficients for a general descriptor: asymptotic column only
        for n in cfg.n_list:
            a = determinants.asymptotic_log_det(sym, n)
            rows.append({"n": n, "log_det_exact": None, "log_det_asymptotic": a.log_magnitude, "rel_error": None})
        slope = None
    else:
        lam = cfg.extra.get("lam")
        if lam is None:
            lam = 0.5 * (sym.L + sym.M) if isinstance(sym, SmoothUnimodalSymbol) else 0.5 * (1 + sym.high)
        conv = determinants.log_det_convergence(sym, lam, cfg.n_list)
        for r in conv["rows"]:
            rows.append({k: r[k] for k in ("n", "log_det_exact", "log_det_asymptotic", "rel_error")})
        slope = conv["fitted_slope"] if len(cfg.n_list) > 1 else None
        extra.update({"lambda": lam, "seminorm": conv["seminorm"], "error_order": conv["error_order"]})
    for r in rows:
        r["fitted_slope"] = slope
    _emit(cfg, _render(DETS_COLUMNS, rows, cfg.fmt, extra if cfg.fmt == "json" else None))
    return 0


def _slope(ns, errs):
    errs = np.asarray(errs, dtype=float)
    if len(ns) < 2 or np.any(errs <= 0):
        return None
    return determinants.fit_loglog_slope(ns, errs)


def cmd_slepian(cfg: RunConfig) -> int:
    cs = cfg.extra.get("c") or [16.0, 64.0, 256.0]
    rep = slepian.slepian_limit_check(cs, b=cfg.extra.get("b", 0.0), delta=cfg.extra.get("delta", slepian.DEFAULT_DELTA))
    extra = {"indexing": rep.indexing, "monotone": rep.monotone, "final_deviation": rep.final_deviation, "b": rep.b}
    _emit(cfg, _render(SLEPIAN_COLUMNS, rep.rows, cfg.fmt, extra if cfg.fmt == "json" else None))
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    numbers = cfg.extra.get("criteria")
    if cfg.extra.get("quick"):
        numbers = [c.number for c in acceptance.ALL if c.number not in acceptance.SLOW and (numbers is None or c.number in numbers)]
    results = acceptance.run(numbers, echo=lambda line: print(line, flush=True), seed=cfg.seed)
    if cfg.out is not None or cfg.fmt == "json":
        doc = [
            {"criterion": r.number, "title": r.title, "passed": r.passed, "seconds": r.seconds, "details": r.details}
            for r in results
        ]
        text = json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"
        if cfg.out is not None:
            cfg.out.write_text(text)
        else:
            sys.stdout.write(text)
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed", flush=True)
    return 2 if failed else 0


COMMANDS = {"bulk": cmd_bulk, "gap": cmd_gap, "dets": cmd_dets, "slepian": cmd_slepian, "verify": cmd_verify}
DEFAULT_SYMBOL = {"bulk": "tridiag3", "gap": "twolevel-p1q4", "dets": "szego-cos"}
DEFAULT_N = {"bulk": [64], "gap": [128, 256], "dets": [16, 32, 64]}


# ---------------------------------------------------------------- argument handling


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("sizes must be positive integers")
    return vals


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--symbol", help="built-in symbol name")
    common.add_argument("--config", type=Path, help="symbol definition file (key = value lines)")
    common.add_argument("--n", type=_int_list, help="comma-separated matrix sizes")
    common.add_argument("--eps", type=float, default=0.1)
    common.add_argument("--out", type=Path, help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    common.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)

    parser = _Parser(prog="fhtoeplitz", description="Toeplitz eigenvalue asymptotics against exact oracles.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    sub.add_parser("bulk", parents=[common], help="bulk eigenvalues of a smooth symbol")
    sub.add_parser("gap", parents=[common], help="gap eigenvalues and near-periodicity of a two-level symbol")
    p = sub.add_parser("dets", parents=[common], help="determinant asymptotics table")
    p.add_argument("--lam", type=float, help="shift lambda for symbols with a spectrum")
    p = sub.add_parser("slepian", parents=[common], help="Slepian limit sweep")
    p.add_argument("--c", type=_float_list, help="comma-separated bandwidth parameters c")
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--delta", type=float, default=slepian.DEFAULT_DELTA)
    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--quick", action="store_true", help="skip the slow criteria 5, 6 and 9")
    p.add_argument("--criteria", type=_int_list, help="comma-separated criterion numbers")
    return parser


def _resolve_symbol(args) -> tuple[object, str]:
    if args.config is not None:
        if args.symbol:
            raise CliError("give either --symbol or --config, not both")
        try:
            text = args.config.read_text()
        except OSError as exc:
            raise CliError(f"cannot read config: {exc}") from None
        sym = parse_symbol_config(text)
        name = getattr(sym, "name", "") or (sym.meta.get("name", "") if isinstance(sym, FHDescriptor) else "")
        return sym, name or str(args.config)
    name = args.symbol or DEFAULT_SYMBOL.get(args.subcommand)
    if name is None:
        return None, ""
    if args.subcommand == "dets" and name in DETS_BUILTINS:
        return DETS_BUILTINS[name](), name
    return named_symbol(name), name


def make_config(argv=None) -> RunConfig:
    args = build_parser().parse_args(argv)
    sym, name = _resolve_symbol(args) if args.subcommand not in ("slepian", "verify") else (None, "")
    extra = {}
    for key in ("lam", "c", "b", "delta", "quick", "criteria"):
        if hasattr(args, key):
            extra[key] = getattr(args, key)
    if args.subcommand == "slepian" and args.symbol:
        raise CliError("slepian takes no --symbol; the symbol is the indicator of the arc delta*T")
    return RunConfig(
        subcommand=args.subcommand,
        symbol=sym,
        symbol_name=name,
        n_list=args.n or DEFAULT_N.get(args.subcommand, []),
        eps=args.eps,
        out=args.out,
        fmt=args.fmt,
        seed=args.seed,
        extra=extra,
    )


def main(argv=None) -> int:
    try:
        cfg = make_config(argv)
        return COMMANDS[cfg.subcommand](cfg)
    except CliError as exc:
        print(exc, file=sys.stderr)
        return exc.status
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return 2
    except (FHToeplitzError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
