"""``sck``: command-line driver.

Exit codes: 0 ok or verified, 1 usage or parse error, 2 violated, 3 inconclusive.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__, kernels
from .checker import (INCONCLUSIVE, VIOLATED, check_empty_chart_family, check_no_monomial_relations,
                      check_sc_axiom)
from .construct import (MIN_EXPONENTS, ConstructionError, build_amenability_witness, build_free_pair,
                        verify_amenability_witness, verify_free_pair, verify_product_measure_bound,
                        unique_factorization_check)
from .cover import chart, min_cov
from .measure import INF, lambda_measure, small_pieces
from .presentation import BUNDLED, PresentationError, bundled_path, load_presentation
from .relset import ClosureOverflow
from .words import WordSyntaxError

SCHEMA = "sck-report/1"
EXIT_OK, EXIT_USAGE, EXIT_VIOLATED, EXIT_INCONCLUSIVE = 0, 1, 2, 3
NVIRT_CAVEAT = "nvirt_proxy counts chart members; it is not the virtual chart size"

log = logging.getLogger("scring")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    path: str
    tau: int
    bound: int
    n_max: int = 2
    coeff_bound: int = 3
    search_len: int | None = None
    max_len: int = 40
    fmt: str = "text"
    seed: int = 0
    jobs: int = 1
    strict: bool = False
    emit_trace: bool = False
    cap: int = 2_000_000

    def to_dict(self) -> dict:
        return {"presentation": self.path, "tau": self.tau, "bound": self.bound, "n_max": self.n_max,
                "coeff_bound": self.coeff_bound, "search_len": self.search_len,
                "max_len": self.max_len, "seed": self.seed, "strict": self.strict, "cap": self.cap}


def _measure(v):
    return "inf" if v == INF else int(v)


def _words(alphabet, ws) -> list:
    return [alphabet.format(w) for w in sorted(ws, key=lambda t: (len(t), t))]


def _parse_word(pres, text: str):
    try:
        return pres.alphabet.parse(text)
    except WordSyntaxError as e:
        raise UsageError(f"--word: {e}") from None


# commands return (result dict, exit code)

def cmd_close(pres, rs, cfg, args):
    return {"members": len(rs), "saturated": rs.saturated, "cutoffs": rs.cutoffs,
            "mon_size": len(rs.mon), "max_monomial_length": rs.max_monomial_length,
            "seeds": len(rs.seeds), "field": repr(pres.field)}, EXIT_OK


def _table(rs, cfg):
    return small_pieces(rs, cfg.tau, strict=cfg.strict)


def cmd_pieces(pres, rs, cfg, args):
    pt = _table(rs, cfg)
    a = pres.alphabet
    return {"counts": pt.counts(), "pieces": _words(a, pt.pieces), "prime_pieces": _words(a, pt.prime_pieces),
            "unknown": _words(a, pt.unknown), "coarsened": pt.coarsened, "saturated": rs.saturated,
            "prime_subword_closed": not pt.prime_subword_violations(),
            "transport_window": _measure(pt.window)}, EXIT_OK


def cmd_lambda(pres, rs, cfg, args):
    pt = _table(rs, cfg)
    u = _parse_word(pres, args.word)
    variant = "prime" if args.prime else "plain"
    return {"word": pres.alphabet.format(u), "variant": variant,
            "value": _measure(lambda_measure(u, pt, variant)),
            "optimistic_value": _measure(lambda_measure(u, pt, variant, optimistic=True)),
            "coarsened": pt.coarsened}, EXIT_OK


def _occ(a, o, m=None):
    d = {"start": o.start, "length": o.length, "word": a.format(o.word)}
    if m is not None:
        d["measure"] = _measure(m)
    return d


def cmd_chart(pres, rs, cfg, args):
    pt = _table(rs, cfg)
    u = _parse_word(pres, args.word)
    variant = "prime" if args.prime else "plain"
    ch = chart(u, pt, rs, variant, cfg.tau)
    a = pres.alphabet
    return {"word": a.format(u), "variant": variant, "tau": cfg.tau,
            "maximal_occurrences": [_occ(a, o, m) for o, m in zip(ch.maximal_occurrences, ch.measures)],
            "chart": [_occ(a, o) for o in ch.chart_members], "empty": ch.empty,
            "nvirt_proxy": ch.nvirt_proxy, "nvirt_caveat": NVIRT_CAVEAT, "coarsened": ch.coarsened}, EXIT_OK


def cmd_mincov(pres, rs, cfg, args):
    u = _parse_word(pres, args.word)
    rep = min_cov(u, rs)
    a = pres.alphabet
    return {"word": a.format(u), "min_cov": rep.min_cov, "covered_positions": sorted(rep.covered_positions),
            "witness": [_occ(a, o) for o in rep.witness]}, EXIT_OK


def _verdict_code(verdict: str) -> int:
    return {VIOLATED: EXIT_VIOLATED, INCONCLUSIVE: EXIT_INCONCLUSIVE}.get(verdict, EXIT_OK)


def cmd_check(pres, rs, cfg, args):
    if args.axiom == "monrel":
        rep = check_no_monomial_relations(rs)
    elif args.axiom == "sc":
        pt = _table(rs, cfg)
        rep = check_sc_axiom(rs, pt, n_max=cfg.n_max, variant="prime" if args.prime else "plain",
                             coeff_bound=cfg.coeff_bound, cap=args.cap, pool=args.pool, mode=args.mode)
    else:
        pt = _table(rs, cfg)
        if args.word:
            ws = [_parse_word(pres, w) for w in args.word]
        else:
            fp = build_free_pair(rs, pt, cfg.search_len)
            ws = _alternating_products(fp, cfg.max_len)
        rep = check_empty_chart_family(ws, pt, rs, cfg.tau, variant="prime" if args.prime else "plain")
    return rep.to_dict(), _verdict_code(rep.verdict)


def _alternating_products(fp, max_len):
    out = []
    stack = [()]
    blocks = (tuple(fp.w1), tuple(fp.w2))
    while stack:
        w = stack.pop()
        if w:
            out.append(w)
        for b in blocks:
            if len(w) + len(b) <= max_len:
                stack.append(w + b)
    return out


def cmd_freepair(pres, rs, cfg, args):
    pt = _table(rs, cfg)
    fp = build_free_pair(rs, pt, cfg.search_len)
    inv = verify_free_pair(fp, rs, pt)
    prod = verify_product_measure_bound(fp, rs, pt, cfg.max_len)
    uniq = unique_factorization_check(fp)
    out = {"pair": fp.to_dict(pres.alphabet), "invariants": inv, "products": prod, "unique_factorization": uniq}
    if cfg.emit_trace:
        out["trace"] = fp.trace
    ok = all(inv.values()) and prod["ok"] and uniq["ok"]
    return out, EXIT_OK if ok else EXIT_VIOLATED


def cmd_witness(pres, rs, cfg, args):
    if cfg.tau < 15:
        raise UsageError(f"witness mode needs tau >= 15, got {cfg.tau}")
    exps = MIN_EXPONENTS
    if args.gammas:
        try:
            exps = tuple(int(x) for x in args.gammas.split(","))
        except ValueError:
            raise UsageError(f"--gammas must be six integers, got {args.gammas!r}") from None
    pt = _table(rs, cfg)
    fp = build_free_pair(rs, pt, cfg.search_len)
    try:
        aw = build_amenability_witness(fp, rs, pt, exps, cfg.tau, n_max=cfg.n_max, seed=cfg.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None
    a = pres.alphabet
    hyp = aw.report["verified"]
    out = {"pair": fp.to_dict(a), "w1": a.format(aw.w1), "w2": a.format(aw.w2), "swapped": aw.swapped,
           "gammas": list(aw.gammas), "deltas": list(aw.deltas), "epsilon": str(aw.epsilon),
           "lengths": aw.report["lengths"], "hypotheses": hyp, "assumed": aw.report["assumed"],
           "step1": aw.report["step1"], "replay": verify_amenability_witness(aw),
           "prefix_checks": len(aw.report["prefix_checks"]),
           "free_pair_invariants": verify_free_pair(fp, rs, pt)}
    if cfg.emit_trace:
        out["trace"] = fp.trace
        out["prefix_detail"] = aw.report["prefix_checks"]
    flags = [v for k, v in hyp.items() if k != "sc_axiom_plus10"]
    flags += list(out["replay"].values()) + list(out["free_pair_invariants"].values())
    sc = hyp.get("sc_axiom_plus10")
    if not all(flags) or sc == VIOLATED:
        return out, EXIT_VIOLATED
    if sc == INCONCLUSIVE:
        return out, EXIT_INCONCLUSIVE
    return out, EXIT_OK


COMMANDS = {"close": cmd_close, "pieces": cmd_pieces, "lambda": cmd_lambda, "chart": cmd_chart,
            "mincov": cmd_mincov, "check": cmd_check, "freepair": cmd_freepair, "witness": cmd_witness}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="presentation file, or bundled:NAME")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--bound", type=int, help="closure monomial-length bound L")
    common.add_argument("--tau", type=int, help="the constant tau (>= 10)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1, help="worker cap (work runs in one process)")
    common.add_argument("--strict", action="store_true", help="literal small-piece test without transport window")
    common.add_argument("--emit", choices=("trace",), help="include the construction trace")
    common.add_argument("--cap", type=int, default=2_000_000, help="member cap for the closure and set/combination cap for the search")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="sck", description="Small cancellation ring toolkit.")
    p.add_argument("--version", action="version", version=f"sck {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("close", parents=[common], help="closure statistics")
    sub.add_parser("pieces", parents=[common], help="small pieces S and S'")
    for name in ("lambda", "chart"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--word", required=True)
        sp.add_argument("--prime", action="store_true", help="use S' (Lambda')")
    sp = sub.add_parser("mincov", parents=[common])
    sp.add_argument("--word", required=True)
    sp = sub.add_parser("check", parents=[common], help="axiom and hypothesis checks")
    sp.add_argument("--axiom", choices=("sc", "monrel", "emptychart"), default="sc")
    sp.add_argument("--nmax", type=int, default=2)
    sp.add_argument("--mode", choices=("plus1", "plus10"), default="plus1")
    sp.add_argument("--coeff-bound", type=int, default=3)
    sp.add_argument("--pool", choices=("closure", "seeds"), default="closure")
    sp.add_argument("--prime", action="store_true")
    sp.add_argument("--word", action="append", help="word for --axiom emptychart (repeatable)")
    sp.add_argument("--max-len", type=int, default=40)
    sp.add_argument("--search-len", type=int)
    sp = sub.add_parser("freepair", parents=[common], help="free-subalgebra generators")
    sp.add_argument("--max-len", type=int, default=40)
    sp.add_argument("--search-len", type=int)
    sp = sub.add_parser("witness", parents=[common], help="non-amenability witness")
    sp.add_argument("--gammas", help="g1,d1,g2,d2,g3,d3")
    sp.add_argument("--nmax", type=int, default=2)
    sp.add_argument("--search-len", type=int)
    sp = sub.add_parser("examples", help="list or export the bundled presentations")
    sp.add_argument("--export", metavar="DIR")
    return p


def _render_text(obj, indent=0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines += _render_text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines += _render_text(v, indent + 1)
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, (list, dict)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def emit(report: dict, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(report, sort_keys=True, indent=2, default=str) + "\n")
    else:
        stream.write("\n".join(_render_text(report)) + "\n")


def _examples(args) -> int:
    if args.export:
        out = Path(args.export)
        out.mkdir(parents=True, exist_ok=True)
        for name in BUNDLED:
            (out / f"{name}.scr").write_text(bundled_path(name).read_text(encoding="utf-8"), encoding="utf-8")
    for name in BUNDLED:
        print(f"bundled:{name}")
    return EXIT_OK


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "examples":
        return _examples(args)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        pres = load_presentation(args.file)
        tau = pres.tau if args.tau is None else args.tau
        bound = pres.bound if args.bound is None else args.bound
        if tau < 10:
            raise UsageError(f"tau must be at least 10, got {tau}")
        if bound < 1:
            raise UsageError(f"bound must be positive, got {bound}")
        cfg = RunConfig(path=args.file, tau=tau, bound=bound, n_max=getattr(args, "nmax", 2),
                        coeff_bound=getattr(args, "coeff_bound", 3),
                        search_len=getattr(args, "search_len", None), max_len=getattr(args, "max_len", 40),
                        fmt=args.format, seed=args.seed, jobs=args.jobs, strict=args.strict,
                        emit_trace=args.emit == "trace", cap=args.cap)
        if args.jobs > 1:
            log.info("--jobs %d accepted; work runs in a single process", args.jobs)
        if any(p.max_length > bound for p in pres.relations):
            raise UsageError(f"bound {bound} is shorter than a seed monomial")
        rs = pres.close(bound, cap=args.cap)
        result, code = COMMANDS[args.command](pres, rs, cfg, args)
    except (PresentationError, UsageError) as e:
        print(f"sck: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ClosureOverflow as e:
        print(f"sck: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except ConstructionError as e:
        print(f"sck: construction failed: {e}", file=sys.stderr)
        return EXIT_VIOLATED
    report = {"schema": SCHEMA, "command": args.command, "config": cfg.to_dict(), "result": result,
              "exit_code": code, "kernel_backend": kernels.BACKEND}
    emit(report, args.format)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
