"""Command-line front end: classify rings, emit certificates, scan Z_n
families, run the lemma suite and compute product decompositions.

Exit codes: 0 success, 1 suite violation, 2 input error, 3 resource
limit. Reports go to stdout, diagnostics to stderr. JSON output is
byte-deterministic for fixed inputs and configuration.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from importlib import resources

from . import __version__
from . import ringspec, structure
from .core import (
    DEFAULT_SAMPLE_TRIPLES,
    DEFAULT_SEED,
    DEFAULT_SIZE_CAP,
    FiniteRing,
    validate_ring,
)
from .decompose import (
    DEFAULT_BUDGET,
    KINDS,
    classification_report,
    find_certificate,
)
from .errors import BudgetExceeded, NilcleanError, ParseError, SizeCapExceeded

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


@dataclass
class CliConfig:
    cap: int = DEFAULT_SIZE_CAP
    budget: int = DEFAULT_BUDGET
    validate: str = "auto"  # auto | full | sampled | off
    fmt: str = "text"
    workers: int = 1
    seed: int = DEFAULT_SEED


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _build_ring(expr_text: str, config: CliConfig) -> FiniteRing:
    expr = ringspec.parse(expr_text)
    ring = ringspec.eval_expr(expr, cap=config.cap)
    if config.validate != "off":
        mode = config.validate
        report = validate_ring(ring, mode=mode,
                               sample_triples=DEFAULT_SAMPLE_TRIPLES,
                               seed=config.seed)
        report.raise_if_failed()
    return ring


def _verdict_json(v) -> dict:
    return {"holds": v.holds, "witness": v.witness, "budget_exceeded": v.budget_exceeded}


def _maj_json(witness) -> dict:
    if witness is None:
        return None
    return {
        "c": witness.c,
        "k": witness.k,
        "zk_label": witness.zk_label,
        "zk_size": witness.zk_size,
        "rest_label": witness.rest_label,
        "rest_size": witness.rest_size,
        "rest_cyclic_order": witness.rest_cyclic_order,
    }


def _fmt_verdict(v) -> str:
    if v.holds is None:
        return "unresolved (budget)"
    if v.holds:
        return "true"
    return f"false (witness {v.witness})"


def cmd_classify(args, config: CliConfig) -> int:
    ring = _build_ring(args.expr, config)
    report = classification_report(ring, budget=config.budget)
    report.maj = structure.maj_decomposition(ring)
    exit_code = (EXIT_RESOURCE
                 if any(v.budget_exceeded for v in report.verdicts.values())
                 else EXIT_OK)

    if config.fmt == "json":
        crit_w = report.wsnc_criterion
        crit_s = report.s2nc_criterion
        payload = {
            "ring": report.ring_label,
            "size": report.size,
            "counts": report.counts,
            "verdicts": {k: _verdict_json(v) for k, v in report.verdicts.items()},
            "criteria": {
                "wsnc": {
                    "holds": crit_w.holds,
                    "thirty_nilpotent": crit_w.thirty_nilpotent,
                    "witness": crit_w.witness,
                    "uniform_branch": crit_w.uniform_branch,
                },
                "s2nc": {"holds": crit_s.holds, "witness": crit_s.witness},
            },
            "oracles_agree": report.oracles_agree,
            "maj": _maj_json(report.maj),
        }
        print(_dump_json(payload))
        return exit_code

    print(f"ring {report.ring_label} (size {report.size})")
    c = report.counts
    print(f"counts: |Id|={c['idempotents']} |nil|={c['nilpotents']} "
          f"|U|={c['units']} |J|={c['jacobson']}")
    crit_text = {
        "wsnc": report.wsnc_criterion.holds,
        "s2nc": report.s2nc_criterion.holds,
    }
    print(f"{'class':6} {'brute force':24} criterion")
    for kind in KINDS:
        crit = crit_text.get(kind)
        crit_col = "-" if crit is None else str(crit).lower()
        if kind == "wsnc" and not report.wsnc_criterion.thirty_nilpotent:
            crit_col += " (30 not nilpotent)"
        elif crit is False:
            wit = (report.wsnc_criterion.witness if kind == "wsnc"
                   else report.s2nc_criterion.witness)
            if wit is not None:
                crit_col += f" (witness {wit})"
        print(f"{kind:6} {_fmt_verdict(report.verdicts[kind]):24} {crit_col}")
    print(f"oracle agreement: {'yes' if report.oracles_agree else 'NO'}")
    if report.maj is None:
        print("maj: none")
    else:
        m = report.maj
        rest = f"{m.rest_label} (size {m.rest_size}"
        if m.rest_size == 1:
            rest += ", trivial"
        elif m.rest_cyclic_order is not None:
            rest += f", ~ Z{m.rest_cyclic_order}"
        rest += ")"
        print(f"maj: c={m.c} k={m.k} five-part={m.zk_label} (size {m.zk_size}) rest={rest}")
    return exit_code


def cmd_certify(args, config: CliConfig) -> int:
    ring = _build_ring(args.expr, config)
    kind = args.kind
    for a in ring.elements():
        cert = find_certificate(ring, a, kind, budget=config.budget)
        if cert is None:
            print(_dump_json({"ring": ring.label, "element": a, "class": kind,
                              "error": "no-certificate"}))
        else:
            print(_dump_json(cert.to_json_dict(ring.label)))
    return EXIT_OK


def cmd_scan(args, config: CliConfig) -> int:
    if args.zn_min < 1 or args.zn_max < args.zn_min:
        print("scan range must satisfy 1 <= min <= max", file=sys.stderr)
        return EXIT_INPUT
    rows = []
    for n in range(args.zn_min, args.zn_max + 1):
        ring = _build_ring(f"Z{n}", config)
        report = classification_report(ring, budget=config.budget)
        crit = report.wsnc_criterion
        if crit.holds:
            note = ""
        elif not crit.thirty_nilpotent:
            note = "30 not nilpotent"
        else:
            note = f"element {crit.witness} fails all branches"
        rows.append({
            "n": n,
            "wsnc_brute": report.verdicts["wsnc"].holds,
            "wsnc_criterion": crit.holds,
            "s2nc_brute": report.verdicts["s2nc"].holds,
            "s2nc_criterion": report.s2nc_criterion.holds,
            "agree": report.oracles_agree,
            "note": note,
        })
    if config.fmt == "json":
        print(_dump_json(rows))
        return EXIT_OK
    print(f"{'n':>4} {'wsnc':>5} {'crit':>5} {'s2nc':>5} {'crit':>5} {'agree':>5}  note")
    for r in rows:
        def b(v):
            return "-" if v is None else ("T" if v else "F")
        print(f"{r['n']:>4} {b(r['wsnc_brute']):>5} {b(r['wsnc_criterion']):>5} "
              f"{b(r['s2nc_brute']):>5} {b(r['s2nc_criterion']):>5} "
              f"{'yes' if r['agree'] else 'NO':>5}  {r['note']}")
    return EXIT_OK


def default_catalog_text() -> str:
    return resources.files("nilclean").joinpath("data/catalog.txt").read_text()


def load_catalog_rings(text: str, config: CliConfig):
    entries = ringspec.load_catalog(text)
    rings = [ringspec.eval_expr(expr, cap=config.cap) for _, expr in entries]
    if config.validate != "off":
        for ring in rings:
            validate_ring(ring, mode=config.validate,
                          sample_triples=DEFAULT_SAMPLE_TRIPLES,
                          seed=config.seed).raise_if_failed()
    return rings


def cmd_suite(args, config: CliConfig) -> int:
    if args.catalog is None:
        text = default_catalog_text()
    else:
        with open(args.catalog, "r", encoding="utf-8") as fh:
            text = fh.read()
    rings = load_catalog_rings(text, config)
    report = structure.run_lemma_suite(rings, budget=config.budget,
                                       workers=config.workers)
    if config.fmt == "json":
        print(_dump_json(report.to_json_dict()))
    else:
        for inst in report.instances:
            line = f"{inst.status:9} {inst.ring:28} {inst.lemma}"
            if inst.detail:
                line += f"  [{inst.detail}]"
            print(line)
        s = report.summary()
        print(f"summary: {s['instances']} instances, {s['pass']} pass, "
              f"{s['violation']} violations, {s['skipped']} skipped")
    return EXIT_VIOLATION if report.violations else EXIT_OK


def cmd_maj(args, config: CliConfig) -> int:
    ring = _build_ring(args.expr, config)
    witness = structure.maj_decomposition(ring)
    if config.fmt == "json":
        print(_dump_json(_maj_json(witness)))
        return EXIT_OK
    if witness is None:
        print("none")
    else:
        rest = f"{witness.rest_label} (size {witness.rest_size}"
        if witness.rest_size == 1:
            rest += ", trivial"
        elif witness.rest_cyclic_order is not None:
            rest += f", ~ Z{witness.rest_cyclic_order}"
        rest += ")"
        print(f"c={witness.c} k={witness.k} five-part={witness.zk_label} "
              f"(size {witness.zk_size}) rest={rest}")
    return EXIT_OK


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilclean",
        description="Finite-ring decomposition workbench")
    parser.add_argument("--version", action="version", version=f"nilclean {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cap", type=int, default=DEFAULT_SIZE_CAP,
                        help="maximum constructible ring size")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="certificate search budget in (sign, e, f, n) tuples")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--validate", choices=("auto", "full", "sampled", "off"),
                        default="auto")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for sampled validation")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common],
                       help="full class/criterion report for one ring")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("certify", parents=[common],
                       help="per-element certificates as JSON lines")
    p.add_argument("expr")
    p.add_argument("--class", dest="kind", choices=KINDS, default="wsnc")
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("scan", parents=[common], help="sweep Z_n over a range")
    p.add_argument("--zn-min", type=int, required=True)
    p.add_argument("--zn-max", type=int, required=True)
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("suite", parents=[common],
                       help="run the lemma suite over a catalog")
    p.add_argument("catalog", nargs="?", default=None,
                   help="catalog file (default: shipped catalog)")
    p.set_defaults(fn=cmd_suite)

    p = sub.add_parser("maj", parents=[common],
                       help="product decomposition witness for one ring")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_maj)

    return parser


def main(argv=None) -> int:
    parser = _make_parser()
    args = parser.parse_args(argv)
    cap = args.cap
    env_cap = os.environ.get("NILCLEAN_CAP")
    if env_cap:
        cap = int(env_cap)
    config = CliConfig(cap=cap, budget=args.budget, validate=args.validate,
                       fmt=args.format, workers=args.workers, seed=args.seed)
    try:
        return args.fn(args, config)
    except (SizeCapExceeded, BudgetExceeded) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, NilcleanError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
