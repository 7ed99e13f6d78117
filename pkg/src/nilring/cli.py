"""Command-line front end.

    nilring build     --expr "M(2,Z(2))" --output m2.json
    nilring classify  --expr "Z(4)"
    nilring analyze   --file ring.json --format text
    nilring verify    --suite main --seed 0 --jobs 2
    nilring examples
    nilring corpus    --output corpus_dir

Exit status: 0 success, 1 violations found, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classify import EXCHANGE_CAP, classify
from .core.dsl import ParseError, build
from .core.ring import DEFAULT_CAP, RingError
from .core.tableio import load_file, save_file, to_dict
from .lab.corpus import CorpusSpec, generate_corpus
from .lab.examples import reproduce_example_m2t, reproduce_example_m3
from .lab.suites import SUITES, run_suite
from .nil import nil_report

COMMANDS = ("build", "classify", "analyze", "verify", "examples", "corpus")
RING_COMMANDS = ("build", "classify", "analyze")


class UsageError(Exception):
    pass


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nilring",
                                description="Nilpotent structure of finite rings.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--expr", help="ring constructor expression, e.g. 'UT(2,Z(2))'")
    p.add_argument("--file", help="ring-table JSON file")
    p.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)} or all")
    p.add_argument("--max-order", type=int, default=None,
                   help="order cap (corpus default 4096, single rings 65536)")
    p.add_argument("--exchange-cap", type=int, default=EXCHANGE_CAP)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", help="write the report (or ring/corpus files) here")
    return p


def _check_config(args):
    if args.expr is not None and args.file is not None:
        raise UsageError("give only one of --expr and --file")
    if args.command in RING_COMMANDS and args.expr is None and args.file is None:
        raise UsageError(f"{args.command} needs --expr or --file")
    if args.command in ("examples", "corpus") and (args.expr or args.file):
        raise UsageError(f"{args.command} takes no --expr/--file")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    if args.max_order is not None and args.max_order < 1:
        raise UsageError("--max-order must be positive")
    if args.command == "corpus" and not args.output:
        raise UsageError("corpus needs --output DIR")
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}, all")


def _ring(args, cap=None):
    if args.file is not None:
        return load_file(args.file)
    return build(args.expr, cap=cap or args.max_order or DEFAULT_CAP)


def _emit(args, payload, text):
    out = json.dumps(payload, indent=2) + "\n" if args.format == "json" else text + "\n"
    if args.output and args.command not in ("build", "corpus"):
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def _verdict_text(v):
    if v.holds is None:
        return "n/a"
    if v.holds or v.witness is None:
        return "yes" if v.holds else "no"
    return f"no (witness {', '.join(map(str, v.witness))})"


def _classify_text(report):
    lines = [f"{report.label}: order {report.order}, "
             f"{'unital' if report.unital else 'no unit'}"]
    for name in report.PROPERTIES:
        lines.append(f"  {name:<20} {_verdict_text(getattr(report, name))}")
    lines.append(f"  {'bounded_index':<20} {report.bounded_index}")
    for kind, v in report.closure.items():
        lines.append(f"  {'closed under ' + kind:<20} {_verdict_text(v)}")
    return "\n".join(lines)


def _analyze_text(ring, rep):
    return "\n".join([
        f"{ring.label}: order {rep.order}",
        f"  nilpotents        {len(rep.nilpotents)} (max index {rep.bound})",
        f"  quasi-regular     {len(rep.q_set)}",
        f"  J(R)              {len(rep.j_radical)}",
        f"  Nil*(R)           {len(rep.upper_nilradical)}",
        f"  idempotents       {len(rep.idempotents)}",
        f"  units             {'n/a' if rep.units is None else len(rep.units)}",
    ])


def _suite_text(results):
    lines = []
    for r in results:
        status = "ok" if r.passed else f"{len(r.violations)} violation(s)"
        lines.append(f"{r.suite:<14} rings {r.rings:>4}  checks {r.checks:>8}  "
                     f"vacuous {r.vacuous:>6}  {status}")
        for v in r.violations[:5]:
            lines.append(f"    {v['ring']}: {v['statement']} {v['witness']}")
    return "\n".join(lines)


def _suites_payload(results):
    return {"suites": [r.to_dict() for r in results],
            "violations": sum(len(r.violations) for r in results)}


def cmd_build(args):
    ring = _ring(args)
    if args.output:
        save_file(ring, args.output)
        if args.format == "text":
            sys.stdout.write(f"{ring.label}: order {ring.order} -> {args.output}\n")
    elif args.format == "json":
        sys.stdout.write(json.dumps(to_dict(ring)) + "\n")
    else:
        sys.stdout.write(f"{ring.label}: order {ring.order}, "
                         f"{'unit ' + str(ring.one) if ring.one is not None else 'no unit'}\n")
    return 0


def cmd_classify(args):
    report = classify(_ring(args), exchange_cap=args.exchange_cap)
    _emit(args, report.to_dict(), _classify_text(report))
    return 0


def cmd_analyze(args):
    ring = _ring(args)
    rep = nil_report(ring)
    _emit(args, {"label": ring.label, **rep.to_dict()}, _analyze_text(ring, rep))
    return 0


def cmd_verify(args):
    spec = CorpusSpec(seed=args.seed, max_order=args.max_order or 4096)
    corpus = generate_corpus(spec)
    if args.expr is not None or args.file is not None:
        # --max-order bounds the generated corpus, not an explicitly named ring
        corpus.append(_ring(args, cap=DEFAULT_CAP))
    names = SUITES if args.suite == "all" else (args.suite,)
    results = [run_suite(name, corpus, spec, jobs=args.jobs, exchange_cap=args.exchange_cap)
               for name in names]
    _emit(args, _suites_payload(results), _suite_text(results))
    return 1 if any(r.violations for r in results) else 0


def cmd_examples(args):
    results = [reproduce_example_m3(), reproduce_example_m2t(3, seed=args.seed),
               reproduce_example_m2t(4, seed=args.seed)]
    _emit(args, _suites_payload(results), _suite_text(results))
    return 1 if any(r.violations for r in results) else 0


def cmd_corpus(args):
    spec = CorpusSpec(seed=args.seed, max_order=args.max_order or 4096)
    notices = []
    corpus = generate_corpus(spec, notices)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    index = []
    for i, ring in enumerate(corpus):
        name = f"ring_{i:03d}.json"
        save_file(ring, out / name)
        index.append({"file": name, "label": ring.label, "order": ring.order})
    (out / "index.json").write_text(json.dumps(index, indent=2) + "\n")
    for msg in notices:
        print(msg, file=sys.stderr)
    if args.format == "json":
        sys.stdout.write(json.dumps({"directory": str(out), "rings": index,
                                     "skipped": notices}, indent=2) + "\n")
    else:
        sys.stdout.write(f"wrote {len(index)} rings to {out}\n")
    return 0


HANDLERS = {"build": cmd_build, "classify": cmd_classify, "analyze": cmd_analyze,
            "verify": cmd_verify, "examples": cmd_examples, "corpus": cmd_corpus}


def run(args) -> int:
    try:
        _check_config(args)
        return HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"nilring: error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"nilring: syntax error: {exc}", file=sys.stderr)
        return 2
    except (RingError, OSError, ValueError) as exc:
        print(f"nilring: error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    return run(make_parser().parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
