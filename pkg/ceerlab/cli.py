"""
ceerlab command line.

    ceerlab decide "(mod 2)" --stage 10 1 3
    ceerlab classes "(intervals 2 2)" --stage 10 --max 4
    ceerlab principal "(id)" --stage 5 --max 3
    ceerlab construct allhigh --stages 200 --trace allhigh.trace
    ceerlab semigroup classsize --spec "(intervals 2)" --stage 10 abaaba
    ceerlab reduce --asm double.asm --from "(mod 3)" --to "(mod 6)" --max 20

Exit codes: 0 ok, 1 a construction check failed, 2 usage, parse or word
errors, 3 insufficient horizon, 4 time budget exceeded, 5 a program that
had to be total diverged.
"""

import argparse
import logging
import random
import shlex
import sys
from pathlib import Path
from typing import List, Optional

from ceerlab.CeerLabError import (
    BudgetExceededError,
    CeerLabError,
    HorizonError,
    PartialFunctionError,
)
from ceerlab.Ceer.builder import build, check_convergence, plus_idn
from ceerlab.Ceer.helpers import classes_at, format_classes
from ceerlab.Ceer.parsers.spec_parser import parse_spec
from ceerlab.Ceer.reductions import check_reduction
from ceerlab.config import (
    DEFAULT_CAP,
    DEFAULT_CLASS_CAP,
    DEFAULT_CONVERGENCE_STAGE,
    DEFAULT_QUIESCENCE,
    get_horizon,
    get_stages,
)
from ceerlab.Constructions.allhigh import allhigh_run, allhigh_settled_table
from ceerlab.Constructions.helpers import deadline_after, record_check
from ceerlab.Constructions.kk_extract import kk_extract, level_array
from ceerlab.Constructions.parsers.algebra_parser import parse_algebra
from ceerlab.Constructions.postsimple import postsimple_run
from ceerlab.Constructions.trace import TraceWriter
from ceerlab.Constructions.weakarray import weakarray_run
from ceerlab.Machine.encoding import length_lex_key
from ceerlab.Machine.parsers.asm_parser import assemble, disassemble
from ceerlab.models import Presentation, PresentationKind, RunReport
from ceerlab.report import format_report, format_value
from ceerlab.Semigroup.closure import congruence_closure
from ceerlab.Semigroup.decide import (
    fincl_class_size,
    fincl_decide,
    sr_decide,
    sr_from_join,
    sr_to_join,
)
from ceerlab.Semigroup.strata import classify
from ceerlab.Transversal.immunity import array_intersection_check, domination_check, majorizes
from ceerlab.Transversal.principal import (
    is_transversal_at,
    principal_at,
    principal_function_at,
    random_certified_sample,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_HORIZON = 3
EXIT_BUDGET = 4
EXIT_PARTIAL = 5


def _load_spec(text: str):
    """A spec given inline, or the path of a file holding one."""
    if text.lstrip().startswith("("):
        return parse_spec(text)
    return parse_spec(Path(text).read_text(encoding="utf-8"))


def _ceer(text: str):
    return build(_load_spec(text))


def _print_report(report: RunReport) -> int:
    sys.stdout.write(format_report(report))
    return EXIT_OK if report.passed else EXIT_VIOLATION


# ------------------------------------------------------------------ #
# Queries
# ------------------------------------------------------------------ #
def cmd_decide(args) -> int:
    R = _ceer(args.spec)
    print(format_value(R.decide_at(args.stage, args.x, args.y)))
    return EXIT_OK


def cmd_classes(args) -> int:
    R = _ceer(args.spec)
    for line in format_classes(classes_at(R, args.stage, args.max)):
        print(line)
    return EXIT_OK


def cmd_principal(args) -> int:
    R = _ceer(args.spec)
    if args.index is not None:
        print(principal_function_at(R, args.stage, args.index, args.max))
    else:
        print(format_value(principal_at(R, args.stage, args.max).elements))
    return EXIT_OK


def cmd_sample(args) -> int:
    R = _ceer(args.spec)
    sample = random_certified_sample(R, args.stage, args.max, random.Random(args.seed), args.size)
    print(f"elements: {format_value(sample.elements)}")
    print(f"certified_stage: {sample.stage}")
    return EXIT_OK


def cmd_assemble(args) -> int:
    if args.decode is not None:
        sys.stdout.write(disassemble(args.decode))
        return EXIT_OK
    if args.file is None:
        raise CeerLabError("assemble needs an assembly file or --decode INDEX")
    print(assemble(Path(args.file).read_text(encoding="utf-8")).index)
    return EXIT_OK


# ------------------------------------------------------------------ #
# Reductions
# ------------------------------------------------------------------ #
def cmd_reduce(args) -> int:
    if args.asm is not None:
        f = assemble(Path(args.asm).read_text(encoding="utf-8")).index
    elif args.program is not None:
        f = args.program
    else:
        raise CeerLabError("reduce needs --program INDEX or --asm FILE")
    R = _ceer(args.source)
    S = _ceer(args.target)
    if args.plus_idn is not None:
        S = plus_idn(S, args.plus_idn)
    unconverged = check_convergence(R, args.max, args.convergence_stage)
    verdict = check_reduction(f, R, S, args.max, args.stage, lookahead=args.lookahead)

    report = RunReport(
        command=args.command_line,
        construction="reduce",
        stages=args.stage,
        horizon=args.max,
        results={
            "program": f,
            "plus_idn": args.plus_idn,
            "unconverged": unconverged or None,
            "lookahead": verdict.lookahead,
            "verdict": str(verdict),
            "caveat": verdict.caveat,
        },
    )
    return _print_report(report)


# ------------------------------------------------------------------ #
# Constructions
# ------------------------------------------------------------------ #
def _construct_allhigh(args, trace: TraceWriter, deadline) -> RunReport:
    run = allhigh_run(args.stages, trace=trace, quiescence=args.quiescence, deadline=deadline)
    principal = principal_at(run.ceer, args.stages, args.horizon).elements
    failed = domination_check(principal, run.f_values)
    record_check(
        run.checks,
        "principal transversal dominates f",
        None if failed is None else f"p_T({failed + 1}) <= f_stage({failed}, S)",
    )
    return RunReport(
        command=args.command_line,
        construction="allhigh",
        stages=args.stages,
        horizon=args.horizon,
        results={
            "actions": len(run.partition.log),
            "pending": list(run.pending),
            "settled": allhigh_settled_table(run, args.rows),
            "principal": list(principal[: args.rows or 20]),
        },
        checks=run.checks,
    )


def _construct_weakarray(args, trace: TraceWriter, deadline) -> RunReport:
    if args.spec is None:
        raise CeerLabError("construct weakarray needs --spec")
    R = _ceer(args.spec)
    run = weakarray_run(R, args.stages, trace=trace, class_cap=args.class_cap, deadline=deadline)
    shown = run.state.sets[: args.rows or 20]
    return RunReport(
        command=args.command_line,
        construction="weakarray",
        stages=args.stages,
        horizon=args.horizon,
        results={
            "sets": {f"F_{n}": sorted(members) for n, members in enumerate(shown)},
            "stabilized": run.stabilized,
            "transversal": list(run.transversal.elements),
            "certified_stage": run.transversal.stage,
        },
        checks=run.checks,
    )


def _construct_postsimple(args, trace: TraceWriter, deadline) -> RunReport:
    run = postsimple_run(args.stages, census_length=args.census, trace=trace, deadline=deadline)
    return RunReport(
        command=args.command_line,
        construction="postsimple",
        stages=args.stages,
        horizon=args.horizon,
        results={
            "members": {str(i): word for i, word in sorted(run.state.served)},
            "census": run.census,
        },
        checks=run.checks,
    )


def _construct_kk(args, trace: TraceWriter, deadline) -> RunReport:
    if args.algebra is None:
        raise CeerLabError("construct kk needs --algebra FILE")
    A = parse_algebra(Path(args.algebra).read_text(encoding="utf-8"))
    result = kk_extract(A, args.depth, args.stages, budget=args.budget, trace=trace, deadline=deadline)

    checks = []
    T = result.transversal
    record_check(
        checks,
        "extracted sample is a transversal",
        None if is_transversal_at(A.wp, args.stages, T.elements) else "two picks are related",
    )
    record_check(checks, "m majorizes p_T", None if majorizes(result.majorizer, T) else "m(i) < p_T(i)")
    array = level_array(result.levels[: len(result.picks) + 1])
    record_check(
        checks,
        "level array meets the transversal",
        None if array_intersection_check(array, T.elements) else "a level misses T",
    )
    return RunReport(
        command=args.command_line,
        construction="kk",
        stages=args.stages,
        horizon=args.horizon,
        results={
            "level_sizes": [len(level) for level in result.levels],
            "picks": list(result.picks),
            "majorizer": list(result.majorizer),
            "stalled_at": result.stalled_at,
        },
        checks=checks,
    )


_CONSTRUCTIONS = {
    "allhigh": _construct_allhigh,
    "weakarray": _construct_weakarray,
    "postsimple": _construct_postsimple,
    "kk": _construct_kk,
}


def cmd_construct(args) -> int:
    if args.stages < 1:
        raise CeerLabError("the stage budget must be at least 1")
    deadline = deadline_after(args.max_seconds)
    trace_path = args.trace
    if not trace_path:
        Path(args.trace_dir).mkdir(parents=True, exist_ok=True)
        trace_path = str(Path(args.trace_dir) / f"{args.name}.trace")
    with TraceWriter(trace_path) as trace:
        try:
            report = _CONSTRUCTIONS[args.name](args, trace, deadline)
        except BudgetExceededError:
            logger.warning("partial trace kept in %s", trace_path)
            raise
    report.trace_path = trace_path
    return _print_report(report)


# ------------------------------------------------------------------ #
# Semigroups
# ------------------------------------------------------------------ #
def _presentation(args) -> Presentation:
    kind = PresentationKind(args.variant)
    return Presentation(kind, _ceer(args.spec))


def cmd_semigroup(args) -> int:
    if args.sub == "classify":
        for w in args.words:
            print(classify(w))
        return EXIT_OK

    if args.sub == "tojoin":
        for token in args.words:
            print(sr_from_join(int(token)) if args.inverse else sr_to_join(token))
        return EXIT_OK

    if args.spec is None:
        raise CeerLabError(f"semigroup {args.sub} needs --spec")

    if args.sub == "decide":
        if len(args.words) != 2:
            raise CeerLabError("semigroup decide takes exactly two words")
        u, v = args.words
        P = _presentation(args)
        if P.kind == PresentationKind.SR:
            print(format_value(sr_decide(P, args.stage, u, v)))
        else:
            print(fincl_decide(P, args.stage, u, v, args.cap).value)
        return EXIT_OK

    if len(args.words) != 1:
        raise CeerLabError(f"semigroup {args.sub} takes exactly one word")
    w = args.words[0]

    if args.sub == "closure":
        closure = congruence_closure(_presentation(args), args.stage, w, args.cap, args.max_length)
        for word in sorted(closure.words, key=length_lex_key):
            print(word)
        print(f"complete: {format_value(closure.complete)}")
        return EXIT_OK

    size = fincl_class_size(Presentation(PresentationKind.FINCL, _ceer(args.spec)), args.stage, w, args.cap)
    print(f"size: {size.size}")
    print(f"predicted: {format_value(size.predicted)}")
    print(f"truncated: {format_value(size.truncated)}")
    return EXIT_OK


# ------------------------------------------------------------------ #
# Argument parsing
# ------------------------------------------------------------------ #
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ceerlab", description="Stage-approximated ceers and their constructions.")
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def staged(p, name="--stage"):
        p.add_argument(name, type=int, default=get_stages(), dest="stage" if name == "--stage" else "stages")

    p = sub.add_parser("decide", help="decide x R_s y")
    p.add_argument("spec")
    p.add_argument("x", type=int)
    p.add_argument("y", type=int)
    staged(p)
    p.set_defaults(handler=cmd_decide)

    for name, handler in (("classes", cmd_classes), ("principal", cmd_principal)):
        p = sub.add_parser(name)
        p.add_argument("spec")
        staged(p)
        p.add_argument("--max", type=int, default=get_horizon())
        if name == "principal":
            p.add_argument("--index", type=int, default=None, help="print only p(k)")
        p.set_defaults(handler=handler)

    p = sub.add_parser("sample", help="random certified transversal sample")
    p.add_argument("spec")
    staged(p)
    p.add_argument("--max", type=int, default=get_horizon())
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=None)
    p.set_defaults(handler=cmd_sample)

    p = sub.add_parser("assemble", help="assembly file to program index")
    p.add_argument("file", nargs="?")
    p.add_argument("--decode", type=int, default=None, help="print the program with this index instead")
    p.set_defaults(handler=cmd_assemble)

    p = sub.add_parser("reduce", help="bounded check of a computable reduction")
    p.add_argument("--program", type=int, default=None)
    p.add_argument("--asm", default=None)
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--plus-idn", type=int, default=None)
    p.add_argument("--lookahead", type=int, default=None)
    p.add_argument(
        "--convergence-stage",
        type=int,
        default=DEFAULT_CONVERGENCE_STAGE,
        help="stage by which restriction surjections must have converged on [0, MAX]",
    )
    p.add_argument("--max", type=int, default=get_horizon())
    staged(p)
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("construct", help="run a stage construction")
    p.add_argument("name", choices=sorted(_CONSTRUCTIONS))
    staged(p, "--stages")
    p.add_argument("--horizon", type=int, default=get_horizon())
    p.add_argument("--spec", default=None)
    p.add_argument("--algebra", default=None)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--budget", type=int, default=None, help="steps per operation evaluation (kk)")
    p.add_argument("--census", type=int, default=0)
    p.add_argument("--quiescence", type=int, default=DEFAULT_QUIESCENCE)
    p.add_argument("--class-cap", type=int, default=DEFAULT_CLASS_CAP)
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--trace", default=None, help="trace file (default: TRACE_DIR/<name>.trace)")
    p.add_argument("--trace-dir", default=".", help="directory for the default trace file")
    p.add_argument("--max-seconds", type=float, default=None, help="wall-clock budget")
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("semigroup", help="free-semigroup word problems")
    p.add_argument("sub", choices=["classify", "decide", "tojoin", "closure", "classsize"])
    p.add_argument("words", nargs="+")
    p.add_argument("--variant", choices=["sr", "fincl"], default="sr")
    p.add_argument("--spec", default=None)
    staged(p)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--max-length", type=int, default=None)
    p.add_argument("--inverse", action="store_true", help="tojoin: map codes back to words")
    p.set_defaults(handler=cmd_semigroup)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        parser = build_parser()
    except CeerLabError as err:
        print(f"ceerlab: {err}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    args.command_line = " ".join(shlex.quote(a) for a in argv)

    logging.captureWarnings(True)
    try:
        return args.handler(args)
    except HorizonError as err:
        print(f"ceerlab: {err}", file=sys.stderr)
        return EXIT_HORIZON
    except BudgetExceededError as err:
        print(f"ceerlab: {err} ({len(err.trace_lines)} trace line(s) kept)", file=sys.stderr)
        return EXIT_BUDGET
    except PartialFunctionError as err:
        print(f"ceerlab: {err}", file=sys.stderr)
        print("divergent: " + " ".join(map(str, err.inputs)), file=sys.stderr)
        return EXIT_PARTIAL
    except (ValueError, OSError) as err:
        print(f"ceerlab: {err}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        logging.captureWarnings(False)


if __name__ == "__main__":
    sys.exit(main())
