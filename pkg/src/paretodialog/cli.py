"""Command line front door: solve, convert, generate, verify, refine, serve.

Exit codes: 0 success, 1 domain error or property violation, 2 usage or
I/O trouble (argparse's own convention).
"""

from __future__ import annotations

import argparse
import json
import socket
import sys

from .errors import EngineError
from .generate import VARIANTS, generate
from .intervals import DominanceMode
from .model import (
    IntervalStructure,
    Problem,
    load_problem,
    serialize_problem,
)
from .pareto import ParetoResult, solve
from .session import create_session, event_from_json, save_session
from .verify import SUITES, run_suite

OK, DOMAIN_ERROR, USAGE_ERROR = 0, 1, 2


class _InputError(Exception):
    """Unreadable or unparsable input file; maps to exit 2 like I/O."""


def _load_input(loader, path):
    try:
        return loader(path)
    except EngineError as exc:
        raise _InputError(f"{path}: {exc}") from exc


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DOMAIN_ERROR
    except (OSError, _InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paretodialog",
        description="Pareto sets under incomplete information, with interval-refinement dialogues.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="compute the Pareto set of a problem file")
    p_solve.add_argument("problem", help="path to a problem JSON file")
    p_solve.add_argument("--mode", choices=["strict", "weak"], default=None,
                         help="override the dominance mode of an interval problem")
    p_solve.add_argument("--format", choices=["json", "table"], default="json")
    p_solve.set_defaults(handler=_cmd_solve)

    p_convert = sub.add_parser("convert", help="recast a relation problem as intervals")
    p_convert.add_argument("problem", help="path to a relation-structure problem file")
    p_convert.add_argument("--to", choices=["intervals"], default="intervals")
    p_convert.add_argument("out", help="where to write the interval problem")
    p_convert.set_defaults(handler=_cmd_convert)

    p_gen = sub.add_parser("generate", help="emit a seeded random problem file")
    p_gen.add_argument("--alts", type=int, required=True, help="number of alternatives (>= 1)")
    p_gen.add_argument("--criteria", type=int, required=True, help="number of criteria (>= 1)")
    p_gen.add_argument("--variant", choices=VARIANTS, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", default="-", help="output path, '-' for stdout")
    p_gen.add_argument("--hidden-truth", default=None,
                       help="also write the hidden ground truth (interval/relation variants)")
    p_gen.set_defaults(handler=_cmd_generate)

    p_verify = sub.add_parser("verify", help="re-run a property suite on random instances")
    p_verify.add_argument("--suite", choices=sorted(SUITES), required=True)
    p_verify.add_argument("--instances", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--report", default=None, help="write the JSON report here")
    p_verify.set_defaults(handler=_cmd_verify)

    p_refine = sub.add_parser("refine", help="apply a scripted event list to a session")
    p_refine.add_argument("session", help="session file, or a problem file to start fresh")
    p_refine.add_argument("--script", required=True, help="JSON list of events")
    p_refine.add_argument("--out", default=None, help="save the refined session here")
    p_refine.set_defaults(handler=_cmd_refine)

    p_serve = sub.add_parser("serve", help="run the HTTP session service")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--state-dir", default="./sessions")
    p_serve.set_defaults(handler=_cmd_serve)

    return parser


def _print_result(result: ParetoResult, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(result.to_json(), indent=2))
        return
    print("Pareto set: " + ", ".join(result.pareto_list()))
    eliminated = [a for a in result.order if a not in result.pareto_set]
    if eliminated:
        print("Eliminated:")
        for x in eliminated:
            witness = result.witnesses[x]
            margins = ", ".join(f"{c} {v:+g}" for c, v in witness.margins.items())
            print(f"  {x}  dominated by {witness.by}  ({margins})")


def _cmd_solve(args) -> int:
    problem = _load_input(load_problem, args.problem)
    if args.mode is not None and isinstance(problem.structure, IntervalStructure):
        problem = Problem(
            problem.alternatives,
            problem.criteria,
            IntervalStructure(problem.structure.matrix, DominanceMode(args.mode)),
        )
    _print_result(solve(problem), args.format)
    return OK


def _cmd_convert(args) -> int:
    from .utility import vpr_to_interval_structure

    problem = _load_input(load_problem, args.problem)
    converted = vpr_to_interval_structure(problem)
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write(serialize_problem(converted))
    print(f"wrote {args.out}")
    return OK


def _cmd_generate(args) -> int:
    if args.alts < 1 or args.criteria < 1:
        print("error: --alts and --criteria must be >= 1", file=sys.stderr)
        return USAGE_ERROR
    if args.hidden_truth and args.variant == "point":
        print("error: the point variant has no hidden truth", file=sys.stderr)
        return USAGE_ERROR
    instance = generate(args.variant, args.alts, args.criteria, args.seed)
    text = serialize_problem(instance.problem)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    if args.hidden_truth:
        with open(args.hidden_truth, "w", encoding="utf-8") as handle:
            handle.write(serialize_problem(instance.truth))
    return OK


def _cmd_verify(args) -> int:
    report = run_suite(args.suite, args.instances, args.seed)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as handle:
            json.dump(report.to_json(), handle, indent=2)
            handle.write("\n")
    status = "ok" if report.ok else "FAILED"
    print(
        f"suite {report.suite}: {status} "
        f"({report.instances} instances, {report.checks} checks, "
        f"{len(report.violations)} violations)"
    )
    for violation in report.violations[:20]:
        print(f"  instance {violation.instance}: {violation.message}")
    return OK if report.ok else DOMAIN_ERROR


def _load_session_or_problem(path):
    with open(path, "rb") as handle:
        raw = handle.read()
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise _InputError(f"{path} is not valid JSON: {exc}") from exc
    try:
        if isinstance(doc, dict) and "base" in doc:
            from .session import session_from_json

            return session_from_json(doc)
        from .model import problem_from_json

        problem = problem_from_json(doc)
    except EngineError as exc:
        raise _InputError(f"{path}: {exc}") from exc
    return create_session(problem)


def _cmd_refine(args) -> int:
    session = _load_session_or_problem(args.session)
    with open(args.script, "rb") as handle:
        try:
            script = json.loads(handle.read().decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            print(f"error: event script is not valid JSON: {exc}", file=sys.stderr)
            return USAGE_ERROR
    if not isinstance(script, list):
        print("error: event script must be a JSON list", file=sys.stderr)
        return USAGE_ERROR

    print(f"session {session.id}: initial pareto {session.result.pareto_list()}")
    for doc in script:
        event = event_from_json(doc)
        try:
            delta = session.apply(event)
        except EngineError as exc:
            print(f"event {event.sequence}: REJECTED ({exc})", file=sys.stderr)
            return DOMAIN_ERROR
        removed = f" removed {list(delta.removed)}" if delta.removed else ""
        print(f"event {event.sequence}: pareto {list(delta.new_pareto)}{removed}")

    report = session.pareto_history()
    print(f"chain: {[list(entry) for entry in report.chain]}")
    print(f"nesting certificate: {'ok' if report.nesting_ok else 'VIOLATED'}")
    if args.out:
        save_session(session, args.out)
        print(f"wrote {args.out}")
    return OK if report.nesting_ok else DOMAIN_ERROR


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.host, args.port))
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return USAGE_ERROR
    finally:
        probe.close()

    app = create_app(args.state_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return OK


if __name__ == "__main__":
    sys.exit(main())
