# Copyright 2025 Google LLC
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Batch command-line front end.

Every subcommand validates its JSON inputs, runs one tool handler and writes a
``RunReport``. Reports are deterministic: keys are sorted and timings are only
included with ``--timings``. Exit codes: 0 success, 1 computation error or a
failed check, 2 invalid input.
"""

import argparse
import json
import logging
import sys
import time
from collections.abc import Callable
from pathlib import Path
from typing import Any

from opentelemetry import trace
from opentelemetry.trace import Status, StatusCode

from app.config import Settings, get_settings
from app.tools.common import InputError, ToolResult, handle_errors, read_document
from app.tools.euler import (
    cmd_euler_cocycle,
    cmd_euler_length,
    cmd_euler_p_check,
    cmd_euler_pair,
)
from app.tools.group import ARITY, cmd_group
from app.tools.moduli import cmd_moduli
from app.tools.qb import (
    cmd_qb_ball,
    cmd_qb_check_cert,
    cmd_qb_equal,
    cmd_qb_expand,
    cmd_qb_word,
)
from app.tools.tower import cmd_tower_act, cmd_tower_kinf
from app.tools.verify import run_suite
from app.utils.tracing import setup_tracing
from app.utils.type import (
    Derivation,
    LiftedSymbol,
    QElementDoc,
    Relation,
    RunReport,
    Symbol,
    TowerCellDoc,
    Word,
)

EXIT_OK = 0
EXIT_COMPUTATION = 1
EXIT_INPUT = 2

Inputs = dict[str, str]
Handler = Callable[[argparse.Namespace, Settings, Inputs], ToolResult]


def _read(inputs: Inputs, path: str, model: Any) -> Any:
    doc, digest = read_document(path, model)
    inputs[path] = digest
    return doc


@handle_errors
def _moduli(args: argparse.Namespace, settings: Settings, inputs: Inputs) -> ToolResult:
    return cmd_moduli(args.n, args.variant, args.emit, args.jobs or settings.jobs, settings.max_n)


@handle_errors
def _group(args: argparse.Namespace, settings: Settings, inputs: Inputs) -> ToolResult:
    return cmd_group(args.op, [_read(inputs, path, Symbol) for path in args.symbols])


@handle_errors
def _qb(args: argparse.Namespace, settings: Settings, inputs: Inputs) -> ToolResult:
    if args.op in ("phi", "len"):
        return cmd_qb_word(args.op, _read(inputs, args.word, Word))
    if args.op == "expand":
        if args.element:
            return cmd_qb_expand(element=_read(inputs, args.element, QElementDoc))
        if not args.word:
            raise InputError("qb expand needs --word or --element")
        return cmd_qb_expand(word=_read(inputs, args.word, Word), label=args.label)
    if args.op == "check-cert":
        derivation = _read(inputs, args.derivation, Derivation) if args.derivation else None
        return cmd_qb_check_cert(derivation)
    if args.op == "ball":
        return cmd_qb_ball(args.n, args.radius)
    first, second = (_read(inputs, path, Word) for path in args.words)
    return cmd_qb_equal(first, second, args.depth)


@handle_errors
def _tower(args: argparse.Namespace, settings: Settings, inputs: Inputs) -> ToolResult:
    cell = _read(inputs, args.cell, TowerCellDoc)
    if args.op == "act":
        return cmd_tower_act(_read(inputs, args.group, Symbol), cell)
    return cmd_tower_kinf(cell)


@handle_errors
def _euler(args: argparse.Namespace, settings: Settings, inputs: Inputs) -> ToolResult:
    liftable = LiftedSymbol | Symbol
    if args.op == "cocycle":
        f, g = (_read(inputs, path, liftable) for path in (args.f, args.g))
        return cmd_euler_cocycle(f, g, args.method)
    if args.op == "length":
        return cmd_euler_length(_read(inputs, args.element, liftable), args.method)
    if args.op == "pair":
        relation = _read(inputs, args.relation, Relation) if args.relation else None
        return cmd_euler_pair(relation, args.method)
    return cmd_euler_p_check()


def _verify(args: argparse.Namespace, settings: Settings, inputs: Inputs) -> ToolResult:
    return run_suite(args.suite, settings.seed if args.seed is None else args.seed)


HANDLERS: dict[str, Handler] = {
    "moduli": _moduli,
    "group": _group,
    "qb": _qb,
    "tower": _tower,
    "euler": _euler,
    "verify": _verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="Write the report here instead of stdout")
    common.add_argument(
        "--timings", action="store_true", help="Include wall-clock timings in the report"
    )
    common.add_argument("--log-level", default=None, help="Overrides MODULI_LOG_LEVEL")

    parser = argparse.ArgumentParser(
        prog="moduli-tower",
        description="Exact computations on the real genus-zero moduli tower",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    moduli = sub.add_parser("moduli", parents=[common], help="Build a moduli cell complex")
    moduli.add_argument("--n", type=int, required=True, help="Number of leaves")
    moduli.add_argument("--variant", choices=["tilde", "bar", "bar-unrooted"], default="bar")
    moduli.add_argument("--emit", choices=["fvector", "chi", "betti", "complex"], default="fvector")
    moduli.add_argument("--jobs", type=int, default=None, help="Worker processes")

    group = sub.add_parser("group", parents=[common], help="Thompson and Neretin arithmetic")
    group.add_argument("op", choices=sorted(ARITY))
    group.add_argument("symbols", nargs="+", help="Symbol documents; for compose the first acts last")

    qb = sub.add_parser("qb", parents=[common], help="Quasi-braid words")
    qb.add_argument("op", choices=["phi", "len", "expand", "check-cert", "ball", "equal"])
    qb.add_argument("--word", default=None, help="Word document")
    qb.add_argument("--words", nargs=2, default=None, help="Two word documents for equal")
    qb.add_argument("--label", type=int, default=None, help="Expand a single label")
    qb.add_argument("--element", default=None, help="Element w·â^h document for expand")
    qb.add_argument("--derivation", default=None, help="Derivation document for check-cert")
    qb.add_argument("--n", type=int, default=4)
    qb.add_argument("--radius", type=int, default=2)
    qb.add_argument("--depth", type=int, default=6, help="Search depth for equal")

    tower = sub.add_parser("tower", parents=[common], help="Act on the dyadic towers")
    tower.add_argument("op", choices=["act", "kinf"])
    tower.add_argument("--cell", required=True, help="Tower cell document")
    tower.add_argument(
        "--group", "--element", dest="group", default=None, help="Group element document for act"
    )

    euler = sub.add_parser("euler", parents=[common], help="Stable length and the Euler class")
    euler.add_argument("op", choices=["cocycle", "length", "pair", "p-check"])
    euler.add_argument("-f", dest="f", default=None, help="First element for cocycle")
    euler.add_argument("-g", dest="g", default=None, help="Second element for cocycle, acting first")
    euler.add_argument("--element", default=None, help="Element for length")
    euler.add_argument("--relation", default=None, help="Commutator relation for pair")
    euler.add_argument("--method", choices=["bubble", "reversal"], default="bubble")

    verify = sub.add_parser("verify", parents=[common], help="Run the acceptance battery")
    verify.add_argument("--suite", choices=["acceptance", "quick"], default="acceptance")
    verify.add_argument("--seed", type=int, default=None, help="Overrides MODULI_SEED")
    return parser


REQUIRED: dict[tuple[str, str], tuple[str, ...]] = {
    ("qb", "phi"): ("--word",),
    ("qb", "len"): ("--word",),
    ("qb", "equal"): ("--words",),
    ("tower", "act"): ("--group",),
    ("euler", "cocycle"): ("-f", "-g"),
    ("euler", "length"): ("--element",),
}


def _check_arguments(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    for flag in REQUIRED.get((args.command, getattr(args, "op", "")), ()):
        if getattr(args, flag.lstrip("-")) is None:
            parser.error(f"{args.command} {args.op} needs {flag}")


def exit_code(result: ToolResult) -> int:
    if result.get("status") == "success":
        return EXIT_OK
    return EXIT_INPUT if result.get("kind") == "input" else EXIT_COMPUTATION


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _check_arguments(parser, args)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK

    settings = get_settings()
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format="%(asctime)s - %(levelname)s - %(message)s",
    )
    provider = setup_tracing(settings)
    tracer = trace.get_tracer(__name__)

    inputs: Inputs = {}
    start = time.perf_counter()
    with tracer.start_as_current_span(f"moduli-tower.{args.command}") as span:
        span.set_attribute("argv", " ".join(argv))
        result = HANDLERS[args.command](args, settings, inputs)
        if result.get("status") == "error":
            span.set_status(Status(StatusCode.ERROR, result.get("message", "")))
    elapsed = time.perf_counter() - start

    status = result.pop("status", "error")
    timings = result.pop("timings", {})
    report = RunReport(
        command=argv,
        inputs=inputs,
        status=status,
        outputs=result,
        timings={**timings, "total": round(elapsed, 3)} if args.timings else None,
    )
    text = json.dumps(report.model_dump(exclude_none=True), sort_keys=True, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
        logging.info(f"Report written to {args.out}")
    else:
        print(text)
    if provider is not None:
        provider.shutdown()
    return exit_code({"status": status, **result})


if __name__ == "__main__":
    sys.exit(main())
