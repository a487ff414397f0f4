"""Command line entry point: ``dioa <command> ...``.

Exit codes: 0 when the command succeeds or the checked property holds, 1 when
a property fails (a witness is printed), 2 on usage, load or validation errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .algebra import IncompatibleError, compose_sioa, hide_sioa, rename_sioa
from .automata import ConfigAutomaton, ca_text, compose_ca, validate_ca
from .behavior import trace_text
from .core import ModelError, validate_sioa
from .explorer import THEOREMS, as_sioa, check_theorem, enumerate_traces, trace_inclusion, word_text
from .modelio import (ModelLoadError, document, emit_document, example_names,
                      example_text, load_model)
from .randgen import random_bundle

OK, FAILED, ERROR = 0, 1, 2
FALLBACK_DEPTH = 6


class UsageError(Exception):
    pass


def default_depth() -> int:
    raw = os.environ.get("DIOA_DEPTH_DEFAULT")
    if raw is None:
        return FALLBACK_DEPTH
    try:
        depth = int(raw)
    except ValueError:
        raise UsageError(f"DIOA_DEPTH_DEFAULT must be an integer, got {raw!r}") from None
    if depth < 0:
        raise UsageError("DIOA_DEPTH_DEFAULT must be non-negative")
    return depth


def _depth(args) -> int:
    depth = default_depth() if args.depth is None else args.depth
    if depth < 0:
        raise UsageError("--depth must be non-negative")
    return depth


def _names(text: str) -> list:
    return [x.strip() for x in text.split(",") if x.strip()]


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands


def cmd_validate(args) -> int:
    model = load_model(args.model)
    for name in model.names():
        m = model.target(name)
        if isinstance(m, ConfigAutomaton):
            report, kind = validate_ca(m), "configuration automaton"
        else:
            report, kind = validate_sioa(m), "automaton"
        print(f"{name}: {kind}, {len(as_sioa(m).states)} states, {report}")
    for name in model.bundles:
        print(f"{name}: bundle")
    return OK


def cmd_compose(args) -> int:
    model = load_model(args.model)
    parts = [model.target(n) for n in _names(args.autos)]
    if not parts:
        raise UsageError("--autos needs at least one name")
    if all(isinstance(p, ConfigAutomaton) for p in parts):
        result = compose_ca(parts, args.id).underlying
    else:
        result = compose_sioa([as_sioa(p) for p in parts], args.id)
    _write(emit_document(document([result])), args.out)
    return OK


def cmd_hide(args) -> int:
    model = load_model(args.model)
    result = hide_sioa(as_sioa(model.target(args.target)), _names(args.actions))
    _write(emit_document(document([result])), args.out)
    return OK


def cmd_rename(args) -> int:
    model = load_model(args.model)
    a = as_sioa(model.target(args.target))
    mapping = {x: x for x in a.acts()}
    for pair in _names(args.map):
        if "=" not in pair:
            raise UsageError(f"--map entries look like old=new, got {pair!r}")
        old, new = pair.split("=", 1)
        mapping[old] = new
    result = rename_sioa(a, mapping, args.id)
    _write(emit_document(document([result])), args.out)
    return OK


def cmd_traces(args) -> int:
    model = load_model(args.model)
    traces = enumerate_traces(model.target(args.target), _depth(args), args.actions_only)
    render = word_text if args.actions_only else trace_text
    if args.json:
        print(json.dumps([render(t) for t in traces], ensure_ascii=False))
    else:
        for t in traces:
            print(render(t))
    return OK


def cmd_check_inclusion(args) -> int:
    model = load_model(args.model)
    r = trace_inclusion(model.target(args.left), model.target(args.right), _depth(args),
                        args.actions_only)
    if args.json:
        print(json.dumps({"result": "pass" if r.ok else "fail",
                          "witness": r.witness_text() if not r.ok else None}, ensure_ascii=False))
    elif r.ok:
        print(f"pass: traces of {args.left} are traces of {args.right} up to depth {_depth(args)}")
    else:
        print(f"fail: witness {r.witness_text()}")
    return OK if r.ok else FAILED


def cmd_ca_generate(args) -> int:
    model = load_model(args.model)
    x = model.configuration_automata.get(args.name)
    if x is None:
        raise UsageError(f"{args.name!r} is not a configuration automaton of the model")
    _write(ca_text(x) + "\n", args.out)
    report = validate_ca(x)
    print(f"{args.name}: {len(x.underlying.states)} states, {report}", file=sys.stderr)
    return OK if report.ok else ERROR


def cmd_check_theorem(args) -> int:
    depth = _depth(args)
    if args.bundle == "random":
        if args.seed is None:
            raise UsageError("--bundle random needs --seed")
        bundle = random_bundle(args.seed, args.id)
    else:
        if not args.model:
            raise UsageError("--model is required unless --bundle is random")
        bundle = load_model(args.model).bundle(args.bundle)
    try:
        report = check_theorem(args.id, bundle, depth)
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(report.to_json() if args.json else report.line())
    return FAILED if report.result == "fail" else OK


def cmd_examples(args) -> int:
    if args.action == "list":
        for name in example_names():
            print(name)
        return OK
    names = [args.name] if args.name else example_names()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name in names:
            (out / f"{name}.dioa.json").write_text(example_text(name), encoding="utf-8")
            print(out / f"{name}.dioa.json")
    elif len(names) == 1:
        sys.stdout.write(example_text(names[0]))
    else:
        raise UsageError("emitting several examples needs --out DIR")
    return OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dioa", description="Explore and check dynamic I/O automata.")
    sub = p.add_subparsers(dest="command", required=True)

    def model_arg(q):
        q.add_argument("model", help="model file, or the name of a bundled example")

    def depth_arg(q):
        q.add_argument("--depth", type=int, help="execution length bound (default: $DIOA_DEPTH_DEFAULT or 6)")

    q = sub.add_parser("validate", help="load a model and report on every automaton")
    model_arg(q)
    q.set_defaults(run=cmd_validate)

    q = sub.add_parser("compose", help="compose automata of a model")
    model_arg(q)
    q.add_argument("--autos", required=True, help="comma-separated names")
    q.add_argument("--id", help="id of the result")
    q.add_argument("--out")
    q.set_defaults(run=cmd_compose)

    q = sub.add_parser("hide", help="hide output actions of an automaton")
    model_arg(q)
    q.add_argument("--target", required=True)
    q.add_argument("--actions", required=True, help="comma-separated actions")
    q.add_argument("--out")
    q.set_defaults(run=cmd_hide)

    q = sub.add_parser("rename", help="rename actions of an automaton")
    model_arg(q)
    q.add_argument("--target", required=True)
    q.add_argument("--map", required=True, help="comma-separated old=new pairs")
    q.add_argument("--id", help="id of the result")
    q.add_argument("--out")
    q.set_defaults(run=cmd_rename)

    q = sub.add_parser("traces", help="list traces up to a depth")
    model_arg(q)
    q.add_argument("--target", required=True)
    depth_arg(q)
    q.add_argument("--actions-only", action="store_true")
    q.add_argument("--json", action="store_true")
    q.set_defaults(run=cmd_traces)

    q = sub.add_parser("check-inclusion", help="bounded trace inclusion of two targets")
    model_arg(q)
    q.add_argument("--left", required=True)
    q.add_argument("--right", required=True)
    depth_arg(q)
    q.add_argument("--actions-only", action="store_true")
    q.add_argument("--json", action="store_true")
    q.set_defaults(run=cmd_check_inclusion)

    q = sub.add_parser("ca", help="configuration automata")
    casub = q.add_subparsers(dest="ca_command", required=True)
    g = casub.add_parser("generate", help="print a configuration automaton of a model")
    model_arg(g)
    g.add_argument("--name", required=True)
    g.add_argument("--out")
    g.set_defaults(run=cmd_ca_generate)

    q = sub.add_parser("check", help="bounded theorem checks")
    chsub = q.add_subparsers(dest="check_command", required=True)
    t = chsub.add_parser("theorem", help="run one theorem oracle on a bundle")
    t.add_argument("--id", required=True, choices=THEOREMS)
    t.add_argument("--bundle", required=True, help="bundle id in --model, or 'random'")
    t.add_argument("--model")
    t.add_argument("--seed", type=int)
    depth_arg(t)
    t.add_argument("--json", action="store_true")
    t.set_defaults(run=cmd_check_theorem)

    q = sub.add_parser("examples", help="bundled example models")
    q.add_argument("action", choices=("list", "emit"))
    q.add_argument("name", nargs="?")
    q.add_argument("--out", help="directory to write into")
    q.set_defaults(run=cmd_examples)
    return p


def run_command(argv: list | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return OK if e.code == 0 else ERROR
    try:
        return args.run(args)
    except (UsageError, ModelLoadError, ModelError, IncompatibleError) as e:
        print(f"error: {e}", file=sys.stderr)
        return ERROR


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
