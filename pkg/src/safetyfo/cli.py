"""Command-line front end.

Exit status: 0 on success (or equivalent / property holds), 1 when a check
finds a counterexample or a violation, 2 on usage, syntax or fragment errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Sequence

from . import check, selftest
from .fragments import FragmentError, classify_fo, classify_ltl
from .semantics import (
    UnassignedVariableError,
    eval_cosafetyfo_lasso,
    eval_fo_fin,
    eval_ltl_fin,
    eval_ltl_lasso,
    parse_lasso,
    parse_word,
)
from .syntax import FormulaSyntaxError, UnknownAtomError, fo, ltl, parse_fo, parse_ltl
from .translate import (
    NormalFormError,
    cosafetyfo_to_ebfo,
    cosafetyfo_to_ltl,
    ebfo_to_cosafetyfo,
    eliminate_for_finite_to_cosafety,
    eliminate_for_finite_to_safety,
    fo_to_cosafetyfo,
    ltl_to_fo,
    normal_form,
    normalform_to_ltl,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _alphabet(args) -> tuple[str, ...] | None:
    if not getattr(args, "alphabet", None):
        return None
    return tuple(sorted({p.strip() for p in args.alphabet.split(",") if p.strip()}))


def _parse(text: str, logic: str, args):
    alphabet = _alphabet(args)
    return parse_ltl(text, alphabet) if logic == "ltl" else parse_fo(text, alphabet)


def _size(f) -> int:
    return ltl.size(f) if isinstance(f, ltl.Formula) else fo.size(f)


def _emit(args, fields: list[tuple[str, object]], verdict: str, text: str) -> None:
    if args.format == "structured":
        for k, v in fields:
            print(f"{k}: {v}")
        print(f"verdict: {verdict}")
    else:
        print(text)


def _emit_report(args, report: check.CheckReport) -> int:
    print(report.to_structured() if args.format == "structured" else report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


# ---------------------------------------------------------------- commands


def cmd_parse(args) -> int:
    f = _parse(args.formula, args.logic, args)
    _emit(args, [("logic", args.logic), ("formula", f), ("size", _size(f))], "ok", str(f))
    return EXIT_OK


def cmd_classify(args) -> int:
    f = _parse(args.formula, args.logic, args)
    verdict = classify_ltl(f) if args.logic == "ltl" else classify_fo(f)
    lines = verdict.lines()
    if args.format == "structured":
        print(f"formula: {f}")
        print("\n".join(lines))
        print("verdict: ok")
    else:
        print("\n".join(lines))
    return EXIT_OK


_SOURCES = {"ltl": "ltl", "cosafetyfo": "fo", "fo": "fo", "ebfo": "fo"}


def _translator(src: str, dst: str, args) -> Callable:
    table: dict[tuple[str, str], Callable] = {
        ("ltl", "cosafetyfo"): lambda f: ltl_to_fo(f, args.var, args.semantics, args.strict),
        ("ltl", "cosafety-fin"): eliminate_for_finite_to_cosafety,
        ("ltl", "safety-fin"): eliminate_for_finite_to_safety,
        ("cosafetyfo", "cosafetyltl-nowx"): lambda f: cosafetyfo_to_ltl(f, args.budget),
        ("cosafetyfo", "ebfo"): cosafetyfo_to_ebfo,
        ("fo", "cosafetyfo-prefix"): lambda f: fo_to_cosafetyfo(f, args.var),
        ("fo", "cosafetyfo"): lambda f: fo_to_cosafetyfo(f, args.var),
        ("ebfo", "cosafetyfo"): lambda f: ebfo_to_cosafetyfo(f, args.var),
    }
    try:
        return table[(src, dst)]
    except KeyError:
        pairs = ", ".join(f"{a}->{b}" for a, b in table)
        raise UsageError(f"no translation from {src} to {dst}; available: {pairs}") from None


def cmd_translate(args) -> int:
    fn = _translator(args.source, args.target, args)
    f = _parse(args.formula, _SOURCES[args.source], args)
    if args.semantics == "infinite" and args.source != "ltl":
        raise UsageError("--semantics infinite applies to --from ltl only")
    out = fn(f)
    _emit(
        args,
        [("from", args.source), ("to", args.target), ("semantics", args.semantics), ("input", f),
         ("output", out), ("input-size", _size(f)), ("output-size", _size(out))],
        "ok",
        str(out),
    )
    return EXIT_OK


def _assignment(text: str | None) -> dict[str, int]:
    out: dict[str, int] = {}
    for part in (text or "").split(","):
        if part.strip():
            name, _, value = part.partition("=")
            try:
                out[name.strip()] = int(value)
            except ValueError:
                raise UsageError(f"malformed assignment {part!r}; expected name=position") from None
    return out


def cmd_eval(args) -> int:
    if (args.word is None) == (args.lasso is None):
        raise UsageError("give exactly one of --word and --lasso")
    f = _parse(args.formula, args.logic, args)
    fields: list[tuple[str, object]] = [("formula", f)]
    if args.word is not None:
        w = parse_word(args.word)
        fields.append(("word", w))
        if args.logic == "ltl":
            result = eval_ltl_fin(f, w, args.position)
            fields.append(("position", args.position))
        else:
            asg = _assignment(args.assign) or {v: args.position for v in fo.free_vars(f)}
            result = eval_fo_fin(f, w, asg)
            fields.append(("assignment", ",".join(f"{k}={v}" for k, v in sorted(asg.items()))))
        value = "true" if result else "false"
    else:
        w = parse_lasso(args.lasso)
        fields.append(("lasso", w))
        if args.logic == "ltl":
            value = "true" if eval_ltl_lasso(f, w, args.position) else "false"
            fields.append(("position", args.position))
        else:
            asg = _assignment(args.assign) or {v: args.position for v in fo.free_vars(f)}
            witness = eval_cosafetyfo_lasso(f, w, asg, args.bound)
            value = "true" if witness.satisfied else f"unknown-at-{args.bound}"
            if witness.satisfied:
                fields.append(("witness-prefix", witness.prefix_length))
    _emit(args, fields, value, value)
    return EXIT_OK


def _logic_pair(args):
    return [_parse(t, args.logic, args) for t in args.formulas]


def cmd_check_equiv(args) -> int:
    f1, f2 = _logic_pair(args)
    report = check.lang_equiv_fin(f1, f2, _alphabet(args), args.max_len, args.positions)
    return _emit_report(args, report)


def cmd_prefix_closure(args) -> int:
    f = _parse(args.formula, args.logic, args)
    return _emit_report(args, check.prefix_closure_check(f, _alphabet(args), args.max_len, args.max_ext))


def cmd_good_prefix(args) -> int:
    f = parse_ltl(args.formula, _alphabet(args))
    report = check.good_prefix_evidence(f, parse_lasso(args.lasso), args.max_prefix, args.ext_bound, _alphabet(args))
    return _emit_report(args, report)


def cmd_normal_form(args) -> int:
    f = parse_fo(args.formula, _alphabet(args))
    free = tuple(v.strip() for v in args.free.split(",")) if args.free else None
    nf = normal_form(f, free, args.budget)
    if args.format == "structured":
        print(nf.to_structured())
        print("verdict: ok")
        return EXIT_OK
    print(nf.to_structured())
    if len(nf.free) == 1:
        print(f"ltl: {normalform_to_ltl(nf)}")
    return EXIT_OK


def cmd_enumerate_lang(args) -> int:
    f = _parse(args.formula, args.logic, args)
    words = check.enumerate_language(f, _alphabet(args), args.max_len, args.position)
    if args.format == "structured":
        print(f"formula: {f}")
        print(f"max-len: {args.max_len}")
        for w in words:
            print(f"word: {w}")
        print(f"count: {len(words)}")
        print("verdict: ok")
    else:
        for w in words:
            print(w)
    return EXIT_OK


def cmd_witness_aa(args) -> int:
    return _emit_report(args, check.separation_witness_aa())


def cmd_selftest(args) -> int:
    outcomes = selftest.run(args.seed)
    for o in outcomes:
        status = "pass" if o.ok else "FAIL"
        if args.format == "structured":
            print(f"{o.name}: {status}")
        else:
            print(f"{status:4s}  {o.name:24s} {o.seconds:6.2f}s  {'' if o.ok else o.detail}".rstrip())
    ok = all(o.ok for o in outcomes)
    if args.format == "structured":
        print(f"seed: {args.seed}")
        print(f"verdict: {'pass' if ok else 'fail'}")
    return EXIT_OK if ok else EXIT_FAIL


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alphabet", help="comma-separated letters, e.g. a,b (default: letters of the input)")
    common.add_argument("--format", choices=("text", "structured"), default="text")

    logic = argparse.ArgumentParser(add_help=False)
    logic.add_argument("--logic", choices=("ltl", "fo"), default="ltl")

    p = argparse.ArgumentParser(
        prog="safetyfo",
        description="Safety and co-safety fragments of LTL and FO.",
        epilog="An argument @FILE is replaced by the lines of FILE, one argument per line.",
        fromfile_prefix_chars="@",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", parents=[common, logic], help="parse and pretty-print a formula")
    s.add_argument("formula")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("classify", parents=[common, logic], help="report fragment membership")
    s.add_argument("formula")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("translate", parents=[common], help="run one of the translations")
    s.add_argument("--from", dest="source", choices=tuple(_SOURCES), required=True)
    s.add_argument("--to", dest="target", required=True,
                   choices=("cosafetyfo", "cosafetyltl-nowx", "ebfo", "cosafetyfo-prefix", "cosafety-fin", "safety-fin"))
    s.add_argument("--semantics", choices=("finite", "infinite"), default="finite")
    s.add_argument("--var", default="x", help="free variable of first-order output (default x)")
    s.add_argument("--strict", action="store_true", help="desugar non-strict guards in ltl->cosafetyfo output")
    s.add_argument("--budget", type=int, default=10**6)
    s.add_argument("formula")
    s.set_defaults(func=cmd_translate)

    s = sub.add_parser("eval", parents=[common, logic], help="evaluate on a finite or lasso word")
    s.add_argument("--word", help="finite word, e.g. '{a};{};{a,b}'")
    s.add_argument("--lasso", help="lasso word 'prefix | loop', e.g. '{a};{} | {b}'")
    s.add_argument("--position", type=int, default=0)
    s.add_argument("--assign", help="first-order assignment, e.g. x=0,y=2")
    s.add_argument("--bound", type=int, default=8, help="prefix bound for first-order lasso evaluation")
    s.add_argument("formula")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("check-equiv", parents=[common, logic], help="bounded language equivalence")
    s.add_argument("--max-len", type=int, default=5)
    s.add_argument("--positions", choices=("all", "zero"), default="all")
    s.add_argument("formulas", nargs=2)
    s.set_defaults(func=cmd_check_equiv)

    s = sub.add_parser("prefix-closure", parents=[common, logic], help="bounded prefix-extension check")
    s.add_argument("--max-len", type=int, default=4)
    s.add_argument("--max-ext", type=int, default=2)
    s.add_argument("formula")
    s.set_defaults(func=cmd_prefix_closure)

    s = sub.add_parser("good-prefix", parents=[common], help="search a good prefix of a lasso word")
    s.add_argument("--lasso", required=True)
    s.add_argument("--max-prefix", type=int, default=4)
    s.add_argument("--ext-bound", type=int, default=3)
    s.add_argument("formula")
    s.set_defaults(func=cmd_good_prefix)

    s = sub.add_parser("normal-form", parents=[common], help="normal form of a coSafetyFO formula")
    s.add_argument("--free", help="free-variable signature, root first (default: order of occurrence)")
    s.add_argument("--budget", type=int, default=10**6)
    s.add_argument("formula")
    s.set_defaults(func=cmd_normal_form)

    s = sub.add_parser("enumerate-lang", parents=[common, logic], help="list satisfying words")
    s.add_argument("--max-len", type=int, default=4)
    s.add_argument("--position", type=int, default=0)
    s.add_argument("formula")
    s.set_defaults(func=cmd_enumerate_lang)

    s = sub.add_parser("witness-aa", parents=[common], help="check the {aa} separation example")
    s.set_defaults(func=cmd_witness_aa)

    s = sub.add_parser("selftest", parents=[common], help="run the seeded invariant suite")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormulaSyntaxError, UnknownAtomError, FragmentError, NormalFormError, UsageError,
            UnassignedVariableError, IndexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
