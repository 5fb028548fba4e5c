"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget
exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from . import corpus as corpora
from . import formats
from .bands import band_canon, free_band, g_word, i_word, parse_word, phi_identity, render_tree, representative, format_word
from .errors import BudgetExceeded, InputError, SemigroupError, TermSyntaxError, UnknownName
from .hierarchy import HierarchyReport, classify
from .languages import DEFAULT_LENGTH_BOUND, check_product, classify_language, syntactic_monoid
from .malcev import MalcevSide, sim_d, sim_k
from .semigroup import DEFAULT_ELEMENT_CAP, is_band, quotient
from .suites import SUITES, SuiteConfig, run_suite
from .terms import (
    DEFAULT_ASSIGNMENT_BUDGET,
    builtin_identity,
    builtin_names,
    dag_nodes,
    parse_identity,
    render,
    satisfies_witness,
    tree_size,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("finsemi")


# -- helpers -----------------------------------------------------------------------

def load_semigroup(spec: str, cap: int):
    """A file path, or ``named:NAME`` for a built-in example."""
    if spec.startswith("named:"):
        name = spec[len("named:"):]
        if name not in corpora.NAMED:
            raise InputError(f"unknown named semigroup {name!r}; "
                             f"choose from {', '.join(corpora.NAMED)}")
        return corpora.named(name)
    return formats.load_semigroup(spec, cap)


def element_label(S, x: int) -> str:
    names = corpora.ELEMENT_NAMES.get(S.name or "")
    return names[x] if names else str(x)


def _yn(b) -> str:
    return "yes" if b else "no"


def _levels(d: dict) -> str:
    return " ".join(f"{m}:{_yn(v)}" for m, v in d.items())


def report_text(rep: HierarchyReport) -> str:
    def lvl(v):
        return "-" if v is None else str(v)
    lines = [f"in DA: {_yn(rep.in_da)}",
             f"min R level: {lvl(rep.min_r)}",
             f"min L level: {lvl(rep.min_l)}",
             f"R levels: {_levels(rep.r_levels)}",
             f"L levels: {_levels(rep.l_levels)}",
             "flags: " + " ".join(f"{k}={_yn(v)}" for k, v in rep.flags.items())]
    lines += [f"note: {n}" for n in rep.notes]
    return "\n".join(lines)


def emit(args, payload: dict, text: str):
    if args.format == "json":
        sys.stdout.write(formats.dump_json(payload))
    else:
        print(text)


def _semigroup_info(S) -> dict:
    return {"name": S.name, "order": S.order, "monoid": S.identity is not None}


# -- commands -----------------------------------------------------------------------

def cmd_classify_sg(args) -> int:
    S = load_semigroup(args.input, args.budget_elems)
    rep = classify(S, args.max_m)
    payload = {"semigroup": _semigroup_info(S), "report": rep.to_dict()}
    head = f"{S.name or args.input}: order {S.order}"
    emit(args, payload, head + "\n" + report_text(rep))
    return EXIT_OK


def _identities(args):
    if args.identity_file:
        return formats.load_identities(args.identity_file)
    if args.identity in builtin_names():
        return builtin_identity(args.identity)
    try:
        return parse_identity(args.identity)
    except TermSyntaxError as exc:
        raise InputError(str(exc)) from None


def cmd_check_id(args) -> int:
    S = load_semigroup(args.input, args.budget_elems)
    results = []
    lines = []
    for ident in _identities(args):
        wit = satisfies_witness(S, ident, args.budget_assignments)
        text = f"{render(ident.lhs)} = {render(ident.rhs)}"
        if wit is None:
            lines.append(f"HOLDS  {text}")
        else:
            where = ", ".join(f"{v}↦{element_label(S, x)}" for v, x in wit.items())
            lines.append(f"FAILS, {where}  {text}")
        results.append({"identity": text, "holds": wit is None,
                        "witness": None if wit is None else
                        {v: element_label(S, x) for v, x in wit.items()}})
    holds = all(r["holds"] for r in results)
    emit(args, {"semigroup": _semigroup_info(S), "holds": holds, "identities": results},
         "\n".join(lines))
    return EXIT_OK


def cmd_emit_phi(args) -> int:
    m = args.m
    if not 2 <= m <= 6:
        raise InputError("m must lie between 2 and 6")
    payload = {"m": m}
    lines = []
    for side, mirrored in (("R", False), ("L", True)):
        ident = phi_identity(m, mirrored)
        nodes = len(dag_nodes(ident.lhs, ident.rhs))
        size = tree_size(ident.lhs) + tree_size(ident.rhs)
        g, i = g_word(m), i_word(m)
        if mirrored:
            g, i = g[::-1], i[::-1]
        payload[side] = {"words": [format_word(g), format_word(i)],
                         "lhs": render(ident.lhs), "rhs": render(ident.rhs),
                         "dag_nodes": nodes, "tree_size": size}
        lines += [f"{side}_{m}: phi({format_word(g)}) = phi({format_word(i)})",
                  f"  {render(ident.lhs)}",
                  f"  = {render(ident.rhs)}",
                  f"  DAG nodes {nodes}, unfolded tree size {size}"]
    emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_quotient(args) -> int:
    S = load_semigroup(args.input, args.budget_elems)
    side = MalcevSide(args.side)
    c = sim_k(S) if side is MalcevSide.K else sim_d(S)
    Q, class_of = quotient(S, c)
    payload = {"semigroup": _semigroup_info(S), "side": side.value,
               "class_of": list(class_of), "quotient": Q.rows(),
               "quotient_identity": Q.identity}
    text = (f"S/~{side.value}: {S.order} -> {Q.order} elements\n"
            f"classes: {' '.join(map(str, class_of))}\n" + formats.format_cayley(Q).rstrip())
    emit(args, payload, text)
    return EXIT_OK


def cmd_green(args) -> int:
    S = load_semigroup(args.input, args.budget_elems)
    g = S.greens
    payload = {"semigroup": _semigroup_info(S)}
    lines = [f"{S.name or args.input}: order {S.order}"]
    for kind in ("R", "L", "J", "H"):
        cls = [[element_label(S, x) for x in c] for c in g.classes(kind)]
        payload[kind] = cls
        lines.append(f"{kind}-classes: " + " ".join("{" + ",".join(c) + "}" for c in cls))
    payload["idempotents"] = [element_label(S, e) for e in S.idempotents]
    lines.append("idempotents: " + " ".join(payload["idempotents"]))
    emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_band_canon(args) -> int:
    try:
        words = [parse_word(w) for w in args.words]
    except ValueError as exc:
        raise InputError(str(exc)) from None
    trees = [band_canon(w) for w in words]
    items = [{"word": format_word(w), "canonical": render_tree(t),
              "representative": format_word(representative(t))}
             for w, t in zip(words, trees)]
    equal = all(t == trees[0] for t in trees)
    payload = {"words": items, "all_equal": equal}
    lines = [f"{it['word']}: {it['canonical']}  rep {it['representative']}" for it in items]
    if len(words) > 1:
        lines.append(f"equal in the free band: {_yn(equal)}")
    emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_free_band(args) -> int:
    if not 1 <= args.k <= 3:
        raise InputError("k must lie between 1 and 3")
    F = free_band(args.k, args.budget_elems)
    payload = {"k": args.k, "order": F.order, "band": is_band(F.semigroup)}
    lines = [f"|FB({args.k})| = {F.order}", f"every element idempotent: {_yn(payload['band'])}"]
    if args.elements:
        payload["elements"] = [format_word(w) for w in F.words]
        lines += [f"{i}: {format_word(w)}" for i, w in enumerate(F.words)]
    emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_classify_lang(args) -> int:
    d = formats.load_dfa(args.input)
    sm = syntactic_monoid(d, args.budget_elems)
    rep = classify_language(d, args.max_m, args.budget_elems)
    payload = {"minimal_states": sm.dfa.state_count, "monoid_order": sm.order,
               "monoid": sm.monoid.rows(),
               "letter_image": dict(sorted(sm.letter_image.items())),
               "accepting_subset": sorted(sm.accepting_subset), "report": rep.to_dict()}
    text = (f"minimal DFA: {sm.dfa.state_count} states\n"
            f"syntactic monoid: order {sm.order}, letters "
            + ", ".join(f"{a}->{x}" for a, x in sorted(sm.letter_image.items()))
            + f", image of L {sorted(sm.accepting_subset)}\n" + report_text(rep))
    emit(args, payload, text)
    return EXIT_OK


def cmd_product_check(args) -> int:
    p = formats.load_product(args.input)
    v = check_product(p, args.len_bound)
    payload = {"product": str(p), "verdict": v.to_dict()}
    lines = [f"product {p}",
             f"deterministic: {_yn(v.deterministic)}",
             f"co-deterministic: {_yn(v.codeterministic)}",
             f"unambiguous: {_yn(v.unambiguous)}",
             f"brute force up to length {v.length_bound}: "
             + ("agrees" if v.consistent else "DISAGREES")]
    emit(args, payload, "\n".join(lines))
    return EXIT_OK if v.consistent else EXIT_FAIL


def cmd_verify(args) -> int:
    suite = SUITES[args.suite]
    corpus = []
    if suite.uses_corpus:
        if args.corpus_max_order > 0:
            corpus += list(corpora.small_corpus(args.corpus_max_order))
        if args.transformations > 0:
            corpus += corpora.transformation_corpus(args.transformations, args.seed)
    if args.m:
        ms = tuple(args.m)
    else:
        ms = (2, 3) if args.suite == "nil-corner" else (1, 2)
    cfg = SuiteConfig(m_values=ms, max_m=args.max_m, budget=args.budget_assignments,
                      len_bound=args.len_bound, fb3_level4=args.fb3_level4)
    rep = run_suite(args.suite, corpus, cfg, jobs=args.jobs)
    payload = rep.to_dict()
    if args.output:
        Path(args.output).write_text(formats.dump_json(payload))
    status = "PASS" if rep.passed else "FAIL"
    lines = [f"{status} {rep.name}: checked {rep.checked}, "
             f"disagreements {len(rep.disagreements)}, skipped {len(rep.skipped)}"]
    lines += [f"note: {n}" for n in rep.notes]
    lines += [f"disagreement: {d}" for d in rep.disagreements[:10]]
    emit(args, payload, "\n".join(lines))
    return EXIT_OK if rep.passed else EXIT_FAIL


# -- argument parsing -----------------------------------------------------------------

def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _global_flags(p, suppress: bool):
    def d(value):
        return argparse.SUPPRESS if suppress else value
    p.add_argument("--max-m", type=_positive, default=d(5), help="highest level examined")
    p.add_argument("--budget-elems", type=_positive, default=d(DEFAULT_ELEMENT_CAP),
                   help="element cap for closures")
    p.add_argument("--budget-assignments", type=_positive,
                   default=d(DEFAULT_ASSIGNMENT_BUDGET), help="assignment cap for identities")
    p.add_argument("--len-bound", type=_positive, default=d(DEFAULT_LENGTH_BOUND),
                   help="word length for brute-force language checks")
    p.add_argument("--format", choices=("text", "json"), default=d("text"))
    p.add_argument("--jobs", type=_positive, default=d(1), help="worker processes")
    p.add_argument("--seed", type=int, default=d(0), help="seed for sampled corpora")
    p.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finsemi",
                                     description="Finite semigroups, DA and its hierarchy.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(fn=fn)
        return p

    sg_help = "Cayley/transformation file, or named:NAME"
    p = add("classify-sg", cmd_classify_sg, "place a semigroup in the hierarchy")
    p.add_argument("input", help=sg_help)
    p = add("check-id", cmd_check_id, "check pseudo-identities, with a witness")
    p.add_argument("input", help=sg_help)
    p.add_argument("identity", nargs="?", default="DA",
                   help=f"identity text or one of {', '.join(builtin_names())}")
    p.add_argument("--identity-file")
    p = add("emit-phi", cmd_emit_phi, "print the phi(G_m) = phi(I_m) identities")
    p.add_argument("m", type=int)
    p = add("quotient", cmd_quotient, "print S/~K or S/~D")
    p.add_argument("input", help=sg_help)
    p.add_argument("--side", choices=("K", "D"), default="K")
    p = add("green", cmd_green, "Green's classes")
    p.add_argument("input", help=sg_help)
    p = add("band-canon", cmd_band_canon, "free-band canonical forms of words")
    p.add_argument("words", nargs="+", help="words like x2x1x2 or bab")
    p = add("free-band", cmd_free_band, "build FB(k)")
    p.add_argument("k", type=int)
    p.add_argument("--elements", action="store_true", help="list the elements")
    p = add("classify-lang", cmd_classify_lang, "classify a regular language given as a DFA")
    p.add_argument("input", help="DFA file")
    p = add("product-check", cmd_product_check, "product verdicts for L0 a1 L1 ...")
    p.add_argument("input", help="product expression file")
    p = add("verify", cmd_verify, "run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--m", type=_positive, action="append",
                   help="level parameter (repeatable)")
    p.add_argument("--corpus-max-order", type=int, default=4,
                   help="include all tables up to this order (0 for none)")
    p.add_argument("--transformations", type=int, default=200,
                   help="number of sampled transformation semigroups (0 for none)")
    p.add_argument("--fb3-level4", action="store_true",
                   help="band-interval: also check level 4 on FB(3)")
    p.add_argument("--output", help="also write the JSON report here")
    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, UnknownName, TermSyntaxError, SemigroupError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
