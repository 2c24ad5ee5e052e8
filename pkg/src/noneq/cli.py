"""Command-line front end.

Exit codes: 0 success / true / pattern verified; 1 false / pattern mismatch
/ decomposition found when asserting none; 2 usage or parse error;
3 an Undecided verdict was encountered.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import bass_serre, criterion, witness
from .free_group import format_word, parse_word, qth_root
from .free_product import FPElement, FreeProductGroup, load_factor_file
from .parsing import ParseError
from .whitehead import is_primitive

__all__ = ["main", "entry"]

_SIDE_ALIASES = ("G1", "G2")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noneq",
        description="Free-group / free-product toolkit: word arithmetic, "
        "primitivity, Bass-Serre trees, and satisfaction-pattern reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("witness", help="evaluate the witness matrices of size n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--search-bound", type=int, default=None)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--out", default=None)
    p.add_argument("--jobs", type=int, default=None)

    p = sub.add_parser("primitive", help="test primitivity of a word in F_rank")
    p.add_argument("word")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--format", choices=("json", "table"), default="table")

    p = sub.add_parser("reduce", help="print the reduced form of a free-group word")
    p.add_argument("word")

    p = sub.add_parser("nf", help="normal form of an element of a free product")
    p.add_argument("word")
    p.add_argument("--factors", required=True)
    p.add_argument("--format", choices=("json", "table"), default="table")

    p = sub.add_parser("root", help="q-th roots of a word")
    p.add_argument("word")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--factors", default=None)
    p.add_argument("--format", choices=("json", "table"), default="table")

    tree = sub.add_parser("tree", help="Bass-Serre tree queries").add_subparsers(
        dest="tree_command", required=True
    )
    p = tree.add_parser("dist", help="distance between two vertices")
    p.add_argument("v1")
    p.add_argument("v2")
    p.add_argument("--factors", required=True)
    p = tree.add_parser("classify", help="elliptic/hyperbolic classification")
    p.add_argument("word")
    p.add_argument("--factors", required=True)
    p.add_argument("--format", choices=("json", "table"), default="table")
    p = tree.add_parser("axis", help="axis window of a hyperbolic element")
    p.add_argument("word")
    p.add_argument("--copies", type=int, required=True)
    p.add_argument("--factors", required=True)

    p = sub.add_parser("search", help="search u^p v^q decompositions of a target")
    p.add_argument("--target", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--syl-bound", type=int, required=True)
    p.add_argument("--factors", required=True)
    p.add_argument("--alphabet", required=True, help="comma-separated factor elements")

    pattern = sub.add_parser("pattern", help="satisfaction-matrix utilities").add_subparsers(
        dest="pattern_command", required=True
    )
    p = pattern.add_parser("check", help="check a SatMatrix JSON file against the pattern")
    p.add_argument("file")
    return parser


def _load_product(path: str) -> FreeProductGroup:
    group = load_factor_file(path)
    if not isinstance(group, FreeProductGroup):
        raise ValueError("factor spec must describe a free product")
    return group


def _parse_vertex(group: FreeProductGroup, text: str) -> bass_serre.TreeVertex:
    names = {f.name: i for i, f in enumerate(group.factors)}
    for i, alias in enumerate(_SIDE_ALIASES[: len(group.factors)]):
        names.setdefault(alias, i)
    word_text, dot, side_name = text.rpartition(".")
    side_name = side_name.strip()
    if not dot or side_name not in names:
        raise ValueError(
            f"vertex {text!r} must end in .<side>, one of {sorted(names)}"
        )
    return bass_serre.canonicalize(group.parse(word_text.strip()), names[side_name])


def _emit(payload: dict, fmt: str, table: str) -> None:
    print(json.dumps(payload) if fmt == "json" else table)


def _cmd_witness(args) -> int:
    jobs = args.jobs
    if jobs is None:
        jobs = int(os.environ.get("NONEQ_JOBS", "1"))
    report = witness.evaluate_matrix(args.n, args.search_bound, jobs=max(jobs, 1))
    text = (
        json.dumps(report.to_json(), indent=2)
        if args.format == "json"
        else report.render_table()
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    return 0 if report.pattern_ok and report.basis_all_ok else 1


def _cmd_primitive(args) -> int:
    word = parse_word(args.word)
    verdict = is_primitive(word, args.rank)
    _emit(
        {"word": str(word), "primitive": verdict.primitive, "trace_len": len(verdict.trace)},
        args.format,
        f"{word} is {'primitive' if verdict.primitive else 'not primitive'} in F_{args.rank}",
    )
    return 0 if verdict.primitive else 1


def _cmd_root(args) -> int:
    if args.factors:
        group = _load_product(args.factors)
        roots = sorted(group.roots(group.parse(args.word), args.q), key=str)
        _emit(
            {"roots": [str(r) for r in roots]},
            args.format,
            "\n".join(str(r) for r in roots) if roots else "no roots",
        )
        return 0 if roots else 1
    root = qth_root(parse_word(args.word), args.q)
    _emit(
        {"root": None if root is None else str(root)},
        args.format,
        "no root" if root is None else str(root),
    )
    return 0 if root is not None else 1


def _cmd_tree(args) -> int:
    group = _load_product(args.factors)
    if args.tree_command == "dist":
        print(bass_serre.distance(_parse_vertex(group, args.v1), _parse_vertex(group, args.v2)))
        return 0
    if args.tree_command == "classify":
        action = bass_serre.classify(group.parse(args.word))
        if isinstance(action, bass_serre.Hyperbolic):
            payload = {"type": "hyperbolic", "translation": action.translation}
            table = f"hyperbolic, translation {action.translation}"
        else:
            fixed = "all" if action.fixed is None else str(action.fixed)
            payload = {"type": "elliptic", "fixed": fixed}
            table = f"elliptic, fixes {fixed}"
        _emit(payload, args.format, table)
        return 0
    segment = bass_serre.axis_segment(group.parse(args.word), args.copies)
    for vertex in segment:
        print(vertex)
    return 0


def _cmd_search(args) -> int:
    group = _load_product(args.factors)
    alphabet = [group.parse(tok.strip()) for tok in args.alphabet.split(",") if tok.strip()]
    found = witness.search_power_decomposition(
        group.parse(args.target), args.p, args.q, args.syl_bound, alphabet
    )
    if found is None:
        print(json.dumps({"found": False}))
        return 0
    u, v = found
    print(json.dumps({"found": True, "u": str(u), "v": str(v)}))
    return 1


def _cmd_pattern(args) -> int:
    with open(args.file, encoding="utf-8") as handle:
        matrix = criterion.from_json(json.load(handle))
    ok = criterion.matches_pattern(matrix)
    print(json.dumps({"n": matrix.n, "matches": ok}))
    return 0 if ok else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "witness":
            return _cmd_witness(args)
        if args.command == "primitive":
            return _cmd_primitive(args)
        if args.command == "reduce":
            print(format_word(parse_word(args.word)))
            return 0
        if args.command == "nf":
            group = _load_product(args.factors)
            element = group.parse(args.word)
            _emit(
                {"word": str(element), "syl": element.syl_length},
                args.format,
                f"{element}  (syl {element.syl_length})",
            )
            return 0
        if args.command == "root":
            return _cmd_root(args)
        if args.command == "tree":
            return _cmd_tree(args)
        if args.command == "search":
            return _cmd_search(args)
        if args.command == "pattern":
            return _cmd_pattern(args)
        raise AssertionError(f"unhandled command {args.command}")
    except witness.UndecidedCellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
