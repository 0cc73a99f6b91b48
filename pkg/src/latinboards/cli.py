"""Command-line surface: build, solve, label, count, verify, render, serve.

Commands are pipeline-friendly: ``catalog build`` writes a board
document to stdout, ``solve-warp`` reads one and writes a solution
document, ``label`` turns that into a labeled board, and ``critical``
produces a puzzle document the server and play client consume.

Exit codes: 0 ok, 1 usage error, 2 verification failure, 3 search
exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Mapping, Sequence

from latinboards import catalog
from latinboards.critical import PartialBoard, classify_partial, find_critical_set
from latinboards.errors import LatinBoardsError, LoadError
from latinboards.render import board_layout, render_svg
from latinboards.serialize import (
    SCHEMA_BOARD,
    SCHEMA_PUZZLE,
    SCHEMA_SOLUTION,
    board_from_doc,
    board_to_doc,
    dumps,
    puzzle_to_doc,
    solution_to_doc,
)
from latinboards.symmetry import Board
from latinboards.warp import (
    WarpClass,
    WovenBoard,
    count_latin_boards,
    find_warp_classes,
    label as label_warp,
    verify_latin,
    verify_warp,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_EXHAUSTED = 3


def _read_doc(stream) -> dict:
    text = stream.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise LoadError(f"stdin is not valid JSON: {exc}") from exc


def _board_from_any(doc: Mapping) -> Board:
    if doc.get("schema") == SCHEMA_BOARD:
        return board_from_doc(doc)
    if "board" in doc:
        return board_from_doc(doc["board"])
    ref = doc.get("board_ref", {})
    if "catalog" in ref:
        spec = ref["catalog"]
        return catalog.build(spec["name"], **spec.get("params", {}))
    raise LoadError("document carries neither a board nor a resolvable board_ref")


def _parse_symbols(text: str, needed: int | None = None) -> list[str]:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return [str(i) for i in range(int(lo), int(hi) + 1)]
    symbols = [s for s in text.replace(",", " ").split() if s]
    if needed is not None and len(symbols) != needed:
        raise LoadError(f"need {needed} symbols, got {len(symbols)}")
    return symbols


def _layout_doc(board: Board) -> dict | None:
    try:
        return {str(k): v for k, v in board_layout(board).items()}
    except LatinBoardsError:
        return None


def cmd_catalog(args) -> int:
    if args.action == "list":
        for entry in catalog.entries():
            params = ", ".join(entry.params) if entry.params else "-"
            print(f"{entry.name:24} {entry.status:12} params: {params:12} {entry.doc}")
        return EXIT_OK
    params = {}
    if args.n is not None:
        params["n"] = args.n
    if args.m is not None:
        params["m"] = args.m
    if args.pairing is not None:
        params["pairing"] = args.pairing
    board = catalog.build(args.name, **params)
    doc = board_to_doc(board, layout=_layout_doc(board))
    doc["board_ref"] = {"catalog": {"name": args.name, "params": params}}
    sys.stdout.write(dumps(doc))
    return EXIT_OK


def cmd_solve_warp(args) -> int:
    doc = _read_doc(sys.stdin)
    board = _board_from_any(doc)
    ref = doc.get("board_ref", {"inline": True})
    found = list(
        find_warp_classes(
            board,
            args.k,
            limit=args.limit,
            prune_by_symmetry=args.prune,
            strategy=args.strategy,
        )
    )
    if not found:
        print(f"no {args.k}-warp class exists through this board", file=sys.stderr)
        return EXIT_EXHAUSTED
    docs = []
    for wc in found:
        sol = solution_to_doc(ref, args.k, wc.lines, None)
        sol["board"] = board_to_doc(board, layout=doc.get("layout"))
        docs.append(sol)
    if args.limit == 1:
        sys.stdout.write(dumps(docs[0]))
    else:
        sys.stdout.write(dumps(docs))
    return EXIT_OK


def cmd_label(args) -> int:
    doc = _read_doc(sys.stdin)
    if isinstance(doc, list):
        doc = doc[0]
    board = _board_from_any(doc)
    warp = WarpClass(doc["k"], frozenset(frozenset(l) for l in doc["warp"]))
    symbols = _parse_symbols(args.symbols, needed=len(warp.lines))
    latin = label_warp(WovenBoard(board, warp), symbols)
    out = dict(doc)
    out["labeling"] = latin.labeling()
    out["symbols"] = list(latin.symbols)
    out["assignment"] = {str(p): s for p, s in sorted(latin.assignment().items())}
    sys.stdout.write(dumps(out))
    return EXIT_OK


def cmd_count(args) -> int:
    doc = _read_doc(sys.stdin)
    board = _board_from_any(doc)
    result = count_latin_boards(board, args.k, up_to=args.up_to, cap=args.cap)
    sys.stdout.write(dumps({"count": result.count, "capped": result.capped, "up_to": args.up_to}))
    return EXIT_OK


def cmd_critical(args) -> int:
    doc = _read_doc(sys.stdin)
    board = _board_from_any(doc)
    if "assignment" not in doc:
        raise LoadError("critical needs a labeled board (run label first)")
    assignment = {int(p): s for p, s in doc["assignment"].items()}
    from latinboards.warp import latin_from_assignment

    latin = latin_from_assignment(board, assignment, doc.get("k", 1))
    strategy = "greedy-with-restarts" if args.restarts else "greedy"
    partial = find_critical_set(latin, seed=args.seed, strategy=strategy, restarts=args.restarts)
    puzzle = puzzle_to_doc(
        args.id or f"{board.name or 'board'}-critical-{args.seed}",
        board_to_doc(board),
        latin.k,
        latin.symbols,
        partial.clues,
        layout=doc.get("board", {}).get("layout") or _layout_doc(board),
    )
    puzzle["board_ref"] = doc.get("board_ref", {"inline": True})
    sys.stdout.write(dumps(puzzle))
    return EXIT_OK


def _read_file(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise LoadError(f"cannot read {path}: {exc}") from exc


def cmd_verify(args) -> int:
    doc = _read_file(args.file)
    schema = doc.get("schema", "")
    if schema == SCHEMA_BOARD:
        board_from_doc(doc)  # raises LoadError on any invariant failure
        print("board ok")
        return EXIT_OK
    board = _board_from_any(doc)
    if schema == SCHEMA_SOLUTION:
        warp = WarpClass(doc["k"], frozenset(frozenset(l) for l in doc["warp"]))
        report = verify_warp(board, warp)
        if not report.ok:
            for f in report.failures:
                pair = ""
                if f.warp_line and f.sym_line:
                    pair = f" warp {list(f.warp_line)} vs line {list(f.sym_line)}"
                print(f"FAIL {f.check}: {f.detail}{pair}", file=sys.stderr)
            return EXIT_VERIFY
        if "assignment" in doc:
            assignment = {int(p): s for p, s in doc["assignment"].items()}
            if not verify_latin(board, assignment, doc.get("k", 1)):
                print("FAIL labeling: assignment is not a Latin board", file=sys.stderr)
                return EXIT_VERIFY
        print(f"solution ok: {len(warp.lines)} warp lines, k={doc['k']}")
        return EXIT_OK
    if schema == SCHEMA_PUZZLE:
        partial = PartialBoard(
            board,
            doc.get("warp_k", 1),
            tuple(doc["symbols"]),
            {int(p): s for p, s in doc["clues"].items()},
        )
        cls = classify_partial(partial)
        print(f"puzzle ok: {len(partial.clues)} clues, classified {cls.value}")
        return EXIT_OK
    raise LoadError(f"unknown document schema {schema!r}")


def cmd_render(args) -> int:
    doc = _read_file(args.file)
    if args.format == "json":
        sys.stdout.write(dumps(doc))
        return EXIT_OK
    board = _board_from_any(doc)
    layout = doc.get("layout") or (doc.get("board") or {}).get("layout")
    if layout is None:
        layout = _layout_doc(board)
    symbols = None
    clues = None
    if doc.get("schema") == SCHEMA_PUZZLE:
        clues = {int(p): s for p, s in doc["clues"].items()}
        symbols = clues
    elif "assignment" in doc:
        symbols = {int(p): s for p, s in doc["assignment"].items()}
    svg = render_svg(board, layout, symbols=symbols, clues=clues, show_cells=args.cells)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_serve(args) -> int:
    from latinboards.server import serve

    serve(port=args.port, store=args.store, ui_dir=args.ui_dir)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latinboards")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cat = sub.add_parser("catalog", help="list or build named boards")
    p_cat.add_argument("action", choices=["list", "build"])
    p_cat.add_argument("name", nargs="?", help="entry name for build")
    p_cat.add_argument("--n", type=int)
    p_cat.add_argument("--m", type=int)
    p_cat.add_argument("--pairing")
    p_cat.set_defaults(func=cmd_catalog)

    p_solve = sub.add_parser("solve-warp", help="find warp classes through a board")
    p_solve.add_argument("--k", type=int, default=1)
    p_solve.add_argument("--limit", type=int, default=1)
    p_solve.add_argument("--prune", action="store_true")
    p_solve.add_argument("--strategy", choices=["auto", "ordered", "greedy"], default="auto")
    p_solve.set_defaults(func=cmd_solve_warp)

    p_label = sub.add_parser("label", help="label a solved warp class with symbols")
    p_label.add_argument("--symbols", required=True, help="e.g. 1..12 or a,b,c")
    p_label.set_defaults(func=cmd_label)

    p_count = sub.add_parser("count", help="count labeled boards or classes")
    p_count.add_argument("--k", type=int, default=1)
    p_count.add_argument("--up-to", dest="up_to", choices=["raw", "equiv"], default="raw")
    p_count.add_argument("--cap", type=int)
    p_count.set_defaults(func=cmd_count)

    p_crit = sub.add_parser("critical", help="extract a critical set from a labeled board")
    p_crit.add_argument("--seed", type=int, default=0)
    p_crit.add_argument("--restarts", type=int, default=0)
    p_crit.add_argument("--id")
    p_crit.set_defaults(func=cmd_critical)

    p_verify = sub.add_parser("verify", help="re-verify a board/solution/puzzle file")
    p_verify.add_argument("file")
    p_verify.set_defaults(func=cmd_verify)

    p_render = sub.add_parser("render", help="render a document to SVG")
    p_render.add_argument("file")
    p_render.add_argument("-o", "--output")
    p_render.add_argument("--cells", action="store_true")
    p_render.add_argument("--format", choices=["svg", "json"], default="svg")
    p_render.set_defaults(func=cmd_render)

    p_serve = sub.add_parser("serve", help="serve puzzles over HTTP")
    p_serve.add_argument("--port", type=int, default=8642)
    p_serve.add_argument("--store")
    p_serve.add_argument("--ui-dir", dest="ui_dir")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except LatinBoardsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY if isinstance(exc, LoadError) else EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
