"""HTTP serve mode: puzzles for the play client.

All handlers are stateless over an immutable puzzle store loaded at
startup: each puzzle document is parsed once into its board, clue set
and (when subcritical) its unique completion.  Responses are UTF-8
JSON; CORS is open so a locally served client can talk to it.
"""

from __future__ import annotations

import json
import os
import pathlib
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from importlib import resources
from typing import Mapping, Optional

from latinboards.critical import PartialBoard, PartialClass, classify_partial, unique_completion
from latinboards.errors import InvalidPartial, LatinBoardsError
from latinboards.serialize import board_from_doc, dumps_compact
from latinboards.symmetry import Board

STORE_ENV = "LATINBOARDS_STORE"


@dataclass(frozen=True)
class Puzzle:
    id: str
    doc: dict
    board: Board
    k: int
    symbols: tuple[str, ...]
    clues: dict[int, str]
    solution: Optional[dict[int, str]]  # unique completion when subcritical

    @property
    def subcritical(self) -> bool:
        return self.solution is not None


def _load_puzzle(doc: Mapping) -> Puzzle:
    board = board_from_doc(doc["board"])
    k = doc.get("warp_k", 1)
    symbols = tuple(doc["symbols"])
    clues = {int(p): s for p, s in doc["clues"].items()}
    partial = PartialBoard(board, k, symbols, clues)
    completion = unique_completion(partial)
    return Puzzle(
        id=doc["id"],
        doc=dict(doc),
        board=board,
        k=k,
        symbols=symbols,
        clues=clues,
        solution=completion.assignment() if completion else None,
    )


def load_store(store: str | os.PathLike | None = None) -> dict[str, Puzzle]:
    """Load every puzzle JSON in the store directory (or the bundled set)."""
    puzzles: dict[str, Puzzle] = {}
    if store is None:
        store = os.environ.get(STORE_ENV)
    if store is None:
        root = resources.files("latinboards.data").joinpath("puzzles")
        entries = [(p.name, p.read_text()) for p in root.iterdir() if p.name.endswith(".json")]
    else:
        path = pathlib.Path(store)
        entries = [(p.name, p.read_text()) for p in sorted(path.glob("*.json"))]
    for name, text in sorted(entries):
        doc = json.loads(text)
        puzzle = _load_puzzle(doc)
        puzzles[puzzle.id] = puzzle
    return puzzles


def _merge(puzzle: Puzzle, entries: Mapping[str, str]) -> dict[int, str]:
    merged = dict(puzzle.clues)
    for key, sym in entries.items():
        p = int(key)
        if p in puzzle.clues:
            raise ValueError(f"point {p} is a fixed clue")
        if p not in set(puzzle.board.design.points):
            raise ValueError(f"unknown point {p}")
        if sym not in puzzle.symbols:
            raise ValueError(f"unknown symbol {sym!r}")
        merged[p] = sym
    return merged


def validate_assignment(puzzle: Puzzle, entries: Mapping[str, str]) -> list[dict]:
    """Violations: each names a symmetric line and the symbol exceeding k."""
    merged = _merge(puzzle, entries)
    design = puzzle.board.design
    line_class = {}
    for name in design.classes:
        for idx in design.classes[name]:
            line_class[idx] = name
    violations = []
    for idx, line in enumerate(design.lines):
        counts: dict[str, int] = {}
        for p in line:
            sym = merged.get(p)
            if sym is not None:
                counts[sym] = counts.get(sym, 0) + 1
        for sym, count in sorted(counts.items()):
            if count > puzzle.k:
                violations.append(
                    {
                        "line": idx,
                        "class": line_class.get(idx),
                        "points": sorted(line),
                        "symbol": sym,
                        "count": count,
                        "max": puzzle.k,
                    }
                )
    return violations


def check_complete(puzzle: Puzzle, entries: Mapping[str, str]) -> dict:
    merged = _merge(puzzle, entries)
    points = set(puzzle.board.design.points)
    try:
        partial = PartialBoard(puzzle.board, puzzle.k, puzzle.symbols, merged)
    except InvalidPartial:
        return {"complete": False, "classification": "invalid"}
    if set(merged) != points:
        return {"complete": False, "classification": classify_partial(partial).value}
    cls = classify_partial(partial)
    complete = cls in (PartialClass.SUBCRITICAL, PartialClass.CRITICAL)
    return {"complete": complete, "classification": cls.value}


class _Handler(BaseHTTPRequestHandler):
    puzzles: dict[str, Puzzle] = {}
    ui_dir: Optional[pathlib.Path] = None

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, code: int, payload: dict | list | bytes, content_type="application/json"):
        body = payload if isinstance(payload, bytes) else dumps_compact(payload).encode()
        self.send_response(code)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()
        self.wfile.write(body)

    def _error(self, code: int, message: str):
        self._send(code, {"error": message})

    def do_OPTIONS(self):
        self._send(204, b"", content_type="text/plain")

    def do_GET(self):
        if self.path == "/puzzles":
            listing = [
                {
                    "id": p.id,
                    "points": len(p.board.design.points),
                    "clues": len(p.clues),
                    "symbols": list(p.symbols),
                    "warp_k": p.k,
                    "board": p.board.name or p.doc.get("board", {}).get("name", ""),
                }
                for p in sorted(self.puzzles.values(), key=lambda p: p.id)
            ]
            self._send(200, {"puzzles": listing})
            return
        if self.path.startswith("/puzzle/"):
            pid = self.path[len("/puzzle/"):]
            puzzle = self.puzzles.get(pid)
            if puzzle is None:
                self._error(404, f"no puzzle {pid!r}")
                return
            self._send(200, puzzle.doc)
            return
        if self.ui_dir is not None:
            self._serve_ui()
            return
        self._error(404, "unknown path")

    def _serve_ui(self):
        rel = self.path.lstrip("/") or "index.html"
        target = (self.ui_dir / rel).resolve()
        if not str(target).startswith(str(self.ui_dir.resolve())) or not target.is_file():
            self._error(404, "not found")
            return
        types = {".html": "text/html", ".js": "text/javascript", ".css": "text/css"}
        self._send(200, target.read_bytes(), types.get(target.suffix, "application/octet-stream"))

    def _read_body(self) -> dict | None:
        try:
            length = int(self.headers.get("Content-Length", "0"))
            doc = json.loads(self.rfile.read(length) or b"{}")
        except (ValueError, json.JSONDecodeError):
            return None
        return doc if isinstance(doc, dict) else None

    def do_POST(self):
        body = self._read_body()
        if body is None:
            self._error(400, "malformed JSON body")
            return
        pid = body.get("id", "")
        puzzle = self.puzzles.get(pid)
        if puzzle is None:
            self._error(404, f"no puzzle {pid!r}")
            return
        try:
            if self.path == "/validate":
                violations = validate_assignment(puzzle, body.get("assignment", {}))
                self._send(200, {"violations": violations})
            elif self.path == "/hint":
                if not puzzle.subcritical:
                    self._error(409, "puzzle has no unique completion; hints undefined")
                    return
                point = body.get("point")
                if not isinstance(point, int) or point not in set(puzzle.board.design.points):
                    self._error(400, "body needs a valid integer 'point'")
                    return
                assert puzzle.solution is not None
                self._send(200, {"point": point, "symbol": puzzle.solution[point]})
            elif self.path == "/check-complete":
                self._send(200, check_complete(puzzle, body.get("assignment", {})))
            else:
                self._error(404, "unknown path")
        except (ValueError, LatinBoardsError) as exc:
            self._error(400, str(exc))


def make_server(port: int = 0, store=None, ui_dir=None) -> ThreadingHTTPServer:
    puzzles = load_store(store)

    class Handler(_Handler):
        pass

    Handler.puzzles = puzzles
    Handler.ui_dir = pathlib.Path(ui_dir) if ui_dir else None
    return ThreadingHTTPServer(("127.0.0.1", port), Handler)


def serve(port: int = 8642, store=None, ui_dir=None) -> None:
    httpd = make_server(port=port, store=store, ui_dir=ui_dir)
    host, actual_port = httpd.server_address[:2]
    print(
        f"serving {len(httpd.RequestHandlerClass.puzzles)} puzzles on http://{host}:{actual_port}",
        flush=True,
    )
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
