"""Read-only HTTP JSON API over a built workspace.

The service loads immutable artifacts once at startup and answers unlimited
concurrent reads; every build step happens beforehand via the CLI.  Errors
are JSON objects carrying exactly one machine-readable code.  Responses set
permissive CORS headers so the browser workbench can call the API from a
different origin, and an optional static directory can be mounted at / to
serve that workbench.
"""

from __future__ import annotations

import json
import mimetypes
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, unquote, urlsplit

from .corpus import NotFound
from .errors import DataError
from .heterogeneity import RelationKind, parse_kinds
from .index import SearchIndex
from .pipeline import RerankMode, SearchPipeline, SearchRequest
from .recommender import recommend
from .workspace import Workspace

ERROR_STATUS = {
    "bad_request": 400,
    "not_found": 404,
    "conflict": 409,
    "internal": 500,
}

SEARCH_REQUEST_KEYS = {
    "free_text",
    "controlled",
    "databases",
    "expand",
    "expansion_kinds",
    "rerank",
    "centrality_threshold",
    "nucleus_only",
    "limit",
}


class ApiError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def canonical_json(payload: object) -> str:
    """The one JSON serialization used by both the CLI and the HTTP API."""
    return json.dumps(payload, sort_keys=True, ensure_ascii=False)


def parse_search_request(obj: object) -> SearchRequest:
    """Deserialize a search request body, rejecting unknown or ill-typed keys."""
    if not isinstance(obj, dict):
        raise ApiError("bad_request", "search request must be a JSON object")
    unknown = set(obj) - SEARCH_REQUEST_KEYS
    if unknown:
        raise ApiError("bad_request", f"unknown request keys: {sorted(unknown)}")

    controlled: list[tuple[str, str]] = []
    for entry in obj.get("controlled", []):
        if not isinstance(entry, dict) or set(entry) != {"vocab", "term"}:
            raise ApiError("bad_request", "controlled entries must be {vocab, term} objects")
        controlled.append((entry["vocab"], entry["term"]))

    kinds = set()
    for name in obj.get("expansion_kinds", ["EQ"]):
        try:
            kinds.add(RelationKind(name))
        except ValueError:
            raise ApiError("bad_request", f"unknown relation kind: {name!r}") from None

    rerank_name = obj.get("rerank", "none")
    try:
        rerank = RerankMode(rerank_name)
    except ValueError:
        raise ApiError("bad_request", f"unknown rerank mode: {rerank_name!r}") from None

    limit = obj.get("limit")
    if limit is not None and (isinstance(limit, bool) or not isinstance(limit, int)):
        raise ApiError("bad_request", "limit must be an integer")

    try:
        return SearchRequest(
            free_text=obj.get("free_text", ""),
            chosen_controlled=controlled,
            databases=set(obj.get("databases", [])),
            expand=bool(obj.get("expand", False)),
            expansion_kinds=kinds,
            rerank=rerank,
            centrality_threshold=float(obj.get("centrality_threshold", 0.25)),
            nucleus_only=bool(obj.get("nucleus_only", False)),
            limit=limit,
        )
    except (ValueError, TypeError) as exc:
        raise ApiError("bad_request", str(exc)) from None


def run_search(workspace: Workspace, request: SearchRequest) -> dict:
    """Execute a request against the workspace; shared by CLI and API."""
    index = workspace.index if workspace.index is not None else SearchIndex()
    pipeline = SearchPipeline(workspace.corpus, index, workspace.store)
    return pipeline.execute(request).to_json_dict()


def make_handler(workspace: Workspace, ui_dir: Path | None = None) -> type[BaseHTTPRequestHandler]:
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):  # keep test output quiet
            pass

        def _send(self, status: int, body: bytes, content_type: str) -> None:
            self.send_response(status)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.end_headers()
            self.wfile.write(body)

        def _send_json(self, payload: object, status: int = 200) -> None:
            body = canonical_json(payload).encode("utf-8")
            self._send(status, body, "application/json; charset=utf-8")

        def _send_error(self, code: str, message: str) -> None:
            self._send_json({"code": code, "message": message}, status=ERROR_STATUS[code])

        def do_OPTIONS(self) -> None:
            self._send(204, b"", "text/plain")

        def do_GET(self) -> None:
            try:
                self._route_get()
            except ApiError as exc:
                self._send_error(exc.code, exc.message)
            except NotFound as exc:
                self._send_error("not_found", str(exc))
            except DataError as exc:
                self._send_error("bad_request", str(exc))
            except Exception as exc:  # noqa: BLE001 - boundary
                self._send_error("internal", str(exc))

        def do_POST(self) -> None:
            try:
                self._route_post()
            except ApiError as exc:
                self._send_error(exc.code, exc.message)
            except DataError as exc:
                self._send_error("bad_request", str(exc))
            except Exception as exc:  # noqa: BLE001 - boundary
                self._send_error("internal", str(exc))

        # -- routing ----------------------------------------------------

        def _route_get(self) -> None:
            url = urlsplit(self.path)
            path = unquote(url.path)
            params = parse_qs(url.query)

            if path == "/api/health":
                self._send_json({"status": "ok"})
            elif path.startswith("/api/record/"):
                record_id = path[len("/api/record/"):]
                record = workspace.corpus.get_record(record_id)
                self._send_json(record.to_json_dict())
            elif path == "/api/map":
                self._api_map(params)
            elif path == "/api/recommend":
                self._api_recommend(params)
            elif path == "/api/vocabularies":
                vocabularies = [
                    {"vocab_id": v.vocab_id, "name": v.name, "size": len(v.terms)}
                    for v in sorted(workspace.corpus.vocabularies.values(), key=lambda v: v.vocab_id)
                ]
                self._send_json(vocabularies)
            elif ui_dir is not None:
                self._serve_static(path)
            else:
                raise ApiError("not_found", f"no such endpoint: {path}")

        def _route_post(self) -> None:
            url = urlsplit(self.path)
            if url.path != "/api/search":
                raise ApiError("not_found", f"no such endpoint: {url.path}")
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b""
            try:
                body = json.loads(raw.decode("utf-8") or "{}")
            except (json.JSONDecodeError, UnicodeDecodeError):
                raise ApiError("bad_request", "request body is not valid JSON") from None
            request = parse_search_request(body)
            self._send_json(run_search(workspace, request))

        def _api_map(self, params: dict[str, list[str]]) -> None:
            term = self._param(params, "term")
            source = self._param(params, "from")
            target = self._param(params, "to")
            kinds = parse_kinds(params.get("kinds", [None])[0], default=set(RelationKind))
            matches = workspace.store.map_term(term, source, target, kinds)
            self._send_json([[target_term, kind.value] for target_term, kind in matches])

        def _api_recommend(self, params: dict[str, list[str]]) -> None:
            query = self._param(params, "q")
            vocab = self._param(params, "vocab")
            k = int(params.get("k", ["10"])[0])
            if vocab not in workspace.dictionaries:
                raise ApiError("not_found", f"no dictionary built for vocabulary {vocab!r}")
            suggestions = recommend(workspace.dictionaries[vocab], query, k)
            self._send_json([[term, score] for term, score in suggestions])

        @staticmethod
        def _param(params: dict[str, list[str]], name: str) -> str:
            values = params.get(name)
            if not values:
                raise ApiError("bad_request", f"missing query parameter: {name}")
            return values[0]

        def _serve_static(self, path: str) -> None:
            assert ui_dir is not None
            relative = path.lstrip("/") or "index.html"
            target = (ui_dir / relative).resolve()
            if not str(target).startswith(str(ui_dir.resolve())) or not target.is_file():
                raise ApiError("not_found", f"no such file: {path}")
            content_type = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
            self._send(200, target.read_bytes(), content_type)

    return Handler


def make_server(workspace: Workspace, port: int, host: str = "127.0.0.1",
                ui_dir: Path | None = None) -> ThreadingHTTPServer:
    handler = make_handler(workspace, ui_dir=ui_dir)
    server = ThreadingHTTPServer((host, port), handler)
    server.daemon_threads = True
    return server


def serve(port: int, data_dir: str | Path, host: str = "127.0.0.1", ui_dir: Path | None = None) -> None:
    """Load the workspace and serve until interrupted; bind failures propagate."""
    workspace = Workspace.load(data_dir, frozen=True)
    server = make_server(workspace, port, host=host, ui_dir=ui_dir)
    try:
        server.serve_forever()
    finally:
        server.server_close()
