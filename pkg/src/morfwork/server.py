"""Read-only HTTP service: search and analysis endpoints plus the static UI.

Endpoints (all JSON, UTF-8):
    GET /api/features                      dimensions, vocabularies, labels
    GET /api/search?voice=passive&...      sentence hits with match spans
    GET /api/sentences/{id}                sentence text and token summaries
    GET /api/analysis?sentence=S&token=T   labeled analysis of one token
    GET /api/analyze?word=...              parse list for a word

Errors: 400 malformed query, 404 unknown ids or words, 409 feature conflict,
422 unknown feature value.  Everything else under / serves the UI bundle.
The server holds immutable state only; requests never mutate anything.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .analyzer import UnknownWordError
from .corpus import FeatureIndex, TaggedCorpus, is_word_token
from .display import fold_deep, parse_record
from .search import (
    Conflict,
    EmptyQueryError,
    NoAnalysisError,
    OutOfRangeError,
    Query,
    SearchError,
    UnknownFeatureValueError,
    analysis_view,
    search,
)
from .workbench import Config, Workbench

_FALLBACK_PAGE = """<!doctype html>
<html><head><meta charset="utf-8"><title>morfwork</title></head>
<body><h1>morfwork service</h1>
<p>The search API is up under <code>/api/</code>; no UI bundle is configured.</p>
</body></html>
"""

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".map": "application/json; charset=utf-8",
    ".json": "application/json; charset=utf-8",
    ".svg": "image/svg+xml",
    ".ico": "image/x-icon",
    ".png": "image/png",
}


class _AppState:
    def __init__(self, wb: Workbench, tagged: TaggedCorpus, index: FeatureIndex, config: Config):
        self.wb = wb
        self.tagged = tagged
        self.index = index
        self.config = config
        self.sentences_by_id = {s.id: i for i, s in enumerate(tagged.sentences)}

    # -- endpoint payloads --------------------------------------------------

    def features_payload(self) -> dict:
        catalog = self.wb.catalog

        def value_entry(dim: str, value: str) -> dict:
            implied = catalog.implied_categories(dim, value)
            return {
                "value": value,
                "label": catalog.label(dim, value),
                "implies": next(iter(implied)) if implied and len(implied) == 1 else None,
            }

        dimensions = []
        for dim in ("agreement", "aspect", "case", "category", "possessive",
                    "sense", "tense", "voice"):
            dimensions.append(
                {
                    "name": dim,
                    "values": [value_entry(dim, v) for v in catalog.values.get(dim, [])],
                }
            )
        dimensions.append(
            {
                "name": "suffix",
                "values": [
                    {"value": s, "label": s, "implies": None} for s in catalog.suffix_names
                ],
            }
        )
        dimensions.append({"name": "root", "values": []})
        return {"dimensions": dimensions}

    def search_payload(self, params: dict[str, str]):
        query = Query.from_mapping(params)
        result = search(query, self.index, self.tagged, self.wb.catalog)
        if isinstance(result, Conflict):
            return result
        hits = []
        for hit in result:
            sentence = self.tagged.sentences[self.sentences_by_id[hit.sentence_id]]
            hits.append(
                {
                    "sentenceId": hit.sentence_id,
                    "text": hit.text,
                    "matches": list(hit.matches),
                    "spans": [
                        [sentence.tokens[t][1], sentence.tokens[t][2]] for t in hit.matches
                    ],
                }
            )
        return {"hits": hits, "total": len(hits)}

    def sentence_payload(self, sid: int) -> dict:
        row_index = self.sentences_by_id.get(sid)
        if row_index is None:
            raise OutOfRangeError(f"no sentence {sid}")
        sentence = self.tagged.sentences[row_index]
        tokens = []
        for tid, ((token, start, end), chosen) in enumerate(
            zip(sentence.tokens, self.tagged.analyses[row_index])
        ):
            entry = {
                "index": tid,
                "token": token,
                "start": start,
                "end": end,
                "isWord": is_word_token(token),
            }
            if chosen is None:
                entry["analysis"] = None
            else:
                entry["analysis"] = {
                    "root": chosen.root,
                    "category": chosen.category,
                    "morphemes": list(chosen.morphemes),
                    "features": {d: v for d, v in chosen.features},
                }
            tokens.append(entry)
        return {"sentenceId": sid, "text": sentence.text, "tokens": tokens}

    def analysis_payload(self, sid: int, tid: int) -> dict:
        view = analysis_view(sid, tid, self.tagged, self.wb.automaton, self.wb.catalog)
        return {
            "sentenceId": sid,
            "tokenIndex": tid,
            "lexicalGloss": view.lexical_gloss,
            "fields": [{"label": label, "value": value} for label, value in view.fields],
        }

    def analyze_payload(self, word: str) -> dict:
        parses = self.wb.analyzer.analyze(word)
        return {"word": word, "parses": [parse_record(p) for p in parses]}


class _Handler(BaseHTTPRequestHandler):
    app: _AppState  # assigned by serve()

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send_json(self, status: int, payload) -> None:
        body = json.dumps(
            fold_deep(payload, self.app.config.ascii_fold), ensure_ascii=False
        ).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error_json(self, status: int, code: str, message: str) -> None:
        self._send_json(status, {"error": code, "message": message})

    def do_GET(self):  # noqa: N802 (http.server API)
        try:
            self._route()
        except BrokenPipeError:
            pass
        except Exception as exc:  # keep the worker alive; report the failure
            try:
                self._send_error_json(500, "InternalError", str(exc))
            except Exception:
                pass

    def _route(self) -> None:
        url = urlparse(self.path)
        raw_params = parse_qs(url.query, keep_blank_values=True)
        params = {k: v[-1] for k, v in raw_params.items()}
        path = url.path

        if path == "/api/features":
            self._send_json(200, self.app.features_payload())
            return
        if path == "/api/search":
            try:
                result = self.app.search_payload(params)
            except UnknownFeatureValueError as exc:
                self._send_error_json(422, "UnknownFeatureValue", str(exc))
                return
            except (EmptyQueryError, SearchError) as exc:
                self._send_error_json(400, "BadQuery", str(exc))
                return
            if isinstance(result, Conflict):
                self._send_json(
                    409,
                    {
                        "error": "Conflict",
                        "features": [list(pair) for pair in result.features],
                        "explanation": result.explanation,
                    },
                )
                return
            self._send_json(200, result)
            return
        if path.startswith("/api/sentences/"):
            tail = path[len("/api/sentences/"):]
            if not tail.isdigit():
                self._send_error_json(400, "BadQuery", "sentence id must be an integer")
                return
            try:
                self._send_json(200, self.app.sentence_payload(int(tail)))
            except OutOfRangeError as exc:
                self._send_error_json(404, "NotFound", str(exc))
            return
        if path == "/api/analysis":
            sid_text = params.get("sentence")
            tid_text = params.get("token")
            if sid_text is None or tid_text is None or not sid_text.lstrip("-").isdigit() or not tid_text.lstrip("-").isdigit():
                self._send_error_json(400, "BadQuery", "need integer sentence and token")
                return
            try:
                self._send_json(200, self.app.analysis_payload(int(sid_text), int(tid_text)))
            except OutOfRangeError as exc:
                self._send_error_json(404, "NotFound", str(exc))
            except NoAnalysisError as exc:
                self._send_json(
                    200,
                    {
                        "sentenceId": int(sid_text),
                        "tokenIndex": int(tid_text),
                        "lexicalGloss": None,
                        "fields": [],
                        "noAnalysis": True,
                        "message": str(exc),
                    },
                )
            return
        if path == "/api/analyze":
            word = params.get("word", "")
            if not word.strip():
                self._send_error_json(400, "BadQuery", "need a non-empty word")
                return
            try:
                self._send_json(200, self.app.analyze_payload(word))
            except UnknownWordError as exc:
                self._send_error_json(404, "UnknownWord", str(exc))
            return
        if path.startswith("/api/"):
            self._send_error_json(404, "NotFound", f"no endpoint {path}")
            return
        self._serve_static(path)

    def _serve_static(self, path: str) -> None:
        ui_dir = self.app.config.ui_dir
        if path in ("", "/"):
            path = "/index.html"
        if ui_dir is None:
            if path == "/index.html":
                body = _FALLBACK_PAGE.encode("utf-8")
                self.send_response(200)
                self.send_header("Content-Type", "text/html; charset=utf-8")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)
            else:
                self._send_error_json(404, "NotFound", "no UI bundle configured")
            return
        root = Path(ui_dir).resolve()
        target = (root / path.lstrip("/")).resolve()
        if not target.is_relative_to(root) or not target.is_file():
            self._send_error_json(404, "NotFound", f"no static file {path}")
            return
        body = target.read_bytes()
        content_type = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        self.send_response(200)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def make_server(
    wb: Workbench, tagged: TaggedCorpus, index: FeatureIndex, config: Config
) -> ThreadingHTTPServer:
    """Bind a ThreadingHTTPServer over immutable app state (port 0 picks a free port)."""
    state = _AppState(wb, tagged, index, config)
    handler = type("BoundHandler", (_Handler,), {"app": state})
    return ThreadingHTTPServer((config.host, config.port), handler)


def serve(wb: Workbench, tagged: TaggedCorpus, index: FeatureIndex, config: Config) -> None:
    httpd = make_server(wb, tagged, index, config)
    host, port = httpd.server_address[:2]
    print(f"morfwork serving on http://{host}:{port}/ (Ctrl-C to stop)")
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()


def start_background(
    wb: Workbench, tagged: TaggedCorpus, index: FeatureIndex, config: Config
) -> tuple[ThreadingHTTPServer, threading.Thread]:
    """Start the server on a daemon thread; used by tests."""
    httpd = make_server(wb, tagged, index, config)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    return httpd, thread
