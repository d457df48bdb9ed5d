"""Interactive dialogue sessions over HTTP+JSON.

A session pairs one human customer with a private copy of a named knowledge
base.  The customer submits utterances and receives one reaction per new
concept; the engineer proposes concepts the customer has not mentioned; the
customer accepts or rejects them; finalizing computes the mutual model and
folds it back into the session's knowledge base.

Endpoints::

    POST /sessions                       {"kb_id": ...}          -> {"session_id": ...}
    POST /sessions/{id}/utterance        {"text": ...}           -> {"reactions": [...]}
    GET  /sessions/{id}/proposals?limit=N                        -> {"proposals": [...]}
    POST /sessions/{id}/decision         {"lemma", "verdict"}    -> {"decisions": {...}}
    POST /sessions/{id}/finalize                                 -> mutual model
    GET  /sessions/{id}/transcript                               -> {"events": [...]}

Errors are ``{"error", "detail"}`` with 400/404/409.  All lemma arrays in
payloads are sorted.  Mutations within one session are serialized by a
per-session lock; sessions never share mutable state.  Every mutation can be
appended to a JSON-lines event log, and replaying that log into a fresh
service reproduces the same sessions, decisions and models.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Mapping
from urllib.parse import parse_qs, urlparse

from .concepts import build_vocabulary, cosine_similarity, one_hot
from .nlp import NounSet, noun_lemmas
from .protocol import KnowledgeBase, Reaction, classify_reaction, propose_concepts

DEFAULT_PROPOSAL_LIMIT = 10


class UnknownSessionError(KeyError):
    pass


class UnknownKnowledgeBaseError(KeyError):
    pass


class SessionFinalizedError(RuntimeError):
    pass


class DecisionError(ValueError):
    pass


@dataclass(frozen=True)
class MutualModel:
    mutual: frozenset[str]
    accepted: frozenset[str]
    customer_unique: frozenset[str]
    effective_cooperation: float
    similarity_before: float
    similarity_after: float

    def to_json_dict(self) -> dict:
        return {
            "mutual": sorted(self.mutual),
            "accepted": sorted(self.accepted),
            "customer_unique": sorted(self.customer_unique),
            "effective_cooperation": self.effective_cooperation,
            "similarity_before": self.similarity_before,
            "similarity_after": self.similarity_after,
        }


@dataclass
class Session:
    id: str
    kb: KnowledgeBase
    threshold: float
    customer_lemmas: dict[str, int] = field(default_factory=dict)
    decisions: dict[str, str] = field(default_factory=dict)
    status: str = "open"
    transcript: list[dict] = field(default_factory=list)
    model: MutualModel | None = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def customer_noun_set(self) -> NounSet:
        return NounSet(
            owner=self.id,
            lemmas=set(self.customer_lemmas),
            provenance=dict(self.customer_lemmas),
        )


class SessionService:
    """In-memory session store over immutable knowledge-base templates."""

    def __init__(
        self,
        kb_templates: Mapping[str, KnowledgeBase],
        threshold: float = 0.8,
        log_path: str | Path | None = None,
    ):
        self._templates = {name: kb.copy() for name, kb in kb_templates.items()}
        self._threshold = threshold
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._log_lock = threading.Lock()
        self._log_path = Path(log_path) if log_path else None
        self._replaying = False
        if self._log_path and self._log_path.exists():
            self.replay_log(self._log_path)

    # -- session lifecycle ------------------------------------------------

    def create_session(self, kb_id: str, session_id: str | None = None) -> str:
        template = self._templates.get(kb_id)
        if template is None:
            raise UnknownKnowledgeBaseError(kb_id)
        kb = template.copy()
        kb.reset()
        session = Session(id=session_id or uuid.uuid4().hex[:12], kb=kb, threshold=self._threshold)
        with self._lock:
            if session.id in self._sessions:
                raise ValueError(f"session id collision: {session.id}")
            self._sessions[session.id] = session
        session.transcript.append({"seq": 0, "kind": "created", "kb_id": kb_id})
        self._log({"kind": "created", "session_id": session.id, "kb_id": kb_id})
        return session.id

    def _get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSessionError(session_id)
        return session

    # -- operations --------------------------------------------------------

    def submit_utterance(self, session_id: str, text: str) -> list[Reaction]:
        session = self._get(session_id)
        with session.lock:
            self._require_open(session)
            lemmas = noun_lemmas(text)
            new = sorted(l for l in set(lemmas) if l not in session.customer_lemmas)
            for lemma in lemmas:
                session.customer_lemmas[lemma] = session.customer_lemmas.get(lemma, 0) + 1
            reactions = [classify_reaction(l, session.kb, session.threshold) for l in new]
            session.transcript.append({
                "seq": len(session.transcript),
                "kind": "utterance",
                "text": text,
                "reactions": [r.to_json_dict() for r in reactions],
            })
            self._log({"kind": "utterance", "session_id": session.id, "text": text})
            return reactions

    def list_proposals(self, session_id: str, limit: int = DEFAULT_PROPOSAL_LIMIT) -> list[dict]:
        session = self._get(session_id)
        with session.lock:
            self._require_open(session)
            known = set(session.customer_lemmas) | set(session.decisions)
            lemmas = propose_concepts(session.kb, known, limit)
            return [{"lemma": l, "weight": session.kb.weights[l]} for l in lemmas]

    def record_decision(self, session_id: str, lemma: str, verdict: str) -> dict[str, str]:
        session = self._get(session_id)
        with session.lock:
            self._require_open(session)
            if verdict not in ("accepted", "rejected"):
                raise DecisionError(f"verdict must be 'accepted' or 'rejected', got {verdict!r}")
            if lemma not in session.kb:
                raise DecisionError(f"{lemma!r} was never proposed")
            if lemma in session.customer_lemmas:
                raise DecisionError(f"{lemma!r} is already shared by the customer")
            session.decisions[lemma] = verdict
            session.transcript.append({
                "seq": len(session.transcript),
                "kind": "decision",
                "lemma": lemma,
                "verdict": verdict,
            })
            self._log({"kind": "decision", "session_id": session.id, "lemma": lemma, "verdict": verdict})
            return dict(sorted(session.decisions.items()))

    def finalize_session(self, session_id: str) -> MutualModel:
        session = self._get(session_id)
        with session.lock:
            self._require_open(session)
            model = _build_mutual_model(session)
            session.kb.append(model.mutual | model.accepted)
            session.model = model
            session.status = "finalized"
            session.transcript.append({
                "seq": len(session.transcript),
                "kind": "finalized",
                "model": model.to_json_dict(),
            })
            self._log({"kind": "finalized", "session_id": session.id})
            return model

    def transcript(self, session_id: str) -> list[dict]:
        session = self._get(session_id)
        with session.lock:
            return [dict(event) for event in session.transcript]

    @staticmethod
    def _require_open(session: Session) -> None:
        if session.status != "open":
            raise SessionFinalizedError(session.id)

    # -- event log ----------------------------------------------------------

    def _log(self, event: dict) -> None:
        if self._log_path is None or self._replaying:
            return
        with self._log_lock:
            with self._log_path.open("a", encoding="utf-8") as handle:
                handle.write(json.dumps(event, sort_keys=True) + "\n")

    def replay_log(self, path: str | Path) -> int:
        """Rebuild sessions from a JSON-lines event log; returns event count."""
        self._replaying = True
        count = 0
        try:
            for line in Path(path).read_text("utf-8").splitlines():
                if not line.strip():
                    continue
                event = json.loads(line)
                kind = event["kind"]
                if kind == "created":
                    self.create_session(event["kb_id"], session_id=event["session_id"])
                elif kind == "utterance":
                    self.submit_utterance(event["session_id"], event["text"])
                elif kind == "decision":
                    self.record_decision(event["session_id"], event["lemma"], event["verdict"])
                elif kind == "finalized":
                    self.finalize_session(event["session_id"])
                else:
                    raise ValueError(f"unknown event kind {kind!r}")
                count += 1
        finally:
            self._replaying = False
        return count


def _build_mutual_model(session: Session) -> MutualModel:
    customer = set(session.customer_lemmas)
    engineer = session.kb.lemma_set
    mutual = customer & engineer
    accepted = {l for l, v in session.decisions.items() if v == "accepted"} - mutual
    proposed = (engineer - customer) | set(session.decisions)
    model_lemmas = mutual | accepted
    vocabulary = build_vocabulary([customer | engineer])
    before = cosine_similarity(one_hot(customer, vocabulary), one_hot(engineer, vocabulary))
    after_kb = engineer | model_lemmas
    after = cosine_similarity(one_hot(model_lemmas, vocabulary), one_hot(after_kb, vocabulary))
    return MutualModel(
        mutual=frozenset(mutual),
        accepted=frozenset(accepted),
        customer_unique=frozenset(customer - engineer),
        effective_cooperation=len(accepted) / len(proposed) if proposed else 0.0,
        similarity_before=before,
        similarity_after=after,
    )


# --- HTTP layer ---------------------------------------------------------------


_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json",
    ".svg": "image/svg+xml",
    ".png": "image/png",
    ".ico": "image/x-icon",
}


def make_handler(service: SessionService, ui_dir: str | Path | None = None):
    ui_root = Path(ui_dir).resolve() if ui_dir else None

    class Handler(BaseHTTPRequestHandler):
        server_version = "reqdialog"

        def do_POST(self) -> None:  # noqa: N802 (stdlib naming)
            self._dispatch("POST")

        def do_GET(self) -> None:  # noqa: N802
            self._dispatch("GET")

        def _dispatch(self, method: str) -> None:
            parsed = urlparse(self.path)
            parts = [p for p in parsed.path.split("/") if p]
            try:
                if method == "POST" and parts == ["sessions"]:
                    body = self._read_json()
                    session_id = service.create_session(str(body.get("kb_id", "default")))
                    self._respond(201, {"session_id": session_id})
                elif method == "POST" and len(parts) == 3 and parts[0] == "sessions":
                    self._session_post(parts[1], parts[2])
                elif method == "GET" and len(parts) == 3 and parts[0] == "sessions":
                    self._session_get(parts[1], parts[2], parse_qs(parsed.query))
                elif method == "GET" and ui_root is not None:
                    self._static(parsed.path)
                elif method == "GET" and parsed.path == "/":
                    self._respond(200, {"service": "reqdialog", "endpoints": ["/sessions"]})
                else:
                    self._error(404, "no such route", self.path)
            except UnknownSessionError as exc:
                self._error(404, "unknown session", str(exc))
            except UnknownKnowledgeBaseError as exc:
                self._error(404, "unknown knowledge base", str(exc))
            except SessionFinalizedError as exc:
                self._error(409, "session is finalized", str(exc))
            except (DecisionError, ValueError) as exc:
                self._error(400, "invalid request", str(exc))

        def _session_post(self, session_id: str, action: str) -> None:
            if action == "utterance":
                body = self._read_json()
                reactions = service.submit_utterance(session_id, str(body.get("text", "")))
                self._respond(200, {"reactions": [r.to_json_dict() for r in reactions]})
            elif action == "decision":
                body = self._read_json()
                decisions = service.record_decision(
                    session_id, str(body.get("lemma", "")), str(body.get("verdict", ""))
                )
                self._respond(200, {"decisions": decisions})
            elif action == "finalize":
                model = service.finalize_session(session_id)
                self._respond(200, model.to_json_dict())
            else:
                self._error(404, "no such action", action)

        def _session_get(self, session_id: str, action: str, query: dict) -> None:
            if action == "proposals":
                limit = int(query.get("limit", [DEFAULT_PROPOSAL_LIMIT])[0])
                self._respond(200, {"proposals": service.list_proposals(session_id, limit)})
            elif action == "transcript":
                self._respond(200, {"events": service.transcript(session_id)})
            else:
                self._error(404, "no such action", action)

        def _static(self, path: str) -> None:
            assert ui_root is not None
            relative = path.lstrip("/") or "index.html"
            target = (ui_root / relative).resolve()
            if ui_root not in target.parents and target != ui_root:
                self._error(404, "not found", path)
                return
            if target.is_dir():
                target = target / "index.html"
            if not target.is_file():
                self._error(404, "not found", path)
                return
            payload = target.read_bytes()
            self.send_response(200)
            self.send_header("Content-Type", _CONTENT_TYPES.get(target.suffix, "application/octet-stream"))
            self.send_header("Content-Length", str(len(payload)))
            self.end_headers()
            self.wfile.write(payload)

        def _read_json(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b"{}"
            try:
                body = json.loads(raw or b"{}")
            except json.JSONDecodeError as exc:
                raise ValueError(f"request body is not valid JSON: {exc}") from exc
            if not isinstance(body, dict):
                raise ValueError("request body must be a JSON object")
            return body

        def _respond(self, status: int, payload: dict) -> None:
            raw = json.dumps(payload, sort_keys=True).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(raw)))
            self.end_headers()
            self.wfile.write(raw)

        def _error(self, status: int, error: str, detail: str) -> None:
            self._respond(status, {"error": error, "detail": detail})

        def log_message(self, fmt: str, *args) -> None:
            print(f"{self.address_string()} {fmt % args}")

    return Handler


def make_server(
    service: SessionService,
    host: str = "127.0.0.1",
    port: int = 0,
    ui_dir: str | Path | None = None,
) -> ThreadingHTTPServer:
    return ThreadingHTTPServer((host, port), make_handler(service, ui_dir))


def serve_forever(
    service: SessionService,
    host: str,
    port: int,
    ui_dir: str | Path | None = None,
) -> None:
    """Serve until interrupted; in-flight requests finish before shutdown."""
    server = make_server(service, host, port, ui_dir)
    bound_host, bound_port = server.server_address[:2]
    print(f"listening on {bound_host}:{bound_port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
