"""HTTP restoration service with a human-correction feedback loop.

The model and lexicon are loaded once and treated as an immutable snapshot,
so concurrent requests are safe and responses are deterministic. Feedback
lands in an append-only JSONL store guarded by a single writer lock; the
export helper turns accepted corrections back into parallel training pairs.
"""

from __future__ import annotations

import datetime
import json
import threading
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .corpus import Lexicon, ParallelCorpus, prepare_parallel, tokenize
from .decoder import restore_viterbi
from .graphemes import normalize, strip_diacritics
from .ngram import NgramModel

DEFAULT_MAX_CHARS = 10_000


class RestoreRequest(BaseModel):
    text: str


class Alternative(BaseModel):
    form: str
    score: float


class TokenResult(BaseModel):
    source: str
    best: str
    alternatives: list[Alternative]


class RestoreResponse(BaseModel):
    restored: str
    tokens: list[TokenResult]


class FeedbackRequest(BaseModel):
    source: str
    corrected: str
    served: Optional[str] = None
    choices: Optional[list[str]] = None
    client_id: Optional[str] = None


class FeedbackStore:
    """Append-only JSONL store; appends are serialized through one lock."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, record: dict) -> None:
        line = json.dumps(record, ensure_ascii=False)
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")

    def records(self) -> list[dict]:
        if not self.path.exists():
            return []
        with open(self.path, encoding="utf-8") as fh:
            return [json.loads(line) for line in fh if line.strip()]


def check_feedback(source: str, corrected: str) -> list[str]:
    """Validate a correction against its source sentence.

    Returns the corrected token sequence; raises ValueError naming the
    offending token if the correction does not strip back to the source.
    """
    src_tokens = tokenize(normalize(source))
    corr_tokens = tokenize(normalize(corrected))
    if len(src_tokens) != len(corr_tokens):
        raise ValueError(
            f"corrected sentence has {len(corr_tokens)} tokens, source has {len(src_tokens)}"
        )
    for src_tok, corr_tok in zip(src_tokens, corr_tokens):
        if strip_diacritics(corr_tok) != strip_diacritics(src_tok):
            raise ValueError(
                f"corrected token {corr_tok!r} does not strip to source token {src_tok!r}"
            )
    return corr_tokens


def export_feedback(path: str | Path) -> ParallelCorpus:
    """Turn stored corrections into parallel training pairs."""
    store = FeedbackStore(path)
    lines = [record["corrected"] for record in store.records()]
    return prepare_parallel(lines, source_id=f"feedback:{path}")


def create_app(
    model: NgramModel,
    lexicon: Lexicon,
    feedback_path: str | Path = "feedback.jsonl",
    max_chars: int = DEFAULT_MAX_CHARS,
    static_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="yodi", version="0.1.0")
    store = FeedbackStore(feedback_path)
    app.state.model = model
    app.state.lexicon = lexicon
    app.state.feedback = store

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/restore", response_model=RestoreResponse)
    def restore(request: RestoreRequest) -> RestoreResponse:
        text = request.text
        if not text.strip():
            raise HTTPException(status_code=400, detail="text is empty")
        if len(text) > max_chars:
            raise HTTPException(
                status_code=413, detail=f"text exceeds {max_chars} characters"
            )
        tokens = tokenize(normalize(text))
        source = [strip_diacritics(tok) for tok in tokens]
        restoration = restore_viterbi(model, lexicon, source)
        return RestoreResponse(
            restored=restoration.text,
            tokens=[
                TokenResult(
                    source=pos.source,
                    best=pos.chosen,
                    alternatives=[Alternative(form=f, score=s) for f, s in pos.alternatives],
                )
                for pos in restoration.positions
            ],
        )

    @app.post("/feedback")
    def feedback(request: FeedbackRequest) -> dict:
        try:
            check_feedback(request.source, request.corrected)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        store.append(
            {
                "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
                "source": normalize(request.source),
                "served": None if request.served is None else normalize(request.served),
                "corrected": normalize(request.corrected),
                "choices": request.choices,
                "client_id": request.client_id,
            }
        )
        return {"status": "ok"}

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
