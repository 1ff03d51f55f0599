"""Post-OCR cleanup for scanned Yorùbá books.

OCR engines run with English, Romanian and Vietnamese character sets
produce an approximate superset of the Yorùbá inventory. The rule table
below rewrites the confusions that have exactly one Yorùbá reading
(s-cedilla and s-comma-below are ṣ) and flags everything ambiguous —
Vietnamese dot-below vowels, hook-above, tilde, circumflex, breve and horn
forms — for a human instead of guessing. Flagged or low-quality lines land
in an append-only review queue; accepted lines are safe corpus input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import Lexicon, is_passthrough_token, tokenize
from .graphemes import normalize, validate

FLAG = None  # rule target meaning "leave in place, route to a human"

# (foreign cluster, replacement | FLAG); longest cluster wins at a position.
_DEFAULT_RULES: tuple[tuple[str, str | None], ...] = (
    # Romanian s with cedilla / comma below: the one safe rewrite.
    ("ş", "ṣ"), ("Ş", "Ṣ"),
    ("ș", "ṣ"), ("Ș", "Ṣ"),
    # Romanian t forms and circumflex vowels have no Yorùbá counterpart.
    ("ţ", FLAG), ("Ţ", FLAG), ("ț", FLAG), ("Ț", FLAG),
    ("î", FLAG), ("Î", FLAG),
    # Vietnamese dot-below vowels that Yorùbá does not dot.
    ("ạ", FLAG), ("Ạ", FLAG), ("ị", FLAG), ("Ị", FLAG), ("ụ", FLAG), ("Ụ", FLAG),
    # Vietnamese hook-above.
    ("ả", FLAG), ("ẻ", FLAG), ("ỉ", FLAG), ("ỏ", FLAG), ("ủ", FLAG),
    ("Ả", FLAG), ("Ẻ", FLAG), ("Ỉ", FLAG), ("Ỏ", FLAG), ("Ủ", FLAG),
    # Vietnamese tilde.
    ("ã", FLAG), ("ẽ", FLAG), ("ĩ", FLAG), ("õ", FLAG), ("ũ", FLAG),
    ("Ã", FLAG), ("Ẽ", FLAG), ("Ĩ", FLAG), ("Õ", FLAG), ("Ũ", FLAG),
    # Circumflex families (ệ/ộ carry a circumflex, which never maps, so FLAG).
    ("â", FLAG), ("ê", FLAG), ("ô", FLAG),
    ("ấ", FLAG), ("ầ", FLAG), ("ậ", FLAG),
    ("ế", FLAG), ("ề", FLAG), ("ệ", FLAG),
    ("ố", FLAG), ("ồ", FLAG), ("ộ", FLAG),
    ("Â", FLAG), ("Ê", FLAG), ("Ô", FLAG), ("Ệ", FLAG), ("Ộ", FLAG),
    # Vietnamese breve and horn vowels, and the stroked d.
    ("ă", FLAG), ("ắ", FLAG), ("ằ", FLAG), ("ặ", FLAG), ("Ă", FLAG),
    ("ơ", FLAG), ("ớ", FLAG), ("ờ", FLAG), ("ợ", FLAG), ("Ơ", FLAG),
    ("ư", FLAG), ("ứ", FLAG), ("ừ", FLAG), ("ự", FLAG), ("Ư", FLAG),
    ("đ", FLAG), ("Đ", FLAG),
)


@dataclass(frozen=True)
class MapEvent:
    """One rule application: replacement is None when the rule flagged."""

    position: int
    original: str
    replacement: str | None

    @property
    def flagged(self) -> bool:
        return self.replacement is None


class CharMapTable:
    """Ordered foreign-cluster rewrite rules, applied longest-cluster-first."""

    def __init__(self, rules: Iterable[tuple[str, str | None]]):
        self.rules = [(normalize(src), None if dst is None else normalize(dst)) for src, dst in rules]
        for src, dst in self.rules:
            if not src:
                raise ValueError("empty source cluster in rule table")
            if dst is not None and validate(dst):
                raise ValueError(f"rule target {dst!r} is not inventory-valid")
        # longest first; original order decides among equal lengths
        self._ordered = sorted(
            range(len(self.rules)), key=lambda i: (-len(self.rules[i][0]), i)
        )

    @classmethod
    def default(cls) -> "CharMapTable":
        return cls(_DEFAULT_RULES)

    def match(self, text: str, pos: int) -> tuple[str, str | None] | None:
        for i in self._ordered:
            src, dst = self.rules[i]
            if text.startswith(src, pos):
                return src, dst
        return None

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for src, dst in self.rules:
                fh.write(f"{src}\t{'FLAG' if dst is None else dst}\n")

    @classmethod
    def load(cls, path: str | Path) -> "CharMapTable":
        rules: list[tuple[str, str | None]] = []
        with open(path, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                src, dst = line.split("\t")
                rules.append((src, None if dst == "FLAG" else dst))
        return cls(rules)


def map_superset(table: CharMapTable, text: str) -> tuple[str, list[MapEvent]]:
    """Rewrite foreign clusters; FLAG matches stay in place but are logged.

    Idempotent on the text: substituted output is inventory-valid and never
    matches a foreign-cluster rule again.
    """
    text = normalize(text)
    out: list[str] = []
    events: list[MapEvent] = []
    pos = 0
    while pos < len(text):
        matched = table.match(text, pos)
        if matched is None:
            out.append(text[pos])
            pos += 1
            continue
        src, dst = matched
        events.append(MapEvent(pos, src, dst))
        out.append(src if dst is None else dst)
        pos += len(src)
    return normalize("".join(out)), events


def quality_score(lexicon: Lexicon, text: str, w_valid: float = 0.5, w_lexicon: float = 0.5) -> float:
    """Blend of cluster validity and lexicon coverage, in [0, 1].

    score = w_valid * (fraction of tokens whose clusters all validate)
          + w_lexicon * (fraction of letter tokens observed in the lexicon).

    With an empty lexicon (or no letter tokens) the score falls back to the
    validity fraction alone. An empty line scores 1.0.
    """
    tokens = tokenize(normalize(text))
    if not tokens:
        return 1.0
    valid = sum(1 for tok in tokens if not validate(tok))
    valid_fraction = valid / len(tokens)
    letter_tokens = [tok for tok in tokens if not is_passthrough_token(tok)]
    if not letter_tokens or not len(lexicon):
        return valid_fraction
    hits = sum(1 for tok in letter_tokens if lexicon.has_variant(tok))
    hit_fraction = hits / len(letter_tokens)
    return w_valid * valid_fraction + w_lexicon * hit_fraction


@dataclass
class ReviewItem:
    """A line routed to the human review queue."""

    doc: str
    line: int
    text: str
    mapped: str
    issues: list[str]
    score: float

    def to_json(self) -> dict:
        return {
            "doc": self.doc,
            "line": self.line,
            "text": self.text,
            "mapped": self.mapped,
            "issues": self.issues,
            "score": self.score,
        }


@dataclass
class TriageResult:
    accepted: list[tuple[int, str]]  # (line number, mapped text)
    review: list[ReviewItem]


def triage(
    lines: Iterable[str],
    lexicon: Lexicon,
    table: CharMapTable | None = None,
    threshold: float = 0.9,
    doc_id: str = "-",
) -> TriageResult:
    """Split a document into accepted lines and review-queue items.

    A line is queued when its quality score falls below the threshold, when
    any FLAG rule fired, or when the mapped text still fails validation —
    accepted lines therefore always validate cleanly. Every line ends up on
    exactly one side.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {threshold}")
    table = table or CharMapTable.default()
    accepted: list[tuple[int, str]] = []
    review: list[ReviewItem] = []
    for lineno, raw in enumerate(lines, start=1):
        line = normalize(raw).rstrip("\n")
        mapped, events = map_superset(table, line)
        issues = [
            f"flag:{e.original}@{e.position}" for e in events if e.flagged
        ] + [
            f"substituted:{e.original}->{e.replacement}@{e.position}"
            for e in events
            if not e.flagged
        ]
        violations = validate(mapped)
        issues += [f"invalid:{v.cluster}@{v.position}:{v.reason}" for v in violations]
        score = quality_score(lexicon, mapped)
        if score < threshold or any(e.flagged for e in events) or violations:
            review.append(ReviewItem(doc_id, lineno, line, mapped, issues, score))
        else:
            accepted.append((lineno, mapped))
    return TriageResult(accepted, review)


def append_queue(items: Sequence[ReviewItem], path: str | Path) -> None:
    """Append review items to a JSONL queue file (create if missing)."""
    with open(path, "a", encoding="utf-8") as fh:
        for item in items:
            fh.write(json.dumps(item.to_json(), ensure_ascii=False) + "\n")


def read_queue(path: str | Path) -> list[ReviewItem]:
    items: list[ReviewItem] = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            if not raw.strip():
                continue
            data = json.loads(raw)
            items.append(
                ReviewItem(
                    data["doc"], data["line"], data["text"], data["mapped"],
                    list(data["issues"]), float(data["score"]),
                )
            )
    return items
