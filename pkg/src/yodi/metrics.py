"""Corpus-level scoring: BLEU, WER, perplexity and per-token error analysis.

BLEU follows the classic Moses multi-bleu behavior exactly: corpus-level
clipped n-gram precisions for n = 1..4 against a single reference, a
brevity penalty of min(1, e^(1-r/c)), no smoothing (any zero precision
zeroes the score), input pre-tokenized, reported on a 0-100 scale. That
keeps scores comparable with systems reported under the same script.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .graphemes import strip_diacritics

CORRECT = "correct"
UNDIACRITIZED = "undiacritized-passthrough"
WRONG_DIACRITICS = "wrong-diacritics"
OTHER_WORD = "other-word"
CATEGORIES = (CORRECT, UNDIACRITIZED, WRONG_DIACRITICS, OTHER_WORD)

TokenLines = Sequence[Sequence[str]]


@dataclass
class BleuScore:
    bleu: float  # 0-100
    precisions: tuple[float, float, float, float]
    brevity_penalty: float
    hyp_length: int
    ref_length: int

    def to_json(self) -> dict:
        return {
            "bleu": self.bleu,
            "precisions": list(self.precisions),
            "brevity_penalty": self.brevity_penalty,
            "hyp_length": self.hyp_length,
            "ref_length": self.ref_length,
        }


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(references: TokenLines, hypotheses: TokenLines) -> BleuScore:
    """Single-reference corpus BLEU with multi-bleu semantics.

    Lines must already be tokenized (whitespace-delimited as given); no
    re-tokenization happens here. Raises ValueError on mismatched line
    counts or an empty corpus.
    """
    if len(references) != len(hypotheses):
        raise ValueError(
            f"line count mismatch: {len(references)} references vs {len(hypotheses)} hypotheses"
        )
    if not references:
        raise ValueError("empty corpus")
    matches = [0] * 4
    totals = [0] * 4
    ref_length = 0
    hyp_length = 0
    for ref, hyp in zip(references, hypotheses):
        ref_length += len(ref)
        hyp_length += len(hyp)
        for n in range(1, 5):
            hyp_counts = _ngrams(hyp, n)
            if not hyp_counts:
                continue
            ref_counts = _ngrams(ref, n)
            totals[n - 1] += sum(hyp_counts.values())
            matches[n - 1] += sum(
                min(count, ref_counts[gram]) for gram, count in hyp_counts.items()
            )
    precisions = tuple(
        (matches[i] / totals[i]) if totals[i] > 0 else 0.0 for i in range(4)
    )
    if hyp_length == 0:
        return BleuScore(0.0, precisions, 0.0, 0, ref_length)
    brevity_penalty = min(1.0, math.exp(1.0 - ref_length / hyp_length))
    if min(precisions) > 0.0:
        score = 100.0 * brevity_penalty * math.exp(
            sum(math.log(p) for p in precisions) / 4.0
        )
    else:
        score = 0.0
    return BleuScore(score, precisions, brevity_penalty, hyp_length, ref_length)


def edit_distance(reference: Sequence[str], hypothesis: Sequence[str]) -> int:
    """Word-level Levenshtein distance with unit costs."""
    previous = list(range(len(hypothesis) + 1))
    for i, ref_tok in enumerate(reference, start=1):
        current = [i] + [0] * len(hypothesis)
        for j, hyp_tok in enumerate(hypothesis, start=1):
            current[j] = min(
                previous[j] + 1,  # deletion
                current[j - 1] + 1,  # insertion
                previous[j - 1] + (ref_tok != hyp_tok),  # substitution
            )
        previous = current
    return previous[-1]


def wer(references: TokenLines, hypotheses: TokenLines) -> float:
    """Corpus word error rate: summed edit distance over summed reference length, x100."""
    if len(references) != len(hypotheses):
        raise ValueError(
            f"line count mismatch: {len(references)} references vs {len(hypotheses)} hypotheses"
        )
    if not references:
        raise ValueError("empty reference corpus")
    distance = sum(edit_distance(r, h) for r, h in zip(references, hypotheses))
    ref_tokens = sum(len(r) for r in references)
    if ref_tokens == 0:
        raise ValueError("reference corpus has no tokens")
    return 100.0 * distance / ref_tokens


def perplexity(logprob: float, token_count: int) -> float:
    """exp(-logprob / token_count); token_count must be positive."""
    if token_count < 1:
        raise ValueError(f"token count must be >= 1, got {token_count}")
    return math.exp(-logprob / token_count)


@dataclass(frozen=True)
class TokenJudgment:
    line: int
    index: int
    source: str
    reference: str
    hypothesis: str
    category: str
    robust_flag: bool  # digits / loan words the robustness report looks at


@dataclass
class ErrorAnalysis:
    """Per-token categories plus summary counts and rates."""

    judgments: list[TokenJudgment]
    skipped_lines: list[tuple[int, str]]
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return len(self.judgments)

    def rates(self) -> dict[str, float]:
        if not self.judgments:
            return {c: 0.0 for c in CATEGORIES}
        return {c: self.counts.get(c, 0) / self.total for c in CATEGORIES}

    def robustness(self) -> dict:
        flagged = [j for j in self.judgments if j.robust_flag]
        correct = sum(1 for j in flagged if j.category == CORRECT)
        return {
            "flagged_tokens": len(flagged),
            "flagged_correct": correct,
            "rate": (correct / len(flagged)) if flagged else None,
        }

    def to_json(self) -> dict:
        return {
            "token_count": self.total,
            "counts": {c: self.counts.get(c, 0) for c in CATEGORIES},
            "rates": self.rates(),
            "robustness": self.robustness(),
            "skipped_lines": [
                {"line": line, "reason": reason} for line, reason in self.skipped_lines
            ],
        }


def _categorize(source: str, ref: str, hyp: str) -> str:
    if hyp == ref:
        return CORRECT
    if hyp == source:
        return UNDIACRITIZED
    if strip_diacritics(hyp) == strip_diacritics(ref):
        return WRONG_DIACRITICS
    return OTHER_WORD


def error_analysis(
    sources: TokenLines, references: TokenLines, hypotheses: TokenLines
) -> ErrorAnalysis:
    """Label every aligned token with exactly one error category.

    Categories: correct; undiacritized-passthrough (hyp = source but not the
    reference); wrong-diacritics (same stripped form, different marks);
    other-word (different stripped form). Engine output is always aligned;
    external prediction lines with mismatched token counts are reported
    per-line and excluded from token-level counts. Digit tokens and loan
    tokens (reference identical to source) are flagged for the robustness
    summary.
    """
    if not (len(sources) == len(references) == len(hypotheses)):
        raise ValueError("sources, references and hypotheses must have equal line counts")
    judgments: list[TokenJudgment] = []
    skipped: list[tuple[int, str]] = []
    counts: Counter = Counter()
    for lineno, (src, ref, hyp) in enumerate(zip(sources, references, hypotheses), start=1):
        if not (len(src) == len(ref) == len(hyp)):
            skipped.append(
                (lineno, f"token counts differ: src={len(src)} ref={len(ref)} hyp={len(hyp)}")
            )
            continue
        for i, (s, r, h) in enumerate(zip(src, ref, hyp)):
            category = _categorize(s, r, h)
            counts[category] += 1
            robust = any(ch.isdigit() for ch in s) or r == s
            judgments.append(TokenJudgment(lineno, i, s, r, h, category, robust))
    return ErrorAnalysis(judgments, skipped, dict(counts))


@dataclass
class EvalReport:
    """Everything the evaluate command reports, JSON- and table-renderable."""

    bleu: BleuScore
    wer: float
    perplexity: float | None
    analysis: ErrorAnalysis

    def to_json(self) -> dict:
        return {
            "bleu": self.bleu.to_json(),
            "wer": self.wer,
            "perplexity": self.perplexity,
            "error_analysis": self.analysis.to_json(),
        }

    def to_table(self) -> str:
        p1, p2, p3, p4 = (100.0 * p for p in self.bleu.precisions)
        lines = [
            f"BLEU       {self.bleu.bleu:6.2f}  "
            f"(p1 {p1:.1f} / p2 {p2:.1f} / p3 {p3:.1f} / p4 {p4:.1f}, "
            f"bp {self.bleu.brevity_penalty:.3f}, hyp {self.bleu.hyp_length}, ref {self.bleu.ref_length})",
            f"WER        {self.wer:6.2f}",
            f"Perplexity {self.perplexity:6.3f}" if self.perplexity is not None else "Perplexity     n/a",
            "",
            f"{'category':28}{'tokens':>8}{'rate':>8}",
        ]
        rates = self.analysis.rates()
        for category in CATEGORIES:
            lines.append(
                f"{category:28}{self.analysis.counts.get(category, 0):>8}{rates[category]:>8.3f}"
            )
        robust = self.analysis.robustness()
        rate = robust["rate"]
        lines.append(
            f"{'robust (digits/loans) ok':28}{robust['flagged_correct']:>8}"
            + (f"{rate:>8.3f}" if rate is not None else f"{'n/a':>8}")
        )
        if self.analysis.skipped_lines:
            lines.append(f"skipped lines: {len(self.analysis.skipped_lines)}")
        return "\n".join(lines) + "\n"

    def to_tsv(self) -> str:
        rows = [
            ("metric", "value"),
            ("bleu", f"{self.bleu.bleu:.4f}"),
            ("p1", f"{self.bleu.precisions[0]:.6f}"),
            ("p2", f"{self.bleu.precisions[1]:.6f}"),
            ("p3", f"{self.bleu.precisions[2]:.6f}"),
            ("p4", f"{self.bleu.precisions[3]:.6f}"),
            ("brevity_penalty", f"{self.bleu.brevity_penalty:.6f}"),
            ("wer", f"{self.wer:.4f}"),
            ("perplexity", "" if self.perplexity is None else f"{self.perplexity:.6f}"),
        ]
        for category in CATEGORIES:
            rows.append((f"tokens_{category}", str(self.analysis.counts.get(category, 0))))
        return "\n".join("\t".join(row) for row in rows) + "\n"


def report_json(report: EvalReport) -> str:
    return json.dumps(report.to_json(), ensure_ascii=False, indent=2)
