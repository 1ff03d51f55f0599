"""Parallel corpus preparation: tokenizing, pairing, lexicon and statistics.

Training pairs are token-aligned: the source side is the diacritic-stripped
target side, token for token, which keeps word error rates and lattice
decoding well defined. Punctuation and digit tokens ride along in pairs but
stay out of the lexicon; they are passthrough at decode time.
"""

from __future__ import annotations

import hashlib
import json
import unicodedata
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .graphemes import normalize, strip_diacritics


def tokenize(line: str) -> list[str]:
    """Split a normalized line into tokens.

    Whitespace separates tokens; punctuation at token edges is split off
    into standalone tokens, one character each. Word-internal punctuation
    (hyphenated compounds, apostrophes) and digit runs stay intact.
    """
    tokens: list[str] = []
    for chunk in line.split():
        leading: list[str] = []
        trailing: list[str] = []
        while chunk and _is_punct(chunk[0]):
            leading.append(chunk[0])
            chunk = chunk[1:]
        while chunk and _is_punct(chunk[-1]):
            trailing.append(chunk[-1])
            chunk = chunk[:-1]
        tokens.extend(leading)
        if chunk:
            tokens.append(chunk)
        tokens.extend(reversed(trailing))
    return tokens


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch)[0] in "PS"


def is_passthrough_token(token: str) -> bool:
    """True for tokens the restorer must copy verbatim: digits and punctuation.

    A token is passthrough when it contains a digit anywhere (2019, zone9)
    or no letter at all.
    """
    return any(ch.isdigit() for ch in token) or not any(ch.isalpha() for ch in token)


@dataclass(frozen=True)
class ParallelPair:
    """One aligned training pair; source is the stripped form of target."""

    source: tuple[str, ...]
    target: tuple[str, ...]
    origin: tuple[str, int]
    no_diacritics: bool = False


ParallelCorpus = list[ParallelPair]


def prepare_parallel(lines: Iterable[str], source_id: str = "-") -> ParallelCorpus:
    """Turn diacritized text (one sentence per line) into aligned pairs.

    Empty lines are skipped. A line whose stripped form equals the line
    itself (no diacritics anywhere) is kept but flagged ``no_diacritics``:
    it may be non-Yorùbá, but loan and code-switched content is real and
    must stay visible.
    """
    pairs: ParallelCorpus = []
    for lineno, raw in enumerate(lines, start=1):
        line = normalize(raw).strip()
        if not line:
            continue
        target = tuple(tokenize(line))
        source = tuple(strip_diacritics(tok) for tok in target)
        pairs.append(
            ParallelPair(source, target, (source_id, lineno), no_diacritics=source == target)
        )
    return pairs


@dataclass
class Lexicon:
    """Maps each undiacritized form to its observed diacritized variants.

    Variant lists are sorted by count descending, ties by canonical byte
    order, so index 0 is always the deterministic unigram argmax.
    """

    entries: dict[str, list[tuple[str, int]]] = field(default_factory=dict)
    total_tokens: int = 0

    def variants(self, key: str) -> list[tuple[str, int]]:
        return self.entries.get(key, [])

    def __contains__(self, key: str) -> bool:
        return key in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def has_variant(self, token: str) -> bool:
        """True iff this exact diacritized token was observed in training."""
        key = strip_diacritics(token)
        return any(v == token for v, _ in self.entries.get(key, ()))

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_tsv())

    def to_tsv(self) -> str:
        lines = [f"# total_tokens\t{self.total_tokens}"]
        for key in sorted(self.entries):
            for variant, count in self.entries[key]:
                lines.append(f"{key}\t{variant}\t{count}")
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, path: str | Path) -> "Lexicon":
        entries: dict[str, list[tuple[str, int]]] = defaultdict(list)
        total = 0
        with open(path, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.rstrip("\n")
                if not line:
                    continue
                if line.startswith("#"):
                    _, value = line.split("\t")
                    total = int(value)
                    continue
                key, variant, count = line.split("\t")
                entries[normalize(key)].append((normalize(variant), int(count)))
        lex = cls(dict(entries), total)
        lex._sort()
        return lex

    def _sort(self) -> None:
        for key, variants in self.entries.items():
            self.entries[key] = sorted(variants, key=lambda vc: (-vc[1], vc[0]))


def build_lexicon(corpus: ParallelCorpus) -> Lexicon:
    """Count diacritized variants under their stripped keys.

    Passthrough tokens (digits, punctuation) are excluded. Raises
    ValueError on an empty corpus.
    """
    if not corpus:
        raise ValueError("cannot build a lexicon from an empty corpus")
    counts: dict[str, Counter] = defaultdict(Counter)
    total = 0
    for pair in corpus:
        for src_tok, tgt_tok in zip(pair.source, pair.target):
            if is_passthrough_token(tgt_tok):
                continue
            counts[src_tok][tgt_tok] += 1
            total += 1
    lexicon = Lexicon({k: list(c.items()) for k, c in counts.items()}, total)
    lexicon._sort()
    return lexicon


@dataclass
class AmbiguityReport:
    """How ambiguous stripped text is, measured over a corpus and its lexicon."""

    variant_count_distribution: dict[int, int]
    ambiguous_token_fraction: float
    mean_variants_per_token: float
    lexical_tokens: int
    most_ambiguous: list[tuple[str, int]]

    def to_json(self) -> dict:
        return {
            "variant_count_distribution": {
                str(k): v for k, v in sorted(self.variant_count_distribution.items())
            },
            "ambiguous_token_fraction": self.ambiguous_token_fraction,
            "mean_variants_per_token": self.mean_variants_per_token,
            "lexical_tokens": self.lexical_tokens,
            "most_ambiguous": [list(kv) for kv in self.most_ambiguous],
        }


def ambiguity_report(lexicon: Lexicon, corpus: ParallelCorpus, top: int = 15) -> AmbiguityReport:
    """Quantify the number of valid diacritic arrangements per word.

    Reports the per-key variant count distribution, the fraction of corpus
    tokens whose key has two or more variants, and the mean number of
    variants per token occurrence.
    """
    distribution = Counter(len(variants) for variants in lexicon.entries.values())
    total = 0
    ambiguous = 0
    variant_sum = 0
    for pair in corpus:
        for src_tok, tgt_tok in zip(pair.source, pair.target):
            if is_passthrough_token(tgt_tok):
                continue
            total += 1
            n = max(1, len(lexicon.variants(src_tok)))
            variant_sum += n
            if n >= 2:
                ambiguous += 1
    if total == 0:
        raise ValueError("empty corpus: no lexical tokens to report on")
    ranked = sorted(
        ((key, len(variants)) for key, variants in lexicon.entries.items()),
        key=lambda kv: (-kv[1], kv[0]),
    )
    return AmbiguityReport(
        variant_count_distribution=dict(distribution),
        ambiguous_token_fraction=ambiguous / total,
        mean_variants_per_token=variant_sum / total,
        lexical_tokens=total,
        most_ambiguous=ranked[:top],
    )


def _hash01(seed: int, origin: tuple[str, int]) -> float:
    digest = hashlib.sha256(f"{seed}|{origin[0]}|{origin[1]}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") / 2**64


def split_corpus(
    corpus: ParallelCorpus,
    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1),
    seed: int = 0,
) -> tuple[ParallelCorpus, ParallelCorpus, ParallelCorpus]:
    """Partition a corpus into train/dev/test by seeded hash of pair origin.

    The assignment is deterministic across runs and platforms for the same
    seed, and hashing (rather than contiguous blocks) avoids handing whole
    topical sources to one side of the split.
    """
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError(f"split ratios must sum to 1, got {ratios}")
    train: ParallelCorpus = []
    dev: ParallelCorpus = []
    test: ParallelCorpus = []
    t1, t2 = ratios[0], ratios[0] + ratios[1]
    for pair in corpus:
        u = _hash01(seed, pair.origin)
        if u < t1:
            train.append(pair)
        elif u < t2:
            dev.append(pair)
        else:
            test.append(pair)
    return train, dev, test


@dataclass
class SourceStats:
    lines: int = 0
    words: int = 0
    vocab_diacritized: int = 0
    vocab_stripped: int = 0


@dataclass
class CorpusStats:
    """Per-source line/word counts with diacritized and stripped vocab sizes."""

    per_source: dict[str, SourceStats]
    total: SourceStats

    def to_json(self) -> dict:
        return {
            "per_source": {k: vars(v) for k, v in sorted(self.per_source.items())},
            "total": vars(self.total),
        }


def corpus_stats(corpus: ParallelCorpus) -> CorpusStats:
    """Compute word counts and vocabulary sizes, grouped by source.

    Words are tokens containing at least one letter or digit; standalone
    punctuation is excluded from word counts.
    """
    per_source: dict[str, SourceStats] = {}
    vocab_d: dict[str, set] = defaultdict(set)
    vocab_s: dict[str, set] = defaultdict(set)
    for pair in corpus:
        label = pair.origin[0]
        stats = per_source.setdefault(label, SourceStats())
        stats.lines += 1
        for src_tok, tgt_tok in zip(pair.source, pair.target):
            if not any(ch.isalnum() for ch in tgt_tok):
                continue
            stats.words += 1
            vocab_d[label].add(tgt_tok)
            vocab_s[label].add(src_tok)
    for label, stats in per_source.items():
        stats.vocab_diacritized = len(vocab_d[label])
        stats.vocab_stripped = len(vocab_s[label])
    total = SourceStats(
        lines=sum(s.lines for s in per_source.values()),
        words=sum(s.words for s in per_source.values()),
        vocab_diacritized=len(set().union(*vocab_d.values())) if vocab_d else 0,
        vocab_stripped=len(set().union(*vocab_s.values())) if vocab_s else 0,
    )
    return CorpusStats(per_source, total)


def write_corpus_tsv(corpus: ParallelCorpus, path: str | Path) -> None:
    """Write pairs as one `source TAB target` line each (tokens space-joined)."""
    with open(path, "w", encoding="utf-8") as fh:
        for pair in corpus:
            fh.write(" ".join(pair.source) + "\t" + " ".join(pair.target) + "\n")


def write_corpus_files(corpus: ParallelCorpus, prefix: str | Path) -> tuple[Path, Path]:
    """Write aligned .src/.tgt files next to each other; returns both paths."""
    src_path = Path(f"{prefix}.src")
    tgt_path = Path(f"{prefix}.tgt")
    with open(src_path, "w", encoding="utf-8") as src, open(tgt_path, "w", encoding="utf-8") as tgt:
        for pair in corpus:
            src.write(" ".join(pair.source) + "\n")
            tgt.write(" ".join(pair.target) + "\n")
    return src_path, tgt_path


def read_corpus_tsv(path: str | Path) -> ParallelCorpus:
    """Read pairs written by :func:`write_corpus_tsv`."""
    pairs: ParallelCorpus = []
    name = str(path)
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = normalize(raw).rstrip("\n")
            if not line:
                continue
            source_text, target_text = line.split("\t")
            source = tuple(source_text.split())
            target = tuple(target_text.split())
            pairs.append(
                ParallelPair(source, target, (name, lineno), no_diacritics=source == target)
            )
    return pairs


def stats_json(stats: CorpusStats) -> str:
    return json.dumps(stats.to_json(), ensure_ascii=False, indent=2)
