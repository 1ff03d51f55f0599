"""Diacritic restoration: candidate lattices, unigram argmax and Viterbi.

Every position in the lattice holds the diacritized variants the lexicon
knows for the stripped source token; digits, punctuation and unknown words
get a singleton passthrough candidate, so decoding degrades gracefully on
loan words and never stalls. The Viterbi search is exact over the lattice
(trigram context), with lexicographic tie-breaking for determinism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .corpus import Lexicon, is_passthrough_token
from .ngram import BOS, EOS, NgramModel


@dataclass
class Lattice:
    """Per-position ranked candidates: (diacritized form, lexicon count)."""

    source: tuple[str, ...]
    candidates: list[list[tuple[str, int]]]


@dataclass
class PositionChoice:
    source: str
    chosen: str
    alternatives: list[tuple[str, float]]  # ranked best-first, (form, path score)


@dataclass
class Restoration:
    """A restored sentence with per-position alternatives and its log-probability."""

    tokens: tuple[str, ...]
    positions: list[PositionChoice]
    logprob: float

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


def build_lattice(lexicon: Lexicon, source_tokens: Sequence[str]) -> Lattice:
    """Look up candidates for each stripped token.

    Tokens absent from the lexicon, digits and punctuation carry the source
    token itself as their only candidate (count 0).
    """
    candidates: list[list[tuple[str, int]]] = []
    for token in source_tokens:
        if is_passthrough_token(token):
            candidates.append([(token, 0)])
            continue
        variants = lexicon.variants(token)
        candidates.append(list(variants) if variants else [(token, 0)])
    return Lattice(tuple(source_tokens), candidates)


def restore_unigram(lexicon: Lexicon, source_tokens: Sequence[str]) -> Restoration:
    """Baseline: per-position argmax by lexicon count, no context.

    Alternative scores are within-position relative frequencies; the
    restoration log-probability is the sum of their logs.
    """
    lattice = build_lattice(lexicon, source_tokens)
    tokens: list[str] = []
    positions: list[PositionChoice] = []
    logprob = 0.0
    for source, cands in zip(lattice.source, lattice.candidates):
        total = sum(count for _, count in cands)
        if total > 0:
            scored = [(form, count / total) for form, count in cands]
        else:
            scored = [(form, 1.0) for form, _ in cands]
        chosen = scored[0][0]
        tokens.append(chosen)
        positions.append(PositionChoice(source, chosen, scored))
        logprob += math.log(scored[0][1])
    return Restoration(tuple(tokens), positions, logprob)


def restore_viterbi(
    model: NgramModel, lexicon: Lexicon, source_tokens: Sequence[str]
) -> Restoration:
    """Exact Viterbi decode of the candidate lattice under the n-gram model.

    Maximizes the summed log score of the path including the end-of-sentence
    transition, so ``restoration.logprob == model.sequence_logprob(tokens)``.
    Score ties break lexicographically on the candidate path. Alternatives
    at each position are reported with the best full-path score passing
    through them.
    """
    lattice = build_lattice(lexicon, source_tokens)
    n = len(lattice.source)
    if n == 0:
        return Restoration((), [], model.logscore(EOS, (BOS, BOS)))

    # Forward pass; a state is the last two output tokens.
    forward: list[dict[tuple[str, str], tuple[float, tuple[str, ...]]]] = []
    first: dict[tuple[str, str], tuple[float, tuple[str, ...]]] = {}
    for form, _ in lattice.candidates[0]:
        score = model.logscore(form, (BOS, BOS))
        _keep_best(first, (BOS, form), score, (form,))
    forward.append(first)
    for i in range(1, n):
        layer: dict[tuple[str, str], tuple[float, tuple[str, ...]]] = {}
        for (prev2, prev1), (score, path) in forward[i - 1].items():
            for form, _ in lattice.candidates[i]:
                total = score + model.logscore(form, (prev2, prev1))
                _keep_best(layer, (prev1, form), total, path + (form,))
        forward.append(layer)

    # Backward pass: best completion score from each state (EOS included).
    backward: list[dict[tuple[str, str], float]] = [dict() for _ in range(n)]
    for state in forward[n - 1]:
        backward[n - 1][state] = model.logscore(EOS, state)
    for i in range(n - 1, 0, -1):
        for state in forward[i - 1]:
            prev2, prev1 = state
            best = -math.inf
            for form, _ in lattice.candidates[i]:
                completion = model.logscore(form, state) + backward[i][(prev1, form)]
                if completion > best:
                    best = completion
            backward[i - 1][state] = best

    best_score = -math.inf
    best_path: tuple[str, ...] | None = None
    for state, (score, path) in forward[n - 1].items():
        total = score + backward[n - 1][state]
        if total > best_score or (total == best_score and (best_path is None or path < best_path)):
            best_score = total
            best_path = path

    positions: list[PositionChoice] = []
    for i in range(n):
        through: dict[str, float] = {}
        for state, (score, _) in forward[i].items():
            form = state[1]
            total = score + backward[i][state]
            if form not in through or total > through[form]:
                through[form] = total
        ranked = sorted(through.items(), key=lambda fs: (-fs[1], fs[0]))
        positions.append(PositionChoice(lattice.source[i], best_path[i], ranked))

    return Restoration(best_path, positions, best_score)


def _keep_best(
    layer: dict[tuple[str, str], tuple[float, tuple[str, ...]]],
    state: tuple[str, str],
    score: float,
    path: tuple[str, ...],
) -> None:
    incumbent = layer.get(state)
    if incumbent is None or score > incumbent[0] or (score == incumbent[0] and path < incumbent[1]):
        layer[state] = (score, path)
