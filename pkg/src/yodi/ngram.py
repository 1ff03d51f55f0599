"""Token n-gram model (orders 1-3) with stupid-backoff scoring.

Stupid backoff is unnormalized but exactly reproducible by hand, which is
the point: every probability this model emits can be recomputed from the
count tables with pencil and paper. Backoff chain for a full two-token
context:

    trigram seen      ->            count3 / context3
    else bigram seen  ->  alpha   * count2 / context2
    else in vocab     ->  alpha^2 * count1 / total_tokens
    else (OOV)        ->  alpha^2 * 1 / (vocab_size + 1)

Shorter contexts enter the chain at the matching level with no penalty.
Sentence boundaries are modelled with begin/end markers: bigrams see one
begin marker, trigrams two, and the end marker is scored like a token.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

BOS = "<s>"
EOS = "</s>"

DEFAULT_ALPHA = 0.4

_FORMAT_VERSION = 1


@dataclass
class NgramModel:
    alpha: float = DEFAULT_ALPHA
    unigrams: Counter = field(default_factory=Counter)
    bigrams: Counter = field(default_factory=Counter)
    trigrams: Counter = field(default_factory=Counter)
    total_tokens: int = 0
    sentence_count: int = 0
    # context sums derived from the tables above; rebuilt on construction/load
    _ctx2: Counter = field(default_factory=Counter, repr=False)
    _ctx3: Counter = field(default_factory=Counter, repr=False)

    @property
    def vocab_size(self) -> int:
        return len(self.unigrams)

    def _rebuild_contexts(self) -> None:
        self._ctx2 = Counter()
        for (c1, _), n in self.bigrams.items():
            self._ctx2[c1] += n
        self._ctx3 = Counter()
        for (c2, c1, _), n in self.trigrams.items():
            self._ctx3[(c2, c1)] += n

    def score(self, token: str, context: Sequence[str] = ()) -> float:
        """Stupid-backoff probability of ``token`` after up to two context tokens.

        Always strictly positive; OOV tokens get the uniform floor
        1 / (vocab_size + 1) scaled by the backoff penalty.
        """
        context = tuple(context)[-2:]
        steps = 0
        if len(context) == 2:
            tri = (context[0], context[1], token)
            if tri in self.trigrams:
                return self.trigrams[tri] / self._ctx3[(context[0], context[1])]
            steps += 1
            context = context[1:]
        if len(context) == 1:
            bi = (context[0], token)
            if bi in self.bigrams:
                return self.alpha**steps * self.bigrams[bi] / self._ctx2[context[0]]
            steps += 1
        if token in self.unigrams:
            return self.alpha**steps * self.unigrams[token] / self.total_tokens
        return self.alpha**steps / (self.vocab_size + 1)

    def logscore(self, token: str, context: Sequence[str] = ()) -> float:
        return math.log(self.score(token, context))

    def sequence_logprob(self, tokens: Sequence[str]) -> float:
        """Natural-log probability of a sentence, begin/end padding included.

        The sum runs over len(tokens) + 1 scoring events: each token given
        its two predecessors, plus the end marker. Always finite.
        """
        context = (BOS, BOS)
        logprob = 0.0
        for token in tokens:
            logprob += self.logscore(token, context)
            context = (context[1], token)
        return logprob + self.logscore(EOS, context)

    def save(self, path: str | Path) -> None:
        """Dump counts as TSV: `n <TAB> context <TAB> token <TAB> count`."""
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"# yodi-ngram\tv{_FORMAT_VERSION}\n")
            fh.write(f"# alpha\t{self.alpha!r}\n")
            fh.write(f"# vocab\t{self.vocab_size}\n")
            fh.write(f"# total_tokens\t{self.total_tokens}\n")
            fh.write(f"# sentences\t{self.sentence_count}\n")
            for token, n in sorted(self.unigrams.items()):
                fh.write(f"1\t\t{token}\t{n}\n")
            for (c1, token), n in sorted(self.bigrams.items()):
                fh.write(f"2\t{c1}\t{token}\t{n}\n")
            for (c2, c1, token), n in sorted(self.trigrams.items()):
                fh.write(f"3\t{c2} {c1}\t{token}\t{n}\n")

    @classmethod
    def load(cls, path: str | Path) -> "NgramModel":
        model = cls()
        with open(path, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.rstrip("\n")
                if not line:
                    continue
                if line.startswith("#"):
                    parts = line[2:].split("\t")
                    if len(parts) == 2:
                        key, value = parts
                        if key == "alpha":
                            model.alpha = float(value)
                        elif key == "total_tokens":
                            model.total_tokens = int(value)
                        elif key == "sentences":
                            model.sentence_count = int(value)
                    continue
                order, context, token, count = line.split("\t")
                if order == "1":
                    model.unigrams[token] = int(count)
                elif order == "2":
                    model.bigrams[(context, token)] = int(count)
                else:
                    c2, c1 = context.split(" ")
                    model.trigrams[(c2, c1, token)] = int(count)
        model._rebuild_contexts()
        return model


def train(sentences: Iterable[Sequence[str]], alpha: float = DEFAULT_ALPHA) -> NgramModel:
    """Count n-grams over tokenized target sentences.

    Unigrams count real tokens only; bigrams run over sentences padded with
    one begin marker, trigrams with two; both include the end marker.
    Raises ValueError if no sentences are given.
    """
    model = NgramModel(alpha=alpha)
    for sentence in sentences:
        tokens = list(sentence)
        model.sentence_count += 1
        model.unigrams.update(tokens)
        model.total_tokens += len(tokens)
        padded2 = [BOS] + tokens + [EOS]
        for i in range(len(padded2) - 1):
            model.bigrams[(padded2[i], padded2[i + 1])] += 1
        padded3 = [BOS, BOS] + tokens + [EOS]
        for i in range(len(padded3) - 2):
            model.trigrams[(padded3[i], padded3[i + 1], padded3[i + 2])] += 1
    if model.sentence_count == 0:
        raise ValueError("cannot train on an empty corpus")
    model._rebuild_contexts()
    return model
