"""Unicode-correct parsing, stripping and validation of Yorùbá text.

Yorùbá orthography combines a base Latin letter with up to two marks: a
tonal diacritic (grave = low, acute = high, plus caron and macron in a few
loan/contraction contexts) and an underdot on e, o and s. Several of the
resulting clusters (ẹ̀, ọ́, n̄ ...) have no precomposed Unicode codepoint,
so every function here works on a canonical form: NFC-normalized text,
which fixes the mark order (underdot before tone mark in the decomposed
view) and makes equality, hashing and byte-exact round trips well defined.

The variant inventory lives in ``_PLAIN_TONES`` / ``_DOTTED_TONES`` and is
exposed through :func:`expansions` and :func:`inventory_tsv`.
"""

from __future__ import annotations

import enum
import logging
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Union

logger = logging.getLogger(__name__)

COMBINING_GRAVE = "̀"
COMBINING_ACUTE = "́"
COMBINING_CARON = "̌"
COMBINING_MACRON = "̄"
COMBINING_DOT_BELOW = "̣"


class Tone(enum.Enum):
    """Tonal diacritic carried by a grapheme (NONE = unmarked mid tone)."""

    NONE = ""
    LOW = COMBINING_GRAVE
    HIGH = COMBINING_ACUTE
    RISING = COMBINING_CARON
    MACRON = COMBINING_MACRON


_TONE_BY_MARK = {t.value: t for t in Tone if t is not Tone.NONE}

# Tones attested per base letter, bare form excluded (see inventory docs):
# plain vowels and the syllabic nasal n...
_PLAIN_TONES: dict[str, tuple[Tone, ...]] = {
    "a": (Tone.LOW, Tone.HIGH, Tone.RISING),
    "e": (Tone.LOW, Tone.HIGH),
    "i": (Tone.LOW, Tone.HIGH),
    "o": (Tone.LOW, Tone.HIGH, Tone.RISING),
    "u": (Tone.LOW, Tone.HIGH, Tone.RISING),
    "n": (Tone.LOW, Tone.HIGH, Tone.MACRON),
}
# ... and the underdotted letters (ṣ never carries a tone mark).
_DOTTED_TONES: dict[str, tuple[Tone, ...]] = {
    "e": (Tone.NONE, Tone.LOW, Tone.HIGH),
    "o": (Tone.NONE, Tone.LOW, Tone.HIGH),
    "s": (Tone.NONE,),
}

_ASCII_LOWER = "abcdefghijklmnopqrstuvwxyz"


class OrphanMarkError(ValueError):
    """A combining mark appeared with no preceding base letter."""

    def __init__(self, position: int, mark: str):
        self.position = position
        self.mark = mark
        super().__init__(
            f"combining mark {mark!r} at position {position} has no preceding base letter"
        )


@dataclass(frozen=True)
class Grapheme:
    """One Yorùbá character cluster: base letter, tone mark, underdot, case.

    Instances are plain carriers: off-inventory combinations (for example an
    underdot on ``a``) are representable so that segmentation never loses
    information; :attr:`is_valid` tells whether the cluster is part of the
    orthography.
    """

    base: str
    tone: Tone = Tone.NONE
    underdot: bool = False
    uppercase: bool = False

    def compose(self) -> str:
        """Return the canonical (NFC) text of this cluster."""
        ch = self.base.upper() if self.uppercase else self.base
        marks = (COMBINING_DOT_BELOW if self.underdot else "") + self.tone.value
        return unicodedata.normalize("NFC", ch + marks)

    @property
    def is_valid(self) -> bool:
        """True iff the (base, tone, underdot) combination is in the inventory."""
        return (self.tone, self.underdot) in _VALID_COMBOS.get(self.base, ())


_VALID_COMBOS: dict[str, frozenset[tuple[Tone, bool]]] = {
    base: frozenset(
        [(Tone.NONE, False)]
        + [(t, False) for t in _PLAIN_TONES.get(base, ())]
        + [(t, True) for t in _DOTTED_TONES.get(base, ())]
    )
    for base in _ASCII_LOWER
}


@dataclass(frozen=True)
class Violation:
    """A cluster that validation rejected, with its offset in the normalized text."""

    position: int
    cluster: str
    reason: str


Segment = Union[Grapheme, str]


def normalize(text: str | bytes) -> str:
    """Normalize text to the canonical composed (NFC) form.

    Accepts raw bytes as well; malformed UTF-8 raises UnicodeDecodeError,
    whose ``start`` attribute identifies the offending byte offset.
    Idempotent, and insensitive to the input ordering of combining marks
    (canonical reordering puts the underdot before the tone mark).
    """
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("utf-8")
    return unicodedata.normalize("NFC", text)


def _is_mark(ch: str) -> bool:
    return unicodedata.category(ch).startswith("M")


def _cluster_spans(text: str) -> list[tuple[int, str]]:
    """Split NFC text into (offset, cluster) spans.

    A cluster is one non-combining character plus any combining marks that
    follow it; combining marks at the start of the text form a bare-mark
    cluster of their own (an orphan).
    """
    spans: list[tuple[int, str]] = []
    for i, ch in enumerate(text):
        if spans and _is_mark(ch):
            pos, cluster = spans[-1]
            spans[-1] = (pos, cluster + ch)
        else:
            spans.append((i, ch))
    return spans


def _parse_cluster(cluster: str) -> Grapheme | None:
    """Parse one cluster into a Grapheme, or None if not representable.

    Representable means: ASCII base letter, at most one underdot and at most
    one tone mark from the Yorùbá mark set, and nothing else. Validity
    against the inventory is a separate question (``Grapheme.is_valid``).
    """
    decomposed = unicodedata.normalize("NFD", cluster)
    base, marks = decomposed[0], decomposed[1:]
    lower = base.lower()
    if lower not in _VALID_COMBOS:  # non-ASCII letter or not a letter at all
        return None
    tone = Tone.NONE
    underdot = False
    for mark in marks:
        if mark == COMBINING_DOT_BELOW and not underdot:
            underdot = True
        elif mark in _TONE_BY_MARK and tone is Tone.NONE:
            tone = _TONE_BY_MARK[mark]
        else:
            return None
    return Grapheme(lower, tone, underdot, uppercase=base.isupper())


def segment(text: str) -> list[Segment]:
    """Split text into Graphemes and passthrough cluster strings.

    Letters with their combining marks become :class:`Grapheme` items;
    digits, punctuation, whitespace and foreign clusters stay as raw
    strings. ``compose(segment(t)) == t`` for normalized ``t``.

    Raises OrphanMarkError for a combining mark with no preceding base
    letter (e.g. at the start of the text or after a digit).
    """
    items: list[Segment] = []
    for pos, cluster in _cluster_spans(normalize(text)):
        first = cluster[0]
        if _is_mark(first):
            raise OrphanMarkError(pos, first)
        g = _parse_cluster(cluster)
        if g is not None:
            items.append(g)
        else:
            if not first.isalpha() and len(cluster) > 1:
                raise OrphanMarkError(pos + 1, cluster[1])
            items.append(cluster)
    return items


def compose(items: Iterable[Segment]) -> str:
    """Concatenate segments back into canonical text (inverse of segment)."""
    return "".join(item.compose() if isinstance(item, Grapheme) else item for item in items)


def strip_diacritics(text: str) -> str:
    """Replace every grapheme by its bare base letter, preserving case.

    Passthrough symbols are unchanged; all combining marks are removed,
    including marks on foreign letters (ş → s). Orphan marks (no preceding
    base letter) are dropped with a logged warning rather than raised, so
    that raw OCR output can still be processed. Idempotent.
    """
    decomposed = unicodedata.normalize("NFD", normalize(text))
    out: list[str] = []
    prev_is_letter = False
    for i, ch in enumerate(decomposed):
        if _is_mark(ch):
            if not prev_is_letter:
                logger.warning("dropping orphan combining mark %r at offset %d", ch, i)
            continue
        out.append(ch)
        prev_is_letter = ch.isalpha()
    return unicodedata.normalize("NFC", "".join(out))


def expansions(base: str) -> set[str]:
    """Return every valid cluster for a base letter, the bare form included.

    Letters outside the diacritic-bearing set map to a singleton {base}.
    Raises ValueError for anything but a single lowercase ASCII letter.
    """
    if len(base) != 1 or base not in _VALID_COMBOS:
        raise ValueError(f"expected a lowercase letter a-z, got {base!r}")
    return {
        Grapheme(base, tone, underdot).compose()
        for tone, underdot in _VALID_COMBOS[base]
    }


def valid_graphemes(base: str) -> tuple[Grapheme, ...]:
    """All inventory graphemes for a base letter, in a stable documented order."""
    if len(base) != 1 or base not in _VALID_COMBOS:
        raise ValueError(f"expected a lowercase letter a-z, got {base!r}")
    ordered = [Grapheme(base)]
    ordered += [Grapheme(base, t) for t in _PLAIN_TONES.get(base, ())]
    ordered += [Grapheme(base, t, True) for t in _DOTTED_TONES.get(base, ())]
    return tuple(ordered)


def validate(text: str) -> list[Violation]:
    """Check every cluster against the inventory.

    Returns an empty list iff all clusters are valid graphemes or allowed
    passthrough symbols (digits, punctuation, whitespace, plain symbols).
    Never raises: orphan marks come back as violations too.
    """
    violations: list[Violation] = []
    for pos, cluster in _cluster_spans(normalize(text)):
        first = cluster[0]
        if _is_mark(first):
            violations.append(Violation(pos, cluster, "orphan combining mark"))
            continue
        g = _parse_cluster(cluster)
        if g is not None:
            if not g.is_valid:
                violations.append(Violation(pos, cluster, "invalid diacritic combination"))
            continue
        if first.isalpha():
            violations.append(Violation(pos, cluster, "foreign cluster"))
        elif len(cluster) > 1:
            violations.append(Violation(pos, cluster, "combining mark on non-letter"))
        elif first.isspace() or unicodedata.category(first)[0] in "NPZS":
            continue
        else:
            violations.append(Violation(pos, cluster, "unsupported character"))
    return violations


def inventory_tsv() -> str:
    """Render the variant inventory as TSV (base, variant, tone, underdot)."""
    lines = ["base\tvariant\ttone\tunderdot"]
    for base in _ASCII_LOWER:
        for g in valid_graphemes(base):
            lines.append(
                f"{base}\t{g.compose()}\t{g.tone.name.lower()}\t{int(g.underdot)}"
            )
    return "\n".join(lines) + "\n"
