"""Shared fixtures: ground-truth sentence pairs and a synthetic corpus.

GOLD_PAIRS are real undiacritized/diacritized sentence pairs used as
ground truth throughout the suite. The synthetic fixture corpus is built
from a hand-checked phrase pool so that every line validates against the
inventory and ambiguous word families (gba/gbà/gbá, the five aro forms,
kun/kùn/kún, ti/tí ...) occur in distinguishable contexts.
"""

from __future__ import annotations

import random

import pytest

from yodi import normalize, prepare_parallel, build_lexicon, split_corpus, train

GOLD_PAIRS = [
    (
        "mo ro o wipe awon obirin ti o ronu lati se ise ti okunrin maa n se gbodo gberaga .",
        "mo rò ó wípé àwọn obìrin tí ó ronú láti ṣe iṣẹ́ tí ọkùnrin máa ń ṣe gbọdọ̀ gbéraga .",
    ),
    (
        "bi o tile je pe egbeegberun ti pada sile .",
        "bí ó tilẹ̀ jẹ́ pé ẹgbẹẹgbẹ̀rún ti padà sílé .",
    ),
    (
        "mo awon ondije si ipo aare naijiria odun 2019",
        "mọ àwọn òǹdíje sí ipò ààrẹ nàìjíríà ọdún 2019",
    ),
    (
        "iriri akobuloogu zone9 ilu ethiopia je apeere .",
        "ìrírí akọbúlọ́ọ̀gù zone9 ìlú ethiopia jẹ́ àpẹẹrẹ .",
    ),
    (
        "alaga akoko ilu-ti-ko-fi-oba-je ti china mao zedong ti yo awon eniyan ninu isoro .",
        "alága àkọ́kọ́ ìlú-tí-kò-fi-ọba-jẹ ti china mao zedong ti yọ àwọn ènìyàn nínú ìṣòro .",
    ),
]
GOLD_PAIRS = [(src, normalize(ref)) for src, ref in GOLD_PAIRS]

PHRASES = [
    "mo fẹ́ gba owó",
    "wọ́n gbà ọmọ náà",
    "ó gbá bọ́ọ̀lù ńlá",
    "mo ti dé ilé",
    "ìwé tí mo kà dára",
    "a rí àwọn ènìyàn púpọ̀",
    "ó ń lọ sí ọjà",
    "mo fi aró kùn aṣọ",
    "arọ kò lè rìn",
    "àrò ti jóná",
    "omi wà nínú àrọ",
    "wọ́n jẹ àrọ̀ ní alẹ́",
    "ó kún fún omi",
    "bàbá kun igi",
    "mo ra ìlù tuntun",
    "ìlú wa tóbi gan",
    "ó ṣe iṣẹ́ náà",
    "wọn yóò wá lọ́la",
    "ẹ jọ̀wọ́ dúró díẹ̀",
    "ó sọ èdè yorùbá",
    "mo mọ̀ pé ó dára",
    "fi ilu ṣí i",
    "ó padà sílé",
    "ẹgbẹẹgbẹ̀rún ènìyàn dé",
    "obìrin náà gbọ́n",
    "ọkùnrin yìí ga",
    "mo gbọ́ orin dáradára",
    "wọ́n ti lọ sí ìlú",
    "ṣùgbọ́n kò sí ẹni",
    "ilé ìwé wà níbẹ̀",
]
PHRASES = [normalize(p) for p in PHRASES]


def fixture_lines(n: int = 600, seed: int = 7) -> list[str]:
    """Deterministic synthetic corpus: 1-3 phrases per line plus a full stop."""
    rng = random.Random(seed)
    return [
        " ".join(rng.choice(PHRASES) for _ in range(rng.choice([1, 2, 3]))) + " ."
        for _ in range(n)
    ]


@pytest.fixture(scope="session")
def gold_pairs():
    return GOLD_PAIRS


@pytest.fixture(scope="session")
def fixture_corpus():
    return prepare_parallel(fixture_lines(), source_id="fixture")


@pytest.fixture(scope="session")
def fixture_split(fixture_corpus):
    return split_corpus(fixture_corpus, (0.8, 0.1, 0.1), seed=13)


@pytest.fixture(scope="session")
def fixture_model_lexicon(fixture_split):
    train_part, _, _ = fixture_split
    lexicon = build_lexicon(train_part)
    model = train(p.target for p in train_part)
    return model, lexicon


# ---------------------------------------------------------------------------
# One PASS/FAIL line per acceptance criterion in the terminal summary.

_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for nodeid in sorted(_acceptance):
        status = "PASS" if _acceptance[nodeid] == "passed" else "FAIL"
        terminalreporter.write_line(f"  {status}  {nodeid.split('::')[-1]}")
