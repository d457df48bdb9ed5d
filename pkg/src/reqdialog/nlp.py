"""Noun extraction from raw or pre-tagged English text.

The pipeline is deliberately small and rule-based so that a fixed input
always yields the same noun sets on every machine: a regex tokenizer with a
conservative sentence splitter, a lexicon + suffix part-of-speech tagger
producing Penn Treebank tags, and a plural lemmatizer backed by an irregular
noun table.  Text that was tagged by an external tool (one ``surface<TAB>tag``
per line, blank line between sentences, ``#`` comments) can be ingested
through :func:`parse_tagged` instead of the built-in tagger, which is the
path to use when higher-quality tags are available.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

NOUN_TAGS = frozenset({"NN", "NNS", "NNP", "NNPS"})

_TOKEN_RE = re.compile(
    r"""
    \d+(?:[.,]\d+)*                      # numbers, incl. 3.14 and 10,000
    | [A-Za-z0-9]+(?:['-][A-Za-z0-9]+)*  # words, hyphens/apostrophes internal
    | \S                                 # any other visible char, one at a time
    """,
    re.VERBOSE,
)
_SENTENCE_BREAK_RE = re.compile(r"\s+[A-Z]")
_NUMBER_RE = re.compile(r"\d+(?:[.,]\d+)*")

_PUNCT_TAGS = {
    ".": ".",
    "!": ".",
    "?": ".",
    ",": ",",
    ":": ":",
    ";": ":",
    "-": ":",
    "--": ":",
    "(": "-LRB-",
    ")": "-RRB-",
    '"': "''",
    "'": "''",
    "`": "''",
}

_NOUN_SUFFIXES = ("tion", "sion", "ment", "ness", "ship", "hood", "ism", "ance", "ence", "ity", "dom")
_ADJ_SUFFIXES = ("ous", "ful", "ive", "less")


class TaggedStreamError(ValueError):
    """A pre-tagged input line could not be parsed."""

    def __init__(self, line_number: int, reason: str):
        super().__init__(f"line {line_number}: {reason}")
        self.line_number = line_number
        self.reason = reason


@dataclass(frozen=True)
class Token:
    surface: str
    tag: str
    sentence_index: int
    token_index: int


@dataclass
class NounSet:
    """Lemmatized nouns held by one agent, with occurrence counts."""

    owner: str
    lemmas: set[str] = field(default_factory=set)
    provenance: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if set(self.provenance) != self.lemmas:
            raise ValueError("provenance keys must equal the lemma set")
        bad = [l for l, n in self.provenance.items() if not (isinstance(n, int) and n >= 1)]
        if bad:
            raise ValueError(f"occurrence counts must be positive integers: {bad}")

    def to_json_dict(self) -> dict:
        return {
            "owner": self.owner,
            "lemmas": sorted(self.lemmas),
            "provenance": {l: self.provenance[l] for l in sorted(self.provenance)},
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "NounSet":
        provenance = {str(k): int(v) for k, v in data["provenance"].items()}
        lemmas = set(data["lemmas"])
        return cls(owner=str(data["owner"]), lemmas=lemmas, provenance=provenance)


def tokenize(document: str) -> list[list[str]]:
    """Split text into sentences of surface tokens.

    Tokens are maximal alphanumeric runs (hyphens and apostrophes join, so
    ``short-haired`` stays whole); every other visible character comes out as
    its own token.  A possessive ``'s`` is split off its host word.  Sentences
    end at ``. ! ?`` followed by whitespace and an uppercase letter, or at the
    end of the text.
    """
    sentences: list[list[str]] = []
    current: list[str] = []
    for match in _TOKEN_RE.finditer(document):
        for part in _split_possessive(match.group()):
            current.append(part)
        if match.group() in (".", "!", "?"):
            tail = document[match.end():]
            if not tail.strip() or _SENTENCE_BREAK_RE.match(tail):
                sentences.append(current)
                current = []
    if current:
        sentences.append(current)
    return sentences


def _split_possessive(surface: str) -> list[str]:
    lower = surface.lower()
    if len(surface) > 2 and lower.endswith("'s"):
        return [surface[:-2], surface[-2:]]
    return [surface]


def load_lexicon(path: str | Path | None = None) -> dict[str, str]:
    """Read a tagger lexicon (``surface<TAB>tag`` lines, ``#`` comments)."""
    if path is None:
        text = resources.files("reqdialog.data").joinpath("tagger_lexicon.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    lexicon: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise TaggedStreamError(lineno, f"expected 'surface<TAB>tag', got {raw!r}")
        lexicon[parts[0]] = parts[1]
    return lexicon


@lru_cache(maxsize=1)
def default_lexicon() -> dict[str, str]:
    return load_lexicon(None)


@lru_cache(maxsize=1)
def irregular_nouns() -> dict[str, str]:
    """Plural -> singular table, including fixed points for words the suffix
    rules would otherwise mangle (corpus, series, analysis, ...)."""
    text = resources.files("reqdialog.data").joinpath("irregular_nouns.txt").read_text("utf-8")
    table: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        plural, singular = line.split()
        table[plural] = singular
    return table


def tag_pos(
    sentences: Sequence[Sequence[str]],
    lexicon: Mapping[str, str] | None = None,
) -> list[Token]:
    """Assign one Penn Treebank tag per token.

    Resolution order: punctuation shape, numbers, exact lexicon lookup
    (surface first, then lowercased), plural-of-lexicon-entry, derivational
    suffixes, capitalization off sentence start, and finally NN.  The result
    depends only on the token stream and the lexicon.
    """
    lex = dict(lexicon) if lexicon is not None else default_lexicon()
    folded = {}
    for key, tag in lex.items():
        folded.setdefault(key.lower(), tag)

    def lex_tag(word: str) -> str | None:
        return lex.get(word) or folded.get(word.lower())

    tokens: list[Token] = []
    for s_index, sentence in enumerate(sentences):
        for t_index, surface in enumerate(sentence):
            tag = _tag_one(surface, t_index == 0, lex_tag)
            tokens.append(Token(surface, tag, s_index, t_index))
    return tokens


def _tag_one(surface: str, sentence_initial: bool, lex_tag) -> str:
    if surface.lower() == "'s":
        return "POS"
    if not any(ch.isalnum() for ch in surface):
        return _PUNCT_TAGS.get(surface, "SYM")
    if _NUMBER_RE.fullmatch(surface):
        return "CD"

    direct = lex_tag(surface)
    if direct is not None:
        return direct

    lower = surface.lower()
    for singular in _singular_candidates(lower):
        base = lex_tag(singular)
        if base == "NN":
            return "NNS"
        if base == "NNP":
            return "NNPS"
        if base in ("VB", "VBP"):
            return "VBZ"

    for suffix in _NOUN_SUFFIXES:
        if lower.endswith(suffix) and len(lower) > len(suffix) + 1:
            return "NN"
    if lower.endswith("ing") and len(lower) > 5:
        return "VBG"
    if lower.endswith("ed") and len(lower) > 4:
        return "VBD"
    if lower.endswith("ly") and len(lower) > 4:
        return "RB"
    for suffix in _ADJ_SUFFIXES:
        if lower.endswith(suffix) and len(lower) > len(suffix) + 1:
            return "JJ"

    if surface[0].isupper() and not sentence_initial:
        return "NNP"
    return "NN"


def _singular_candidates(lower: str) -> list[str]:
    irregular = irregular_nouns().get(lower)
    candidates = [irregular] if irregular and irregular != lower else []
    if lower.endswith("ies") and len(lower) >= 5:
        candidates.append(lower[:-3] + "y")
    if lower.endswith("ves") and len(lower) >= 5:
        candidates.append(lower[:-3] + "f")
    if lower.endswith("es") and len(lower) >= 4:
        candidates.append(lower[:-2])
    if lower.endswith("s") and not lower.endswith("ss") and len(lower) >= 4:
        candidates.append(lower[:-1])
    return candidates


def parse_tagged(stream: str) -> list[Token]:
    """Parse pre-tagged text into tokens.

    Raises :class:`TaggedStreamError` with the offending line number when a
    content line has no tab or an empty surface/tag field.
    """
    tokens: list[Token] = []
    sentence_index = 0
    token_index = 0
    for lineno, raw in enumerate(stream.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if token_index > 0:
                sentence_index += 1
                token_index = 0
            continue
        parts = raw.strip().split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise TaggedStreamError(lineno, f"expected 'surface<TAB>tag', got {raw!r}")
        tokens.append(Token(parts[0].strip(), parts[1].strip(), sentence_index, token_index))
        token_index += 1
    return tokens


def serialize_tagged(tokens: Sequence[Token]) -> str:
    """Render tokens in the normalized tagged-input format.

    ``parse_tagged(serialize_tagged(tokens))`` reproduces ``tokens`` exactly,
    and serializing again reproduces the same bytes.
    """
    lines: list[str] = []
    previous_sentence: int | None = None
    for token in tokens:
        if previous_sentence is not None and token.sentence_index != previous_sentence:
            lines.append("")
        lines.append(f"{token.surface}\t{token.tag}")
        previous_sentence = token.sentence_index
    return "\n".join(lines) + "\n" if lines else ""


def extract_nouns(tokens: Sequence[Token]) -> list[str]:
    """Surfaces of the noun-tagged tokens, in document order, duplicates kept."""
    return [t.surface for t in tokens if t.tag in NOUN_TAGS]


def lemmatize(word: str) -> str:
    """Normalize a noun surface to its lowercase singular lemma.

    Lowercases, consults the irregular table, then strips plural suffixes:
    ``-ies -> -y``, ``-ves -> -f``, ``-es`` after a sibilant stem, bare ``-s``
    for words longer than three characters that do not end in ``-ss``.
    Applying it twice never changes the result further.
    """
    lower = word.strip().lower()
    if not lower:
        raise ValueError("cannot lemmatize an empty word")
    irregular = irregular_nouns().get(lower)
    if irregular is not None:
        return irregular
    if lower.endswith("ies") and len(lower) >= 5:
        return lower[:-3] + "y"
    if lower.endswith("ves") and len(lower) >= 5:
        return lower[:-3] + "f"
    if lower.endswith("es") and len(lower) >= 4:
        stem = lower[:-2]
        if stem.endswith(("s", "x", "z", "ch", "sh")):
            return stem
    if lower.endswith("s") and not lower.endswith("ss") and len(lower) > 3:
        return lower[:-1]
    return lower


def build_noun_set(
    owner: str,
    documents: Sequence[str],
    *,
    pretagged: bool = False,
    lexicon: Mapping[str, str] | None = None,
) -> NounSet:
    """Extract and lemmatize all nouns across ``documents`` for one agent.

    Documents are raw text by default; with ``pretagged=True`` each document
    is a tagged stream in the :func:`parse_tagged` format.  Occurrence counts
    are summed across documents, so document order never matters.
    """
    if not documents:
        raise ValueError("at least one document is required")
    counts: Counter[str] = Counter()
    for document in documents:
        if pretagged:
            tokens = parse_tagged(document)
        else:
            tokens = tag_pos(tokenize(document), lexicon)
        for surface in extract_nouns(tokens):
            counts[lemmatize(surface)] += 1
    return NounSet(owner=owner, lemmas=set(counts), provenance=dict(counts))


def noun_lemmas(text: str, lexicon: Mapping[str, str] | None = None) -> list[str]:
    """Lemmas of the nouns in ``text``, in order of appearance, deduplicated."""
    seen: dict[str, None] = {}
    for surface in extract_nouns(tag_pos(tokenize(text), lexicon)):
        seen.setdefault(lemmatize(surface), None)
    return list(seen)


def write_noun_set(noun_set: NounSet, path: str | Path) -> None:
    Path(path).write_text(json.dumps(noun_set.to_json_dict(), indent=2, sort_keys=True) + "\n", "utf-8")


def read_noun_set(path: str | Path) -> NounSet:
    return NounSet.from_json_dict(json.loads(Path(path).read_text("utf-8")))
