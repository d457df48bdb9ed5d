"""Shared vocabulary, one-hot encoding, and cosine similarity.

All agents' lemma sets are merged into one lexicographically sorted
vocabulary; a lemma set then becomes a binary vector over that ordering.
For binary vectors the cosine reduces to ``|A n B| / sqrt(|A| * |B|)``, so
whenever both operands remember the sets they encode, the similarity is
computed from exact integer cardinalities instead of accumulated float
arithmetic.  Two edge conventions close the domain: two empty sets compare
as 1.0, an empty set against a non-empty one as 0.0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .nlp import NounSet


class EncodingError(ValueError):
    """A lemma cannot be encoded because the vocabulary does not contain it."""

    def __init__(self, lemma: str):
        super().__init__(f"lemma not in vocabulary: {lemma!r}")
        self.lemma = lemma


class VocabularyMismatchError(ValueError):
    """Two vectors built over different vocabularies were compared."""


@dataclass(frozen=True)
class Vocabulary:
    lemmas: tuple[str, ...]
    index: dict[str, int] = field(compare=False)

    def __len__(self) -> int:
        return len(self.lemmas)

    def __contains__(self, lemma: str) -> bool:
        return lemma in self.index

    @classmethod
    def from_lemmas(cls, lemmas: Iterable[str]) -> "Vocabulary":
        ordered = tuple(sorted(set(lemmas)))
        return cls(lemmas=ordered, index={l: i for i, l in enumerate(ordered)})

    def to_json_list(self) -> list[str]:
        return list(self.lemmas)


@dataclass(frozen=True, eq=False)
class OneHotVector:
    bits: np.ndarray
    vocabulary: Vocabulary
    support: frozenset[str] | None = None

    def __post_init__(self) -> None:
        if len(self.bits) != len(self.vocabulary):
            raise VocabularyMismatchError(
                f"vector length {len(self.bits)} does not match vocabulary size {len(self.vocabulary)}"
            )


def build_vocabulary(sets: Sequence[NounSet | Iterable[str]]) -> Vocabulary:
    """Union of all input lemma sets, sorted lexicographically."""
    if not sets:
        raise ValueError("at least one noun set is required")
    union: set[str] = set()
    for entry in sets:
        union.update(_as_lemma_set(entry))
    return Vocabulary.from_lemmas(union)


def one_hot(lemmas: NounSet | Iterable[str], vocabulary: Vocabulary) -> OneHotVector:
    """Binary vector with bit ``i`` set iff ``vocabulary.lemmas[i]`` is held."""
    lemma_set = _as_lemma_set(lemmas)
    bits = np.zeros(len(vocabulary), dtype=np.uint8)
    for lemma in lemma_set:
        position = vocabulary.index.get(lemma)
        if position is None:
            raise EncodingError(lemma)
        bits[position] = 1
    return OneHotVector(bits=bits, vocabulary=vocabulary, support=frozenset(lemma_set))


def cosine_similarity(u: OneHotVector, v: OneHotVector) -> float:
    """Cosine of two one-hot vectors over the same vocabulary, in [0, 1]."""
    if u.vocabulary != v.vocabulary:
        raise VocabularyMismatchError("vectors were encoded over different vocabularies")
    if u.support is not None and v.support is not None:
        return cosine_of_sets(u.support, v.support)
    return _cosine_of_bits(u.bits, v.bits)


def cosine_of_sets(a: Iterable[str], b: Iterable[str]) -> float:
    """Exact binary cosine from set cardinalities."""
    set_a, set_b = set(a), set(b)
    if not set_a and not set_b:
        return 1.0
    if not set_a or not set_b:
        return 0.0
    return len(set_a & set_b) / math.sqrt(len(set_a) * len(set_b))


def _cosine_of_bits(u: np.ndarray, v: np.ndarray) -> float:
    norm_u = float(np.linalg.norm(u))
    norm_v = float(np.linalg.norm(v))
    if norm_u == 0.0 and norm_v == 0.0:
        return 1.0
    if norm_u == 0.0 or norm_v == 0.0:
        return 0.0
    return float(np.dot(u.astype(np.float64), v.astype(np.float64)) / (norm_u * norm_v))


def _as_lemma_set(lemmas: NounSet | Iterable[str]) -> set[str]:
    if isinstance(lemmas, NounSet):
        return set(lemmas.lemmas)
    return set(lemmas)


def write_vocabulary(vocabulary: Vocabulary, path: str | Path) -> None:
    Path(path).write_text(json.dumps(vocabulary.to_json_list(), indent=2) + "\n", "utf-8")


def read_vocabulary(path: str | Path) -> Vocabulary:
    return Vocabulary.from_lemmas(json.loads(Path(path).read_text("utf-8")))
