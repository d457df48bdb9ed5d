"""The customer / virtual-requirements-engineer exchange.

One interaction is a fixed five-message script: the customer sends all their
nouns, the engineer answers with the mutual ones and then with their full
noun set, the customer builds the interaction result, and the engineer
acknowledges while folding the result into their weighted knowledge base.

The interaction result is ``mutual ∪ prefix`` where the prefix is drawn from
the engineer's additional nouns (engineer minus mutual, sorted, then permuted
by the seeded generator from :mod:`reqdialog.sampling`) and its length is
``floor(c * |additional| + 1/2)`` for cooperation factor ``c``.  The two ends
of the scale pin the construction: ``c = 0`` gives exactly the mutual nouns
and ``c = 1`` the whole engineer set.  Because a fixed seed fixes one
permutation, results for growing ``c`` are nested.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping

from .nlp import NounSet
from .sampling import sample_prefix

ENGINEER_ID = "engineer"


class MessageKind(Enum):
    CUSTOMER_NOUNS = "CustomerNouns"
    MUTUAL_NOUNS = "MutualNouns"
    ENGINEER_NOUNS = "EngineerNouns"
    INTERACTION_RESULT = "InteractionResult"
    ACK = "Ack"


_MESSAGE_ORDER = tuple(MessageKind)


@dataclass(frozen=True)
class ProtocolMessage:
    kind: MessageKind
    sender: str
    payload: frozenset[str]

    def to_json_dict(self) -> dict:
        return {"kind": self.kind.value, "sender": self.sender, "payload": sorted(self.payload)}


@dataclass(frozen=True)
class InteractionTranscript:
    customer_id: str
    cooperation_factor: float
    seed: int
    messages: tuple[ProtocolMessage, ...]
    result: frozenset[str]

    def __post_init__(self) -> None:
        kinds = tuple(m.kind for m in self.messages)
        if kinds != _MESSAGE_ORDER:
            raise ValueError(f"messages out of order: {[k.value for k in kinds]}")
        if self.result != self.messages[3].payload:
            raise ValueError("result must equal the InteractionResult payload")

    def to_json_dict(self) -> dict:
        return {
            "customer_id": self.customer_id,
            "cooperation_factor": self.cooperation_factor,
            "seed": self.seed,
            "messages": [m.to_json_dict() for m in self.messages],
            "result": sorted(self.result),
        }


@dataclass
class Customer:
    id: str
    nouns: NounSet
    cooperation_factor: float

    def __post_init__(self) -> None:
        _check_factor(self.cooperation_factor)


@dataclass(frozen=True)
class Reaction:
    lemma: str
    verdict: str  # KNOWN | SIMILAR | UNKNOWN
    nearest: str | None
    score: float

    def to_json_dict(self) -> dict:
        return {"lemma": self.lemma, "verdict": self.verdict, "nearest": self.nearest, "score": self.score}


class KnowledgeBase:
    """Weighted lemma multiset with a snapshot of its initial state.

    Appending an interaction result bumps each result lemma by one (new
    lemmas enter at weight one); :meth:`reset` restores the snapshot exactly.
    Weights order the engineer's proposals, so repeated confirmation makes a
    concept rise.
    """

    def __init__(self, weights: Mapping[str, int]):
        bad = [l for l, w in weights.items() if not (isinstance(w, int) and w >= 1)]
        if bad:
            raise ValueError(f"weights must be positive integers: {bad}")
        self.weights: dict[str, int] = dict(weights)
        self._initial: dict[str, int] = dict(weights)

    @classmethod
    def from_noun_set(cls, nouns: NounSet) -> "KnowledgeBase":
        return cls(nouns.provenance)

    @classmethod
    def from_lemmas(cls, lemmas: Iterable[str]) -> "KnowledgeBase":
        return cls({lemma: 1 for lemma in lemmas})

    @property
    def lemma_set(self) -> set[str]:
        return set(self.weights)

    @property
    def initial_snapshot(self) -> dict[str, int]:
        return dict(self._initial)

    def __contains__(self, lemma: str) -> bool:
        return lemma in self.weights

    def __len__(self) -> int:
        return len(self.weights)

    def append(self, lemmas: Iterable[str]) -> None:
        for lemma in lemmas:
            self.weights[lemma] = self.weights.get(lemma, 0) + 1

    def reset(self) -> None:
        self.weights = dict(self._initial)

    def copy(self) -> "KnowledgeBase":
        fresh = KnowledgeBase(self._initial)
        fresh.weights = dict(self.weights)
        return fresh


def mutual_nouns(customer: Iterable[str], engineer: Iterable[str]) -> set[str]:
    return set(customer) & set(engineer)


def compose_interaction_result(
    customer: Iterable[str],
    engineer: Iterable[str],
    cooperation_factor: float,
    seed: int,
) -> set[str]:
    """Mutual nouns plus a seeded sample of the engineer's additional nouns.

    The sample is the first ``floor(c * |additional| + 1/2)`` entries of one
    fixed permutation of the additional nouns, so results nest as the
    cooperation factor grows under the same seed.
    """
    _check_factor(cooperation_factor)
    customer_set, engineer_set = set(customer), set(engineer)
    mutual = customer_set & engineer_set
    additional = sorted(engineer_set - mutual)
    k = math.floor(cooperation_factor * len(additional) + 0.5)
    return mutual | set(sample_prefix(additional, k, seed))


def run_interaction(customer: Customer, kb: KnowledgeBase, seed: int) -> InteractionTranscript:
    """Play the five-message exchange and fold the result into ``kb``."""
    if len(kb) == 0:
        raise ValueError("the engineer's knowledge base is empty")
    customer_set = set(customer.nouns.lemmas)
    engineer_set = kb.lemma_set
    mutual = mutual_nouns(customer_set, engineer_set)
    result = compose_interaction_result(customer_set, engineer_set, customer.cooperation_factor, seed)
    messages = (
        ProtocolMessage(MessageKind.CUSTOMER_NOUNS, customer.id, frozenset(customer_set)),
        ProtocolMessage(MessageKind.MUTUAL_NOUNS, ENGINEER_ID, frozenset(mutual)),
        ProtocolMessage(MessageKind.ENGINEER_NOUNS, ENGINEER_ID, frozenset(engineer_set)),
        ProtocolMessage(MessageKind.INTERACTION_RESULT, customer.id, frozenset(result)),
        ProtocolMessage(MessageKind.ACK, ENGINEER_ID, frozenset(result)),
    )
    kb.append(result)
    return InteractionTranscript(
        customer_id=customer.id,
        cooperation_factor=customer.cooperation_factor,
        seed=seed,
        messages=messages,
        result=frozenset(result),
    )


def classify_reaction(lemma: str, kb: KnowledgeBase, threshold: float = 0.8) -> Reaction:
    """KNOWN on membership, SIMILAR on close spelling, UNKNOWN otherwise.

    Similarity between words is ``1 - editdistance / max(len)``; the nearest
    known lemma wins, ties broken lexicographically.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must lie strictly between 0 and 1, got {threshold}")
    if lemma in kb:
        return Reaction(lemma=lemma, verdict="KNOWN", nearest=lemma, score=1.0)
    best_lemma: str | None = None
    best_score = -1.0
    for candidate in sorted(kb.weights):
        score = _string_similarity(lemma, candidate)
        if score > best_score:
            best_lemma, best_score = candidate, score
    if best_lemma is not None and best_score >= threshold:
        return Reaction(lemma=lemma, verdict="SIMILAR", nearest=best_lemma, score=best_score)
    return Reaction(lemma=lemma, verdict="UNKNOWN", nearest=None, score=max(best_score, 0.0))


def propose_concepts(kb: KnowledgeBase, known: Iterable[str], limit: int) -> list[str]:
    """Knowledge-base lemmas the other side has not mentioned, best first."""
    if limit < 1:
        raise ValueError("limit must be a positive integer")
    known_set = set(known)
    candidates = [l for l in kb.weights if l not in known_set]
    candidates.sort(key=lambda l: (-kb.weights[l], l))
    return candidates[:limit]


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance (unit insert/delete/substitute costs)."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ch_a in enumerate(a, start=1):
        current = [i]
        for j, ch_b in enumerate(b, start=1):
            current.append(min(
                previous[j - 1] + (ch_a != ch_b),
                previous[j] + 1,
                current[j - 1] + 1,
            ))
        previous = current
    return previous[-1]


def _string_similarity(a: str, b: str) -> float:
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - edit_distance(a, b) / longest


def _check_factor(value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"cooperation factor must lie in [0, 1], got {value}")


def write_transcript(transcript: InteractionTranscript, path: str | Path) -> None:
    Path(path).write_text(json.dumps(transcript.to_json_dict(), indent=2, sort_keys=True) + "\n", "utf-8")
