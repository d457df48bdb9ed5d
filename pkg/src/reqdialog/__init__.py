"""Dialogue-based requirements analysis toolkit.

Noun extraction from raw or pre-tagged text, a customer / virtual-engineer
interaction protocol with a cooperation factor, a seeded experiment harness
with hypothesis checks, and an HTTP session service for interactive use.
"""

from .concepts import (
    EncodingError,
    OneHotVector,
    Vocabulary,
    VocabularyMismatchError,
    build_vocabulary,
    cosine_of_sets,
    cosine_similarity,
    one_hot,
)
from .nlp import (
    NounSet,
    TaggedStreamError,
    Token,
    build_noun_set,
    extract_nouns,
    lemmatize,
    parse_tagged,
    serialize_tagged,
    tag_pos,
    tokenize,
)
from .protocol import (
    Customer,
    InteractionTranscript,
    KnowledgeBase,
    MessageKind,
    ProtocolMessage,
    Reaction,
    classify_reaction,
    compose_interaction_result,
    mutual_nouns,
    propose_concepts,
    run_interaction,
)

__version__ = "0.1.0"

__all__ = [
    "Customer",
    "EncodingError",
    "InteractionTranscript",
    "KnowledgeBase",
    "MessageKind",
    "NounSet",
    "OneHotVector",
    "ProtocolMessage",
    "Reaction",
    "TaggedStreamError",
    "Token",
    "Vocabulary",
    "VocabularyMismatchError",
    "build_noun_set",
    "build_vocabulary",
    "classify_reaction",
    "compose_interaction_result",
    "cosine_of_sets",
    "cosine_similarity",
    "extract_nouns",
    "lemmatize",
    "mutual_nouns",
    "one_hot",
    "parse_tagged",
    "propose_concepts",
    "run_interaction",
    "serialize_tagged",
    "tag_pos",
    "tokenize",
]
