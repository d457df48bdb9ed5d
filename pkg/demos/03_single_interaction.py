"""One scripted customer/engineer exchange at three cooperation levels.

Run:  python demos/03_single_interaction.py
"""

from reqdialog import Customer, KnowledgeBase, NounSet, run_interaction

CUSTOMER = {"akita", "coat", "tail", "japan"}
ENGINEER = {"akita", "japan", "breed", "temperament", "height"}


def noun_set(owner: str, lemmas: set[str]) -> NounSet:
    return NounSet(owner=owner, lemmas=set(lemmas), provenance={l: 1 for l in lemmas})


for factor in (0.0, 0.34, 1.0):
    kb = KnowledgeBase.from_lemmas(ENGINEER)
    customer = Customer(id="customer", nouns=noun_set("customer", CUSTOMER), cooperation_factor=factor)
    transcript = run_interaction(customer, kb, seed=7)

    print(f"cooperation factor {factor}")
    for message in transcript.messages:
        print(f"  {message.sender:>8s}  {message.kind.value:18s} {sorted(message.payload)}")
    print(f"  engineer weights afterwards: {dict(sorted(kb.weights.items()))}")
    print()

# At factor 0 the result is exactly the mutual nouns; at 1 it is the whole
# engineer set; in between it grows by a seeded sample of the extras, and the
# same seed always yields the same sample.
