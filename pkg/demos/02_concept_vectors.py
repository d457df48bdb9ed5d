"""Vocabulary building, one-hot encoding and cosine similarity.

Run:  python demos/02_concept_vectors.py
"""

from reqdialog import build_vocabulary, cosine_similarity, one_hot

customer = {"akita", "coat", "tail", "japan"}
engineer = {"akita", "japan", "breed", "temperament", "height"}

vocabulary = build_vocabulary([customer, engineer])
print(f"merged vocabulary ({len(vocabulary)} lemmas): {list(vocabulary.lemmas)}\n")

u = one_hot(customer, vocabulary)
v = one_hot(engineer, vocabulary)
print(f"customer bits: {u.bits.tolist()}")
print(f"engineer bits: {v.bits.tolist()}")

print(f"\ncosine(customer, engineer) = {cosine_similarity(u, v):.4f}")
print(f"cosine(customer, customer) = {cosine_similarity(u, u):.4f}")

# For binary vectors the cosine is |A n B| / sqrt(|A| |B|); with two shared
# concepts out of 4 and 5 this is 2 / sqrt(20):
import math  # noqa: E402

print(f"by hand:                    {2 / math.sqrt(len(customer) * len(engineer)):.4f}")
