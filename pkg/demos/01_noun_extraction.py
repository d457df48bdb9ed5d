"""Walk one document through the extraction pipeline, step by step.

Run:  python demos/01_noun_extraction.py
"""

from reqdialog import build_noun_set, extract_nouns, lemmatize, tag_pos, tokenize

TEXT = "Akita dogs have thick double coats. The breed comes from the mountains of Japan."

print("document:")
print(f"  {TEXT}\n")

sentences = tokenize(TEXT)
print(f"tokenized into {len(sentences)} sentences:")
for sentence in sentences:
    print(f"  {sentence}")

tokens = tag_pos(sentences)
print("\ntagged:")
print("  " + " ".join(f"{t.surface}/{t.tag}" for t in tokens))

nouns = extract_nouns(tokens)
print(f"\nnoun surfaces: {nouns}")
print(f"lemmatized:    {[lemmatize(n) for n in nouns]}")

noun_set = build_noun_set("demo", [TEXT])
print("\nresulting noun set:")
for lemma in sorted(noun_set.lemmas):
    print(f"  {lemma:12s} x{noun_set.provenance[lemma]}")

# The same result can come from externally tagged text (one token per line,
# "surface<TAB>tag", blank line between sentences):
from reqdialog import parse_tagged, serialize_tagged  # noqa: E402

stream = serialize_tagged(tokens)
print("\nround-trip through the tagged-stream format preserves every token:",
      parse_tagged(stream) == tokens)
