"""
From retrieval counts to a probability distribution
===================================================

Boolean retrieval counts a document with university and industry addresses
in U0, I0 and UI0.  Before computing entropies, the overlaps are removed so
every document sits in exactly one Venn region.
"""

# %%
from triplehelix import InclusiveCounts, indicator_set, to_exclusive, to_inclusive, validate
from triplehelix.measures import UniversePolicy, cells_to_joint3
from triplehelix.overlap import count_documents

# %%
# 18 synthetic documents with known sector labels
docs = ["U"] * 5 + ["I"] * 3 + ["G"] * 2 + ["UI"] * 4 + ["UG"] + ["IG"] * 2 + ["UIG"]
counts = count_documents(docs)
print(counts)

# %%
cells = to_exclusive(counts)
print(cells, "union =", cells.union)
assert to_inclusive(cells) == counts

# %%
# Joint distribution over the union of the three sectors ...
print(cells_to_joint3(cells).round(4))
# ... or over a larger universe that also holds unmarked documents
print(cells_to_joint3(cells, UniversePolicy.with_none(30)).round(4))

# %%
ind = indicator_set(cells)
for name, value in ind.as_dict("mbit").items():
    print(f"{name:5s} {value:9.3f} mbit")

# %%
# Counts that cannot come from one set of documents are reported, not clamped
print(validate(InclusiveCounts(u0=2, i0=2, g0=2, ui0=5, ug0=0, ig0=0, uig0=0)))
