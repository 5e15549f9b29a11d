"""Knit the AR quiver of S_3 over a ring of length 6 from a slice."""

from artifact.catalog_cli import PRESETS, summarize
from artifact.knitting import knit, compare_quivers

sc = PRESETS["s3-n6"]
Q = knit(sc.slice(), sc.category())
info = summarize(Q)
print(info["vertices"], "vertices, stable part", info["shape"])
print("non-stable orbit lengths", info["nonstable_lengths"])
print("vertices sharing their type:")
for label in info["exceptions"]:
    print("  ", label)

# the same slice over F_3[x]/x^6 gives an isomorphic quiver
Q3 = knit(sc.slice("poly:3:6"), sc.category("poly:3:6"))
print("type-preserving isomorphism:", compare_quivers(Q, Q3) is not None)

# DOT export for graphviz
print(Q.to_dot().splitlines()[:4])
