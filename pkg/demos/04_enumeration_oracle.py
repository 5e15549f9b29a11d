"""Brute-force enumeration against knitting for sub over a ring of length 3."""

from artifact.ring_core import UniserialRing
from artifact.poset_repr import Poset
from artifact.catalog_cli import enumerate_indecomposables, run_preset

R = UniserialRing.parse("zmod:2:3")
objs = enumerate_indecomposables(Poset.one_point(), R, 8)
print(len(objs), "indecomposables:", " ".join(X.label() for X in objs))

# the preset knits the same category and checks its count against this oracle
Q, report = run_preset("one-point-n3")
print(report["checks"], report["summary"]["shape"])
