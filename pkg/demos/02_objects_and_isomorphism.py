"""Two objects with equal type that are not isomorphic."""

from artifact.ring_core import UniserialRing
from artifact.module_core import FinModule
from artifact.poset_repr import one_point
from artifact.decomp import is_indecomposable, are_isomorphic, decompose, NOT_ISO

R = UniserialRing.parse("zmod:2:5")
B = FinModule(R, (5, 2))

# submodules generated by (p^2, 1) and (p^2, p)
M = one_point(B, [[4], [1]])
M2 = one_point(B, [[4], [2]])
print(M.label(), M2.label())
print("indecomposable:", is_indecomposable(M), is_indecomposable(M2))
print("isomorphic:", are_isomorphic(M, M2) is not NOT_ISO)

# a decomposable object splits into its summands
X = one_point(FinModule(R, (5, 2)), [[4], [0]])
print("summands of", X.label(), decompose(X).types())
