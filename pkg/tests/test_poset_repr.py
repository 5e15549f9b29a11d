import numpy as np
import pytest

from artifact.ring_core import UniserialRing
from artifact.module_core import FinModule
from artifact.poset_repr import (
    Poset, SubRepr, ReprHom, STAR, hom_space, hom_module_elements, quotient, kernel_repr,
    cokernel_repr, repr_direct_sum, projective_objects, injective_objects, sub_to_fac,
    fac_to_sub, s_m_membership, right_approx_S_m, left_approx_S_m, one_point,
)
from artifact.module_core import hom_span_length
from artifact.decomp import is_indecomposable, are_isomorphic
from oracles import zmod_all_objects, zmod_object, _maps, _apply

R2 = UniserialRing.parse("zmod:2:2")
R5 = UniserialRing.parse("zmod:2:5")


def brute_hom_count(X, Y):
    p, a, SX = zmod_object(X)
    _, b, SY = zmod_object(Y)
    return sum(1 for F in _maps(p, a, b) if all(_apply(p, b, F, SX[e]) <= SY[e] for e in SX))


def test_poset_basics():
    P = Poset.chain(3)
    assert P.leq("1", "3") and not P.leq("3", "1")
    assert P.leq("2", STAR) and not P.leq(STAR, "2")
    assert P.covers() == [("1", "2"), ("2", "3")]
    assert Poset.from_dict(P.to_dict()) == P
    V = Poset.from_covers(["a", "b", "c"], [("a", "c"), ("b", "c")])
    assert not V.leq("a", "b") and V.leq("b", "c")
    with pytest.raises(ValueError):
        Poset(["1", "2"], [[True, True], [True, True]])


def test_inclusions_are_checked():
    P = Poset.chain(2)
    M = FinModule(R2, (2,))
    with pytest.raises(ValueError):
        SubRepr(P, M, {"1": [[1]], "2": [[2]]})


def test_types_of_the_two_equal_type_objects():
    M = FinModule(R5, (5, 2))
    X = one_point(M, [[4], [1]])
    Y = one_point(M, [[4], [2]])
    # ambient 52 with a submodule of type 3 in both cases
    for Z in (X, Y):
        assert Z.type.ambient == (5, 2) and Z.type.subs == ((3,),)
    assert X.type.cotypes == ((4,),)
    assert Y.type.cotypes == ((3, 1),)


def test_serialization_round_trip():
    P = Poset.chain(2)
    X = SubRepr(P, FinModule(R2, (2, 1)), {"1": [[2], [0]], "2": [[2, 0], [0, 1]]})
    Y = SubRepr.from_dict(X.to_dict())
    assert X == Y and X.label() == Y.label()


def _objects(poset, parts):
    return [SubRepr(poset, FinModule(R2, parts), subs) for subs in zmod_all_objects(poset, 2, 2, parts)]


def test_hom_spaces_against_brute_force():
    P = Poset.chain(2)
    objs = _objects(P, (2, 1)) + _objects(P, (1,))
    rng = np.random.default_rng(0)
    pairs = [(objs[i], objs[j]) for i, j in rng.integers(0, len(objs), size=(40, 2))]
    for X, Y in pairs:
        count = brute_hom_count(X, Y)
        gens = hom_space(X, Y)
        assert 2 ** hom_span_length(X.ambient, Y.ambient, gens) == count
        assert len(list(hom_module_elements(X, Y))) == count


def test_kernel_cokernel_and_sums():
    P = Poset.chain(2)
    X = SubRepr(P, FinModule(R2, (2,)), {"1": [[2]], "2": [[1]]})
    Y = SubRepr(P, FinModule(R2, (2,)), {"1": [[0]], "2": [[2]]})
    S, incs, projs = repr_direct_sum([X, Y])
    assert S.ambient.parts == (2, 2)
    for i, p in zip(incs, projs):
        assert p @ i == ReprHom.identity(i.source)
    C, c = cokernel_repr(incs[0])
    assert are_isomorphic(C, Y) is not None
    K, k = kernel_repr(projs[1])
    assert are_isomorphic(K, X) is not None
    Q, q = quotient(X, [[2]])
    assert Q.ambient.parts == (1,)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_projectives_and_injectives(k):
    P = Poset.chain(k)
    proj = projective_objects(P, R2)
    inj = injective_objects(P, R2)
    assert len(proj) == len(inj) == k + 1
    for _, X, _ in proj + inj:
        assert is_indecomposable(X)
    labels = {X.label() for _, X, _ in proj}
    assert len(labels) == k + 1


def test_sub_fac_round_trip():
    P = Poset.chain(2)
    for X in _objects(P, (2, 1))[:30]:
        Y = fac_to_sub(sub_to_fac(X))
        assert are_isomorphic(X, Y) is not None


def test_s_m_approximations():
    R = UniserialRing.parse("zmod:2:6")
    X = one_point(FinModule(R, (6, 2)), [[4], [1]])
    assert not s_m_membership(X, 3)
    A, f = right_approx_S_m(X, 3)
    assert s_m_membership(A, 3) and A.ambient == X.ambient
    B, g = left_approx_S_m(X, 3)
    assert s_m_membership(B, 3)
    assert s_m_membership(X, 6)
