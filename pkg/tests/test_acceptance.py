"""Acceptance criteria 1-7.

Each criterion records a PASS/FAIL line that the terminal summary prints
(see conftest.py); running this file directly prints the same lines.
"""

import sys
import time

import pytest

from artifact.ring_core import UniserialRing
from artifact.module_core import FinModule, ar_sequence_mod
from artifact.poset_repr import Poset, one_point
from artifact.decomp import is_indecomposable, are_isomorphic, NOT_ISO
from artifact.ar_machinery import (
    build_E, ar_test, classify_exceptional, component_split, s_sequence_submodules,
    s_sequence_ambient, s_sequence_factors, PASS,
)
from artifact.knitting import orbit_summary, compare_quivers
from artifact.catalog_cli import (
    S3_EXCEPTIONS_AS_PRINTED, S3_EXCEPTIONS_CORRECTED, enumerate_indecomposables,
)
from cache import preset_quiver

RESULTS = {}


def record(key, ok, detail):
    RESULTS[key] = (ok, detail)
    assert ok, detail


# ----------------------------------------------------------------------


def test_criterion_1_s3_n6_quiver():
    Q = preset_quiver("s3-n6")
    o = orbit_summary(Q)
    got = {"vertices": len(Q), "stable": o.stable_vertices, "tree": o.tree_class,
           "period": str(o.period), "nonstable": o.nonstable_lengths, "shape": o.shape}
    want = {"vertices": 84, "stable": 80, "tree": "E8", "period": "10", "nonstable": [1, 3],
            "shape": "ZE8/tau^10"}
    record("1", got == want and Q.check() == [], "got %s" % got)


@pytest.mark.xfail(strict=True, reason="the printed table lists (3;62;6), which cannot occur; "
                                        "knitting finds (3;62;5)")
def test_criterion_2_exception_table():
    got = preset_quiver("s3-n6").ambiguous()
    want = sorted(S3_EXCEPTIONS_AS_PRINTED)
    record("2", got == want, "extra %s, missing %s" % (sorted(set(got) - set(want)),
                                                      sorted(set(want) - set(got))))


def test_criterion_2_corrected_table():
    """The nine other entries match, and the tenth is (3;62;5)."""
    Q = preset_quiver("s3-n6")
    assert Q.ambiguous() == sorted(S3_EXCEPTIONS_CORRECTED)
    # lengths add up on every vertex, so a (3;62) object has a length-5 quotient
    for v in Q.vertices.values():
        t = v.obj.type
        assert sum(t.cotypes[0]) == sum(t.ambient) - sum(t.subs[0])
    assert sum((6,)) != sum((6, 2)) - sum((3,))


def test_criterion_3_ring_independence():
    pairs = []
    base = preset_quiver("s3-n6", "zmod:2:6")
    for ring in ("poly:2:6", "poly:3:6"):
        pairs.append(("s3-n6 " + ring, compare_quivers(base, preset_quiver("s3-n6", ring))))
    cbase = preset_quiver("chains-n2", "zmod:2:2")
    for ring in ("poly:2:2", "zmod:3:2", "poly:3:2"):
        pairs.append(("chains-n2 " + ring, compare_quivers(cbase, preset_quiver("chains-n2", ring))))
    bad = [name for name, f in pairs if f is None]
    record("3", not bad, "%d comparisons, no type-preserving isomorphism for %s" % (len(pairs), bad))


@pytest.mark.slow
def test_criterion_4_richman_count():
    t0 = time.time()
    objs = enumerate_indecomposables(Poset.one_point(), UniserialRing.parse("zmod:2:5"), 12)
    record("4", len(objs) == 50, "%d indecomposables in %.0fs" % (len(objs), time.time() - t0))


def test_criterion_5_exceptional_sequence_types():
    R5, R6 = UniserialRing.parse("zmod:2:5"), UniserialRing.parse("zmod:2:6")
    rows = []
    s1 = s_sequence_submodules(R6, 2).seq
    rows.append(([X.label(cotype=False) for X in (s1.A, s1.B, s1.C)], ["(2;6)", "(31;62)", "(2;2)"], s1))
    s2 = s_sequence_ambient(R5, 4, 3).seq
    rows.append(([X.label(cotype=False) for X in (s2.A, s2.B, s2.C)], ["(3;4)", "(3;53)", "(-;4)"], s2))
    s3 = s_sequence_factors(R6, 2, 3).seq
    rows.append(([X.type.cotypes[0] for X in (s3.A, s3.B, s3.C)], [(2,), (3, 1), (2,)], s3))
    ok = all(got == want and is_indecomposable(seq.B) for got, want, seq in rows)
    record("5", ok, "got %s" % [r[0] for r in rows])


def test_criterion_6_equal_type_objects():
    R = UniserialRing.parse("zmod:2:5")
    M = FinModule(R, (5, 2))
    X, Y = one_point(M, [[4], [1]]), one_point(M, [[4], [2]])
    ok = (X.type.ambient == Y.type.ambient == (5, 2) and X.type.subs == Y.type.subs == ((3,),)
          and X.type.cotypes == ((4,),) and Y.type.cotypes == ((3, 1),)
          and are_isomorphic(X, Y) is NOT_ISO)
    record("6", ok, "types %s / %s" % (X.label(), Y.label()))


# ----------------------------------------------------------------------
# criterion 7 reruns the property checks of the module test suites


def _sub(fn, *args):
    try:
        fn(*args)
        return True
    except AssertionError:
        return False


def _7a():
    T = ar_sequence_mod(UniserialRing.parse("zmod:2:2"), 1)
    for k in (1, 2, 3):
        P = Poset.chain(k)
        for x in P.star_elements:
            seq = build_E(T, x, P).seq
            assert ar_test(seq).verdict == PASS
            assert all(component_split(seq, y) == (y != x) for y in P.star_elements)
            assert classify_exceptional(seq) == x


def _7b():
    import test_knitting
    for name in ("chains-n2", "one-point-n2", "one-point-n3", "one-point-n4", "one-point-n5", "s3-n6"):
        test_knitting.test_mesh_additivity(name)


def _7c():
    import test_decomp
    test_decomp.test_krs_order_independence_on_random_sums()


def _7d():
    import test_catalog_cli
    for name in ("chains-n2", "one-point-n1", "one-point-n2", "one-point-n3"):
        test_catalog_cli.test_oracle_matches_knitted_vertex_set(name)


def _7e():
    import test_ring_core
    for spec in test_ring_core.SMALL:
        test_ring_core.test_exhaustive_small_systems(spec)
    for spec in test_ring_core.UP_TO_64:
        test_ring_core.test_random_systems_up_to_64_elements(spec)


def test_criterion_7_property_suites():
    parts = {"a": _sub(_7a), "b": _sub(_7b), "c": _sub(_7c), "d": _sub(_7d), "e": _sub(_7e)}
    record("7", all(parts.values()), " ".join("%s=%s" % (k, "ok" if v else "FAIL")
                                              for k, v in parts.items()))


if __name__ == "__main__":
    tests = [test_criterion_1_s3_n6_quiver, test_criterion_2_exception_table,
             test_criterion_3_ring_independence, test_criterion_4_richman_count,
             test_criterion_5_exceptional_sequence_types, test_criterion_6_equal_type_objects,
             test_criterion_7_property_suites]
    for t in tests:
        try:
            t()
        except AssertionError:
            pass
    for key in sorted(RESULTS):
        ok, detail = RESULTS[key]
        print("criterion %s: %s  %s" % (key, "PASS" if ok else "FAIL", detail))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
