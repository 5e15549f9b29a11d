"""Auslander-Reiten sequences in sub_Λ(P), fac_Λ(P) and S_m(Λ).

The almost-split test compares the image of ``Hom(C, g)`` with the radical
of ``End(C)`` (and dually for ``Hom(f, A)``) as Λ-submodules of the hom
spaces; both are computed exactly, so a PASS is a certificate.
"""

from dataclasses import dataclass

import numpy as np

from .ring_core import solve_mod
from .module_core import (FinModule, ModHom, ShortExactSeq, direct_sum, hom_basis,
                          hom_moduli, hom_span_length, hom_in_span, span_type, submodule)
from .poset_repr import (STAR, SubRepr, ReprHom, FacRepr, fac_to_sub, hom_space,
                         right_approx_S_m, left_approx_S_m, s_m_membership)
from .decomp import EndoRing

PASS, FAIL = "PASS", "FAIL"


# ----------------------------------------------------------------------
# sequences of representations


@dataclass
class ARSeqCandidate:
    seq: ShortExactSeq
    provenance: str = "user"


def repr_sequence(f, g):
    return ShortExactSeq(f.source, f.target, g.target, f, g)


def component(X, y):
    """(FinModule X_y, inclusion into X_*)."""
    return submodule(X.ambient, X.sub(y))


def is_exact(seq):
    """Exactness of 0 -> A -> B -> C -> 0 in every component."""
    A, B, C, f, g = seq.A, seq.B, seq.C, seq.f, seq.g
    if not (g @ f).is_zero():
        return False
    if not f.f.is_injective() or not g.f.is_surjective():
        return False
    if B.length != A.length + C.length:
        return False
    for y in A.poset.elements:
        la, lb, lc = A.sub_length(y), B.sub_length(y), C.sub_length(y)
        img = g.f.apply(B.subs[y])
        if span_type(B.ring, C.ambient.parts, img) != C.type.subs[C.poset.index[y]]:
            return False
        if lb != la + lc:
            return False
    return True


def section(seq):
    """s: C -> B with g s = 1_C, or None."""
    B, C, g = seq.B, seq.C, seq.g
    gens = hom_space(C, B)
    M = C.ambient
    mods = hom_moduli(M, M)
    if not gens:
        return None if M.rank else ReprHom.zero(C, B)
    G = np.array([(g @ s).f.coords() for s in gens], dtype=np.int64).T
    target = ModHom.identity(M).coords().reshape(-1, 1)
    sol = solve_mod(M.ring, G, target, mods)
    if sol is None:
        return None
    acc = ReprHom.zero(C, B)
    for c, s in zip(sol.particular[:, 0], gens):
        if c:
            acc = acc + s.scale(int(c))
    return acc


def is_split(seq):
    return section(seq) is not None


@dataclass
class ARTestResult:
    verdict: str
    reason: str = ""
    witness: object = None
    cond3: bool = None
    cond3_dual: bool = None

    def __bool__(self):
        return self.verdict == PASS

    def to_dict(self):
        return {"verdict": self.verdict, "reason": self.reason,
                "cond3": self.cond3, "cond3_dual": self.cond3_dual,
                "witness": None if self.witness is None else self.witness.matrix.tolist()}


def _check_category(seq, category):
    if category == "sub" or category == "fac":
        return None
    if isinstance(category, tuple) and category[0] == "S_m":
        m = category[1]
        for X in (seq.A, seq.B, seq.C):
            if not s_m_membership(X, m):
                return "object outside S_m"
        return None
    raise ValueError("unknown category %r" % (category,))


def ar_test(seq, category="sub"):
    """Almost-split test (conditions 3 and 3')."""
    bad = _check_category(seq, category)
    if bad:
        return ARTestResult(FAIL, bad)
    if not is_exact(seq):
        return ARTestResult(FAIL, "not_exact")
    if is_split(seq):
        return ARTestResult(FAIL, "split")
    A, B, C, f, g = seq.A, seq.B, seq.C, seq.f, seq.g
    eC = EndoRing(C)
    eA = EndoRing(A)
    if not (eC.is_local() and eA.is_local()):
        return ARTestResult(FAIL, "ends_decomposable")
    img = [g @ s for s in hom_space(C, B)]
    rad = eC.radical
    MC = C.ambient
    c3 = hom_span_length(MC, MC, img) == hom_span_length(MC, MC, rad)
    img_d = [h @ f for h in hom_space(B, A)]
    MA = A.ambient
    c3d = hom_span_length(MA, MA, img_d) == hom_span_length(MA, MA, eA.radical)
    if c3:
        return ARTestResult(PASS, "", None, c3, c3d)
    witness = next((h for h in rad if not hom_in_span(MC, MC, img, h.f)), None)
    return ARTestResult(FAIL, "strict_inclusion", witness, c3, c3d)


def component_split(seq, y):
    """Whether the y-component sequence splits (B_y ≅ A_y ⊕ C_y)."""
    def t(X):
        return X.ambient.parts if y == STAR else X.type.subs[X.poset.index[y]]
    return sorted(t(seq.B)) == sorted(t(seq.A) + t(seq.C))


def classify_exceptional(seq):
    """The unique component where the sequence does not split, or None."""
    bad = [y for y in seq.A.poset.star_elements if not component_split(seq, y)]
    if len(bad) > 1:
        raise ValueError("more than one non-split component: %s" % bad)
    return bad[0] if bad else None


def additive(seq):
    """Types of ambient and subobjects add up (cotypes excluded)."""
    A, B, C = seq.A.type, seq.B.type, seq.C.type
    if sorted(B.ambient) != sorted(A.ambient + C.ambient):
        return False
    return all(sorted(b) == sorted(a + c) for a, b, c in zip(A.subs, B.subs, C.subs))


# ----------------------------------------------------------------------
# E(T, x) in sub_Λ(P)


def lift_through(r, i):
    """j with j ∘ r = i (r mono, target of i injective)."""
    V, E = r.target, i.target
    basis = hom_basis(V, E)
    mods = hom_moduli(r.source, E)
    if not basis:
        return ModHom.zero(V, E)
    G = np.array([(b @ r).coords() for b in basis], dtype=np.int64).T
    sol = solve_mod(V.ring, G, i.coords().reshape(-1, 1), mods)
    if sol is None:
        raise ValueError("no lifting exists")
    acc = ModHom.zero(V, E)
    for c, b in zip(sol.particular[:, 0], basis):
        if c:
            acc = acc + b.scale(int(c))
    return acc


def injective_envelope(U):
    """(E, i: U -> E) with E free."""
    R = U.ring
    E = FinModule(R, tuple([R.n] * U.rank))
    return E, ModHom(U, E, np.diag([R.pi_pow(R.n - a) for a in U.parts]).reshape(U.rank, U.rank))


def projective_cover(W):
    R = W.ring
    P = FinModule(R, tuple([R.n] * W.rank))
    return P, ModHom(P, W, np.eye(W.rank, dtype=np.int64))


def _module_ar_check(T):
    from .poset_repr import Poset
    P0 = Poset.empty()
    A = SubRepr(P0, T.A, {})
    B = SubRepr(P0, T.B, {})
    C = SubRepr(P0, T.C, {})
    res = ar_test(repr_sequence(ReprHom(A, B, T.f), ReprHom(B, C, T.g)))
    return res


def build_E(T, x, poset, check=True):
    """The sequence E(T, x) in sub_Λ(P) from an AR sequence T in mod Λ."""
    if check and not _module_ar_check(T):
        raise ValueError("T is not an Auslander-Reiten sequence in mod Λ")
    U, V, W, r, s = T.A, T.B, T.C, T.f, T.g
    R = U.ring
    I = lambda M: np.eye(M.rank, dtype=np.int64)
    Z = lambda M: np.zeros((M.rank, 0), dtype=np.int64)
    if x == STAR:
        A = SubRepr(poset, U, {y: I(U) for y in poset.elements})
        B = SubRepr(poset, V, {y: r.matrix for y in poset.elements})
        C = SubRepr(poset, W, {y: Z(W) for y in poset.elements})
        f = ReprHom(A, B, r)
        g = ReprHom(B, C, s)
        return ARSeqCandidate(repr_sequence(f, g), "constructed_E_T_x")
    E, i = injective_envelope(U)
    j = lift_through(r, i)
    EW, (iE, iW), (pE, pW) = direct_sum([E, W])
    A_subs, B_subs, C_subs = {}, {}, {}
    for y in poset.elements:
        a_low = poset.leq(y, x)
        c_high = poset.leq(x, y)
        A_subs[y] = i.matrix if a_low else I(E)
        C_subs[y] = I(W) if c_high else Z(W)
        if y == x:
            B_subs[y] = R.add(R.matmul(iE.matrix, j.matrix), R.matmul(iW.matrix, s.matrix))
        else:
            cols = [R.matmul(iE.matrix, A_subs[y])]
            if c_high:
                cols.append(iW.matrix)
            B_subs[y] = np.hstack(cols)
    A = SubRepr(poset, E, A_subs)
    B = SubRepr(poset, EW, B_subs)
    C = SubRepr(poset, W, C_subs)
    f = ReprHom(A, B, iE)
    g = ReprHom(B, C, pW)
    return ARSeqCandidate(repr_sequence(f, g), "constructed_E_T_x")


# ----------------------------------------------------------------------
# fac version, transported through the kernel functor


BOTTOM = "0"


def build_E_fac(T, x, poset, check=True):
    """E(T, x) in fac_Λ(P) (x in P^0, with "0" the bottom) returned as the
    equivalent sequence of sub_Λ(P) together with the fac objects."""
    if check and not _module_ar_check(T):
        raise ValueError("T is not an Auslander-Reiten sequence in mod Λ")
    U, V, W, r, s = T.A, T.B, T.C, T.f, T.g
    R = U.ring
    els = poset.elements
    if x == BOTTOM:
        zero = FinModule(R, ())
        A = FacRepr(poset, U, {y: ModHom.zero(U, zero) for y in els})
        B = FacRepr(poset, V, {y: s for y in els})
        C = FacRepr(poset, W, {y: ModHom.identity(W) for y in els})
        f0, g0 = r, s
    else:
        P, p = projective_cover(W)
        q = _lift_epi(p, s)
        UP, (iU, iP), (pU, pP) = direct_sum([U, P])
        zero = FinModule(R, ())
        Aq, Bq, Cq = {}, {}, {}
        for y in els:
            a_low = poset.leq(y, x)
            c_high = poset.leq(x, y)
            Ay = U if a_low else zero
            Aq[y] = ModHom.identity(U) if a_low else ModHom.zero(U, zero)
            Cq[y] = p if c_high else ModHom.identity(P)
            if y == x:
                Bq[y] = r @ pU + q @ pP
            else:
                Cy = Cq[y].target
                S, (jA, jC), _ = direct_sum([Ay, Cy]) if Ay.rank or Cy.rank else \
                    (zero, (ModHom.zero(Ay, zero), ModHom.zero(Cy, zero)), None)
                Bq[y] = jA @ Aq[y] @ pU + jC @ Cq[y] @ pP
        A = FacRepr(poset, U, Aq)
        B = FacRepr(poset, UP, Bq)
        C = FacRepr(poset, P, Cq)
        f0, g0 = iU, pP
    As, Bs, Cs = fac_to_sub(A), fac_to_sub(B), fac_to_sub(C)
    seq = repr_sequence(ReprHom(As, Bs, f0), ReprHom(Bs, Cs, g0))
    cand = ARSeqCandidate(seq, "constructed_fac")
    cand.fac_objects = (A, B, C)
    return cand


def _lift_epi(p, s):
    """q with s ∘ q = p (source of p free)."""
    P, W = p.source, p.target
    V = s.source
    R = P.ring
    sol = solve_mod(R, s.matrix, p.matrix, W.parts)
    if sol is None:
        raise ValueError("no lifting")
    return ModHom(P, V, V.reduce(sol.particular))


# ----------------------------------------------------------------------
# S_m


def induced_on_quotient(qa, qb, f):
    """h with h ∘ qa = qb ∘ f (qa surjective)."""
    Qa, Qb = qa.target, qb.target
    R = f.ring
    sol = solve_mod(R, qa.matrix, np.eye(Qa.rank, dtype=np.int64), Qa.parts)
    lifts = sol.particular
    return ModHom(Qa, Qb, qb.apply(f.apply(lifts)))


def push_to_S_m(seq, m):
    """Move an AR sequence of S(Λ) into S_m(Λ) by minimal approximations."""
    A, B, C, f, g = seq.A, seq.B, seq.C, seq.f, seq.g
    inside = [s_m_membership(X, m) for X in (A, B, C)]
    if all(inside):
        return ARSeqCandidate(seq, "approx_pushed")
    if inside[2]:
        # right approximations: keep ambients, cut submodules to soc^m
        A2, _ = right_approx_S_m(A, m)
        B2, _ = right_approx_S_m(B, m)
        C2, _ = right_approx_S_m(C, m)
        f2 = ReprHom(A2, B2, f.f)
        g2 = ReprHom(B2, C2, g.f)
        return ARSeqCandidate(repr_sequence(f2, g2), "approx_pushed")
    if inside[0]:
        A2, qa = left_approx_S_m(A, m)
        B2, qb = left_approx_S_m(B, m)
        C2, qc = left_approx_S_m(C, m)
        f2 = ReprHom(A2, B2, induced_on_quotient(qa.f, qb.f, f.f))
        g2 = ReprHom(B2, C2, induced_on_quotient(qb.f, qc.f, g.f))
        return ARSeqCandidate(repr_sequence(f2, g2), "approx_pushed")
    raise ValueError("neither end term lies in S_m")


def s_sequence_submodules(ring, C1, m=None):
    """Ex-type (1): 0 -> (A_1 -> E) -> (B_1 -> E ⊕ C_1) -> (C_1 = C_1) -> 0 built
    from the AR sequence of mod Λ/rad^m ending at Λ/pi^{C1}."""
    from .poset_repr import Poset
    from .module_core import ar_sequence_mod
    T = ar_sequence_mod(ring, C1)
    return build_E(T, "1", Poset.one_point())


def s_sequence_ambient(ring, a, m):
    """Ex-type (2): E(T, *) for T ending at Λ/pi^a, pushed to S_m."""
    from .poset_repr import Poset
    from .module_core import ar_sequence_mod
    T = ar_sequence_mod(ring, a)
    e = build_E(T, STAR, Poset.one_point())
    return push_to_S_m(e.seq, m)


def s_sequence_factors(ring, abar, m):
    """Ex-type (3): fac sequence at x = 1 for T ending at Λ/pi^abar, pushed to S_m."""
    from .poset_repr import Poset
    from .module_core import ar_sequence_mod
    T = ar_sequence_mod(ring, abar)
    e = build_E_fac(T, "1", Poset.one_point())
    return push_to_S_m(e.seq, m)
