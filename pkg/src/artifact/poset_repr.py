"""Submodule representations of a finite poset.

An object of sub_Λ(P) is a module ``M_*`` together with submodules ``M_i``
(i in P) such that ``i <= j`` implies ``M_i ⊆ M_j``.  The top element ``*``
of ``P*`` always refers to the ambient module.  Submodules are stored as
Howell-reduced generator columns, so two objects with the same ambient are
equal exactly when their stored matrices agree.
"""

from dataclasses import dataclass
from functools import cached_property
import json

import numpy as np

from .ring_core import UniserialRing, solve_mod
from .module_core import (FinModule, ModHom, canonical_span, in_span, span_type,
                          quotient_exponents, cokernel_of_sub, kernel, submodule,
                          intersect, fmt_partition, hom_exponents,
                          hom_moduli, direct_sum)

STAR = "*"


class Poset:
    """Finite poset on string ids with a reflexive-transitive relation."""

    def __init__(self, elements, leq):
        self.elements = [str(e) for e in elements]
        if STAR in self.elements:
            raise ValueError("'*' is reserved for the adjoined top element")
        self.index = {e: i for i, e in enumerate(self.elements)}
        L = np.array(leq, dtype=bool).reshape(len(self.elements), len(self.elements))
        k = len(self.elements)
        for i in range(k):
            if not L[i, i]:
                raise ValueError("relation not reflexive")
            for j in range(k):
                if i != j and L[i, j] and L[j, i]:
                    raise ValueError("relation not antisymmetric")
                for m in range(k):
                    if L[i, j] and L[j, m] and not L[i, m]:
                        raise ValueError("relation not transitive")
        L.setflags(write=False)
        self.leq_matrix = L

    @classmethod
    def from_covers(cls, elements, covers=()):
        elements = [str(e) for e in elements]
        k = len(elements)
        idx = {e: i for i, e in enumerate(elements)}
        L = np.eye(k, dtype=bool)
        for a, b in covers:
            L[idx[str(a)], idx[str(b)]] = True
        for m in range(k):
            L = L | (L[:, [m]] & L[[m], :])
        return cls(elements, L)

    @classmethod
    def chain(cls, k):
        els = [str(i + 1) for i in range(k)]
        return cls.from_covers(els, [(els[i], els[i + 1]) for i in range(k - 1)])

    @classmethod
    def one_point(cls):
        return cls.chain(1)

    @classmethod
    def empty(cls):
        return cls([], np.zeros((0, 0), dtype=bool))

    def leq(self, a, b):
        if b == STAR:
            return True
        if a == STAR:
            return False
        return bool(self.leq_matrix[self.index[a], self.index[b]])

    def lt(self, a, b):
        return a != b and self.leq(a, b)

    @property
    def star_elements(self):
        return self.elements + [STAR]

    def covers(self):
        out = []
        for a in self.elements:
            for b in self.elements:
                if self.lt(a, b) and not any(self.lt(a, c) and self.lt(c, b) for c in self.elements):
                    out.append((a, b))
        return out

    def to_dict(self):
        return {"elements": list(self.elements), "covers": [list(c) for c in self.covers()]}

    @classmethod
    def from_dict(cls, d):
        return cls.from_covers(d["elements"], [tuple(c) for c in d.get("covers", [])])

    def __eq__(self, other):
        return isinstance(other, Poset) and self.elements == other.elements and \
            np.array_equal(self.leq_matrix, other.leq_matrix)

    def __hash__(self):
        return hash((tuple(self.elements), self.leq_matrix.tobytes()))

    def __repr__(self):
        return "Poset(%s, covers=%s)" % (self.elements, self.covers())


# ----------------------------------------------------------------------
# types


@dataclass(frozen=True)
class ReprType:
    """Ambient type, submodule types and cotypes (in poset element order)."""

    ambient: tuple
    subs: tuple
    cotypes: tuple

    def label(self, cotype=True):
        f = lambda p: fmt_partition(p, compact=True)
        items = [f(s) for s in self.subs] + [f(self.ambient)]
        if cotype:
            items += [f(c) for c in self.cotypes]
        return "(" + ";".join(items) + ")"

    def __str__(self):
        return self.label(cotype=False)


# ----------------------------------------------------------------------
# objects


class SubRepr:
    """Object of sub_Λ(P): an ambient FinModule and one submodule per element."""

    def __init__(self, poset, ambient, subs, check=True):
        self.poset = poset
        self.ambient = ambient
        R = ambient.ring
        mod = ambient.parts
        canon = {}
        for e in poset.elements:
            G = subs.get(e, np.zeros((ambient.rank, 0), dtype=np.int64))
            G = np.asarray(G, dtype=np.int64)
            G = G.reshape(ambient.rank, -1) if ambient.rank else np.zeros((0, 0), dtype=np.int64)
            H = canonical_span(R, mod, G)
            H.setflags(write=False)
            canon[e] = H
        self.subs = canon
        if check:
            for a in poset.elements:
                for b in poset.elements:
                    if a != b and poset.leq(a, b) and not in_span(R, mod, canon[b], canon[a]):
                        raise ValueError("M_%s is not contained in M_%s" % (a, b))

    @property
    def ring(self):
        return self.ambient.ring

    def sub(self, e):
        if e == STAR:
            return np.eye(self.ambient.rank, dtype=np.int64)
        return self.subs[e]

    def key(self):
        return (self.ambient.parts,) + tuple(self.subs[e].tobytes() + bytes(str(self.subs[e].shape), "ascii")
                                            for e in self.poset.elements)

    def __eq__(self, other):
        return isinstance(other, SubRepr) and self.poset == other.poset and \
            self.ambient == other.ambient and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def length(self):
        return self.ambient.length

    def is_zero(self):
        return self.ambient.rank == 0

    @cached_property
    def quotients(self):
        """For each element e: (M_*/M_e, projection ModHom)."""
        return {e: cokernel_of_sub(self.ambient, self.subs[e]) for e in self.poset.elements}

    @cached_property
    def type(self):
        R = self.ring
        mod = self.ambient.parts
        subs = tuple(span_type(R, mod, self.subs[e]) for e in self.poset.elements)
        cot = tuple(quotient_exponents(R, mod, self.subs[e]) for e in self.poset.elements)
        return ReprType(self.ambient.parts, subs, cot)

    def sub_length(self, e):
        return sum(self.type.subs[self.poset.index[e]]) if e != STAR else self.ambient.length

    def label(self, cotype=True):
        return self.type.label(cotype)

    def __repr__(self):
        return "SubRepr%s" % self.label()

    def to_dict(self):
        return {
            "ring": self.ring.to_dict(),
            "poset": self.poset.to_dict(),
            "ambient": list(self.ambient.parts),
            "subgens": {e: self.subs[e].tolist() for e in self.poset.elements},
        }

    @classmethod
    def from_dict(cls, d):
        r = d["ring"]
        R = UniserialRing(r["flavor"], int(r["p"]), int(r["n"]))
        P = Poset.from_dict(d["poset"])
        M = FinModule(R, tuple(d["ambient"]))
        subs = {e: np.array(g, dtype=np.int64).reshape(M.rank, -1) for e, g in d["subgens"].items()}
        return cls(P, M, subs)

    def to_json(self):
        return json.dumps(self.to_dict())


def one_point(ambient, gens):
    """(span gens ⊂ ambient) for the one-point poset."""
    P = Poset.one_point()
    return SubRepr(P, ambient, {P.elements[0]: gens})


# ----------------------------------------------------------------------
# morphisms


class ReprHom:
    """Morphism of SubReprs given by a ModHom on ambients."""

    def __init__(self, source, target, f, check=True):
        if not isinstance(f, ModHom):
            f = ModHom(source.ambient, target.ambient, f)
        self.source, self.target, self.f = source, target, f
        if check:
            R = source.ring
            for e in source.poset.elements:
                img = f.apply(source.subs[e])
                if not in_span(R, target.ambient.parts, target.subs[e], img):
                    raise ValueError("f(M_%s) is not contained in N_%s" % (e, e))

    @property
    def matrix(self):
        return self.f.matrix

    def __matmul__(self, other):
        return ReprHom(other.source, self.target, self.f @ other.f, check=False)

    def __add__(self, other):
        return ReprHom(self.source, self.target, self.f + other.f, check=False)

    def __sub__(self, other):
        return ReprHom(self.source, self.target, self.f - other.f, check=False)

    def __neg__(self):
        return ReprHom(self.source, self.target, -self.f, check=False)

    def scale(self, c):
        return ReprHom(self.source, self.target, self.f.scale(c), check=False)

    def is_zero(self):
        return self.f.is_zero()

    def __eq__(self, other):
        return isinstance(other, ReprHom) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    @classmethod
    def identity(cls, X):
        return cls(X, X, ModHom.identity(X.ambient), check=False)

    @classmethod
    def zero(cls, X, Y):
        return cls(X, Y, ModHom.zero(X.ambient, Y.ambient), check=False)

    def __repr__(self):
        return "ReprHom(%s -> %s, %s)" % (self.source.label(False), self.target.label(False),
                                          self.matrix.tolist())

    def is_iso(self):
        X, Y = self.source, self.target
        if X.type != Y.type or not self.f.is_iso():
            return False
        # f(X_e) ⊆ Y_e with equal lengths forces equality
        return True


def hom_space(X, Y):
    """Λ-module generators of Hom(X, Y) in sub_Λ(P)."""
    R = X.ring
    M, N = X.ambient, Y.ambient
    e, _ = hom_exponents(M, N)
    mods = hom_moduli(M, N)
    u = len(mods)
    if u == 0:
        return []
    rows, rmod = [], []
    for k in X.poset.elements:
        G = X.subs[k]
        Q, q = Y.quotients[k]
        if G.shape[1] == 0 or Q.rank == 0:
            continue
        Qm = q.matrix
        for r in range(Q.rank):
            for g in range(G.shape[1]):
                row = np.zeros(u, dtype=np.int64)
                idx = 0
                for i in range(N.rank):
                    for j in range(M.rank):
                        row[idx] = R.mul(R.mul_pi(int(Qm[r, i]), e[i][j]), int(G[j, g]))
                        idx += 1
                rows.append(row)
                rmod.append(Q.parts[r])
    if rows:
        A = np.array(rows, dtype=np.int64)
        sol = solve_mod(R, A, np.zeros((len(rows), 1), dtype=np.int64), rmod)
        Y_ = sol.kernel
    else:
        Y_ = np.eye(u, dtype=np.int64)
    Yc = canonical_span(R, mods, Y_)
    return [ReprHom(X, Y, ModHom.from_coords(M, N, Yc[:, c]), check=False)
            for c in range(Yc.shape[1])]


def hom_module_elements(X, Y, gens=None):
    """All elements of Hom(X, Y) (small instances only)."""
    from .module_core import enumerate_span
    gens = hom_space(X, Y) if gens is None else gens
    M, N = X.ambient, Y.ambient
    mods = hom_moduli(M, N)
    if not gens:
        return [ReprHom.zero(X, Y)]
    G = np.array([h.f.coords() for h in gens], dtype=np.int64).T
    return [ReprHom(X, Y, ModHom.from_coords(M, N, y), check=False)
            for y in enumerate_span(X.ring, mods, G)]


# ----------------------------------------------------------------------
# constructions


def restrict(X, U, subs=None):
    """Subobject of X on the ambient span(U) with X_e ∩ span(U) (or given subs).

    Returns (Y, inclusion ReprHom Y -> X).
    """
    R = X.ring
    S, inc = submodule(X.ambient, U)
    new = {}
    for e in X.poset.elements:
        G = subs[e] if subs is not None else intersect(R, X.ambient.parts, U, X.subs[e])
        new[e] = _pull_back(inc, G)
    Y = SubRepr(X.poset, S, new, check=False)
    return Y, ReprHom(Y, X, inc, check=False)


def _pull_back(inc, G):
    # preimage columns of G ⊆ image(inc) under the injective map inc
    R = inc.ring
    G = np.asarray(G, dtype=np.int64).reshape(inc.target.rank, -1)
    if G.shape[1] == 0 or inc.source.rank == 0:
        return np.zeros((inc.source.rank, 0), dtype=np.int64)
    sol = solve_mod(R, inc.matrix, G, inc.target.parts)
    if sol is None:
        raise ValueError("generators not in the image")
    return inc.source.reduce(sol.particular)


def quotient(X, U):
    """X_*/span(U) with images of the X_e.  Returns (C, projection)."""
    Q, q = cokernel_of_sub(X.ambient, U)
    subs = {e: q.apply(X.subs[e]) for e in X.poset.elements}
    C = SubRepr(X.poset, Q, subs, check=False)
    return C, ReprHom(X, C, q, check=False)


def cokernel_repr(f):
    """Cokernel in sub_Λ(P): C_* = B_*/f(A_*), C_e = image of B_e."""
    return quotient(f.target, f.matrix)


def kernel_repr(g):
    """Kernel in sub_Λ(P): K_* = ker g, K_e = B_e ∩ K_*."""
    K, inc = kernel(g.f)
    return restrict(g.source, inc.matrix)


def image_repr(f):
    """Image (f(A_*), f(A_e)) as a subobject of the target."""
    Y = f.target
    subs = {e: f.f.apply(f.source.subs[e]) for e in f.source.poset.elements}
    return restrict(Y, f.matrix, subs)


def repr_direct_sum(objs):
    """(X, inclusions, projections) for a direct sum of SubReprs."""
    P = objs[0].poset
    M, incs, projs = direct_sum([o.ambient for o in objs])
    subs = {}
    for e in P.elements:
        cols = [inc.apply(o.subs[e]) for o, inc in zip(objs, incs)]
        subs[e] = np.hstack(cols) if cols else np.zeros((M.rank, 0), dtype=np.int64)
    X = SubRepr(P, M, subs, check=False)
    return (X, [ReprHom(o, X, i, check=False) for o, i in zip(objs, incs)],
            [ReprHom(X, o, p, check=False) for o, p in zip(objs, projs)])


def zero_object(poset, ring):
    return SubRepr(poset, FinModule(ring, ()), {})


def repr_type(X):
    return X.type


# ----------------------------------------------------------------------
# sub/fac equivalence


class FacRepr:
    """Object of fac_Λ(P): a module with epimorphisms M_0 -> M_e."""

    def __init__(self, poset, ambient, quotients):
        self.poset = poset
        self.ambient = ambient
        self.quotients = dict(quotients)

    @property
    def cotypes(self):
        return tuple(self.quotients[e].target.parts for e in self.poset.elements)


def sub_to_fac(X):
    """E: replace each inclusion by its cokernel map."""
    return FacRepr(X.poset, X.ambient, {e: X.quotients[e][1] for e in X.poset.elements})


def fac_to_sub(Y):
    """E': replace each quotient map by its kernel."""
    subs = {}
    for e in Y.poset.elements:
        K, inc = kernel(Y.quotients[e])
        subs[e] = inc.matrix
    return SubRepr(Y.poset, Y.ambient, subs)


# ----------------------------------------------------------------------
# projectives and injectives


def _obj(poset, ambient, rule):
    """Object on ambient Λ/pi^a: rule(e) in {"full", "zero", int k (pi^k Λ)}."""
    R = ambient.ring
    subs = {}
    for e in poset.elements:
        r = rule(e)
        if r == "full":
            subs[e] = np.eye(ambient.rank, dtype=np.int64)
        elif r == "zero":
            subs[e] = np.zeros((ambient.rank, 0), dtype=np.int64)
        else:
            subs[e] = R.mul_pi(np.eye(ambient.rank, dtype=np.int64), r)
    return SubRepr(poset, ambient, subs, check=False)


def projective_objects(poset, ring):
    """[(x, P^{>=x}, sink map)] for x in P*, the sink start being
    (rad P)^{>=x} + P^{>x}."""
    out = []
    L = FinModule(ring, (ring.n,))
    for x in poset.star_elements:
        P = _obj(poset, L, lambda e: "full" if poset.leq(x, e) else "zero")
        if x == STAR:
            if ring.n > 1:
                S = _obj(poset, FinModule(ring, (ring.n - 1,)), lambda e: "zero")
                sink = ReprHom(S, P, [[ring.pi_pow(1)]], check=False)
            else:
                S = zero_object(poset, ring)
                sink = ReprHom.zero(S, P)
        else:
            S = _obj(poset, L, lambda e: "full" if poset.lt(x, e) else (1 if e == x else "zero"))
            sink = ReprHom(S, P, [[1]], check=False)
        out.append((x, P, sink))
    return out


def injective_objects(poset, ring):
    """[(x, I, source map)]: I^{not<=x} for x in P, and I^{<=*} (x = '*')."""
    out = []
    n = ring.n
    L = FinModule(ring, (n,))
    for x in poset.elements:
        I = _obj(poset, L, lambda e: "zero" if poset.leq(e, x) else "full")
        T = _obj(poset, L, lambda e: "zero" if poset.lt(e, x) else (n - 1 if e == x else "full"))
        out.append((x, I, ReprHom(I, T, [[1]], check=False)))
    I = _obj(poset, L, lambda e: "full")
    if n > 1:
        T = _obj(poset, FinModule(ring, (n - 1,)), lambda e: "full")
        src = ReprHom(I, T, [[1]], check=False)
    else:
        T = zero_object(poset, ring)
        src = ReprHom.zero(I, T)
    out.append((STAR, I, src))
    return out


# ----------------------------------------------------------------------
# S_m for the one-point poset


def _single(X):
    if len(X.poset.elements) != 1:
        raise ValueError("S_m is only available for the one-point poset")
    return X.poset.elements[0]


def s_m_membership(X, m):
    """True if pi^m kills the submodule."""
    e = _single(X)
    R = X.ring
    return not np.any(X.ambient.reduce(R.mul_pi(X.subs[e], m)))


def right_approx_S_m(X, m):
    """(soc^m A_1 ⊂ A_*) with its map into X."""
    e = _single(X)
    R = X.ring
    mod = X.ambient.parts
    soc = np.zeros((X.ambient.rank, X.ambient.rank), dtype=np.int64)
    for i, a in enumerate(mod):
        soc[i, i] = R.pi_pow(max(a - m, 0))
    G = intersect(R, mod, X.subs[e], soc)
    Y = SubRepr(X.poset, X.ambient, {e: G}, check=False)
    return Y, ReprHom(Y, X, ModHom.identity(X.ambient), check=False)


def left_approx_S_m(X, m):
    """(A_1/rad^m A_1 ⊂ A_*/rad^m A_1) with the map from X."""
    e = _single(X)
    R = X.ring
    return quotient(X, R.mul_pi(X.subs[e], m))


def object_literal(X):
    return X.label()


def s_m_projectives(poset, ring, m):
    """Ext-projectives of S_m(Λ) with their sink maps: (0 ⊂ Λ) and (Λ/pi^m = Λ/pi^m)."""
    if m == ring.n:
        return projective_objects(poset, ring)
    e = poset.elements[0]
    out = [projective_objects(poset, ring)[-1]]
    A = FinModule(ring, (m,))
    P = _obj(poset, A, lambda _: "full")
    S = _obj(poset, A, lambda _: 1)
    out.insert(0, (e, P, ReprHom(S, P, [[1]], check=False)))
    return out


def s_m_injectives(poset, ring, m):
    """Ext-injectives of S_m(Λ) with their source maps: (0 ⊂ Λ) and (pi^{n-m}Λ ⊂ Λ)."""
    if m == ring.n:
        return injective_objects(poset, ring)
    n = ring.n
    out = [injective_objects(poset, ring)[0]]
    I = _obj(poset, FinModule(ring, (n,)), lambda _: n - m)
    if n > 1:
        T = _obj(poset, FinModule(ring, (n - 1,)), lambda _: n - m)
        src = ReprHom(I, T, [[1]], check=False)
    else:
        T = zero_object(poset, ring)
        src = ReprHom.zero(I, T)
    out.append((STAR, I, src))
    return out
