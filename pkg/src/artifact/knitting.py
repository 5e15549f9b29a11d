"""Valued translation quivers and knitting of AR components from a slice.

Every mesh is realized by an explicit short exact sequence.  The source map
at a vertex z is assembled from maps z -> w spanning rad(z, w) modulo the
part of rad^2 visible through a candidate set W of neighbours; the result
is then certified by ``ar_test``.  A wrong candidate set can only cause a
failed certification, never a wrong mesh.
"""

import json
from collections import defaultdict
from fractions import Fraction
from dataclasses import dataclass, field

import numpy as np

from .module_core import hom_moduli, in_span, canonical_span
from .poset_repr import (Poset, SubRepr, hom_space, cokernel_repr, kernel_repr,
                         repr_direct_sum, projective_objects, injective_objects,
                         s_m_projectives, s_m_injectives, s_m_membership)
from .decomp import EndoRing, are_isomorphic, decompose
from .ar_machinery import ar_test, repr_sequence, additive, classify_exceptional
from .ring_core import UniserialRing


class KnitError(Exception):
    """Knitting failure; ``code`` is BUDGET_EXCEEDED or MESH_UNREALIZABLE."""

    def __init__(self, code, message, quiver=None):
        super().__init__("%s: %s" % (code, message))
        self.code = code
        self.quiver = quiver


BUDGET_EXCEEDED = "BUDGET_EXCEEDED"
MESH_UNREALIZABLE = "MESH_UNREALIZABLE"


# ----------------------------------------------------------------------
# categories


class Category:
    """sub_Λ(P), or S_m(Λ) when m is given (one-point poset only)."""

    def __init__(self, poset, ring, m=None):
        self.poset = poset
        self.ring = ring
        self.m = None if m is None or m >= ring.n else int(m)
        if self.m is None:
            proj, inj = projective_objects(poset, ring), injective_objects(poset, ring)
        else:
            if len(poset.elements) != 1:
                raise ValueError("S_m needs the one-point poset")
            proj = s_m_projectives(poset, ring, self.m)
            inj = s_m_injectives(poset, ring, self.m)
        # (object, start/end term of the sink/source map, the map)
        self.projectives = [(P, s.source, s) for _, P, s in proj]
        self.injectives = [(I, s.target, s) for _, I, s in inj]

    @property
    def tag(self):
        return "sub" if self.m is None else ("S_m", self.m)

    def contains(self, X):
        return self.m is None or s_m_membership(X, self.m)

    def to_dict(self):
        return {"ring": self.ring.to_dict(), "poset": self.poset.to_dict(), "m": self.m}

    @classmethod
    def from_dict(cls, d):
        r = d["ring"]
        R = UniserialRing(r["flavor"], int(r["p"]), int(r["n"]))
        return cls(Poset.from_dict(d["poset"]), R, d.get("m"))

    def __repr__(self):
        name = "sub(%s)" % (self.poset,) if self.m is None else "S_%d" % self.m
        return "%s over %s" % (name, self.ring.spec)


# ----------------------------------------------------------------------
# quivers


@dataclass
class Vertex:
    id: int
    obj: SubRepr
    proj: bool = False
    inj: bool = False
    origin: str = "slice"
    dist: int = 0
    disambig: int = 0

    @property
    def type_label(self):
        return self.obj.type.label(cotype=False)

    @property
    def label(self):
        return self.obj.type.label(cotype=True)


@dataclass
class Mesh:
    """Realized AR sequence start -> middle -> end."""
    start: int
    end: int
    middle: dict
    seq: object = None
    direction: str = "forward"
    additive: bool = True
    exceptional: object = None


class TranslationQuiver:
    """Vertices with realizing objects, valued arrows and the translation."""

    def __init__(self, category):
        self.category = category
        self.vertices = {}
        self.arrows = {}                # (u, v) -> [a, b]
        self.tau = {}                   # v -> tau v
        self.tau_inv = {}
        self.meshes = []
        self.sink_mult = {}             # v -> {u: multiplicity}, v projective
        self.source_mult = {}           # v -> {w: multiplicity}, v injective

    # graph helpers
    def out(self, v):
        return sorted(w for (u, w) in self.arrows if u == v)

    def into(self, v):
        return sorted(u for (u, w) in self.arrows if w == v)

    def __len__(self):
        return len(self.vertices)

    def labels(self):
        return {v.id: v.label for v in self.vertices.values()}

    def projectives(self):
        return sorted(v.id for v in self.vertices.values() if v.proj)

    def injectives(self):
        return sorted(v.id for v in self.vertices.values() if v.inj)

    def check(self):
        """Translation quiver axioms: tau domains and the mesh condition."""
        problems = []
        for v in self.vertices.values():
            if v.proj == (v.id in self.tau):
                problems.append("tau domain at %d" % v.id)
            if v.inj == (v.id in self.tau_inv):
                problems.append("tau^-1 domain at %d" % v.id)
        for z, t in self.tau.items():
            if sorted(self.into(z)) != sorted(self.out(t)):
                problems.append("mesh at %d" % z)
        return problems

    def set_valuations(self):
        """(a, b) from multiplicities in source and sink maps."""
        src, snk = {}, {}
        for M in self.meshes:
            src[M.start] = M.middle
            snk[M.end] = M.middle
        for v, d in self.source_mult.items():
            src.setdefault(v, d)
        for v, d in self.sink_mult.items():
            snk.setdefault(v, d)
        for (u, w) in self.arrows:
            a = src.get(u, {}).get(w, 1)
            b = snk.get(w, {}).get(u, 1)
            self.arrows[(u, w)] = [a, b]

    def assign_disambig(self):
        """0 when the type alone identifies the vertex, else a rank within the type."""
        groups = defaultdict(list)
        for v in self.vertices.values():
            groups[v.type_label].append(v)
        for g in groups.values():
            if len(g) == 1:
                g[0].disambig = 0
                continue
            g.sort(key=lambda v: (v.label, v.id))
            for i, v in enumerate(g):
                v.disambig = i + 1

    def ambiguous(self):
        """(type; cotype) labels of vertices whose type is shared."""
        return sorted(v.label for v in self.vertices.values() if v.disambig)

    def display(self, v):
        x = self.vertices[v]
        same = [w for w in self.vertices.values() if w.label == x.label]
        return x.label if len(same) == 1 else "%s#%d" % (x.label, x.disambig)

    # serialization
    def to_dict(self, objects=True):
        d = {
            "category": self.category.to_dict(),
            "vertices": [],
            "arrows": [[u, w, a, b] for (u, w), (a, b) in sorted(self.arrows.items())],
            "tau": [[z, t] for z, t in sorted(self.tau.items())],
        }
        for v in sorted(self.vertices.values(), key=lambda v: v.id):
            e = {"id": v.id, "type": v.type_label, "label": v.label, "proj": v.proj,
                 "inj": v.inj, "disambig": v.disambig, "origin": v.origin}
            if objects:
                e["object"] = v.obj.to_dict()
            d["vertices"].append(e)
        return d

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d):
        Q = cls(Category.from_dict(d["category"]))
        for e in d["vertices"]:
            Q.vertices[e["id"]] = Vertex(e["id"], SubRepr.from_dict(e["object"]), e["proj"],
                                         e["inj"], e.get("origin", "import"), 0, e["disambig"])
        for u, w, a, b in d["arrows"]:
            Q.arrows[(u, w)] = [a, b]
        for z, t in d["tau"]:
            Q.tau[z] = t
            Q.tau_inv[t] = z
        return Q

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_dot(self, name="G"):
        lines = ["digraph %s {" % name, "  rankdir=LR;"]
        for v in sorted(self.vertices.values(), key=lambda v: v.id):
            shape = "box" if (v.proj or v.inj) else "ellipse"
            lines.append('  v%d [label="%s", shape=%s];' % (v.id, self.display(v.id)[1:-1], shape))
        for (u, w), (a, b) in sorted(self.arrows.items()):
            val = "" if (a, b) == (1, 1) else ' [label="(%d,%d)"]' % (a, b)
            lines.append("  v%d -> v%d%s;" % (u, w, val))
        for z, t in sorted(self.tau.items()):
            lines.append("  v%d -> v%d [style=dashed, constraint=false];" % (z, t))
        lines.append("}")
        return "\n".join(lines)


@dataclass
class Slice:
    """Objects and arrows (index pairs) of a slice."""
    objects: list
    arrows: list = field(default_factory=list)

    def __post_init__(self):
        self.arrows = [tuple(a) for a in self.arrows]

    def to_dict(self):
        return {"objects": [X.to_dict() for X in self.objects], "arrows": [list(a) for a in self.arrows]}

    @classmethod
    def from_dict(cls, d):
        return cls([SubRepr.from_dict(o) for o in d["objects"]], d.get("arrows", []))


# ----------------------------------------------------------------------
# slices


def _connected(nodes, edges):
    nodes = set(nodes)
    if not nodes:
        return False
    adj = defaultdict(set)
    for u, w in edges:
        adj[u].add(w)
        adj[w].add(u)
    start = next(iter(nodes))
    seen, todo = {start}, [start]
    while todo:
        u = todo.pop()
        for w in adj[u]:
            if w in nodes and w not in seen:
                seen.add(w)
                todo.append(w)
    return seen == nodes


def validate_slice(L, Q):
    """Check a set of vertex ids (or an arrow subset given as (ids, arrows))
    against the translation quiver Q.  Returns "OK" or a violation string."""
    if isinstance(L, tuple) and len(L) == 2 and not isinstance(L[0], (int, np.integer)):
        ids, arr = set(L[0]), set(map(tuple, L[1]))
    else:
        ids = set(L)
        arr = {a for a in Q.arrows if a[0] in ids and a[1] in ids}
    if not ids:
        return "empty"
    if not ids <= set(Q.vertices):
        return "unknown vertex"
    full = {a for a in Q.arrows if a[0] in ids and a[1] in ids}
    if not arr <= full:
        return "arrow not in quiver"
    if arr != full:
        return "not full"
    if not _connected(ids, arr):
        return "not connected"
    for x in ids:
        if Q.vertices[x].inj:
            continue
        for y in Q.out(x):
            if Q.vertices[y].proj:
                continue
            f = (x, y) in arr
            s = Q.tau.get(y) in ids and (Q.tau[y], x) in arr
            if f == s:
                return "exactly-one fails at %d -> %d" % (x, y)
    return "OK"


# ----------------------------------------------------------------------
# knitting


def _coords(homs, mods):
    if not homs:
        return np.zeros((len(mods), 0), dtype=np.int64)
    return np.array([h.f.coords() for h in homs], dtype=np.int64).T


class _Knitter:

    def __init__(self, L, category, budget, audit):
        self.cat = category
        self.budget = budget
        self.audit = audit
        self.Q = TranslationQuiver(category)
        self.slice_ids = []
        self._hom, self._end = {}, {}
        self.failed = {}
        self.in_complete, self.out_complete = set(), set()
        self.linked = set()
        for i, X in enumerate(L.objects):
            v = self.find(X)
            if v is None:
                v = self.add(X, "slice", 0)
            self.slice_ids.append(v)
        self.L = set(self.slice_ids)
        self.L_arrows = {(self.slice_ids[a], self.slice_ids[b]) for a, b in L.arrows}
        for a in self.L_arrows:
            self.Q.arrows.setdefault(a, [1, 1])

    # vertices
    def find(self, X):
        for v in self.Q.vertices.values():
            if v.obj.type == X.type and are_isomorphic(X, v.obj) is not None:
                return v.id
        return None

    def _catalog_match(self, X, items):
        for it in items:
            if it[0].type == X.type and are_isomorphic(X, it[0]) is not None:
                return it
        return None

    def add(self, X, origin, dist):
        vid = len(self.Q.vertices)
        v = Vertex(vid, X, origin=origin, dist=dist)
        v.proj = self._catalog_match(X, self.cat.projectives) is not None
        v.inj = self._catalog_match(X, self.cat.injectives) is not None
        self.Q.vertices[vid] = v
        return vid

    def find_or_add(self, X, origin, dist):
        v = self.find(X)
        return (v, False) if v is not None else (self.add(X, origin, dist), True)

    # hom spaces between vertices
    def end(self, v):
        if v not in self._end:
            self._end[v] = EndoRing(self.Q.vertices[v].obj)
        return self._end[v]

    def hom(self, u, v):
        if (u, v) not in self._hom:
            if u == v:
                self._hom[(u, v)] = self.end(u).generators
            else:
                self._hom[(u, v)] = hom_space(self.Q.vertices[u].obj, self.Q.vertices[v].obj)
        return self._hom[(u, v)]

    def rad(self, u, v):
        return self.end(u).radical if u == v else self.hom(u, v)

    # catalog links: arrows at projectives and injectives
    def link(self, v):
        if v in self.linked:
            return
        self.linked.add(v)
        X = self.Q.vertices[v]
        d = X.dist + 1
        if X.proj:
            _, S, _ = self._catalog_match(X.obj, self.cat.projectives)
            mult = self._summands(S, d)
            self.Q.sink_mult[v] = mult
            for u in mult:
                self.Q.arrows.setdefault((u, v), [1, 1])
            self.in_complete.add(v)
        if X.inj:
            _, T, _ = self._catalog_match(X.obj, self.cat.injectives)
            mult = self._summands(T, d)
            self.Q.source_mult[v] = mult
            for w in mult:
                self.Q.arrows.setdefault((v, w), [1, 1])
            self.out_complete.add(v)
        # v as the start of a sink map / end of a source map
        for P, S, _ in self.cat.projectives:
            if S.type == X.obj.type and are_isomorphic(S, X.obj) is not None:
                p, _ = self.find_or_add(P, "catalog", d)
                self.Q.arrows.setdefault((v, p), [1, 1])
        for I, T, _ in self.cat.injectives:
            if T.type == X.obj.type and are_isomorphic(T, X.obj) is not None:
                i, _ = self.find_or_add(I, "catalog", d)
                self.Q.arrows.setdefault((i, v), [1, 1])

    def _summands(self, X, dist):
        if X.is_zero():
            return {}
        mult = {}
        for Y, m in decompose(X).summands:
            u, _ = self.find_or_add(Y, "catalog", dist)
            mult[u] = mult.get(u, 0) + m
        return mult

    # candidate sets
    def forward_candidates(self, z):
        """(ready, W) for the source map at z."""
        Q = self.Q
        if z in self.in_complete:
            basis = Q.into(z)
        elif z in self.L:
            basis = [u for u in Q.into(z) if (u, z) in self.L_arrows]
        else:
            return False, None
        ready = all(Q.vertices[u].inj or u in Q.tau_inv for u in basis)
        W = set(Q.out(z)) | {Q.tau_inv[u] for u in Q.into(z) if u in Q.tau_inv}
        return ready, W

    def backward_candidates(self, z):
        Q = self.Q
        if z in self.out_complete:
            basis = Q.out(z)
        elif z in self.L:
            basis = [w for w in Q.out(z) if (z, w) in self.L_arrows]
        else:
            return False, None
        ready = all(Q.vertices[w].proj or w in Q.tau for w in basis)
        W = set(Q.into(z)) | {Q.tau[w] for w in Q.out(z) if w in Q.tau}
        return ready, W

    # irreducible maps relative to W
    def _irr(self, z, W, forward):
        chosen = []
        for w in sorted(W):
            if w == z:
                continue
            if forward:
                rad = self.rad(z, w)
                sq = [b @ a for v in list(W) + [z] for a in self.rad(z, v) for b in self.rad(v, w)]
                mul = lambda e, h: e @ h
                ends = self.end(w).generators
                M, N = self.Q.vertices[z].obj.ambient, self.Q.vertices[w].obj.ambient
            else:
                rad = self.rad(w, z)
                sq = [b @ a for v in list(W) + [z] for a in self.rad(w, v) for b in self.rad(v, z)]
                mul = lambda e, h: h @ e
                ends = self.end(w).generators
                M, N = self.Q.vertices[w].obj.ambient, self.Q.vertices[z].obj.ambient
            R, mods = M.ring, hom_moduli(M, N)
            span = _coords(sq, mods)
            for h in rad:
                if h.is_zero() or in_span(R, mods, span, h.f.coords().reshape(-1, 1)):
                    continue
                chosen.append((w, h))
                span = canonical_span(R, mods, np.hstack([span, _coords([mul(e, h) for e in ends], mods)]))
        return chosen

    def mesh(self, z, W, forward):
        Q = self.Q
        chosen = self._irr(z, W, forward)
        if not chosen:
            return None
        objs = [Q.vertices[w].obj for w, _ in chosen]
        E, incs, projs = repr_direct_sum(objs)
        if forward:
            s = incs[0] @ chosen[0][1]
            for inc, (_, h) in zip(incs[1:], chosen[1:]):
                s = s + inc @ h
            if not s.f.is_injective():
                return None
            C, q = cokernel_repr(s)
            seq = repr_sequence(s, q)
            other = C
        else:
            t = chosen[0][1] @ projs[0]
            for pr, (_, h) in zip(projs[1:], chosen[1:]):
                t = t + h @ pr
            if not t.f.is_surjective():
                return None
            K, inc = kernel_repr(t)
            seq = repr_sequence(inc, t)
            other = K
        if other.is_zero() or not self.cat.contains(other):
            return None
        res = ar_test(seq, self.cat.tag)
        if not (res and res.cond3_dual):
            return None
        middle = defaultdict(int)
        for w, _ in chosen:
            middle[w] += 1
        return other, seq, dict(middle)

    def step(self, z, W, forward):
        Q = self.Q
        out = self.mesh(z, W, forward)
        if out is None:
            return False
        other, seq, middle = out
        v, new = self.find_or_add(other, "forward" if forward else "backward", Q.vertices[z].dist + 1)
        start, end = (z, v) if forward else (v, z)
        if start in Q.tau_inv or end in Q.tau or Q.vertices[start].inj or Q.vertices[end].proj:
            raise KnitError(MESH_UNREALIZABLE, "inconsistent translation at %d -> %d" % (start, end), Q)
        Q.tau[end] = start
        Q.tau_inv[start] = end
        for w in middle:
            Q.arrows.setdefault((start, w), [1, 1])
            Q.arrows.setdefault((w, end), [1, 1])
        self.out_complete.add(start)
        self.in_complete.add(end)
        Q.meshes.append(Mesh(start, end, middle, seq, "forward" if forward else "backward",
                             additive(seq), classify_exceptional(seq) if self.audit else None))
        if len(Q.meshes) > self.budget:
            raise KnitError(BUDGET_EXCEEDED, "more than %d meshes (largest length %d)" % (
                self.budget, max(x.obj.length for x in Q.vertices.values())), Q)
        return True

    def tasks(self):
        Q = self.Q
        out = []
        for v in Q.vertices.values():
            if not v.inj and v.id not in Q.tau_inv:
                out.append((v.dist, v.id, True))
            if not v.proj and v.id not in Q.tau:
                out.append((v.dist, v.id, False))
        return sorted(out)

    def run(self):
        Q = self.Q
        while True:
            for v in sorted(Q.vertices):
                self.link(v)
            if len(self.linked) < len(Q.vertices):
                continue
            todo = self.tasks()
            if not todo:
                break
            progressed = False
            for dist, z, fwd in todo:
                ready, W = (self.forward_candidates if fwd else self.backward_candidates)(z)
                if not ready or self.failed.get((z, fwd)) == frozenset(W):
                    continue
                if self.step(z, W, fwd):
                    progressed = True
                    break
                self.failed[(z, fwd)] = frozenset(W)
            if not progressed:
                # a candidate set outside the slice rules would not be certifiable:
                # conditions 3 and 3' only characterize AR sequences ending in a known tau
                raise KnitError(MESH_UNREALIZABLE, "no certified mesh at %s" % (
                    ["%s%d" % ("+" if f else "-", z) for _, z, f in todo],), Q)
        Q.set_valuations()
        Q.assign_disambig()
        return Q


def knit(L, category, budget=500, audit=True):
    """Knit the AR component containing the slice L.

    Raises KnitError(BUDGET_EXCEEDED) or KnitError(MESH_UNREALIZABLE).
    """
    if not L.objects:
        raise ValueError("empty slice")
    return _Knitter(L, category, budget, audit).run()


def quiver_from_list(objects, category):
    """AR quiver of a complete list of indecomposables.

    Every successor of a vertex is in the list, so the source maps computed
    against all vertices are exact.  Used as an oracle against knitting.
    """
    K = _Knitter(Slice(list(objects)), category, budget=10 ** 6, audit=True)
    Q = K.Q
    for v in sorted(Q.vertices):
        K.link(v)
    if len(Q) != len(objects):
        raise ValueError("list not closed under catalog terms or contains isomorphic objects")
    allv = set(Q.vertices)
    for z in sorted(Q.vertices):
        if Q.vertices[z].inj or z in Q.tau_inv:
            continue
        if not K.step(z, allv, True):
            raise KnitError(MESH_UNREALIZABLE, "no source map at %d" % z, Q)
    if len(Q) != len(objects):
        raise ValueError("list is not closed under tau^-1")
    Q.set_valuations()
    Q.assign_disambig()
    return Q


def slice_from_quiver(Q, ids):
    """Slice object for a vertex set of an already knitted quiver."""
    ids = list(ids)
    pos = {v: i for i, v in enumerate(ids)}
    arr = [(pos[u], pos[w]) for (u, w) in Q.arrows if u in pos and w in pos]
    return Slice([Q.vertices[v].obj for v in ids], sorted(arr))


# ----------------------------------------------------------------------
# orbits and the stable part


@dataclass
class OrbitSummary:
    orbit_lengths: list
    stable_vertices: int
    tree_class: str
    period: int
    nonstable_lengths: list
    attachments: list
    twisted: bool = False

    @property
    def shape(self):
        if not self.stable_vertices:
            return "empty"
        p = str(self.period) if self.period.denominator == 1 else "(%s)" % self.period
        return "Z%s/%stau^%s" % (self.tree_class, "rho*" if self.twisted else "", p)

    def to_dict(self):
        return {"orbit_lengths": self.orbit_lengths, "stable_vertices": self.stable_vertices,
                "tree_class": self.tree_class,
                "period": int(self.period) if self.period.denominator == 1 else str(self.period), "shape": self.shape,
                "nonstable_lengths": self.nonstable_lengths, "attachments": self.attachments,
                "twisted": self.twisted}


def tau_orbits(Q):
    """(cyclic orbits, non-cyclic orbits) as lists of vertex ids."""
    seen, cyc, lines = set(), [], []
    for v in sorted(Q.vertices):
        if v in seen or v in Q.tau:
            continue
        orb = [v]
        while orb[-1] in Q.tau_inv:
            orb.append(Q.tau_inv[orb[-1]])
        seen.update(orb)
        lines.append(orb)
    for v in sorted(Q.vertices):
        if v in seen:
            continue
        orb = [v]
        while Q.tau_inv.get(orb[-1], v) != v:
            orb.append(Q.tau_inv[orb[-1]])
        seen.update(orb)
        cyc.append(orb)
    return cyc, lines


def dynkin_class(nodes, edges):
    """Name of a Dynkin tree (A_m, D_m, E_6..8) or None."""
    nodes = list(nodes)
    adj = defaultdict(set)
    for u, w in edges:
        if u != w:
            adj[u].add(w)
            adj[w].add(u)
    m = len(nodes)
    if m == 0 or sum(len(a) for a in adj.values()) // 2 != m - 1 or not _connected(nodes, edges):
        return None
    branch = [v for v in nodes if len(adj[v]) >= 3]
    if not branch:
        return "A%d" % m
    if len(branch) > 1 or len(adj[branch[0]]) > 3:
        return None
    b = branch[0]
    arms = []
    for s in adj[b]:
        k, prev, cur = 1, b, s
        while len(adj[cur]) == 2:
            prev, cur = cur, next(x for x in adj[cur] if x != prev)
            k += 1
        arms.append(k)
    arms.sort()
    if arms[:2] == [1, 1]:
        return "D%d" % m
    return {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}.get(tuple(arms))


def _unrolled_section(Q, stable):
    """Tree class of the stable part, read off a section of its cover.

    The cover is explored as pairs (vertex, height) with arrows raising the
    height by one; the points of height 0 and 1 meet every tau-orbit of the
    cover exactly once.
    """
    if not stable:
        return None, 0
    succ, pred = defaultdict(list), defaultdict(list)
    for (u, w) in Q.arrows:
        if u in stable and w in stable:
            succ[u].append(w)
            pred[w].append(u)
    H = 2 * len(stable) + 2
    start = (min(stable), 0)
    seen, todo = {start}, [start]
    while todo:
        v, h = todo.pop()
        for nb in [(w, h + 1) for w in succ[v]] + [(u, h - 1) for u in pred[v]]:
            if abs(nb[1]) <= H and nb not in seen:
                seen.add(nb)
                todo.append(nb)
    section = [x for x in seen if x[1] in (0, 1)]
    edges = [((v, 0), (w, 1)) for (v, h) in section if h == 0 for w in succ[v] if (w, 1) in seen]
    return dynkin_class(section, edges), len(section)


def orbit_summary(Q):
    cyc, lines = tau_orbits(Q)
    stable = {v for o in cyc for v in o}
    tree, size = _unrolled_section(Q, stable)
    period = Fraction(len(stable), size) if size else Fraction(0)
    twisted = len({len(o) for o in cyc}) > 1 or period.denominator > 1
    att = []
    for o in lines:
        touch = sorted({w for v in o for (a, b) in Q.arrows for w in (a, b)
                        if v in (a, b) and w in stable})
        att.append(touch)
    return OrbitSummary(sorted(len(o) for o in cyc + lines), len(stable), tree or "?", period,
                        sorted(len(o) for o in lines), att, twisted)


# ----------------------------------------------------------------------
# comparison


def _graph(Q):
    import networkx as nx
    G = nx.DiGraph()
    for v in Q.vertices.values():
        G.add_node(v.id, label=(v.label, v.proj, v.inj))
    for (u, w), val in Q.arrows.items():
        G.add_edge(u, w, kind="arrow", val=tuple(val))
    for z, t in Q.tau.items():
        if G.has_edge(z, t):
            G.edges[z, t]["tau"] = True
        else:
            G.add_edge(z, t, kind="tau", val=None)
    return G


def compare_quivers(Q1, Q2):
    """A type-preserving isomorphism {v1: v2} of valued translation quivers, or None."""
    from networkx.algorithms.isomorphism import DiGraphMatcher
    if len(Q1) != len(Q2) or len(Q1.arrows) != len(Q2.arrows) or len(Q1.tau) != len(Q2.tau):
        return None
    G1, G2 = _graph(Q1), _graph(Q2)
    if sorted(v.label for v in Q1.vertices.values()) != sorted(v.label for v in Q2.vertices.values()):
        return None
    gm = DiGraphMatcher(G1, G2, node_match=lambda a, b: a["label"] == b["label"],
                        edge_match=lambda a, b: (a["kind"], a["val"], a.get("tau")) ==
                        (b["kind"], b["val"], b.get("tau")))
    for iso in gm.isomorphisms_iter():
        if _respects(Q1, Q2, iso):
            return iso
    return None


def _respects(Q1, Q2, f):
    if any(Q2.tau.get(f[z]) != f[t] for z, t in Q1.tau.items()):
        return False
    return all(tuple(Q2.arrows.get((f[u], f[w]), ())) == tuple(v) for (u, w), v in Q1.arrows.items())
