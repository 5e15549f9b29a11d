"""Endomorphism rings, radicals, idempotents and Krull-Remak-Schmidt splitting.

For X with ambient ``⊕ (Λ/pi^λ)^{m_λ}`` the map taking the diagonal
``λ``-blocks of an endomorphism modulo pi is a ring homomorphism
``End(X_*) -> ∏ M_{m_λ}(k)`` whose kernel is nilpotent.  The radical of
End(X) is therefore the set of endomorphisms acting as zero on every
composition factor of the k-spaces ``k^{m_λ}`` under the image algebra.
"""

from dataclasses import dataclass, field
from functools import cached_property
import itertools

import numpy as np

from .ring_core import smith_normal_form, solve_linear
from .module_core import ModHom, inverse_hom, hom_moduli
from .poset_repr import (SubRepr, ReprHom, hom_space, restrict,
                         hom_module_elements)

ENUM_LIMIT = 2 ** 16
NOT_ISO = None  # result of are_isomorphic when no isomorphism exists


# ----------------------------------------------------------------------
# linear algebra over the residue field


def _rank(k, A):
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    return sum(1 for e in smith_normal_form(k, A).exponents if e == 0)


def _nullspace(k, A, ncols):
    """Basis (columns) of {x : A x = 0} over the field k."""
    A = np.asarray(A, dtype=np.int64).reshape(-1, ncols)
    if A.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    K = solve_linear(k, A, np.zeros((A.shape[0], 1), dtype=np.int64)).kernel
    # over a field the generators from the SNF basis are independent
    keep = [j for j in range(K.shape[1]) if np.any(K[:, j])]
    return K[:, keep]


def _inv(k, T):
    d = T.shape[0]
    return solve_linear(k, T, np.eye(d, dtype=np.int64)).particular


def _spin(k, mats, v):
    """Basis (columns) of the submodule generated by v."""
    basis = [v]
    frontier = [v]
    while frontier:
        nxt = []
        for w in frontier:
            for A in mats:
                u = k.matvec(A, w)
                cand = np.array(basis + [u], dtype=np.int64).T
                if _rank(k, cand) > len(basis):
                    basis.append(u)
                    nxt.append(u)
        frontier = nxt
    return np.array(basis, dtype=np.int64).T


def _projective_vectors(k, d):
    for lead in range(d):
        for tail in itertools.product(range(k.q), repeat=d - lead - 1):
            v = np.zeros(d, dtype=np.int64)
            v[lead] = 1
            v[lead + 1:] = tail
            yield v


def _complete_basis(k, S, d):
    cols = [S[:, j] for j in range(S.shape[1])]
    for i in range(d):
        e = np.zeros(d, dtype=np.int64)
        e[i] = 1
        cand = np.array(cols + [e], dtype=np.int64).T
        if _rank(k, cand) > len(cols):
            cols.append(e)
    return np.array(cols, dtype=np.int64).T


def composition_series(k, mats, d):
    """(T, sizes): T^{-1} A T is block upper triangular for every A in mats,
    with simple diagonal blocks of the given sizes."""
    if d == 0:
        return np.zeros((0, 0), dtype=np.int64), []
    best = None
    for v in _projective_vectors(k, d):
        S = _spin(k, mats, v)
        if best is None or S.shape[1] < best.shape[1]:
            best = S
            if S.shape[1] == 1:
                break
    s = best.shape[1]
    T1 = _complete_basis(k, best, d)
    if s == d:
        return T1, [d]
    T1i = _inv(k, T1)
    quot = [k.matmul(k.matmul(T1i, A), T1)[s:, s:] for A in mats]
    T2, sizes = composition_series(k, quot, d - s)
    big = np.eye(d, dtype=np.int64)
    big[s:, s:] = T2
    return k.matmul(T1, big), [s] + sizes


# ----------------------------------------------------------------------
# endomorphism rings


@dataclass
class Factor:
    block: int      # index of the λ-block
    start: int
    size: int


class EndoRing:
    """End(X) with its radical, computed from Λ-module generators."""

    def __init__(self, X, generators=None):
        self.object = X
        self.generators = list(generators) if generators is not None else hom_space(X, X)
        R = X.ring
        self.k = R.residue_field()
        parts = X.ambient.parts
        lams = sorted(set(parts), reverse=True)
        self.blocks = [[i for i, a in enumerate(parts) if a == lam] for lam in lams]
        k = self.k
        self.T, self.Tinv, self.factors = [], [], []
        for b, idx in enumerate(self.blocks):
            mats = [self._block(g.f.matrix, idx) for g in self.generators]
            T, sizes = composition_series(k, mats, len(idx))
            self.T.append(T)
            self.Tinv.append(_inv(k, T))
            st = 0
            for s in sizes:
                self.factors.append(Factor(b, st, s))
                st += s

    def _block(self, F, idx):
        return self.k.residue(np.asarray(F)[np.ix_(idx, idx)])

    def factor_action(self, F):
        """List of diagonal factor blocks (over k) of an endomorphism matrix."""
        k = self.k
        conj = [k.matmul(k.matmul(self.Tinv[b], self._block(F, idx)), self.T[b])
                for b, idx in enumerate(self.blocks)]
        return [conj[f.block][f.start:f.start + f.size, f.start:f.start + f.size]
                for f in self.factors]

    def _flat(self, F):
        acts = self.factor_action(F)
        return np.concatenate([a.ravel() for a in acts]) if acts else np.zeros(0, dtype=np.int64)

    @cached_property
    def _L(self):
        cols = [self._flat(g.f.matrix) for g in self.generators]
        if not cols:
            return np.zeros((0, 0), dtype=np.int64)
        return np.array(cols, dtype=np.int64).T

    def in_radical(self, h):
        F = h.matrix if hasattr(h, "matrix") else h
        return not np.any(self._flat(F))

    @cached_property
    def top_dimension(self):
        """dim_k End(X)/rad End(X)."""
        return _rank(self.k, self._L)

    @cached_property
    def radical(self):
        """Λ-module generators of rad End(X)."""
        R = self.object.ring
        g = len(self.generators)
        out = [h.scale(R.pi_pow(1)) for h in self.generators]
        if g:
            N = _nullspace(self.k, self._L, g)
            for j in range(N.shape[1]):
                out.append(self.combine(N[:, j]))
        return [h for h in out if not h.is_zero()]

    def combine(self, coeffs):
        X = self.object
        acc = ReprHom.zero(X, X)
        for c, h in zip(coeffs, self.generators):
            if c:
                acc = acc + h.scale(int(c))
        return acc

    def random_element(self, rng):
        R = self.object.ring
        return self.combine([R.random(rng) for _ in self.generators])

    @cached_property
    def factor_classes(self):
        """Partition of factor indices into isomorphism classes."""
        gens_act = [self.factor_action(g.f.matrix) for g in self.generators]
        classes = []
        for i, f in enumerate(self.factors):
            for cl in classes:
                j = cl[0]
                if self.factors[j].size == f.size and self._intertwiners(gens_act, j, i) > 0:
                    cl.append(i)
                    break
            else:
                classes.append([i])
        return classes

    def _intertwiners(self, gens_act, a, b):
        """dim_k Hom_B(T_a, T_b)."""
        k = self.k
        da, db = self.factors[a].size, self.factors[b].size
        rows = []
        # unknown Z (db x da): Z rho_a(g) - rho_b(g) Z = 0
        for acts in gens_act:
            A, B = acts[a], acts[b]
            for r in range(db):
                for c in range(da):
                    row = np.zeros(db * da, dtype=np.int64)
                    for t in range(da):
                        row[r * da + t] = k.add(row[r * da + t], int(A[t, c]))
                    for t in range(db):
                        row[t * da + c] = k.sub(row[t * da + c], int(B[r, t]))
                    rows.append(row)
        if not rows:
            return db * da
        return db * da - _rank(k, np.array(rows, dtype=np.int64))

    def is_local(self):
        """End(X)/rad is a division ring."""
        if self.object.is_zero():
            return False
        cls = self.factor_classes
        if len(cls) != 1:
            return False
        gens_act = [self.factor_action(g.f.matrix) for g in self.generators]
        i = cls[0][0]
        return self.factors[i].size == self._intertwiners(gens_act, i, i)

    def mult_table(self):
        """Coefficients c[a][b] with g_a ∘ g_b = Σ c_t g_t."""
        M = self.object.ambient
        mods = hom_moduli(M, M)
        G = np.array([h.f.coords() for h in self.generators], dtype=np.int64).T
        from .ring_core import solve_mod
        table = []
        for a in self.generators:
            row = []
            for b in self.generators:
                y = (a @ b).f.coords().reshape(-1, 1)
                sol = solve_mod(M.ring, G, y, mods)
                row.append(None if sol is None else sol.particular[:, 0])
            table.append(row)
        return table


def end_ring(X):
    return EndoRing(X)


# ----------------------------------------------------------------------
# idempotents


def _power(h, e):
    X = h.source
    out = ReprHom.identity(X)
    base = h
    while e:
        if e & 1:
            out = out @ base
        base = base @ base
        e >>= 1
    return out


def lift_idempotent(x, max_iter=64):
    """Newton iteration e <- 3e^2 - 2e^3 (x idempotent modulo the radical)."""
    R = x.source.ring
    three, two = 3 % R.char, 2 % R.char
    e = x
    for _ in range(max_iter):
        e2 = e @ e
        if e2 == e:
            return e
        e = e2.scale(three) - (e2 @ e).scale(two)
    raise RuntimeError("idempotent lifting did not converge")


def _fitting_idempotent(f):
    """Projection onto Im f^N along Ker f^N."""
    from .module_core import kernel, submodule, direct_sum
    X = f.source
    N = 1
    while N < max(X.length, 1):
        N *= 2
    g = _power(f, N)
    M = X.ambient
    S1, i1 = submodule(M, g.matrix)
    S2, i2 = kernel(g.f)
    total, _, projs = direct_sum([S1, S2])
    C = i1 @ projs[0] + i2 @ projs[1]
    E = i1 @ projs[0] @ inverse_hom(C)
    return ReprHom(X, X, E, check=False)


def find_idempotent(X, endo=None, rng=None, tries=400):
    """A nontrivial idempotent of End(X), or None if X is indecomposable."""
    endo = endo or EndoRing(X)
    if X.is_zero() or endo.is_local():
        return None
    k = endo.k
    L = endo._L
    r = endo.top_dimension
    ident = ReprHom.identity(X)
    if k.q ** r <= ENUM_LIMIT:
        # choose generators whose images form a basis of End/rad
        chosen = []
        for j in range(L.shape[1]):
            if _rank(k, L[:, chosen + [j]]) > len(chosen):
                chosen.append(j)
        one = endo._flat(ident.matrix)
        for coeffs in itertools.product(range(k.q), repeat=len(chosen)):
            v = np.zeros(L.shape[0], dtype=np.int64)
            for c, j in zip(coeffs, chosen):
                if c:
                    v = k.add(v, k.mul(c, L[:, j]))
            if not np.any(v) or np.array_equal(v, one):
                continue
            full = np.zeros(len(endo.generators), dtype=np.int64)
            for c, j in zip(coeffs, chosen):
                full[j] = c
            x = endo.combine(full)
            acts = endo.factor_action((x @ x).matrix)
            if np.array_equal(np.concatenate([a.ravel() for a in acts]), v):
                return lift_idempotent(x)
        raise RuntimeError("no idempotent found in a non-local endomorphism ring")
    rng = rng or np.random.default_rng(0)
    for _ in range(tries):
        f = endo.random_element(rng)
        acts = endo.factor_action(f.matrix)
        inv = [_rank(k, a) == a.shape[0] for a in acts]
        nil = [not np.any(_kpow(k, a, a.shape[0])) for a in acts]
        if all(inv) or all(nil):
            continue
        return _fitting_idempotent(f)
    raise RuntimeError("random Fitting search failed")


def _kpow(k, A, e):
    out = np.eye(A.shape[0], dtype=np.int64)
    for _ in range(e):
        out = k.matmul(out, A)
    return out


def is_indecomposable(X):
    return not X.is_zero() and EndoRing(X).is_local()


# ----------------------------------------------------------------------
# decomposition


@dataclass
class Decomposition:
    """X ≅ ⊕ summands; pieces hold (Y, inclusion, projection)."""

    object: SubRepr
    pieces: list
    summands: list = field(default_factory=list)   # [(Y, multiplicity)]

    @property
    def idempotents(self):
        return [inc @ proj for _, inc, proj in self.pieces]

    def types(self):
        return sorted(Y.label() for Y, _, _ in self.pieces)


def _split(X, rng):
    if X.is_zero():
        return []
    e = find_idempotent(X, rng=rng)
    if e is None:
        return [(X, ReprHom.identity(X))]
    ident = ReprHom.identity(X)
    out = []
    for idem in (e, ident - e):
        subs = {el: idem.f.apply(X.subs[el]) for el in X.poset.elements}
        Y, inc = restrict(X, idem.matrix, subs)
        for Z, j in _split(Y, rng):
            out.append((Z, inc @ j))
    return out


def decompose(X, seed=0):
    """Krull-Remak-Schmidt decomposition of X."""
    rng = np.random.default_rng(seed)
    parts = _split(X, rng)
    if not parts:
        return Decomposition(X, [], [])
    M = X.ambient
    from .module_core import direct_sum
    total, incs, projs = direct_sum([Y.ambient for Y, _ in parts])
    C = ModHom(total, M, M.ring.matmul(np.hstack([inc.matrix for _, inc in parts]),
                                       np.vstack([p.matrix for p in projs])))
    Ci = inverse_hom(C)
    pieces = []
    for (Y, inc), p in zip(parts, projs):
        proj = ReprHom(X, Y, p @ Ci, check=False)
        pieces.append((Y, inc, proj))
    summands = []
    for Y, _, _ in pieces:
        for s in summands:
            if are_isomorphic(s[0], Y) is not None:
                s[1] += 1
                break
        else:
            summands.append([Y, 1])
    return Decomposition(X, pieces, [tuple(s) for s in summands])


# ----------------------------------------------------------------------
# isomorphism


def are_isomorphic(X, Y):
    """An isomorphism X -> Y as a ReprHom, or NOT_ISO."""
    if X.poset != Y.poset or X.ring != Y.ring:
        raise ValueError("objects live in different categories")
    if X.type != Y.type:
        return None
    if X.is_zero():
        return ReprHom.zero(X, Y)
    endo = EndoRing(X)
    if endo.is_local():
        F = hom_space(X, Y)
        G = hom_space(Y, X)
        for f in F:
            for g in G:
                if not endo.in_radical(g @ f):
                    return f
        return None
    dX, dY = decompose(X), decompose(Y)
    if len(dX.pieces) != len(dY.pieces):
        return None
    used = [False] * len(dY.pieces)
    total = ReprHom.zero(X, Y)
    for A, incA, projA in dX.pieces:
        for j, (B, incB, projB) in enumerate(dY.pieces):
            if used[j]:
                continue
            h = are_isomorphic(A, B)
            if h is not None:
                used[j] = True
                total = total + incB @ h @ projA
                break
        else:
            return None
    return total


def are_isomorphic_bruteforce(X, Y):
    """Oracle: search all of Hom(X, Y) for an isomorphism."""
    if X.type != Y.type:
        return None
    for h in hom_module_elements(X, Y):
        if h.f.is_iso():
            return h
    return None


def has_idempotent_bruteforce(X):
    """Oracle: enumerate End(X) for a nontrivial idempotent."""
    ident = ReprHom.identity(X)
    for h in hom_module_elements(X, X):
        if h @ h == h and not h.is_zero() and h != ident:
            return True
    return False
