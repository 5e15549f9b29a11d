"""Finite modules over a uniserial ring and their homomorphisms.

A finite module is kept in decomposed form ``⊕ Λ/pi^{a_i}`` with the
parts ``a_i`` weakly decreasing (its type).  An element is a column vector
whose i-th entry is read modulo ``pi^{a_i}``.  Submodules are given by
generator columns; the low level helpers below take a plain list of moduli
so they also serve hom spaces and other non-sorted coordinate systems.
"""

from dataclasses import dataclass
import itertools

import numpy as np

from .ring_core import (UniserialRing, smith_normal_form, solve_linear, howell_form,
                        diag_pi, solve_mod)


# ----------------------------------------------------------------------
# partitions


def parse_partition(text):
    """Parse "6,2", "62" or "" into a weakly decreasing tuple."""
    text = str(text).strip().strip("()")
    if text in ("", "-", "0", "−"):
        return ()
    if "," in text:
        parts = [int(x) for x in text.split(",") if x.strip()]
    else:
        parts = [int(c) for c in text]
    return tuple(sorted((x for x in parts if x), reverse=True))


def fmt_partition(parts, compact=False):
    parts = tuple(parts)
    if compact:
        if not parts:
            return "-"
        if all(x < 10 for x in parts):
            return "".join(map(str, parts))
    return ",".join(map(str, parts))


def partition_from_lengths(lengths):
    """Partition whose j-th column has lengths[j] - lengths[j+1] boxes."""
    parts = []
    for j in range(len(lengths) - 1):
        cnt = lengths[j] - lengths[j + 1]
        parts.append(cnt)
    # cnt_j = number of parts >= j+1
    out = []
    for j in range(len(parts)):
        nxt = parts[j + 1] if j + 1 < len(parts) else 0
        out.extend([j + 1] * (parts[j] - nxt))
    return tuple(sorted(out, reverse=True))


# ----------------------------------------------------------------------
# submodules of ⊕ Λ/pi^{mod_i}, generators as columns


def _cols(G, t):
    G = np.asarray(G, dtype=np.int64)
    if G.size == 0:
        # keep the column count of an empty (0, k) matrix
        k = G.shape[1] if G.ndim == 2 and G.shape[0] == t else 0
        return np.zeros((t, k), dtype=np.int64)
    return G.reshape(t, -1)


def reduce_mod(R, mod, G):
    """Reduce row i of G modulo pi^{mod_i}."""
    G = _cols(G, len(mod)).copy()
    for i, a in enumerate(mod):
        G[i] = R.mod_pi(G[i], a)
    return G


def quotient_exponents(R, mod, G):
    """Cyclic lengths of (⊕ Λ/pi^{mod}) / span(G), as a partition."""
    t = len(mod)
    if t == 0:
        return ()
    big = np.hstack([_cols(G, t), diag_pi(R, mod)])
    exps = smith_normal_form(R, big).exponents
    return tuple(sorted((e for e in exps if e), reverse=True))


def span_length(R, mod, G):
    return sum(mod) - sum(quotient_exponents(R, mod, G))


def span_type(R, mod, G):
    """Type of span(G) from the lengths of pi^j span(G)."""
    G = _cols(G, len(mod))
    lens = [span_length(R, mod, R.mul_pi(G, j)) for j in range(R.n + 1)]
    return partition_from_lengths(lens)


def canonical_span(R, mod, G):
    """Howell-reduced generator columns; equal spans give equal matrices."""
    t = len(mod)
    G = _cols(G, t)
    rows = np.vstack([G.T, diag_pi(R, mod)]) if t else np.zeros((0, 0), dtype=np.int64)
    H = howell_form(R, rows)
    H = reduce_mod(R, mod, H.T)
    keep = [j for j in range(H.shape[1]) if np.any(H[:, j])]
    return H[:, keep]


def in_span(R, mod, G, h):
    """True if every column of h lies in span(G)."""
    t = len(mod)
    h = _cols(h, t)
    if h.shape[1] == 0:
        return True
    return solve_mod(R, _cols(G, t), h, mod) is not None


def relations(R, mod, G):
    """Generators (columns) of {y : G y = 0 in ⊕ Λ/pi^{mod}}."""
    t = len(mod)
    G = _cols(G, t)
    g = G.shape[1]
    big = np.hstack([G, diag_pi(R, mod)])
    K = solve_linear(R, big, np.zeros((t, 1), dtype=np.int64)).kernel
    return K[:g]


def intersect(R, mod, G, H):
    """Generators of span(G) ∩ span(H)."""
    t = len(mod)
    G, H = _cols(G, t), _cols(H, t)
    big = np.hstack([G, R.neg(H), diag_pi(R, mod)])
    K = solve_linear(R, big, np.zeros((t, 1), dtype=np.int64)).kernel
    return reduce_mod(R, mod, R.matmul(G, K[: G.shape[1]]))


def module_basis(R, mod, G):
    """Decompose span(G) ≅ ⊕ Λ/pi^{d}: returns (parts, generator columns).

    Parts are weakly decreasing and column j generates a cyclic summand of
    order pi^{parts[j]}.
    """
    t = len(mod)
    G = _cols(G, t)
    g = G.shape[1]
    if g == 0:
        return (), np.zeros((t, 0), dtype=np.int64)
    K = relations(R, mod, G)
    s = smith_normal_form(R, K)
    d = list(s.exponents) + [R.n] * (g - len(s.exponents))
    gens = reduce_mod(R, mod, R.matmul(G, s.Uinv))
    order = sorted((j for j in range(g) if d[j] > 0), key=lambda j: (-d[j], j))
    parts = tuple(d[j] for j in order)
    return parts, gens[:, order]


def enumerate_span(R, mod, G):
    """All elements of span(G) (small instances only)."""
    parts, B = module_basis(R, mod, G)
    out = []
    for coeffs in itertools.product(*[range(R.q ** d) for d in parts]):
        v = R.matvec(B, np.array(coeffs, dtype=np.int64)) if parts else np.zeros(len(mod), dtype=np.int64)
        out.append(reduce_mod(R, mod, v.reshape(-1, 1))[:, 0])
    return out


# ----------------------------------------------------------------------
# modules and maps


@dataclass(frozen=True)
class FinModule:
    """⊕ Λ/pi^{parts[i]}, parts weakly decreasing in 1..n."""

    ring: UniserialRing
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x < 1 or x > self.ring.n for x in parts):
            raise ValueError("parts must lie in 1..n")
        if list(parts) != sorted(parts, reverse=True):
            raise ValueError("parts must be weakly decreasing")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, ring, parts):
        if isinstance(parts, str):
            parts = parse_partition(parts)
        return cls(ring, tuple(sorted(parts, reverse=True)))

    @property
    def rank(self):
        return len(self.parts)

    @property
    def length(self):
        return sum(self.parts)

    def type_str(self, compact=False):
        return fmt_partition(self.parts, compact)

    def __repr__(self):
        return "FinModule(%s, %s)" % (self.ring.spec, self.type_str() or "0")

    def reduce(self, G):
        return reduce_mod(self.ring, self.parts, G)

    def elements(self):
        return enumerate_span(self.ring, self.parts, np.eye(self.rank, dtype=np.int64))

    def size(self):
        return self.ring.q ** self.length


def type_of(parts):
    """Canonical partition string of a list of cyclic lengths."""
    return fmt_partition(sorted((p for p in parts if p), reverse=True))


def length(M):
    return M.length


def hom_exponents(M, N):
    """e[i][j] = max(b_i - a_j, 0) and coordinate moduli min(a_j, b_i)."""
    e = [[max(b - a, 0) for a in M.parts] for b in N.parts]
    m = [[min(a, b) for a in M.parts] for b in N.parts]
    return e, m


@dataclass(frozen=True, eq=False)
class ModHom:
    """Λ-linear map; column j is the image of the j-th generator of source."""

    source: FinModule
    target: FinModule
    matrix: np.ndarray

    def __post_init__(self):
        R = self.source.ring
        A = np.asarray(self.matrix, dtype=np.int64).reshape(self.target.rank, self.source.rank)
        A = reduce_mod(R, self.target.parts, A)
        for i, b in enumerate(self.target.parts):
            for j, a in enumerate(self.source.parts):
                if A[i, j] and R.valuation(int(A[i, j])) < b - a:
                    raise ValueError("entry (%d,%d) violates divisibility" % (i, j))
        A.setflags(write=False)
        object.__setattr__(self, "matrix", A)

    @property
    def ring(self):
        return self.source.ring

    @classmethod
    def identity(cls, M):
        return cls(M, M, np.eye(M.rank, dtype=np.int64))

    @classmethod
    def zero(cls, M, N):
        return cls(M, N, np.zeros((N.rank, M.rank), dtype=np.int64))

    def __matmul__(self, other):
        """Composition self ∘ other."""
        if other.target != self.source:
            raise ValueError("cannot compose")
        return ModHom(other.source, self.target, self.ring.matmul(self.matrix, other.matrix))

    def __add__(self, other):
        return ModHom(self.source, self.target, self.ring.add(self.matrix, other.matrix))

    def __sub__(self, other):
        return ModHom(self.source, self.target, self.ring.sub(self.matrix, other.matrix))

    def __neg__(self):
        return ModHom(self.source, self.target, self.ring.neg(self.matrix))

    def scale(self, c):
        return ModHom(self.source, self.target, self.ring.mul(int(c), self.matrix))

    def __eq__(self, other):
        return (isinstance(other, ModHom) and self.source == other.source
                and self.target == other.target and np.array_equal(self.matrix, other.matrix))

    def __hash__(self):
        return hash((self.source, self.target, self.matrix.tobytes()))

    def is_zero(self):
        return not np.any(self.matrix)

    def apply(self, x):
        """Image of element columns x."""
        return self.target.reduce(self.ring.matmul(self.matrix, _cols(x, self.source.rank)))

    def coords(self):
        """Hom coordinates y_ij with h_ij = pi^{e_ij} y_ij (row-major)."""
        e, m = hom_exponents(self.source, self.target)
        R = self.ring
        out = []
        for i in range(self.target.rank):
            for j in range(self.source.rank):
                out.append(R.mod_pi(R.div_pi(int(self.matrix[i, j]), e[i][j]), m[i][j]))
        return np.array(out, dtype=np.int64)

    @classmethod
    def from_coords(cls, M, N, y):
        e, _ = hom_exponents(M, N)
        R = M.ring
        A = np.zeros((N.rank, M.rank), dtype=np.int64)
        k = 0
        for i in range(N.rank):
            for j in range(M.rank):
                A[i, j] = R.mul_pi(int(y[k]), e[i][j])
                k += 1
        return cls(M, N, A)

    def is_injective(self):
        return kernel(self)[0].length == 0

    def is_surjective(self):
        return image(self)[0].length == self.target.length

    def is_iso(self):
        return self.source.length == self.target.length and self.is_injective()

    def __repr__(self):
        return "ModHom(%s -> %s, %s)" % (self.source.type_str(), self.target.type_str(),
                                         self.matrix.tolist())


def hom_moduli(M, N):
    _, m = hom_exponents(M, N)
    return [x for row in m for x in row]


def hom_basis(M, N):
    """Elementary generators of Hom(M, N) as a Λ-module."""
    e, _ = hom_exponents(M, N)
    R = M.ring
    out = []
    for i in range(N.rank):
        for j in range(M.rank):
            A = np.zeros((N.rank, M.rank), dtype=np.int64)
            A[i, j] = R.pi_pow(e[i][j])
            out.append(ModHom(M, N, A))
    return out


def hom_span_length(M, N, homs):
    """Length of the Λ-submodule of Hom(M, N) generated by homs."""
    mod = hom_moduli(M, N)
    if not homs:
        return 0
    G = np.array([getattr(h, "f", h).coords() for h in homs], dtype=np.int64).T
    return span_length(M.ring, mod, G)


def hom_in_span(M, N, homs, h):
    mod = hom_moduli(M, N)
    G = np.array([getattr(x, "f", x).coords() for x in homs], dtype=np.int64).T if homs else \
        np.zeros((len(mod), 0), dtype=np.int64)
    return in_span(M.ring, mod, G, h.coords().reshape(-1, 1))


def submodule(M, G):
    """(FinModule S, inclusion S -> M) for the span of columns G of M."""
    parts, B = module_basis(M.ring, M.parts, G)
    S = FinModule(M.ring, parts)
    return S, ModHom(S, M, B)


def kernel(f):
    """(K, inclusion K -> source) of a ModHom."""
    R = f.ring
    M, N = f.source, f.target
    big = np.hstack([f.matrix, diag_pi(R, N.parts)]) if N.rank else \
        np.zeros((0, M.rank), dtype=np.int64)
    if N.rank == 0:
        G = np.eye(M.rank, dtype=np.int64)
    else:
        K = solve_linear(R, big, np.zeros((N.rank, 1), dtype=np.int64)).kernel
        G = K[: M.rank]
    return submodule(M, G)


def image(f):
    """(I, inclusion I -> target)."""
    return submodule(f.target, f.matrix)


def preimage(f, H):
    """Generators (columns of source) of f^{-1}(span H)."""
    R = f.ring
    M, N = f.source, f.target
    H = _cols(H, N.rank)
    if N.rank == 0:
        return np.eye(M.rank, dtype=np.int64)
    big = np.hstack([f.matrix, R.neg(H), diag_pi(R, N.parts)])
    K = solve_linear(R, big, np.zeros((N.rank, 1), dtype=np.int64)).kernel
    return M.reduce(K[: M.rank])


def cokernel(f):
    """(C, projection target -> C)."""
    R = f.ring
    N = f.target
    if N.rank == 0:
        C = FinModule(R, ())
        return C, ModHom(N, C, np.zeros((0, 0), dtype=np.int64))
    big = np.hstack([f.matrix, diag_pi(R, N.parts)])
    s = smith_normal_form(R, big)
    exps = list(s.exponents)
    order = sorted((i for i in range(N.rank) if exps[i] > 0), key=lambda i: (-exps[i], i))
    C = FinModule(R, tuple(exps[i] for i in order))
    return C, ModHom(N, C, s.U[order])


def cokernel_of_sub(M, G):
    """(M / span G, projection)."""
    G = _cols(G, M.rank)
    free = FinModule(M.ring, tuple([M.ring.n] * G.shape[1]))
    return cokernel(ModHom(free, M, G))


def rad_pow(M, m):
    """(rad^m M, inclusion)."""
    R = M.ring
    return submodule(M, R.mul_pi(np.eye(M.rank, dtype=np.int64), m))


def soc_pow(M, m):
    """(soc^m M, inclusion): elements killed by pi^m."""
    R = M.ring
    cols = np.zeros((M.rank, M.rank), dtype=np.int64)
    for i, a in enumerate(M.parts):
        cols[i, i] = R.pi_pow(max(a - m, 0))
    return submodule(M, cols)


def direct_sum(mods):
    """(M, inclusions, projections) for the sorted direct sum."""
    R = mods[0].ring
    slots = [(a, k, j) for k, X in enumerate(mods) for j, a in enumerate(X.parts)]
    order = sorted(range(len(slots)), key=lambda s: (-slots[s][0], s))
    M = FinModule(R, tuple(slots[s][0] for s in order))
    pos = {(slots[s][1], slots[s][2]): r for r, s in enumerate(order)}
    incs, projs = [], []
    for k, X in enumerate(mods):
        A = np.zeros((M.rank, X.rank), dtype=np.int64)
        for j in range(X.rank):
            A[pos[(k, j)], j] = 1
        incs.append(ModHom(X, M, A))
        projs.append(ModHom(M, X, A.T.copy()))
    return M, incs, projs


def block_hom(src_sum, tgt_sum, blocks):
    """Map between direct sums from blocks[i][j]: src_j -> tgt_i (None = 0)."""
    M, incM, projM = src_sum
    N, incN, projN = tgt_sum
    total = ModHom.zero(M, N)
    for i, row in enumerate(blocks):
        for j, b in enumerate(row):
            if b is not None:
                total = total + incN[i] @ b @ projM[j]
    return total


def inverse_hom(f):
    """Inverse of an isomorphism of modules."""
    M, N = f.source, f.target
    R = f.ring
    sol = solve_mod(R, f.matrix, np.eye(N.rank, dtype=np.int64), N.parts)
    if sol is None or M.length != N.length:
        raise ValueError("not an isomorphism")
    return ModHom(N, M, M.reduce(sol.particular))


# ----------------------------------------------------------------------
# short exact sequences


@dataclass
class ShortExactSeq:
    """0 -> A -f-> B -g-> C -> 0 (modules or representations)."""

    A: object
    B: object
    C: object
    f: object
    g: object

    def is_exact(self):
        f, g = self.f, self.g
        if hasattr(f, "is_exact_pair"):
            return f.is_exact_pair(g)
        return ((g @ f).is_zero() and f.is_injective() and g.is_surjective()
                and self.B.length == self.A.length + self.C.length)


def ar_sequence_mod(ring, c):
    """0 -> Λ/pi^c -> Λ/pi^{c+1} ⊕ Λ/pi^{c-1} -> Λ/pi^c -> 0."""
    n = ring.n
    if not 1 <= c <= n - 1:
        raise ValueError("Λ/pi^c with c = n is projective; no AR sequence ends there")
    R = ring
    A = FinModule(R, (c,))
    C = A
    mid = (c + 1, c - 1) if c > 1 else (c + 1,)
    B = FinModule(R, mid)
    pi = R.pi_pow(1)
    if c > 1:
        f = ModHom(A, B, [[pi], [1]])
        g = ModHom(B, C, [[1, R.neg(pi)]])
    else:
        f = ModHom(A, B, [[pi]])
        g = ModHom(B, C, [[1]])
    return ShortExactSeq(A, B, C, f, g)
