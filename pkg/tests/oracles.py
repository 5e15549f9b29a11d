"""Independent brute-force oracles.

Nothing here calls into the package's linear algebra: rings are
re-implemented from scratch on Python integers and everything is found
by exhaustive search.
"""

import itertools

import numpy as np

# F_4 = F_2[t]/(t^2 + t + 1); element a0 + 2*a1 encodes a0 + a1 t
_GF4_MUL = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]


class RefRing:
    """Z/p^n or F_q[x]/x^n (q prime or 4) with elements encoded as
    base-q digit strings, coefficient i being the coefficient of x^i."""

    def __init__(self, flavor, q, n):
        if flavor == "poly" and q not in (2, 3, 4, 5, 7):
            raise ValueError("reference ring only knows prime q and q = 4")
        self.flavor, self.q, self.n = flavor, q, n
        self.N = q ** n
        self.elements = list(range(self.N))
        self._add = [[self._add1(a, b) for b in self.elements] for a in self.elements]
        self._mul = [[self._mul1(a, b) for b in self.elements] for a in self.elements]
        self.ADD = np.array(self._add, dtype=np.int64)
        self.MUL = np.array(self._mul, dtype=np.int64)

    def _digits(self, a):
        return [(a // self.q ** i) % self.q for i in range(self.n)]

    def _enc(self, d):
        return sum(c * self.q ** i for i, c in enumerate(d))

    def _fadd(self, a, b):
        return a ^ b if self.q == 4 else (a + b) % self.q

    def _fmul(self, a, b):
        return _GF4_MUL[a][b] if self.q == 4 else (a * b) % self.q

    def _add1(self, a, b):
        if self.flavor == "zmod":
            return (a + b) % self.N
        return self._enc([self._fadd(x, y) for x, y in zip(self._digits(a), self._digits(b))])

    def _mul1(self, a, b):
        if self.flavor == "zmod":
            return (a * b) % self.N
        da, db = self._digits(a), self._digits(b)
        out = [0] * self.n
        for i in range(self.n):
            for j in range(self.n - i):
                out[i + j] = self._fadd(out[i + j], self._fmul(da[i], db[j]))
        return self._enc(out)

    def add(self, a, b):
        return self._add[a][b]

    def mul(self, a, b):
        return self._mul[a][b]

    def dot(self, row, x):
        acc = 0
        for a, b in zip(row, x):
            acc = self._add[acc][self._mul[a][b]]
        return acc

    def matvec(self, A, x):
        return tuple(self.dot(row, x) for row in A)


def grid(R, k):
    """All vectors of R^k as rows of an (N^k, k) array."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(R.elements, repeat=k)), dtype=np.int64)


def apply_all(R, A, X):
    """Rows of X mapped through A: out[t] = A X[t]."""
    A = np.asarray(A, dtype=np.int64)
    out = np.zeros((X.shape[0], A.shape[0]), dtype=np.int64)
    for i in range(A.shape[0]):
        for j in range(A.shape[1]):
            out[:, i] = R.ADD[out[:, i], R.MUL[A[i, j], X[:, j]]]
    return out


def encode(R, rows):
    """Vectors (rows) as single integers, base N."""
    rows = np.asarray(rows, dtype=np.int64)
    w = R.N ** np.arange(rows.shape[1], dtype=np.int64)
    return rows @ w


def as_set(R, rows):
    return np.unique(encode(R, rows))


def solution_sets(R, A):
    """{code of b: sorted codes of x with A x = b} over the image of A."""
    X = grid(R, np.asarray(A).shape[1])
    y = encode(R, apply_all(R, A, X))
    x = encode(R, X)
    order = np.argsort(y, kind="stable")
    y, x = y[order], x[order]
    keys, starts = np.unique(y, return_index=True)
    ends = list(starts[1:]) + [len(y)]
    return {int(k): np.sort(x[a:b]) for k, a, b in zip(keys, starts, ends)}


def coset(R, x0, K):
    """Codes of x0 + R-span of the columns of K."""
    K = np.asarray(K, dtype=np.int64).reshape(len(x0), -1)
    S = apply_all(R, K, grid(R, K.shape[1]))
    x0 = np.asarray(x0, dtype=np.int64).reshape(1, -1)
    return as_set(R, R.ADD[S, x0])


def matmul(R, A, B):
    A, B = np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)
    return apply_all(R, A, B.T).T


# ----------------------------------------------------------------------
# Z/p^n modules on plain integers


def zmod_span(p, parts, cols):
    """Additive closure of the given columns inside Z/p^a1 + ... (BFS)."""
    mods = [p ** a for a in parts]
    gens = [tuple(int(c) % m for c, m in zip(col, mods)) for col in cols]
    zero = tuple(0 for _ in parts)
    seen, todo = {zero}, [zero]
    while todo:
        v = todo.pop()
        for g in gens:
            w = tuple((x + y) % m for x, y, m in zip(v, g, mods))
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return frozenset(seen)


def zmod_object(X):
    """(p, ambient parts, {element: span set}) of a SubRepr over Z/p^n."""
    p = X.ring.p
    parts = tuple(X.ambient.parts)
    return p, parts, {e: zmod_span(p, parts, np.asarray(X.subs[e]).T) for e in X.poset.elements}


def _maps(p, src, tgt):
    """All homomorphisms Z/p^src -> Z/p^tgt as integer matrices (rows = target)."""
    choices = []
    for b in tgt:
        for a in src:
            # image of a generator of order p^a must be killed by p^a
            step = p ** max(b - a, 0)
            choices.append(range(0, p ** b, step))
    for entries in itertools.product(*choices):
        yield np.array(entries, dtype=np.int64).reshape(len(tgt), len(src))


def _apply(p, parts_t, F, S):
    mods = [p ** b for b in parts_t]
    return frozenset(tuple(int(v) % m for v, m in zip(F @ np.array(s), mods)) for s in S)


def zmod_isomorphic(X, Y):
    """Search every module map X_* -> Y_* for an isomorphism of representations."""
    p, a, SX = zmod_object(X)
    q, b, SY = zmod_object(Y)
    if sorted(a) != sorted(b):
        return False
    whole = zmod_span(p, a, np.eye(len(a), dtype=np.int64))
    for F in _maps(p, a, b):
        if len(_apply(p, b, F, whole)) != len(whole):
            continue
        if all(_apply(p, b, F, SX[e]) == SY[e] for e in SX):
            return True
    return False


def zmod_has_idempotent(X):
    """A nontrivial idempotent endomorphism preserving every subobject."""
    p, a, SX = zmod_object(X)
    mods = np.array([p ** x for x in a], dtype=np.int64)
    ident = np.eye(len(a), dtype=np.int64) % mods[:, None]
    for F in _maps(p, a, a):
        F2 = (F @ F) % mods[:, None]
        if not np.array_equal(F2, F % mods[:, None]):
            continue
        if not np.any(F % mods[:, None]) or np.array_equal(F % mods[:, None], ident):
            continue
        if all(_apply(p, a, F, SX[e]) <= SX[e] for e in SX):
            return True
    return False


def zmod_all_objects(poset, p, n, parts):
    """Every system of subgroups (as span sets) of Z/p^parts indexed by poset,
    returned as generator matrices, by closing subgroups under addition."""
    whole = zmod_span(p, parts, np.eye(len(parts), dtype=np.int64))
    subs = set()
    for size in range(0, len(parts) + 1):
        for gens in itertools.combinations(sorted(whole), size):
            subs.add(zmod_span(p, parts, gens))
    subs = sorted(subs, key=lambda s: (len(s), sorted(s)))
    els = poset.elements
    for choice in itertools.product(subs, repeat=len(els)):
        assign = dict(zip(els, choice))
        if all(assign[x] <= assign[y] for x in els for y in els if poset.leq(x, y)):
            yield {e: np.array(sorted(assign[e]), dtype=np.int64).T.reshape(len(parts), -1)
                   for e in els}
