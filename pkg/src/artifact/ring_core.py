"""Exact arithmetic over commutative uniserial rings.

Two flavors share one integer encoding.  With ``P`` the residue field size,
an element is a code in ``[0, P**n)``:

* ``zmod``: the least non-negative residue modulo ``p**n`` (here ``P = p``);
* ``poly``: ``F_q[x]/x**n`` with code ``sum c_i q**i``, ``c_i`` in ``F_q``.

In both encodings the radical generator is the code ``P``, multiplying by a
power of it shifts base-``P`` digits, and the valuation is the number of
trailing zero digits.  Only ``add``, ``sub``, ``neg`` and ``mul`` depend on
the flavor, so everything above this module is flavor-agnostic.

Matrices are plain ``numpy`` integer arrays of codes.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import itertools

import numpy as np

ZMOD = "zmod"
POLY = "poly"

_TABLE_LIMIT = 1024


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _prime_power(q):
    """Return (p, e) with q = p**e, or None."""
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            return (p, e) if r == 1 else None
    return None


def _polymulmod(a, b, f, p):
    # coefficient lists, low degree first; f monic
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            res[i + j] = (res[i + j] + x * y) % p
    d = len(f) - 1
    for k in range(len(res) - 1, d - 1, -1):
        c = res[k]
        if c:
            for j in range(d + 1):
                res[k - d + j] = (res[k - d + j] - c * f[j]) % p
    return res[:d] + [0] * (d - len(res[:d]))


def _irreducible(p, e):
    """First monic irreducible polynomial of degree e over F_p (brute force)."""
    if e == 1:
        return [0, 1]
    for tail in itertools.product(range(p), repeat=e):
        f = list(tail) + [1]
        if f[0] == 0:
            continue
        ok = True
        for d in range(1, e // 2 + 1):
            for gt in itertools.product(range(p), repeat=d):
                g = list(gt) + [1]
                # remainder of f by g
                r = list(f)
                for k in range(len(r) - 1, d - 1, -1):
                    c = r[k]
                    if c:
                        for j in range(d + 1):
                            r[k - d + j] = (r[k - d + j] - c * g[j]) % p
                if not any(r[:d]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return f
    raise ValueError("no irreducible polynomial found")


@lru_cache(maxsize=None)
def _gf_tables(q):
    """Addition, multiplication and inverse tables of F_q."""
    p, e = _prime_power(q)
    f = _irreducible(p, e)
    digits = [[(a // p**i) % p for i in range(e)] for a in range(q)]
    enc = lambda c: sum(int(x) * p**i for i, x in enumerate(c))
    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = enc([(x + y) % p for x, y in zip(digits[a], digits[b])])
            mul[a, b] = enc(_polymulmod(digits[a], digits[b], f, p))
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
    neg = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)], dtype=np.int64)
    return add, mul, inv, neg


@dataclass(frozen=True)
class UniserialRing:
    """The ring ``Z/p^n`` (flavor ``zmod``) or ``F_q[x]/x^n`` (flavor ``poly``)."""

    flavor: str
    p: int
    n: int
    q: int = field(init=False)
    N: int = field(init=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("Loewy length must be >= 1")
        if self.flavor == ZMOD:
            if not _is_prime(self.p):
                raise ValueError("p must be prime")
        elif self.flavor == POLY:
            if _prime_power(self.p) is None:
                raise ValueError("q must be a prime power")
        else:
            raise ValueError("unknown flavor %r" % self.flavor)
        object.__setattr__(self, "q", self.p)
        object.__setattr__(self, "N", self.p ** self.n)

    # -- construction ---------------------------------------------------
    @classmethod
    def parse(cls, spec):
        """Parse ``zmod:<p>:<n>`` or ``poly:<q>:<n>``."""
        parts = spec.strip().split(":")
        if len(parts) != 3 or parts[0] not in (ZMOD, POLY):
            raise ValueError("bad ring spec %r" % spec)
        return cls(parts[0], int(parts[1]), int(parts[2]))

    @property
    def spec(self):
        return "%s:%d:%d" % (self.flavor, self.p, self.n)

    def __repr__(self):
        return "UniserialRing(%s)" % self.spec

    @property
    def char(self):
        return self.p if self.flavor == ZMOD else _prime_power(self.p)[0]

    def residue_field(self):
        return UniserialRing(self.flavor, self.p, 1)

    def with_length(self, n):
        return UniserialRing(self.flavor, self.p, n)

    def to_dict(self):
        return {"flavor": self.flavor, "p": self.p, "n": self.n}

    # -- flavor dependent arithmetic ------------------------------------
    @property
    def _dtype(self):
        return np.int64 if self.N < 2**31 else object

    def _digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        pw = self.q ** np.arange(self.n, dtype=np.int64)
        return (a[..., None] // pw) % self.q

    def _undigits(self, d):
        pw = self.q ** np.arange(self.n, dtype=np.int64)
        return (d * pw).sum(axis=-1)

    def _poly_add(self, a, b):
        add = _gf_tables(self.q)[0]
        return self._undigits(add[self._digits(a), self._digits(b)])

    def _poly_mul(self, a, b):
        add, mul = _gf_tables(self.q)[:2]
        da, db = self._digits(a), self._digits(b)
        da, db = np.broadcast_arrays(da, db)
        out = np.zeros(da.shape, dtype=np.int64)
        for i in range(self.n):
            for j in range(self.n - i):
                out[..., i + j] = add[out[..., i + j], mul[da[..., i], db[..., j]]]
        return self._undigits(out)

    def _poly_neg(self, a):
        neg = _gf_tables(self.q)[3]
        return self._undigits(neg[self._digits(a)])

    @property
    def _tables(self):
        return _ring_tables(self)

    def add(self, a, b):
        if self.flavor == ZMOD:
            return (np.asarray(a) + np.asarray(b)) % self.N if _arr(a, b) else (a + b) % self.N
        t = self._tables
        if t is not None:
            r = t[0][np.asarray(a), np.asarray(b)]
        else:
            r = self._poly_add(a, b)
        return r if _arr(a, b) else int(r)

    def neg(self, a):
        if self.flavor == ZMOD:
            return (-np.asarray(a)) % self.N if _arr(a) else (-a) % self.N
        t = self._tables
        r = t[2][np.asarray(a)] if t is not None else self._poly_neg(a)
        return r if _arr(a) else int(r)

    def sub(self, a, b):
        if self.flavor == ZMOD:
            return (np.asarray(a) - np.asarray(b)) % self.N if _arr(a, b) else (a - b) % self.N
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.flavor == ZMOD:
            if _arr(a, b):
                return (np.asarray(a, dtype=self._dtype) * np.asarray(b, dtype=self._dtype)) % self.N
            return (a * b) % self.N
        t = self._tables
        if t is not None:
            r = t[1][np.asarray(a), np.asarray(b)]
        else:
            r = self._poly_mul(a, b)
        return r if _arr(a, b) else int(r)

    # -- flavor independent ---------------------------------------------
    @property
    def one(self):
        return 1

    def pi_pow(self, k):
        """Code of the k-th power of the radical generator."""
        return self.q ** k if k < self.n else 0

    def valuation(self, a):
        """Largest k with pi^k | a; n for zero.  Works elementwise on arrays."""
        if _arr(a):
            a = np.asarray(a)
            v = np.zeros(a.shape, dtype=np.int64)
            for k in range(1, self.n + 1):
                v += (a % self.q ** k == 0)
            return v
        a = int(a)
        if a == 0:
            return self.n
        v = 0
        while a % self.q == 0:
            a //= self.q
            v += 1
        return v

    def is_unit(self, a):
        return self.valuation(a) == 0

    def mul_pi(self, a, k):
        """Multiply by pi^k."""
        if k >= self.n:
            return np.zeros_like(np.asarray(a)) if _arr(a) else 0
        return (np.asarray(a) * self.q ** k) % self.N if _arr(a) else (a * self.q ** k) % self.N

    def div_pi(self, a, k):
        """A solution x of pi^k x = a (requires valuation(a) >= k)."""
        return np.asarray(a) // self.q ** k if _arr(a) else a // self.q ** k

    def mod_pi(self, a, k):
        """Canonical representative of a modulo pi^k."""
        if k >= self.n:
            return a
        return np.asarray(a) % self.q ** k if _arr(a) else a % self.q ** k

    def residue(self, a):
        return np.asarray(a) % self.q if _arr(a) else a % self.q

    def unit_part(self, a):
        """u with a = pi^v u, v = valuation(a) (a nonzero)."""
        return self.div_pi(a, self.valuation(a))

    def inv(self, u):
        """Inverse of a unit (Newton iteration from the residue field)."""
        if self.flavor == ZMOD:
            if _arr(u):
                return np.vectorize(lambda x: pow(int(x), -1, self.N), otypes=[np.int64])(u)
            return pow(int(u), -1, self.N)
        gfinv = _gf_tables(self.q)[2]
        r = self.residue(u)
        if _arr(u) and np.any(np.asarray(r) == 0) or (not _arr(u) and r == 0):
            raise ZeroDivisionError("not a unit")
        v = gfinv[r] if _arr(u) else int(gfinv[r])
        two = self.add(1, 1)
        prec = 1
        while prec < self.n:
            v = self.mul(v, self.sub(two, self.mul(u, v)))
            prec *= 2
        return v

    def elements(self):
        return range(self.N)

    def units(self):
        return [a for a in range(self.N) if a % self.q]

    def random(self, rng, shape=None):
        return rng.integers(0, self.N, size=shape, dtype=np.int64) if shape is not None \
            else int(rng.integers(0, self.N))

    def fmt(self, a):
        """Human readable element."""
        a = int(a)
        if self.flavor == ZMOD:
            return str(a)
        terms = []
        for i in range(self.n):
            c = (a // self.q ** i) % self.q
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else "x^%d" % i)
                terms.append(mono if c == 1 and i else ("%d*%s" % (c, mono) if i else str(c)))
        return "+".join(terms) or "0"

    def from_coeffs(self, coeffs):
        """Element of the poly flavor from F_q coefficient codes (low degree first)."""
        return sum(int(c) * self.q ** i for i, c in enumerate(coeffs[: self.n]))

    # -- matrices -------------------------------------------------------
    def zeros(self, rows, cols):
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, k):
        return np.eye(k, dtype=np.int64)

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        m, k = A.shape
        k2, r = B.shape
        if k != k2:
            raise ValueError("shape mismatch")
        if self.flavor == ZMOD:
            if self.N ** 2 * max(k, 1) < 2**62:
                return (A @ B) % self.N
            return ((A.astype(object) @ B.astype(object)) % self.N).astype(np.int64)
        C = np.zeros((m, r), dtype=np.int64)
        for j in range(k):
            C = self.add(C, self.mul(A[:, j, None], B[None, j, :]))
        return C

    def matvec(self, A, x):
        return self.matmul(A, np.asarray(x, dtype=np.int64).reshape(-1, 1))[:, 0]


def _arr(*xs):
    return any(isinstance(x, np.ndarray) for x in xs)


@lru_cache(maxsize=None)
def _ring_tables(R):
    if R.flavor != POLY or R.N > _TABLE_LIMIT:
        return None
    a = np.arange(R.N, dtype=np.int64)
    A, B = np.meshgrid(a, a, indexing="ij")
    add = R._poly_add(A, B)
    mul = R._poly_mul(A, B)
    neg = R._poly_neg(a)
    return add, mul, neg


# ----------------------------------------------------------------------
# Smith normal form and linear systems


@dataclass
class SNF:
    """``U @ A @ V == D`` with explicit inverses ``Uinv``, ``Vinv``."""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    Uinv: np.ndarray
    Vinv: np.ndarray
    exponents: tuple


def smith_normal_form(R, A):
    """Smith normal form over R.

    Pivot of minimal valuation, ties broken by smallest (row, col).  The
    diagonal of D holds exact powers ``pi^e`` with ``e`` weakly increasing;
    ``exponents`` has one entry per diagonal slot (``n`` for zero slots).
    """
    A = np.array(A, dtype=np.int64).reshape(np.shape(A)) if np.size(A) else \
        np.zeros(np.shape(A), dtype=np.int64)
    m, k = A.shape
    U, Uinv = R.eye(m), R.eye(m)
    V, Vinv = R.eye(k), R.eye(k)
    exps = []
    for t in range(min(m, k)):
        sub = A[t:, t:]
        vals = R.valuation(sub)
        v = int(vals.min())
        if v >= R.n:
            exps.extend([R.n] * (min(m, k) - t))
            break
        i, j = np.argwhere(vals == v)[0]
        i, j = int(i) + t, int(j) + t
        if i != t:
            A[[t, i]] = A[[i, t]]
            U[[t, i]] = U[[i, t]]
            Uinv[:, [t, i]] = Uinv[:, [i, t]]
        if j != t:
            A[:, [t, j]] = A[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
            Vinv[[t, j]] = Vinv[[j, t]]
        u = R.div_pi(int(A[t, t]), v)
        ui = R.inv(u)
        if u != 1:
            A[:, t] = R.mul(A[:, t], ui)
            V[:, t] = R.mul(V[:, t], ui)
            Vinv[t] = R.mul(Vinv[t], u)
        for r in range(t + 1, m):
            if A[r, t]:
                f = R.div_pi(int(A[r, t]), v)
                A[r] = R.sub(A[r], R.mul(f, A[t]))
                U[r] = R.sub(U[r], R.mul(f, U[t]))
                Uinv[:, t] = R.add(Uinv[:, t], R.mul(f, Uinv[:, r]))
        for c in range(t + 1, k):
            if A[t, c]:
                g = R.div_pi(int(A[t, c]), v)
                A[:, c] = R.sub(A[:, c], R.mul(g, A[:, t]))
                V[:, c] = R.sub(V[:, c], R.mul(g, V[:, t]))
                Vinv[t] = R.add(Vinv[t], R.mul(g, Vinv[c]))
        exps.append(v)
    return SNF(U, A, V, Uinv, Vinv, tuple(exps))


def snf_exponents(R, A):
    return smith_normal_form(R, A).exponents


@dataclass
class Solution:
    """All X with A X = B: ``particular + (Λ-span of kernel columns)``."""

    particular: np.ndarray
    kernel: np.ndarray


def solve_linear(R, A, B):
    """Solve ``A X = B``.  Returns a Solution or None (no solution)."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    m, k = A.shape
    r = B.shape[1]
    s = smith_normal_form(R, A)
    C = R.matmul(s.U, B) if m else np.zeros((0, r), dtype=np.int64)
    Y = np.zeros((k, r), dtype=np.int64)
    kern = []
    d = min(m, k)
    for i in range(d):
        e = s.exponents[i]
        if e >= R.n:
            if np.any(C[i]):
                return None
            kern.append(i)
            continue
        if np.any(R.valuation(C[i]) < e):
            return None
        Y[i] = R.div_pi(C[i], e)
    if m > k and np.any(C[k:]):
        return None
    X = R.matmul(s.V, Y) if k else Y
    cols = []
    for i in range(d):
        e = s.exponents[i]
        if 0 < e:
            cols.append(R.mul_pi(s.V[:, i], R.n - e) if e < R.n else s.V[:, i])
    for i in range(d, k):
        cols.append(s.V[:, i])
    K = np.array(cols, dtype=np.int64).T if cols else np.zeros((k, 0), dtype=np.int64)
    return Solution(X, K)


def kernel(R, A):
    """Generators (columns) of {x : A x = 0}."""
    A = np.asarray(A, dtype=np.int64)
    return solve_linear(R, A, np.zeros((A.shape[0], 1), dtype=np.int64)).kernel


def diag_pi(R, moduli):
    """Diagonal matrix of pi^{a_i}."""
    return np.diag([R.pi_pow(a) for a in moduli]).astype(np.int64).reshape(len(moduli), len(moduli))


def solve_mod(R, A, b, moduli):
    """Solve ``A x = b`` where row i is read modulo pi^{moduli[i]}.

    Returns (particular, kernel) for the unknowns x only, or None.
    """
    A = np.asarray(A, dtype=np.int64)
    m, k = A.shape
    big = np.hstack([A, diag_pi(R, moduli)])
    sol = solve_linear(R, big, b)
    if sol is None:
        return None
    return Solution(sol.particular[:k], sol.kernel[:k])


def howell_form(R, rows):
    """Canonical generating rows of the row span of ``rows`` in Λ^k.

    Pivots are exact powers of pi, entries above a pivot are reduced modulo
    it, and each row span is closed under the Howell property so the result
    depends only on the span.
    """
    rows = np.asarray(rows, dtype=np.int64)
    k = rows.shape[1] if rows.ndim == 2 else 0
    pool = [r.copy() for r in rows if np.any(r)]
    piv = []
    for c in range(k):
        if not pool:
            break
        vals = [R.valuation(int(r[c])) for r in pool]
        v = min(vals)
        if v >= R.n:
            continue
        idx = vals.index(v)
        row = pool.pop(idx)
        u = R.div_pi(int(row[c]), v)
        if u != 1:
            row = R.mul(row, R.inv(u))
        newpool = []
        for r in pool:
            if r[c]:
                r = R.sub(r, R.mul(R.div_pi(int(r[c]), v), row))
            if np.any(r):
                newpool.append(r)
        if v > 0:
            extra = R.mul_pi(row, R.n - v)
            if np.any(extra):
                newpool.append(extra)
        pool = newpool
        piv.append((c, v, row))
    out = [row for _, _, row in piv]
    for i, (c, v, row) in enumerate(piv):
        for j in range(i):
            e = int(out[j][c])
            qq = R.div_pi(e, v)
            if qq:
                out[j] = R.sub(out[j], R.mul(qq, out[i]))
        out[i] = out[i]
    if not out:
        return np.zeros((0, k), dtype=np.int64)
    return np.array(out, dtype=np.int64)
