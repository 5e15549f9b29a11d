import itertools

import numpy as np
import pytest

from artifact.ring_core import UniserialRing, smith_normal_form, solve_linear, kernel, howell_form
from oracles import RefRing, grid, apply_all, as_set, encode, solution_sets, coset, matmul

SMALL = ["zmod:2:1", "zmod:2:2", "zmod:2:3", "zmod:3:1", "zmod:5:1", "zmod:7:1",
         "poly:2:2", "poly:2:3", "poly:4:1"]
UP_TO_64 = ["zmod:2:4", "zmod:2:5", "zmod:2:6", "zmod:3:2", "zmod:3:3", "zmod:5:2", "zmod:7:2",
            "poly:2:4", "poly:2:6", "poly:3:2", "poly:3:3", "poly:4:2", "poly:4:3",
            "poly:5:2", "poly:7:2"]


def ref(R):
    return RefRing(R.flavor, R.q, R.n)


@pytest.mark.parametrize("spec", SMALL + UP_TO_64)
def test_arithmetic_matches_reference(spec):
    R = UniserialRing.parse(spec)
    F = ref(R)
    a = np.arange(R.N, dtype=np.int64)
    A, B = np.meshgrid(a, a, indexing="ij")
    assert np.array_equal(R.add(A, B), F.ADD)
    assert np.array_equal(R.mul(A, B), F.MUL)


@pytest.mark.parametrize("spec", ["zmod:2:6", "poly:3:3", "poly:4:2"])
def test_units_valuation_inverse(spec):
    R = UniserialRing.parse(spec)
    for a in range(R.N):
        v = R.valuation(a)
        # valuation = number of leading zero digits, n for zero
        digits = [(a // R.q ** i) % R.q for i in range(R.n)]
        assert v == next((i for i, d in enumerate(digits) if d), R.n)
        if v == 0:
            assert R.mul(a, R.inv(a)) == 1


def check_snf(R, F, A):
    s = smith_normal_form(R, A)
    m, k = np.shape(A)
    assert np.array_equal(matmul(F, matmul(F, s.U, A), s.V), s.D)
    assert np.array_equal(matmul(F, s.U, s.Uinv), np.eye(m, dtype=np.int64))
    assert np.array_equal(matmul(F, s.V, s.Vinv), np.eye(k, dtype=np.int64))
    d = min(m, k)
    off = s.D.copy()
    off[np.arange(d), np.arange(d)] = 0
    assert not off.any()
    assert list(s.exponents) == sorted(s.exponents)
    for i, e in enumerate(s.exponents):
        assert s.D[i, i] == (R.q ** e if e < R.n else 0)
    # brute force: |pi^j Im A| = prod q^(n - e_i - j)^+ for every j
    img = apply_all(F, A, grid(F, k))
    for j in range(R.n + 1):
        pj = R.q ** j if j < R.n else 0
        size = len(as_set(F, F.MUL[pj, img]))
        expect = 1
        for e in s.exponents:
            expect *= R.q ** max(R.n - e - j, 0)
        assert size == expect


def check_solve(R, F, A):
    sets = solution_sets(F, A)
    m = np.shape(A)[0]
    rhs = np.array(list(itertools.product(range(R.N), repeat=m)), dtype=np.int64)
    if len(rhs) > 64:
        # a spread-out sample of right-hand sides plus the whole image
        rhs = rhs[:: len(rhs) // 64]
    image = sorted(sets)
    # image points are all checked when few, else a spread-out sample
    codes = set(encode(F, rhs).tolist()) | set(image[:: max(1, len(image) // 64)])
    w = R.N ** np.arange(m)
    for c in sorted(codes):
        b = (c // w) % R.N
        sol = solve_linear(R, A, b)
        if c not in sets:
            assert sol is None
            continue
        assert sol is not None
        assert np.array_equal(coset(F, sol.particular[:, 0], sol.kernel), sets[c])


@pytest.mark.parametrize("spec", SMALL)
def test_exhaustive_small_systems(spec):
    """Every matrix with one row and at most 3 columns, every 2x1 and 2x2
    matrix when the ring has at most 4 elements, every 2x3 one when it has at
    most 3."""
    R = UniserialRing.parse(spec)
    F = ref(R)
    shapes = [(1, 1), (1, 2), (1, 3)] + ([(2, 1), (2, 2)] if R.N <= 4 else []) + \
        ([(2, 3)] if R.N <= 3 else [])
    for m, k in shapes:
        for entries in itertools.product(range(R.N), repeat=m * k):
            A = np.array(entries, dtype=np.int64).reshape(m, k)
            check_snf(R, F, A)
            check_solve(R, F, A)


def _random_matrix(R, rng, m, k):
    # unit times a random power of pi, so every valuation occurs
    units = R.units()
    return np.array([[R.mul(int(rng.choice(units)), R.pi_pow(int(rng.integers(0, R.n + 1))))
                      for _ in range(k)] for _ in range(m)], dtype=np.int64)


@pytest.mark.parametrize("spec", UP_TO_64)
def test_random_systems_up_to_64_elements(spec):
    """Seeded random systems with up to 3 equations and 3 unknowns."""
    R = UniserialRing.parse(spec)
    F = ref(R)
    rng = np.random.default_rng(sum(map(ord, spec)))
    count = 30 if R.N <= 27 else 12
    for t in range(count):
        m, k = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        if R.N ** k > 5000 and t % 2:
            k = 2
        A = _random_matrix(R, rng, m, k)
        check_snf(R, F, A)
        check_solve(R, F, A)


def test_kernel_generators():
    R = UniserialRing.parse("zmod:2:3")
    F = ref(R)
    A = np.array([[2, 4], [0, 6]])
    K = kernel(R, A)
    assert np.array_equal(coset(F, [0, 0], K), solution_sets(F, A)[0])


@pytest.mark.parametrize("spec", ["zmod:2:3", "poly:3:2"])
def test_howell_form_depends_only_on_span(spec):
    R = UniserialRing.parse(spec)
    F = ref(R)
    rng = np.random.default_rng(3)
    for _ in range(40):
        rows = rng.integers(0, R.N, size=(2, 2))
        H = howell_form(R, rows)
        # row span of H equals row span of rows
        assert np.array_equal(coset(F, [0, 0], np.asarray(H).reshape(-1, 2).T), coset(F, [0, 0], rows.T))
        # any other generating set of the same span gives the same form
        P = np.array([[1, int(rng.integers(0, R.N))], [0, 1]])
        rows2 = matmul(F, P, rows)
        assert np.array_equal(howell_form(R, rows2), H)


def test_parse_and_spec():
    assert UniserialRing.parse("poly:4:3").spec == "poly:4:3"
    with pytest.raises(ValueError):
        UniserialRing.parse("zmod:4:2")
    with pytest.raises(ValueError):
        UniserialRing.parse("zmod:2:0")
