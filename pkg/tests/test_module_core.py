import itertools

import numpy as np
import pytest

from artifact.ring_core import UniserialRing
from artifact.module_core import (
    FinModule, ModHom, parse_partition, fmt_partition, span_type, quotient_exponents,
    canonical_span, in_span, intersect, kernel, image, preimage, cokernel, rad_pow, soc_pow,
    direct_sum, hom_basis, hom_span_length, inverse_hom, ar_sequence_mod, enumerate_span,
)
from oracles import zmod_span, _maps

R = UniserialRing.parse("zmod:2:3")
AMBIENTS = [(3,), (2, 1), (3, 1), (3, 2), (2, 2), (3, 2, 1)]


def group_type(p, parts, S):
    """Partition of a finite abelian p-group S from the sizes of p^j S."""
    mods = [p ** a for a in parts]
    sizes = []
    for j in range(max(parts, default=0) + 1):
        sizes.append(len({tuple((p ** j * x) % m for x, m in zip(s, mods)) for s in S}))
    # number of parts >= j+1 is log_p(|p^j S| / |p^{j+1} S|)
    counts = [round(np.log(sizes[j] / sizes[j + 1]) / np.log(p)) for j in range(len(sizes) - 1)]
    out = []
    for j, c in enumerate(counts):
        nxt = counts[j + 1] if j + 1 < len(counts) else 0
        out += [j + 1] * (c - nxt)
    return tuple(sorted(out, reverse=True))


def random_gens(rng, parts, k):
    return np.array([[int(rng.integers(0, 2 ** a)) for _ in range(k)] for a in parts],
                    dtype=np.int64).reshape(len(parts), k)


def test_partitions():
    assert parse_partition("62") == (6, 2)
    assert parse_partition("2,6") == (6, 2)
    assert parse_partition("-") == ()
    assert fmt_partition((6, 4, 2), compact=True) == "642"
    assert fmt_partition((), compact=True) == "-"


@pytest.mark.parametrize("parts", AMBIENTS)
def test_span_and_quotient_types_brute_force(parts):
    rng = np.random.default_rng(len(parts) * 7 + sum(parts))
    whole = np.eye(len(parts), dtype=np.int64)
    for _ in range(25):
        G = random_gens(rng, parts, int(rng.integers(0, 3)))
        S = zmod_span(2, parts, G.T)
        assert span_type(R, parts, G) == group_type(2, parts, S)
        # quotient: |p^j (M/S)| = |p^j M + S| / |S|
        quo_sizes = []
        for j in range(R.n + 1):
            cols = list((2 ** j * whole).T) + list(G.T)
            quo_sizes.append(len(zmod_span(2, parts, cols)) // len(S))
        q = quotient_exponents(R, parts, G)
        for j in range(R.n + 1):
            assert quo_sizes[j] == 2 ** sum(max(d - j, 0) for d in q)


@pytest.mark.parametrize("parts", AMBIENTS)
def test_membership_canonical_form_and_intersection(parts):
    rng = np.random.default_rng(sum(parts) + 100)
    for _ in range(20):
        G = random_gens(rng, parts, 2)
        H = random_gens(rng, parts, 2)
        SG, SH = zmod_span(2, parts, G.T), zmod_span(2, parts, H.T)
        v = random_gens(rng, parts, 1)
        mods = [2 ** a for a in parts]
        assert in_span(R, parts, G, v) == (tuple(int(x) % m for x, m in zip(v[:, 0], mods)) in SG)
        # canonical form is a function of the span
        mix = np.hstack([G, (G[:, :1] * 3 + G[:, 1:] * 2), G[:, ::-1]])
        assert np.array_equal(canonical_span(R, parts, G), canonical_span(R, parts, mix))
        assert zmod_span(2, parts, canonical_span(R, parts, G).T) == SG
        assert zmod_span(2, parts, intersect(R, parts, G, H).T) == SG & SH


@pytest.mark.parametrize("src,tgt", [((3,), (2, 1)), ((2, 1), (3, 2)), ((3, 2), (3, 1)), ((2, 2), (2,))])
def test_kernel_image_cokernel_preimage(src, tgt):
    M, N = FinModule(R, src), FinModule(R, tgt)
    maps = list(_maps(2, src, tgt))
    assert len(maps) == 2 ** sum(min(a, b) for a in src for b in tgt)
    whole = zmod_span(2, src, np.eye(len(src), dtype=np.int64))
    mods_t = [2 ** b for b in tgt]
    for F in maps[:: max(1, len(maps) // 40)]:
        f = ModHom(M, N, F)
        img = {tuple(int(v) % m for v, m in zip(F @ np.array(s), mods_t)) for s in whole}
        ker = {s for s in whole if not any(int(v) % m for v, m in zip(F @ np.array(s), mods_t))}
        K, k = kernel(f)
        I, i = image(f)
        C, c = cokernel(f)
        assert 2 ** K.length == len(ker)
        assert 2 ** I.length == len(img)
        assert I.length + C.length == N.length
        assert (c @ f).is_zero() and (f @ k).is_zero()
        assert zmod_span(2, src, k.matrix.T) == frozenset(ker)
        H = np.eye(len(tgt), dtype=np.int64)[:, :1]
        pre = zmod_span(2, src, preimage(f, H).T)
        lineH = zmod_span(2, tgt, H.T)
        assert pre == frozenset(s for s in whole
                                if tuple(int(v) % m for v, m in zip(F @ np.array(s), mods_t)) in lineH)


def test_radical_and_socle_layers():
    M = FinModule(R, (3, 2, 1))
    whole = zmod_span(2, M.parts, np.eye(3, dtype=np.int64))
    mods = [8, 4, 2]
    for m in range(4):
        _, r = rad_pow(M, m)
        _, s = soc_pow(M, m)
        assert zmod_span(2, M.parts, r.matrix.T) == frozenset(
            tuple((2 ** m * x) % q for x, q in zip(v, mods)) for v in whole)
        assert zmod_span(2, M.parts, s.matrix.T) == frozenset(
            v for v in whole if not any((2 ** m * x) % q for x, q in zip(v, mods)))


def test_direct_sum_and_hom_counts():
    A, B = FinModule(R, (2,)), FinModule(R, (3, 1))
    S, incs, projs = direct_sum([A, B])
    assert S.parts == (3, 2, 1)
    for i, p in zip(incs, projs):
        assert p @ i == ModHom.identity(i.source)
    assert (projs[0] @ incs[1]).is_zero()
    basis = hom_basis(B, S)
    assert 2 ** hom_span_length(B, S, basis) == len(list(_maps(2, B.parts, S.parts)))


def test_inverse_and_enumerate_span():
    M = FinModule(R, (3, 1))
    f = ModHom(M, M, [[3, 4], [1, 1]])
    g = inverse_hom(f)
    assert g @ f == ModHom.identity(M)
    G = np.array([[2], [1]])
    got = {tuple(v) for v in enumerate_span(R, M.parts, G)}
    assert got == set(zmod_span(2, M.parts, G.T))


@pytest.mark.parametrize("spec,c", [("zmod:2:3", 1), ("zmod:2:3", 2), ("poly:3:4", 3)])
def test_module_ar_sequence_is_exact(spec, c):
    T = ar_sequence_mod(UniserialRing.parse(spec), c)
    assert T.is_exact()
    with pytest.raises(ValueError):
        ar_sequence_mod(UniserialRing.parse(spec), UniserialRing.parse(spec).n)


def test_divisibility_enforced():
    with pytest.raises(ValueError):
        ModHom(FinModule(R, (1,)), FinModule(R, (3,)), [[1]])
    ModHom(FinModule(R, (1,)), FinModule(R, (3,)), [[4]])
    assert list(itertools.islice(_maps(2, (1,), (3,)), 0, 3))[1][0, 0] == 4
