import math
from itertools import combinations_with_replacement, product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coverforge import constructors as K
from coverforge.abelian import (EULER_GAMMA, A, AbelianGroup, AbelianPGroup, Partition,
                                abelian_embeds, cover_partition_all, cyclic_product, dirichlet_gap, f,
                                min_abelian_p_cover, min_nilpotent_cover, partitions)
from coverforge.covers import FamilySpec, is_cover
from coverforge.embed import embeds, is_isomorphic
from coverforge.errors import EmptyFamily, InvalidParameter, NotNilpotent
from coverforge.numtheory import factorize
from coverforge.perm import direct_product


def P(*parts):
    return Partition(parts)


def G(p, *parts):
    return AbelianPGroup(p, Partition(parts))


def test_partition_canonical_form():
    assert P(3, 1, 0, 0).parts == (3, 1)
    assert str(P(2, 1)) == "2,1" and Partition.parse("2,1") == P(2, 1)
    assert Partition.parse("") == P()
    for bad in ((1, 2), (2, -1)):
        with pytest.raises(InvalidParameter):
            Partition(bad)
    with pytest.raises(InvalidParameter):
        Partition.parse("a,b")
    assert G(3, 2, 1).order == 27
    assert AbelianGroup({2: (2, 1), 3: (1,)}).order == 24


def test_embedding_examples():
    assert abelian_embeds(G(2, 2, 1), G(2, 3, 1))
    assert not abelian_embeds(G(2, 2, 2), G(2, 3, 1))


def test_min_cover_examples():
    assert min_abelian_p_cover([G(2, 2), G(2, 1, 1)]).partition == P(2, 1)
    assert min_abelian_p_cover([G(5, 3, 2)]).partition == P(3, 2)
    assert min_abelian_p_cover([G(3, 3), G(3, 2, 1), G(3, 1, 1, 1)]).partition == P(3, 1, 1)
    with pytest.raises(EmptyFamily):
        min_abelian_p_cover([])
    with pytest.raises(InvalidParameter):
        min_abelian_p_cover([G(2, 1), G(3, 1)])


def all_partitions_up_to(w):
    return [Partition(q) for n in range(w + 1) for q in partitions(n)]


def test_min_cover_is_least_weight_exhaustive():
    """For every family of partitions of weight <= 4 (up to 3 members), the
    slot-wise maximum covers, is non-increasing, and nothing lighter covers."""
    pool = [q for q in all_partitions_up_to(4) if q.parts]
    candidates = all_partitions_up_to(8)
    for k in (1, 2, 3):
        for family in combinations_with_replacement(pool, k):
            F = [AbelianPGroup(2, q) for q in family]
            c = min_abelian_p_cover(F)
            parts = c.partition.parts
            assert all(a >= b for a, b in zip(parts, parts[1:]))
            assert all(abelian_embeds(B, c) for B in F)
            for D in candidates:
                if D.weight < c.partition.weight:
                    assert not all(abelian_embeds(B, AbelianPGroup(2, D)) for B in F)


@given(st.lists(st.integers(0, 5), min_size=1, max_size=5), st.lists(st.integers(0, 5), min_size=1, max_size=5))
def test_min_cover_of_two_dominates_both(a, b):
    pa = Partition(tuple(sorted(a, reverse=True)))
    pb = Partition(tuple(sorted(b, reverse=True)))
    c = min_abelian_p_cover([AbelianPGroup(3, pa), AbelianPGroup(3, pb)])
    assert c.partition.weight <= pa.weight + pb.weight
    assert abelian_embeds(AbelianPGroup(3, pa), c) and abelian_embeds(AbelianPGroup(3, pb), c)


@pytest.mark.parametrize("p", [2, 3])
def test_embedding_agrees_with_permutation_embeds(p):
    pool = [q for q in all_partitions_up_to(6) if q.parts]
    if p == 3:
        pool = [q for q in pool if q.weight <= 6]
    realized = {q: AbelianPGroup(p, q).realize() for q in pool}
    for B in pool:
        for A_ in pool:
            if B.weight > A_.weight:
                continue
            want = abelian_embeds(AbelianPGroup(p, B), AbelianPGroup(p, A_))
            got = embeds(realized[B], realized[A_])
            assert got == want, (p, B, A_)


def test_f_values():
    assert [f(n) for n in range(1, 11)] == [1, 3, 5, 8, 10, 14, 16, 20, 23, 27]
    assert f(12) == sum(12 // k for k in range(1, 13)) == 35
    assert 2 ** f(2) == 8 and 2 ** f(3) == 32
    with pytest.raises(InvalidParameter):
        f(0)


def test_f_is_weight_of_cover_partition():
    for n in range(1, 201):
        assert f(n) == cover_partition_all(n).weight


def test_cover_partition_examples():
    assert cover_partition_all(2) == P(2, 1)
    assert cover_partition_all(3) == P(3, 1, 1)


def test_cover_partition_matches_brute_force():
    for n in range(1, 13):
        fam = [AbelianPGroup(2, Partition(q)) for q in partitions(n)]
        assert min_abelian_p_cover(fam).partition == cover_partition_all(n)


def test_partitions_counts():
    # p(n) for n = 0..12, recomputed by the pentagonal recurrence
    def pent(n):
        p = [1] + [0] * n
        for m in range(1, n + 1):
            k, s = 1, 0
            while True:
                g1, g2 = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
                if g1 > m:
                    break
                sign = 1 if k % 2 else -1
                s += sign * p[m - g1]
                if g2 <= m:
                    s += sign * p[m - g2]
                k += 1
            p[m] = s
        return p
    assert [len(list(partitions(n))) for n in range(13)] == pent(12)


def _squarefree(n):
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def test_A_values():
    assert A(30) == 30 and A(4) == 8 and A(12) == 24 and A(1) == 1
    for n in range(1, 1001):
        if _squarefree(n):
            assert A(n) == n


def test_A_realizes_a_cover_of_all_abelian_groups_of_order_n():
    for n in (4, 8, 12, 16):
        # every abelian group of order n embeds in the group of order A(n)
        fac = factorize(n)
        choices = [[(p, q) for q in partitions(m)] for p, m in fac.items()]
        groups = [AbelianGroup(dict(c)) for c in product(*choices)]
        big = AbelianGroup({p: cover_partition_all(m) for p, m in fac.items()})
        assert big.order == A(n)
        for X in groups:
            assert embeds(X.realize(), big.realize())


def test_dirichlet_gap_bounded():
    N = 10 ** 6
    d = np.zeros(N + 1, dtype=np.int64)
    for k in range(1, N + 1):  # divisor counts by sieve: a second route to f
        d[k::k] += 1
    fs = np.cumsum(d)
    for n in (1, 10, 1000, 12345, N):
        assert fs[n] == f(n)
    n = np.arange(2, N + 1, dtype=np.float64)
    gap = (fs[2:] - n * (np.log(n) + 2 * EULER_GAMMA - 1)) / np.sqrt(n)
    assert np.all(np.abs(gap) <= 3)
    assert math.isclose(dirichlet_gap(1000), float(gap[998]), rel_tol=1e-9)
    assert np.all(np.diff(fs[1:]) >= 1)


# nilpotent covers ------------------------------------------------------------------

def test_nilpotent_cover_cyclic():
    Gc, detail = min_nilpotent_cover([K.cyclic(12), K.cyclic(18)])
    assert is_isomorphic(Gc, K.cyclic(36))
    assert set(detail.values()) == {"abelian"}


def test_nilpotent_cover_abelian_2_groups(cat):
    Gc, _ = min_nilpotent_cover([direct_product(K.cyclic(4), K.cyclic(2)), K.cyclic(8)])
    assert Gc.order() == 16 and is_isomorphic(Gc, cyclic_product([8, 2]))
    F = FamilySpec([direct_product(K.cyclic(4), K.cyclic(2)), K.cyclic(8)])
    assert not any(is_cover(e.group(), F) for e in cat.sorted_entries() if e.order == 8)


def test_nilpotent_cover_of_order_8(cat):
    F = FamilySpec.all_of_order(8, cat)
    Gc, detail = min_nilpotent_cover(F.members, cat)
    assert Gc.order() == 32 and detail == {2: "catalog"}
    assert is_cover(Gc, F)


def test_nilpotent_cover_mixed_primes(cat):
    Gc, detail = min_nilpotent_cover([K.quaternion(8), K.cyclic(3), K.dihedral(8)], cat)
    assert Gc.order() == 16 * 3
    assert detail == {2: "catalog", 3: "abelian"}


def test_nilpotent_cover_rejects_non_nilpotent():
    with pytest.raises(NotNilpotent):
        min_nilpotent_cover([K.sym(3)])
    with pytest.raises(EmptyFamily):
        min_nilpotent_cover([])
