import random
from collections import Counter
from math import lcm

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from coverforge import constructors as K
from coverforge.embed import is_isomorphic
from coverforge.errors import DegreeMismatch, InvalidParameter, NotNormal, OrderExceedsLimit
from coverforge.groups import (center, contains, elements, frattini_subgroup, group_order,
                               maximal_subgroups, normal_subgroups, quotient, structure_report,
                               subgroup_lattice, sylow_subgroup)
from coverforge.perm import Permutation, PermGroup, compose, direct_product, inverse


def perm_strategy(n):
    return st.permutations(range(n)).map(Permutation)


# permutations -------------------------------------------------------------

@given(st.integers(1, 9).flatmap(lambda n: perm_strategy(n)))
def test_inverse_composes_to_identity(p):
    assert compose(p, inverse(p)).is_identity()
    assert compose(inverse(p), p).is_identity()


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(perm_strategy(n), perm_strategy(n), perm_strategy(n))))
def test_composition_is_associative_and_acts_left_to_right(t):
    p, q, r = t
    assert (p * q) * r == p * (q * r)
    for x in range(p.degree):
        assert (p * q)(x) == q(p(x))


@given(st.integers(1, 9).flatmap(lambda n: perm_strategy(n)))
def test_order_and_power(p):
    k = p.order()
    assert (p ** k).is_identity()
    assert all(not (p ** j).is_identity() for j in range(1, k))
    assert p ** -1 == ~p


def test_non_bijection_rejected():
    with pytest.raises(InvalidParameter):
        Permutation([0, 0, 1])
    with pytest.raises(DegreeMismatch):
        Permutation([1, 0]) * Permutation([0, 1, 2])


# orders and membership ----------------------------------------------------

def test_order_examples():
    assert group_order(K.alt(5)) == 60
    assert group_order(K.semidihedral(16)) == 16
    assert group_order(K.m12()) == 95040 == 239500800 // 2520


@st.composite
def small_perm_groups(draw):
    n = draw(st.integers(2, 7))
    gens = draw(st.lists(perm_strategy(n), min_size=1, max_size=3))
    return gens


@settings(max_examples=60, deadline=None)
@given(small_perm_groups())
def test_chain_order_matches_closure(gens):
    G = PermGroup(gens)
    size = oracles.closure_size([g.images for g in gens])
    assert G.order() == size
    assert all(G.contains(g) for g in gens)


def test_chain_order_matches_closure_fixed_examples():
    # a few larger groups, still under 2000 elements
    for G in (K.psl2(7), K.sym(6), K.heisenberg(3), K.semidihedral(64), K.affine_frobenius(2, 5)):
        assert G.order() <= 2000
        assert G.order() == oracles.closure_size([g.images for g in G.generators])


def test_contains_examples():
    C6 = K.cyclic(6)
    assert contains(C6, C6.generators[0] ** 2)
    A4 = K.alt(4)
    assert not contains(A4, Permutation.from_cycles(4, (0, 1, 2, 3)))
    SD = K.semidihedral(16)
    assert contains(SD, SD.generators[0] ** 4)
    with pytest.raises(DegreeMismatch):
        contains(A4, Permutation.identity(5))


def test_elements_examples():
    assert len(elements(K.cyclic(3), 10)) == 3
    els = elements(K.dihedral(8), 10)
    assert len(els) == 8
    assert els == sorted(els, key=lambda p: p.images)
    with pytest.raises(OrderExceedsLimit):
        elements(K.alt(5), 10)


# lattice ------------------------------------------------------------------

def test_lattice_examples():
    L = subgroup_lattice(K.cyclic(6))
    assert sorted(L.orders) == [1, 2, 3, 6]
    assert len(subgroup_lattice(K.sym(3))) == 6
    assert len(subgroup_lattice(K.quaternion(8))) == 6
    # brute-force closure over Q8's element subsets
    T, _ = oracles.perm_table([g.images for g in K.quaternion(8).generators])
    assert len(oracles.all_subgroups(T)) == 6


def test_lattice_counts_from_external_oracle():
    # reference counts computed offline with GAP's LatticeSubgroups
    assert len(subgroup_lattice(K.alt(5))) == 59
    assert len(subgroup_lattice(K.sym(4))) == 30
    assert len(subgroup_lattice(K.psl2(8))) == 386
    G = direct_product(K.semidihedral(32), K.cyclic(2))
    assert len(subgroup_lattice(G)) == 105
    assert len(normal_subgroups(G)) == 25


@pytest.mark.slow
def test_psl2_13_lattice_from_external_oracle():
    L = subgroup_lattice(K.psl2(13))
    assert len(L) == 942
    assert sum(L.is_maximal) == 274


def test_lattice_invariants_and_order_cap():
    G = K.sym(4)
    L = subgroup_lattice(G)
    assert L.orders[0] == 1 and L.orders[-1] == 24
    assert all(24 % o == 0 for o in L.orders)
    assert L.orders == sorted(L.orders)
    capped = subgroup_lattice(G, order_cap=4)
    assert sorted(capped.orders) == sorted(o for o in L.orders if o <= 4)


def _brute_lattice_check(G):
    T, _ = oracles.perm_table([g.images for g in G.generators])
    subs = oracles.all_subgroups(T)
    maxes = oracles.lattice_maximal(T)
    normals = [S for S in subs if oracles.is_normal(T, S)]
    L = subgroup_lattice(G)
    assert len(L) == len(subs)
    assert sum(L.is_maximal) == len(maxes)
    assert sum(L.is_normal) == len(normals)
    assert Counter(L.orders) == Counter(len(S) for S in subs)
    assert Counter(H.order() for H, m in zip(L.subgroups, L.is_maximal) if m) == \
        Counter(len(S) for S in maxes)


@pytest.mark.parametrize("name", ["S4", "D12", "Q16", "A4xC2", "C2xC2xC2", "SD16", "D10xC2",
                                  "AF(2,3)", "Heis3"])
def test_lattice_flags_match_brute_force(name):
    from coverforge.expr import parse_group
    _brute_lattice_check(parse_group(name))


def test_lattice_flags_match_brute_force_catalog_sample(cat):
    rng = random.Random(7)
    entries = [e for e in cat.sorted_entries() if e.order <= 48]
    for e in rng.sample(entries, 20):
        _brute_lattice_check(e.group())


def test_lattice_independent_of_generator_order():
    G = K.sym(4)
    H = PermGroup(list(reversed(G.generators)), G.degree)
    a = [sorted(x.images for x in S.elements()) for S in subgroup_lattice(G).subgroups]
    b = [sorted(x.images for x in S.elements()) for S in subgroup_lattice(H).subgroups]
    assert a == b


def test_lattice_limit():
    with pytest.raises(OrderExceedsLimit):
        subgroup_lattice(K.alt(7))


# maximal and normal subgroups ---------------------------------------------

@pytest.mark.parametrize("n", [4, 5, 6])
def test_maximal_subgroups_of_semidihedral(n):
    maxes = maximal_subgroups(K.semidihedral(2 ** n))
    assert len(maxes) == 3
    m = 2 ** (n - 1)
    kinds = [K.cyclic(m), K.dihedral(m), K.quaternion(m)]
    for X in kinds:
        assert sum(is_isomorphic(M, X) for M in maxes) == 1


def test_maximal_subgroups_examples():
    assert len(maximal_subgroups(K.cyclic(9))) == 1
    maxes = maximal_subgroups(K.affine_frobenius(2, 5))
    assert Counter(M.order() for M in maxes) == {16: 1, 5: 16}


def test_maximal_subgroups_of_large_p_group():
    G = K.sylow_wreath_tower(2, 4)  # order 2^15, above the lattice limit
    maxes = maximal_subgroups(G)
    assert all(M.order() * 2 == G.order() for M in maxes)
    # hyperplanes of (Z_2)^d number 2^d - 1; the tower needs 4 generators
    assert len(maxes) == 2 ** 4 - 1


def test_normal_subgroup_examples():
    assert sorted(N.order() for N in normal_subgroups(K.sym(3))) == [1, 3, 6]
    assert sorted(N.order() for N in normal_subgroups(K.alt(5))) == [1, 60]
    G = direct_product(K.semidihedral(32), K.cyclic(2))
    Z = center(G)
    order2 = [N for N in normal_subgroups(G) if N.order() == 2]
    assert len(order2) == 3
    assert all(all(Z.contains(g) for g in N.generators) for N in order2)


# quotients ----------------------------------------------------------------

def test_quotient_examples():
    C6 = K.cyclic(6)
    N = C6.subgroup([C6.generators[0] ** 2])
    assert is_isomorphic(quotient(C6, N), K.cyclic(2))
    Q8 = K.quaternion(8)
    Q = quotient(Q8, center(Q8))
    assert is_isomorphic(Q, direct_product(K.cyclic(2), K.cyclic(2)))
    # brute-force quotient of the Q8 table agrees
    T, _ = oracles.perm_table([g.images for g in Q8.generators])
    Z = [S for S in oracles.all_subgroups(T) if len(S) == 2][0]
    assert sorted(oracles.element_orders(oracles.quotient_table(T, Z))) == [1, 2, 2, 2]


def test_quotient_of_sd32xc2_by_central_involution():
    SD = K.semidihedral(32)
    G = direct_product(SD, K.cyclic(2))
    a = G.generators[0]
    z = a ** 8  # the involution in the cyclic maximal subgroup of SD32
    Q = quotient(G, G.subgroup([z]))
    assert is_isomorphic(Q, direct_product(K.dihedral(16), K.cyclic(2)))


def test_quotient_requires_normal():
    S3 = K.sym(3)
    H = S3.subgroup([Permutation.from_cycles(3, (0, 1))])
    with pytest.raises(NotNormal):
        quotient(S3, H)


def test_quotient_orders_over_catalog(cat):
    for e in cat.sorted_entries():
        if e.order > 64:
            break
        G = e.group()
        for N in normal_subgroups(G):
            assert quotient(G, N).order() * N.order() == G.order()


# structure ----------------------------------------------------------------

def test_structure_examples():
    assert structure_report(K.alt(5)).is_perfect
    assert structure_report(K.dihedral(10)).is_soluble
    r = structure_report(direct_product(K.cyclic(4), K.cyclic(2)))
    assert r.abelian_invariants[2] == (2, 1)


@pytest.mark.parametrize("name", ["A5", "S4", "SD16", "Q8xC3", "PSL2(7)", "AF(2,5)", "C1"])
def test_structure_report_invariants(name):
    from coverforge.expr import parse_group
    r = structure_report(parse_group(name))
    assert sum(r.order_spectrum.values()) == r.order
    assert r.is_soluble == (r.derived_series_orders[-1] == 1)
    assert r.is_perfect == (len(r.derived_series_orders) == 1)
    assert r.order % r.center_order == 0 and r.order % r.frattini_order == 0


def test_structure_report_beyond_lattice_limit():
    r = structure_report(K.alt(7))
    assert r.is_perfect and not r.is_soluble and r.order_spectrum is None
    r = structure_report(K.sylow_wreath_tower(2, 4))
    assert r.is_soluble and r.is_nilpotent


def _convolve(sa, sb):
    out = Counter()
    for a, x in sa.items():
        for b, y in sb.items():
            out[lcm(a, b)] += x * y
    return dict(out)


def test_spectrum_of_product_is_lcm_convolution(cat):
    rng = random.Random(11)
    entries = [e for e in cat.sorted_entries() if e.order <= 24]
    for _ in range(20):
        a, b = rng.sample(entries, 2)
        A, B = a.group(), b.group()
        got = structure_report(direct_product(A, B)).order_spectrum
        want = _convolve(structure_report(A).order_spectrum, structure_report(B).order_spectrum)
        assert got == want


def test_frattini_of_2_groups_matches_intersection(cat):
    for e in cat.sorted_entries():
        if e.order > 32:
            break
        if e.order & (e.order - 1):
            continue
        G = e.group()
        T, _ = oracles.perm_table([g.images for g in G.generators])
        maxes = oracles.lattice_maximal(T) if len(T) > 1 else [frozenset([0])]
        inter = frozenset.intersection(*maxes)
        assert frattini_subgroup(G).order() == len(inter)


# sylow and products -------------------------------------------------------

def test_sylow_examples():
    assert sylow_subgroup(K.alt(5), 2).order() == 4
    assert is_isomorphic(sylow_subgroup(K.cyclic(12), 3), K.cyclic(3))
    assert sylow_subgroup(K.affine_frobenius(2, 5), 5).order() == 5
    with pytest.raises(InvalidParameter):
        sylow_subgroup(K.alt(5), 4)


def test_direct_product_examples():
    assert is_isomorphic(direct_product(K.cyclic(2), K.cyclic(3)), K.cyclic(6))
    assert direct_product(K.semidihedral(16), K.cyclic(2)).order() == 32
    assert direct_product(K.alt(4), K.cyclic(5)).order() == 60


def test_hyperplane_route_matches_table_route(cat):
    from coverforge.groups import _p_group_maximals
    rng = random.Random(3)
    sample = rng.sample([e for e in cat.sorted_entries() if e.order == 64], 15)
    sample += [e for e in cat.sorted_entries() if e.order == 81][:5]
    for e in sample:
        G = e.group()
        p = 2 if e.order == 64 else 3
        a = sorted(sorted(x.images for x in M.elements()) for M in _p_group_maximals(G, p))
        b = sorted(sorted(x.images for x in M.elements()) for M in maximal_subgroups(G))
        assert a == b
