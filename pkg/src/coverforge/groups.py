"""Structural operations on permutation groups.

Small groups (order up to ``LIMITS.lattice``) are handled through their
Cayley table; the results are handed back as :class:`PermGroup` objects that
carry the restricted table, so chained calls stay cheap.
"""
from dataclasses import dataclass, field
from itertools import product

from .cayley import CayleyTable, Sub
from .config import LIMITS
from .errors import DegreeMismatch, InvalidParameter, NotNormal, OrderExceedsLimit
from .numtheory import factorize, is_prime, p_part
from .perm import Permutation, PermGroup, direct_product  # noqa: F401 (re-export)


@dataclass
class SubgroupLattice:
    subgroups: list
    is_maximal: list
    is_normal: list

    @property
    def orders(self):
        return [H.order() for H in self.subgroups]

    def __len__(self):
        return len(self.subgroups)


@dataclass
class StructureReport:
    order: int
    center_order: int = None
    derived_series_orders: list = field(default_factory=list)
    is_perfect: bool = False
    is_soluble: bool = False
    is_nilpotent: bool = None
    abelian_invariants: dict = None
    order_spectrum: dict = None
    frattini_order: int = None

    def as_dict(self):
        d = dict(self.__dict__)
        if self.abelian_invariants is not None:
            d["abelian_invariants"] = {str(p): list(v) for p, v in self.abelian_invariants.items()}
        if self.order_spectrum is not None:
            d["order_spectrum"] = {str(k): v for k, v in self.order_spectrum.items()}
        return d


def group_order(G):
    return G.order()


def contains(G, g):
    return G.contains(g)


def elements(G, limit=None):
    return G.elements(limit)


def as_table(G, limit=None):
    """Cayley table of G, raising OrderExceedsLimit above the lattice limit."""
    return G.table(limit)


def sub_to_group(T, S, name=None):
    """PermGroup for a table subgroup; the restricted table comes along."""
    gens = [T.elements[g] for g in S.gens if g != 0]
    degree = T.elements[0].degree
    H = PermGroup(gens or [Permutation.identity(degree)], degree, name)
    H._table = T.restrict(S)
    return H


def group_to_sub(T, H):
    """Locate a subgroup H (given by permutations) inside G's table."""
    try:
        idx = [T.index_of(g) for g in H.generators]
    except KeyError:
        raise InvalidParameter("not a subgroup: a generator lies outside the group") from None
    except (AttributeError, TypeError):
        raise DegreeMismatch("subgroup and group act on different domains") from None
    return T.sub(idx)


def subgroup_lattice(G, order_cap=None, limit=None):
    T = as_table(G, limit)
    subs = T.subgroups(order_cap)
    return SubgroupLattice(
        [sub_to_group(T, S) for S in subs],
        [bool(S.is_maximal) for S in subs],
        [bool(S.is_normal) for S in subs],
    )


def maximal_subgroups(G, limit=None):
    """Maximal subgroups. p-groups above the lattice limit go through the
    hyperplanes of G/Phi(G), using stabilizer chains only."""
    limit = LIMITS.lattice if limit is None else limit
    n = G.order()
    if n > limit and len(factorize(n)) == 1:
        return _p_group_maximals(G, next(iter(factorize(n))))
    T = as_table(G, limit)
    return [sub_to_group(T, S) for S in T.maximal_subgroups()]


def _p_group_maximals(G, p):
    gens = [g for g in G.generators if not g.is_identity()]
    # Phi(G) = G'G^p for a p-group
    phi = _perm_normal_closure(G, [g ** p for g in gens] + [~a * ~b * a * b for a in gens for b in gens])
    target = G.order() // p
    out = []
    # a nonzero functional on G/Phi is fixed by its values on the generators;
    # normalise the first nonzero value to 1
    for values in product(range(p), repeat=len(gens)):
        nz = [i for i, v in enumerate(values) if v]
        if not nz or values[nz[0]] != 1:
            continue
        j = nz[0]
        kernel_gens = list(phi.generators)
        for g, v in zip(gens, values):
            kernel_gens.append(g * gens[j] ** (-v))
        M = PermGroup(kernel_gens, G.degree)
        if M.order() == target:
            out.append(M)
    return out


def normal_subgroups(G, limit=None):
    T = as_table(G, limit)
    return [sub_to_group(T, S) for S in T.normal_subgroups()]


def quotient(G, N, limit=None):
    """G/N as the permutation action of G on the cosets of N."""
    T = as_table(G, limit)
    S = group_to_sub(T, N)
    if not T.is_normal(S):
        raise NotNormal("subgroup is not normal")
    labels, reps = T.cosets(S)
    k = len(reps)
    gens = []
    for g in T.gens:
        gens.append(Permutation._raw(tuple(int(labels[T.table[r, g]]) for r in reps)))
    Q = PermGroup(gens or [Permutation.identity(k)], k)
    assert Q.order() * S.order == T.n
    return Q


def sylow_subgroup(G, p, limit=None):
    if not is_prime(p):
        raise InvalidParameter(f"{p} is not prime")
    T = as_table(G, limit)
    P = T.sylow(p)
    assert P.order == p_part(T.n, p)
    return sub_to_group(T, P)


def center(G, limit=None):
    T = as_table(G, limit)
    return sub_to_group(T, T.center())


def frattini_subgroup(G, limit=None):
    T = as_table(G, limit)
    return sub_to_group(T, T.frattini())


def abelian_invariants_of_table(T):
    """Invariants of an abelian table as prime -> non-increasing exponents."""
    orders = T.orders
    out = {}
    for p, a in factorize(T.n).items():
        # |{x : x^(p^j) = 1}| = p^(sum_i min(a_i, j)) for the p-part
        sizes = [0]
        j = 0
        while sizes[-1] < a:
            j += 1
            cnt = int(sum(1 for o in orders.tolist() if (p ** j) % o == 0))
            e = 0
            while cnt > 1:
                cnt //= p
                e += 1
            sizes.append(e)
        # number of cyclic factors with exponent >= j is sizes[j] - sizes[j-1]
        ge = [sizes[j] - sizes[j - 1] for j in range(1, len(sizes))]
        parts = []
        for j in range(len(ge), 0, -1):
            count = ge[j - 1] - (ge[j] if j < len(ge) else 0)
            parts.extend([j] * count)
        out[p] = tuple(sorted(parts, reverse=True))
    return out


def abelian_invariants(G, limit=None):
    """Invariants of the abelianization G/G'."""
    T = as_table(G, limit)
    Q, _ = T.quotient(T.derived_subgroup())
    return abelian_invariants_of_table(Q)


def _perm_normal_closure(G, elems):
    N = PermGroup([e for e in elems if not e.is_identity()] or [G.identity()], G.degree)
    changed = True
    while changed:
        changed = False
        for s in list(N.generators):
            for g in G.generators:
                y = ~g * s * g
                if not N.contains(y):
                    N = PermGroup(list(N.generators) + [y], G.degree)
                    changed = True
    return N


def _perm_derived(G):
    gens = G.generators
    comms = [~a * ~b * a * b for a in gens for b in gens]
    return _perm_normal_closure(G, comms)


def derived_series_orders(G):
    """Orders along the derived series, computed from stabilizer chains only."""
    orders = [G.order()]
    H = G
    while True:
        D = _perm_derived(H)
        if D.order() == orders[-1]:
            return orders
        orders.append(D.order())
        H = D


def is_perfect(G):
    return G.order() == 1 or _perm_derived(G).order() == G.order()


def _lower_central_is_trivial(G):
    cur = G
    prev = None
    while cur.order() != prev:
        if cur.order() == 1:
            return True
        prev = cur.order()
        comms = [~a * ~g * a * g for a in cur.generators for g in G.generators]
        cur = _perm_normal_closure(G, comms)
    return cur.order() == 1


def structure_report(G, limit=None):
    limit = LIMITS.lattice if limit is None else limit
    n = G.order()
    if n > limit:
        series = derived_series_orders(G)
        perfect = n == 1 or (len(series) == 1)
        return StructureReport(
            order=n,
            derived_series_orders=series,
            is_perfect=perfect,
            is_soluble=series[-1] == 1,
            is_nilpotent=_lower_central_is_trivial(G),
            abelian_invariants={} if perfect else None,
        )
    T = as_table(G, limit)
    series = [S.order for S in T.derived_series()]
    Q, _ = T.quotient(T.derived_subgroup())
    return StructureReport(
        order=n,
        center_order=T.center().order,
        derived_series_orders=series,
        is_perfect=series[0] == 1 or (len(series) == 1),
        is_soluble=series[-1] == 1,
        is_nilpotent=T.is_nilpotent(),
        abelian_invariants=abelian_invariants_of_table(Q),
        order_spectrum=T.spectrum(),
        frattini_order=T.frattini().order,
    )


__all__ = [
    "CayleyTable", "Sub", "SubgroupLattice", "StructureReport", "OrderExceedsLimit",
    "group_order", "contains", "elements", "subgroup_lattice", "maximal_subgroups",
    "normal_subgroups", "quotient", "sylow_subgroup", "direct_product", "structure_report",
    "center", "frattini_subgroup", "abelian_invariants", "derived_series_orders", "is_perfect",
]
