"""Cover predicates, witnesses and catalog scans.

Most work happens on Cayley tables: a family is held as a list of member
tables and every predicate reduces to embedding tests into subgroup or
quotient tables of the candidate.
"""
import multiprocessing as mp
from dataclasses import dataclass, field
from math import prod

from . import catalog as _catalog
from .config import LIMITS
from .embed import (EmbeddingCertificate, find_embedding, table_embedding, table_fingerprint,
                    tables_isomorphic, verify_certificate)
from .errors import AuthorityGap, InvalidParameter
from .numtheory import factorize, lcm
from .perm import PermGroup


def _table(X):
    return X.table(max(LIMITS.lattice, X.order())) if isinstance(X, PermGroup) else X


class FamilySpec:
    """A finite set of groups; members may be PermGroups or Cayley tables."""

    def __init__(self, members, names=None):
        members = list(members)
        if not members:
            raise InvalidParameter("a family needs at least one member")
        self.members = members
        self.names = list(names) if names else [getattr(m, "name", None) or f"F{i}" for i, m in enumerate(members)]
        orders = [m.order() if isinstance(m, PermGroup) else m.n for m in members]
        self.orders = orders
        self.lcm_order = lcm(*orders)
        self.product_order = prod(orders)
        self._tables = None

    @property
    def tables(self):
        if self._tables is None:
            self._tables = [_table(m) for m in self.members]
        return self._tables

    def __len__(self):
        return len(self.members)

    @classmethod
    def all_of_order(cls, n, cat=None):
        cat = cat or _catalog.default_catalog()
        entries = _catalog.query(cat, n)
        return cls([e.group() for e in entries], [e.ref for e in entries])


def as_family(F):
    return F if isinstance(F, FamilySpec) else FamilySpec(F)


@dataclass
class CoverVerdict:
    is_cover: bool
    is_minimal: bool
    is_co_minimal: bool
    is_minimum: bool = None
    witnesses: dict = field(default_factory=dict)

    @property
    def is_strongly_minimal(self):
        return self.is_minimal and self.is_co_minimal

    def as_dict(self):
        return {
            "is_cover": self.is_cover,
            "is_minimal": self.is_minimal,
            "is_co_minimal": self.is_co_minimal,
            "is_strongly_minimal": self.is_strongly_minimal,
            "is_minimum": self.is_minimum,
            "witnesses": {str(i): {"source": [list(p.images) for p in c.source_generators],
                                   "images": [list(p.images) for p in c.images]}
                          for i, c in sorted(self.witnesses.items())},
        }


def order_bounds(F):
    """(lcm of member orders, product of member orders, pairwise coprime?)"""
    F = as_family(F)
    return F.lcm_order, F.product_order, F.lcm_order == F.product_order


# table-level predicates -------------------------------------------------

def table_covers(GT, F):
    if GT.n % F.lcm_order:
        return False
    # larger members first: they fail more often
    order = sorted(range(len(F)), key=lambda i: -F.tables[i].n)
    return all(table_embedding(F.tables[i], GT) is not None for i in order)


def table_is_minimal(GT, F, assume_cover=False):
    if not assume_cover and not table_covers(GT, F):
        return False
    for S in GT.maximal_subgroups():
        if S.order % F.lcm_order == 0 and table_covers(GT.restrict(S), F):
            return False
    return True


def table_is_co_minimal(GT, F, assume_cover=False):
    if not assume_cover and not table_covers(GT, F):
        return False
    for N in GT.normal_subgroups():
        if N.order == 1 or N.order == GT.n:
            continue
        if (GT.n // N.order) % F.lcm_order:
            continue
        Q, _ = GT.quotient(N)
        if table_covers(Q, F):
            return False
    return True


# public predicates -------------------------------------------------------

def cover_witnesses(G, F, certificates=None):
    """Certificates for every member, or None if some member does not embed.

    Supplied certificates are verified and used instead of searching."""
    F = as_family(F)
    certificates = certificates or {}
    if G.order() % F.lcm_order:
        return None
    out = {}
    for i, M in enumerate(F.members):
        cert = certificates.get(i)
        if cert is not None:
            if not isinstance(M, PermGroup) or not verify_certificate(M, G, cert):
                return None
            out[i] = cert
            continue
        if not isinstance(M, PermGroup):
            raise InvalidParameter("table members need a PermGroup target with tables")
        cert = find_embedding(M, G)
        if cert is None:
            return None
        out[i] = cert
    return out


def is_cover(G, F, certificates=None):
    F = as_family(F)
    if not certificates and G.order() <= LIMITS.lattice:
        return table_covers(_table(G), F)
    return cover_witnesses(G, F, certificates) is not None


def is_minimal_cover(G, F):
    return table_is_minimal(_table(G), as_family(F))


def is_co_minimal_cover(G, F):
    return table_is_co_minimal(_table(G), as_family(F))


def minimum_orders_needed(F, order):
    """Orders m < order that a catalog must cover to settle minimum-ness."""
    return [m for m in range(1, order) if m % F.lcm_order == 0]


def is_minimum_cover(G, F, authority):
    F = as_family(F)
    n = G.order()
    if not is_cover(G, F):
        return False
    needed = minimum_orders_needed(F, n)
    missing = [m for m in needed if m not in authority.coverage]
    if missing:
        raise AuthorityGap(missing)
    for m in needed:
        for e in _catalog.query(authority, m):
            if table_covers(e.group().table(), F):
                return False
    return True


def classify(G, F, authority=None, certificates=None):
    """Full verdict for one (G, F) query."""
    F = as_family(F)
    witnesses = cover_witnesses(G, F, certificates)
    if witnesses is None:
        return CoverVerdict(False, False, False, False if authority is not None else None, {})
    GT = _table(G)
    minimal = table_is_minimal(GT, F, assume_cover=True)
    co_minimal = table_is_co_minimal(GT, F, assume_cover=True)
    minimum = None
    if authority is not None:
        minimum = is_minimum_cover(G, F, authority)
    return CoverVerdict(True, minimal, co_minimal, minimum, witnesses)


def is_n_witness(G, n):
    GT = _table(G)
    if GT.n % n:
        return False
    return all(S.order % n for S in GT.maximal_subgroups())


# dual covers ------------------------------------------------------------

def _quotients(GT, proper=False):
    for N in GT.normal_subgroups():
        if proper and N.order == 1:
            continue
        yield N, GT.quotient(N)[0]


def table_is_dual_cover(GT, F):
    if GT.n % F.lcm_order:
        return False
    quotients = None
    for M in F.tables:
        if quotients is None:
            quotients = [Q for _, Q in _quotients(GT)]
        if not any(Q.n == M.n and tables_isomorphic(Q, M) for Q in quotients):
            return False
    return True


def is_dual_cover(G, F):
    return table_is_dual_cover(_table(G), as_family(F))


def is_minimal_dual_cover(G, F):
    """Dual cover, and no proper quotient is one."""
    F = as_family(F)
    GT = _table(G)
    if not table_is_dual_cover(GT, F):
        return False
    return not any(table_is_dual_cover(Q, F) for _, Q in _quotients(GT, proper=True))


def is_co_minimal_dual_cover(G, F):
    """Dual cover, and no proper subgroup is one (every subgroup is checked:
    the dual property is not inherited upward)."""
    F = as_family(F)
    GT = _table(G)
    if not table_is_dual_cover(GT, F):
        return False
    for S in GT.subgroups():
        if S.order < GT.n and table_is_dual_cover(GT.restrict(S), F):
            return False
    return True


# inheritance checks ------------------------------------------------------

def sylow_cover_check(G, n, authority=None):
    """Each Sylow p-subgroup of G covers all catalog groups of order p^a,
    for every prime power p^a exactly dividing n."""
    authority = authority or _catalog.default_catalog()
    GT = _table(G)
    for p, a in factorize(n).items():
        F = FamilySpec.all_of_order(p ** a, authority)
        P = GT.restrict(GT.sylow(p))
        if not table_covers(P, F):
            return False
    return True


@dataclass
class SelfCoverRecord:
    is_self_minimal: bool
    theorem_consistent: bool
    maximal_classes: int


def _iso_classes(tables):
    reps = []
    for T in tables:
        fp = table_fingerprint(T)
        if not any(fp == table_fingerprint(R) and tables_isomorphic(T, R) for R in reps):
            reps.append(T)
    return reps


def self_cover_check(G):
    GT = _table(G)
    if GT.n == 1:
        return SelfCoverRecord(True, True, 0)
    maxes = [GT.restrict(S) for S in GT.maximal_subgroups()]
    classes = _iso_classes(maxes)
    # G is a minimal cover of its maximal subgroups iff no maximal subgroup
    # contains copies of all of them
    fam = FamilySpec(classes)
    self_min = not any(table_covers(M, fam) for M in maxes)
    p_group = len(factorize(GT.n)) == 1
    consistent = self_min or (p_group and len(classes) == 1)
    return SelfCoverRecord(self_min, consistent, len(classes))


# catalog scans -----------------------------------------------------------

_WORK = {}


def _run_one(i):
    fn, items = _WORK["fn"], _WORK["items"]
    return fn(items[i])


def parallel_map(fn, items, jobs=1):
    """Map in catalog order; workers only change wall time."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    _WORK["fn"], _WORK["items"] = fn, items
    try:
        ctx = mp.get_context("fork")
        with ctx.Pool(jobs) as pool:
            return pool.map(_run_one, range(len(items)), chunksize=1)
    finally:
        _WORK.clear()


def _scan(pred, entries, jobs):
    flags = parallel_map(lambda e: pred(e.group().table()), entries, jobs)
    return [e for e, ok in zip(entries, flags) if ok]


def find_minimal_covers(F, cat=None, max_order=None, jobs=1):
    F = as_family(F)
    cat = cat or _catalog.default_catalog()
    entries = _catalog.query_divisible(cat, F.lcm_order, max_order)
    return _scan(lambda T: table_is_minimal(T, F), entries, jobs)


def find_witnesses(n, cat=None, max_order=None, jobs=1):
    cat = cat or _catalog.default_catalog()
    entries = _catalog.query_divisible(cat, n, max_order)

    def pred(T):
        return all(S.order % n for S in T.maximal_subgroups())
    return _scan(pred, entries, jobs)


def census_row(order, F, cat=None, jobs=1):
    """(groups, covers, minimal covers, strongly minimal covers) at one order."""
    F = as_family(F)
    cat = cat or _catalog.default_catalog()
    entries = _catalog.query(cat, order)

    def classify_table(e):
        T = e.group().table()
        if not table_covers(T, F):
            return (False, False, False)
        m = table_is_minimal(T, F, assume_cover=True)
        s = m and table_is_co_minimal(T, F, assume_cover=True)
        return (True, m, s)

    flags = parallel_map(classify_table, entries, jobs)
    return {
        "groups": len(entries),
        "covers": sum(f[0] for f in flags),
        "minimal": sum(f[1] for f in flags),
        "strongly_minimal": sum(f[2] for f in flags),
        "cover_refs": [e.ref for e, f in zip(entries, flags) if f[0]],
        "minimal_refs": [e.ref for e, f in zip(entries, flags) if f[1]],
        "strongly_minimal_refs": [e.ref for e, f in zip(entries, flags) if f[2]],
    }


__all__ = [
    "FamilySpec", "CoverVerdict", "EmbeddingCertificate", "order_bounds", "is_cover",
    "is_minimal_cover", "is_co_minimal_cover", "is_minimum_cover", "classify", "is_n_witness",
    "is_dual_cover", "is_minimal_dual_cover", "is_co_minimal_dual_cover", "sylow_cover_check",
    "self_cover_check", "find_minimal_covers", "find_witnesses", "census_row", "cover_witnesses",
]
