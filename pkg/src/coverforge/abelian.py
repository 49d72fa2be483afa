"""Abelian groups as exponent partitions, and the cover calculus on them.

An abelian p-group Z_{p^a1} x ... x Z_{p^ak} with a1 >= ... >= ak is stored
as the partition (a1, ..., ak). B embeds in A exactly when B's parts are
dominated slot by slot, so the smallest group embedding a family takes the
slot-wise maximum.
"""
import math
from dataclasses import dataclass

from .errors import AuthorityGap, EmptyFamily, InvalidParameter, NotNilpotent
from .numtheory import factorize, is_prime
from .perm import Permutation, PermGroup, direct_product

EULER_GAMMA = 0.57721566490153286061


@dataclass(frozen=True)
class Partition:
    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(x <= 0 for x in parts):
            raise InvalidParameter(f"partition parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidParameter(f"partition must be non-increasing: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self):
        return sum(self.parts)

    def padded(self, k):
        return self.parts + (0,) * (k - len(self.parts))

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts))

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(tuple(int(x) for x in text.split(",")))
        except ValueError:
            raise InvalidParameter(f"bad partition {text!r}") from None


@dataclass(frozen=True)
class AbelianPGroup:
    p: int
    partition: Partition

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidParameter(f"{self.p} is not prime")
        if not isinstance(self.partition, Partition):
            object.__setattr__(self, "partition", Partition(tuple(self.partition)))

    @property
    def order(self):
        return self.p ** self.partition.weight

    def realize(self):
        return cyclic_product([self.p ** a for a in self.partition.parts])


@dataclass(frozen=True)
class AbelianGroup:
    primary_parts: tuple  # sorted ((p, Partition), ...)

    def __init__(self, primary_parts):
        items = dict(primary_parts)
        clean = tuple(sorted((p, q if isinstance(q, Partition) else Partition(tuple(q)))
                             for p, q in items.items()))
        object.__setattr__(self, "primary_parts", tuple((p, q) for p, q in clean if q.parts))

    @property
    def order(self):
        return math.prod(p ** q.weight for p, q in self.primary_parts)

    def component(self, p):
        return dict(self.primary_parts).get(p, Partition(()))

    def realize(self):
        return cyclic_product([p ** a for p, q in self.primary_parts for a in q.parts])


def cyclic_product(orders):
    """Direct product of cyclic groups as disjoint cycles (degree 1 if trivial)."""
    orders = [m for m in orders if m > 1]
    if not orders:
        return PermGroup([Permutation.identity(1)], 1)
    deg = sum(orders)
    gens = []
    start = 0
    for m in orders:
        img = list(range(deg))
        for i in range(m):
            img[start + i] = start + (i + 1) % m
        gens.append(Permutation(img))
        start += m
    return PermGroup(gens, deg, "x".join(f"C{m}" for m in orders))


def abelian_embeds(B, A):
    """Whether the abelian p-group B is isomorphic to a subgroup of A."""
    if not B.partition.parts:
        return True
    if B.p != A.p:
        return False
    k = max(len(A.partition), len(B.partition))
    return all(b <= a for b, a in zip(B.partition.padded(k), A.partition.padded(k)))


def min_abelian_p_cover(F):
    F = list(F)
    if not F:
        raise EmptyFamily("empty family")
    primes = {B.p for B in F}
    if len(primes) != 1:
        raise InvalidParameter(f"family mixes primes {sorted(primes)}")
    k = max(len(B.partition) for B in F)
    c = tuple(max(col) for col in zip(*(B.partition.padded(k) for B in F)))
    assert all(a >= b for a, b in zip(c, c[1:])), "slot-wise maximum must be non-increasing"
    return AbelianPGroup(primes.pop(), Partition(c))


def f(n):
    """Number of pairs (k, m) with k*m <= n, i.e. sum of floor(n/k)."""
    if n < 1:
        raise InvalidParameter("n must be positive")
    # pair counting in O(sqrt n)
    r = math.isqrt(n)
    return 2 * sum(n // k for k in range(1, r + 1)) - r * r


def cover_partition_all(n):
    if n < 1:
        raise InvalidParameter("n must be positive")
    return Partition(tuple(n // k for k in range(1, n + 1)))


def A(n):
    """Order of the smallest abelian group containing every abelian group of order n."""
    if n < 1:
        raise InvalidParameter("n must be positive")
    return math.prod(p ** f(m) for p, m in factorize(n).items())


def dirichlet_gap(n):
    if n < 2:
        raise InvalidParameter("n must be at least 2")
    return (f(n) - n * (math.log(n) + 2 * EULER_GAMMA - 1)) / math.sqrt(n)


def partitions(n, largest=None):
    """All partitions of n, each a non-increasing tuple."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def abelian_p_partition(T, p):
    """Partition of the Sylow p-subgroup of an abelian table."""
    from .groups import abelian_invariants_of_table
    return Partition(abelian_invariants_of_table(T).get(p, ()))


def min_nilpotent_cover(F, authority=None):
    """A minimum cover of a family of nilpotent groups, built prime by prime.

    Returns ``(group, detail)``: ``detail[p]`` says how the Sylow part was
    chosen. ``"abelian"`` means the smallest abelian group embedding the
    abelian Sylow family, which is minimum among abelian groups only;
    ``"catalog"`` means the first catalog group of least order covering the
    Sylow family.
    """
    from . import catalog as _catalog
    from .covers import FamilySpec, table_covers, is_cover
    members = list(F)
    if not members:
        raise EmptyFamily("empty family")
    tables = [M.table() for M in members]
    for T in tables:
        if not T.is_nilpotent():
            raise NotNilpotent("every member must be nilpotent")
    primes = sorted({p for T in tables for p in factorize(T.n)})
    parts = []
    detail = {}
    for p in primes:
        sylows = [T.restrict(T.sylow(p)) for T in tables]
        sylows = [S for S in sylows if S.n > 1]
        if all(S.is_abelian() for S in sylows):
            fam = [AbelianPGroup(p, abelian_p_partition(S, p)) for S in sylows]
            parts.append(min_abelian_p_cover(fam).realize())
            detail[p] = "abelian"
            continue
        authority = authority or _catalog.default_catalog()
        fam = FamilySpec(sylows)
        lo = max(S.n for S in sylows)
        k = 0
        while p ** k < lo:
            k += 1
        found = None
        while found is None and p ** k <= fam.product_order:
            entries = _catalog.query(authority, p ** k)
            for e in entries:
                if table_covers(e.group().table(), fam):
                    found = e
                    break
            k += 1
        if found is None:
            raise AuthorityGap([p ** k])
        parts.append(found.group())
        detail[p] = "catalog"
    if not parts:
        return cyclic_product([]), detail
    G = parts[0]
    for P in parts[1:]:
        G = direct_product(G, P)
    assert is_cover(G, members)
    return G, detail
