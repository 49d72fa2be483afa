"""Groups as Cayley tables, and the subgroup algorithms that run on them.

Element 0 is always the identity. Tables built from permutation groups list
the elements in lexicographic order of their image arrays, so every derived
ordering (subgroup lists, fingerprints) is independent of the generators the
group happened to be given by.
"""
import heapq
from collections import Counter
from itertools import product

import numpy as np

from . import kernels
from .numtheory import factorize, is_prime_power


class Sub:
    """A subgroup of a :class:`CayleyTable`: element mask plus generators."""

    __slots__ = ("mask", "order", "gens", "is_maximal", "is_normal", "_key")

    def __init__(self, mask, gens):
        self.mask = mask
        self.order = int(mask.sum())
        self.gens = tuple(int(g) for g in gens)
        self.is_maximal = None
        self.is_normal = None
        self._key = None

    @property
    def key(self):
        if self._key is None:
            self._key = np.packbits(self.mask).tobytes()
        return self._key

    @property
    def indices(self):
        return np.flatnonzero(self.mask)

    def __contains__(self, x):
        return bool(self.mask[x])

    def issubset(self, other):
        return self.order <= other.order and bool(np.all(self.mask <= other.mask))

    def sort_key(self):
        return (self.order, tuple(self.indices.tolist()))

    def __repr__(self):
        return f"<Sub order={self.order} gens={self.gens}>"


class CayleyTable:
    """Multiplication table of a finite group.

    ``table[i, j]`` is the index of ``e_i * e_j``. ``elements`` holds the
    permutations when the table came from a permutation group, else None.
    """

    def __init__(self, table, elements=None, gens=None):
        self.table = np.ascontiguousarray(table, dtype=np.int32)
        self.n = self.table.shape[0]
        self.kt = kernels.prepare(self.table)
        self.elements = elements
        self.inv = np.argmax(self.table == 0, axis=1).astype(np.int32)
        self._orders = None
        self._classes = None
        self._index = None
        self._invariants = {}
        if gens is None:
            gens = self.small_generating_set()
        self.gens = tuple(int(g) for g in gens if g != 0) or (0,)

    @classmethod
    def from_permutations(cls, elements, generators):
        n = len(elements)
        index = {e.images: i for i, e in enumerate(elements)}
        gens = [index[g.images] for g in generators]
        right = {}
        for g in set(gens):
            s = elements[g]
            right[g] = np.fromiter((index[(e * s).images] for e in elements),
                                   dtype=np.int32, count=n)
        table = np.empty((n, n), dtype=np.int32)
        table[:, 0] = np.arange(n, dtype=np.int32)
        done = np.zeros(n, dtype=bool)
        done[0] = True
        queue = [0]
        for j in queue:
            for g in gens:
                k = int(right[g][j])
                if not done[k]:
                    done[k] = True
                    table[:, k] = right[g][table[:, j]]
                    queue.append(k)
        if len(queue) != n:
            raise ValueError("generators do not generate the listed elements")
        T = cls(table, elements, [g for g in gens if g != 0])
        T._index = index
        return T

    def index_of(self, perm):
        if self._index is None:
            self._index = {e.images: i for i, e in enumerate(self.elements)}
        return self._index[perm.images]

    # element data ------------------------------------------------------

    @property
    def orders(self):
        if self._orders is None:
            n = self.n
            orders = np.zeros(n, dtype=np.int64)
            orders[0] = 1
            ar = np.arange(n)
            cur = ar.copy()
            k = 1
            while not orders.all():
                k += 1
                cur = self.table[cur, ar]
                hit = (cur == 0) & (orders == 0)
                orders[hit] = k
            self._orders = orders
        return self._orders

    def mul(self, a, b):
        return int(self.table[a, b])

    def power(self, x, k):
        r = 0
        for _ in range(k % int(self.orders[x])):
            r = int(self.table[r, x])
        return r

    def conj(self, x, g):
        """g^-1 x g"""
        return int(self.table[self.table[self.inv[g], x], g])

    def commutator(self, x, y):
        """x^-1 y^-1 x y"""
        t = self.table
        return int(t[t[self.inv[x], self.inv[y]], t[x, y]])

    def spectrum(self):
        return dict(sorted(Counter(self.orders.tolist()).items()))

    def conjugacy_classes(self):
        """Class label per element; labels follow the smallest member."""
        if self._classes is None:
            maps = [self.table[self.table[self.inv[g], :], g] for g in self.gens]
            maps = [m.tolist() for m in maps]
            labels = [-1] * self.n
            c = 0
            for x in range(self.n):
                if labels[x] >= 0:
                    continue
                labels[x] = c
                queue = [x]
                for y in queue:
                    for m in maps:
                        z = m[y]
                        if labels[z] < 0:
                            labels[z] = c
                            queue.append(z)
                c += 1
            self._classes = np.asarray(labels, dtype=np.int32)
        return self._classes

    def class_representatives(self):
        labels = self.conjugacy_classes()
        _, first = np.unique(labels, return_index=True)
        return sorted(first.tolist())

    # subgroups ---------------------------------------------------------

    def closure(self, gens, limit=0):
        return kernels.closure(self.kt, list(gens), limit)

    def sub(self, gens, limit=0):
        gens = [int(g) for g in gens]
        mask = self.closure(gens, limit)
        if mask is None:
            return None
        return Sub(mask, [g for g in gens if g != 0])

    def whole(self):
        return Sub(np.ones(self.n, dtype=np.uint8), self.gens)

    def trivial(self):
        mask = np.zeros(self.n, dtype=np.uint8)
        mask[0] = 1
        return Sub(mask, ())

    def small_generating_set(self, within=None):
        """Greedy generating set: repeatedly add the element that enlarges
        the generated subgroup most (ties go to the smallest index)."""
        if within is None:
            candidates = list(range(1, self.n))
            target = self.n
        else:
            candidates = [int(x) for x in within.indices if x != 0]
            target = within.order
        gens = []
        cur = self.trivial()
        while cur.order < target:
            best, best_sub = None, None
            for x in candidates:
                if cur.mask[x]:
                    continue
                s = self.sub(gens + [x])
                if best_sub is None or s.order > best_sub.order:
                    best, best_sub = x, s
                    if s.order == target:
                        break
            gens.append(best)
            cur = best_sub
        return gens

    def normal_closure(self, elems, conj_by=None):
        conj_by = self.gens if conj_by is None else conj_by
        gens = [int(e) for e in elems if e != 0]
        mask = self.closure(gens)
        changed = True
        while changed:
            changed = False
            for s in list(gens):
                for g in conj_by:
                    y = self.conj(s, g)
                    if not mask[y]:
                        gens.append(y)
                        mask = self.closure(gens)
                        changed = True
        return Sub(mask, gens)

    def is_normal(self, S, conj_by=None):
        conj_by = self.gens if conj_by is None else conj_by
        return all(S.mask[self.conj(s, g)] for s in S.gens for g in conj_by)

    def center(self):
        ok = np.ones(self.n, dtype=bool)
        for g in self.gens:
            ok &= self.table[:, g] == self.table[g, :]
        idx = np.flatnonzero(ok)
        mask = ok.astype(np.uint8)
        return Sub(mask, self._gens_for(mask, idx))

    def _gens_for(self, mask, idx=None):
        """Generators for an already-known subgroup mask."""
        if idx is None:
            idx = np.flatnonzero(mask)
        gens = []
        cur = self.closure([])
        for x in idx:
            if not cur[x]:
                gens.append(int(x))
                cur = self.closure(gens)
        return gens

    def derived_subgroup(self, S=None):
        S = self.whole() if S is None else S
        comms = [self.commutator(a, b) for a in S.gens for b in S.gens]
        return self.normal_closure(comms, conj_by=S.gens)

    def commutator_subgroup(self, A, B):
        """[A, B] for A, B normal in the whole group."""
        comms = [self.commutator(a, b) for a in A.gens for b in B.gens]
        return self.normal_closure(comms)

    def derived_series(self):
        series = [self.whole()]
        while True:
            D = self.derived_subgroup(series[-1])
            if D.order == series[-1].order:
                return series
            series.append(D)

    def lower_central_series(self):
        series = [self.whole()]
        G = series[0]
        while True:
            C = self.commutator_subgroup(series[-1], G)
            if C.order == series[-1].order:
                return series
            series.append(C)

    def is_nilpotent(self):
        # nilpotent iff every Sylow subgroup is normal, i.e. the p-elements
        # number exactly |G|_p for each p
        orders = self.orders
        for p, a in factorize(self.n).items():
            pe = orders.copy()
            while True:
                nxt = np.where(pe % p == 0, pe // p, pe)
                if np.array_equal(nxt, pe):
                    break
                pe = nxt
            if int((pe == 1).sum()) != p ** a:
                return False
        return True

    def is_abelian(self):
        return all(np.array_equal(self.table[:, g], self.table[g, :]) for g in self.gens)

    def restrict(self, S):
        """Cayley table of the subgroup S, reindexed to 0..|S|-1."""
        idx = S.indices
        new = np.full(self.n, -1, dtype=np.int32)
        new[idx] = np.arange(len(idx), dtype=np.int32)
        sub = new[self.table[np.ix_(idx, idx)]]
        elements = None if self.elements is None else [self.elements[i] for i in idx]
        T = CayleyTable(sub, elements, [int(new[g]) for g in S.gens if g != 0])
        return T

    def cosets(self, N):
        return kernels.coset_labels(self.kt, N.indices)

    def quotient(self, N):
        """Table of G/N (abstract elements) and the coset label per element."""
        labels, reps = self.cosets(N)
        qt = labels[self.table[np.ix_(reps, reps)]]
        gens = sorted({int(labels[g]) for g in self.gens} - {0})
        return CayleyTable(qt, None, gens), labels

    # lattice -----------------------------------------------------------

    def cyclic_prime_power_subgroups(self):
        seen = {}
        orders = self.orders
        for x in range(1, self.n):
            if is_prime_power(int(orders[x])):
                s = self.sub([x])
                seen.setdefault(s.key, s)
        return list(seen.values())

    def subgroups(self, order_cap=None):
        """Every subgroup (of order at most ``order_cap`` if given).

        Layered extension: subgroups are popped in increasing order and joined
        with each cyclic subgroup of prime-power order they do not contain.
        Every subgroup is the join of its prime-power cyclic subgroups, so the
        enumeration is complete; with a cap, joins that outgrow it are
        abandoned early. Maximality flags are set only when uncapped.
        """
        cyc = self.cyclic_prime_power_subgroups()
        limit = order_cap if order_cap else 0
        triv = self.trivial()
        found = {triv.key: triv}
        overgroup = {}
        heap = [(1, 0, triv)]
        counter = 1
        while heap:
            _, _, S = heapq.heappop(heap)
            if S.order == self.n:
                continue
            proper_over = False
            for C in cyc:
                c = C.gens[0]
                if S.mask[c]:
                    continue
                gens = S.gens + (c,)
                mask = kernels.closure(self.kt, gens, limit)
                if mask is None:
                    continue
                T = Sub(mask, gens)
                old = found.get(T.key)
                if old is None:
                    found[T.key] = T
                    heapq.heappush(heap, (T.order, counter, T))
                    counter += 1
                    old = T
                if old.order < self.n:
                    proper_over = True
            overgroup[S.key] = proper_over
        subs = sorted(found.values(), key=Sub.sort_key)
        for S in subs:
            S.is_normal = self.is_normal(S)
            if order_cap is None:
                S.is_maximal = S.order < self.n and not overgroup.get(S.key, False)
        return subs

    def normal_subgroups(self):
        """All normal subgroups, as joins of normal closures of classes."""
        labels = self.conjugacy_classes()
        reps = self.class_representatives()
        closures = {}
        for x in reps:
            if x == 0:
                continue
            N = self.normal_closure([x])
            closures.setdefault(N.key, N)
        triv = self.trivial()
        found = {triv.key: triv}
        found.update(closures)
        basic = list(closures.values())
        queue = list(found.values())
        for N in queue:
            for M in basic:
                if M.issubset(N):
                    continue
                J = self.sub(N.gens + M.gens)
                if J.key not in found:
                    found[J.key] = J
                    queue.append(J)
        subs = sorted(found.values(), key=Sub.sort_key)
        for S in subs:
            S.is_normal = True
        del labels
        return subs

    def prime_power_prime(self):
        f = factorize(self.n)
        return next(iter(f)) if len(f) == 1 else None

    def frattini_pgroup(self, p):
        elems = [self.power(g, p) for g in self.gens]
        elems += [self.commutator(a, b) for a in self.gens for b in self.gens]
        return self.normal_closure(elems)

    def maximal_subgroups(self):
        """Maximal subgroups; p-groups use hyperplanes of G/Phi(G)."""
        if self.n == 1:
            return []
        p = self.prime_power_prime()
        if p is None:
            return [S for S in self.subgroups() if S.is_maximal]
        phi = self.frattini_pgroup(p)
        basis = []
        cur = phi
        for g in list(self.gens) + list(range(1, self.n)):
            if cur.order == self.n:
                break
            if not cur.mask[g]:
                basis.append(g)
                cur = self.sub(cur.gens + (g,))
        d = len(basis)
        found = {}
        for c in product(range(p), repeat=d):
            nz = [i for i, ci in enumerate(c) if ci]
            if not nz or c[nz[0]] != 1:
                continue
            j = nz[0]
            elems = list(phi.gens)
            for i in range(d):
                if i == j:
                    continue
                # v = e_i - c_i e_j lies in the kernel of c
                x = basis[i]
                coef = (-c[i]) % p
                if coef:
                    x = int(self.table[x, self.power(basis[j], coef)])
                elems.append(x)
            M = self.sub(elems)
            assert M.order * p == self.n
            M.is_maximal = True
            found[M.key] = M
        subs = sorted(found.values(), key=Sub.sort_key)
        for S in subs:
            S.is_normal = True
        return subs

    def frattini(self):
        p = self.prime_power_prime()
        if self.n == 1:
            return self.trivial()
        if p is not None:
            return self.frattini_pgroup(p)
        mask = np.ones(self.n, dtype=np.uint8)
        for M in self.maximal_subgroups():
            mask &= M.mask
        return Sub(mask, self._gens_for(mask))

    def sylow(self, p):
        """A Sylow p-subgroup, grown through normalizing p-elements."""
        target = 1
        m = self.n
        while m % p == 0:
            m //= p
            target *= p
        orders = self.orders.tolist()
        pel = [x for x in range(1, self.n) if is_prime_power(orders[x]) and orders[x] % p == 0]
        P = self.trivial()
        while P.order < target:
            for x in pel:
                if P.mask[x]:
                    continue
                if all(P.mask[self.conj(s, x)] for s in P.gens):
                    P = self.sub(P.gens + (x,))
                    break
            else:
                raise AssertionError("Sylow growth stalled")
        return P
