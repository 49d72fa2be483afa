"""Permutations in image-array form and groups given by permutation generators.

Products act on the right: ``(p * q)(i) == q(p(i))``, so ``p * q`` means
"first p, then q". Group order and membership come from a deterministic
Schreier-Sims stabilizer chain, built lazily on first use.
"""
import threading
from math import gcd

from .config import LIMITS
from .errors import DegreeMismatch, InvalidParameter, OrderExceedsLimit


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if not images:
            raise InvalidParameter("permutation must have positive degree")
        if sorted(images) != list(range(len(images))):
            raise InvalidParameter(f"not a permutation: {images}")
        self.images = images
        self._hash = None

    @classmethod
    def _raw(cls, images):
        p = object.__new__(cls)
        p.images = images
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree):
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree, *cycles):
        """Build from 0-based cycles, e.g. ``from_cycles(4, (0, 1), (2, 3))``."""
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def __mul__(self, other):
        if len(other.images) != len(self.images):
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")
        return Permutation._raw(tuple(map(other.images.__getitem__, self.images)))

    def __invert__(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._raw(tuple(inv))

    inverse = __invert__

    def __pow__(self, k):
        if k < 0:
            return (~self) ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self):
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self):
        o = 1
        for cyc in self.cycles():
            o = o * len(cyc) // gcd(o, len(cyc))
        return o

    def is_even(self):
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __repr__(self):
        cyc = "".join("(" + ",".join(map(str, c)) + ")" for c in self.cycles())
        return f"Permutation<{self.degree}>{cyc or '()'}"


def identity(degree):
    return Permutation.identity(degree)


def compose(p, q):
    """First ``p``, then ``q``."""
    return p * q


def inverse(p):
    return ~p


class StabChain:
    """Base and strong generating set with explicit transversals."""

    def __init__(self, generators, degree):
        self.degree = degree
        self.base = []
        self.strong = []
        # per level: point -> (u, u^-1) with base[level]^u == point
        self.transversals = []
        self._build([g for g in generators if not g.is_identity()])

    def _level_gens(self, i):
        prefix = self.base[:i]
        return [s for s in self.strong if all(s.images[b] == b for b in prefix)]

    def _orbit(self, i):
        gens = self._level_gens(i)
        b = self.base[i]
        ident = Permutation.identity(self.degree)
        trans = {b: (ident, ident)}
        queue = [b]
        for beta in queue:
            u = trans[beta][0]
            for s in gens:
                gamma = s.images[beta]
                if gamma not in trans:
                    v = u * s
                    trans[gamma] = (v, ~v)
                    queue.append(gamma)
        return trans

    def _new_base_point(self, g):
        for p, q in enumerate(g.images):
            if p != q:
                self.base.append(p)
                self.transversals.append(None)
                return
        raise AssertionError("identity has no moved point")

    def sift(self, g, start=0):
        for level in range(start, len(self.base)):
            beta = g.images[self.base[level]]
            entry = self.transversals[level].get(beta)
            if entry is None:
                return g, level
            g = g * entry[1]
        return g, len(self.base)

    def _build(self, gens):
        for g in gens:
            if all(g.images[b] == b for b in self.base):
                self._new_base_point(g)
            self.strong.append(g)
        for i in range(len(self.base)):
            self.transversals[i] = self._orbit(i)
        i = len(self.base) - 1
        while i >= 0:
            jumped = False
            trans = self.transversals[i]
            for beta, (u, _) in list(trans.items()):
                for s in self._level_gens(i):
                    h = u * s * trans[s.images[beta]][1]
                    if h.is_identity():
                        continue
                    res, j = self.sift(h, i + 1)
                    if j < len(self.base) or not res.is_identity():
                        self.strong.append(res)
                        if j == len(self.base):
                            self._new_base_point(res)
                        for level in range(i + 1, j + 1):
                            self.transversals[level] = self._orbit(level)
                        i = j
                        jumped = True
                        break
                if jumped:
                    break
            if not jumped:
                i -= 1

    def order(self):
        o = 1
        for t in self.transversals:
            o *= len(t)
        return o

    def contains(self, g):
        res, j = self.sift(g)
        return j == len(self.base) and res.is_identity()

    def iter_elements(self):
        elems = [Permutation.identity(self.degree)]
        for trans in reversed(self.transversals):
            reps = [u for u, _ in trans.values()]
            elems = [x * u for x in elems for u in reps]
        return elems


class PermGroup:
    """A finite group generated by permutations of a common degree.

    The stabilizer chain and the Cayley table are computed on first use and
    cached; the object is otherwise immutable.
    """

    def __init__(self, generators, degree=None, name=None):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if not gens:
            if degree is None:
                raise InvalidParameter("need at least one generator or a degree")
            gens = [Permutation.identity(degree)]
        if degree is None:
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator degree {g.degree} != {degree}")
        self.degree = degree
        self.generators = tuple(gens)
        self.name = name
        self._chain = None
        self._table = None
        self._lock = threading.Lock()

    @property
    def chain(self):
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = StabChain(self.generators, self.degree)
        return self._chain

    def order(self):
        return self.chain.order()

    __len__ = order

    def contains(self, g):
        if not isinstance(g, Permutation):
            g = Permutation(g)
        if g.degree != self.degree:
            raise DegreeMismatch(f"element degree {g.degree} != group degree {self.degree}")
        return self.chain.contains(g)

    __contains__ = contains

    def elements(self, limit=None):
        """All elements, sorted lexicographically by image array."""
        limit = LIMITS.elements if limit is None else limit
        n = self.order()
        if n > limit:
            raise OrderExceedsLimit(n, limit)
        if self._table is not None:
            return list(self._table.elements)
        return sorted(self.chain.iter_elements(), key=lambda p: p.images)

    def table(self, limit=None):
        """Cayley table (see :class:`coverforge.cayley.CayleyTable`)."""
        if self._table is None:
            from .cayley import CayleyTable
            limit = LIMITS.lattice if limit is None else limit
            n = self.order()
            if n > limit:
                raise OrderExceedsLimit(n, limit)
            with self._lock:
                if self._table is None:
                    self._table = CayleyTable.from_permutations(
                        self.elements(max(limit, n)), self.generators)
        return self._table

    def identity(self):
        return Permutation.identity(self.degree)

    def subgroup(self, generators, name=None):
        return PermGroup(list(generators) or [self.identity()], self.degree, name)

    def is_trivial(self):
        return all(g.is_identity() for g in self.generators)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<PermGroup{label} degree={self.degree} gens={len(self.generators)}>"


GeneratedGroup = PermGroup


def direct_product(A, B, name=None):
    """Direct product acting on the disjoint union of the two domains."""
    da, db = A.degree, B.degree
    gens = []
    for g in A.generators:
        gens.append(Permutation._raw(g.images + tuple(range(da, da + db))))
    for g in B.generators:
        gens.append(Permutation._raw(tuple(range(da)) + tuple(da + i for i in g.images)))
    if name is None and A.name and B.name:
        name = f"{A.name}x{B.name}"
    G = PermGroup(gens, da + db, name)
    return G
