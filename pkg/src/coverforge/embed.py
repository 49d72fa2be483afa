"""Isomorphism and embedding between finite groups.

An embedding H -> G is searched as a tuple of images for a small generating
sequence of H. A partial tuple is extended along the Cayley graph of the
subgroup it generates; the walk fails as soon as an edge is inconsistent or
two elements collide, which is the same as asking that the pairs generate a
subgroup of H x G of order |<partial>| projecting injectively into G.
"""
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from . import kernels
from .config import LIMITS
from .errors import BudgetExceeded, NeedsCertificate, NotGenerating, OrderExceedsLimit, ParseError
from .perm import Permutation, PermGroup


@dataclass(frozen=True)
class EmbeddingCertificate:
    source_generators: tuple
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "source_generators", tuple(self.source_generators))
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.source_generators) != len(self.images):
            raise ValueError("certificate needs as many images as source generators")

    def to_text(self):
        def row(perms):
            return "|".join(",".join(map(str, p.images)) for p in perms)
        return f"source {row(self.source_generators)}\nimages {row(self.images)}\n"

    @classmethod
    def from_text(cls, text):
        fields = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, _, rest = line.partition(" ")
            if key not in ("source", "images") or key in fields:
                raise ParseError(f"unexpected field {key!r}", lineno, 1)
            try:
                fields[key] = [Permutation([int(x) for x in part.split(",")])
                               for part in rest.strip().split("|")]
            except ValueError as e:
                raise ParseError(str(e), lineno) from None
        if set(fields) != {"source", "images"}:
            raise ParseError("certificate needs 'source' and 'images' lines")
        return cls(fields["source"], fields["images"])


@dataclass(frozen=True)
class IsoInvariants:
    order: int
    order_spectrum: tuple
    abelian_invariants: tuple
    center_order: int
    derived_series_orders: tuple


def _pair(h, g):
    """h and g side by side on the disjoint union of their domains."""
    dh = h.degree
    return Permutation._raw(h.images + tuple(dh + i for i in g.images))


def verify_certificate(H, G, cert):
    """Check a certificate with the order engine alone (no search)."""
    src, img = cert.source_generators, cert.images
    if not src:
        return H.order() == 1
    if any(s.degree != H.degree for s in src) or any(g.degree != G.degree for g in img):
        return False
    S = PermGroup(list(src), H.degree)
    if not all(H.contains(s) for s in src) or S.order() != H.order():
        raise NotGenerating("certificate source does not generate the group")
    if not all(G.contains(g) for g in img):
        return False
    delta = PermGroup([_pair(s, g) for s, g in zip(src, img)], H.degree + G.degree)
    n = H.order()
    return delta.order() == n and PermGroup(list(img), G.degree).order() == n


# invariants ------------------------------------------------------------

def table_invariants(T):
    """IsoInvariants of a Cayley table (cached on the table)."""
    inv = T._invariants.get("iso")
    if inv is None:
        from .groups import abelian_invariants_of_table
        Q, _ = T.quotient(T.derived_subgroup())
        ab = abelian_invariants_of_table(Q)
        inv = IsoInvariants(
            T.n,
            tuple(sorted(T.spectrum().items())),
            tuple(sorted(ab.items())),
            T.center().order,
            tuple(S.order for S in T.derived_series()),
        )
        T._invariants["iso"] = inv
    return inv


def table_fingerprint(T):
    """Finer isomorphism invariant: counts of (order, class size, class size
    of the square, number of square roots) over all elements."""
    fp = T._invariants.get("fp")
    if fp is None:
        ar = np.arange(T.n)
        sq = T.table[ar, ar]
        roots = np.bincount(sq, minlength=T.n)
        labels = T.conjugacy_classes()
        csize = np.bincount(labels)[labels]
        orders = T.orders
        keys = zip(orders.tolist(), csize.tolist(), csize[sq].tolist(), roots.tolist())
        fp = (table_invariants(T), tuple(sorted(Counter(keys).items())))
        T._invariants["fp"] = fp
    return fp


def iso_invariants(G, limit=None):
    return table_invariants(G.table(limit))


def spectrum_fits(hspec, gspec):
    """Each element order of H must occur at least as often in G."""
    return all(gspec.get(k, 0) >= v for k, v in hspec.items())


@lru_cache(maxsize=None)
def _achievable_orders(degree, even_only):
    """Element orders of permutations of the given degree (optionally even)."""
    out = set()

    def walk(remaining, min_part, order, parity):
        if not even_only or parity % 2 == 0:
            out.add(order)
        for part in range(min_part, remaining + 1):
            walk(remaining - part, part, order * part // gcd(order, part), parity + part - 1)

    walk(degree, 2, 1, 0)
    return frozenset(out)


def degree_screen(hspec, G):
    """False when H has an element order that no permutation of G's degree
    (of G's parity, if all generators are even) can have."""
    even = all(g.is_even() for g in G.generators)
    ok = _achievable_orders(G.degree, even)
    return all(k in ok for k in hspec)


# search on tables ------------------------------------------------------

class _Budget:
    def __init__(self, budget):
        self.left = budget

    def spend(self):
        if self.left is not None:
            self.left -= 1
            if self.left < 0:
                raise BudgetExceeded("embedding search budget exhausted")


def _source_gens(HT):
    gens = list(HT.gens) if len(HT.gens) <= 2 else HT.small_generating_set()
    if gens == [0] or HT.n == 1:
        return []
    # larger-order generators first: fewer candidates and stronger pruning
    return sorted(gens, key=lambda g: -int(HT.orders[g]))


def table_embedding(HT, GT, budget=None, bijective=False, hgens=None):
    """Images (indices in GT) of a generating sequence of HT under some
    injective homomorphism, as ``(hgens, images, phi)``; None if there is none."""
    if HT.n == 1:
        return [], [], np.zeros(1, dtype=np.int32)
    if GT.n % HT.n or (bijective and GT.n != HT.n):
        return None
    if not spectrum_fits(HT.spectrum(), GT.spectrum()):
        return None
    if hgens is None:
        hgens = _source_gens(HT)
    gorders = GT.orders
    by_order = {}
    for g in range(GT.n):
        by_order.setdefault(int(gorders[g]), []).append(g)
    reps = set(GT.class_representatives())
    cands = []
    for i, h in enumerate(hgens):
        pool = by_order.get(int(HT.orders[h]), [])
        if i == 0:
            pool = [g for g in pool if g in reps]
        cands.append(pool)
    tracker = _Budget(budget)
    imgs = []
    k = len(hgens)

    def rec(i):
        for c in cands[i]:
            tracker.spend()
            imgs.append(c)
            phi = kernels.extend_hom(HT.kt, hgens[:i + 1], GT.kt, imgs, True)
            if phi is not None:
                if i + 1 == k:
                    return phi
                res = rec(i + 1)
                if res is not None:
                    return res
            imgs.pop()
        return None

    phi = rec(0)
    if phi is None:
        return None
    assert int((phi >= 0).sum()) == HT.n
    return list(hgens), list(imgs), phi


def tables_isomorphic(A, B, budget=None):
    if A.n != B.n:
        return False
    if table_fingerprint(A) != table_fingerprint(B):
        return False
    return table_embedding(A, B, budget, bijective=True) is not None


def tables_embed(HT, GT, budget=None):
    return table_embedding(HT, GT, budget) is not None


# search on permutations (targets too large for a Cayley table) --------

class _PermTarget:
    def __init__(self, G, limit):
        self.elements = G.elements(limit)
        self.index = {e.images: i for i, e in enumerate(self.elements)}
        self.orders = [e.order() for e in self.elements]
        self.spectrum = dict(Counter(self.orders))
        labels = [-1] * len(self.elements)
        gens = [(g, ~g) for g in G.generators]
        reps = []
        for x in range(len(self.elements)):
            if labels[x] >= 0:
                continue
            labels[x] = x
            reps.append(x)
            queue = [x]
            for y in queue:
                e = self.elements[y]
                for g, gi in gens:
                    z = self.index[(gi * e * g).images]
                    if labels[z] < 0:
                        labels[z] = x
                        queue.append(z)
        self.reps = reps


def _perm_extend(HT, hgens, target, imgs):
    phi = [None] * HT.n
    deg = target.elements[0].degree
    phi[0] = Permutation.identity(deg)
    used = {phi[0].images}
    pairs = [(h, target.elements[g]) for h, g in zip(hgens, imgs)]
    queue = [0]
    rows = HT.kt if isinstance(HT.kt, list) else HT.table
    for x in queue:
        for hs, gs in pairs:
            y = int(rows[x][hs])
            v = phi[x] * gs
            if phi[y] is None:
                if v.images in used:
                    return None
                phi[y] = v
                used.add(v.images)
                queue.append(y)
            elif phi[y] != v:
                return None
    return phi


def perm_embedding(HT, G, budget=None, limit=None):
    target = _PermTarget(G, limit)
    if len(target.elements) % HT.n:
        return None
    if not spectrum_fits(HT.spectrum(), target.spectrum):
        return None
    hgens = _source_gens(HT)
    if not hgens:
        return [], []
    by_order = {}
    for g, o in enumerate(target.orders):
        by_order.setdefault(o, []).append(g)
    reps = set(target.reps)
    cands = []
    for i, h in enumerate(hgens):
        pool = by_order.get(int(HT.orders[h]), [])
        cands.append([g for g in pool if g in reps] if i == 0 else pool)
    tracker = _Budget(budget)
    imgs = []

    def rec(i):
        for c in cands[i]:
            tracker.spend()
            imgs.append(c)
            if _perm_extend(HT, hgens[:i + 1], target, imgs) is not None:
                if i + 1 == len(hgens):
                    return True
                if rec(i + 1):
                    return True
            imgs.pop()
        return False

    if not rec(0):
        return None
    return hgens, [target.elements[g] for g in imgs]


# public API ------------------------------------------------------------

def _certificate(HT, hgens, images):
    return EmbeddingCertificate([HT.elements[h] for h in hgens], images)


def find_embedding(H, G, budget=None, limit=None):
    """Some embedding certificate H -> G, or None when none exists.

    ``None`` is authoritative: the search is exhaustive unless it runs out
    of budget, which raises BudgetExceeded instead."""
    limit = LIMITS.elements if limit is None else limit
    if H.order() > limit:
        raise OrderExceedsLimit(H.order(), limit)
    HT = H.table(limit)
    if G.order() % H.order():
        return None
    if G.order() <= LIMITS.lattice:
        GT = G.table()
        found = table_embedding(HT, GT, budget)
        if found is None:
            return None
        hgens, imgs, _ = found
        cert = _certificate(HT, hgens, [GT.elements[g] for g in imgs])
    else:
        if not degree_screen(HT.spectrum(), G):
            return None
        if G.order() > limit:
            raise NeedsCertificate(f"target of order {G.order()} is beyond the search limit {limit}")
        found = perm_embedding(HT, G, budget, limit)
        if found is None:
            return None
        cert = _certificate(HT, *found)
    if not cert.source_generators:
        cert = EmbeddingCertificate([H.identity()], [G.identity()])
    return cert


def embeds(H, G, strategy="auto", budget=None, limit=None):
    """Whether H is isomorphic to a subgroup of G.

    ``strategy="lattice"`` scans the subgroups of G of order |H| for a copy
    of H; the default searches generator images directly. Both are exact."""
    if G.order() % H.order():
        return False
    if strategy == "lattice":
        GT = G.table()
        HT = H.table()
        for S in GT.subgroups(order_cap=H.order()):
            if S.order == HT.n and tables_isomorphic(HT, GT.restrict(S)):
                return True
        return False
    limit = LIMITS.elements if limit is None else limit
    if G.order() > limit:
        if H.order() <= limit and not degree_screen(H.table(limit).spectrum(), G):
            return False
        raise NeedsCertificate(f"target of order {G.order()} needs a certificate")
    return find_embedding(H, G, budget, limit) is not None


def is_isomorphic(A, B, budget=None, limit=None):
    limit = LIMITS.elements if limit is None else limit
    for X in (A, B):
        if X.order() > limit:
            raise OrderExceedsLimit(X.order(), limit)
    if A.order() != B.order():
        return False
    return tables_isomorphic(A.table(limit), B.table(limit), budget)



def load_certificates(path):
    """Read a certificate file: blocks of ``certificate <name>``, ``from
    <expr>``, ``into <expr>``, ``source ...`` and ``images ...`` lines.
    Returns a list of (name, source_expr, target_expr, certificate)."""
    from pathlib import Path
    blocks = []
    cur = None
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        if key == "certificate":
            cur = {"name": rest.strip(), "lines": [], "line": lineno}
            blocks.append(cur)
        elif cur is None:
            raise ParseError("field before the first 'certificate' line", lineno, 1)
        elif key in ("from", "into"):
            if key in cur:
                raise ParseError(f"duplicate {key!r}", lineno, 1)
            cur[key] = rest.strip()
        else:
            cur["lines"].append(line)
    out = []
    for b in blocks:
        if "from" not in b or "into" not in b:
            raise ParseError(f"certificate {b['name']!r} lacks 'from' or 'into'", b["line"])
        out.append((b["name"], b["from"], b["into"], EmbeddingCertificate.from_text("\n".join(b["lines"]))))
    return out


def dump_certificate(name, source_expr, target_expr, cert):
    return f"certificate {name}\nfrom {source_expr}\ninto {target_expr}\n" + cert.to_text()
