"""Pure-Python inner loops over Cayley tables.

Tables are passed through :func:`prepare` first; here that means a list of
row lists, which indexes much faster than a numpy array from Python.
All element indices refer to rows of the table and index 0 is the identity.
"""
import numpy as np


def prepare(table):
    return np.asarray(table).tolist()


def closure(table, gens, limit=0):
    """Mask of the subgroup generated by ``gens``.

    Returns ``None`` as soon as the subgroup is known to exceed ``limit``
    elements (``limit=0`` disables the check).
    """
    n = len(table)
    gens = [int(g) for g in gens]
    mask = bytearray(n)
    mask[0] = 1
    queue = [0]
    for x in queue:
        row = table[x]
        for g in gens:
            y = row[g]
            if not mask[y]:
                mask[y] = 1
                queue.append(y)
        if limit and len(queue) > limit:
            return None
    return np.frombuffer(bytes(mask), dtype=np.uint8).copy()


def extend_hom(htab, hgens, gtab, gimgs, injective=True):
    """Extend generator images to a homomorphism on the generated subgroup.

    Walks the Cayley graph of ``<hgens>`` and fails (``None``) on the first
    inconsistent edge, or on a repeated image when ``injective`` is set.
    Returns the image array with -1 outside ``<hgens>``.
    """
    hgens = [int(g) for g in hgens]
    gimgs = [int(g) for g in gimgs]
    phi = [-1] * len(htab)
    used = bytearray(len(gtab))
    phi[0] = 0
    used[0] = 1
    queue = [0]
    pairs = list(zip(hgens, gimgs))
    for x in queue:
        hrow = htab[x]
        grow = gtab[phi[x]]
        for hs, gs in pairs:
            y = hrow[hs]
            v = grow[gs]
            py = phi[y]
            if py < 0:
                if injective and used[v]:
                    return None
                phi[y] = v
                used[v] = 1
                queue.append(y)
            elif py != v:
                return None
    return np.asarray(phi, dtype=np.int32)


def coset_labels(table, sub):
    """Label right cosets N*x; returns (labels, representatives)."""
    n = len(table)
    sub = [int(s) for s in sub]
    labels = [-1] * n
    reps = []
    for x in range(n):
        if labels[x] < 0:
            c = len(reps)
            for s in sub:
                labels[table[s][x]] = c
            reps.append(x)
    return np.asarray(labels, dtype=np.int32), np.asarray(reps, dtype=np.int32)
