"""Brute-force reference implementations, independent of the package.

Everything here works on plain Cayley tables (lists of lists, identity 0)
and favours obviousness over speed.
"""
from itertools import product


def perm_table(perms):
    """Cayley table of the group generated by ``perms`` (tuples), by closure."""
    n = len(perms[0])
    ident = tuple(range(n))
    elems = [ident]
    seen = {ident}
    for x in elems:
        for g in perms:
            y = tuple(g[x[i]] for i in range(n))  # x then g
            if y not in seen:
                seen.add(y)
                elems.append(y)
    elems.sort()
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[tuple(b[a[i]] for i in range(n))] for b in elems] for a in elems]
    return table, elems


def closure_size(perms):
    n = len(perms[0])
    ident = tuple(range(n))
    elems = [ident]
    seen = {ident}
    for x in elems:
        for g in perms:
            y = tuple(g[x[i]] for i in range(n))
            if y not in seen:
                seen.add(y)
                elems.append(y)
    return len(elems)


def element_orders(T):
    out = []
    for x in range(len(T)):
        k, y = 1, x
        while y != 0:
            y = T[y][x]
            k += 1
        out.append(k)
    return out


def inverse(T, x):
    return T[x].index(0)


def subgroup_closure(T, gens):
    S = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = T[a][g]
                if b not in S:
                    S.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(S)


def all_subgroups(T):
    """Every subgroup, by closing all subsets generated incrementally."""
    n = len(T)
    found = {frozenset([0])}
    frontier = [frozenset([0])]
    while frontier:
        nxt = []
        for S in frontier:
            for x in range(n):
                if x not in S:
                    U = subgroup_closure(T, list(S) + [x])
                    if U not in found:
                        found.add(U)
                        nxt.append(U)
        frontier = nxt
    return found


def is_normal(T, S):
    return all(T[T[inverse(T, g)][s]][g] in S for s in S for g in range(len(T)))


def quotient_table(T, N):
    cosets = {}
    reps = []
    for x in range(len(T)):
        key = frozenset(T[x][s] for s in N)
        if key not in cosets:
            cosets[key] = len(reps)
            reps.append(x)
    label = {}
    for key, c in cosets.items():
        for y in key:
            label[y] = c
    return [[label[T[a][b]] for b in reps] for a in reps]


def sub_table(T, S):
    idx = sorted(S)
    pos = {x: i for i, x in enumerate(idx)}
    return [[pos[T[a][b]] for b in idx] for a in idx]


def _gen_set(T):
    gens = []
    S = frozenset([0])
    for x in range(len(T)):
        if x not in S:
            gens.append(x)
            S = subgroup_closure(T, gens)
    return gens


def _extend(A, gens, B, imgs):
    """Homomorphism extending gens -> imgs, as a dict, or None."""
    phi = {0: 0}
    queue = [0]
    for x in queue:
        for g, h in zip(gens, imgs):
            y = A[x][g]
            v = B[phi[x]][h]
            if y in phi:
                if phi[y] != v:
                    return None
            else:
                phi[y] = v
                queue.append(y)
    # check it really is a homomorphism on all pairs
    for a in phi:
        for b in phi:
            if phi[A[a][b]] != B[phi[a]][phi[b]]:
                return None
    return phi


def injective_hom_exists(A, B):
    """Whether A embeds in B (full search over generator images)."""
    if len(B) % len(A):
        return False
    if len(A) == 1:
        return True
    gens = _gen_set(A)
    oa, ob = element_orders(A), element_orders(B)
    pools = [[y for y in range(len(B)) if ob[y] == oa[g]] for g in gens]
    for imgs in product(*pools):
        phi = _extend(A, gens, B, imgs)
        if phi is not None and len(set(phi.values())) == len(A):
            return True
    return False


def isomorphic(A, B):
    if len(A) != len(B) or sorted(element_orders(A)) != sorted(element_orders(B)):
        return False
    return injective_hom_exists(A, B)


# groups of small order, built as cyclic extensions ----------------------

def _automorphisms(N):
    n = len(N)
    if n == 1:
        return [list(range(1))]
    gens = _gen_set(N)
    orders = element_orders(N)
    pools = [[y for y in range(n) if orders[y] == orders[g]] for g in gens]
    out = []
    for imgs in product(*pools):
        phi = _extend(N, gens, N, imgs)
        if phi is not None and len(phi) == n and len(set(phi.values())) == n:
            out.append([phi[x] for x in range(n)])
    return out


def _associative(T):
    n = len(T)
    return all(T[T[a][b]][c] == T[a][T[b][c]] for a in range(n) for b in range(n) for c in range(n))


def _extensions(N, p):
    """Groups G with N normal of index p: G = <N, t>, t n t^-1 = beta(n), t^p = u."""
    m = len(N)
    out = []
    auts = _automorphisms(N)
    for beta in auts:
        # beta^p
        bp = list(range(m))
        for _ in range(p):
            bp = [beta[x] for x in bp]
        for u in range(m):
            if beta[u] != u:
                continue
            ui = inverse(N, u)
            if any(bp[x] != N[N[u][x]][ui] for x in range(m)):
                continue
            powers = [list(range(m))]
            for _ in range(p - 1):
                powers.append([beta[x] for x in powers[-1]])
            # element a*t^i has index i*m + a
            T = [[0] * (m * p) for _ in range(m * p)]
            for i in range(p):
                for a in range(m):
                    for j in range(p):
                        for b in range(m):
                            c = N[a][powers[i][b]]
                            k = i + j
                            if k >= p:
                                c = N[c][u]
                                k -= p
                            T[i * m + a][j * m + b] = k * m + c
            if _associative(T):
                out.append(T)
    return out


def small_groups(nmax):
    classes = {1: [[[0]]]}
    for n in range(2, nmax + 1):
        found = []
        primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
        for p in primes:
            for N in classes[n // p]:
                for G in _extensions(N, p):
                    if not any(isomorphic(G, H) for H in found):
                        found.append(G)
        classes[n] = found
    return classes


def lattice_maximal(T):
    """Maximal subgroups by definition: proper, with no proper overgroup."""
    subs = all_subgroups(T)
    n = len(T)
    proper = [S for S in subs if len(S) < n]
    return [S for S in proper if not any(S < U for U in proper)]


def covers(T, family):
    return all(injective_hom_exists(F, T) for F in family)
