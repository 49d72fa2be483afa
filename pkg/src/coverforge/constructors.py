"""Named group families as permutation groups.

Every constructor documents the domain it acts on. Orders are checked
against the closed formula before the group is returned.
"""
import os
from functools import lru_cache
from math import gcd
from pathlib import Path

from .errors import InvalidParameter, UnsupportedField
from .fields import GF, FiniteFieldPoly, cyclotomic_prime, field_order_supported, irreducible_factor
from .numtheory import factorize, is_prime, multiplicative_order
from .perm import Permutation, PermGroup, direct_product
from .presentation import Presentation, from_presentation


def _check(G, expected):
    n = G.order()
    assert n == expected, f"{G.name}: order {n}, expected {expected}"
    return G


def _need_int(x, what, minimum=1):
    if not isinstance(x, int) or isinstance(x, bool) or x < minimum:
        raise InvalidParameter(f"{what} must be an integer >= {minimum}, got {x!r}")


def _power_of_two(n, what):
    _need_int(n, what)
    if n & (n - 1):
        raise InvalidParameter(f"{what} must be a power of 2, got {n}")
    return n.bit_length() - 1


def cyclic(n):
    """Z_n generated by the n-cycle on n points (degree 1 for n = 1)."""
    _need_int(n, "n")
    g = Permutation([(i + 1) % n for i in range(n)])
    return _check(PermGroup([g], n, f"C{n}"), n)


def dihedral(order):
    """D_order acting on order/2 points (D_4 uses 4 points, D_2 two)."""
    _need_int(order, "order", 2)
    if order % 2:
        raise InvalidParameter(f"dihedral order must be even, got {order}")
    n = order // 2
    if n == 1:
        G = PermGroup([Permutation([1, 0])], 2)
    elif n == 2:
        G = PermGroup([Permutation([1, 0, 3, 2]), Permutation([2, 3, 0, 1])], 4)
    else:
        rot = Permutation([(i + 1) % n for i in range(n)])
        ref = Permutation([(-i) % n for i in range(n)])
        G = PermGroup([rot, ref], n)
    G.name = f"D{order}"
    return _check(G, order)


def quaternion(order):
    """Generalized quaternion group, right regular representation.

    Points encode a^i b^j as 2*i + j."""
    k = _power_of_two(order, "order")
    if k < 3:
        raise InvalidParameter(f"quaternion order must be >= 8, got {order}")
    m = order // 2

    def mul(x, y):
        i, j = divmod(x, 2)
        k2, l2 = divmod(y, 2)
        if j == 0:
            return 2 * ((i + k2) % m) + l2
        if l2 == 0:
            return 2 * ((i - k2) % m) + 1
        return 2 * ((i - k2 + m // 2) % m)

    a = Permutation([mul(x, 2) for x in range(order)])
    b = Permutation([mul(x, 1) for x in range(order)])
    return _check(PermGroup([a, b], order, f"Q{order}"), order)


def elementary_abelian(p, k):
    """(Z_p)^k as k disjoint p-cycles on p*k points."""
    if not is_prime(p):
        raise InvalidParameter(f"{p} is not prime")
    _need_int(k, "k")
    gens = []
    for block in range(k):
        img = list(range(p * k))
        for i in range(p):
            img[block * p + i] = block * p + (i + 1) % p
        gens.append(Permutation(img))
    return _check(PermGroup(gens, p * k, f"EA({p},{k})"), p ** k)


def sym(n):
    _need_int(n, "n")
    if n <= 2:
        g = Permutation([(i + 1) % n for i in range(n)])
        return _check(PermGroup([g], n, f"S{n}"), n)
    gens = [Permutation([(i + 1) % n for i in range(n)]), Permutation.from_cycles(n, (0, 1))]
    G = PermGroup(gens, n, f"S{n}")
    f = 1
    for i in range(2, n + 1):
        f *= i
    return _check(G, f)


def alt(n):
    _need_int(n, "n")
    if n <= 2:
        return _check(PermGroup([Permutation.identity(n)], n, f"A{n}"), 1)
    gens = [Permutation.from_cycles(n, (0, 1, 2))]
    if n > 3:
        long = tuple(range(n)) if n % 2 else tuple(range(1, n))
        gens.append(Permutation.from_cycles(n, long))
    f = 1
    for i in range(3, n + 1):
        f *= i
    return _check(PermGroup(gens, n, f"A{n}"), f)


def semidihedral(order):
    """SD_order on Z_{order/2}: a = x+1, b = x*(order/4 - 1)."""
    k = _power_of_two(order, "order")
    if k < 4:
        raise InvalidParameter(f"semidihedral order must be >= 16, got {order}")
    m = order // 2
    a = Permutation([(x + 1) % m for x in range(m)])
    b = Permutation([(x * (m // 2 - 1)) % m for x in range(m)])
    return _check(PermGroup([a, b], m, f"SD{order}"), order)


def _odd_prime(p):
    if not is_prime(p) or p == 2:
        raise InvalidParameter(f"need an odd prime, got {p}")


def heisenberg(p):
    """Upper unitriangular 3x3 matrices over F_p acting on column vectors.

    Point v0 + p*v1 + p^2*v2 is the vector (v0, v1, v2); x adds v1 to v0,
    y adds v2 to v1."""
    _odd_prime(p)
    n = p ** 3

    def pt(v0, v1, v2):
        return v0 % p + p * (v1 % p) + p * p * (v2 % p)

    pts = [(i % p, (i // p) % p, i // (p * p)) for i in range(n)]
    x = Permutation([pt(v0 + v1, v1, v2) for v0, v1, v2 in pts])
    y = Permutation([pt(v0, v1 + v2, v2) for v0, v1, v2 in pts])
    return _check(PermGroup([x, y], n, f"Heis{p}"), p ** 3)


def modular_gp(p):
    """Maps x -> a*x + b on Z_{p^2} with a = 1 mod p (exponent p^2)."""
    _odd_prime(p)
    m = p * p
    t = Permutation([(x + 1) % m for x in range(m)])
    s = Permutation([(x * (1 + p)) % m for x in range(m)])
    return _check(PermGroup([t, s], m, f"Gp{p}"), p ** 3)


def affine_frobenius(q, r):
    """V:<M> with V = F_q^a, a the order of q mod r, M the companion matrix
    of an irreducible degree-a factor of (x^r-1)/(x-1).

    V is identified with F_q[x]/(f); M acts as multiplication by x. Point
    index is the base-q encoding of the coefficient vector."""
    if not is_prime(q) or not is_prime(r):
        raise InvalidParameter(f"q and r must be primes, got {q}, {r}")
    if q == r:
        raise InvalidParameter("q and r must differ")
    a = multiplicative_order(q, r)
    n = q ** a
    if n > 100000:
        raise InvalidParameter(f"affine group would act on {n} points")
    f = irreducible_factor(cyclotomic_prime(q, r), a)
    assert f is not None, "cyclotomic polynomial has no factor of degree ord_r(q)"
    fc = f.coeffs

    def vec(i):
        return [(i // q ** j) % q for j in range(a)]

    def enc(v):
        return sum(c * q ** j for j, c in enumerate(v))

    trans = Permutation([enc([(c + (j == 0)) % q for j, c in enumerate(vec(i))]) for i in range(n)])

    def times_x(v):
        top = v[-1]
        w = [0] + v[:-1]
        return [(w[j] - top * fc[j]) % q for j in range(a)]

    mat = Permutation([enc(times_x(vec(i))) for i in range(n)])
    G = PermGroup([trans, mat], n, f"AF({q},{r})")
    G.field_poly = f
    return _check(G, n * r)


def psl2(q):
    """PSL_2(q) on the projective line; point q is infinity.

    Generated by translations z -> z + w (w over an additive basis),
    z -> l^2 z (l primitive) and z -> -1/z."""
    if not (isinstance(q, int) and field_order_supported(q) and (q in (4, 8, 9) or q <= 61)):
        raise UnsupportedField(f"PSL2({q}) is not supported")
    F = GF(q)
    inf = q

    def moebius(f):
        return Permutation([f(z) for z in range(q)] + [f(inf)])

    gens = []
    for w in F.additive_basis():
        gens.append(moebius(lambda z, w=w: inf if z == inf else F.add[z][w]))
    sq = F.mul[F.primitive][F.primitive]
    if q > 3:
        gens.append(moebius(lambda z: inf if z == inf else F.mul[sq][z]))
    minus_one = F.neg[1]

    def invert(z):
        if z == inf:
            return 0
        if z == 0:
            return inf
        return F.mul[minus_one][F.inv[z]]

    gens.append(moebius(invert))
    G = PermGroup(gens, q + 1, f"PSL2({q})")
    return _check(G, q * (q * q - 1) // gcd(2, q - 1))


def _data_dir():
    env = os.environ.get("COVERFORGE_DATA")
    return Path(env) if env else Path(__file__).with_name("data")


def _is_k_transitive(G, k):
    start = tuple(range(k))
    seen = {start}
    queue = [start]
    for t in queue:
        for g in G.generators:
            u = tuple(g.images[i] for i in t)
            if u not in seen:
                seen.add(u)
                queue.append(u)
    total = 1
    for i in range(k):
        total *= G.degree - i
    return len(seen) == total


@lru_cache(maxsize=1)
def m12():
    """Mathieu group M12 from the shipped fixture generators."""
    from .catalog import parse_catalog_text
    path = _data_dir() / "m12.txt"
    entries = parse_catalog_text(path.read_text(encoding="utf-8"), str(path)).entries
    entry = entries[(95040, 1)]
    G = PermGroup([Permutation(g) for g in entry.generators], entry.degree, "M12")
    _check(G, 95040)
    assert _is_k_transitive(G, 5), "M12 fixture is not 5-transitive"
    from .groups import is_perfect
    assert is_perfect(G), "M12 fixture is not perfect"
    return G


def sylow_wreath_tower(p, n):
    """Iterated wreath product of n copies of Z_p on p^n points.

    Generator k cycles the p sub-blocks of size p^k inside the first block
    of size p^(k+1)."""
    if not is_prime(p):
        raise InvalidParameter(f"{p} is not prime")
    _need_int(n, "n")
    N = p ** n
    if N > 256:
        raise InvalidParameter(f"p^n = {N} exceeds 256")
    gens = []
    for k in range(n):
        block = p ** (k + 1)
        gens.append(Permutation([(x + p ** k) % block if x < block else x for x in range(N)]))
    return _check(PermGroup(gens, N, f"W({p},{n})"), p ** ((N - 1) // (p - 1)))


# presentations used in checks and by the CLI

def semidihedral_presentation(order):
    k = _power_of_two(order, "order")
    m = order // 2
    return Presentation.parse("ab", [f"a^{m}", "b^2", f"b^-1 a b = a^{m // 2 - 1}"])


def heisenberg_presentation(p):
    _odd_prime(p)
    return Presentation.parse("xyz", [f"x^{p}", f"y^{p}", f"z^{p}", "[x,z]", "[y,z]", "[x,y]=z"])


def nonsplit_27_cover_presentation(p=3):
    """Extension of the Heisenberg group by Z_{p^2}: a^(p^2) = z, a centralizes
    x and sends y to xy. Its order is p^5."""
    _odd_prime(p)
    return Presentation.parse("xyza", [
        f"x^{p}", f"y^{p}", f"z^{p}", "[x,z]", "[y,z]", "[x,y]=z",
        f"a^{p * p}=z", "a^-1 x a = x", "a^-1 y a = x y",
    ])


def nonsplit_27_cover(p=3):
    H = from_presentation(nonsplit_27_cover_presentation(p), name=f"H{p}")
    return _check(H, p ** 5)


__all__ = [
    "cyclic", "dihedral", "quaternion", "elementary_abelian", "sym", "alt", "semidihedral",
    "heisenberg", "modular_gp", "affine_frobenius", "psl2", "m12", "sylow_wreath_tower",
    "from_presentation", "Presentation", "FiniteFieldPoly", "direct_product",
    "semidihedral_presentation", "heisenberg_presentation", "nonsplit_27_cover_presentation",
    "nonsplit_27_cover",
]
