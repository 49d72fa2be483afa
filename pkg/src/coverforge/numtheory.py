from functools import lru_cache, reduce
from math import gcd


@lru_cache(maxsize=4096)
def _factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return tuple(out.items())


def factorize(n):
    """Prime factorization by trial division, as an ordered dict p -> e."""
    if n < 1:
        raise ValueError("n must be positive")
    return dict(_factor(n))


def is_prime(n):
    return n >= 2 and factorize(n) == {n: 1}


def is_prime_power(n):
    """True for 1 and for p**k, k >= 1."""
    return n == 1 or len(factorize(n)) == 1


def lcm(*ns):
    return reduce(lambda a, b: a * b // gcd(a, b), ns, 1)


def multiplicative_order(a, m):
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit modulo {m}")
    k, x = 1, a % m
    while x != 1 % m:
        x = x * a % m
        k += 1
    return k


def p_part(n, p):
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q
