"""Small finite fields and polynomials over prime fields."""
from itertools import product

from .errors import InvalidParameter, UnsupportedField
from .numtheory import factorize, is_prime


class FiniteFieldPoly:
    """Polynomial over F_q (q prime), coefficients stored low degree first."""

    __slots__ = ("q", "coeffs")

    def __init__(self, q, coeffs):
        if not is_prime(q):
            raise InvalidParameter(f"characteristic {q} is not prime")
        c = [int(a) % q for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.q = q
        self.coeffs = tuple(c)

    @property
    def characteristic(self):
        return self.q

    @property
    def degree(self):
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, FiniteFieldPoly) and (self.q, self.coeffs) == (other.q, other.coeffs)

    def __hash__(self):
        return hash((self.q, self.coeffs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return FiniteFieldPoly(self.q, [x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        return self + FiniteFieldPoly(self.q, [-x for x in other.coeffs])

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return FiniteFieldPoly(self.q, [])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return FiniteFieldPoly(self.q, out)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = self.q
        rem = list(self.coeffs)
        inv_lead = pow(other.coeffs[-1], q - 2, q)
        dq = len(rem) - len(other.coeffs) + 1
        quo = [0] * max(dq, 0)
        for k in range(dq - 1, -1, -1):
            c = rem[k + len(other.coeffs) - 1] * inv_lead % q
            quo[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] = (rem[k + i] - c * b) % q
        return FiniteFieldPoly(q, quo), FiniteFieldPoly(q, rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def divides(self, other):
        return (other % self).is_zero()

    def is_irreducible(self):
        """Trial division by every monic polynomial of degree <= deg/2."""
        d = self.degree
        if d < 1:
            return False
        for k in range(1, d // 2 + 1):
            for tail in product(range(self.q), repeat=k):
                if FiniteFieldPoly(self.q, list(tail) + [1]).divides(self):
                    return False
        return True

    def __repr__(self):
        return f"FiniteFieldPoly({self.q}, {list(self.coeffs)})"


def cyclotomic_prime(q, r):
    """(x^r - 1)/(x - 1) over F_q, for r prime."""
    return FiniteFieldPoly(q, [1] * r)


def irreducible_factor(f, degree):
    """First monic irreducible factor of ``f`` of the given degree, in
    lexicographic order of coefficient tuples; None if there is none."""
    for tail in product(range(f.q), repeat=degree):
        g = FiniteFieldPoly(f.q, list(tail) + [1])
        if g.divides(f) and g.is_irreducible():
            return g
    return None


# fields of order p^k with k > 1: defining polynomial, low degree first
_MODULI = {4: (2, [1, 1, 1]), 8: (2, [1, 1, 0, 1]), 9: (3, [1, 0, 1])}


class GF:
    """The field with q elements, q a prime or one of 4, 8, 9.

    Elements are the integers 0..q-1; for q = p^k an element is the base-p
    encoding of a polynomial in the adjoined root.
    """

    def __init__(self, q):
        if is_prime(q):
            self.p, self.k = q, 1
        elif q in _MODULI:
            self.p = _MODULI[q][0]
            self.k = len(_MODULI[q][1]) - 1
        else:
            raise UnsupportedField(f"no field table for order {q}")
        self.q = q
        p, k = self.p, self.k

        def digits(x):
            return [(x // p ** i) % p for i in range(k)]

        def encode(ds):
            return sum(d * p ** i for i, d in enumerate(ds))

        self.add = [[encode([(a + b) % p for a, b in zip(digits(x), digits(y))])
                     for y in range(q)] for x in range(q)]
        if k == 1:
            self.mul = [[x * y % q for y in range(q)] for x in range(q)]
        else:
            mod = FiniteFieldPoly(p, _MODULI[q][1])
            polys = [FiniteFieldPoly(p, digits(x)) for x in range(q)]
            self.mul = []
            for a in polys:
                row = []
                for b in polys:
                    c = list((a * b % mod).coeffs)
                    row.append(encode(c + [0] * (k - len(c))))
                self.mul.append(row)
        self.neg = [self.add[x].index(0) for x in range(q)]
        self.inv = [None] + [self.mul[x].index(1) for x in range(1, q)]
        self.primitive = self._primitive()

    def _primitive(self):
        target = self.q - 1
        for g in range(2, self.q) if self.q > 2 else [1]:
            x, k = g, 1
            while x != 1:
                x = self.mul[x][g]
                k += 1
            if k == target:
                return g
        raise AssertionError("no primitive element")

    def additive_basis(self):
        return [self.p ** i for i in range(self.k)]

    def __len__(self):
        return self.q


def field_order_supported(q):
    return is_prime(q) or q in _MODULI


def prime_power_parts(q):
    f = factorize(q)
    if len(f) != 1:
        raise InvalidParameter(f"{q} is not a prime power")
    return next(iter(f.items()))
