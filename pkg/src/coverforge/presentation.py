"""Finite presentations and coset enumeration.

Words are tuples of nonzero integers: ``k`` stands for generator ``k-1``
and ``-k`` for its inverse. The enumerator is the classical
Haselgrove-Leech-Trotter strategy: cosets are defined in scan order and
every relator is scanned from every live coset, with coincidences merged
through a union-find queue.
"""
import re
from dataclasses import dataclass

from .config import LIMITS
from .errors import CosetLimitExceeded, InvalidParameter, ParseError
from .perm import Permutation, PermGroup


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: tuple
    names: tuple = None

    def __post_init__(self):
        if self.generator_count < 1:
            raise InvalidParameter("need at least one generator")
        rels = tuple(tuple(int(x) for x in w) for w in self.relators)
        for w in rels:
            for x in w:
                if x == 0 or abs(x) > self.generator_count:
                    raise InvalidParameter(f"letter {x} out of range in relator {w}")
        object.__setattr__(self, "relators", rels)
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"g{i}" for i in range(self.generator_count)))

    @classmethod
    def parse(cls, generators, relators):
        """Build from generator names and relator strings.

        Relator syntax: juxtaposed factors, each a generator name,
        a parenthesised word, or a commutator ``[u,v]`` (= u^-1 v^-1 u v),
        optionally followed by ``^k`` with k a possibly negative integer.
        An ``=`` turns ``lhs=rhs`` into ``lhs*rhs^-1``.
        """
        names = tuple(generators)
        rels = [parse_word(r, names) for r in relators]
        return cls(len(names), tuple(rels), names)

    def evaluate(self, word, perms):
        """Product of the images of ``word`` under generator images ``perms``."""
        result = Permutation.identity(perms[0].degree)
        for x in word:
            g = perms[abs(x) - 1]
            result = result * (g if x > 0 else ~g)
        return result

    def holds_in(self, perms):
        return all(self.evaluate(w, perms).is_identity() for w in self.relators)


def invert_word(w):
    return tuple(-x for x in reversed(w))


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<pow>\^\s*-?\d+)|(?P<sym>[\[\](),=*]))")


def parse_word(text, names):
    index = {n: i + 1 for i, n in enumerate(names)}
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} in word {text!r}", column=pos + 1)
        if m.group("name"):
            # "xya" with single-letter generators means x y a
            ident, start = m.group("name"), m.start("name")
            while ident:
                cut = next((k for k in range(len(ident), 0, -1) if ident[:k] in index), None)
                if cut is None:
                    raise ParseError(f"unknown generator {ident!r}", column=start + 1)
                tokens.append(("name", ident[:cut], start))
                ident, start = ident[cut:], start + cut
        elif m.group("pow"):
            tokens.append(("pow", int(m.group("pow")[1:].strip()), m.start("pow")))
        else:
            tokens.append(("sym", m.group("sym"), m.start("sym")))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None, len(text))

    def expect(sym):
        nonlocal i
        kind, val, col = peek()
        if kind != "sym" or val != sym:
            raise ParseError(f"expected {sym!r} in word {text!r}", column=col + 1)
        i += 1

    def word():
        nonlocal i
        out = []
        while True:
            kind, val, col = peek()
            if kind == "sym" and val == "*":
                i += 1
                continue
            if kind == "name" or (kind == "sym" and val in "(["):
                out.extend(factor())
            else:
                return tuple(out)

    def factor():
        nonlocal i
        kind, val, col = peek()
        if kind == "name":
            if val not in index:
                raise ParseError(f"unknown generator {val!r}", column=col + 1)
            i += 1
            base = (index[val],)
        elif val == "(":
            i += 1
            base = word()
            expect(")")
        else:
            i += 1
            u = word()
            expect(",")
            v = word()
            expect("]")
            base = invert_word(u) + invert_word(v) + u + v
        kind, val, col = peek()
        if kind == "pow":
            i += 1
            if val < 0:
                base, val = invert_word(base), -val
            return base * val
        return base

    lhs = word()
    kind, val, col = peek()
    if kind == "sym" and val == "=":
        i += 1
        rhs = word()
        lhs = lhs + invert_word(rhs)
    if i != len(tokens):
        raise ParseError(f"trailing input in word {text!r}", column=peek()[2] + 1)
    return free_reduce(lhs)


def free_reduce(w):
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def parse_presentation_text(text):
    """Read a presentation file.

    Format (``#`` starts a comment)::

        generators: x, y
        relators: x^2, y^3, (xy)^5
    """
    gens = None
    rels = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected 'key: value'", lineno)
        key = key.strip().lower()
        if key == "generators":
            gens = [s for s in (x.strip() for x in rest.split(",")) if s]
        elif key == "relators":
            if gens is None:
                raise ParseError("relators before generators", lineno)
            # commas also separate commutator arguments, so split at depth 0
            items = _split_top(rest)
            try:
                rels.extend(parse_word(r, gens) for r in items)
            except ParseError as e:
                raise ParseError(str(e), lineno, e.column) from None
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if gens is None:
        raise ParseError("no generators line")
    return Presentation(len(gens), tuple(rels), tuple(gens))


def _split_top(s):
    out, depth, cur = [], 0, []
    for ch in s:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch in ",;" and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [x.strip() for x in out if x.strip()]


class CosetTable:
    """Coset enumeration over the trivial subgroup."""

    def __init__(self, pres, max_cosets=None):
        self.pres = pres
        self.max_cosets = LIMITS.cosets if max_cosets is None else max_cosets
        self.ncols = 2 * pres.generator_count
        self.rows = [[-1] * self.ncols]
        self.parent = [0]
        self.queue = []
        # relators as column sequences; generator k -> column 2(k-1), inverse -> +1
        self.rels = [[self._col(x) for x in w] for w in pres.relators if w]

    @staticmethod
    def _col(x):
        return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1

    def live(self, c):
        return self.parent[c] == c

    def rep(self, c):
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def define(self, c, col):
        if len(self.rows) >= self.max_cosets:
            raise CosetLimitExceeded(f"coset enumeration exceeded {self.max_cosets} cosets")
        n = len(self.rows)
        self.rows.append([-1] * self.ncols)
        self.parent.append(n)
        self.rows[c][col] = n
        self.rows[n][col ^ 1] = c
        return n

    def merge(self, a, b):
        a, b = self.rep(a), self.rep(b)
        if a != b:
            a, b = min(a, b), max(a, b)
            self.parent[b] = a
            self.queue.append(b)

    def coincidence(self, a, b):
        self.merge(a, b)
        rows = self.rows
        i = 0
        while i < len(self.queue):
            g = self.queue[i]
            i += 1
            for col in range(self.ncols):
                d = rows[g][col]
                if d < 0:
                    continue
                if rows[d][col ^ 1] == g:
                    rows[d][col ^ 1] = -1
                mu, nu = self.rep(g), self.rep(d)
                if rows[mu][col] >= 0:
                    self.merge(nu, rows[mu][col])
                elif rows[nu][col ^ 1] >= 0:
                    self.merge(mu, rows[nu][col ^ 1])
                else:
                    rows[mu][col] = nu
                    rows[nu][col ^ 1] = mu
        self.queue = []

    def scan_and_fill(self, c, rel):
        rows = self.rows
        f, b = c, c
        i, j = 0, len(rel) - 1
        while True:
            while i <= j and rows[f][rel[i]] >= 0:
                f = rows[f][rel[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and rows[b][rel[j] ^ 1] >= 0:
                b = rows[b][rel[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                rows[f][rel[i]] = b
                rows[b][rel[i] ^ 1] = f
                return
            self.define(f, rel[i])

    def run(self):
        c = 0
        while c < len(self.rows):
            if self.live(c):
                for rel in self.rels:
                    self.scan_and_fill(c, rel)
                    if not self.live(c):
                        break
                if self.live(c):
                    for col in range(self.ncols):
                        if self.rows[c][col] < 0:
                            self.define(c, col)
            c += 1
        return self

    def permutations(self):
        """Generator actions on the live cosets, renumbered 0..n-1."""
        live = [c for c in range(len(self.rows)) if self.live(c)]
        new = {c: i for i, c in enumerate(live)}
        perms = []
        for k in range(self.pres.generator_count):
            perms.append(Permutation([new[self.rep(self.rows[c][2 * k])] for c in live]))
        return perms


def from_presentation(pres, max_cosets=None, name=None):
    """Regular permutation representation of the finite group ``pres``."""
    table = CosetTable(pres, max_cosets).run()
    perms = table.permutations()
    assert pres.holds_in(perms)
    G = PermGroup(perms, len(perms[0].images), name)
    return G
