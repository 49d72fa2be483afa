"""Small-groups catalog: strict text format, verification, queries.

Format, one record per line (``#`` starts a comment line)::

    coverage 1,2,3
    order <o> index <i> degree <d> gens <g1>|<g2>|... [label <free text>]

Each ``g`` is a comma-separated 0-based image array. Completeness of an
order listed under ``coverage`` is trusted input; the loader checks orders,
and :func:`verify_catalog` checks counts and pairwise non-isomorphism.
"""
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .errors import AuthorityGap, OrderMismatch, ParseError
from .perm import Permutation, PermGroup

DEFAULT_FILES = ("smallgroups.txt", "smallgroups_243.txt")


@dataclass
class CatalogEntry:
    order: int
    index: int
    degree: int
    generators: tuple
    label: str = None
    _group: object = field(default=None, repr=False, compare=False)

    @property
    def key(self):
        return (self.order, self.index)

    @property
    def ref(self):
        return f"cat:{self.order}.{self.index}"

    def group(self):
        if self._group is None:
            gens = [Permutation._raw(tuple(g)) for g in self.generators]
            self._group = PermGroup(gens, self.degree, self.label or self.ref)
        return self._group

    def to_line(self):
        gens = "|".join(",".join(map(str, g)) for g in self.generators)
        line = f"order {self.order} index {self.index} degree {self.degree} gens {gens}"
        if self.label is not None:
            line += f" label {self.label}"
        return line


@dataclass
class Catalog:
    entries: dict = field(default_factory=dict)
    coverage: set = field(default_factory=set)
    header: list = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.sorted_entries())

    def sorted_entries(self):
        return [self.entries[k] for k in sorted(self.entries)]

    def get(self, order, index):
        try:
            return self.entries[(order, index)]
        except KeyError:
            if order not in self.coverage:
                raise AuthorityGap([order]) from None
            raise KeyError(f"no entry {order}.{index}") from None

    def merge(self, other):
        out = Catalog(dict(self.entries), set(self.coverage), list(self.header))
        for k, e in other.entries.items():
            if k in out.entries:
                raise ParseError(f"duplicate entry {k[0]}.{k[1]} across files")
            out.entries[k] = e
        out.coverage |= other.coverage
        out.header.extend(other.header)
        return out


def _ints(text, lineno, col, what):
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ParseError(f"bad {what} {text!r}", lineno, col) from None


def parse_catalog_text(text, source="<string>"):
    cat = Catalog()
    seen_entry = False
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.rstrip("\r")
        if not line.strip():
            continue
        if line.startswith("#"):
            if not seen_entry:
                cat.header.append(line)
            continue
        words = line.split(" ")
        if words[0] == "coverage":
            if len(words) != 2:
                raise ParseError("coverage takes one comma-separated list", lineno, 1)
            cat.coverage |= set(_ints(words[1], lineno, 10, "coverage list"))
            continue
        if words[0] != "order":
            raise ParseError(f"unknown record {words[0]!r}", lineno, 1)
        seen_entry = True
        expected = ["order", None, "index", None, "degree", None, "gens", None]
        col = 1
        values = {}
        for pos, want in enumerate(expected):
            if pos >= len(words):
                raise ParseError("truncated entry", lineno, len(line) + 1)
            w = words[pos]
            if want is not None and w != want:
                raise ParseError(f"expected {want!r}, found {w!r}", lineno, col)
            if want is None:
                values[expected[pos - 1]] = (w, col)
            col += len(w) + 1
        label = None
        if len(words) > 8:
            if words[8] != "label":
                raise ParseError(f"unknown field {words[8]!r}", lineno, col)
            label = " ".join(words[9:])
        nums = {}
        for key in ("order", "index", "degree"):
            w, c = values[key]
            if not w.isdigit() or int(w) < 1:
                raise ParseError(f"{key} must be a positive integer", lineno, c)
            nums[key] = int(w)
        w, c = values["gens"]
        gens = []
        for part in w.split("|"):
            img = _ints(part, lineno, c, "image array")
            if len(img) != nums["degree"] or sorted(img) != list(range(nums["degree"])):
                raise ParseError(f"not a permutation of degree {nums['degree']}: {part}", lineno, c)
            gens.append(tuple(img))
            c += len(part) + 1
        key = (nums["order"], nums["index"])
        if key in cat.entries:
            raise ParseError(f"duplicate entry {key[0]}.{key[1]}", lineno, 1)
        cat.entries[key] = CatalogEntry(nums["order"], nums["index"], nums["degree"], tuple(gens), label)
    return cat


def check_orders(cat):
    for e in cat.sorted_entries():
        n = e.group().order()
        if n != e.order:
            raise OrderMismatch(f"entry {e.order}.{e.index} generates a group of order {n}")
    return cat


def load_catalog(*paths, check=True):
    """Load and merge catalog files; with ``check`` every order is realized."""
    cat = Catalog()
    for p in paths:
        p = Path(p)
        cat = cat.merge(parse_catalog_text(p.read_text(encoding="utf-8"), str(p)))
    return check_orders(cat) if check else cat


def serialize(cat):
    lines = list(cat.header)
    if cat.coverage:
        lines.append("coverage " + ",".join(map(str, sorted(cat.coverage))))
    lines.extend(e.to_line() for e in cat.sorted_entries())
    return "\n".join(lines) + "\n"


def data_dir():
    env = os.environ.get("COVERFORGE_DATA")
    return Path(env) if env else Path(__file__).with_name("data")


@lru_cache(maxsize=4)
def _default_catalog(directory):
    d = Path(directory)
    paths = [d / f for f in DEFAULT_FILES if (d / f).exists()]
    return load_catalog(*paths)


def default_catalog():
    """The shipped catalog (orders 1..100 and 243), loaded once."""
    return _default_catalog(str(data_dir()))


def read_counts(path=None):
    """Expected group counts: lines ``<order> <count>``."""
    path = Path(path) if path else data_dir() / "counts.txt"
    out = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError("expected '<order> <count>'", lineno, 1)
        out[int(parts[0])] = int(parts[1])
    return out


def query(cat, order):
    if order not in cat.coverage:
        raise AuthorityGap([order])
    return [cat.entries[k] for k in sorted(k for k in cat.entries if k[0] == order)]


def query_divisible(cat, n, max_order, min_order=1):
    orders = [m for m in range(max(n, min_order), max_order + 1) if m % n == 0]
    missing = [m for m in orders if m not in cat.coverage]
    if missing:
        raise AuthorityGap(missing)
    wanted = set(orders)
    return [cat.entries[k] for k in sorted(cat.entries) if k[0] in wanted]


def pairwise_distinct(entries, budget=None):
    """True iff no two entries are isomorphic. Fingerprints split the list
    first; only collisions go to the isomorphism search."""
    from .embed import table_fingerprint, tables_isomorphic
    buckets = {}
    for e in entries:
        buckets.setdefault(table_fingerprint(e.group().table(max(2048, e.order))), []).append(e)
    for group in buckets.values():
        for i in range(len(group)):
            for j in range(i):
                A = group[i].group().table()
                B = group[j].group().table()
                if tables_isomorphic(A, B, budget):
                    return False
    return True


def verify_catalog(cat, expected_counts, distinct_up_to=64):
    """Per-order report: {order: {count, expected, count_ok, distinct}}.
    ``distinct`` is None where the isomorphism check was not run."""
    report = {}
    for order, want in sorted(expected_counts.items()):
        if order not in cat.coverage:
            report[order] = {"count": None, "expected": want, "count_ok": False,
                             "distinct": None, "covered": False}
            continue
        entries = query(cat, order)
        distinct = pairwise_distinct(entries) if order <= distinct_up_to else None
        report[order] = {"count": len(entries), "expected": want, "count_ok": len(entries) == want,
                         "distinct": distinct, "covered": True}
    return report
