"""Group expressions: ``C6``, ``SD16xC2``, ``EA(2,3)``, ``cat:32.40``, ...

Grammar::

    expr   := factor (("x" | "*") factor)*
    factor := C<n> | D<n> | SD<n> | Q<n> | A<n> | S<n> | Heis<p> | Gp<p>
            | EA(p,k) | AF(q,r) | PSL2(q) | M12 | W(p,n) | H27
            | cat:<order>.<index> | pres:<path>

``pres:<path>`` reads a presentation file and must be the last factor (the
path runs to the end of the string).
"""
import re
from pathlib import Path

from . import constructors as K
from .errors import ParseError
from .perm import direct_product

_ATOMS = [
    (re.compile(r"SD(\d+)"), lambda m: K.semidihedral(int(m[1]))),
    (re.compile(r"PSL2\((\d+)\)"), lambda m: K.psl2(int(m[1]))),
    (re.compile(r"EA\((\d+),(\d+)\)"), lambda m: K.elementary_abelian(int(m[1]), int(m[2]))),
    (re.compile(r"AF\((\d+),(\d+)\)"), lambda m: K.affine_frobenius(int(m[1]), int(m[2]))),
    (re.compile(r"W\((\d+),(\d+)\)"), lambda m: K.sylow_wreath_tower(int(m[1]), int(m[2]))),
    (re.compile(r"Heis(\d+)"), lambda m: K.heisenberg(int(m[1]))),
    (re.compile(r"Gp(\d+)"), lambda m: K.modular_gp(int(m[1]))),
    (re.compile(r"M12"), lambda m: K.m12()),
    (re.compile(r"H27"), lambda m: K.nonsplit_27_cover(3)),
    (re.compile(r"C(\d+)"), lambda m: K.cyclic(int(m[1]))),
    (re.compile(r"D(\d+)"), lambda m: K.dihedral(int(m[1]))),
    (re.compile(r"Q(\d+)"), lambda m: K.quaternion(int(m[1]))),
    (re.compile(r"A(\d+)"), lambda m: K.alt(int(m[1]))),
    (re.compile(r"S(\d+)"), lambda m: K.sym(int(m[1]))),
]
_CAT = re.compile(r"cat:(\d+)\.(\d+)")


def parse_group(text, cat=None):
    """Build the group an expression denotes."""
    from .presentation import from_presentation, parse_presentation_text
    src = text.strip()
    pos = 0
    factors = []
    while True:
        while pos < len(src) and src[pos] == " ":
            pos += 1
        if src.startswith("pres:", pos):
            path = Path(src[pos + 5:].strip())
            try:
                pres = parse_presentation_text(path.read_text(encoding="utf-8"))
            except OSError as e:
                raise ParseError(f"cannot read presentation {path}: {e}") from None
            factors.append(from_presentation(pres, name=path.stem))
            pos = len(src)
        else:
            m = _CAT.match(src, pos)
            if m:
                from .catalog import default_catalog
                c = cat or default_catalog()
                factors.append(c.get(int(m[1]), int(m[2])).group())
            else:
                for pat, build in _ATOMS:
                    m = pat.match(src, pos)
                    if m:
                        G = build(m)
                        factors.append(G)
                        break
                else:
                    raise ParseError(f"unknown group at {src[pos:]!r} in {text!r}", column=pos + 1)
            pos = m.end()
        while pos < len(src) and src[pos] == " ":
            pos += 1
        if pos >= len(src):
            break
        if src[pos] not in "x*":
            raise ParseError(f"expected 'x' between factors in {text!r}", column=pos + 1)
        pos += 1
    G = factors[0]
    for H in factors[1:]:
        G = direct_product(G, H)
    if len(factors) > 1:
        G.name = src.replace(" ", "")
    return G


def split_list(text):
    """Split a comma-separated list of expressions, ignoring commas in parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur).strip())
    return [x for x in out if x]
