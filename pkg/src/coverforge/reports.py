"""Reproducible result reports.

Each report function returns ``(lines, data)``: human-readable lines and a
JSON-able dict. Golden comparisons use ``data`` only.
"""
import json

from . import abelian, catalog as _catalog, constructors as K
from .covers import (FamilySpec, census_row, classify, find_minimal_covers, find_witnesses,
                     is_cover, is_minimum_cover, table_covers)
from .embed import is_isomorphic, load_certificates, verify_certificate, embeds
from .expr import parse_group
from .groups import subgroup_lattice
from .perm import direct_product


def census_8covers(cat, jobs=1, orders=(32, 64)):
    F = FamilySpec.all_of_order(8, cat)
    data = {}
    lines = ["order  groups  covers  minimal  strongly-minimal"]
    for o in orders:
        row = census_row(o, F, cat, jobs)
        data[str(o)] = {k: row[k] for k in ("groups", "covers", "minimal", "strongly_minimal")}
        data[str(o)]["minimal_refs"] = row["minimal_refs"]
        lines.append(f"{o:5d}  {row['groups']:6d}  {row['covers']:6d}  {row['minimal']:7d}  {row['strongly_minimal']:16d}")
    return lines, data


def fermat(cat, r=5, jobs=1, max_order=None):
    F = FamilySpec([K.cyclic(2), K.cyclic(r)])
    max_order = max_order or 16 * r
    found = find_minimal_covers(F, cat, max_order, jobs)
    expected = [K.cyclic(2 * r), K.dihedral(2 * r), K.affine_frobenius(2, r)]
    matched = [any(is_isomorphic(e.group(), X) for e in found) for X in expected]
    lines = [f"minimal {{C2,C{r}}}-covers of order <= {max_order}:"]
    lines += [f"  {e.ref}  {e.label}" for e in found]
    data = {"r": r, "max_order": max_order, "count": len(found),
            "labels": sorted(e.label for e in found), "constructions_matched": matched}
    return lines, data


def order60(cat, jobs=1):
    sylows = FamilySpec([K.cyclic(3), K.elementary_abelian(2, 2), K.cyclic(5)])
    pair = FamilySpec([K.alt(4), K.dihedral(10)])
    entries = _catalog.query(cat, 60)
    cov = [e for e in entries if table_covers(e.group().table(), sylows)]
    cov2 = [e for e in entries if table_covers(e.group().table(), pair)]
    minimum = is_minimum_cover(K.alt(5), pair, cat)
    lines = [f"groups of order 60: {len(entries)}",
             f"covering {{C3, C2^2, C5}}: {len(cov)}",
             f"covering {{A4, D10}}: {', '.join(e.label for e in cov2)}",
             f"A5 minimum {{A4, D10}}-cover: {minimum}"]
    data = {"groups": len(entries), "sylow_family_covers": len(cov),
            "a4_d10_covers": [e.label for e in cov2], "a5_minimum": minimum}
    return lines, data


def inf8(cat, ns=(4, 5, 6)):
    F = FamilySpec.all_of_order(8, cat)
    data = {}
    lines = []
    for n in ns:
        G = direct_product(K.semidihedral(2 ** n), K.cyclic(2))
        v = classify(G, F)
        data[str(n)] = {"cover": v.is_cover, "minimal": v.is_minimal, "co_minimal": v.is_co_minimal}
        lines.append(f"SD{2 ** n}xC2: cover={v.is_cover} minimal={v.is_minimal} co-minimal={v.is_co_minimal}")
    return lines, data


def p2covers(cat, jobs=1):
    data = {}
    lines = []
    for p, bound in ((2, 32), (3, 81)):
        F = FamilySpec.all_of_order(p * p, cat)
        found = find_minimal_covers(F, cat, bound, jobs)
        data[str(p * p)] = sorted(e.label for e in found)
        lines.append(f"minimal {p * p}-covers up to order {bound}: " + "; ".join(e.label for e in found))
    G3 = K.modular_gp(3)
    data["gp3_listed"] = any(is_isomorphic(e.group(), G3) for e in find_minimal_covers(
        FamilySpec.all_of_order(9, cat), cat, 81, jobs))
    return lines, data


def covers27(cat):
    H = K.nonsplit_27_cover(3)
    F = FamilySpec.all_of_order(27, cat)
    HC = direct_product(H, K.cyclic(3))
    covers = is_cover(HC, F)
    order81 = [e.ref for e in _catalog.query(cat, 81) if table_covers(e.group().table(), F)]
    lines = [f"|H| = {H.order()}", f"H x C3 covers the groups of order 27: {covers}",
             f"27-covers of order 81: {len(order81)}"]
    return lines, {"H_order": H.order(), "HxC3_order": HC.order(), "HxC3_covers": covers,
                   "order81_covers": len(order81)}


def witnesses(cat, jobs=1):
    from .covers import is_n_witness
    a5 = is_n_witness(K.alt(5), 20)
    l28 = is_n_witness(K.psl2(8), 12)
    found = find_witnesses(10, cat, 80, jobs)
    lines = [f"A5 is a 20-witness: {a5}", f"PSL2(8) is a 12-witness: {l28}",
             "10-witnesses up to order 80: " + "; ".join(e.label for e in found)]
    return lines, {"A5_20": a5, "PSL2_8_12": l28, "ten": sorted(e.label for e in found)}


def psl2_13():
    G = K.psl2(13)
    cover = is_cover(G, FamilySpec([K.cyclic(3), K.cyclic(7)]))
    L = subgroup_lattice(G)
    bad = [H.order() for H in L.subgroups if H.order() < G.order() and H.order() % 21 == 0]
    lines = [f"PSL2(13) covers {{C3, C7}}: {cover}", f"subgroups: {len(L)}",
             f"proper subgroups of order divisible by 21: {len(bad)}"]
    return lines, {"cover": cover, "subgroups": len(L), "proper_div_21": len(bad)}


def certificates():
    path = _catalog.data_dir() / "certificates.txt"
    data = {}
    lines = []
    for name, src, dst, cert in load_certificates(path):
        ok = verify_certificate(parse_group(src), parse_group(dst), cert)
        data[name] = ok
        lines.append(f"{name}: {'verified' if ok else 'FAILED'}")
    a7, m12, a12 = K.alt(7).order(), K.m12().order(), K.alt(12).order()
    data["A7*M12==A12"] = a7 * m12 == a12 == 239500800
    data["PSL2(8)->A7"] = embeds(K.psl2(8), K.alt(7))
    data["PSL2(8)->A8"] = embeds(K.psl2(8), K.alt(8))
    lines.append(f"|A7|*|M12| = {a7 * m12}, |A12| = {a12}")
    lines.append(f"PSL2(8) embeds in A7: {data['PSL2(8)->A7']}, in A8: {data['PSL2(8)->A8']}")
    return lines, data


def abelian_report():
    fs = [abelian.f(n) for n in range(1, 11)]
    return [f"f(1..10) = {fs}", f"A(30) = {abelian.A(30)}"], {"f": fs, "A30": abelian.A(30)}


def minimum(cat):
    F = FamilySpec([K.cyclic(2), K.cyclic(3)])
    mins = [e.label for e in _catalog.query(cat, 6) if table_covers(e.group().table(), F)]
    return [f"minimum {{C2,C3}}-covers: {', '.join(mins)}"], {"minimum_c2_c3": sorted(mins)}


REPORTS = {
    "census-8covers": lambda a: census_8covers(a.cat, a.jobs),
    "fermat": lambda a: fermat(a.cat, a.r, a.jobs),
    "order60": lambda a: order60(a.cat, a.jobs),
    "inf8": lambda a: inf8(a.cat),
    "p2covers": lambda a: p2covers(a.cat, a.jobs),
    "27covers": lambda a: covers27(a.cat),
    "witnesses": lambda a: witnesses(a.cat, a.jobs),
    "psl2-13": lambda a: psl2_13(),
    "certificates": lambda a: certificates(),
    "abelian": lambda a: abelian_report(),
    "minimum": lambda a: minimum(a.cat),
}


def expectation_key(report_id, r=None):
    return f"fermat-{r}" if report_id == "fermat" else report_id


def load_expectations(path=None):
    path = path or (_catalog.data_dir() / "expectations.json")
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def matches(expected, actual):
    """Keys present in ``expected`` must agree; extra keys in ``actual`` are fine."""
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(
            k in actual and matches(v, actual[k]) for k, v in expected.items())
    return expected == actual


def render(lines, data):
    return "\n".join(lines) + "\n\n" + json.dumps(data, indent=2, sort_keys=True) + "\n"
