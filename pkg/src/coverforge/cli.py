"""Command-line front end.

Exit codes: 0 when the queried predicate holds (or a listing/report
succeeded), 1 when it fails or a report disagrees with its expectations,
2 on any error.
"""
import argparse
import json
import sys

from . import abelian, catalog as _catalog
from .covers import FamilySpec, classify, find_minimal_covers, find_witnesses, census_row
from .errors import CoverError
from .expr import parse_group, split_list


def _authority(args):
    if getattr(args, "authority", None):
        return _catalog.load_catalog(*args.authority.split(","))
    return _catalog.default_catalog()


def _family(args, cat):
    if args.family is not None:
        return FamilySpec.all_of_order(args.family, cat)
    if args.members:
        exprs = split_list(args.members)
        return FamilySpec([parse_group(e, cat) for e in exprs], exprs)
    raise CoverError("give --family N or --members LIST")


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(text_lines))


def cmd_cover(args):
    cat = _authority(args)
    G = parse_group(args.group, cat)
    F = _family(args, cat)
    v = classify(G, F, authority=cat if args.minimum else None)
    checks = {"cover": v.is_cover}
    if args.minimal:
        checks["minimal"] = v.is_minimal
    if args.co_minimal:
        checks["co_minimal"] = v.is_co_minimal
    if args.minimum:
        checks["minimum"] = v.is_minimum
    ok = all(checks.values())
    payload = {"group": args.group, "order": G.order(), "family": F.names,
               "verdict": v.as_dict(), "checks": checks, "result": ok}
    lines = [f"group {args.group} (order {G.order()})", f"family: {', '.join(F.names)}"]
    lines += [f"  {k:<10} {'yes' if val else 'no'}" for k, val in checks.items()]
    _emit(args, payload, lines)
    return 0 if ok else 1


def cmd_scan(args):
    cat = _authority(args)
    if args.mode == "census":
        if args.order is None or args.family is None:
            raise CoverError("census needs --order and --family")
        row = census_row(args.order, FamilySpec.all_of_order(args.family, cat), cat, args.jobs)
        payload = {"order": args.order, "family": args.family, **row}
        lines = [f"order {args.order}: groups {row['groups']}, covers {row['covers']}, "
                 f"minimal {row['minimal']}, strongly minimal {row['strongly_minimal']}"]
        _emit(args, payload, lines)
        return 0
    if args.max_order is None:
        raise CoverError("--max-order is required")
    if args.mode == "witness":
        if args.n is None:
            raise CoverError("witness mode needs --n")
        found = find_witnesses(args.n, cat, args.max_order, args.jobs)
    else:
        F = _family(args, cat)
        found = find_minimal_covers(F, cat, args.max_order, args.jobs)
    payload = {"mode": args.mode, "max_order": args.max_order, "count": len(found),
               "groups": [{"ref": e.ref, "order": e.order, "label": e.label} for e in found]}
    lines = [f"{e.ref:<12} {e.label or ''}" for e in found] + [f"{len(found)} group(s)"]
    _emit(args, payload, lines)
    return 0


def cmd_abelian(args):
    if args.what == "f":
        value = abelian.f(args.n)
        _emit(args, {"f": value, "n": args.n}, [str(value)])
    elif args.what == "A":
        value = abelian.A(args.n)
        _emit(args, {"A": value, "n": args.n}, [str(value)])
    else:
        if args.p is None or args.partitions is None:
            raise CoverError("cover needs --p and --partitions")
        fam = [abelian.AbelianPGroup(args.p, abelian.Partition.parse(s))
               for s in args.partitions.split(";")]
        c = abelian.min_abelian_p_cover(fam)
        _emit(args, {"p": args.p, "partition": list(c.partition.parts), "order": c.order},
              [str(c.partition)])
    return 0


def cmd_report(args):
    from . import reports
    args.cat = _authority(args)
    lines, data = reports.REPORTS[args.id](args)
    text = reports.render(lines, data)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    expected = reports.load_expectations(args.expectations)
    key = reports.expectation_key(args.id, args.r)
    if key not in expected:
        print(f"no expectations recorded for {key}", file=sys.stderr)
        return 0
    if not reports.matches(expected[key], data):
        print(f"report {key} disagrees with expectations", file=sys.stderr)
        return 1
    return 0


def cmd_info(args):
    from .groups import structure_report
    G = parse_group(args.group)
    rep = structure_report(G)
    d = rep.as_dict()
    lines = [f"{k}: {v}" for k, v in d.items()]
    _emit(args, d, lines)
    return 0


def build_parser():
    from .reports import REPORTS
    p = argparse.ArgumentParser(prog="coverforge", description="Covers of finite groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, family=True):
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--authority", help="catalog file(s), comma separated")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes (wall time only)")
        if family:
            sp.add_argument("--family", type=int, help="all catalog groups of this order")
            sp.add_argument("--members", help="comma-separated group expressions")

    c = sub.add_parser("cover", help="decide cover predicates for one group")
    c.add_argument("group")
    common(c)
    c.add_argument("--minimal", action="store_true")
    c.add_argument("--co-minimal", action="store_true")
    c.add_argument("--minimum", action="store_true")
    c.set_defaults(func=cmd_cover)

    s = sub.add_parser("scan", help="scan the catalog")
    common(s)
    s.add_argument("--mode", choices=("minimal", "witness", "census"), default="minimal")
    s.add_argument("--max-order", type=int)
    s.add_argument("--order", type=int)
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_scan)

    a = sub.add_parser("abelian", help="abelian cover calculus")
    a.add_argument("what", choices=("f", "A", "cover"))
    a.add_argument("n", type=int, nargs="?")
    a.add_argument("--p", type=int)
    a.add_argument("--partitions", help="semicolon-separated partitions, e.g. '2;1,1'")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_abelian)

    r = sub.add_parser("report", help="regenerate a result report")
    r.add_argument("id", choices=sorted(REPORTS))
    r.add_argument("--r", type=int, default=5)
    r.add_argument("--out")
    r.add_argument("--expectations")
    r.add_argument("--authority")
    r.add_argument("--jobs", type=int, default=1)
    r.set_defaults(func=cmd_report)

    i = sub.add_parser("info", help="structure report for a group")
    i.add_argument("group")
    i.add_argument("--json", action="store_true")
    i.set_defaults(func=cmd_info)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.command == "abelian" and args.what in ("f", "A") and args.n is None:
        print("error: n is required", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (CoverError, ValueError, OSError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
