"""Regenerate src/coverforge/data/certificates.txt.

Natural inclusions are written down directly; PSL2(7) -> A7 comes from the
embedding search. Every certificate is verified before it is written.
"""
from pathlib import Path

from coverforge.embed import EmbeddingCertificate, dump_certificate, find_embedding, verify_certificate
from coverforge.expr import parse_group
from coverforge.perm import Permutation


def pad(p, degree):
    return Permutation(p.images + tuple(range(p.degree, degree)))


def inclusion(src, dst):
    H, G = parse_group(src), parse_group(dst)
    return EmbeddingCertificate(H.generators, [pad(g, G.degree) for g in H.generators])


def main():
    jobs = [
        ("A6-in-A7", "A6", "A7", lambda: inclusion("A6", "A7")),
        ("PSL2(7)-in-A7", "PSL2(7)", "A7", lambda: find_embedding(parse_group("PSL2(7)"), parse_group("A7"))),
        ("A7-in-A12", "A7", "A12", lambda: inclusion("A7", "A12")),
        ("M12-in-A12", "M12", "A12", lambda: inclusion("M12", "A12")),
    ]
    out = ["# embedding certificates checked by verify_certificate; regenerate with tools/make_certificates.py"]
    for name, src, dst, make in jobs:
        cert = make()
        assert verify_certificate(parse_group(src), parse_group(dst), cert), name
        out.append(dump_certificate(name, src, dst, cert).rstrip("\n"))
    path = Path(__file__).resolve().parents[1] / "src" / "coverforge" / "data" / "certificates.txt"
    path.write_text("\n".join(out) + "\n", encoding="utf-8")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
