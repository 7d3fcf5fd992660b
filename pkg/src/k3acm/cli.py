"""Command-line entry point.

Exit status: 0 on success, 1 when a cross-validation finds a mismatch (or
an internal consistency check fails), 2 on invalid input.  Classes are
comma-separated integers; write ``--class=-1,2`` when the first
coordinate is negative.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .acm import classify
from .cohomology import cohomology_dims
from .exceptions import InternalInconsistency, K3Error
from .harness import SCHEMA_VERSION, cross_validate, enumerate_acm, scan_families
from .lattice import DivisorClass, chi, load_lattice, rank2_family

log = logging.getLogger("k3acm")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_family(args) -> int:
    lat = rank2_family(args.g, args.d)
    data = lat.to_dict()
    if args.m is not None:
        data["polarization"] = [args.m, 0]
    _emit(json.dumps(data), args.out)
    return 0


def cmd_cohomology(args) -> int:
    lat = load_lattice(args.lattice)
    d = DivisorClass.parse(args.cls)
    vec = cohomology_dims(lat, DivisorClass.parse(args.ample), d)
    _emit(json.dumps({"class": d.tolist(), "h0": vec.h0, "h1": vec.h1, "h2": vec.h2, "chi": chi(lat, d)}), args.out)
    return 0


def cmd_classify(args) -> int:
    lat = load_lattice(args.lattice)
    rec = classify(lat, DivisorClass.parse(args.polarization), DivisorClass.parse(args.cls))
    _emit(json.dumps(rec.to_dict(), sort_keys=True), args.out)
    return 0


def cmd_enumerate(args) -> int:
    lat = load_lattice(args.lattice)
    h = DivisorClass.parse(args.polarization)
    records = enumerate_acm(lat, h, args.max_degree, n_jobs=args.n_jobs)
    data = {
        "schema": SCHEMA_VERSION,
        "lattice": lat.to_dict(),
        "polarization": h.tolist(),
        "max_degree": args.max_degree,
        "acm_initialized": [r.cls.tolist() for r in records if r.acm_initialized],
        "records": [r.to_dict() for r in records],
    }
    _emit(json.dumps(data, sort_keys=True), args.out)
    return 0


def cmd_cross_validate(args) -> int:
    lat = load_lattice(args.lattice)
    rep = cross_validate(lat, DivisorClass.parse(args.polarization), args.max_degree, n_jobs=args.n_jobs)
    _emit(rep.to_json(include_timing=args.timing), args.out)
    log.info("%d records, %d mismatches", len(rep.records), len(rep.mismatches))
    return 0 if rep.ok else 1


def cmd_scan(args) -> int:
    rep = scan_families(args.g_max, n_jobs=args.n_jobs)
    _emit(rep.to_json(include_timing=args.timing), args.out)
    log.info("%d mismatches, %d (-2)-criterion disagreements", rep.total_mismatches, rep.neg_two_disagreements)
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="k3acm", description="ACM line bundles on lattice-polarized K3 surfaces")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("family", help="emit the (g, d) rank-two lattice as JSON")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--m", type=int, help="also record the polarization m*C")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("cohomology", help="h^0, h^1, h^2 of a class")
    s.add_argument("--lattice", required=True)
    s.add_argument("--ample", required=True)
    s.add_argument("--class", dest="cls", required=True)
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("classify", help="classification record of an effective class")
    s.add_argument("--lattice", required=True)
    s.add_argument("--polarization", required=True)
    s.add_argument("--class", dest="cls", required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("enumerate-acm", help="classify all effective classes up to a degree")
    s.add_argument("--lattice", required=True)
    s.add_argument("--polarization", required=True)
    s.add_argument("--max-degree", type=int, required=True)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("cross-validate", help="numerical classification vs cohomology oracle")
    s.add_argument("--lattice", required=True)
    s.add_argument("--polarization", required=True)
    s.add_argument("--max-degree", type=int, required=True)
    s.set_defaults(func=cmd_cross_validate)

    s = sub.add_parser("scan-families", help="cross-validate all (g, d) lattices up to g-max")
    s.add_argument("--g-max", type=int, required=True)
    s.set_defaults(func=cmd_scan)

    for name in ("family", "cohomology", "classify", "enumerate-acm", "cross-validate", "scan-families"):
        sp = sub.choices[name]
        sp.add_argument("--out", help="write JSON here instead of stdout")
        if name in ("enumerate-acm", "cross-validate", "scan-families"):
            sp.add_argument("--n-jobs", type=int, default=1)
        if name in ("cross-validate", "scan-families"):
            sp.add_argument("--timing", action="store_true", help="include wall-clock seconds in the report")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except InternalInconsistency as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (K3Error, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
