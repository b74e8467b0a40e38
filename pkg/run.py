#!/usr/bin/env python3
"""
Cospectral Family Builder - connected cospectral graph families from Cartesian products

Usage:
    python run.py gen-corpus --nmax 7 --out corpus.g6
    python run.py find-seeds corpus.g6 --kind adjacency --out-dir seeds
    python run.py construct theorem1 seeds/seed_001.g6 seeds/seed_002.g6 --kind adjacency
"""
import argparse
import sys
import uuid
from pathlib import Path
from typing import List, Optional

from core.cartesian import cartesian_product, prime_factorize
from core.config import config, load_config
from core.construct import (
    ConstructionError, build_power_family, build_product_family, build_relaxed_family, construction_universe,
    count_new_triplets, diagnose_conditions, extend_by_singleton, fallback_family,
)
from core.corpus import find_seed_families, generate_small_corpus, read_corpus, write_corpus
from core.csv_exporter import CSVExporter
from core.graph import emit_graph6, format_graph6_lines, parse_graph6, read_graph6_lines
from core.isomorphism import are_isomorphic
from core.logger import close_logger, get_logger, init_logger
from core.result_store import ResultStore
from core.spectrum import SpectrumKind, char_poly
from core.verify import enumerate_cospectral_triplets, load_family, verify_cross_spectra, verify_family

BUILDERS = ("theorem1", "theorem2", "fallback", "theorem3", "singleton")


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        description="Cospectral Family Builder - cospectral graph families from Cartesian products",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python run.py product 'Bw' 'Bw'
  python run.py charpoly 'Bw' --kind laplacian
  python run.py verify family.g6 --kind adjacency --out family.cert.json
  python run.py construct theorem2 famG.g6 famH.g6 --i 0 --j 1
  python run.py construct theorem3 famU.g6 --k 2
  python run.py count-triplets --p 3 --q 2
"""
    )
    # Global options
    parser.add_argument("--config", "-c", type=str,
                        help="Path to JSON config file")
    parser.add_argument("--threads", type=int,
                        help="Parallelism cap (default: COSPEC_THREADS or all cores)")
    parser.add_argument("--log", action="store_true",
                        help="Write a run log under logs/")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("product", help="Cartesian product of two graphs")
    p.add_argument("g")
    p.add_argument("h")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("factorize", help="Cartesian prime factors with multiplicities")
    p.add_argument("g")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("charpoly", help="Characteristic polynomial coefficients, degree ascending")
    p.add_argument("g")
    _add_kind(p)
    p.add_argument("--pretty", action="store_true", help="Print as a polynomial in x")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("iso", help="Isomorphism test (exit 0 isomorphic, 1 not)")
    p.add_argument("g")
    p.add_argument("h")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("verify", help="Certificate for a family file")
    p.add_argument("family", type=Path)
    _add_kind(p)
    p.add_argument("--out", type=Path, help="Write the certificate here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check-conditions", help="Verdicts for the three product conditions")
    p.add_argument("fam_g", type=Path)
    p.add_argument("fam_h", type=Path)
    _add_kind(p)
    p.set_defaults(func=cmd_check_conditions)

    p = sub.add_parser("construct", help="Build a family: theorem1|theorem2|fallback|theorem3|singleton")
    p.add_argument("builder", choices=BUILDERS)
    p.add_argument("families", nargs="+", type=Path, help="Seed family files")
    _add_kind(p)
    p.add_argument("--i", type=int, help="Row index of the coprime pair (theorem2)")
    p.add_argument("--j", type=int, help="Column index of the coprime pair (theorem2)")
    p.add_argument("--k", type=int, help="Power (theorem3)")
    p.add_argument("--graph", type=str, help="graph6 of the singleton graph (singleton)")
    p.add_argument("--out", type=Path, help="Output directory (default: families/)")
    p.add_argument("--name", type=str, help="Output file stem (default: <builder>_<kind>)")
    p.add_argument("--csv", action="store_true", help="Also write a per-member CSV")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("count-triplets", help="New cospectral triplets for p x q seeds")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--universe", nargs=2, type=Path, metavar=("FAM_G", "FAM_H"),
                   help="Also brute-force count over the full product grid")
    _add_kind(p)
    p.set_defaults(func=cmd_count_triplets)

    p = sub.add_parser("gen-corpus", help="All connected graphs on 1..N vertices")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_gen_corpus)

    p = sub.add_parser("find-seeds", help="Cospectral seed families in a corpus")
    p.add_argument("corpus", type=Path)
    _add_kind(p)
    p.add_argument("--min-size", type=int, default=2)
    p.add_argument("--coprime", action="store_true", help="Keep a pairwise coprime subset of each group")
    p.add_argument("--prime", action="store_true", help="Keep only Cartesian prime members")
    p.add_argument("--out-dir", type=Path, help="Write one family file per seed family")
    p.set_defaults(func=cmd_find_seeds)

    return parser.parse_args(argv)


def _add_kind(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", type=SpectrumKind.parse, default=SpectrumKind.ADJACENCY,
                   help="adjacency (default) or laplacian")


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)

    try:
        if args.config:
            load_config(args.config)
        if args.threads is not None:
            config.apply_overrides({"threads": args.threads})
        config.validate()
    except FileNotFoundError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"ERROR: Invalid config: {e}", file=sys.stderr)
        return 2

    if args.log or config.log_to_file:
        init_logger(config.logs_dir, uuid.uuid4().hex[:8]).log_command(sys.argv if argv is None else argv)

    try:
        code = args.func(args)
    except (ValueError, OSError) as e:
        log = get_logger()
        if log:
            log.log_error(args.command, str(e))
        print(f"ERROR: {e}", file=sys.stderr)
        code = 2

    log = get_logger()
    if log:
        log.log_run_complete(code)
        close_logger()
    return code


def cmd_product(args: argparse.Namespace) -> int:
    product = cartesian_product(parse_graph6(args.g), parse_graph6(args.h))
    print(emit_graph6(product).decode("ascii"))
    return 0


def cmd_factorize(args: argparse.Namespace) -> int:
    for canon, mult in prime_factorize(parse_graph6(args.g)).to_pairs():
        print(f"{canon} {mult}")
    return 0


def cmd_charpoly(args: argparse.Namespace) -> int:
    poly = char_poly(parse_graph6(args.g), args.kind)
    print(poly if args.pretty else " ".join(poly.to_strings()))
    return 0


def cmd_iso(args: argparse.Namespace) -> int:
    same = are_isomorphic(parse_graph6(args.g), parse_graph6(args.h))
    print("isomorphic" if same else "non-isomorphic")
    return 0 if same else 1


def cmd_verify(args: argparse.Namespace) -> int:
    graphs = [g for _, g in read_graph6_lines(args.family.read_text(encoding="utf-8"))]
    if not graphs:
        raise ValueError(f"Family file {args.family} contains no graphs")
    cert = verify_family(graphs, args.kind)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(cert.to_json() + "\n", encoding="utf-8")
        print(f"{'valid' if cert.valid else 'INVALID'}: {args.out}")
    else:
        print(cert.to_json())
    return 0 if cert.valid else 1


def cmd_check_conditions(args: argparse.Namespace) -> int:
    fam_g = load_family(args.fam_g, args.kind)
    fam_h = load_family(args.fam_h, args.kind)
    distinct, witness = verify_cross_spectra(fam_g, fam_h)
    print(f"cross-spectra: {'distinct' if distinct else 'EQUAL'} - {witness}")
    verdicts = diagnose_conditions(fam_g, fam_h)
    for name, verdict in verdicts.items():
        print(f"condition {name}: {'holds' if verdict.holds else 'fails'} - {verdict.witness}")
    return 0 if distinct and any(v.holds for v in verdicts.values()) else 1


def _expect_families(args: argparse.Namespace, count: int) -> None:
    if len(args.families) != count:
        raise ValueError(f"construct {args.builder} takes {count} family file(s), got {len(args.families)}")


def _run_builder(args: argparse.Namespace):
    if args.builder == "theorem3":
        _expect_families(args, 1)
        if args.k is None:
            raise ValueError("construct theorem3 needs --k")
        return build_power_family(load_family(args.families[0], args.kind), args.k)
    if args.builder == "singleton":
        _expect_families(args, 1)
        if not args.graph:
            raise ValueError("construct singleton needs --graph")
        return extend_by_singleton(load_family(args.families[0], args.kind), parse_graph6(args.graph))
    _expect_families(args, 2)
    fam_g = load_family(args.families[0], args.kind)
    fam_h = load_family(args.families[1], args.kind)
    if args.builder == "theorem1":
        return build_product_family(fam_g, fam_h)
    if args.builder == "theorem2":
        return build_relaxed_family(fam_g, fam_h, args.i, args.j)
    return fallback_family(fam_g, fam_h)


def cmd_construct(args: argparse.Namespace) -> int:
    try:
        result = _run_builder(args)
    except ConstructionError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return 1

    family, cert = result.family, result.certificate
    name = args.name or f"{args.builder}_{args.kind.value}"
    store = ResultStore(args.out or config.families_dir)
    header = [
        f"builder {args.builder}",
        f"kind {args.kind.value}",
        f"condition {result.condition_used}",
        f"{family.size} members on {family.order} vertices",
    ]
    family_path = store.save_family(name, family.members, header)
    cert_path = store.save_certificate(name, cert)

    print(f"{args.builder}: {family.size} members on {family.order} vertices (condition {result.condition_used})")
    print(f"family: {family_path}")
    print(f"certificate: {cert_path}")
    if args.csv:
        CSVExporter().export(result, name, out_dir=store.store_dir)
    if not cert.valid:
        print(f"INVALID: failed checks {', '.join(cert.failed_checks())}")
        return 1
    print("valid")
    return 0


def cmd_count_triplets(args: argparse.Namespace) -> int:
    print(count_new_triplets(args.p, args.q))
    if args.universe:
        fam_g = load_family(args.universe[0], args.kind)
        fam_h = load_family(args.universe[1], args.kind)
        graphs = [g for _, _, g in construction_universe(fam_g, fam_h)]
        print(f"brute-force: {enumerate_cospectral_triplets(graphs, args.kind)}")
    return 0


def cmd_gen_corpus(args: argparse.Namespace) -> int:
    corpus = generate_small_corpus(args.nmax)
    path = write_corpus(corpus, args.out)
    print(f"{corpus.stats.total} connected classes on 1..{args.nmax} vertices -> {path}")
    return 0


def cmd_find_seeds(args: argparse.Namespace) -> int:
    corpus = read_corpus(args.corpus)
    families = find_seed_families(corpus, args.kind, args.min_size, args.coprime, args.prime)
    store = ResultStore(args.out_dir) if args.out_dir else None
    for idx, fam in enumerate(families, start=1):
        header = [f"seed {idx}: {fam.size} members on {fam.order} vertices", f"{fam.kind.value} {fam.char_poly}"]
        if store:
            print(store.save_family(f"seed_{idx:03d}", fam.members, header))
        else:
            sys.stdout.write(format_graph6_lines(fam.members, header))
            print()
    print(f"# found {len(families)} families")
    return 0


if __name__ == "__main__":
    sys.exit(main())
