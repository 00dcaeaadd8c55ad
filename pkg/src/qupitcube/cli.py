"""Deterministic command-line front end.

Subcommands: check, strings, classify, logical, algebra, scan.  Every
run writes a single JSON report (schema version "1") to stdout with
stable key order and no timestamps, so identical inputs produce byte
identical reports.  Exit codes: 0 all asserted properties hold, 1 a
checked property failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from multiprocessing import Pool

from . import classify as classify_mod
from . import conditions, oracle
from .algebra import (
    verify_commutation_law,
    verify_inversion_action,
    verify_projector_identities,
)
from .codes import CodeParams, load_params, verify_translation_commutation
from .logical import (
    TorusCode,
    census_operators,
    encoded_qudit_count,
    encoded_qudit_table,
    logical_commutation_table,
    planar_census,
    product_of_all_generators,
)

SCHEMA_VERSION = "1"


def _parse_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}")
    return (int(parts[0]), int(parts[1]))


def _parse_dims(text: str) -> tuple[int, int, int]:
    for sep in ("x", ","):
        if sep in text:
            parts = text.split(sep)
            if len(parts) == 3:
                return tuple(int(v) for v in parts)
    raise argparse.ArgumentTypeError(f"expected 'LxLyLz' like 4x4x3, got {text!r}")


def _add_code_arguments(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--params", metavar="FILE",
                     help="JSON parameter file with p, alpha..delta, parity")
    sub.add_argument("--p", type=int, help="prime modulus")
    sub.add_argument("--alpha", type=_parse_pair, metavar="a1,a2")
    sub.add_argument("--beta", type=_parse_pair, metavar="b1,b2")
    sub.add_argument("--gamma", type=_parse_pair, metavar="c1,c2")
    sub.add_argument("--delta", type=_parse_pair, metavar="d1,d2")
    sub.add_argument("--parity", choices=("S", "A"), default=None)


def _resolve_code(args, parser: argparse.ArgumentParser) -> CodeParams:
    if args.params:
        code = load_params(args.params)
        if args.parity:
            code = code.with_parity(args.parity)
        return code
    missing = [n for n in ("p", "alpha", "beta", "gamma", "delta")
               if getattr(args, n) is None]
    if missing:
        parser.error(f"need --params or all of --p/--alpha/--beta/--gamma/--delta "
                     f"(missing: {', '.join(missing)})")
    try:
        return CodeParams(args.p, args.alpha, args.beta, args.gamma, args.delta,
                          args.parity or "S")
    except ValueError as e:
        parser.error(str(e))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qupitcube",
                                     description=__doc__.splitlines()[0])
    parser.add_argument("--schema-version", default=SCHEMA_VERSION,
                        help="report schema version (only '1')")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="generator consistency and the three "
                                           "no-string conditions")
    _add_code_arguments(p_check)

    p_strings = sub.add_parser("strings", help="segment-solver scan over widths")
    _add_code_arguments(p_strings)
    p_strings.add_argument("--wmax", type=int, default=4)
    p_strings.add_argument("--lmax", type=int, default=None,
                           help="length horizon (default 2w+4 per width)")
    p_strings.add_argument("--kind", choices=("flat", "cornered", "both"), default="both")
    p_strings.add_argument("--expect-no-string", action="store_true",
                           help="fail (exit 1) if any nontrivial length exceeds 2w")

    p_classify = sub.add_parser("classify", help="orbit classification at a modulus")
    p_classify.add_argument("--p", type=int, required=True)
    p_classify.add_argument("--parity", choices=("S", "A"), default="S")
    p_classify.add_argument("--workers", type=int, default=1)
    p_classify.add_argument("--cache", metavar="FILE",
                            help="canonical-form cache file to reuse and extend")

    p_logical = sub.add_parser("logical", help="planar census and encoded-qudit count")
    _add_code_arguments(p_logical)
    p_logical.add_argument("--dims", type=_parse_dims, required=True, metavar="LxLyLz")
    p_logical.add_argument("--ktable", type=int, default=0, metavar="LMAX",
                           help="also tabulate k over all tori with sides 2..LMAX")

    p_algebra = sub.add_parser("algebra", help="exact phase-algebra identity checks")
    _add_code_arguments(p_algebra)
    p_algebra.add_argument("--dims", type=_parse_dims, default=(2, 2, 2), metavar="LxLyLz")
    p_algebra.add_argument("--r", type=int, default=1, help="syndrome label to conjugate")
    p_algebra.add_argument("--allow-large", action="store_true",
                           help="lift the p<=3, 8-site operator-sum guard")

    p_scan = sub.add_parser("scan", help="whole parameter space at a modulus")
    p_scan.add_argument("--p", type=int, required=True)
    p_scan.add_argument("--workers", type=int, default=1)
    p_scan.add_argument("--oracle-wmax", type=int, default=2,
                        help="width horizon for solver-verified candidates")

    return parser


def _report(command: str, options: dict, results: dict,
            discrepancies: list, ok: bool, params: CodeParams | None = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "options": options,
        "params": params.as_dict() if params is not None else None,
        "results": results,
        "discrepancies": discrepancies,
        "status": "ok" if ok else "violation",
    }


def _emit(report: dict) -> int:
    json.dump(report, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")
    return 0 if report["status"] == "ok" else 1


def cmd_check(args, parser) -> int:
    code = _resolve_code(args, parser)
    bad = verify_translation_commutation(code)
    rpt = conditions.theorem1_report(code)
    corner = conditions.corner_determinant_check(code) if rpt.deformability else None
    discrepancies = list(rpt.discrepancies)
    if corner is not None and not corner["match"]:
        discrepancies.append({"kind": "corner-determinant-mismatch", **corner})
    results = {
        "translation_commutation": {
            "consistent": not bad,
            "violations": [{"offset": list(o), "exponent": e} for o, e in bad],
        },
        "theorem1": rpt.as_dict(),
        "corner_determinant": corner,
    }
    ok = not bad
    return _emit(_report("check", {"parity": code.parity}, results, discrepancies, ok, code))


def cmd_strings(args, parser) -> int:
    code = _resolve_code(args, parser)
    kinds = ("flat", "cornered") if args.kind == "both" else (args.kind,)
    results = {"widths": {}}
    exceeded = []
    for w in range(1, args.wmax + 1):
        per_kind = {}
        for kind in kinds:
            rpt = oracle.max_nontrivial_length(code, w, l_max=args.lmax, kind=kind)
            per_kind[kind] = rpt.as_dict()
            if rpt.max_nontrivial_length is not None and rpt.max_nontrivial_length > 2 * w:
                exceeded.append({"width": w, "kind": kind,
                                 "length": rpt.max_nontrivial_length})
        results["widths"][str(w)] = per_kind
    results["bound_2w_exceeded"] = exceeded
    ok = not (args.expect_no_string and exceeded)
    opts = {"wmax": args.wmax, "lmax": args.lmax, "kind": args.kind,
            "expect_no_string": bool(args.expect_no_string)}
    return _emit(_report("strings", opts, results, [], ok, code))


def _canonical_chunk(payload):
    p, chunk = payload
    cache = classify_mod.OrbitCache(p)
    return [(t, cache.canonical(t)) for t in chunk]


def _canonical_map(p: int, workers: int, cache_path: str | None) -> dict:
    known = {}
    if cache_path and os.path.exists(cache_path):
        known = classify_mod.read_canonical_cache(cache_path)
    tuples = [t for t in classify_mod.enumerate_deformable(p) if t not in known]
    if tuples:
        if workers > 1:
            chunks = [tuples[i::workers] for i in range(workers)]
            with Pool(workers) as pool:
                for part in pool.map(_canonical_chunk, [(p, c) for c in chunks if c]):
                    known.update(part)
        else:
            cache = classify_mod.OrbitCache(p)
            for t in tuples:
                known[t] = cache.canonical(t)
    if cache_path:
        classify_mod.write_canonical_cache(cache_path, known)
    return known


def cmd_classify(args, parser) -> int:
    if args.workers < 1:
        parser.error("--workers must be >= 1")
    canonical = _canonical_map(args.p, args.workers, args.cache)
    results = classify_mod.classify_orbits(args.p, args.parity, canonical_map=canonical)
    # worker count is an execution detail, not an input: reports stay
    # byte-identical across pool sizes
    opts = {"p": args.p, "parity": args.parity}
    return _emit(_report("classify", opts, results, [], True))


def cmd_logical(args, parser) -> int:
    code = _resolve_code(args, parser)
    torus = TorusCode(code, args.dims)
    abelian = torus.check_abelian()
    results: dict = {"dims": list(args.dims), "abelian": abelian}
    ok = abelian
    if abelian:
        census = planar_census(code, args.dims)
        k = encoded_qudit_count(torus)
        prod = product_of_all_generators(code, args.dims)
        ops = []
        tables = {}
        for normal in range(3):
            configs = census_operators(code, args.dims, normal)
            ops.append(len(configs))
            tables[f"normal_{'xyz'[normal]}"] = \
                logical_commutation_table(configs).tolist()
        results.update({
            "census": census,
            "encoded_qudits": k,
            "product_of_all_generators_identity": prod.is_identity(),
            "commutation_tables": tables,
        })
        if args.ktable >= 2:
            table = encoded_qudit_table(code, sizes=range(2, args.ktable + 1))
            results["k_table"] = {"x".join(map(str, dims)): kk
                                  for dims, kk in sorted(table.items())}
        if code.parity == "A":
            ok = ok and prod.is_identity() and k >= 1
    opts = {"dims": list(args.dims), "ktable": args.ktable}
    return _emit(_report("logical", opts, results, [], ok, code))


def cmd_algebra(args, parser) -> int:
    code = _resolve_code(args, parser)
    if code.p == 2:
        parser.error("phase algebra requires an odd prime modulus")
    try:
        law = verify_commutation_law(code.p)
        proj = verify_projector_identities(code, args.dims, allow_large=args.allow_large)
        inv = verify_inversion_action(code, args.dims, r=args.r,
                                      allow_large=args.allow_large)
    except ValueError as e:
        parser.error(str(e))
    results = {
        "commutation_law": law,
        "projectors": proj,
        "inversion_action": inv,
    }
    ok = law and all(proj.values()) and inv["matches"]
    opts = {"dims": list(args.dims), "r": args.r}
    return _emit(_report("algebra", opts, results, [], ok, code))


def cmd_scan(args, parser) -> int:
    if args.workers < 1:
        parser.error("--workers must be >= 1")
    canonical = _canonical_map(args.p, args.workers, None)
    orbits = classify_mod.classify_orbits(args.p, "S", canonical_map=canonical)
    results = {
        "deformable_count": orbits["deformable_count"],
        "orbit_count": orbits["orbit_count"],
        "orbits": orbits["orbits"],
    }
    if orbits["deformable_count"]:
        results["theorem1_scan"] = classify_mod.scan_theorem1(
            args.p, oracle_wmax=args.oracle_wmax)
    discrepancies = []
    for entry in orbits["orbits"]:
        discrepancies.extend(entry["theorem1"]["discrepancies"])
    opts = {"p": args.p, "oracle_wmax": args.oracle_wmax}
    return _emit(_report("scan", opts, results, discrepancies, True))


COMMANDS = {
    "check": cmd_check,
    "strings": cmd_strings,
    "classify": cmd_classify,
    "logical": cmd_logical,
    "algebra": cmd_algebra,
    "scan": cmd_scan,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.schema_version != SCHEMA_VERSION:
        parser.error(f"unsupported schema version {args.schema_version!r}")
    try:
        return COMMANDS[args.command](args, parser)
    except (ValueError, OSError) as e:
        parser.error(str(e))


if __name__ == "__main__":
    sys.exit(main())
