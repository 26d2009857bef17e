"""Command-line interface.

Exit codes: 0 success, 1 property failure, 2 input error, 3 precondition
violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import serialize as ser
from .classifier import (
    GenericFamily,
    check_witness,
    classify,
    normalize_order,
    witness_from_pairing,
)
from .cosets import (
    CosetIndex,
    check_admissible,
    check_unipotent_pairing,
    enumerate_I,
    flag_invariants,
    involution_of,
    levi_intersection,
    representative,
    roundtrip_s,
    verify_modulus_identity,
    verify_w_equals_uu_sigma,
)
from .errors import GaldistError, PreconditionViolated
from .exact import check_nonsquare, format_rational
from .generate import FamilyParams, derive_seed, generate_family, redraw_dist_table
from .roots import Composition, compositions

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3
MAX_EXHAUSTIVE_N = 8


class InputError(Exception):
    pass


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    """Ordered map; results never depend on the worker count."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def _emit(report: dict, fmt: str, table: Callable[[dict], Iterable[str]]) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2))
    else:
        for line in table(report):
            print(line)


# --------------------------------------------------------------------------
# coset checks


def coset_checks(s: CosetIndex, d: Fraction) -> dict[str, bool]:
    u = representative(s, d)
    try:
        levi_ok = levi_intersection(s) == s.levi
    except GaldistError:
        levi_ok = False
    return {
        "w_equals_uu_sigma": verify_w_equals_uu_sigma(s, d),
        "admissible": check_admissible(s),
        "unipotent_pairing": check_unipotent_pairing(s),
        "modulus_identity": verify_modulus_identity(s),
        "levi_intersection": levi_ok,
        "roundtrip": roundtrip_s(u, s.base) == s,
    }


def cmd_cosets(args) -> int:
    try:
        comp = Composition.parse(args.composition)
    except ValueError as exc:
        raise InputError(f"invalid composition {args.composition!r}: {exc}") from exc
    entries = []
    for s in enumerate_I(comp):
        entries.append({
            "s": ser.coset_index_to_json(s),
            "representative": ser.matrix_to_json(representative(s, args.d)),
            "involution": involution_of(s).cycle_notation(),
            "levi": list(s.levi),
            "checks": coset_checks(s, args.d),
            "flag_invariants": [list(r) for r in flag_invariants(s)],
        })
    report = {"composition": list(comp), "d": format_rational(args.d), "count": len(entries), "entries": entries}

    def table(rep):
        yield f"I{tuple(rep['composition'])}: {rep['count']} double cosets (d = {Fraction(rep['d'])})"
        for e in rep["entries"]:
            status = "ok" if all(e["checks"].values()) else "FAIL " + ",".join(k for k, v in e["checks"].items() if not v)
            rows = " ".join(",".join(map(str, r)) for r in e["s"]["entries"])
            yield f"  s=[{rows}]  w={e['involution']:<16} M_s={tuple(e['levi'])}  {status}"

    _emit(report, args.format, table)
    return EXIT_OK if all(all(e["checks"].values()) for e in entries) else EXIT_FAIL


def _verify_composition(job: tuple[tuple[int, ...], Fraction]) -> dict:
    parts, d = job
    comp = Composition(parts)
    count = 0
    for s in enumerate_I(comp):
        count += 1
        checks = coset_checks(s, d)
        if not all(checks.values()):
            return {"composition": parts, "count": count,
                    "failure": {"s": ser.coset_index_to_json(s), "checks": checks}}
    return {"composition": parts, "count": count, "failure": None}


def cmd_verify(args) -> int:
    if not 1 <= args.max_n <= MAX_EXHAUSTIVE_N:
        raise InputError(f"--max-n must be in 1..{MAX_EXHAUSTIVE_N}")
    start = time.perf_counter()
    jobs = [(tuple(c), args.d) for n in range(1, args.max_n + 1) for c in compositions(n)]
    results = _map(_verify_composition, jobs, args.workers)
    failure = next((r for r in results if r["failure"]), None)
    report = {
        "max_n": args.max_n,
        "d": format_rational(args.d),
        "compositions": len(results),
        "cases": sum(r["count"] for r in results),
        "passed": failure is None,
        "first_failure": failure and {"composition": list(failure["composition"]), **failure["failure"]},
        "elapsed_s": round(time.perf_counter() - start, 3),
    }

    def table(rep):
        yield f"verified {rep['cases']} cosets over {rep['compositions']} compositions (n <= {rep['max_n']}, d = {Fraction(rep['d'])})"
        if rep["passed"]:
            yield "PASS"
        else:
            ff = rep["first_failure"]
            yield f"FAIL at composition {tuple(ff['composition'])}, s = {ff['s']['entries']}: {ff['checks']}"
        yield f"elapsed {rep['elapsed_s']} s"

    _emit(report, args.format, table)
    return EXIT_OK if failure is None else EXIT_FAIL


# --------------------------------------------------------------------------
# classification


def load_family(path: str) -> GenericFamily:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return ser.family_from_json(obj)
    except PreconditionViolated:
        raise
    except (ser.FormatError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed family file {path}: {exc}") from exc


def _verdict_json(v) -> dict:
    return {
        "distinguished": v.distinguished,
        "agree": v.agree,
        "pairing": v.pairing and ser.pairing_to_json(v.pairing),
        "witness": v.witness and ser.witness_to_json(v.witness[1]),
    }


def cmd_classify(args) -> int:
    family = load_family(args.file)
    if not family.is_closed():
        raise PreconditionViolated("family is not stable under D -> D^{dual sigma}; it cannot be distinguished")
    normalized = normalize_order(family)
    v_norm = classify(family)
    v_given = classify(family, normalize=False)
    report = {
        "verdict": "DISTINGUISHED" if v_norm.distinguished else "NOT DISTINGUISHED",
        "normalized_family": ser.family_to_json(normalized)["segments"],
        "normalized": _verdict_json(v_norm),
        "given_order": _verdict_json(v_given),
    }

    def table(rep):
        yield rep["verdict"]
        for label in ("normalized", "given_order"):
            part = rep[label]
            yield f"[{label}] pairing/witness agree: {part['agree']}"
            if part["pairing"]:
                yield f"  pairing certificate: order={part['pairing']['order']} r={part['pairing']['r']}"
            else:
                yield "  no pairing certificate"
            if part["witness"]:
                yield f"  witness s = {part['witness']['s']['entries']}"
            else:
                yield "  no Jacquet witness"

    _emit(report, args.format, table)
    # the given-order comparison is informational only
    return EXIT_OK if v_norm.agree else EXIT_FAIL


# --------------------------------------------------------------------------
# randomized experiment


def run_trial(job: tuple[int, int, int, FamilyParams]) -> dict:
    seed, k, tables, params = job
    family = generate_family(derive_seed(seed, k), params)
    verdicts = []
    unnormalized_disagreements = 0
    converse_checked = 0
    failure = None
    for m in range(tables):
        fam = redraw_dist_table(family, derive_seed(seed, k, m), params)
        v = classify(fam)
        ok = v.agree
        if v.pairing is not None:
            norm = normalize_order(fam)
            converse_checked += 1
            ok = ok and check_witness(norm, witness_from_pairing(norm, v.pairing)) is not None
        if not classify(fam, normalize=False).agree:
            unnormalized_disagreements += 1
        if not ok:
            verdicts.append("FAIL")
            failure = failure or ser.family_to_json(fam)
        else:
            verdicts.append("positive" if v.distinguished else "negative")
    return {
        "trial": k,
        "t": len(family),
        "verdicts": verdicts,
        "converse_checked": converse_checked,
        "unnormalized_disagreements": unnormalized_disagreements,
        "failure": failure,
    }


def fuzz_report(trials: int, seed: int, workers: int = 1, tables: int = 2,
                params: FamilyParams = FamilyParams()) -> dict:
    start = time.perf_counter()
    jobs = [(seed, k, tables, params) for k in range(trials)]
    results = _map(run_trial, jobs, workers)
    verdicts = [v for r in results for v in r["verdicts"]]
    failures = [{"trial": r["trial"], "family": r["failure"]} for r in results if r["failure"]]
    return {
        "trials": trials,
        "seed": seed,
        "tables_per_family": tables,
        "params": asdict(params),
        "evaluations": len(verdicts),
        "passed": verdicts.count("positive") + verdicts.count("negative"),
        "failed": verdicts.count("FAIL"),
        "positive": verdicts.count("positive"),
        "negative": verdicts.count("negative"),
        "converse_checked": sum(r["converse_checked"] for r in results),
        "unnormalized_disagreements": sum(r["unnormalized_disagreements"] for r in results),
        "verdicts": [r["verdicts"] for r in results],
        "failures": failures,
        "elapsed_s": round(time.perf_counter() - start, 3),
    }


def cmd_fuzz(args) -> int:
    if args.trials < 0 or args.tables < 1:
        raise InputError("--trials must be >= 0 and --tables >= 1")
    try:
        params = FamilyParams(max_t=args.max_t, max_len=args.max_len,
                              universe_size=args.universe_size, max_degree=args.max_degree)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report = fuzz_report(args.trials, args.seed, args.workers, args.tables, params)

    def table(rep):
        yield (f"{rep['passed']}/{rep['evaluations']} pass over {rep['trials']} families "
               f"x {rep['tables_per_family']} tables (seed {rep['seed']})")
        yield f"branches: positive {rep['positive']}, negative {rep['negative']}"
        yield f"constructive converse checked: {rep['converse_checked']}"
        yield f"un-normalized order disagreements (recorded, not asserted): {rep['unnormalized_disagreements']}"
        yield f"elapsed {rep['elapsed_s']} s"

    _emit(report, args.format, table)
    for f in report["failures"]:
        print(json.dumps(f), file=sys.stderr)
    return EXIT_OK if report["failed"] == 0 else EXIT_FAIL


# --------------------------------------------------------------------------


def _parse_d(text: str) -> Fraction:
    try:
        return check_nonsquare(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"invalid --d {text!r}: {exc}") from exc


def _default_seed() -> int:
    env = os.environ.get("GALDIST_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"GALDIST_SEED must be an integer, got {env!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--d", type=_parse_d, default=Fraction(2), help="value of delta^2 (non-square rational)")
    common.add_argument("--workers", type=int, default=1)

    parser = argparse.ArgumentParser(prog="galdist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cosets", parents=[common], help="list I(n) with representatives and checks")
    p.add_argument("composition", help="comma separated parts, e.g. 2,1")
    p.set_defaults(func=cmd_cosets)

    p = sub.add_parser("verify", parents=[common], help="exhaustive coset checks for all n <= max-n")
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", parents=[common], help="decide distinction for a family file")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("fuzz", parents=[common], help="randomized equivalence experiment")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None, help="defaults to $GALDIST_SEED, then 0")
    p.add_argument("--tables", type=int, default=2, help="random distinction tables per family")
    p.add_argument("--max-t", type=int, default=6)
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--universe-size", type=int, default=6)
    p.add_argument("--max-degree", type=int, default=2)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        if args.workers < 1:
            raise InputError("--workers must be >= 1")
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionViolated as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
