"""Acceptance suite. Each test prints one ``criterion N: PASS/FAIL`` line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also repeated in the terminal summary.
"""
import json
import random
import time
from fractions import Fraction as Q
from itertools import permutations

from galdist.classifier import check_witness, classify, normalize_order, witness_from_pairing
from galdist.cli import main
from galdist.cosets import (
    check_admissible,
    check_unipotent_pairing,
    enumerate_I,
    flag_dimensions,
    representative,
    roundtrip_s,
    verify_modulus_identity,
    verify_w_equals_uu_sigma,
)
from galdist.generate import FamilyParams, derive_seed, generate_family, redraw_dist_table
from galdist.roots import Composition, compositions
from galdist.segments import LabelUniverse, Segment, concat_all, jacquet_split

N_FAMILIES = 1000
TABLES = 2
SEED = 42


def all_cosets(max_n):
    return [s for n in range(1, max_n + 1) for c in compositions(n) for s in enumerate_I(c)]


def test_criterion_1_involution_counts(acceptance_line):
    oracle = [sum(all(p[p[i]] == i for i in range(n)) for p in permutations(range(n))) for n in range(1, 7)]
    start = time.perf_counter()
    counts = [len(enumerate_I(Composition([1] * n))) for n in range(1, 7)]
    elapsed = time.perf_counter() - start
    ok = counts == oracle == [1, 2, 4, 10, 26, 76] and elapsed < 1.0
    acceptance_line(1, ok, f"|I(1^n)| n=1..6 = {counts}, oracle {oracle}, {elapsed:.3f} s (< 1 s)")
    assert ok


def test_criterion_2_representative_identity(acceptance_line):
    cases = all_cosets(5)
    start = time.perf_counter()
    bad = [(d, s) for d in (Q(2), Q(3)) for s in cases if not verify_w_equals_uu_sigma(s, d)]
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    acceptance_line(2, ok, f"u.u^-sigma = w for {2 * len(cases) - len(bad)}/{2 * len(cases)} "
                           f"(s, d in {{2, 3}}), n <= 5, {elapsed:.2f} s (< 300 s)")
    assert ok, bad[:3]


def test_criterion_3_root_level_checks(acceptance_line):
    cases = all_cosets(5)
    bad = [s for s in cases
           if not (check_admissible(s) and check_unipotent_pairing(s) and verify_modulus_identity(s))]
    ok = not bad
    acceptance_line(3, ok, f"admissible + unipotent pairing + modulus identity: "
                           f"{len(cases) - len(bad)}/{len(cases)} cosets, n <= 5")
    assert ok, bad[:3]


def _closed_form(s):
    t = s.t
    return tuple(tuple(sum(s.entries[k][l] for k in range(i + 1) for l in range(j + 1))
                       for j in range(t)) for i in range(t))


def test_criterion_4_flag_roundtrip(acceptance_line):
    cases = all_cosets(4)
    bad = []
    for s in cases:
        u = representative(s)
        if flag_dimensions(u, s.base) != _closed_form(s) or roundtrip_s(u, s.base) != s:
            bad.append(s)
    ok = not bad
    acceptance_line(4, ok, f"flag dims match closed form and recover s: {len(cases) - len(bad)}/{len(cases)}, n <= 4")
    assert ok, bad[:3]


def _random_composition(rng, n):
    cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 1))) if n > 1 else []
    bounds = [0] + cuts + [n]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def test_criterion_5_jacquet_calculus(acceptance_line):
    rng = random.Random(derive_seed("criterion", 5))
    universe = LabelUniverse((1, 2, 3, 4), (0, 1, 2, 3), (0, 1, 2, 3))
    trials, bad, defined = 10_000, [], 0
    for _ in range(trials):
        base = rng.randrange(4)
        r = universe.degree[base]
        seg = Segment(base, Q(rng.randint(-12, 12), rng.choice((1, 2))), rng.randint(1, 6))
        parts = _random_composition(rng, seg.length * r)
        pieces = jacquet_split(seg, parts, universe)
        divisible = all(p % r == 0 for p in parts)
        if (pieces is not None) != divisible:
            bad.append((seg, parts))
        elif pieces is not None:
            defined += 1
            if concat_all(pieces) != seg or [p.size(universe) for p in pieces] != parts:
                bad.append((seg, parts))
    ok = not bad
    acceptance_line(5, ok, f"split exists <=> divisibility and concat(split) = id: "
                           f"{trials - len(bad)}/{trials} ({defined} defined splits)")
    assert ok, bad[:3]


def _classification_run():
    params = FamilyParams()
    rows = []
    for k in range(N_FAMILIES):
        family = generate_family(derive_seed(SEED, k), params)
        for m in range(TABLES):
            fam = redraw_dist_table(family, derive_seed(SEED, k, m), params)
            rows.append((fam, classify(fam)))
    return rows


_RUN = {}


def _cached_run():
    if "rows" not in _RUN:
        start = time.perf_counter()
        _RUN["rows"] = _classification_run()
        _RUN["elapsed"] = time.perf_counter() - start
    return _RUN["rows"], _RUN["elapsed"]


def test_criterion_6_classification_equivalence(acceptance_line):
    rows, elapsed = _cached_run()
    in_scope = all(len(f) <= 6 and max(s.length for s in f.segments) <= 4 and f.is_closed() for f, _ in rows)
    agree = sum(v.agree for _, v in rows)
    positive = sum(v.distinguished for _, v in rows)
    negative = len(rows) - positive
    ok = in_scope and agree == len(rows) and positive >= 100 and negative >= 100 and elapsed < 60
    acceptance_line(6, ok, f"pairing <=> witness on {agree}/{len(rows)} ({N_FAMILIES} families x {TABLES} tables), "
                           f"positive {positive}, negative {negative}, {elapsed:.2f} s (< 60 s)")
    assert ok


def test_criterion_7_constructive_converse(acceptance_line):
    rows, _ = _cached_run()
    checked = bad = 0
    for fam, v in rows:
        if v.pairing is None:
            continue
        checked += 1
        norm = normalize_order(fam)
        if check_witness(norm, witness_from_pairing(norm, v.pairing)) is None:
            bad += 1
    ok = checked > 0 and bad == 0
    acceptance_line(7, ok, f"block s from pairing certificate accepted: {checked - bad}/{checked}")
    assert ok


def _fuzz_verdicts(capsys, workers):
    code = main(["fuzz", "--trials", str(N_FAMILIES), "--seed", str(SEED),
                 "--workers", str(workers), "--format", "json"])
    report = json.loads(capsys.readouterr().out)
    return code, report["verdicts"]


def test_criterion_8_parallel_determinism(capsys, acceptance_line):
    code1, serial = _fuzz_verdicts(capsys, 1)
    code4, parallel = _fuzz_verdicts(capsys, 4)
    ok = serial == parallel and len(serial) == N_FAMILIES
    with capsys.disabled():
        acceptance_line(8, ok, f"fuzz --trials {N_FAMILIES} --seed {SEED}: workers=4 verdicts identical to "
                               f"workers=1 ({sum(map(len, serial))} verdicts; exit codes {code1}, {code4})")
    assert ok
