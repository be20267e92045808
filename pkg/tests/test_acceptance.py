"""Acceptance checks 1 to 8. Each test prints one PASS/FAIL line.

Run on its own with ``pytest -s tests/test_acceptance.py``; the summary
lines also show up in ``pytest -v`` output because they bypass capture.
"""

import csv
import math
import random
import statistics
import time

import pytest

from supertrace import bench
from supertrace.errors import InconsistentResidues
from supertrace.homres import (
    QuotientRing,
    evaluate_step,
    identity,
    restrict_chain,
    restricted_add,
    restricted_scalar_mul,
)
from supertrace.isogenies import Chain
from supertrace.kernels import kernel_generator, kernel_polynomials
from supertrace.trace import (
    METHODS,
    check_characteristic_equation,
    compute_trace,
    crt_symmetric,
    trace_mod_ell,
    trace_mod_p,
    trace_oracle_bruteforce,
    trace_schoof_mod_ell,
)

from conftest import cycle, prime, supersingular, times_two_chain

BITS = (16, 20, 24)
CURVES = 5


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def suite():
    """Instances for bit lengths 16/20/24, every method timed on each."""
    instances, results, records = [], {}, []
    for b in BITS:
        p = prime(b, b)
        L = 4 * math.ceil(math.log2(p))
        for seed in range(CURVES):
            inst = bench.make_instance(b, seed, L)
            instances.append(inst)
            for m in METHODS:
                t0 = time.perf_counter()
                r = compute_trace(inst.chain, m, inst.seed)
                ms = (time.perf_counter() - t0) * 1000.0
                results[(b, seed, m)] = r
                records.append(
                    bench.BenchRecord(bench.METHOD_TAGS[m], b, seed, inst.length, inst.chain.degree.bit_length() - 1, ms, r.trace)
                )
    return instances, results, records


def test_c1_cross_method(suite, capsys):
    instances, results, _ = suite
    bad = []
    for inst in instances:
        ts = {m: results[(inst.p_bits, inst.seed, m)].trace for m in METHODS}
        if len(set(ts.values())) != 1:
            bad.append((inst.p_bits, inst.seed, ts))
    lengths = sorted({inst.length for inst in instances})
    report(capsys, 1, not bad, f"{len(instances)} instances, chain lengths {lengths}, disagreements {bad}")


def test_c2_characteristic_equation(suite, capsys):
    instances, results, _ = suite
    bad = [
        (i.p_bits, i.seed)
        for i in instances
        if not check_characteristic_equation(i.chain, results[(i.p_bits, i.seed, "sea_p_points")].trace, 10, i.seed)
    ]
    report(capsys, 2, not bad, f"10 points on each of {len(instances)} instances, failures {bad}")


def test_c3_oracle(capsys):
    bad, n = [], 0
    for seed in range(20):
        ch = bench.make_instance(16, 100 + seed).chain
        for ell in (3, 5, 7, 11, 13):
            oracle = trace_oracle_bruteforce(ch, ell, seed)
            sea = trace_mod_ell(ch, ell, seed)
            schoof = trace_schoof_mod_ell(ch, ell)
            n += 1
            if not sea == schoof == oracle:
                bad.append((seed, ell, sea, schoof, oracle))
    report(capsys, 3, not bad, f"{n} (instance, l) pairs at 16 bits, mismatches {bad}")


def test_c4_mod_p(suite, capsys):
    instances, results, _ = suite
    bad = []
    for i in instances:
        t = results[(i.p_bits, i.seed, "sea")].trace
        if t % i.curve.p != trace_mod_p(i.chain):
            bad.append((i.p_bits, i.seed))
    report(capsys, 4, not bad, f"{len(instances)} instances, failures {bad}")


def _padded(base: Chain, at: int) -> Chain:
    E_k = base.prefix(at).codomain
    pad = times_two_chain(E_k)
    return Chain(base.curve, list(base.steps[:at]) + list(pad.steps) + list(base.steps[at:]))


def test_c5_fixtures(capsys):
    checks = []
    for p in (431, 1019, prime(16, 16)):
        E = supersingular(p, 0)
        checks.append((f"identity p={p}", compute_trace(Chain(E)).trace == 2))
        checks.append((f"[+-2] p={p}", abs(compute_trace(times_two_chain(E)).trace) == 4))
        base = cycle(p, 12, 0)
        for at in (0, 5, len(base.steps)):
            ch = _padded(base, at)
            ch.validate()
            t = compute_trace(ch).trace
            ok = ch.degree == 4 * base.degree and check_characteristic_equation(ch, t, 10, at)
            checks.append((f"padded p={p} at {at}", ok))
    bad = [name for name, ok in checks if not ok]
    report(capsys, 5, not bad, f"{len(checks)} fixtures, failures {bad}")


def _interpolation_case(rng: random.Random):
    p = rng.choice((431, 1019, 2063, prime(14, 14)))
    seed = rng.randrange(3)
    ch = cycle(p, 16, seed)
    E = ch.curve
    ell = rng.choice((3, 5, 7))
    hs = kernel_polynomials(E, ell, 3, seed)
    h = hs[rng.randrange(len(hs))]
    R = QuotientRing(E, h, ell)
    P = kernel_generator(E, h, rng.randrange(100))
    k = rng.randint(0, len(ch.steps))
    prefix = ch.prefix(k)

    bad = []
    I = identity(R)
    m, n = rng.randrange(1, ell), rng.randrange(1, ell)
    mI, nI = restricted_scalar_mul(m, I), restricted_scalar_mul(n, I)
    if mI.at(P) != E.mul(m, P):
        bad.append("scalar")
    if restricted_add(mI, nI).at(P) != E.mul(m + n, P):
        bad.append("add")
    acc, Q = I, P
    for st in prefix.steps:
        acc, Q = evaluate_step(st, acc), st.evaluate(Q)
        if acc.at(P) != Q:
            bad.append("evaluate")
            break
    folded = restrict_chain(prefix, R)
    if folded.at(P) != prefix.evaluate(P):
        bad.append("restrict_chain")
    scaled = restricted_scalar_mul(m, folded)
    if scaled.at(P) != prefix.codomain.mul(m, prefix.evaluate(P)):
        bad.append("scalar after restrict")
    return (p, seed, ell, k), bad


def test_c6_interpolation(capsys):
    rng = random.Random(2024)
    failures = []
    for _ in range(200):
        case, bad = _interpolation_case(rng)
        if bad:
            failures.append((case, bad))
    report(capsys, 6, not failures, f"200 (curve, l, prefix) cases, failures {failures}")


def test_c7_timing_order(suite, tmp_path, capsys):
    _, _, records = suite
    csv_path = tmp_path / "bench.csv"
    csv_path.write_text(bench.to_csv(sorted(records, key=lambda r: (r.method, r.p_bits, r.seed))))
    with csv_path.open() as fh:
        rows = list(csv.DictReader(fh))
    med = {}
    for m in bench.METHOD_TAGS.values():
        med[m] = statistics.median(float(r["time_ms"]) for r in rows if r["method"] == m and r["p_bits"] == "24")
    ok = med["sea"] < med["schoof"] and med["sea+p"] <= med["sea"]
    shown = ", ".join(f"{k} {v:.1f} ms" for k, v in sorted(med.items(), key=lambda kv: kv[1]))
    report(capsys, 7, ok, f"24-bit medians: {shown}")


def test_c8_crt_soundness(suite, capsys):
    instances, results, _ = suite
    problems = []
    perturbed = 0
    for i in instances:
        for m in METHODS:
            res = results[(i.p_bits, i.seed, m)]
            t, D, N = res.trace, res.degree, res.modulus
            if N * N <= 16 * D or t * t > 4 * D:
                problems.append((i.p_bits, i.seed, m, "bound"))
            if any((t - r.residue) % r.modulus for r in res.residues):
                problems.append((i.p_bits, i.seed, m, "residue"))
            # any other match differs by a multiple of N, which exceeds the interval width
            if any((t + k * N) ** 2 < 4 * D for k in (-1, 1)):
                problems.append((i.p_bits, i.seed, m, "unique"))
            pairs = [(r.modulus, r.residue) for r in res.residues]
            for j in range(len(pairs)):
                bumped = list(pairs)
                bumped[j] = (pairs[j][0], (pairs[j][1] + 1) % pairs[j][0])
                perturbed += 1
                try:
                    t2 = crt_symmetric(bumped, D)
                except InconsistentResidues:
                    continue
                if check_characteristic_equation(i.chain, t2, 10, i.seed):
                    problems.append((i.p_bits, i.seed, m, f"perturbed residue {j} accepted"))
    report(capsys, 8, not problems, f"{len(results)} results, {perturbed} perturbations, problems {problems}")
