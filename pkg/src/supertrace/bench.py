"""Timing harness comparing the four trace methods on seeded instances."""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass

from .curves import Curve
from .endgen import default_length, random_cycle, random_prime, random_supersingular_curve
from .isogenies import Chain
from .trace import METHODS, compute_trace

HEADER = ("method", "p_bits", "seed", "L", "degree_bits", "time_ms", "trace")
METHOD_TAGS = {"schoof": "schoof", "sea": "sea", "sea_p": "sea+p", "sea_p_points": "sea+p+points"}


@dataclass(frozen=True)
class Instance:
    p_bits: int
    seed: int
    curve: Curve
    chain: Chain

    @property
    def length(self) -> int:
        return len(self.chain.steps)


@dataclass(frozen=True)
class BenchRecord:
    method: str
    p_bits: int
    seed: int
    L: int
    degree_bits: int
    time_ms: float
    trace: int

    def row(self) -> list[str]:
        return [
            self.method,
            str(self.p_bits),
            str(self.seed),
            str(self.L),
            str(self.degree_bits),
            f"{self.time_ms:.3f}",
            str(self.trace),
        ]


def make_instance(p_bits: int, seed: int, length: int | None = None) -> Instance:
    """One prime per bit length; ``seed`` picks the curve and the cycle."""
    p = random_prime(p_bits, seed=p_bits)
    E = random_supersingular_curve(p, seed)
    chain = random_cycle(E, length or default_length(p), seed)
    return Instance(p_bits, seed, E, chain)


def time_method(chain: Chain, method: str, seed: int = 0) -> tuple[int, float]:
    t0 = time.perf_counter()
    result = compute_trace(chain, method, seed)
    return result.trace, (time.perf_counter() - t0) * 1000.0


def run(bits, reps: int, seed: int = 0, methods=METHODS, progress=None) -> list[BenchRecord]:
    records = []
    for b in bits:
        for r in range(reps):
            inst = make_instance(b, seed + r)
            for m in methods:
                t, ms = time_method(inst.chain, m, inst.seed)
                rec = BenchRecord(METHOD_TAGS[m], b, inst.seed, inst.length, inst.chain.degree.bit_length() - 1, ms, t)
                records.append(rec)
                if progress:
                    progress(rec)
    records.sort(key=lambda r: (r.method, r.p_bits, r.seed))
    return records


def to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def medians(records, p_bits: int) -> dict[str, float]:
    by: dict[str, list[float]] = {}
    for r in records:
        if r.p_bits == p_bits:
            by.setdefault(r.method, []).append(r.time_ms)
    return {m: statistics.median(v) for m, v in by.items()}
