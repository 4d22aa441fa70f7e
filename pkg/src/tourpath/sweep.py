"""Verification sweeps: run the embedder over instance grids, cross-check
against the oracle, and aggregate the outcome census.

Records stream to a sink or a JSONL file; the summary is aggregated on the
fly so exhaustive sweeps never hold their records in memory.  Chunks are
processed in instance order (optionally by a worker pool bounded by
TOURPATH_THREADS), so identical configurations produce identical streams.
"""

from __future__ import annotations

import json
import os
import random
import time
from collections import Counter
from dataclasses import dataclass, field

from .embedder import ExceptionReport, embed, validate
from .generate import gen_random, iso_classes, parse_model
from .oracle import oracle_embed
from .paths import PathPattern
from .tournament import Tournament, TournamentError


class SweepError(RuntimeError):
    """Configuration problem, validation failure, or oracle disagreement."""


@dataclass(frozen=True)
class SweepConfig:
    n_values: tuple[int, ...]
    tournaments: str = "exhaustive"  # exhaustive | iso | random:<model>:<count>:<seed>
    patterns: str = "all"  # all | random:<count>:<seed> | list:<p1>,<p2>,...
    oracle_fraction: float = 1.0
    n0: int = 8
    output: str | None = None

    def validate(self) -> None:
        for n in self.n_values:
            if n < 1:
                raise SweepError(f"bad n {n}")
        kind = self.tournaments.split(":")[0]
        if kind not in ("exhaustive", "iso", "random"):
            raise SweepError(f"unknown tournament source {self.tournaments!r}")
        if kind == "random":
            parts = self.tournaments.split(":")
            if len(parts) < 4:
                raise SweepError("random source needs random:<model...>:<count>:<seed>")
            parse_model(":".join(parts[1:-2]))
            int(parts[-2]), int(parts[-1])
        pkind = self.patterns.split(":")[0]
        if pkind not in ("all", "random", "list"):
            raise SweepError(f"unknown pattern source {self.patterns!r}")
        if not (0.0 <= self.oracle_fraction <= 1.0):
            raise SweepError("oracle_fraction must be within [0, 1]")
        if kind == "exhaustive" and any(n <= 6 for n in self.n_values):
            if self.oracle_fraction != 1.0:
                raise SweepError(
                    "exhaustive sweeps at n <= 6 are the full cross-check regime; "
                    "oracle_fraction must be 1"
                )

    @staticmethod
    def parse(text: str) -> "SweepConfig":
        """Parse key=value lines (hash comments allowed)."""
        kv: dict[str, str] = {}
        for ln, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise SweepError(f"config line {ln}: expected key=value, got {raw!r}")
            key, val = line.split("=", 1)
            kv[key.strip()] = val.strip()
        if "n" not in kv:
            raise SweepError("config needs an n=... line")
        cfg = SweepConfig(
            n_values=_parse_n(kv.pop("n")),
            tournaments=kv.pop("tournaments", "exhaustive"),
            patterns=kv.pop("patterns", "all"),
            oracle_fraction=float(kv.pop("oracle_fraction", "1.0")),
            n0=int(kv.pop("n0", "8")),
            output=kv.pop("output", None),
        )
        if kv:
            raise SweepError(f"unknown config keys: {sorted(kv)}")
        cfg.validate()
        return cfg


def _parse_n(text: str) -> tuple[int, ...]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return tuple(out)


@dataclass
class VerificationRecord:
    instance_id: int
    tournament: str
    pattern: str
    outcome: dict  # {"witness": [...]} or {"exception": kind}
    method: list[str]
    oracle_checked: bool
    agree: bool | None
    elapsed_us: int

    def to_json(self) -> str:
        d = {
            "id": self.instance_id,
            "t": self.tournament,
            "p": self.pattern,
            "outcome": self.outcome,
            "method": self.method,
            "oracle_checked": self.oracle_checked,
            "us": self.elapsed_us,
        }
        if self.oracle_checked:
            d["agree"] = self.agree
        return json.dumps(d, separators=(",", ":"), sort_keys=True)

    @staticmethod
    def from_json(line: str) -> "VerificationRecord":
        d = json.loads(line)
        return VerificationRecord(
            instance_id=d["id"],
            tournament=d["t"],
            pattern=d["p"],
            outcome=d["outcome"],
            method=list(d["method"]),
            oracle_checked=d["oracle_checked"],
            agree=d.get("agree"),
            elapsed_us=d["us"],
        )


_TIME_BUCKETS = 48  # power-of-two microsecond buckets


@dataclass
class SweepSummary:
    total: int = 0
    witnesses: int = 0
    exceptions: int = 0
    exception_census: Counter = field(default_factory=Counter)
    failing_tournaments: dict = field(default_factory=dict)  # n -> sorted codes
    failing_patterns: dict = field(default_factory=dict)  # n -> sorted sign strings
    per_n: Counter = field(default_factory=Counter)
    method_histogram: Counter = field(default_factory=Counter)
    thm3_fallbacks: int = 0
    qualified: int = 0
    oracle_above_n0_on_qualified: int = 0
    oracle_checked: int = 0
    disagreements: int = 0
    time_hist: list = field(default_factory=lambda: [0] * _TIME_BUCKETS)

    def merge(self, other: "SweepSummary") -> None:
        self.total += other.total
        self.witnesses += other.witnesses
        self.exceptions += other.exceptions
        self.exception_census.update(other.exception_census)
        for n, codes in other.failing_tournaments.items():
            self.failing_tournaments.setdefault(n, set()).update(codes)
        for n, pats in other.failing_patterns.items():
            self.failing_patterns.setdefault(n, set()).update(pats)
        self.per_n.update(other.per_n)
        self.method_histogram.update(other.method_histogram)
        self.thm3_fallbacks += other.thm3_fallbacks
        self.qualified += other.qualified
        self.oracle_above_n0_on_qualified += other.oracle_above_n0_on_qualified
        self.oracle_checked += other.oracle_checked
        self.disagreements += other.disagreements
        for k in range(_TIME_BUCKETS):
            self.time_hist[k] += other.time_hist[k]

    def finalize(self) -> None:
        self.failing_tournaments = {
            n: sorted(codes) for n, codes in sorted(self.failing_tournaments.items())
        }
        self.failing_patterns = {
            n: sorted(p) for n, p in sorted(self.failing_patterns.items())
        }

    def fallback_rate(self) -> float:
        return self.thm3_fallbacks / self.total if self.total else 0.0

    def timing_percentile(self, q: float) -> int:
        """Approximate percentile (upper bucket bound, microseconds)."""
        count = sum(self.time_hist)
        if count == 0:
            return 0
        target = q * count
        seen = 0
        for k, c in enumerate(self.time_hist):
            seen += c
            if seen >= target:
                return 1 << k
        return 1 << (_TIME_BUCKETS - 1)


def _bucket(us: int) -> int:
    return min(max(us, 1).bit_length() - 1, _TIME_BUCKETS - 1)


def _oracle_sampled(instance_id: int, fraction: float) -> bool:
    if fraction >= 1.0:
        return True
    if fraction <= 0.0:
        return False
    x = (instance_id * 0x9E3779B97F4A7C15 + 0x1234567) & ((1 << 64) - 1)
    x ^= x >> 31
    x = (x * 0xBF58476D1CE4E5B9) & ((1 << 64) - 1)
    x ^= x >> 29
    return (x % (10**9)) < fraction * (10**9)


def _all_patterns(n: int) -> list[str]:
    if n == 1:
        return [""]
    return [
        PathPattern(tuple(bool((b >> k) & 1) for k in range(n - 1))).signs()
        for b in range(1 << (n - 1))
    ]


def _patterns_for(cfg_patterns: str, n: int) -> list[str]:
    kind = cfg_patterns.split(":")[0]
    if kind == "all":
        return _all_patterns(n)
    if kind == "random":
        _, count, seed = cfg_patterns.split(":")
        rng = random.Random(int(seed) ^ (n * 0x9E37))
        out = []
        for _ in range(int(count)):
            out.append(PathPattern(tuple(rng.random() < 0.5 for _ in range(n - 1))).signs())
        return out
    body = cfg_patterns.split(":", 1)[1]
    pats = []
    for s in body.split(","):
        p = PathPattern.parse(s)
        if p.n != n:
            raise SweepError(f"pattern {s!r} has {p.n} vertices, sweep n is {n}")
        pats.append(p.signs())
    return pats


def _tournament_specs(cfg: SweepConfig, n: int) -> tuple[str, list]:
    """('codes', [compact codes]) or ('random', (model, count, seed))."""
    kind = cfg.tournaments.split(":")[0]
    if kind == "exhaustive":
        m = n * (n - 1) // 2
        if n > 7:
            raise SweepError(f"exhaustive sweep at n={n} is out of scope; use iso or random")
        return "range", [0, 1 << m]
    if kind == "iso":
        return "codes", [t.to_code() for t in iso_classes(n, allow_n8=True)]
    parts = cfg.tournaments.split(":")
    model = ":".join(parts[1:-2])
    count, seed = int(parts[-2]), int(parts[-1])
    return "random", [model, count, seed]


def _iter_chunk(n: int, spec_kind: str, spec, lo: int, hi: int):
    if spec_kind == "range":
        for bits in range(spec[0] + lo, spec[0] + hi):
            yield Tournament.from_upper_bits(n, bits)
    elif spec_kind == "codes":
        for code in spec[lo:hi]:
            yield Tournament.from_code(code)
    else:
        model, _count, seed = spec
        for k in range(lo, hi):
            yield gen_random(n, seed + k, model)


def _spec_count(spec_kind: str, spec) -> int:
    if spec_kind == "range":
        return spec[1] - spec[0]
    if spec_kind == "codes":
        return len(spec)
    return spec[1]


def _run_chunk(args):
    (n, spec_kind, spec, lo, hi, pattern_strs, oracle_fraction, n0, base_id, collect) = args
    patterns = [PathPattern.from_signs(s) for s in pattern_strs]
    summary = SweepSummary()
    records: list[str] | None = [] if collect else None
    instance_id = base_id
    for t in _iter_chunk(n, spec_kind, spec, lo, hi):
        code = t.to_code() if collect else None
        for p in patterns:
            start = time.perf_counter_ns()
            out = embed(t, p, n0=n0)
            check = _oracle_sampled(instance_id, oracle_fraction)
            agree = None
            if out.is_embedding:
                seq = list(out.result.seq)
                if not validate(t, p, seq):
                    raise SweepError(
                        f"validation failure: {t.to_code()} {p.signs()} -> {seq}"
                    )
                if check:
                    agree = oracle_embed(t, p) is not None
            elif check:
                agree = oracle_embed(t, p) is None
            elapsed = (time.perf_counter_ns() - start) // 1000
            summary.total += 1
            summary.per_n[n] += 1
            summary.time_hist[_bucket(elapsed)] += 1
            if out.method:
                summary.method_histogram[out.method[0]] += 1
            if out.stats.get("thm3_fallback"):
                summary.thm3_fallbacks += 1
            if out.stats.get("variant_qualified"):
                summary.qualified += 1
                if out.stats.get("oracle_above_n0", 0) > 0:
                    summary.oracle_above_n0_on_qualified += 1
            if check:
                summary.oracle_checked += 1
                if agree is False:
                    raise SweepError(
                        f"oracle disagreement: {t.to_code()} {p.signs()}"
                    )
            if out.is_embedding:
                summary.witnesses += 1
                outcome = {"witness": list(out.result.seq)}
            else:
                summary.exceptions += 1
                summary.exception_census[out.result.kind] += 1
                if code is None:
                    code = t.to_code()
                summary.failing_tournaments.setdefault(n, set()).add(code)
                summary.failing_patterns.setdefault(n, set()).add(p.signs())
                outcome = {"exception": out.result.kind}
            if records is not None:
                rec = VerificationRecord(
                    instance_id, code, p.signs(), outcome,
                    list(out.method), check, agree, elapsed,
                )
                records.append(rec.to_json())
            instance_id += 1
    return summary, records


def _thread_count() -> int:
    env = os.environ.get("TOURPATH_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def sweep(cfg: SweepConfig, sink=None) -> SweepSummary:
    """Run the configured sweep; aggregate a summary, stream records out.

    Records go to ``cfg.output`` (JSONL) and/or the ``sink`` callable when
    either is set; with neither, only the summary is built.  Any witness
    validation failure or oracle disagreement aborts with a reproducer line.
    """
    cfg.validate()
    collect = sink is not None or cfg.output is not None
    workers = _thread_count()
    total_summary = SweepSummary()
    out_fh = open(cfg.output, "w") if cfg.output else None
    instance_id = 0
    try:
        for n in cfg.n_values:
            pattern_strs = _patterns_for(cfg.patterns, n)
            spec_kind, spec = _tournament_specs(cfg, n)
            count = _spec_count(spec_kind, spec)
            per_t = len(pattern_strs)
            chunk = max(1, min(16384, (count + 4 * workers - 1) // (4 * workers)))
            tasks = []
            lo = 0
            while lo < count:
                hi = min(count, lo + chunk)
                tasks.append(
                    (n, spec_kind, spec, lo, hi, pattern_strs, cfg.oracle_fraction,
                     cfg.n0, instance_id + lo * per_t, collect)
                )
                lo = hi
            instance_id += count * per_t
            if workers > 1 and len(tasks) > 1:
                import multiprocessing as mp

                with mp.Pool(workers) as pool:
                    for summary, records in pool.imap(_run_chunk, tasks):
                        total_summary.merge(summary)
                        _emit(records, out_fh, sink)
            else:
                for task in tasks:
                    summary, records = _run_chunk(task)
                    total_summary.merge(summary)
                    _emit(records, out_fh, sink)
    finally:
        if out_fh:
            out_fh.close()
    total_summary.finalize()
    return total_summary


def _emit(records, out_fh, sink):
    if records is None:
        return
    for line in records:
        if out_fh:
            out_fh.write(line + "\n")
    if sink:
        for line in records:
            sink(VerificationRecord.from_json(line))


# ---------------------------------------------------------------------------
# reporting


class ReportError(RuntimeError):
    pass


def report(records_path: str) -> tuple[str, str]:
    """Aggregate a stored record stream into (summary text, CSV text).

    Every witness record is re-validated against its tournament code; a
    corrupt line aborts with its line number.  Byte-stable for identical
    input files.
    """
    per_n: Counter = Counter()
    census: Counter = Counter()
    methods: Counter = Counter()
    fallbacks = 0
    witnesses = 0
    exceptions = 0
    checked = 0
    disagreements = 0
    timings: list[int] = []
    total = 0
    with open(records_path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            try:
                rec = VerificationRecord.from_json(line)
                t = Tournament.from_code(rec.tournament)
                p = PathPattern.from_signs(rec.pattern)
            except (KeyError, ValueError, TournamentError) as exc:
                raise ReportError(f"line {lineno}: corrupt record ({exc})")
            total += 1
            per_n[t.n] += 1
            timings.append(rec.elapsed_us)
            if "witness" in rec.outcome:
                witnesses += 1
                if not validate(t, p, rec.outcome["witness"]):
                    raise ReportError(f"line {lineno}: witness fails validation")
            else:
                exceptions += 1
                census[rec.outcome["exception"]] += 1
            for tag in rec.method[:1]:
                methods[tag] += 1
            if any(tag == "thm3_fallback" for tag in rec.method):
                fallbacks += 1
            if rec.oracle_checked:
                checked += 1
                if rec.agree is False:
                    disagreements += 1
    timings.sort()

    def pct(q: float) -> int:
        if not timings:
            return 0
        idx = min(len(timings) - 1, int(q * len(timings)))
        return timings[idx]

    lines = []
    lines.append(f"records: {total}")
    lines.append(f"witnesses: {witnesses}")
    lines.append(f"exceptions: {exceptions}")
    for n in sorted(per_n):
        lines.append(f"n={n}: {per_n[n]}")
    for kind in sorted(census):
        lines.append(f"exception[{kind}]: {census[kind]}")
    for tag in sorted(methods):
        lines.append(f"method[{tag}]: {methods[tag]}")
    rate = fallbacks / total if total else 0.0
    lines.append(f"thm3_fallback_rate: {rate:.6f}")
    lines.append(f"oracle_checked: {checked}")
    lines.append(f"disagreements: {disagreements}")
    lines.append(f"elapsed_us_p50: {pct(0.50)}")
    lines.append(f"elapsed_us_p90: {pct(0.90)}")
    lines.append(f"elapsed_us_p99: {pct(0.99)}")
    text = "\n".join(lines) + "\n"

    csv_lines = ["metric,key,value"]
    csv_lines.append(f"records,,{total}")
    csv_lines.append(f"witnesses,,{witnesses}")
    csv_lines.append(f"exceptions,,{exceptions}")
    for n in sorted(per_n):
        csv_lines.append(f"per_n,{n},{per_n[n]}")
    for kind in sorted(census):
        csv_lines.append(f"exception,{kind},{census[kind]}")
    for tag in sorted(methods):
        csv_lines.append(f"method,{tag},{methods[tag]}")
    csv_lines.append(f"thm3_fallback_rate,,{rate:.6f}")
    csv_lines.append(f"oracle_checked,,{checked}")
    csv_lines.append(f"disagreements,,{disagreements}")
    csv_lines.append(f"elapsed_us_p50,,{pct(0.50)}")
    csv_lines.append(f"elapsed_us_p90,,{pct(0.90)}")
    csv_lines.append(f"elapsed_us_p99,,{pct(0.99)}")
    csv = "\n".join(csv_lines) + "\n"
    return text, csv
