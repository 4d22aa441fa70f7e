"""Exhaustive verification sweeps: reproducing the theorem at small orders.

Run:  python demos/04_verification_sweeps.py
"""

import tempfile
from pathlib import Path

from tourpath import SweepConfig, gen_all, iso_classes, report, sweep
from tourpath.canon import classify_small

# -- the full n = 5 census -------------------------------------------------------
# 1024 labelled tournaments times 16 patterns, every outcome cross-checked
# against the exact oracle.  The only failures are the labelled copies of the
# regular 5-tournament on its two antidirected patterns.

cfg = SweepConfig(n_values=(5,), tournaments="exhaustive", patterns="all",
                  oracle_fraction=1.0)
summary = sweep(cfg)
print(f"n=5: {summary.total} instances, {summary.exceptions} failures,"
      f" {summary.disagreements} disagreements")
print("failing tournaments:", len(summary.failing_tournaments[5]))
print("failing patterns:", summary.failing_patterns[5])

# Both failing patterns are antidirected, and the failing tournament count
# matches the labelled copies of the regular 5-tournament:
copies = sum(1 for t in gen_all(5)
             if (c := classify_small(t)) is not None and c.kind == "T5")
assert len(summary.failing_tournaments[5]) == copies == 24

# -- isomorphism classes instead of labelled streams ------------------------------
print("iso classes per order:", [sum(1 for _ in iso_classes(n)) for n in range(1, 8)])

# -- random sweeps at larger orders ------------------------------------------------
# Existence is guaranteed above order 7; the sweep verifies every witness and
# reports how often the variant normalization had to fall back.

cfg = SweepConfig(n_values=(24,), tournaments="random:uniform:300:99",
                  patterns="random:4:5", oracle_fraction=0.05)
summary = sweep(cfg)
print(f"n=24 random: {summary.total} instances, all witnesses valid,"
      f" fallback rate {summary.fallback_rate():.3f},"
      f" oracle sample {summary.oracle_checked} agreeing")

# -- records on disk and the byte-stable report --------------------------------------
with tempfile.TemporaryDirectory() as d:
    out = Path(d) / "records.jsonl"
    cfg = SweepConfig(n_values=(4,), tournaments="exhaustive", patterns="all",
                      oracle_fraction=1.0, output=str(out))
    sweep(cfg)
    text, csv = report(str(out))
    print("\nreport for the n=4 sweep:")
    print(text)
