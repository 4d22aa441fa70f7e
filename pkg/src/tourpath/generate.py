"""Instance generation: exhaustive streams, isomorphism classes, seeded random.

Random generation draws from CPython's Mersenne Twister (``random.Random``),
whose bit stream is stable across platforms and versions; the generator
identifier below is recorded so outputs stay reproducible.
"""

from __future__ import annotations

import random

import numpy as np

from .canon import canonical_code
from .tournament import Tournament, TournamentError

GEN_MAX_N = 7
RANDOM_GENERATOR_ID = "mt19937-cpython-v1"

_NUMPY_BUILD_MIN_N = 600


def gen_all(n: int):
    """Every labelled n-tournament exactly once, in encoding order."""
    if n < 1:
        raise TournamentError("n must be >= 1")
    if n > GEN_MAX_N:
        raise TournamentError(
            f"exhaustive enumeration is 2^{n*(n-1)//2} tournaments; "
            f"use iso_classes or gen_random for n > {GEN_MAX_N}"
        )
    m = n * (n - 1) // 2
    for bits in range(1 << m):
        yield Tournament.from_upper_bits(n, bits)


def iso_classes(n: int, allow_n8: bool = False):
    """One canonical representative per isomorphism class.

    Built by extending the (n-1)-classes with one new vertex in every
    possible orientation and deduplicating on canonical codes; every
    n-tournament contains an (n-1)-subtournament, so nothing is missed.
    n = 8 (6880 classes) is slow enough to sit behind a flag.
    """
    if n < 1:
        raise TournamentError("n must be >= 1")
    if n > 8 or (n == 8 and not allow_n8):
        raise TournamentError(f"iso_classes supports n <= 7 (n = 8 behind allow_n8)")
    if n == 1:
        yield Tournament(1, (0,))
        return
    reps = [Tournament(1, (0,))]
    for k in range(2, n + 1):
        seen: set[int] = set()
        nxt: list[Tournament] = []
        for t in reps:
            for bits in range(1 << (k - 1)):
                rows = list(t.rows)
                new_row = 0
                for u in range(k - 1):
                    if (bits >> u) & 1:
                        new_row |= 1 << u
                    else:
                        rows[u] |= 1 << (k - 1)
                cand = Tournament(k, tuple(rows) + (new_row,), _checked=True)
                code = canonical_code(cand)
                if code not in seen:
                    seen.add(code)
                    nxt.append(Tournament.from_upper_bits(k, code))
        reps = sorted(nxt, key=lambda t: t.upper_bits())
    yield from reps


def _rows_from_row_bits(n: int, row_bits: list[int]) -> tuple[int, ...]:
    """Assemble full adjacency rows from per-row upper-triangle bits.

    row_bits[u] bit k encodes the pair (u, u+1+k).  Small instances use the
    direct loop; large ones go through a packed numpy matrix.
    """
    if n < _NUMPY_BUILD_MIN_N:
        rows = [rb << (u + 1) for u, rb in enumerate(row_bits)]
        for u in range(n):
            rb = row_bits[u]
            for k in range(n - 1 - u):
                if not (rb >> k) & 1:
                    rows[u + 1 + k] |= 1 << u
        return tuple(rows)
    mat = np.zeros((n, n), dtype=np.uint8)
    for u in range(n - 1):
        cnt = n - 1 - u
        raw = row_bits[u].to_bytes((cnt + 7) // 8, "little")
        mat[u, u + 1 :] = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:cnt]
    upper = np.triu(np.ones((n, n), dtype=np.uint8), 1)
    mat = mat | ((1 - mat.T) & upper.T)
    rows = tuple(
        int.from_bytes(np.packbits(mat[u], bitorder="little").tobytes(), "little")
        for u in range(n)
    )
    return rows


def parse_model(model: str) -> tuple[str, int | None]:
    """'uniform' or 'near_regular[:flips]'."""
    parts = model.split(":")
    if parts[0] == "uniform" and len(parts) == 1:
        return "uniform", None
    if parts[0] == "near_regular":
        if len(parts) == 1:
            return "near_regular", None
        if len(parts) == 2 and parts[1].isdigit():
            return "near_regular", int(parts[1])
    raise TournamentError(f"unknown random model {model!r}")


def gen_random(n: int, seed: int, model: str = "uniform") -> Tournament:
    """Deterministic random tournament; identical arguments give identical
    output on every platform.

    ``uniform`` orients every pair independently.  ``near_regular`` (odd n
    only) starts from the rotational tournament i -> i+1..i+(n-1)/2 and
    applies ``flips`` random pair reversals (default n).
    """
    if n < 1:
        raise TournamentError("n must be >= 1")
    name, flips = parse_model(model)
    rng = random.Random(seed)
    if name == "uniform":
        row_bits = [rng.getrandbits(n - 1 - u) if n - 1 - u > 0 else 0 for u in range(n)]
        return Tournament(n, _rows_from_row_bits(n, row_bits), _checked=True)
    if n % 2 == 0:
        raise TournamentError("near_regular needs odd n (rotational start)")
    half = (n - 1) // 2
    rows = [0] * n
    for u in range(n):
        for k in range(1, half + 1):
            rows[u] |= 1 << ((u + k) % n)
    if flips is None:
        flips = n
    for _ in range(flips):
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        if (rows[u] >> v) & 1:
            rows[u] &= ~(1 << v)
            rows[v] |= 1 << u
        else:
            rows[v] &= ~(1 << u)
            rows[u] |= 1 << v
    return Tournament(n, tuple(rows), _checked=True)
