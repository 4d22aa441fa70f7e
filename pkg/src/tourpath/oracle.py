"""Exact ground truth: exhaustive embedding search and the memoized base solver.

``oracle_embed`` is a plain backtracking search kept deliberately simple so
its correctness is obvious; pruning is candidate-availability only.  The
base solver fronts it with a canonical-code cache for the small instances
the constructive embedder delegates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .canon import ISO_MAX_N, canonical_data
from .paths import PathPattern
from .tournament import Tournament

BASE_THRESHOLD_DEFAULT = 8


@dataclass(frozen=True)
class OriginConstraint:
    """Restrict which vertex may start the embedding."""

    required_origin: int | None = None
    forbidden_origins: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.required_origin is not None and self.required_origin in self.forbidden_origins:
            raise ValueError(
                f"required origin {self.required_origin} is also forbidden"
            )


UNCONSTRAINED = OriginConstraint()


def _start_mask(n: int, constraint: OriginConstraint | None) -> int:
    full = (1 << n) - 1
    if constraint is None:
        return full
    if constraint.required_origin is not None:
        r = constraint.required_origin
        if not (0 <= r < n):
            return 0
        return 1 << r
    mask = full
    for v in constraint.forbidden_origins:
        if 0 <= v < n:
            mask &= ~(1 << v)
    return mask


def oracle_embed(
    t: Tournament, p: PathPattern, constraint: OriginConstraint | None = None
) -> list[int] | None:
    """Lowest-index embedding of p in t satisfying the constraint, or None.

    Exhaustive backtracking over positions; a partial sequence is abandoned
    as soon as the next direction has no unused neighbour.
    """
    n = t.n
    if p.n != n:
        raise ValueError(f"pattern needs {p.n} vertices, tournament has {n}")
    if n == 1:
        start = _start_mask(1, constraint)
        return [0] if start & 1 else None
    rows = t.rows
    full = (1 << n) - 1
    inr = [full ^ (1 << u) ^ rows[u] for u in range(n)]
    dirs = p.dirs
    seq: list[int] = []
    used = 0
    stack = [_start_mask(n, constraint)]
    while stack:
        cands = stack[-1]
        if cands == 0:
            stack.pop()
            if seq:
                used ^= 1 << seq.pop()
            continue
        v = (cands & -cands).bit_length() - 1
        stack[-1] = cands & (cands - 1)
        seq.append(v)
        used |= 1 << v
        if len(seq) == n:
            return seq
        nxt = rows[v] if dirs[len(seq) - 1] else inr[v]
        stack.append(nxt & ~used)
    return None


def count_embeddings(t: Tournament, p: PathPattern) -> int:
    """Exact number of vertex sequences realizing p in t."""
    n = t.n
    if p.n != n:
        raise ValueError(f"pattern needs {p.n} vertices, tournament has {n}")
    if n == 1:
        return 1
    rows = t.rows
    full = (1 << n) - 1
    inr = [full ^ (1 << u) ^ rows[u] for u in range(n)]
    dirs = p.dirs
    count = 0
    seq: list[int] = []
    used = 0
    stack = [full]
    while stack:
        cands = stack[-1]
        if cands == 0:
            stack.pop()
            if seq:
                used ^= 1 << seq.pop()
            continue
        v = (cands & -cands).bit_length() - 1
        stack[-1] = cands & (cands - 1)
        if len(seq) == n - 1:
            count += 1
            continue
        seq.append(v)
        used |= 1 << v
        nxt = rows[v] if dirs[len(seq) - 1] else inr[v]
        stack.append(nxt & ~used)
    return count


class SizeAboveThreshold(ValueError):
    """Raised when the base solver is asked about an instance above N0."""


class BaseSolver:
    """Memoized exact embedding for instances of size <= n0.

    Results are cached under the canonical code of the tournament with the
    pattern and constraint relabelled accordingly; a hit returns the cached
    witness transported back through the relabelling.  Each size keeps its
    own table, evicted wholesale when it outgrows the capacity.
    """

    def __init__(self, n0: int = BASE_THRESHOLD_DEFAULT, capacity_per_n: int = 300_000):
        self.n0 = n0
        self.capacity_per_n = capacity_per_n
        self._tables: dict[int, dict] = {}
        self.hits = 0
        self.misses = 0

    def embed(
        self, t: Tournament, p: PathPattern, constraint: OriginConstraint | None = None
    ) -> list[int] | None:
        n = t.n
        if n > self.n0:
            raise SizeAboveThreshold(f"instance size {n} exceeds base threshold {self.n0}")
        if p.n != n:
            raise ValueError(f"pattern needs {p.n} vertices, tournament has {n}")
        if n > ISO_MAX_N:
            # n0 raised above the canonical-coding range: exact, uncached
            return oracle_embed(t, p, constraint)
        code, perm = canonical_data(t)
        inv = [0] * n
        for k, orig in enumerate(perm):
            inv[orig] = k
        req = None
        forb: frozenset[int] = frozenset()
        if constraint is not None:
            if constraint.required_origin is not None:
                req = inv[constraint.required_origin]
            forb = frozenset(inv[v] for v in constraint.forbidden_origins if 0 <= v < n)
        key = (code, p.dirs, req, tuple(sorted(forb)))
        table = self._tables.setdefault(n, {})
        if key in table:
            self.hits += 1
            cached = table[key]
            return None if cached is None else [perm[x] for x in cached]
        self.misses += 1
        canon_t = _relabel(t, inv)
        c = OriginConstraint(req, forb) if (req is not None or forb) else None
        witness = oracle_embed(canon_t, p, c)
        if len(table) >= self.capacity_per_n:
            table.clear()
        table[key] = None if witness is None else tuple(witness)
        return None if witness is None else [perm[x] for x in witness]


def _relabel(t: Tournament, inv: list[int]) -> Tournament:
    """Tournament with vertex u renamed inv[u]."""
    n = t.n
    rows = [0] * n
    for u in range(n):
        ru = t.rows[u]
        nu = inv[u]
        for v in range(n):
            if (ru >> v) & 1:
                rows[nu] |= 1 << inv[v]
    return Tournament(n, tuple(rows), _checked=True)
