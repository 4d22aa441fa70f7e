"""Canonical codes, isomorphism search, and the named small tournaments.

Canonical codes are exact: the lexicographically least upper-triangle
encoding over all relabellings.  The search is restricted to degree-sorted
orderings (any isomorphism preserves out-degrees), which keeps the
permutation tables small for everything except regular tournaments.
Intended for n <= 8; larger inputs are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np

from .tournament import Tournament, TournamentError

ISO_MAX_N = 8

GRUNBAUM_KINDS = ("T3", "T5", "T7")


@dataclass(frozen=True)
class ExceptionClass:
    """Classification certificate for one of the named small tournaments.

    ``iso`` maps each vertex of the canonical representative to the input
    vertex playing its role, so applying it to the representative reproduces
    the input arc set exactly.
    """

    kind: str  # "T3" | "T5" | "T7" | "T4plus"
    iso: tuple[int, ...]


def cyclic_triangle() -> Tournament:
    return Tournament.build(3, {(0, 1), (1, 2), (2, 0)})


def t4_plus() -> Tournament:
    """Cyclic triangle 1->2->3->1 dominated by the source 0."""
    return Tournament.build(4, {(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)})


def regular_5() -> Tournament:
    """The rotational (and unique regular) 5-tournament: i -> i+1, i+2."""
    arcs = {(i, (i + k) % 5) for i in range(5) for k in (1, 2)}
    return Tournament.build(5, arcs)


def paley_7() -> Tournament:
    """Paley tournament on 7 vertices: i -> j iff j - i is 1, 2 or 4 mod 7."""
    arcs = {(i, (i + k) % 7) for i in range(7) for k in (1, 2, 4)}
    return Tournament.build(7, arcs)


_REPS: dict[str, Tournament] = {}


def representative(kind: str) -> Tournament:
    if not _REPS:
        _REPS.update(
            T3=cyclic_triangle(), T4plus=t4_plus(), T5=regular_5(), T7=paley_7()
        )
    return _REPS[kind]


_KINDS_BY_N = {3: ("T3",), 4: ("T4plus",), 5: ("T5",), 7: ("T7",)}


@lru_cache(maxsize=256)
def _class_perm_table(n: int, shape: tuple[int, ...]):
    """Permutations preserving consecutive index blocks, as gather tables.

    Returns (perms, idx, pow2): ``idx[p, k]`` indexes the flattened n*n
    adjacency of the degree-sorted tournament at the k-th canonical pair
    under permutation p; dotting the gathered bits with ``pow2`` yields the
    candidate code.
    """
    groups = []
    start = 0
    for size in shape:
        groups.append(tuple(range(start, start + size)))
        start += size
    perms: list[tuple[int, ...]] = [()]
    for g in groups:
        perms = [pref + pg for pref in perms for pg in permutations(g)]
    pmat = np.array(perms, dtype=np.int64)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    ia = pmat[:, [a for a, _ in pairs]]
    ib = pmat[:, [b for _, b in pairs]]
    idx = ia * n + ib
    m = len(pairs)
    pow2 = 1 << np.arange(m - 1, -1, -1, dtype=np.int64)
    return pmat, idx, pow2


def canonical_data(t: Tournament) -> tuple[int, tuple[int, ...]]:
    """(canonical code, perm) with perm[i] = input vertex at canonical slot i.

    Cached on the tournament value; identical for isomorphic inputs.
    """
    if t._canon is not None:
        return t._canon
    n = t.n
    if n > ISO_MAX_N:
        raise TournamentError(f"canonical codes support n <= {ISO_MAX_N}, got {n}")
    if n == 1:
        t._canon = (0, (0,))
        return t._canon
    degs = [r.bit_count() for r in t.rows]
    order = sorted(range(n), key=lambda u: (degs[u], u))
    shape = []
    for k, u in enumerate(order):
        if k and degs[u] == degs[order[k - 1]]:
            shape[-1] += 1
        else:
            shape.append(1)
    flat = np.zeros(n * n, dtype=np.int64)
    for a in range(n):
        ra = t.rows[order[a]]
        for b in range(n):
            if (ra >> order[b]) & 1:
                flat[a * n + b] = 1
    pmat, idx, pow2 = _class_perm_table(n, tuple(shape))
    codes = flat[idx] @ pow2
    k = int(np.argmin(codes))
    perm = tuple(order[j] for j in pmat[k])
    t._canon = (int(codes[k]), perm)
    return t._canon


def canonical_code(t: Tournament) -> int:
    return canonical_data(t)[0]


def _iso_search(t1: Tournament, t2: Tournament, count_all: bool) -> tuple[int, tuple | None]:
    """Backtracking image assignment in vertex order, candidates ascending."""
    n = t1.n
    d1 = [r.bit_count() for r in t1.rows]
    d2 = [r.bit_count() for r in t2.rows]
    if sorted(d1) != sorted(d2):
        return 0, None
    image = [-1] * n
    used = [False] * n
    found = 0
    first: tuple | None = None

    def extend(u: int) -> bool:
        nonlocal found, first
        if u == n:
            found += 1
            if first is None:
                first = tuple(image)
            return not count_all
        for w in range(n):
            if used[w] or d1[u] != d2[w]:
                continue
            ok = True
            for v in range(u):
                if t1.arc(u, v) != t2.arc(w, image[v]):
                    ok = False
                    break
            if not ok:
                continue
            image[u] = w
            used[w] = True
            if extend(u + 1):
                return True
            used[w] = False
            image[u] = -1
        return False

    extend(0)
    return found, first


def isomorphism(t1: Tournament, t2: Tournament) -> tuple[int, ...] | None:
    """Arc-preserving bijection V(t1) -> V(t2), or None.

    Deterministic: returns the lexicographically least witness (as the image
    tuple of vertices 0, 1, ...).  Size mismatch yields None; n > 8 raises.
    """
    if t1.n != t2.n:
        return None
    if t1.n > ISO_MAX_N:
        raise TournamentError(f"isomorphism search supports n <= {ISO_MAX_N}")
    _, first = _iso_search(t1, t2, count_all=False)
    return first


def automorphism_count(t: Tournament) -> int:
    if t.n > ISO_MAX_N:
        raise TournamentError(f"automorphism search supports n <= {ISO_MAX_N}")
    found, _ = _iso_search(t, t, count_all=True)
    return found


def classify_small(t: Tournament) -> ExceptionClass | None:
    """Certificate iff t is one of T3, T4plus, T5, T7 (up to isomorphism)."""
    kinds = _KINDS_BY_N.get(t.n)
    if kinds is None:
        return None
    dm = sorted(r.bit_count() for r in t.rows)
    for kind in kinds:
        rep = representative(kind)
        if dm != sorted(r.bit_count() for r in rep.rows):
            continue
        iso = isomorphism(rep, t)
        if iso is not None:
            return ExceptionClass(kind, iso)
    return None


def is_grunbaum_exception(t: Tournament) -> bool:
    """True iff t is isomorphic to the cyclic triangle, T5, or T7."""
    cls = classify_small(t)
    return cls is not None and cls.kind in GRUNBAUM_KINDS
