"""Immutable tournaments with the structural subroutines the embedder consumes.

A tournament on n vertices is stored as one out-neighbour bitmask per vertex
(vertex labels 0..n-1).  All operations are pure; values are safe to share
across threads.
"""

from __future__ import annotations

from dataclasses import dataclass


class TournamentError(ValueError):
    """Raised for malformed construction input or violated preconditions."""


class Tournament:
    """Complete antisymmetric orientation on ``n`` labelled vertices."""

    __slots__ = ("n", "rows", "_canon")

    def __init__(self, n: int, rows: tuple[int, ...], _checked: bool = False):
        if not _checked:
            _check_rows(n, rows)
        self.n = n
        self.rows = rows
        self._canon = None  # lazy (code, perm) cache, filled by canon.py

    # -- construction ---------------------------------------------------

    @staticmethod
    def build(n: int, arcs) -> "Tournament":
        """Build from an explicit arc set containing one orientation per pair."""
        if n < 1:
            raise TournamentError(f"vertex count must be >= 1, got {n}")
        rows = [0] * n
        seen = set()
        for u, v in arcs:
            if u == v:
                raise TournamentError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise TournamentError(f"arc ({u},{v}) out of range for n={n}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise TournamentError(f"pair {key} oriented twice")
            seen.add(key)
            rows[u] |= 1 << v
        expected = n * (n - 1) // 2
        if len(seen) != expected:
            for u in range(n):
                for v in range(u + 1, n):
                    if (u, v) not in seen:
                        raise TournamentError(f"pair ({u},{v}) missing an orientation")
        return Tournament(n, tuple(rows), _checked=True)

    @staticmethod
    def from_upper_bits(n: int, bits: int) -> "Tournament":
        """Decode the row-major upper-triangle bit encoding (MSB = pair (0,1))."""
        m = n * (n - 1) // 2
        rows = [0] * n
        k = m - 1
        for u in range(n):
            for v in range(u + 1, n):
                if (bits >> k) & 1:
                    rows[u] |= 1 << v
                else:
                    rows[v] |= 1 << u
                k -= 1
        return Tournament(n, tuple(rows), _checked=True)

    # -- basic queries ---------------------------------------------------

    def arc(self, u: int, v: int) -> bool:
        """True iff the arc u -> v is present."""
        return (self.rows[u] >> v) & 1 == 1

    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def out_mask(self, u: int) -> int:
        return self.rows[u]

    def in_mask(self, u: int) -> int:
        return self.all_mask() ^ (1 << u) ^ self.rows[u]

    def out_degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def in_degree(self, u: int) -> int:
        return self.n - 1 - self.rows[u].bit_count()

    def min_in_degree(self) -> int:
        return min(self.in_degree(u) for u in range(self.n))

    def min_out_degree(self) -> int:
        return min(self.out_degree(u) for u in range(self.n))

    def max_in_degree(self) -> int:
        return max(self.in_degree(u) for u in range(self.n))

    def max_out_degree(self) -> int:
        return max(self.out_degree(u) for u in range(self.n))

    def degree_sequence(self) -> tuple[int, ...]:
        """Out-degrees indexed by vertex."""
        return tuple(r.bit_count() for r in self.rows)

    # -- derived tournaments ----------------------------------------------

    def complement(self) -> "Tournament":
        """Reverse every arc (an involution)."""
        full = self.all_mask()
        rows = tuple(full ^ (1 << u) ^ self.rows[u] for u in range(self.n))
        return Tournament(self.n, rows, _checked=True)

    def induced(self, vertices) -> tuple["Tournament", tuple[int, ...]]:
        """Subtournament on ``vertices`` plus the order-preserving relabel map.

        The map sends new label k to the k-th smallest original vertex.
        """
        sub = sorted(set(vertices))
        if not sub:
            raise TournamentError("induced subtournament needs a nonempty vertex set")
        if sub[0] < 0 or sub[-1] >= self.n:
            raise TournamentError(f"vertex {sub[0] if sub[0] < 0 else sub[-1]} out of range")
        k = len(sub)
        rows = [0] * k
        for a in range(k):
            ra = self.rows[sub[a]]
            for b in range(k):
                if (ra >> sub[b]) & 1:
                    rows[a] |= 1 << b
        return Tournament(k, tuple(rows), _checked=True), tuple(sub)

    # -- encodings ---------------------------------------------------------

    def upper_bits(self) -> int:
        """Row-major upper-triangle bits, MSB first (pair (0,1) leads)."""
        bits = 0
        for u in range(self.n):
            ru = self.rows[u]
            for v in range(u + 1, self.n):
                bits = (bits << 1) | ((ru >> v) & 1)
        return bits

    def to_code(self) -> str:
        """Compact interchange form ``T:<n>:<hex>``."""
        m = self.n * (self.n - 1) // 2
        digits = max(1, (m + 3) // 4)
        return f"T:{self.n}:{self.upper_bits():0{digits}x}"

    @staticmethod
    def from_code(code: str) -> "Tournament":
        parts = code.strip().split(":")
        if len(parts) != 3 or parts[0] != "T":
            raise TournamentError(f"bad tournament code {code!r}")
        try:
            n = int(parts[1])
            bits = int(parts[2], 16)
        except ValueError as exc:
            raise TournamentError(f"bad tournament code {code!r}") from exc
        if n < 1:
            raise TournamentError(f"bad vertex count in code {code!r}")
        m = n * (n - 1) // 2
        if bits >> m:
            raise TournamentError(f"code {code!r} has more than {m} payload bits")
        return Tournament.from_upper_bits(n, bits)

    def to_text(self) -> str:
        """Adjacency-matrix text form: first line n, then n rows of 0/1."""
        lines = [str(self.n)]
        for u in range(self.n):
            ru = self.rows[u]
            lines.append("".join("1" if (ru >> v) & 1 else "0" for v in range(self.n)))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "Tournament":
        lines = [ln.strip() for ln in text.strip().splitlines()]
        if not lines:
            raise TournamentError("empty tournament text")
        try:
            n = int(lines[0])
        except ValueError as exc:
            raise TournamentError(f"bad vertex count line {lines[0]!r}") from exc
        if len(lines) != n + 1:
            raise TournamentError(f"expected {n} matrix rows, got {len(lines) - 1}")
        rows = [0] * n
        for u, line in enumerate(lines[1:]):
            if len(line) != n or set(line) - {"0", "1"}:
                raise TournamentError(f"bad matrix row {u}: {line!r}")
            rows[u] = int(line[::-1], 2) if "1" in line else 0
        t = Tournament(n, tuple(rows))  # full invariant check
        return t

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Tournament) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Tournament({self.to_code()!r})"


def _check_rows(n: int, rows: tuple[int, ...]) -> None:
    if n < 1 or len(rows) != n:
        raise TournamentError(f"need {n} adjacency rows, got {len(rows)}")
    for u in range(n):
        if rows[u] & (1 << u):
            raise TournamentError(f"loop at vertex {u}")
        if rows[u] >> n:
            raise TournamentError(f"row {u} references vertices >= {n}")
    for u in range(n):
        for v in range(u + 1, n):
            a = (rows[u] >> v) & 1
            b = (rows[v] >> u) & 1
            if a == b:
                word = "both" if a else "neither"
                raise TournamentError(f"pair ({u},{v}) oriented {word} ways")


@dataclass(frozen=True)
class StrongDecomposition:
    """Ordered partition into strong components with all cross arcs forward."""

    components: tuple[tuple[int, ...], ...]

    @property
    def is_strong(self) -> bool:
        return len(self.components) == 1

    def component_of(self, v: int) -> int:
        for i, comp in enumerate(self.components):
            if v in comp:
                return i
        raise ValueError(f"vertex {v} not covered by the decomposition")


def hamiltonian_directed_path(t: Tournament) -> list[int]:
    """Directed Hamiltonian path, built by insertion in vertex index order.

    Each new vertex is placed by bisecting the current path for a position
    whose neighbouring arcs agree with it, so the output is deterministic and
    uses O(n log n) arc probes.
    """
    path = [0]
    for v in range(1, t.n):
        if t.arc(v, path[0]):
            path.insert(0, v)
            continue
        if t.arc(path[-1], v):
            path.append(v)
            continue
        # invariant: arc(path[lo], v) and arc(v, path[hi])
        lo, hi = 0, len(path) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if t.arc(path[mid], v):
                lo = mid
            else:
                hi = mid
        path.insert(hi, v)
    return path


def _is_path_prefix_closed(t: Tournament, path: list[int]) -> list[int]:
    """Boundary positions k where path[:k+1] receives no arc from path[k+1:]."""
    n = t.n
    boundaries = []
    prefix_mask = 0
    suffix_in = [0] * (n + 1)
    # suffix_in[k] = union of out-masks of path[k:], built right to left
    acc = 0
    for k in range(n - 1, -1, -1):
        acc |= t.rows[path[k]]
        suffix_in[k] = acc
    for k in range(n):
        prefix_mask |= 1 << path[k]
        later = suffix_in[k + 1] if k + 1 <= n - 1 else 0
        if later & prefix_mask == 0:
            boundaries.append(k)
    return boundaries


def strong_decomposition(t: Tournament) -> StrongDecomposition:
    """Strong components in transitive order, via a Hamiltonian path.

    A directed Hamiltonian path visits the strong components contiguously and
    in order, so the components are exactly the segments between positions
    whose prefix receives no arc from the rest.  No general digraph SCC
    machinery is needed.
    """
    path = hamiltonian_directed_path(t)
    comps = []
    start = 0
    for k in _is_path_prefix_closed(t, path):
        comps.append(tuple(sorted(path[start : k + 1])))
        start = k + 1
    return StrongDecomposition(tuple(comps))


def hamiltonian_circuit(t: Tournament) -> list[int]:
    """Hamiltonian circuit of a strong tournament (Moon-style extension).

    Starts from the short circuit a Hamiltonian path closes up, then grows it:
    an outside vertex is either spliced between consecutive circuit vertices,
    or a dominated/dominating pair of outsiders is inserted together.
    """
    if t.n < 3:
        raise TournamentError(f"no Hamiltonian circuit on {t.n} < 3 vertices")
    dec = strong_decomposition(t)
    if not dec.is_strong:
        raise TournamentError(
            f"tournament is not strong: decomposition {[list(c) for c in dec.components]}"
        )
    path = hamiltonian_directed_path(t)
    close = min(j for j in range(1, t.n) if t.arc(path[j], path[0]))
    cycle = path[: close + 1]
    outside = path[close + 1 :]
    while outside:
        inserted = False
        for idx, v in enumerate(outside):
            # splice between some consecutive pair c_i -> v -> c_{i+1}
            for i in range(len(cycle)):
                if t.arc(cycle[i], v) and t.arc(v, cycle[(i + 1) % len(cycle)]):
                    cycle[i + 1 : i + 1] = [v]
                    outside.pop(idx)
                    inserted = True
                    break
            if inserted:
                break
        if inserted:
            continue
        # every outsider dominates the circuit or is dominated by it
        dominating = [v for v in outside if t.arc(v, cycle[0])]
        dominated = [v for v in outside if not t.arc(v, cycle[0])]
        pair = None
        for b in dominated:
            for a in dominating:
                if t.arc(b, a):
                    pair = (b, a)
                    break
            if pair:
                break
        if pair is None:  # would contradict strongness
            raise TournamentError("internal error: circuit extension stuck")
        b, a = pair
        cycle[1:1] = [b, a]  # cycle[0] -> b -> a -> cycle[1]
        outside.remove(b)
        outside.remove(a)
    return cycle


def directed_path_ending_at(t: Tournament, x: int) -> list[int]:
    """Directed path ending at x covering the components up to x's component."""
    if not (0 <= x < t.n):
        raise TournamentError(f"vertex {x} out of range")
    dec = strong_decomposition(t)
    i = dec.component_of(x)
    path: list[int] = []
    for comp in dec.components[:i]:
        sub, relabel = t.induced(comp)
        path.extend(relabel[v] for v in hamiltonian_directed_path(sub))
    comp = dec.components[i]
    if len(comp) == 1:
        path.append(x)
        return path
    sub, relabel = t.induced(comp)
    cyc = hamiltonian_circuit(sub)
    pos = cyc.index(relabel.index(x))
    ordered = cyc[pos + 1 :] + cyc[: pos + 1]  # rotate so x is last
    path.extend(relabel[v] for v in ordered)
    return path
