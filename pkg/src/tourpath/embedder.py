"""Constructive embedding engine.

Given a tournament and a pattern of the same size, ``embed`` produces a
witness vertex sequence or certifies the instance as one of the three
exceptional (tournament, antidirected pattern) pairs.  The construction
follows the inductive argument: pick a witness-equivalent variant whose
direction condition holds at the minimum in-degree, split there, embed the
prefix and suffix recursively, and patch the small exceptional residues
with the exact base solver.  Every assembled candidate is validated before
it is accepted; failed moves fall through deterministically.

Vertex sets are bitmasks over the input tournament; ``c`` selects between
the tournament and its complement, so variant changes never copy anything.
Pattern positions are 0-indexed throughout: ``dirs[k]`` is the arc between
sequence slots k and k+1, True meaning forward.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .canon import GRUNBAUM_KINDS, classify_small
from .oracle import BaseSolver, OriginConstraint, oracle_embed
from .paths import PathPattern
from .tournament import Tournament, hamiltonian_directed_path

TRACE_CAP = 256

_ALT_SPLIT_CAP = 16


class EmbedError(ValueError):
    """Bad input to the embedding engine."""


class SimpleLemmaExcluded(ValueError):
    """The (pattern, host) pair is the excluded source/sink insertion case."""


@dataclass(frozen=True)
class Embedding:
    pattern: PathPattern
    seq: tuple[int, ...]


@dataclass(frozen=True)
class ExceptionReport:
    """Certificate that the instance is a Grünbaum exception."""

    kind: str  # "T3" | "T5" | "T7"
    iso: tuple[int, ...]
    antidirected: bool = True


@dataclass
class EmbedOutcome:
    result: Union[Embedding, ExceptionReport]
    method: tuple[str, ...]
    stats: dict = field(default_factory=dict)

    @property
    def is_embedding(self) -> bool:
        return isinstance(self.result, Embedding)


def validate(t: Tournament, p: PathPattern, seq) -> bool:
    """True iff seq is n distinct vertices whose consecutive arcs match p."""
    n = t.n
    if p.n != n or len(seq) != n:
        return False
    seen = 0
    for v in seq:
        if not isinstance(v, int) or not (0 <= v < n) or (seen >> v) & 1:
            return False
        seen |= 1 << v
    for k, d in enumerate(p.dirs):
        if t.arc(seq[k], seq[k + 1]) != d:
            return False
    return True


# ---------------------------------------------------------------------------
# variants


@dataclass(frozen=True)
class VariantChoice:
    tag: str  # "V1".."V4"
    tournament: Tournament
    pattern: PathPattern
    qualified: bool  # False: no trivial variant works; run the exact oracle


def undo_variant(tag: str, seq) -> list[int]:
    """Transport a witness for the variant back to the original instance."""
    return list(seq) if tag in ("V1", "V2") else list(reversed(seq))


def _variant_instances(t: Tournament, p: PathPattern):
    tc = t.complement()
    return (
        ("V1", t, p),
        ("V2", tc, p.complement()),
        ("V3", t, p.reverse()),
        ("V4", tc, p.reverse().complement()),
    )


def choose_variant(t: Tournament, p: PathPattern) -> VariantChoice:
    """First of (T,P), (T̄,P̄), (T,P~), (T̄,P̄~) satisfying both conditions:
    max out-degree at least the complement's, and a forward pattern arc at
    the host's minimum in-degree.  With no qualifying variant, returns the
    dominance-maximal one flagged unqualified (the thm3 fallback)."""
    if t.min_in_degree() < 1:
        raise EmbedError("choose_variant requires delta_minus >= 1")
    for tag, ht, hp in _variant_instances(t, p):
        if ht.max_out_degree() < ht.max_in_degree():
            continue
        i = ht.min_in_degree()
        if i >= 1 and i - 1 < len(hp.dirs) and hp.dirs[i - 1]:
            return VariantChoice(tag, ht, hp, True)
    if t.max_out_degree() >= t.max_in_degree():
        return VariantChoice("V1", t, p, False)
    return VariantChoice("V2", t.complement(), p.complement(), False)


# ---------------------------------------------------------------------------
# the engine


class _Exceptional:
    __slots__ = ()

    def __repr__(self):
        return "<exceptional>"


EXC = _Exceptional()


class _Ctx:
    def __init__(self, t: Tournament, n0: int, base: BaseSolver):
        self.t = t
        self.n = t.n
        self.full = (1 << t.n) - 1
        self.R = (t.rows, t.complement().rows)
        self.n0 = n0
        self.base = base
        self.trace: list[str] = []
        self.trace_overflow = 0
        self.stats = {"oracle_above_n0": 0, "base_calls": 0, "max_depth": 0}

    def tag(self, label: str):
        if len(self.trace) < TRACE_CAP:
            self.trace.append(label)
        else:
            self.trace_overflow += 1

    # -- arc helpers --------------------------------------------------------

    def out(self, u: int, c: int) -> int:
        return self.R[c][u]

    def inn(self, u: int, c: int) -> int:
        return self.R[1 - c][u]

    def arc(self, u: int, v: int, c: int) -> bool:
        return (self.R[c][u] >> v) & 1 == 1

    @staticmethod
    def bits(mask: int):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def valseq(self, seq, dirs, c: int) -> bool:
        if len(seq) != len(dirs) + 1 or len(set(seq)) != len(seq):
            return False
        for k, d in enumerate(dirs):
            if self.arc(seq[k], seq[k + 1], c) != d:
                return False
        return True

    # -- structural subroutines on masks -------------------------------------

    def redei(self, mask: int, c: int) -> list[int]:
        verts = list(self.bits(mask))
        path = [verts[0]]
        for v in verts[1:]:
            if self.arc(v, path[0], c):
                path.insert(0, v)
                continue
            if self.arc(path[-1], v, c):
                path.append(v)
                continue
            lo, hi = 0, len(path) - 1
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if self.arc(path[mid], v, c):
                    lo = mid
                else:
                    hi = mid
            path.insert(hi, v)
        return path

    def comps(self, mask: int, c: int) -> list[int]:
        """Strong component masks in transitive order."""
        path = self.redei(mask, c)
        n = len(path)
        suffixes = [0] * (n + 1)
        for k in range(n - 1, -1, -1):
            suffixes[k] = suffixes[k + 1] | (self.out(path[k], c) & mask)
        out = []
        prefix = 0
        cur = 0
        for k, v in enumerate(path):
            cur |= 1 << v
            prefix |= 1 << v
            if suffixes[k + 1] & prefix == 0:
                out.append(cur)
                cur = 0
        return out

    def circuit(self, mask: int, c: int) -> list[int]:
        """Hamiltonian circuit of a strong masked subtournament."""
        path = self.redei(mask, c)
        close = min(j for j in range(1, len(path)) if self.arc(path[j], path[0], c))
        cycle = path[: close + 1]
        outside = path[close + 1 :]
        while outside:
            placed = False
            for idx, v in enumerate(outside):
                for i in range(len(cycle)):
                    if self.arc(cycle[i], v, c) and self.arc(v, cycle[(i + 1) % len(cycle)], c):
                        cycle[i + 1 : i + 1] = [v]
                        outside.pop(idx)
                        placed = True
                        break
                if placed:
                    break
            if placed:
                continue
            dominating = [v for v in outside if self.arc(v, cycle[0], c)]
            dominated = [v for v in outside if not self.arc(v, cycle[0], c)]
            pair = None
            for b in dominated:
                for a in dominating:
                    if self.arc(b, a, c):
                        pair = (b, a)
                        break
                if pair:
                    break
            if pair is None:
                raise RuntimeError("circuit extension stuck on a strong tournament")
            b, a = pair
            cycle[1:1] = [b, a]
            outside.remove(b)
            outside.remove(a)
        return cycle

    def path_ending_at(self, comp_masks: list[int], x: int, c: int) -> list[int]:
        """Directed path ending at x covering the components up to x's."""
        path: list[int] = []
        for cm in comp_masks:
            if (cm >> x) & 1:
                if cm.bit_count() == 1:
                    path.append(x)
                else:
                    cyc = self.circuit(cm, c)
                    pos = cyc.index(x)
                    path.extend(cyc[pos + 1 :] + cyc[: pos + 1])
                return path
            path.extend(self.redei(cm, c))
        raise RuntimeError("vertex not covered by its component list")

    # -- exact pieces ----------------------------------------------------------

    def sub_tournament(self, mask: int, c: int) -> tuple[Tournament, list[int]]:
        labels = list(self.bits(mask))
        k = len(labels)
        rows = [0] * k
        for a in range(k):
            ra = self.R[c][labels[a]]
            for b in range(k):
                if (ra >> labels[b]) & 1:
                    rows[a] |= 1 << b
        return Tournament(k, tuple(rows), _checked=True), labels

    def base_embed(self, mask: int, c: int, dirs, required=None, forbidden=()) -> Optional[list[int]]:
        """Exact solve of a small masked instance, origin-constrained.

        Oversized hosts answer None so that move fall-throughs can never
        drift into exponential search; the ladder handles them instead.
        """
        if mask.bit_count() > max(self.n0, self.base.n0):
            return None
        sub, labels = self.sub_tournament(mask, c)
        self.stats["base_calls"] += 1
        pos = {v: k for k, v in enumerate(labels)}
        con = None
        if required is not None or forbidden:
            req = pos[required] if required is not None else None
            con = OriginConstraint(req, frozenset(pos[v] for v in forbidden))
        if sub.n <= self.base.n0:
            got = self.base.embed(sub, PathPattern(tuple(dirs)), con)
        else:
            got = oracle_embed(sub, PathPattern(tuple(dirs)), con)
            if sub.n > self.n0:
                self.stats["oracle_above_n0"] += 1
        return None if got is None else [labels[x] for x in got]

    def base_embed_end(self, mask: int, c: int, dirs, end=None, forbidden_ends=()) -> Optional[list[int]]:
        """Exact small solve with an end constraint (reversed origin trick)."""
        rev = tuple(not d for d in reversed(tuple(dirs)))
        got = self.base_embed(mask, c, rev, required=end, forbidden=forbidden_ends)
        return None if got is None else list(reversed(got))

    def oracle_rescue(self, mask: int, c: int, dirs) -> Optional[list[int]]:
        """Last-resort exact search; counted so sweeps can prove it stays idle."""
        k = mask.bit_count()
        if k > self.n0:
            self.stats["oracle_above_n0"] += 1
        self.tag(f"base_oracle[rescue,n={k}]")
        sub, labels = self.sub_tournament(mask, c)
        got = oracle_embed(sub, PathPattern(tuple(dirs)))
        return None if got is None else [labels[x] for x in got]

    # -- the recursion -----------------------------------------------------------

    def embed_rec(self, mask: int, dirs: tuple, c: int, depth: int):
        """Witness on the masked subtournament (global labels), or EXC."""
        k = mask.bit_count()
        if k != len(dirs) + 1 and k > 0:
            raise RuntimeError(f"pattern/mask size mismatch: {k} vertices, {len(dirs)} arcs")
        if depth > self.stats["max_depth"]:
            self.stats["max_depth"] = depth
        if k == 0:
            return []
        if k == 1:
            return [next(self.bits(mask))]
        if k <= self.n0:
            got = self.base_embed(mask, c, dirs)
            return EXC if got is None else got
        if all(dirs):
            return self.redei(mask, c)
        if not any(dirs):
            return list(reversed(self.redei(mask, c)))
        for v in self.bits(mask):
            if self.inn(v, c) & mask == 0:
                got = self.source_sink_insert(mask, v, dirs, c, depth, True)
                if got is not None:
                    return got
                break
        for v in self.bits(mask):
            if self.out(v, c) & mask == 0:
                got = self.source_sink_insert(mask, v, dirs, c, depth, False)
                if got is not None:
                    return got
                break
        got = self.variant_ladder(mask, dirs, c, depth)
        if got is not None:
            return got
        got = self.oracle_rescue(mask, c, dirs)
        if got is None:
            raise RuntimeError(
                f"no embedding exists on a {k}-vertex instance; impossible for k not in (3,5,7)"
            )
        return got

    def source_sink_insert(
        self,
        mask: int,
        v: int,
        dirs: tuple,
        c: int,
        depth: int,
        is_source: bool,
        requested_origin: int | None = None,
    ):
        """Source/sink insertion: delete a pattern position the extreme vertex
        can fill, bridge its two arcs, embed the residue, reinsert.

        Positions are tried smallest first; both bridge orientations are
        tried, non-antidirected residue first.  Requires a non-directed
        pattern (callers route directed ones through the Hamiltonian path).
        """
        npat = len(dirs) + 1
        positions = []
        for p in range(1, npat):
            left = dirs[p - 1]
            right = dirs[p] if p < npat - 1 else None
            if is_source:
                fits = (not left) and (right is None or right)
            else:
                fits = left and (right is None or not right)
            if fits:
                positions.append(p)
        rest_mask = mask & ~(1 << v)
        for p in positions:
            if p == npat - 1:
                bridged_opts = [dirs[:-1]]
            else:
                opts = [dirs[: p - 1] + (bd,) + dirs[p + 1 :] for bd in (True, False)]
                opts.sort(key=lambda dd: PathPattern(dd).is_antidirected)
                bridged_opts = opts
            for bridged in bridged_opts:
                if requested_origin is not None:
                    if rest_mask.bit_count() <= self.n0:
                        sub = self.base_embed(rest_mask, c, bridged, required=requested_origin)
                    else:
                        got = self.embed_rec(rest_mask, bridged, c, depth + 1)
                        sub = got if got is not EXC and got[0] == requested_origin else None
                else:
                    got = self.embed_rec(rest_mask, bridged, c, depth + 1)
                    sub = None if got is EXC else got
                if sub is None:
                    continue
                seq = sub[:p] + [v] + sub[p:]
                if self.valseq(seq, dirs, c):
                    return seq
        return None

    # -- variant ladder ------------------------------------------------------------

    def variant_forms(self, dirs: tuple, c: int):
        """(tag, host orientation, host pattern, needs_reverse) in V1..V4 order."""
        rev = tuple(not d for d in reversed(dirs))
        comp = tuple(not d for d in dirs)
        revcomp = tuple(reversed(dirs))
        return (
            ("V1", c, dirs, False),
            ("V2", 1 - c, comp, False),
            ("V3", c, rev, True),
            ("V4", 1 - c, revcomp, True),
        )

    def variant_ladder(self, mask: int, dirs: tuple, c: int, depth: int):
        degs = [(self.out(u, c) & mask).bit_count() for u in self.bits(mask)]
        k = mask.bit_count()
        max_out, min_out = max(degs), min(degs)
        min_in, max_in = k - 1 - max_out, k - 1 - min_out
        host_stats = {c: (min_in, max_out, max_in), 1 - c: (min_out, max_in, max_out)}
        qualifying, direction_only = [], []
        for tag, cc, dd, needs_rev in self.variant_forms(dirs, c):
            i, mx_out, mx_in = host_stats[cc]
            if i < 1 or i - 1 >= len(dd) or not dd[i - 1]:
                continue
            entry = (tag, cc, dd, needs_rev)
            (qualifying if mx_out >= mx_in else direction_only).append(entry)
        for tier in (qualifying, direction_only):
            for tag, cc, dd, needs_rev in tier:
                got = self.split_min(mask, dd, cc, depth)
                if got is not None:
                    seq = list(reversed(got)) if needs_rev else got
                    if self.valseq(seq, dirs, c):
                        return seq
        return self.alt_splits(mask, dirs, c, depth)

    def alt_splits(self, mask: int, dirs: tuple, c: int, depth: int):
        """Split on non-minimal vertices whose in-degree hits a forward arc."""
        self.tag("alt_split")
        cands = []
        for tag, cc, dd, needs_rev in self.variant_forms(dirs, c):
            for u in self.bits(mask):
                i = (self.inn(u, cc) & mask).bit_count()
                if 1 <= i <= len(dd) - 1 and dd[i - 1]:
                    cands.append((i, u, tag, cc, dd, needs_rev))
        cands.sort(key=lambda e: (e[0], e[1], e[2]))
        for i, u, tag, cc, dd, needs_rev in cands[:_ALT_SPLIT_CAP]:
            got = self.split_at(mask, dd, cc, u, depth)
            if got is not None:
                seq = list(reversed(got)) if needs_rev else got
                if self.valseq(seq, dirs, c):
                    return seq
        return None

    def split_min(self, mask: int, dirs: tuple, c: int, depth: int):
        v = min(self.bits(mask), key=lambda u: ((self.inn(u, c) & mask).bit_count(), u))
        return self.split_at(mask, dirs, c, v, depth)

    # -- the inductive step ----------------------------------------------------------

    def split_at(self, mask: int, dirs: tuple, c: int, v: int, depth: int):
        t1 = self.inn(v, c) & mask
        t2 = self.out(v, c) & mask
        i = t1.bit_count()
        if i < 1 or i - 1 >= len(dirs) or not dirs[i - 1]:
            return None
        pe = self.embed_rec(t1, dirs[: i - 1], c, depth + 1)
        if pe is EXC:
            self.tag("case1")
            return self.case1(mask, dirs, c, v, i, t1, t2, depth)
        self.tag("case2")
        return self.case2(mask, dirs, c, v, i, t1, t2, pe, depth)

    # -- small utilities shared by the cases --------------------------------------------

    @staticmethod
    def run_len(dirs: tuple, start: int, value: bool) -> int:
        k = start
        while k < len(dirs) and dirs[k] == value:
            k += 1
        return k - start

    def reinsert_dropping_end(self, copy: list[int], dirs_slice: tuple, v: int, c: int):
        """Copy of the same sub-pattern on copy[:-1] + {v}, highest slot first.

        Works when v can take a slot all of whose arcs already point the
        right way (v beaten by, or beating, every copy vertex); candidates
        are validated, so callers need no side conditions.
        """
        body = copy[:-1]
        for q in range(len(copy) - 2, -1, -1):
            seq = body[:q] + [v] + body[q:]
            if self.valseq(seq, dirs_slice, c):
                return seq
        return None

    def triangle_in(self, mask: int, c: int):
        for a in self.bits(mask):
            for b in self.bits(self.out(a, c) & mask):
                back = self.out(b, c) & self.inn(a, c) & mask
                if back:
                    return a, b, next(self.bits(back))
        return None

    def rec_or_none(self, mask: int, dirs: tuple, c: int, depth: int):
        got = self.embed_rec(mask, dirs, c, depth + 1)
        return None if got is EXC else got

    # -- Case 2: the prefix embeds in T1 ----------------------------------------------

    def case2(self, mask, dirs, c, v, i, t1, t2, pe, depth):
        npat = len(dirs) + 1
        if i == npat - 1:  # v is the final vertex
            seq = pe + [v]
            return seq if self.valseq(seq, dirs, c) else None
        if dirs[i]:
            return self.case2_b1_ge2(mask, dirs, c, v, i, t1, t2, pe, depth)
        return self.case2_b1_eq1(mask, dirs, c, v, i, t1, t2, pe, depth)

    def case2_b1_ge2(self, mask, dirs, c, v, i, t1, t2, pe, depth):
        self.tag("case2[b1>=2]")
        w = pe[-1]
        se = self.rec_or_none(t2, dirs[i + 1 :], c, depth)
        if se is not None:
            seq = pe + [v] + se
            if self.valseq(seq, dirs, c):
                return seq
        # T2 is exceptional (size 3/5/7): solve the tail over T2+v exactly,
        # starting at v or at an out-neighbour of the prefix end.
        tail_mask = t2 | (1 << v)
        for origin in [v] + sorted(self.bits(self.out(w, c) & t2)):
            tail = self.base_embed(tail_mask, c, dirs[i:], required=origin)
            if tail is not None:
                seq = pe + tail
                if self.valseq(seq, dirs, c):
                    return seq
        # prefix surgery: v takes a sink slot of the prefix, the old end
        # joins the tail host
        self.tag("case2[b1>=2,prefix-surgery]")
        tail_mask = t2 | (1 << w)
        if i == 1:
            head = [v]
            starts = sorted(self.bits(t2))
        else:
            head = self.reinsert_dropping_end(pe, dirs[: i - 1], v, c)
            if head is None:
                return None
            starts = sorted(self.bits(self.out(head[-1], c) & t2))
        for origin in starts:
            tail = self.base_embed(tail_mask, c, dirs[i:], required=origin)
            if tail is not None:
                seq = head + tail
                if self.valseq(seq, dirs, c):
                    return seq
        return None

    def case2_b1_eq1(self, mask, dirs, c, v, i, t1, t2, pe, depth):
        w = pe[-1]
        nw = self.out(w, c) & t2
        if nw == 0:
            return self.case2_no_exit(mask, dirs, c, v, i, t1, t2, pe, depth)
        comp_masks = self.comps(t2, c)
        l = max(k for k, cm in enumerate(comp_masks) if cm & nw)
        imask = 0
        for cm in comp_masks[: l + 1]:
            imask |= cm
        s = imask.bit_count()
        b2 = self.run_len(dirs, i, False)
        if s > b2:
            return self.case2_s_gt_b2(mask, dirs, c, v, i, t2, pe, comp_masks, l, b2, depth)
        if s == b2:
            return self.case2_s_eq_b2(mask, dirs, c, v, i, t1, t2, pe, comp_masks, l, imask, b2, depth)
        if s == 1:
            return self.case2_s1(mask, dirs, c, v, i, t1, t2, pe, b2, depth)
        return self.case2_s_small(mask, dirs, c, v, i, t1, t2, pe, comp_masks, l, imask, b2, depth)

    def case2_s_gt_b2(self, mask, dirs, c, v, i, t2, pe, comp_masks, l, b2, depth):
        self.tag("case2[b1=1,s>b2]")
        w = pe[-1]
        z = next(self.bits(self.out(w, c) & comp_masks[l]))
        chain = self.path_ending_at(comp_masks[: l + 1], z, c)
        u = chain[-(b2 + 1) :]  # u[0] -> ... -> u[b2] = z
        listed = list(reversed(u[1:]))  # z first, descending to u[1]
        drop = 0
        for x in u[1:]:
            drop |= 1 << x
        rest_mask = t2 & ~drop
        rest = self.rec_or_none(rest_mask, dirs[i + b2 + 1 :], c, depth)
        if rest is not None:
            seq = pe + listed + [v] + rest
            if self.valseq(seq, dirs, c):
                return seq
        tail = self.base_embed(rest_mask | (1 << v), c, dirs[i + b2 :], required=u[0])
        if tail is not None:
            seq = pe + listed + tail
            if self.valseq(seq, dirs, c):
                return seq
        return None

    def case2_s_eq_b2(self, mask, dirs, c, v, i, t1, t2, pe, comp_masks, l, imask, b2, depth):
        self.tag("case2[b1=1,s=b2]")
        w = pe[-1]
        z = next(self.bits(self.out(w, c) & comp_masks[l]))
        chain = self.path_ending_at(comp_masks[: l + 1], z, c)  # spans I, ends at z
        listed = list(reversed(chain))
        rest_mask = t2 & ~imask
        rest = self.rec_or_none(rest_mask, dirs[i + b2 + 1 :], c, depth)
        if rest is not None:
            seq = pe + listed + [v] + rest
            if self.valseq(seq, dirs, c):
                return seq
        # T2 - I is exceptional and the tail pattern is antidirected
        self.tag("case2[b1=1,s=b2,exceptional-rest]")
        tail_dirs = dirs[i + b2 + 1 :]
        if i == 1 or dirs[i - 2]:
            head = [v] if i == 1 else pe[: i - 1] + [v]
            for a in sorted(self.bits(rest_mask)):
                tail = self.base_embed(
                    (rest_mask & ~(1 << a)) | (1 << w), c, tail_dirs, forbidden=(w,)
                )
                if tail is not None:
                    seq = head + [a] + listed + tail
                    if self.valseq(seq, dirs, c):
                        return seq
            return None
        cand_a = self.out(pe[i - 2], c) & rest_mask if i >= 2 else 0
        if cand_a:
            head = self.reinsert_dropping_end(pe, dirs[: i - 1], v, c)
            if head is not None:
                for a in sorted(self.bits(cand_a)):
                    tail = self.base_embed(
                        (rest_mask & ~(1 << a)) | (1 << w), c, tail_dirs, forbidden=(w,)
                    )
                    if tail is not None:
                        seq = head + [a] + listed + tail
                        if self.valseq(seq, dirs, c):
                            return seq
        tri = self.triangle_in(rest_mask, c)
        if tri is None:
            return None
        a, b, c3 = tri
        b3 = self.run_len(dirs, i + b2, True)
        if b2 >= 2:
            tail_mask = (rest_mask & ~((1 << a) | (1 << b))) | (1 << chain[0]) | (1 << chain[1])
            tail = self.base_embed(tail_mask, c, tail_dirs)
            if tail is not None:
                seq = pe[: i - 1] + [a, w, b] + list(reversed(chain[2:])) + [v] + tail
                if self.valseq(seq, dirs, c):
                    return seq
        elif b3 == 1:
            tail_mask = t2 & ~((1 << a) | (1 << b) | (1 << c3))
            if tail_mask.bit_count() <= self.n0:
                tail = self.base_embed(tail_mask, c, dirs[i + 4 :])
            else:
                tail = self.rec_or_none(tail_mask, dirs[i + 4 :], c, depth)
            if tail is not None:
                seq = pe[: i - 1] + [a, w, b, c3, v] + tail
                if self.valseq(seq, dirs, c):
                    return seq
        else:
            # b2 = 1, b3 = 2: a fourth deletion keeping the remainder workable
            for d in sorted(self.bits(rest_mask & ~((1 << a) | (1 << b) | (1 << c3)))):
                tail_mask = t2 & ~((1 << a) | (1 << b) | (1 << c3) | (1 << d))
                tail = self.base_embed(tail_mask, c, dirs[i + 5 :])
                if tail is not None:
                    seq = pe[: i - 1] + [d, w, a, b, c3, v] + tail
                    if self.valseq(seq, dirs, c):
                        return seq
        return None

    def case2_s_small(self, mask, dirs, c, v, i, t1, t2, pe, comp_masks, l, imask, b2, depth):
        """2 <= s <= b2-1: a directed chain through I carries part of the
        backward block; the rest of the block is routed through the later
        components, and the junction arcs decide the assembly."""
        self.tag("case2[b1=1,s<b2]")
        w = pe[-1]
        s = imask.bit_count()
        z = next(self.bits(self.out(w, c) & comp_masks[l]))
        chain = self.path_ending_at(comp_masks[: l + 1], z, c)  # q_1 ... q_s = z
        outside = t2 & ~imask
        ham_out = self.redei(outside, c)
        qlen = b2 - s
        rest_dirs = dirs[i + b2 + 1 :]
        useg = list(reversed(chain[:-1]))  # q_{s-1} ... q_1
        for start in range(len(ham_out) - qlen + 1):
            window = ham_out[start : start + qlen]
            wmask = 0
            for x in window:
                wmask |= 1 << x
            rest = self.rec_or_none(outside & ~wmask, rest_dirs, c, depth)
            if rest is None:
                continue
            qrev = list(reversed(window))
            if i == 1 or dirs[i - 2]:
                seq = pe[: i - 1] + [v, z, w] + qrev + useg + rest
            elif self.arc(pe[i - 2], z, c):
                head = self.reinsert_dropping_end(pe, dirs[: i - 1], v, c)
                if head is None:
                    continue
                seq = head + [z, w] + qrev + useg + rest
            elif self.arc(chain[-2], w, c):
                seq = pe[: i - 1] + [z] + qrev + [v, w] + useg + rest
            elif self.arc(chain[-2], pe[i - 2], c):
                seq = pe[: i - 1] + [chain[-2], z, w] + qrev + list(reversed(chain[: s - 2])) + [v] + rest
            else:
                head = self.reinsert_dropping_end(pe, dirs[: i - 1], v, c)
                if head is None:
                    continue
                q2 = self.redei(imask & ~(1 << chain[-2]), c)
                seq = head + [chain[-2], w] + qrev + list(reversed(q2)) + rest
            if self.valseq(seq, dirs, c):
                return seq
        return None

    def case2_s1(self, mask, dirs, c, v, i, t1, t2, pe, b2, depth):
        """s = 1: the prefix end beats exactly one vertex z of T2."""
        self.tag("case2[b1=1,s=1]")
        w = pe[-1]
        z = next(self.bits(self.out(w, c) & t2))
        k2 = t2.bit_count()
        if i >= 2 and not dirs[i - 2]:
            cand_a = self.inn(pe[i - 2], c) & t2 & ~(1 << z)
            for a in sorted(self.bits(cand_a)):
                if b2 == k2:
                    q = self.redei(t2 & ~((1 << z) | (1 << a)), c)
                    seq = pe[: i - 1] + [a, w] + list(reversed(q)) + [z, v]
                    if self.valseq(seq, dirs, c):
                        return seq
                else:
                    pool = self.redei(t2 & ~((1 << z) | (1 << a)), c)
                    for start in range(len(pool) - (b2 - 1) + 1):
                        window = pool[start : start + b2 - 1]
                        wm = 0
                        for x in window:
                            wm |= 1 << x
                        tail = self.rec_or_none(t2 & ~wm & ~(1 << a), dirs[i + b2 + 1 :], c, depth)
                        if tail is None:
                            continue
                        seq = pe[: i - 1] + [a, w] + list(reversed(window)) + [v] + tail
                        if self.valseq(seq, dirs, c):
                            return seq
            return self.case2_s1_dominant(mask, dirs, c, v, i, t1, t2, pe, z, depth)
        # forward arc into the prefix end, or a one-vertex prefix
        rest = self.rec_or_none(t2 & ~(1 << z), dirs[i + 2 :], c, depth)
        if rest is not None:
            seq = pe[: i - 1] + [v, z, w] + rest
            if self.valseq(seq, dirs, c):
                return seq
        for a in sorted(self.bits(t2 & ~(1 << z))):
            tail_mask = t2 & ~((1 << z) | (1 << a))
            if tail_mask.bit_count() > self.n0:
                break
            tail = self.base_embed(tail_mask, c, dirs[i + 3 :])
            if tail is not None:
                seq = pe[: i - 1] + [v, a, z, w] + tail
                if self.valseq(seq, dirs, c):
                    return seq
        return self.case2_s1_balanced(mask, dirs, c, v, i, t1, t2, pe, z, depth)

    def case2_s1_dominant(self, mask, dirs, c, v, i, t1, t2, pe, z, depth):
        """The second-to-last prefix vertex also beats all of T2 - z."""
        w = pe[-1]
        host = (t2 & ~(1 << z)) | (1 << v)
        tail_dirs = dirs[i + 1 :]
        if not any(tail_dirs):
            inner = [v] + self.redei(t2 & ~(1 << z), c)
            tail = list(reversed(inner))
        elif all(tail_dirs):
            tail = None
        else:
            tail = self.source_sink_insert(host, v, tail_dirs, c, depth, True)
        if tail is None:
            return None
        for jj in range(i - 2):
            if not self.arc(pe[jj], w, c):
                continue
            keep = t1 & ~((1 << pe[i - 2]) | (1 << w) | (1 << pe[jj]))
            qp = self.rec_or_none(keep | (1 << z), dirs[: i - 3], c, depth)
            if qp is None:
                continue
            seq = qp + [pe[i - 2], pe[jj], w] + tail
            if self.valseq(seq, dirs, c):
                return seq
        return None

    def case2_s1_balanced(self, mask, dirs, c, v, i, t1, t2, pe, z, depth):
        """s = 1 endgame: T2 - z exceptional, prefix and suffix the same size."""
        self.tag("case2[b1=1,s=1,endgame]")
        t2z = t2 & ~(1 << z)
        if t2z.bit_count() > 7 or i < 4:
            return None
        sink = None
        for a in self.bits(t1):
            if self.out(a, c) & t1 == 0:
                sink = a
                break
        if sink is None:
            return None
        redei1 = self.redei(t1 & ~(1 << sink), c)
        if len(redei1) < 3:
            return None
        b, c3, d = redei1[0], redei1[1], redei1[2]
        head_mask = (t1 & ~((1 << sink) | (1 << b) | (1 << c3) | (1 << d))) | (1 << v)
        if head_mask.bit_count() > self.n0 or t2.bit_count() - 2 > self.n0:
            return None
        for bp in sorted(self.bits(t2z)):
            qpp = self.base_embed(t2 & ~((1 << bp) | (1 << z)), c, dirs[i + 3 :])
            if qpp is None:
                continue
            qp = self.base_embed(head_mask, c, dirs[: i - 4])
            if qp is None:
                continue
            seq = qp + [z, b, c3, d, bp, sink] + qpp
            if self.valseq(seq, dirs, c):
                return seq
        return None

    def case2_no_exit(self, mask, dirs, c, v, i, t1, t2, pe, depth):
        """The prefix end beats nothing in T2 at all."""
        self.tag("case2[b1=1,no-exit]")
        w = pe[-1]
        tail_dirs = dirs[i + 1 :]
        mixed = any(tail_dirs) and not all(tail_dirs)
        if i == 1:
            if mixed:
                for a in sorted(self.bits(t2)):
                    host = (t2 & ~(1 << a)) | (1 << v)
                    tail = self.source_sink_insert(host, v, tail_dirs, c, depth, True)
                    if tail is not None:
                        seq = [a, w] + tail
                        if self.valseq(seq, dirs, c):
                            return seq
            return None
        side = self.inn if not dirs[i - 2] else self.out
        for a in sorted(self.bits(side(pe[i - 2], c) & t2)):
            if mixed:
                host = (t2 & ~(1 << a)) | (1 << v)
                tail = self.source_sink_insert(host, v, tail_dirs, c, depth, True)
                if tail is not None:
                    seq = pe[: i - 1] + [a, w] + tail
                    if self.valseq(seq, dirs, c):
                        return seq
            if all(tail_dirs):
                for b in sorted(self.bits(self.out(a, c) & t2)):
                    q = self.redei(t2 & ~((1 << a) | (1 << b)), c)
                    seq = pe[: i - 1] + [a, b, v] + q + [w]
                    if self.valseq(seq, dirs, c):
                        return seq
            if tail_dirs[:3] == (True, False, False) and t2.bit_count() == 4:
                others = [x for x in self.bits(t2) if x != a]
                for b in others:
                    for d in others:
                        if d == b:
                            continue
                        c3 = next(x for x in others if x not in (b, d))
                        seq = pe[: i - 1] + [a, b, d, w, c3, v]
                        if self.valseq(seq, dirs, c):
                            return seq
        return None

    # -- Case 1: T1 exceptional, the antidirected prefix does not embed ----------------

    def case1(self, mask, dirs, c, v, i, t1, t2, depth):
        b1 = self.run_len(dirs, i - 1, True)
        if b1 >= 3:
            got = self.case1_b1_ge3(mask, dirs, c, v, i, t1, t2, depth)
            if got is not None:
                return got
        if i >= 2 and dirs[i - 2]:
            got = self.case1_forward(mask, dirs, c, v, i, t1, t2, depth)
            if got is not None:
                return got
        if b1 == 1:
            got = self.case1_b1_eq1(mask, dirs, c, v, i, t1, t2, depth)
            if got is not None:
                return got
        if b1 == 2:
            got = self.case1_b1_eq2(mask, dirs, c, v, i, t1, t2, depth)
            if got is not None:
                return got
        return None

    def case1_b1_ge3(self, mask, dirs, c, v, i, t1, t2, depth):
        self.tag("case1[b1>=3]")
        for a in sorted(self.bits(t2)):
            rest = self.rec_or_none(t2 & ~(1 << a), dirs[i + 2 :], c, depth)
            if rest is None:
                continue
            pfx = self.base_embed_end(t1 | (1 << a), c, dirs[:i], forbidden_ends=(a,))
            if pfx is None:
                continue
            seq = pfx + [v] + rest
            if self.valseq(seq, dirs, c):
                return seq
        return None

    def case1_forward(self, mask, dirs, c, v, i, t1, t2, depth):
        """Forward arc before the junction: drop one T1 vertex into the tail."""
        self.tag("case1[fwd]")
        for x in sorted(self.bits(t1)):
            q1 = self.base_embed(t1 & ~(1 << x), c, dirs[: i - 2])
            if q1 is None:
                continue
            e2 = self.rec_or_none(t2 | (1 << x), dirs[i:], c, depth)
            if e2 is None:
                continue
            if e2[0] != x:
                seq = q1 + [v] + e2
                if self.valseq(seq, dirs, c):
                    return seq
            else:
                pfx = self.base_embed_end(t1 | (1 << v), c, dirs[:i], end=x)
                if pfx is None:
                    continue
                seq = pfx + e2[1:]
                if self.valseq(seq, dirs, c):
                    return seq
        return None

    def case1_b1_eq1(self, mask, dirs, c, v, i, t1, t2, depth):
        self.tag("case1[b1=1]")
        rest = self.rec_or_none(t2, dirs[i + 1 :], c, depth)
        if rest is None:
            return self.case1_both_exceptional(mask, dirs, c, v, i, t1, t2, depth)
        r = rest[0]
        for x in sorted(self.bits(self.out(r, c) & t1)):
            pfx = self.base_embed_end(t1 | (1 << v), c, dirs[:i], end=x)
            if pfx is not None:
                seq = pfx + rest
                if self.valseq(seq, dirs, c):
                    return seq
        return self.case1_b1_eq1_dominated(mask, dirs, c, v, i, t1, t2, rest, depth)

    def case1_b1_eq1_dominated(self, mask, dirs, c, v, i, t1, t2, rest, depth):
        """Every T1 vertex beats the tail origin: reroute through one of them."""
        self.tag("case1[b1=1,dominated]")
        r = rest[0]
        for y in sorted(self.bits(t1)):
            wt = self.embed_origin(t2 | (1 << y), dirs[i:], c, r, depth)
            if wt is None:
                continue
            pfx = self.base_embed((t1 & ~(1 << y)) | (1 << v), c, dirs[: i - 1])
            if pfx is None:
                continue
            seq = pfx + wt
            if self.valseq(seq, dirs, c):
                return seq
        b2 = self.run_len(dirs, i, False)
        t0 = i + b2  # first pattern-source slot after the junction
        if b2 == 1:
            return self.case1_t_min(mask, dirs, c, v, i, t1, t2, rest, depth)
        if t0 - i >= len(rest):
            return None
        # chain surgery: swap one T1 vertex into the backward run, move the
        # run's end and v into the tail host
        vt1 = rest[t0 - i]  # plays slot t0 + 1
        vt = rest[t0 - i - 1]  # plays slot t0
        segment = [rest[k] for k in range(1, t0 - i - 1)]  # slots i+2 .. t0-1
        tail_rest = 0
        for x in rest[t0 - i + 1 :]:
            tail_rest |= 1 << x
        for y in sorted(self.bits(t1)):
            pfx = self.base_embed_end(t1 | (1 << r), c, dirs[:i], end=y)
            if pfx is None or pfx[i - 1] == r:
                continue
            tail = [v] + (self.rec_or_none(tail_rest | (1 << vt), dirs[t0 + 1 :], c, depth) or [])
            seq = pfx[:i] + segment + [y, vt1] + tail
            if self.valseq(seq, dirs, c):
                return seq
        return None

    def case1_t_min(self, mask, dirs, c, v, i, t1, t2, rest, depth):
        """Backward run of length one right after the junction."""
        r = rest[0]
        if len(rest) < 3:
            return None
        for x in sorted(self.bits(t1)):
            q2 = self.base_embed(t1 & ~(1 << x), c, dirs[1 : i - 1])
            if q2 is None:
                continue
            seq = [rest[1]] + q2 + [r, x, v] + rest[2:]
            if self.valseq(seq, dirs, c):
                return seq
        for y in sorted(self.bits(self.out(rest[2], c) & t1)):
            pool = sorted(self.bits(t1 & ~(1 << y)))
            for a in pool:
                for b in pool:
                    if b == a or not self.arc(a, b, c):
                        continue
                    head_mask = (t1 & ~((1 << a) | (1 << b) | (1 << y))) | (1 << v)
                    pfx2 = self.base_embed(head_mask, c, dirs[: i - 3])
                    if pfx2 is None:
                        continue
                    seq = pfx2 + [r, a, b, rest[1], y] + rest[2:]
                    if self.valseq(seq, dirs, c):
                        return seq
        for z in sorted(self.bits(t1)):
            pfx3 = self.base_embed_end(
                (t1 & ~(1 << z)) | (1 << rest[1]), c, dirs[: i - 1], forbidden_ends=(rest[1],)
            )
            if pfx3 is None:
                continue
            tail = self.embed_origin(
                (1 << v) | sum(1 << x for x in rest[2:]), dirs[i + 2 :], c, rest[2], depth
            )
            if tail is None:
                continue
            seq = pfx3 + [r, z] + tail
            if self.valseq(seq, dirs, c):
                return seq
        return None

    def case1_both_exceptional(self, mask, dirs, c, v, i, t1, t2, depth):
        """T1 and T2 both exceptional; both sides are small."""
        self.tag("case1[both-exceptional]")
        if t2.bit_count() + 1 > self.n0:
            return None
        for x in sorted(self.bits(t1)):
            e2 = self.base_embed(t2 | (1 << x), c, dirs[i:], forbidden=(x,))
            if e2 is None:
                continue
            r = e2[0]
            for y in sorted(self.bits(t1 & self.inn(r, c) & ~(1 << x))):
                pfx = self.base_embed_end((t1 | (1 << v)) & ~(1 << x), c, dirs[: i - 1], end=y)
                if pfx is not None:
                    seq = pfx + e2
                    if self.valseq(seq, dirs, c):
                        return seq
                rem = t1 & ~((1 << x) | (1 << y))
                for zz in sorted(self.bits(self.out(y, c) & rem)):
                    pfx = self.base_embed_end(rem | (1 << v), c, dirs[: i - 2], end=zz)
                    if pfx is None:
                        continue
                    seq = pfx + [y] + e2
                    if self.valseq(seq, dirs, c):
                        return seq
        return None

    def case1_b1_eq2(self, mask, dirs, c, v, i, t1, t2, depth):
        self.tag("case1[b1=2]")
        rest = self.rec_or_none(t2, dirs[i + 1 :], c, depth)
        if rest is None:
            return self.case1_both_exceptional(mask, dirs, c, v, i, t1, t2, depth)
        r = rest[0]
        for x in sorted(self.bits(self.inn(r, c) & t1)):
            pfx = self.base_embed_end(t1 | (1 << v), c, dirs[:i], end=x)
            if pfx is not None:
                seq = pfx + rest
                if self.valseq(seq, dirs, c):
                    return seq
        # v replaces the tail origin inside the tail host
        tail_dirs = dirs[i + 1 :]
        if any(tail_dirs) and not all(tail_dirs):
            host = (t2 & ~(1 << r)) | (1 << v)
            tail = self.source_sink_insert(host, v, tail_dirs, c, depth, True)
            if tail is not None and tail[0] != v:
                for x in sorted(self.bits(self.inn(tail[0], c) & t1)):
                    pfx = self.base_embed_end(t1 | (1 << v), c, dirs[:i], end=x)
                    if pfx is not None and v not in pfx:
                        seq = pfx + tail
                        if self.valseq(seq, dirs, c):
                            return seq
        # junction micro-assembly around one T1 exit arc
        for x in sorted(self.bits(t1)):
            for a in sorted(self.bits(self.out(x, c) & t2)):
                pfx = self.base_embed_end(t1 | (1 << r), c, dirs[:i], end=x)
                if pfx is None:
                    continue
                inner = t2 & ~((1 << a) | (1 << r))
                tail = [v] + (self.rec_or_none(inner, dirs[i + 3 :], c, depth) or [])
                seq = pfx + [a] + tail
                if self.valseq(seq, dirs, c):
                    return seq
                for b in sorted(self.bits(self.inn(a, c) & inner)):
                    tail2 = self.embed_origin((inner | (1 << v)) & ~(1 << b), dirs[i + 3 :], c, None, depth)
                    if tail2 is None:
                        continue
                    seq = pfx + [a, b] + tail2
                    if self.valseq(seq, dirs, c):
                        return seq
        return None

    def embed_origin(self, mask, dirs, c, origin, depth):
        """Best-effort origin-constrained embedding on a masked host.

        Exact below the base threshold; above it, one constructive attempt
        (callers fall through to other moves when this returns None).
        """
        if origin is not None and not ((mask >> origin) & 1):
            return None
        if mask.bit_count() <= self.n0:
            return self.base_embed(mask, c, dirs, required=origin)
        if origin is None:
            return self.rec_or_none(mask, dirs, c, depth)
        if not dirs:
            return [origin]
        rest = self.rec_or_none(mask & ~(1 << origin), dirs[1:], c, depth)
        if rest is not None:
            ok = self.arc(origin, rest[0], c) if dirs[0] else self.arc(rest[0], origin, c)
            if ok:
                return [origin] + rest
        return None


# ---------------------------------------------------------------------------
# public operations

_DEFAULT_BASE = BaseSolver()


def default_base_solver() -> BaseSolver:
    return _DEFAULT_BASE


def _exception_report(t: Tournament, p: PathPattern) -> ExceptionReport:
    cls = classify_small(t)
    if cls is None or cls.kind not in GRUNBAUM_KINDS or not p.is_antidirected:
        raise RuntimeError(
            f"embedding absent on a non-exceptional instance {t.to_code()} / {p.signs()}"
        )
    return ExceptionReport(cls.kind, cls.iso, True)


def _mask_is_triangle(t: Tournament, mask: int) -> bool:
    if mask.bit_count() != 3:
        return False
    a, b, c = [v for v in range(t.n) if (mask >> v) & 1]
    return (t.arc(a, b) and t.arc(b, c) and t.arc(c, a)) or (
        t.arc(a, c) and t.arc(c, b) and t.arc(b, a)
    )


def simple_lemma_embed(
    t: Tournament,
    v: int,
    p: PathPattern,
    requested_origin: int | None = None,
    n0: int = 8,
    base: BaseSolver | None = None,
) -> Embedding:
    """Embed a non-directed pattern around a source (or sink) vertex v.

    The returned embedding never starts at v.  When T - v is one of the
    three exceptional tournaments, ``requested_origin`` may name any vertex
    of T - v to start at.  The excluded pairs (P+(1,2) around a source over
    a cyclic triangle; P-(1,2) around a sink over one) raise.
    """
    if t.n != p.n:
        raise EmbedError(f"size mismatch: tournament {t.n}, pattern {p.n}")
    base = base or _DEFAULT_BASE
    is_source = t.in_degree(v) == 0
    is_sink = t.out_degree(v) == 0
    if not is_source and not is_sink:
        raise EmbedError(f"vertex {v} is neither a source nor a sink")
    if p.is_directed:
        raise EmbedError("directed patterns are handled by the Hamiltonian path routine")
    rest_mask = ((1 << t.n) - 1) ^ (1 << v)
    if is_source and p.dirs == (True, False, False) and _mask_is_triangle(t, rest_mask):
        raise SimpleLemmaExcluded("P+(1,2) around a source over a cyclic triangle")
    if is_sink and p.dirs == (False, True, True) and _mask_is_triangle(t, rest_mask):
        raise SimpleLemmaExcluded("P-(1,2) around a sink over a cyclic triangle")
    ctx = _Ctx(t, n0, base)
    seq = ctx.source_sink_insert(
        ctx.full, v, p.dirs, 0, 0, is_source, requested_origin=requested_origin
    )
    if seq is None or not validate(t, p, seq):
        raise RuntimeError(f"source/sink insertion failed on {t.to_code()} / {p.signs()}")
    return Embedding(p, tuple(seq))


def inductive_step(
    t: Tournament, p: PathPattern, n0: int = 8, base: BaseSolver | None = None
) -> EmbedOutcome:
    """One normalized inductive step: split at the minimum in-degree vertex.

    Preconditions: n above the base threshold, delta_minus >= 1, and a
    forward pattern arc at position delta_minus.
    """
    if t.n != p.n:
        raise EmbedError(f"size mismatch: tournament {t.n}, pattern {p.n}")
    if t.n <= n0:
        raise EmbedError(f"inductive step needs n > {n0}")
    i = t.min_in_degree()
    if i < 1:
        raise EmbedError("inductive step needs delta_minus >= 1")
    if not p.dirs[i - 1]:
        raise EmbedError(f"pattern arc at position {i} must be forward; normalize first")
    base = base or _DEFAULT_BASE
    ctx = _Ctx(t, n0, base)
    seq = ctx.split_min(ctx.full, p.dirs, 0, 0)
    if seq is None:
        seq = ctx.variant_ladder(ctx.full, p.dirs, 0, 0)
    if seq is None:
        seq = ctx.oracle_rescue(ctx.full, 0, p.dirs)
    if seq is None or not validate(t, p, seq):
        raise RuntimeError(f"inductive step failed on {t.to_code()} / {p.signs()}")
    return EmbedOutcome(Embedding(p, tuple(seq)), tuple(ctx.trace), dict(ctx.stats))


def embed(
    t: Tournament, p: PathPattern, n0: int = 8, base: BaseSolver | None = None
) -> EmbedOutcome:
    """Witness embedding of p in t, or the exception certificate.

    Deterministic given (t, p); every returned witness is validated.
    """
    if t.n != p.n:
        raise EmbedError(f"size mismatch: tournament {t.n}, pattern {p.n}")
    base = base or _DEFAULT_BASE
    if t.n == 1:
        return EmbedOutcome(Embedding(p, (0,)), ("base_oracle[trivial]",), {})
    if t.n == 2:
        seq = (0, 1) if t.arc(0, 1) == p.dirs[0] else (1, 0)
        return EmbedOutcome(Embedding(p, seq), ("base_oracle[trivial]",), {})
    if p.is_directed:
        path = hamiltonian_directed_path(t)
        seq = path if p.dirs[0] else list(reversed(path))
        assert validate(t, p, seq)
        return EmbedOutcome(Embedding(p, tuple(seq)), ("redei",), {})
    if t.n <= n0:
        got = base.embed(t, p) if t.n <= base.n0 else oracle_embed(t, p)
        if got is None:
            return EmbedOutcome(_exception_report(t, p), ("base_oracle",), {})
        assert validate(t, p, got)
        return EmbedOutcome(Embedding(p, tuple(got)), ("base_oracle",), {})
    ctx = _Ctx(t, n0, base)
    src = next((u for u in range(t.n) if t.in_degree(u) == 0), None)
    snk = next((u for u in range(t.n) if t.out_degree(u) == 0), None)
    if src is not None or snk is not None:
        v = src if src is not None else snk
        ctx.tag("simple_lemma")
        seq = ctx.source_sink_insert(ctx.full, v, p.dirs, 0, 0, src is not None)
        if seq is not None and validate(t, p, seq):
            return EmbedOutcome(Embedding(p, tuple(seq)), tuple(ctx.trace), dict(ctx.stats))
        seq = ctx.variant_ladder(ctx.full, p.dirs, 0, 0) or ctx.oracle_rescue(ctx.full, 0, p.dirs)
        stats = dict(ctx.stats)
        if seq is None or not validate(t, p, seq):
            raise RuntimeError(f"embedding engine failed on {t.to_code()} / {p.signs()}")
        return EmbedOutcome(Embedding(p, tuple(seq)), tuple(ctx.trace), stats)
    choice = choose_variant(t, p)
    if not choice.qualified:
        # No witness-equivalent variant satisfies both conditions; the
        # argument would lean on the complement-equivalence theorem, which
        # transports existence but not witnesses.  Try the constructive
        # ladder without the dominance condition first; the exact search is
        # the last resort (exponential worst case, guaranteed to succeed).
        ctx.tag("thm3_fallback")
        got = ctx.variant_ladder(ctx.full, p.dirs, 0, 0)
        if got is None:
            got = oracle_embed(t, p)
            if got is not None and t.n > n0:
                ctx.stats["oracle_above_n0"] += 1
        stats = dict(ctx.stats)
        stats.update(thm3_fallback=True, variant_qualified=False)
        if got is None:
            return EmbedOutcome(_exception_report(t, p), tuple(ctx.trace), stats)
        assert validate(t, p, got)
        return EmbedOutcome(Embedding(p, tuple(got)), tuple(ctx.trace), stats)
    ctx.tag(f"variant:{choice.tag}")
    cc = 0 if choice.tag in ("V1", "V3") else 1
    seq = ctx.split_min(ctx.full, choice.pattern.dirs, cc, 0)
    if seq is not None:
        seq = undo_variant(choice.tag, seq)
        if not validate(t, p, seq):
            seq = None
    if seq is None:
        seq = ctx.variant_ladder(ctx.full, p.dirs, 0, 0)
    if seq is None:
        seq = ctx.oracle_rescue(ctx.full, 0, p.dirs)
    stats = dict(ctx.stats)
    stats.update(thm3_fallback=False, variant_qualified=True)
    if seq is None or not validate(t, p, seq):
        raise RuntimeError(f"embedding engine failed on {t.to_code()} / {p.signs()}")
    return EmbedOutcome(Embedding(p, tuple(seq)), tuple(ctx.trace), stats)
