import itertools
import random

import pytest

from tourpath.canon import cyclic_triangle, paley_7, regular_5, t4_plus
from tourpath.oracle import (
    BaseSolver,
    OriginConstraint,
    SizeAboveThreshold,
    count_embeddings,
    oracle_embed,
)
from tourpath.paths import PathPattern
from tourpath.tournament import Tournament

P = PathPattern.from_signs

TRANSITIVE3 = Tournament.build(3, {(0, 1), (0, 2), (1, 2)})


def brute_copies(t, p):
    """Independent oracle: full permutation enumeration."""
    out = []
    for perm in itertools.permutations(range(t.n)):
        if all(t.arc(perm[k], perm[k + 1]) == d for k, d in enumerate(p.dirs)):
            out.append(perm)
    return out


class TestOracleEmbed:
    def test_cyclic_antidirected_absent(self):
        assert oracle_embed(cyclic_triangle(), P("FB")) is None

    def test_transitive_fb(self):
        # brute enumeration gives copies (0,2,1) and (1,2,0); lowest-index wins
        assert brute_copies(TRANSITIVE3, P("FB")) == [(0, 2, 1), (1, 2, 0)]
        assert oracle_embed(TRANSITIVE3, P("FB")) == [0, 2, 1]

    def test_t4_plus_forbidden_source(self):
        t = t4_plus()
        copies = brute_copies(t, P("FBB"))
        assert copies and all(c[0] == 0 for c in copies)
        got = oracle_embed(t, P("FBB"), OriginConstraint(forbidden_origins=frozenset({0})))
        assert got is None

    def test_required_origin(self):
        got = oracle_embed(TRANSITIVE3, P("FB"), OriginConstraint(required_origin=1))
        assert got == [1, 2, 0]
        assert oracle_embed(TRANSITIVE3, P("FB"), OriginConstraint(required_origin=2)) is None

    def test_constraint_invariant(self):
        with pytest.raises(ValueError):
            OriginConstraint(required_origin=1, forbidden_origins=frozenset({1}))

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            oracle_embed(TRANSITIVE3, P("F"))

    def test_matches_brute_force_exhaustively(self):
        for n in range(2, 5):
            for bits in range(1 << (n * (n - 1) // 2)):
                t = Tournament.from_upper_bits(n, bits)
                for pb in range(1 << (n - 1)):
                    p = PathPattern(tuple(bool((pb >> k) & 1) for k in range(n - 1)))
                    copies = brute_copies(t, p)
                    got = oracle_embed(t, p)
                    if copies:
                        assert got == list(copies[0])
                    else:
                        assert got is None
                    assert count_embeddings(t, p) == len(copies)


class TestCountEmbeddings:
    def test_cyclic_directed_three_rotations(self):
        assert count_embeddings(cyclic_triangle(), P("FF")) == 3

    def test_cyclic_antidirected_zero(self):
        assert count_embeddings(cyclic_triangle(), P("FB")) == 0

    def test_transitive_fb(self):
        assert count_embeddings(TRANSITIVE3, P("FB")) == 2

    def test_exceptional_antidirected_counts(self):
        assert count_embeddings(regular_5(), P("FBFB")) == 0
        assert count_embeddings(paley_7(), P("FBFBFB")) == 0
        assert count_embeddings(regular_5(), P("BFBF")) == 0
        assert count_embeddings(paley_7(), P("BFBFBF")) == 0


class TestTransport:
    def test_reversal_and_complement_witnesses(self):
        rng = random.Random(9)
        for _ in range(150):
            n = rng.randrange(2, 7)
            t = Tournament.from_upper_bits(n, rng.getrandbits(n * (n - 1) // 2))
            p = PathPattern(tuple(rng.random() < 0.5 for _ in range(n - 1)))
            w = oracle_embed(t, p)
            if w is None:
                assert oracle_embed(t, p.reverse()) is None
                assert oracle_embed(t.complement(), p.complement()) is None
                continue
            rev = list(reversed(w))
            assert all(t.arc(rev[k], rev[k + 1]) == d for k, d in enumerate(p.reverse().dirs))
            tc = t.complement()
            assert all(tc.arc(w[k], w[k + 1]) == d for k, d in enumerate(p.complement().dirs))

    def test_no_exceptions_at_n4(self):
        for bits in range(64):
            t = Tournament.from_upper_bits(4, bits)
            for pb in range(8):
                p = PathPattern(tuple(bool((pb >> k) & 1) for k in range(3)))
                assert count_embeddings(t, p) >= 1


class TestBaseSolver:
    def test_relabelled_triangles_share_one_entry(self):
        base = BaseSolver()
        t1 = Tournament.build(3, {(0, 1), (1, 2), (2, 0)})
        t2 = Tournament.build(3, {(0, 2), (2, 1), (1, 0)})
        for t in (t1, t2):
            got = base.embed(t, P("FF"))
            assert got is not None
            assert all(t.arc(got[k], got[k + 1]) for k in range(2))
        assert base.misses == 1 and base.hits == 1

    def test_exceptional_absences(self):
        base = BaseSolver()
        assert base.embed(regular_5(), P("FBFB")) is None
        assert base.embed(paley_7(), P("FBFBFB")) is None

    def test_constraints_relabelled_correctly(self):
        base = BaseSolver()
        rng = random.Random(31)
        for _ in range(200):
            n = rng.randrange(2, 7)
            t = Tournament.from_upper_bits(n, rng.getrandbits(n * (n - 1) // 2))
            p = PathPattern(tuple(rng.random() < 0.5 for _ in range(n - 1)))
            req = rng.randrange(n) if rng.random() < 0.5 else None
            forb = frozenset(
                v for v in range(n) if v != req and rng.random() < 0.3
            )
            con = OriginConstraint(req, forb)
            got = base.embed(t, p, con)
            want = oracle_embed(t, p, con)
            assert (got is None) == (want is None)
            if got is not None:
                assert all(t.arc(got[k], got[k + 1]) == d for k, d in enumerate(p.dirs))
                if req is not None:
                    assert got[0] == req
                assert got[0] not in forb

    def test_size_cap(self):
        base = BaseSolver(n0=4)
        with pytest.raises(SizeAboveThreshold):
            base.embed(regular_5(), P("FFFF"))

    def test_eviction_keeps_answers_correct(self):
        base = BaseSolver(capacity_per_n=8)
        rng = random.Random(4)
        for _ in range(200):
            t = Tournament.from_upper_bits(4, rng.getrandbits(6))
            p = PathPattern(tuple(rng.random() < 0.5 for _ in range(3)))
            got = base.embed(t, p)
            assert (got is None) == (oracle_embed(t, p) is None)
