import random

import pytest

from tourpath.canon import cyclic_triangle, paley_7, regular_5, t4_plus
from tourpath.embedder import (
    EmbedError,
    ExceptionReport,
    SimpleLemmaExcluded,
    choose_variant,
    embed,
    inductive_step,
    simple_lemma_embed,
    undo_variant,
    validate,
)
from tourpath.oracle import oracle_embed
from tourpath.paths import PathPattern
from tourpath.tournament import Tournament

P = PathPattern.from_signs


def rand_tournament(n, rng):
    return Tournament.from_upper_bits(n, rng.getrandbits(n * (n - 1) // 2))


def rotational5_with_flip():
    arcs = {(i, (i + k) % 5) for i in range(5) for k in (1, 2)}
    arcs.remove((0, 1))
    arcs.add((1, 0))
    return Tournament.build(5, arcs)


class TestValidate:
    def test_good(self):
        assert validate(cyclic_triangle(), P("FF"), [0, 1, 2])

    def test_wrong_order(self):
        assert not validate(cyclic_triangle(), P("FF"), [0, 2, 1])

    def test_duplicate_vertex(self):
        assert not validate(cyclic_triangle(), P("FF"), [0, 1, 1])

    def test_malformed(self):
        assert not validate(cyclic_triangle(), P("FF"), [0, 1])
        assert not validate(cyclic_triangle(), P("FF"), [0, 1, 7])


class TestChooseVariant:
    def test_cyclic_fb_takes_v1(self):
        ch = choose_variant(cyclic_triangle(), P("FB"))
        assert ch.tag == "V1" and ch.qualified

    def test_cyclic_bf_takes_v2(self):
        ch = choose_variant(cyclic_triangle(), P("BF"))
        assert ch.tag == "V2" and ch.qualified
        assert ch.pattern == P("FB")

    def test_requires_no_source(self):
        t = Tournament.build(3, {(0, 1), (0, 2), (1, 2)})
        with pytest.raises(EmbedError):
            choose_variant(t, P("FB"))

    def test_no_unqualified_instance_below_n6(self):
        # sources and sinks are short-circuited before variant choice, so the
        # reachable instances have both extremes of degree at least 1
        for n in range(3, 6):
            for bits in range(1 << (n * (n - 1) // 2)):
                t = Tournament.from_upper_bits(n, bits)
                if t.min_in_degree() < 1 or t.min_out_degree() < 1:
                    continue
                for pb in range(1 << (n - 1)):
                    p = PathPattern(tuple(bool((pb >> k) & 1) for k in range(n - 1)))
                    if p.is_directed:
                        continue
                    assert choose_variant(t, p).qualified, (t.to_code(), p.signs())

    def test_smallest_unqualified_instance_is_n6(self):
        # recorded for the ledger: the first (encoding order) non-qualifying
        # pair is T:6:0450 with pattern +----
        from tourpath.embedder import _variant_instances

        hits = []
        for bits in range(1 << 15):
            t = Tournament.from_upper_bits(6, bits)
            if t.min_in_degree() < 1 or t.min_out_degree() < 1:
                continue
            for pb in range(32):
                p = PathPattern(tuple(bool((pb >> k) & 1) for k in range(5)))
                if p.is_directed:
                    continue
                if not choose_variant(t, p).qualified:
                    hits.append((t.to_code(), p.signs()))
                    break
            if hits:
                break
        assert hits == [("T:6:0450", "+----")]
        t = Tournament.from_code(hits[0][0])
        p = PathPattern.from_signs(hits[0][1])
        for _, ht, hp in _variant_instances(t, p):
            i = ht.min_in_degree()
            dominant = ht.max_out_degree() >= ht.max_in_degree()
            assert not (dominant and i >= 1 and hp.dirs[i - 1])
        # the fallback still embeds it (n=6 is below the base threshold)
        out = embed(t, p)
        assert out.is_embedding and validate(t, p, list(out.result.seq))

    def test_all_variants_witness_equivalent(self):
        rng = random.Random(8)
        from tourpath.embedder import _variant_instances

        for _ in range(100):
            n = rng.randrange(3, 7)
            t = rand_tournament(n, rng)
            p = PathPattern(tuple(rng.random() < 0.5 for _ in range(n - 1)))
            for tag, ht, hp in _variant_instances(t, p):
                w = oracle_embed(ht, hp)
                if w is not None:
                    back = undo_variant(tag, w)
                    assert validate(t, p, back), (tag, t.to_code(), p.signs())


class TestSimpleLemma:
    def test_t4_plus_bff(self):
        t = t4_plus()
        e = simple_lemma_embed(t, 0, P("BFF"))
        # shape (a, s, b, c): a cycle vertex first, then the source, then a
        # directed run through the rest of the cycle
        assert e.seq[1] == 0 and e.seq[0] in (1, 2, 3)
        assert validate(t, P("BFF"), list(e.seq))
        assert e.seq[0] != 0

    def test_t4_plus_exceptional_pair(self):
        with pytest.raises(SimpleLemmaExcluded):
            simple_lemma_embed(t4_plus(), 0, P("FBB"))

    def test_sink_mirror_exception(self):
        t = t4_plus().complement()  # sink 0 under a cyclic triangle
        with pytest.raises(SimpleLemmaExcluded):
            simple_lemma_embed(t, 0, P("BFF"))
        e = simple_lemma_embed(t, 0, P("FBB"))
        assert validate(t, P("FBB"), list(e.seq)) and e.seq[0] != 0

    def test_transitive4_origin_not_source(self):
        t = Tournament.build(4, {(u, v) for u in range(4) for v in range(u + 1, 4)})
        e = simple_lemma_embed(t, 0, P("FBF"))
        assert validate(t, P("FBF"), list(e.seq)) and e.seq[0] != 0

    def test_directed_pattern_rejected(self):
        with pytest.raises(EmbedError):
            simple_lemma_embed(t4_plus(), 0, P("FFF"))

    def test_non_extreme_vertex_rejected(self):
        with pytest.raises(EmbedError):
            simple_lemma_embed(t4_plus(), 1, P("FBF"))

    def test_requested_origin_over_exceptional_rest(self):
        t = t4_plus()
        for pat in ("BFF", "FBF", "BFB", "FFB", "BBF"):
            p = P(pat)
            for r in (1, 2, 3):
                e = simple_lemma_embed(t, 0, p, requested_origin=r)
                assert e.seq[0] == r and validate(t, p, list(e.seq))

    def test_interior_source_keeps_v_interior_exhaustive_n5(self):
        from tourpath.generate import gen_all

        for rest in gen_all(4):
            arcs = set()
            for u in range(4):
                for v in range(4):
                    if u != v and rest.arc(u, v):
                        arcs.add((u + 1, v + 1))
            arcs.update((0, v) for v in range(1, 5))
            t = Tournament.build(5, arcs)
            for pb in range(16):
                p = PathPattern(tuple(bool((pb >> k) & 1) for k in range(4)))
                srcs, _ = p.sources_sinks()
                if p.is_directed or not any(1 < j < p.n for j in srcs):
                    continue
                e = simple_lemma_embed(t, 0, p)
                assert e.seq[0] != 0 and e.seq[-1] != 0

    def test_interior_source_keeps_v_interior(self):
        # a pattern with an interior position of in-degree 0 lets the source
        # land strictly inside the embedding
        rng = random.Random(6)
        for _ in range(200):
            n = rng.randrange(5, 8)
            base_t = rand_tournament(n - 1, rng)
            arcs = set()
            for u in range(n - 1):
                for v in range(n - 1):
                    if u != v and base_t.arc(u, v):
                        arcs.add((u + 1, v + 1))
            arcs.update((0, v) for v in range(1, n))
            t = Tournament.build(n, arcs)
            p = PathPattern(tuple(rng.random() < 0.5 for _ in range(n - 1)))
            srcs, _ = p.sources_sinks()
            if p.is_directed or not any(1 < j < p.n for j in srcs):
                continue
            if p.dirs[:3] == (True, False, False) and n == 4:
                continue
            e = simple_lemma_embed(t, 0, p)
            assert e.seq[0] != 0 and e.seq[-1] != 0


def _figure_tournament(arcs, n):
    return Tournament.build(n, arcs)


def figure_t1_eq_3_first():
    """|T1| = 3 figure, transitive T1; claimed copy v5 v4 v v7 v6 v3 v1 v2."""
    arcs = {(1, 0), (2, 0), (2, 1)}
    arcs |= {(u, 3) for u in (0, 1, 2)}
    arcs |= {(3, v) for v in (4, 5, 6, 7)}
    arcs |= {(4, 5), (4, 6), (4, 7), (5, 6), (6, 7), (7, 5)}
    arcs |= {(b, a) for b in (4, 5, 6, 7) for a in (0, 1, 2)}
    t = _figure_tournament(arcs, 8)
    seq = [5, 4, 3, 7, 6, 2, 0, 1]
    return t, seq


def figure_t1_eq_3_second():
    """|T1| = 3 figure, cyclic T1; claimed copy v7 v6 v5 v2 v3 v v4 v1."""
    arcs = {(0, 2), (2, 1), (1, 0)}
    arcs |= {(u, 3) for u in (0, 1, 2)}
    arcs |= {(3, v) for v in (4, 5, 6, 7)}
    arcs |= {(4, 5), (4, 6), (4, 7), (5, 6), (6, 7), (7, 5)}
    arcs |= {(2, 4), (5, 1), (4, 0)}
    arcs |= {(5, 0), (6, 0), (7, 0), (4, 1), (6, 1), (7, 1), (5, 2), (6, 2), (7, 2)}
    t = _figure_tournament(arcs, 8)
    seq = [7, 6, 5, 1, 2, 3, 4, 0]
    return t, seq


def figure_t1_eq_4():
    """|T1| = 4 figure (T1 complement of T2); copy v3 v v2 v1 v4 v6 v7 v8 v5."""
    arcs = {(2, 0), (0, 3), (3, 2), (0, 1), (2, 1), (3, 1)}
    arcs |= {(u, 4) for u in (0, 1, 2, 3)}
    arcs |= {(4, v) for v in (5, 6, 7, 8)}
    arcs |= {(5, 6), (5, 7), (5, 8), (6, 7), (7, 8), (8, 6)}
    arcs |= {(0, 5), (7, 3), (1, 6), (1, 7), (1, 8), (5, 1), (3, 6)}
    arcs |= {(6, 0), (7, 0), (8, 0), (5, 2), (6, 2), (7, 2), (8, 2), (5, 3), (8, 3)}
    t = _figure_tournament(arcs, 9)
    seq = [2, 4, 1, 0, 3, 6, 7, 8, 5]
    return t, seq


class TestInductiveStep:
    @pytest.mark.parametrize(
        "fig", [figure_t1_eq_3_first, figure_t1_eq_3_second, figure_t1_eq_4]
    )
    def test_figures_validate_and_embed(self, fig):
        t, seq = fig()
        dirs = tuple(t.arc(seq[k], seq[k + 1]) for k in range(t.n - 1))
        p = PathPattern(dirs)
        assert validate(t, p, seq)
        out = embed(t, p)
        assert out.is_embedding
        assert validate(t, p, list(out.result.seq))

    def test_preconditions(self):
        rng = random.Random(1)
        t = rand_tournament(6, rng)
        with pytest.raises(EmbedError):
            inductive_step(t, P("FFFBB"))  # n <= threshold

    def test_normalized_instances(self):
        rng = random.Random(10)
        done = 0
        while done < 120:
            n = rng.randrange(9, 16)
            t = rand_tournament(n, rng)
            i = t.min_in_degree()
            if i < 1:
                continue
            dirs = [rng.random() < 0.5 for _ in range(n - 1)]
            dirs[i - 1] = True
            p = PathPattern(tuple(dirs))
            if p.is_directed:
                continue
            out = inductive_step(t, p)
            assert out.is_embedding and validate(t, p, list(out.result.seq))
            done += 1

    def test_trace_nonempty_with_case_tags(self):
        rng = random.Random(11)
        tags = set()
        for _ in range(100):
            n = rng.randrange(9, 14)
            t = rand_tournament(n, rng)
            i = t.min_in_degree()
            if i < 1:
                continue
            dirs = [rng.random() < 0.5 for _ in range(n - 1)]
            dirs[i - 1] = True
            p = PathPattern(tuple(dirs))
            if p.is_directed:
                continue
            out = inductive_step(t, p)
            assert out.method
            tags.update(out.method)
        assert any(tag.startswith("case2") for tag in tags)


class TestEmbed:
    def test_cyclic_antidirected_reports_exception(self):
        out = embed(cyclic_triangle(), P("FB"))
        assert not out.is_embedding
        rep = out.result
        assert isinstance(rep, ExceptionReport) and rep.kind == "T3" and rep.antidirected

    def test_rotational5_directed(self):
        arcs = {(i, (i + k) % 5) for i in range(5) for k in (1, 2)}
        t = Tournament.build(5, arcs)
        out = embed(t, P("FFFF"))
        assert out.is_embedding and validate(t, P("FFFF"), list(out.result.seq))

    def test_flipped_rotational5_antidirected(self):
        t = rotational5_with_flip()
        p = P("FBFB")
        out = embed(t, p)
        assert out.is_embedding
        assert validate(t, p, list(out.result.seq))
        assert oracle_embed(t, p) is not None  # independent confirmation

    def test_t4_plus_fbb_starts_at_source(self):
        out = embed(t4_plus(), P("FBB"))
        assert out.is_embedding and out.result.seq[0] == 0

    def test_exception_completeness_n357(self):
        for t, kind in ((cyclic_triangle(), "T3"), (regular_5(), "T5"), (paley_7(), "T7")):
            n = t.n
            for pb in range(1 << (n - 1)):
                p = PathPattern(tuple(bool((pb >> k) & 1) for k in range(n - 1)))
                out = embed(t, p)
                if p.is_antidirected:
                    assert not out.is_embedding and out.result.kind == kind
                else:
                    assert out.is_embedding

    def test_size_mismatch(self):
        with pytest.raises(EmbedError):
            embed(cyclic_triangle(), P("F"))

    def test_determinism(self):
        rng = random.Random(14)
        for _ in range(60):
            n = rng.randrange(3, 20)
            t = rand_tournament(n, rng)
            p = PathPattern(tuple(rng.random() < 0.5 for _ in range(n - 1)))
            a = embed(t, p)
            b = embed(t, p)
            if a.is_embedding:
                assert a.result.seq == b.result.seq
            else:
                assert a.result == b.result

    def test_variant_trace_and_undo_coherence(self):
        rng = random.Random(15)
        for _ in range(200):
            n = rng.randrange(9, 18)
            t = rand_tournament(n, rng)
            p = PathPattern(tuple(rng.random() < 0.5 for _ in range(n - 1)))
            if p.is_directed:
                continue
            out = embed(t, p)
            assert out.is_embedding and validate(t, p, list(out.result.seq))
            if out.stats.get("variant_qualified"):
                assert any(m.startswith("variant:") for m in out.method)

    def test_degenerate_sizes(self):
        t1 = Tournament(1, (0,))
        assert embed(t1, PathPattern(())).result.seq == (0,)
        t2 = Tournament.build(2, {(1, 0)})
        assert embed(t2, P("F")).result.seq == (1, 0)
        assert embed(t2, P("B")).result.seq == (0, 1)

    def test_both_exceptional_sides_random(self):
        # delta-split shapes with T1 and T2 both exceptional; patterns chosen
        # antidirected so the Case 1 ladder has to work for its living
        rng = random.Random(16)
        reps = {3: cyclic_triangle(), 5: regular_5(), 7: paley_7()}
        for i_sz in (3, 5):
            for o_sz in (3, 5, 7):
                for trial in range(20):
                    n = i_sz + 1 + o_sz
                    arcs = set()
                    t1 = reps[i_sz]
                    t2 = reps[o_sz]
                    for a in range(i_sz):
                        for b in range(i_sz):
                            if t1.arc(a, b):
                                arcs.add((a, b))
                    v = i_sz
                    arcs.update((a, v) for a in range(i_sz))
                    arcs.update((v, i_sz + 1 + b) for b in range(o_sz))
                    for a in range(o_sz):
                        for b in range(o_sz):
                            if t2.arc(a, b):
                                arcs.add((i_sz + 1 + a, i_sz + 1 + b))
                    for a in range(i_sz):
                        for b in range(o_sz):
                            if rng.random() < 0.5:
                                arcs.add((a, i_sz + 1 + b))
                            else:
                                arcs.add((i_sz + 1 + b, a))
                    t = Tournament.build(n, arcs)
                    p = PathPattern(tuple(k % 2 == 0 for k in range(n - 1)))
                    out = embed(t, p)
                    assert out.is_embedding, (t.to_code(), p.signs())
                    assert validate(t, p, list(out.result.seq))
