import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tourpath.tournament import (
    Tournament,
    TournamentError,
    directed_path_ending_at,
    hamiltonian_circuit,
    hamiltonian_directed_path,
    strong_decomposition,
)


def rand_tournament(n, rng):
    arcs = set()
    for u in range(n):
        for v in range(u + 1, n):
            arcs.add((u, v) if rng.random() < 0.5 else (v, u))
    return Tournament.build(n, arcs)


CYCLIC = Tournament.build(3, {(0, 1), (1, 2), (2, 0)})
TRANSITIVE3 = Tournament.build(3, {(0, 1), (0, 2), (1, 2)})


def tournaments_strategy(max_n=10):
    def build(data):
        n, bits = data
        return Tournament.from_upper_bits(n, bits)

    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(st.just(n), st.integers(0, (1 << (n * (n - 1) // 2)) - 1))
    ).map(build)


class TestBuild:
    def test_cyclic_triangle(self):
        assert CYCLIC.arc(0, 1) and CYCLIC.arc(1, 2) and CYCLIC.arc(2, 0)
        assert not CYCLIC.arc(1, 0)

    def test_transitive_triple(self):
        assert TRANSITIVE3.arc(0, 1) and TRANSITIVE3.arc(0, 2) and TRANSITIVE3.arc(1, 2)

    def test_both_orientations_rejected(self):
        with pytest.raises(TournamentError, match=r"\(0, ?1\)|pair"):
            Tournament.build(2, {(0, 1), (1, 0)})

    def test_loop_rejected(self):
        with pytest.raises(TournamentError, match="loop"):
            Tournament.build(2, {(0, 0), (0, 1)})

    def test_missing_pair_rejected(self):
        with pytest.raises(TournamentError, match="missing"):
            Tournament.build(3, {(0, 1), (1, 2)})

    def test_out_of_range_rejected(self):
        with pytest.raises(TournamentError, match="range"):
            Tournament.build(2, {(0, 3), (0, 1)})

    def test_degree_identity(self):
        rng = random.Random(5)
        for n in (1, 2, 5, 9):
            t = rand_tournament(n, rng)
            assert sum(t.out_degree(u) for u in range(n)) == n * (n - 1) // 2
            for u in range(n):
                assert t.out_degree(u) + t.in_degree(u) == n - 1


class TestComplement:
    def test_cyclic_reverses(self):
        c = CYCLIC.complement()
        assert c.arc(1, 0) and c.arc(2, 1) and c.arc(0, 2)

    @given(tournaments_strategy())
    @settings(max_examples=120)
    def test_involution(self, t):
        assert t.complement().complement() == t

    @given(tournaments_strategy())
    @settings(max_examples=60)
    def test_degrees_swap(self, t):
        c = t.complement()
        for u in range(t.n):
            assert c.out_degree(u) == t.in_degree(u)

    def test_min_in_at_most_max_out(self):
        # delta_minus(T) <= Delta_plus(T), noted in passing and used implicitly
        rng = random.Random(11)
        for _ in range(200):
            t = rand_tournament(rng.randrange(2, 10), rng)
            assert t.min_in_degree() <= t.max_out_degree()


class TestInduced:
    def test_pair_from_transitive4(self):
        t = Tournament.build(4, {(u, v) for u in range(4) for v in range(u + 1, 4)})
        sub, relabel = t.induced({1, 3})
        assert sub.n == 2 and relabel == (1, 3)
        assert sub.arc(0, 1)

    def test_full_set_is_identity(self):
        rng = random.Random(2)
        t = rand_tournament(6, rng)
        sub, relabel = t.induced(range(6))
        assert sub == t and relabel == tuple(range(6))

    def test_paley_congruence_preserved(self):
        from tourpath.canon import paley_7

        t = paley_7()
        sub, relabel = t.induced({0, 1, 2, 3, 4})
        for a in range(5):
            for b in range(5):
                if a != b:
                    want = (relabel[b] - relabel[a]) % 7 in (1, 2, 4)
                    assert sub.arc(a, b) == want

    def test_empty_rejected(self):
        with pytest.raises(TournamentError):
            CYCLIC.induced(set())


class TestEncodings:
    def test_cyclic_compact_code(self):
        assert CYCLIC.to_code() == "T:3:5"
        assert Tournament.from_code("T:3:5") == CYCLIC

    @given(tournaments_strategy())
    @settings(max_examples=120)
    def test_code_round_trip(self, t):
        assert Tournament.from_code(t.to_code()) == t

    @given(tournaments_strategy())
    @settings(max_examples=120)
    def test_text_round_trip(self, t):
        assert Tournament.from_text(t.to_text()) == t

    def test_bad_codes(self):
        for bad in ("T:3", "X:3:5", "T:3:zz", "T:0:0", "T:3:ff"):
            with pytest.raises(TournamentError):
                Tournament.from_code(bad)

    def test_bad_text(self):
        with pytest.raises(TournamentError):
            Tournament.from_text("2\n01\n01\n")  # both claim 0->1? row1 says 1->0 missing
        with pytest.raises(TournamentError):
            Tournament.from_text("3\n010\n001\n")


class TestHamiltonianPath:
    def test_cyclic(self):
        p = hamiltonian_directed_path(CYCLIC)
        assert all(CYCLIC.arc(p[k], p[k + 1]) for k in range(2))

    def test_transitive_gives_sorted(self):
        t = Tournament.build(5, {(u, v) for u in range(5) for v in range(u + 1, 5)})
        assert hamiltonian_directed_path(t) == [0, 1, 2, 3, 4]

    @given(tournaments_strategy())
    @settings(max_examples=150)
    def test_always_valid(self, t):
        p = hamiltonian_directed_path(t)
        assert sorted(p) == list(range(t.n))
        assert all(t.arc(p[k], p[k + 1]) for k in range(t.n - 1))

    def test_large_random(self):
        from tourpath.generate import gen_random

        t = gen_random(2000, 7, "uniform")
        p = hamiltonian_directed_path(t)
        assert sorted(p) == list(range(2000))
        assert all(t.arc(p[k], p[k + 1]) for k in range(1999))


class TestStrongDecomposition:
    def test_transitive(self):
        dec = strong_decomposition(TRANSITIVE3)
        assert dec.components == ((0,), (1,), (2,))

    def test_cyclic_is_strong(self):
        dec = strong_decomposition(CYCLIC)
        assert dec.components == ((0, 1, 2),) and dec.is_strong

    def test_t4_plus(self):
        from tourpath.canon import t4_plus

        dec = strong_decomposition(t4_plus())
        assert dec.components == ((0,), (1, 2, 3))

    def test_soundness_exhaustive_small(self):
        for n in range(2, 7):
            for bits in range(1 << (n * (n - 1) // 2)):
                t = Tournament.from_upper_bits(n, bits)
                dec = strong_decomposition(t)
                seen = [v for comp in dec.components for v in comp]
                assert sorted(seen) == list(range(n))
                for i, ci in enumerate(dec.components):
                    for cj in dec.components[i + 1 :]:
                        for a in ci:
                            for b in cj:
                                assert t.arc(a, b)
                    # each component strong: it has a Hamiltonian circuit
                    if len(ci) >= 3:
                        sub, rel = t.induced(ci)
                        cyc = hamiltonian_circuit(sub)
                        assert all(
                            sub.arc(cyc[k], cyc[(k + 1) % len(cyc)]) for k in range(len(cyc))
                        )
                    assert len(ci) != 2  # no strong 2-tournament


class TestHamiltonianCircuit:
    def test_cyclic(self):
        cyc = hamiltonian_circuit(CYCLIC)
        assert sorted(cyc) == [0, 1, 2]

    def test_paley_cycle(self):
        from tourpath.canon import paley_7

        t = paley_7()
        cyc = hamiltonian_circuit(t)
        assert all(t.arc(cyc[k], cyc[(k + 1) % 7]) for k in range(7))

    def test_transitive_rejected(self):
        t = Tournament.build(4, {(u, v) for u in range(4) for v in range(u + 1, 4)})
        with pytest.raises(TournamentError, match="not strong"):
            hamiltonian_circuit(t)

    def test_too_small(self):
        with pytest.raises(TournamentError):
            hamiltonian_circuit(Tournament.build(2, {(0, 1)}))

    def test_camion_exhaustive(self):
        # circuit exists iff strong, for every labelled tournament n <= 6
        for n in range(3, 7):
            for bits in range(1 << (n * (n - 1) // 2)):
                t = Tournament.from_upper_bits(n, bits)
                strong = strong_decomposition(t).is_strong
                if strong:
                    cyc = hamiltonian_circuit(t)
                    assert sorted(cyc) == list(range(n))
                    assert all(t.arc(cyc[k], cyc[(k + 1) % n]) for k in range(n))
                else:
                    with pytest.raises(TournamentError):
                        hamiltonian_circuit(t)


class TestDirectedPathEndingAt:
    def test_transitive(self):
        assert directed_path_ending_at(TRANSITIVE3, 1) == [0, 1]

    def test_cyclic_full(self):
        for x in range(3):
            p = directed_path_ending_at(CYCLIC, x)
            assert len(p) == 3 and p[-1] == x
            assert all(CYCLIC.arc(p[k], p[k + 1]) for k in range(2))

    def test_t4_plus_covers_all(self):
        from tourpath.canon import t4_plus

        t = t4_plus()
        for x in (1, 2, 3):
            p = directed_path_ending_at(t, x)
            assert sorted(p) == [0, 1, 2, 3] and p[-1] == x
            assert all(t.arc(p[k], p[k + 1]) for k in range(3))

    @given(tournaments_strategy(8))
    @settings(max_examples=100)
    def test_covers_prefix_components(self, t):
        dec = strong_decomposition(t)
        for x in range(t.n):
            p = directed_path_ending_at(t, x)
            i = dec.component_of(x)
            want = set()
            for comp in dec.components[: i + 1]:
                want.update(comp)
            assert set(p) == want and p[-1] == x
            assert all(t.arc(p[k], p[k + 1]) for k in range(len(p) - 1))
