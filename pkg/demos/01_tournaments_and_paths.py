"""Tournaments and their classical path structure, step by step.

Run:  python demos/01_tournaments_and_paths.py
"""

import random

from tourpath import (
    Tournament,
    directed_path_ending_at,
    hamiltonian_circuit,
    hamiltonian_directed_path,
    strong_decomposition,
)

# -- building tournaments ----------------------------------------------------
# A tournament orients every pair of vertices exactly once.  The cyclic
# triangle is the smallest strong example.

t3 = Tournament.build(3, {(0, 1), (1, 2), (2, 0)})
print("cyclic triangle:", t3.to_code())
print(t3.to_text())

# The compact code round-trips; it encodes the upper triangle row by row.
assert Tournament.from_code(t3.to_code()) == t3

# -- every tournament has a directed Hamiltonian path ------------------------
# The insertion construction places each new vertex by bisection, so even
# large instances are immediate.

rng = random.Random(1)
arcs = set()
n = 12
for u in range(n):
    for v in range(u + 1, n):
        arcs.add((u, v) if rng.random() < 0.5 else (v, u))
t = Tournament.build(n, arcs)

path = hamiltonian_directed_path(t)
print("directed Hamiltonian path:", path)
assert all(t.arc(path[k], path[k + 1]) for k in range(n - 1))

# -- strong components come in a transitive chain -----------------------------
# All arcs between components point forward, so the decomposition is an
# ordered partition; a tournament is strong exactly when there is one part.

dec = strong_decomposition(t)
print("strong components, in order:", [list(c) for c in dec.components])

# Strong tournaments carry a Hamiltonian circuit (and only strong ones do).
strong_part = max(dec.components, key=len)
if len(strong_part) >= 3:
    sub, relabel = t.induced(strong_part)
    cyc = hamiltonian_circuit(sub)
    print("circuit inside the big component:", [relabel[v] for v in cyc])

# -- directed path ending at a chosen vertex ----------------------------------
# Useful consequence of the circuit: a directed path covering every component
# up to x's component, ending exactly at x.

x = n // 2
p = directed_path_ending_at(t, x)
print(f"directed path ending at {x}:", p)
assert p[-1] == x
