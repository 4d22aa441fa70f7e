"""Embedding any pattern into any tournament, and the three exceptions.

Run:  python demos/03_embedding_and_exceptions.py
"""

from tourpath import (
    OriginConstraint,
    PathPattern,
    Tournament,
    count_embeddings,
    cyclic_triangle,
    embed,
    gen_random,
    oracle_embed,
    paley_7,
    regular_5,
    simple_lemma_embed,
    t4_plus,
    validate,
)

# -- the theorem in one call ---------------------------------------------------
# embed() returns a witness sequence, or a certificate that the instance is
# one of the three exceptional (tournament, antidirected pattern) pairs.

t = gen_random(20, seed=7, model="uniform")
p = PathPattern.parse("+--+-++--+-++-+--+-")
out = embed(t, p)
print("witness:", out.result.seq)
print("proof trace:", out.method[:6], "...")
assert validate(t, p, list(out.result.seq))

# -- the exceptional pairs -----------------------------------------------------
# The cyclic triangle, the regular 5-tournament and the Paley 7-tournament
# miss exactly their antidirected Hamiltonian paths, and nothing else does.

for host, anti in ((cyclic_triangle(), "+-"), (regular_5(), "+-+-"), (paley_7(), "+-+-+-")):
    rep = embed(host, PathPattern.parse(anti)).result
    print(f"{host.to_code()}: exception {rep.kind}, count =",
          count_embeddings(host, PathPattern.parse(anti)))

# Everything non-antidirected embeds even there:
out = embed(paley_7(), PathPattern.parse("P+(2,1,1,1,1)"))
print("Paley-7 with a 2-block pattern:", out.result.seq)

# -- the exact oracle ----------------------------------------------------------
# Backtracking ground truth, with origin constraints; every copy of P+(1,2)
# in the source-plus-triangle tournament starts at the source.

t4 = t4_plus()
print("T4+ copies of P+(1,2):", count_embeddings(t4, PathPattern.parse("P+(1,2)")))
blocked = oracle_embed(t4, PathPattern.parse("P+(1,2)"),
                       OriginConstraint(forbidden_origins=frozenset({0})))
print("copy avoiding the source:", blocked)  # None

# -- source insertion (the workhorse construction) ------------------------------
# With a source vertex v and a non-directed pattern, a copy always exists
# with origin away from v; over an exceptional remainder any origin works.

e = simple_lemma_embed(t4, 0, PathPattern.parse("-++"))
print("source insertion on T4+:", e.seq)
for origin in (1, 2, 3):
    e = simple_lemma_embed(t4, 0, PathPattern.parse("-+-"), requested_origin=origin)
    assert e.seq[0] == origin
print("any requested origin over the triangle works")
