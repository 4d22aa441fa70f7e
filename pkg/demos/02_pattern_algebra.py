"""The oriented path pattern algebra: signs, blocks, reversal, surgery.

Run:  python demos/02_pattern_algebra.py
"""

from tourpath import PathPattern

# A pattern is the sequence of arc directions along a path.  Two interchange
# forms exist: sign strings and block notation.

p = PathPattern.parse("P+(1,2)")
print("P+(1,2) as signs:", p.signs())  # +--
print("blocks:", p.blocks(), "classify:", p.classify())

assert PathPattern.parse("+--") == p
assert PathPattern.parse("FBB") == p  # F/B aliases accepted on input

# Directed means one block; antidirected means every block has length one.
for s in ("++++", "+-+-", "+--"):
    q = PathPattern.from_signs(s)
    print(f"{s:>6} -> {q.classify():>12} {q.block_form()}")

# -- reversal and complement ---------------------------------------------------
# Reading a path backwards reverses and flips the signs; the complement flips
# them in place.  Both are involutions and they commute.

print("reverse of P+(1,2):", p.reverse().block_form())  # P+(2,1)
print("complement of P+(1,2):", p.complement().block_form())  # P-(1,2)
assert p.reverse().reverse() == p
assert p.reverse().complement() == p.complement().reverse()

# -- sub-patterns and the delete-and-bridge surgery ----------------------------
# The source-insertion step removes a position with no entering arc and
# bridges its two neighbours; either bridge direction yields a legal shorter
# pattern, and for non-directed inputs one of them avoids antidirectedness.

q = PathPattern.from_signs("+-+-")
print("positions with no entering arc / no leaving arc:", q.sources_sinks())
print("subpattern 2..4:", q.subpattern(2, 4).signs())
print("delete position 3, bridge backward:", q.delete_bridge(3, False).signs())

p12 = PathPattern.parse("P+(1,2)")
fwd = p12.delete_bridge(2, True)
bwd = p12.delete_bridge(2, False)
print("P+(1,2) surgery at 2:", fwd.signs(), "(antidirected)", bwd.signs(), "(directed)")
