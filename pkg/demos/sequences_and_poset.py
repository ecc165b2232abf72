"""Degenerations from short exact sequences, and the resulting poset.

Over R = k[x,y]/(x^2) take alpha = (x), so Im alpha = Ker alpha, and let y
play the role of the regular element.  For i >= j the sequence built from
y^i takes (x, y^j) to (x, y^(2i-j)).
"""
from degenlab import Matrix, build_poset, corollary45_family, dim1_ring, verify_exactness
from degenlab.catalog import identify_dim1_ideal
from degenlab.degeneration import sequence_nilpotency

R = dim1_ring()
P = R.base
x, y = P.gens()
alpha = Matrix(P, [[x]])

for i in range(1, 4):
    for j in range(0, i + 1):
        res = corollary45_family(R, alpha, y, i, j)
        src, tgt = identify_dim1_ideal(res.M), identify_dim1_ideal(res.N)
        ok = verify_exactness(res.sequence).ok
        nil = sequence_nilpotency(res.sequence)
        print(f"i={i} j={j}: {src.label:8} -> {tgt.label:8} exact={ok} nilpotent index={nil[1]}")

# %% the order these produce, with every edge backed by a verified family
g = build_poset(1, 6)
print(g.to_dot())
