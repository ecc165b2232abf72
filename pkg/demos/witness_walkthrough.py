"""A one-parameter family over k[x,y]/(x^2), checked three ways.

The family xi(t) = (t y^2, y^3; -t^2 y, -t y^2) squares to zero for every t.
At t = 0 it is the matrix of (x, y^3); at any t != 0 it is conjugate to the
matrix of (x, y).  So (x, y) degenerates to (x, y^3).
"""
from degenlab import (
    QQI, lift_witness_doublesharp, quotient_transfer, recognize_dim1,
    screen_necessary, thm31_witness, verify_witness,
)

w = thm31_witness(1, 3)
print("xi =", w.xi)
print("xi^2 == 0:", (w.xi @ w.xi).is_zero())

# %% fibers
for c in (0, 1, 2):
    rec = recognize_dim1(w.fiber(c))
    print(f"t = {c}:", [k.label for k in rec.classes])

# %% the full check, including the explicit conjugating matrices
rep = verify_witness(w)
print("verdict:", rep.verdict)
for chk in rep.checks:
    print("  ", chk["check"], "->", chk["detail"])

# %% necessary conditions: trace, determinant, minor ideals up to powers of t
scr = screen_necessary(w.xi, w.mu, "t")
print("screen:", scr.verdict, scr.minors)

# %% push the family up two dimensions and back down again
W = lift_witness_doublesharp(thm31_witness(1, 3, QQI))
print("lifted ring:", W.ring, "size", W.mu.nrows, verify_witness(W).verdict)
down = quotient_transfer(quotient_transfer(W, "v"), "u")
print("after u = v = 0:", down.mu, verify_witness(down).verdict)
