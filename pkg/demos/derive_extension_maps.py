"""Find maps for 0 -> q -> p + r -> q -> 0 over k[x,y,z]/(x^3 + y^2 + z^2).

p = (x, y), q = (x, y^2), r = (x, y^3).  The maps are not written down in
any source we could check, so we search: every entry of the inclusion
q -> p + r (a 2x1 matrix) and of the projection p + r -> q (a 1x2 matrix) is
0 or a signed monomial of degree <= 1.  A pair survives if the composite is
zero, both maps land in the right submodules, and the sequence is exact.

Run from the repository root:

    python demos/derive_extension_maps.py            # prints the maps
    python demos/derive_extension_maps.py --write    # refreshes the test data
"""
import json
import sys
from pathlib import Path

from degenlab import Matrix, PolyRing, QuotientRing, Submodule, extension_degeneration
from degenlab.degeneration import search_extension_maps

B = PolyRing(("x", "y", "z"))
R = QuotientRing(B, "x^3 + y^2 + z^2")
x, y, z = B.gens()
zero = B.zero

p = [(x,), (y,)]
q = Submodule(R, 1, [(x,), (y ** 2,)])
r = [(x,), (y ** 3,)]
# p + r inside R^2
pr = Submodule(R, 2, [(g[0], zero) for g in p] + [(zero, g[0]) for g in r])

incl, proj = search_extension_maps(R, q, pr, q, degree=1)[0]
rec = extension_degeneration(R, q, pr, q, incl, proj, ("q", "p+r", "q"))
print("inclusion  q -> p+r :", incl.to_strings())
print("projection p+r -> q :", proj.to_strings())
print("exact:", rec.exact, "| records", rec.source, "degenerates to", rec.target)

if "--write" in sys.argv:
    data = {
        "ring": R.descriptor(),
        "p": [[str(a) for a in g] for g in p],
        "q": [[str(a) for a in g] for g in q.gens],
        "r": [[str(a) for a in g] for g in r],
        "inclusion": incl.to_json(),
        "projection": proj.to_json(),
        "search": "entries in {0} and signed monomials of degree <= 1; first exact pair",
    }
    out = Path(__file__).resolve().parent.parent / "tests" / "data" / "extension_maps.json"
    out.write_text(json.dumps(data, sort_keys=True, indent=2) + "\n")
    print("wrote", out)
