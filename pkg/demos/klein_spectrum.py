"""Walk through the spectrum skeleton of the Klein four-group at p = 2.

Run:  python3 demos/klein_spectrum.py [--dot]
"""

import sys

from permspec import elementary_abelian, fold, skeleton
from permspec.twisted import present_Rloc

E = elementary_abelian(2, 2)

print("== local ring presentations ==")
for H, name in ((E.trivial_subgroup(), "trivial"), (E.full_subgroup(), "full")):
    spec = present_Rloc(E, H, 2)
    pres = spec.presentation
    print(f"stratum {name}: variables {', '.join(pres.varnames)}")
    for r in pres.relations:
        print(f"   relation: {pres.format(dict(r))} = 0")

print()
print("== skeleton at rational level ==")
skel = skeleton(E, 2)
print(f"{len(skel.points)} points, {len(skel.edges())} covering edges")
for i, pt in enumerate(skel.points):
    closure = sorted(skel.points[j].label for j in skel.closure(i) if j != i)
    tail = f" -> {', '.join(closure)}" if closure else ""
    print(f"  [{i:2d}] {pt.kind:15s} {pt.label}{tail}")

print()
print("== folding by the basis swap ==")
folded = fold(skel, [[0, 1], [1, 0]])
print(f"{len(skel.points)} points collapse to {len(folded.points)}:")
for c, prov in sorted(folded.provenance.items()):
    if len(prov) > 1:
        print(f"  {' ~ '.join(lbl for _, lbl in prov)}")

if "--dot" in sys.argv:
    print()
    print(skel.to_dot())
