"""The dihedral group of order 8, end to end.

Sections -> maximal classes -> maximal spans -> glued skeleton; finishes with
the component count, dimension and p-rank.

Run:  python3 demos/dihedral_walkthrough.py
"""

from permspec import components, dihedral, dimension, glue, p_rank
from permspec.sections import SectionCategory

G = dihedral(8)
cat = SectionCategory(G, 2)


def shape(x):
    return f"(|H|={x.H.order}, |K|={x.K.order}, rank {x.rank()})"


print(f"{len(cat.objects())} elementary abelian 2-sections of D8")
reps = cat.maxel()
print(f"{len(reps)} maximal classes:")
for x in reps:
    names = ",".join(G.name_of(e) for e in x.H.elements)
    print(f"  {shape(x)}  H = {{{names}}}")

rels = cat.maximal_relations()
print(f"\n{len(rels)} maximal spans:")
for r in rels:
    print(f"  {shape(r.f1.target)} <- {shape(r.apex)} -> {shape(r.f2.target)}")

print("\n== glued skeleton ==")
g = glue(G, 2)
print(f"{len(g.points)} points, {len(g.very_closed())} very closed")
print("identified across/within platforms:")
for c, prov in sorted(g.provenance.items()):
    if len(prov) > 1:
        print(f"  {' ~ '.join(f'platform{ci}:{lbl}' for ci, lbl in prov)}")

print()
print(f"components: {len(components(G, 2))}")
print(f"dimension:  {dimension(G, 2)}")
print(f"p-rank:     {p_rank(G, 2)}")
