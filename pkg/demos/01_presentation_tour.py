"""
A first look at the twist presentation
======================================

Build the presentation of M_{2,1}, count its pieces, print a few relations
and hand it to a computer algebra system.  Ends with the abelianization,
which for genus two is the familiar Z/10.
"""
from mcg_presentation import (
    RelationKind, abelian_invariants, enumerate_good_triples, export, make_signature, presentation,
)

sig = make_signature(2, 1)
print(f"signature {sig}: N = 2g+n-2 = {sig.N} legs")

pres = presentation(sig)
print("generators:", " ".join(c.name for c in pres.generators))
for kind in (RelationKind.HANDLE, RelationKind.BRAID, RelationKind.STAR):
    print(f"  {kind.value:8s} relations: {len(pres.by_kind(kind))}")

# every star relation comes from a good triple of leg indices
print("good triples:", len(enumerate_good_triples(sig)))
print(pres.relation("E_{1,1,2}"))
print(pres.relation("A_1"))

# the handle relation just identifies two generators, so it can be eliminated
slim = presentation(sig, include_handles=False)
print(f"without handles: {len(slim.generators)} generators, {len(slim.relations)} relations")

# GAP and Magma read these directly
print(export(presentation(make_signature(1, 1)), "gap-style"))

for gn in [(1, 1), (2, 0), (2, 1), (3, 0)]:
    print(gn, abelian_invariants(presentation(make_signature(*gn))))
