"""
Capping a boundary component
============================

g2 : G_{g,n} -> G_{g,n-1} glues a disc onto the last boundary.  We map
words, watch the kernel generators die, and verify relation images two
ways.  The second way matters: breaking the image of c_{1,N} goes unseen by
homology, since (a1 b a1)^4 is a boundary twist in the target, but the
derivation search notices.
"""
from mcg_presentation import (
    Cij, apply_gen_map, g2_generator_map, kernel_generators, make_signature, parse_word, verify_gen_map,
)
from mcg_presentation.words import EMPTY

sig = make_signature(2, 2)
g2 = g2_generator_map(sig)
print(f"g2: {g2.source} -> {g2.target}")
for name in ["a4", "c2_4", "c4_2", "c1_4", "c4_1"]:
    img = g2.table[parse_word(name)[0].gen]
    print(f"  {name:5s} -> {img if img else '1'}")

for k, x in enumerate(kernel_generators(sig).x):
    print(f"x{k} = {x}  ->  {apply_gen_map(g2, x) or '1'}")

rep = verify_gen_map(g2)
print(rep.summary())

broken = g2.with_image(Cij(1, 4), EMPTY)
rep = verify_gen_map(broken, words=20)
print("broken map:", rep.summary())
print("  oracle failures:", [k for k in rep.failures if k.startswith("oracle:")])
print("  derive failures:", [k for k in rep.failures if k.startswith("derive:")])
