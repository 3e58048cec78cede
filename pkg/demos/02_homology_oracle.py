"""
Checking relations on homology
==============================

Each twist acts on H_1 of the surface by a transvection, so every relation
of the presentation must hold between integer matrices.  This is a cheap,
exact test of the transcribed curve data, but it only sees so much: a twist
about a boundary curve acts as the identity.
"""
import numpy as np

from mcg_presentation import (
    Equation, build_configuration, check_equation, check_presentation, evaluate, lantern_relation,
    make_signature, parse_word, transvection,
)
from mcg_presentation.surface import boundary_curve

sig = make_signature(3, 1)
cfg = build_configuration(sig)
rep = check_presentation(cfg)
print(rep.summary())

# a1 and b meet once, so their transvections braid
Ta, Tb = transvection(cfg, parse_word("a1")[0].gen), transvection(cfg, parse_word("b")[0].gen)
print("braid holds:", np.array_equal(Ta @ Tb @ Ta, Tb @ Ta @ Tb))
print("but a1 = b fails:", check_equation(cfg, Equation(parse_word("a1"), parse_word("b"))))

# the lantern relation is derived, not assumed; homology agrees with it
print(lantern_relation(sig, 1, 2, 4))
print("lantern holds:", check_equation(cfg, lantern_relation(sig, 1, 2, 4)))

# the blind spot: a boundary twist is invisible
d = boundary_curve(make_signature(2, 2), 1)
cfg22 = build_configuration(make_signature(2, 2))
print(f"twist about {d} is the identity on H_1:",
      np.array_equal(evaluate(cfg22, parse_word(d.name)), np.eye(cfg22.signature.rank, dtype=int)))

# a corrupted homology class is caught at once
bad = cfg.with_homology(parse_word("a2")[0].gen, np.zeros(sig.rank, dtype=np.int64))
print("corrupted a2:", check_presentation(bad).summary())
