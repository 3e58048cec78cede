"""Finite presentation of the mapping class group M_{g,n} by twist generators."""
from .surface import (
    Ai, B, Bi, Cij, CurveConfiguration, CurveId, DegenerateSignature, IntersectionClass,
    SurfaceSignature, build_configuration, configuration, cyclic_index, enumerate_generators,
    enumerate_good_triples, intersection_class, is_good_triple, make_signature, parse_curve,
    validate_configuration, wajnryb_subset,
)
from .words import Letter, Word, conjugate, parse_word, reduce
from .presentation import (
    BadTriple, Equation, Presentation, RelationKind, UnsupportedFormat, braid_relations, export,
    handle_relations, lantern_relation, lantern_relations, presentation, presentation_from_json,
    presentation_to_dict, star_lemma_identities, star_lemma_words, star_relations,
)
from .homology import Report, check_equation, check_presentation, check_relations, evaluate, transvection
from .abelian import AbelianInvariants, abelian_invariants, invariant_factors, relation_matrix, smith_normal_form
from .morphisms import (
    DegenerateTarget, GenMap, KernelFamily, apply_gen_map, collapse_matrix, g2_generator_map,
    kernel_generators, verify_gen_map, wajnryb_relators,
)

__version__ = "0.1.0"
