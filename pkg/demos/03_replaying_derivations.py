"""
Replaying a derivation
======================

Derivations are small text scripts.  Each step is a free cancellation or
insertion, one application of a relation or proven lemma, or a "=" line
that the checker bridges with braid and commutation moves.  Here is the
first identity of the star lemma, a_i X2 = X2 a_j with X2 = b a_i a_j b,
done by hand for i=1, j=2.
"""
from mcg_presentation import make_signature, presentation
from mcg_presentation.rewrite import shipped_scripts
from mcg_presentation.rewrite.dsl import format_script, parse_script
from mcg_presentation.rewrite.engine import Library, check_script, splice, verify_library

SCRIPT = """
script star.i
let X2 = b a1 a2 b
claim a1 X2 = X2 a2
  = b a1 b a2 b
  = b a1 a2 b a2
end
"""

sig = make_signature(2, 0)
lib = Library(presentation(sig))
res = check_script(lib, parse_script(SCRIPT))
print("checked:", res.ok)

# the "=" lines were filled in with explicit moves; splice them back in
print(format_script(splice(parse_script(SCRIPT), res)))

# a wrong claim fails with a positioned diagnostic
bad = check_script(lib, parse_script(SCRIPT.replace("= X2 a2", "= X2 a1").replace("  = b a1 a2 b a2\n", "")))
print("wrong claim:", bad.error)

# the shipped library: star lemma, lanterns, the a_k lemma, the Wajnryb
# equalities and the kernel cases
sig = make_signature(3, 1)
lib = Library(presentation(sig))
scripts = shipped_scripts(sig)
ok = sum(check_script(lib, s).ok for s in scripts)
print(f"shipped at {sig}: {ok}/{len(scripts)} scripts check")
print(verify_library(lib.config, lib).summary())
print(lib.lookup("lemma.ak[1,3]"))
