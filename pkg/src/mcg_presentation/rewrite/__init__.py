"""Word rewriting: derivation scripts, their checker and the shipped library."""
from .engine import (
    ApplyEquation, AutoBraid, BudgetExceeded, CheckResult, DerivationScript, FreeCancel, FreeInsert,
    Library, ScriptError, ScriptSyntaxError, StepMismatch, UnresolvedName, auto_braid_bridge,
    check_script, run_scripts, splice, verify_library,
)
from .dsl import format_script, format_scripts, parse_script, parse_script_word, parse_scripts
from .library import shipped_scripts, shipped_text
