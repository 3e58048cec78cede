"""Command-line front end: gen, verify, abel, replay, map, export.

    mcg gen 2 1 --format gap-style
    mcg verify 3 1
    mcg abel 2 0
    mcg replay 3 1 [--scripts DIR]
    mcg map 2 2 --word "c1_4 a1 a4'"
    mcg export 2 1 --format json --out g21.json

Exit status: 0 on success, 1 when a check fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .abelian import abelian_invariants
from .homology import Report, check_presentation, check_relations
from .presentation import FORMATS, UnsupportedFormat, export, lantern_relations, presentation, star_lemma_identities
from .surface import DegenerateSignature, build_configuration, make_signature, validate_configuration
from .words import parse_word


class UsageError(Exception):
    pass


def _sig(args):
    return make_signature(args.g, args.n)


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _report_text(rep: Report, fmt: str) -> str:
    if fmt == "json":
        return rep.to_json()
    lines = [rep.summary()]
    for name in rep.failures:
        lines.append(f"  FAIL {name}" + (f": {rep.details[name]}" if name in rep.details else ""))
    return "\n".join(lines)


# ------------------------------------------------------------ commands

def cmd_gen(args) -> int:
    pres = presentation(_sig(args), include_handles=not args.no_handles)
    _emit(export(pres, args.format), args.out)
    return 0


def cmd_export(args) -> int:
    if not args.out:
        raise UsageError("export needs --out FILE")
    return cmd_gen(args)


def cmd_verify(args) -> int:
    sig = _sig(args)
    config = build_configuration(sig)
    val = validate_configuration(config, check_relations=False)
    rep = Report(f"verify {sig}")
    rep.results["configuration"] = val.ok
    if not val.ok:
        rep.details["configuration"] = "; ".join(val.violations[:5])
    rep.merge(check_presentation(config, include_handles=not args.no_handles))
    rep.merge(check_relations(config, lantern_relations(sig), "lanterns"))
    rep.merge(check_relations(config, star_lemma_identities(sig), "star lemma"))
    _emit(_report_text(rep, args.format), args.out)
    return 0 if rep.ok else 1


def cmd_abel(args) -> int:
    inv = abelian_invariants(presentation(_sig(args), include_handles=not args.no_handles))
    text = json.dumps(inv.to_dict()) if args.format == "json" else str(inv)
    _emit(text, args.out)
    return 0


def cmd_replay(args) -> int:
    from .rewrite.dsl import parse_scripts
    from .rewrite.engine import Library, run_scripts, verify_library
    from .rewrite.library import shipped_scripts

    sig = _sig(args)
    pres = presentation(sig)
    if args.scripts:
        scripts = []
        d = Path(args.scripts)
        files = sorted(d.glob("*.mcg")) if d.is_dir() else [d]
        if not files:
            raise UsageError(f"no .mcg files in {d}")
        for f in files:
            scripts += parse_scripts(f.read_text())
    else:
        scripts = shipped_scripts(sig)
    lib = Library(pres)
    results = run_scripts(lib, scripts)
    rep = Report(f"replay {sig}")
    for r in results:
        rep.results[f"script:{r.script}"] = r.ok
        if not r.ok:
            rep.details[f"script:{r.script}"] = str(r.error).splitlines()[0]
    rep.merge(verify_library(lib.config, lib))
    _emit(_report_text(rep, args.format), args.out)
    return 0 if rep.ok else 1


def cmd_map(args) -> int:
    from .morphisms import apply_gen_map, g2_generator_map, verify_gen_map

    m = g2_generator_map(_sig(args))
    if args.verify:
        rep = verify_gen_map(m)
        _emit(_report_text(rep, args.format), args.out)
        return 0 if rep.ok else 1
    if args.word is None:
        text = m.to_json() if args.format == "json" else "\n".join(
            f"{x.name} -> {w if len(w) else '1'}" for x, w in sorted(m.table.items(), key=lambda kv: kv[0].sort_key))
        _emit(text, args.out)
        return 0
    src = args.word
    if src.startswith("@"):
        src = Path(src[1:]).read_text()
    w = parse_word(" ".join(src.split()))
    gens = set(m.table)
    unknown = sorted({l.gen.name for l in w if l.gen not in gens})
    if unknown:
        raise UsageError(f"not generators of {m.source}: {', '.join(unknown)}")
    img = apply_gen_map(m, w)
    if args.format == "json":
        _emit(json.dumps({"source": str(w), "image": str(img) if len(img) else "1"}), args.out)
    else:
        _emit(str(img) if len(img) else "1", args.out)
    return 0


# -------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcg", description="Twist presentations of mapping class groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats):
        sp.add_argument("g", type=int)
        sp.add_argument("n", type=int)
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--out", metavar="FILE")
        return sp

    sp = common(sub.add_parser("gen", help="print the presentation"), list(FORMATS))
    sp.add_argument("--no-handles", action="store_true", help="eliminate the handle relations")
    sp.set_defaults(func=cmd_gen)

    sp = common(sub.add_parser("export", help="write the presentation to --out"), ["json"] + [f for f in FORMATS if f != "json"])
    sp.add_argument("--no-handles", action="store_true")
    sp.set_defaults(func=cmd_export)

    sp = common(sub.add_parser("verify", help="homology checks of relations, lanterns, star lemma"), ["plain", "json"])
    sp.add_argument("--no-handles", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("abel", help="abelianization"), ["plain", "json"])
    sp.add_argument("--no-handles", action="store_true")
    sp.set_defaults(func=cmd_abel)

    sp = common(sub.add_parser("replay", help="check derivation scripts"), ["plain", "json"])
    sp.add_argument("--scripts", metavar="DIR", help="directory of .mcg files (default: shipped set)")
    sp.set_defaults(func=cmd_replay)

    sp = common(sub.add_parser("map", help="apply g2 to a word"), ["plain", "json"])
    sp.add_argument("--word", help="word, or @FILE to read it from a file")
    sp.add_argument("--verify", action="store_true", help="check relation images and the homology square")
    sp.set_defaults(func=cmd_map)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    from .morphisms import DegenerateTarget
    from .rewrite.engine import ScriptSyntaxError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (DegenerateSignature, DegenerateTarget) as e:
        print(f"error: degenerate signature: {e}", file=sys.stderr)
    except (UnsupportedFormat, UsageError, ScriptSyntaxError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
    return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
