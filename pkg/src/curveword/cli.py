"""Command line front end: ``curveword <command> [options]``.

Exit status is 0 on success, 1 on domain errors (an error object is
printed under ``--json``) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
import warnings
from fractions import Fraction

from curveword import cyclic, invariants, moves, solver, surface, words
from curveword.errors import CurvewordError, Inconsistent, InvalidSite, Underdetermined

CONSTANTS_NOTE = (
    "empty-word constants (1/2, 1/2, -1/4) are fitted to the chain normalization; "
    "zero constants would violate it"
)


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


def _word_str(w) -> str:
    return words.format_word(w)


class Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, data, text: str | list[str]) -> None:
        if self.as_json:
            print(json.dumps(data, sort_keys=True))
        else:
            print(text if isinstance(text, str) else "\n".join(text))


# -- commands ---------------------------------------------------------------------------


def cmd_parse(a, out: Out):
    w = words.parse(a.word)
    letters = [
        {
            "name": words.letter_name(l.id, w.n),
            "sign": "+" if l.sign is words.Sign.PLUS else "-",
            "singular": l.singular,
        }
        for l in w.letters
    ]
    text = [f"word: {_word_str(w)}", f"length: {len(w)}"]
    text += [f"  {d['name']}: sign {d['sign']}{' singular' if d['singular'] else ''}" for d in letters]
    out.emit({"word": _word_str(w), "length": len(w), "letters": letters}, text)


def cmd_canon(a, out: Out):
    c = words.canonicalize(words.parse(a.word))
    out.emit({"word": a.word, "canonical": str(c)}, str(c))


def cmd_cyclic(a, out: Out):
    w = words.parse(a.word)
    cc = cyclic.cyclic_canonical(w)
    orb = [_word_str(u) for u in cyclic.orbit(w)]
    out.emit(
        {"word": _word_str(w), "cyclic_class": str(cc), "orbit": orb},
        [f"class: {cc}"] + [f"  shift^{k}: {u}" for k, u in enumerate(orb)],
    )


def cmd_subwords(a, out: Out):
    w = words.parse(a.word)
    rows = []
    sizes = range(w.n + 1) if a.size is None else [a.size]
    for k in sizes:
        for sub in itertools.combinations(w.ids, k):
            names = [words.letter_name(i, w.n) for i in sub]
            rows.append({"letters": names, "subword": str(words.canonicalize(words.subword(w, sub)))})
    out.emit(
        {"word": _word_str(w), "count": len(rows), "subwords": rows},
        [f"{{{','.join(r['letters'])}}}: {r['subword'] or 'phi'}" for r in rows],
    )


def cmd_enumerate(a, out: Out):
    cls = words.enumerate_words(a.n, signed=not a.unsigned, limit=a.limit)
    strs = [str(c) for c in cls]
    out.emit({"n": a.n, "count": len(strs), "classes": strs}, strs or ["phi"])


def cmd_genus(a, out: Out):
    rep = surface.surface_report(words.parse(a.word))
    text = f"genus {rep['genus']}, faces {rep['faces']}, {'spherical' if rep['spherical'] else 'not spherical'}"
    out.emit(rep, text)


def cmd_features(a, out: Out):
    fv = invariants.feature_vector(words.parse(a.word), a.degree)
    data = fv.to_json()
    out.emit({"word": a.word, "degree": a.degree, "features": data}, [f"{k}: {v}" for k, v in data.items()])


def cmd_eval(a, out: Out):
    with open(a.table) as fh:
        table = invariants.SymbolTable.from_json(json.load(fh), strict=a.strict)
    val = invariants.evaluate(table, words.parse(a.word))
    out.emit({"word": a.word, "value": _frac(val)}, _frac(val))


def cmd_arnold(a, out: Out):
    w = words.parse(a.word)
    sph = surface.is_spherical(w)
    jp, jm, st = invariants.arnold_invariants(w, strict=not a.lenient)
    feats = invariants.feature_vector(w, 2).to_json()
    consts = [_frac(p[3]) for p in invariants.ARNOLD_PARAMETERS.values()]
    data = {
        "word": _word_str(w),
        "spherical": sph,
        "Jplus_s": _frac(jp),
        "Jminus_s": _frac(jm),
        "St_s": _frac(st),
        "features": feats,
        "constants": consts,
        "note": CONSTANTS_NOTE,
    }
    text = [f"J+s = {_frac(jp)}, J-s = {_frac(jm)}, St_s = {_frac(st)}"]
    if not sph:
        text.append("warning: word is not spherical; values are not curve invariants")
    text.append(f"# {CONSTANTS_NOTE}")
    out.emit(data, text)


def cmd_planar(a, out: Out):
    w = words.parse(a.word)
    jp, jm, st = invariants.planar_invariants(w, a.rot, strict=not a.lenient)
    out.emit(
        {"word": _word_str(w), "rot": a.rot, "Jplus": _frac(jp), "Jminus": _frac(jm), "St": _frac(st)},
        f"J+ = {_frac(jp)}, J- = {_frac(jm)}, St = {_frac(st)}",
    )


def _mode(a) -> str:
    return "sphere" if a.sphere else "literal"


def cmd_moves_sites(a, out: Out):
    w = words.parse(a.word)
    kinds = moves.KINDS if a.kind == "all" else (a.kind,)
    dirs = moves.DIRECTIONS if a.dir == "all" else (a.dir,)
    rows = []
    for kind in kinds:
        for d in dirs:
            for k, s in enumerate(moves.find_sites(w, kind, d, _mode(a), a.uniform_signs)):
                rows.append({**s.to_json(), "index": k, "result": _word_str(moves.rewrite(w, s))})
    out.emit(
        {"word": _word_str(w), "mode": _mode(a), "sites": rows},
        [f"{r['kind']} {r['dir']} #{r['index']} {tuple(r['params'])}: {r['result'] or 'phi'}" for r in rows]
        or ["no sites"],
    )


def cmd_moves_apply(a, out: Out):
    w = words.parse(a.word)
    sites = moves.find_sites(w, a.kind, a.dir, _mode(a), a.uniform_signs)
    if not 0 <= a.index < len(sites):
        raise InvalidSite(f"site index {a.index} out of range ({len(sites)} sites)")
    site = sites[a.index]
    res = moves.apply(w, site, _mode(a), a.uniform_signs)
    out.emit(
        {"word": _word_str(w), "site": site.to_json(), "result": _word_str(res),
         "expected_delta": list(moves.expected_delta(site))},
        _word_str(res) or "phi",
    )


def cmd_walk(a, out: Out):
    walk = moves.random_spherical(
        a.seed, a.steps, a.max_letters, _mode(a), a.uniform_signs, shifts=not a.no_shifts
    )
    for step in walk.log:
        d = step.to_json()
        if out.as_json:
            print(json.dumps(d, sort_keys=True))
        else:
            print(f"{d['step']} {d['kind']} {d['dir']} {d['expected_delta']} {d['word'] or 'phi'}")


def cmd_dim(a, out: Out):
    rep = solver.invariant_space_dim(
        a.degree,
        a.horizon,
        a.domain,
        max_degree=max(solver.DEFAULT_DEGREE_GUARD, a.limit or 0),
        max_horizon=max(solver.DEFAULT_HORIZON_GUARD, a.limit or 0),
    )
    text = [f"L={L}: dim {d}" for L, d in rep.dims_by_L.items()]
    text.append(f"dimension {rep.dimension} (stable from L={rep.stabilized_at})")
    if a.degree > 2:
        text.append("# degree above 2: experimental")
    out.emit(rep.to_json(), text)


def cmd_complete_table(a, out: Out):
    if a.invariant:
        comp = solver.complete_arnold(a.invariant, a.horizon)
    else:
        if a.partial:
            with open(a.partial) as fh:
                partial = invariants.SymbolTable.from_json(json.load(fh))
        else:
            partial = invariants.listed_table(a.p, a.q, a.r, a.a0)
        comp = solver.complete_symbol_table(partial, horizon=a.horizon)
    data = comp.to_json()
    text = [f"{k}: {v}" for k, v in data["table"].items() if k != "degree"]
    text.append("unique" if comp.unique else f"{len(comp.free_directions)} free directions")
    out.emit(data, text)


def cmd_completeness(a, out: Out):
    rep = solver.completeness_check(a.n, limit=a.limit)
    text = [
        f"n={a.n}: {rep.classes} isomorphism classes, {rep.cyclic_classes} cyclic classes",
        "complete" if rep.complete else f"collisions: {rep.collisions}",
    ]
    out.emit(rep.to_json(), text)


# -- parser --------------------------------------------------------------------------------


def _globals_parser(suppress: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--json", action="store_true", default=d if suppress else False, help="JSON output")
    p.add_argument("--seed", type=int, default=d if suppress else 0, help="random seed")
    p.add_argument("--limit", type=int, default=d, help="override enumeration guards")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curveword", parents=[_globals_parser(False)])
    sub = parser.add_subparsers(dest="command", required=True)
    g = _globals_parser(True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[g], help=help_)
        sp.set_defaults(func=fn)
        return sp

    def word(sp):
        sp.add_argument("word", help="word in token notation, e.g. 'A -B A -B'")

    def move_flags(sp):
        sp.add_argument("--sphere", action="store_true", help="only sites that are moves of spherical curves")
        sp.add_argument("--uniform-signs", action="store_true", help="move 3 only with equal signs")

    word(add("parse", cmd_parse, "parse and validate a word"))
    word(add("canon", cmd_canon, "canonical relabeling"))
    word(add("cyclic", cmd_cyclic, "cyclic class and shift orbit"))
    sp = add("subwords", cmd_subwords, "all sub-words")
    word(sp)
    sp.add_argument("--size", type=int, help="only subsets of this many letters")
    sp = add("enumerate", cmd_enumerate, "isomorphism classes of n-letter words")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--unsigned", action="store_true")
    word(add("genus", cmd_genus, "genus and face count"))
    sp = add("features", cmd_features, "feature vector")
    word(sp)
    sp.add_argument("--degree", type=int, default=2)
    sp = add("eval", cmd_eval, "evaluate a symbol table file")
    word(sp)
    sp.add_argument("--table", required=True)
    sp.add_argument("--strict", action="store_true", help="missing symbols are errors")
    sp = add("arnold", cmd_arnold, "J+_s, J-_s, St_s")
    word(sp)
    sp.add_argument("--lenient", action="store_true", help="warn instead of failing on non-spherical words")
    sp = add("planar", cmd_planar, "J+, J-, St for a given rotation number")
    word(sp)
    sp.add_argument("--rot", type=int, required=True)
    sp.add_argument("--lenient", action="store_true")
    sp = add("moves-sites", cmd_moves_sites, "list move sites")
    word(sp)
    sp.add_argument("--kind", choices=moves.KINDS + ("all",), default="all")
    sp.add_argument("--dir", choices=moves.DIRECTIONS + ("all",), default="all")
    move_flags(sp)
    sp = add("moves-apply", cmd_moves_apply, "apply the index-th site of a kind")
    word(sp)
    sp.add_argument("--kind", choices=moves.KINDS, required=True)
    sp.add_argument("--dir", choices=moves.DIRECTIONS, default="fwd")
    sp.add_argument("--index", type=int, default=0)
    move_flags(sp)
    sp = add("walk", cmd_walk, "seeded random walk of moves from the empty word")
    sp.add_argument("--steps", type=int, default=100)
    sp.add_argument("--max-letters", type=int, default=12)
    sp.add_argument("--no-shifts", action="store_true", help="never move the base point")
    move_flags(sp)
    sp = add("dim", cmd_dim, "dimension of finite type invariant spaces")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--horizon", type=int, default=4)
    sp.add_argument("--domain", choices=("all", "spherical"), default="all")
    sp = add("complete-table", cmd_complete_table, "complete a partial symbol table")
    sp.add_argument("--invariant", choices=invariants.ARNOLD_NAMES)
    sp.add_argument("--partial", help="JSON table file to complete (cyclic constraints only)")
    for name in ("p", "q", "r", "a0"):
        sp.add_argument(f"--{name}", type=Fraction, default=Fraction(0))
    sp.add_argument("--horizon", type=int, default=4)
    sp = add("completeness", cmd_completeness, "feature vectors separate cyclic classes")
    sp.add_argument("--n", type=int, required=True)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.limit is not None:
        os.environ["CURVEWORD_LIMIT"] = str(a.limit)
    out = Out(a.json)
    try:
        with warnings.catch_warnings():
            # non-spherical inputs are reported in the command output itself
            warnings.simplefilter("ignore")
            a.func(a, out)
    except (Inconsistent, Underdetermined) as e:
        payload = {"error": type(e).__name__, "message": str(e)}
        if isinstance(e, Inconsistent):
            payload["witness"] = e.witness
        _report_error(out, payload)
        return 1
    except CurvewordError as e:
        _report_error(out, {"error": type(e).__name__, "message": str(e)})
        return 1
    return 0


def _report_error(out: Out, payload: dict) -> None:
    if out.as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"error: {payload['error']}: {payload['message']}", file=sys.stderr)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
