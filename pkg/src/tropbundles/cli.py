"""Batch command-line front end: JSON in, JSON plus a text summary out.

Exit codes: 0 success, 2 input/schema error, 3 budget exhausted (payload status
``unknown-at-bound``), 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from . import cech, semiring as sr, submodules as sm, topo, valuations as vl
from .linalg import BudgetExceeded, InvariantError, all_matrices, invert, is_generalized_permutation
from .polynomial import Verdict

EXIT_SCHEMA, EXIT_BUDGET, EXIT_INVARIANT = 2, 3, 4

THEOREMS = {
    "analyze-semiring": "idempotent pairs, nilradical saturation and idempotent lifting on finite semirings",
    "classify-bundles": "vector bundles split into line bundles, unique up to order of summands",
    "pic": "line bundles are classified by first cohomology with unit coefficients",
    "decompose": "vector bundles split into line bundles, unique up to order of summands",
    "covering": "real topological bundles reduce to their permutation part, a finite covering",
    "trop": "tropicalization agrees with the semiring of finitely generated monomial submodules",
    "check-valuation": "monomial valuations are the homomorphisms out of the tropicalization",
    "submodules": "submodule semiring: localization, basic opens and invertible submodules",
    "lift": "tropical line bundles lift through principal unit generators",
}


class InputError(ValueError):
    pass


class BoundReached(RuntimeError):
    def __init__(self, payload: dict):
        super().__init__("bound reached")
        self.payload = payload


def load_schema(name: str) -> dict:
    return json.loads(resources.files("tropbundles").joinpath("schemas", f"{name}.json").read_text())


def read_input(path: str | None, schema: str) -> dict:
    if path is None:
        raise InputError("an input file is required (or use --preset where supported)")
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        jsonschema.validate(data, load_schema(schema))
    except jsonschema.ValidationError as exc:
        raise InputError(f"{path}: {exc.message}") from exc
    return data


def _pairs_key(key: str) -> tuple[int, int]:
    i, j = (int(x) for x in key.split(","))
    return i, j


# ---------------------------------------------------------------------------
# commands


def cmd_analyze_semiring(args) -> tuple[dict, str]:
    if args.preset:
        presets = {"boolean": sr.BOOLEAN, "dual": sr.dual_numbers_boolean(), "z2": sr.z_mod_2(),
                   "chain3": sr.chain_semiring(3), "boolean-x": sr.boolean_idempotent_x()}
        if args.preset not in presets:
            raise InputError(f"unknown semiring preset {args.preset!r}; choose from {sorted(presets)}")
        r = presets[args.preset]
    else:
        r = sr.FiniteTable.from_json(read_input(args.input, "semiring"))
    pairs = sr.idempotent_pairs(r)
    nil = sr.nilradical(r)
    spec = sr.spec_primes(r)
    classes = sr.bourne_congruence(r, nil.elements)
    mod_pairs = [(e, f) for e in r.elements for f in r.elements
                 if classes[r.mul(e, f)] == classes[r.zero] and classes[r.add(e, f)] == classes[r.one]]
    lifts = [sr.lift_idempotent_pair(r, p) for p in mod_pairs]
    gl = {}
    for n in (1, 2):
        if r.size ** (n * n) > args.budget:
            raise BudgetExceeded(f"GL_{n} enumeration needs {r.size ** (n * n)} matrices")
        mats = [m for m in all_matrices(r, n) if invert(m, "brute") is not None]
        gl[str(n)] = {"invertible": len(mats), "all_generalized_permutations":
                      all(is_generalized_permutation(m) for m in mats)}
    result = {
        "size": r.size,
        "zero_sum_free": sr.is_zero_sum_free(r),
        "idempotent_pairs": [[r.label(p.e), r.label(p.f)] for p in pairs],
        "trivial_idempotent_pairs_only": all(p.trivial for p in pairs),
        "nilradical": nil.labels(),
        "nilradical_saturated": nil.saturated,
        "primes": [sorted(r.label(a) for a in p.elements) for p in spec.primes],
        "spectrum_connected": spec.connected,
        "spectrum_irreducible": spec.irreducible,
        "pairs_mod_nilradical": len(mod_pairs),
        "all_lift": len(lifts) == len(mod_pairs),
        "invertible_matrices": gl,
    }
    summary = (f"zero-sum-free: {str(result['zero_sum_free']).lower()}, idempotent pairs: "
               f"{'trivial only' if result['trivial_idempotent_pairs_only'] else 'nontrivial present'}, "
               f"nilradical {{{', '.join(result['nilradical'])}}} saturated: {str(nil.saturated).lower()}")
    return result, summary


def _cover(args) -> cech.CechCover:
    if not args.preset:
        raise InputError("--preset is required")
    try:
        return cech.CechCover.preset(args.preset, args.base)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_pic(args) -> tuple[dict, str]:
    pic = cech.picard_group(_cover(args))
    gens = [_generator_label(pic, g) for g in pic.generators]
    result = {"group": pic.describe(), "free_rank": pic.free_rank, "torsion": list(pic.torsion),
              "divisible_rank": pic.divisible_rank, "generators": pic.generator_labels()}
    tail = f", generator{'s' if len(gens) > 1 else ''} {', '.join(gens)}" if gens else ""
    return result, f"Pic = {pic.describe()}{tail}"


def _generator_label(pic, g) -> str:
    pairs = pic.cover.pairs()
    if len(pairs) == 1:
        return g.unit(*pairs[0]).label()
    return "(" + ", ".join(f"theta_{i}{j} = {g.unit(i, j).label()}" for i, j in pairs) + ")"


def cmd_classify(args) -> tuple[dict, str]:
    vc = cech.VectClassification(cech.picard_group(_cover(args)), args.rank)
    reps = vc.representatives_in_box(args.box)
    if len(reps) > args.budget:
        raise BudgetExceeded("too many representatives in the box")
    result = {"rank": args.rank, "classification": vc.describe(), "box": args.box,
              "count_in_box": vc.count_in_box(args.box), "representatives": [[list(c) for c in r] for r in reps]}
    return result, f"Vect_{args.rank}: {vc.describe()} ({vc.count_in_box(args.box)} classes with coordinates in [-{args.box},{args.box}])"


def cmd_decompose(args) -> tuple[dict, str]:
    data = read_input(args.input, "cocycle")
    try:
        cover = cech.CechCover.preset(data["scheme"], data.get("base", args.base))
        c = cech.CechCocycle.from_json(cover, data["cocycle"])
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"bad cocycle: {exc}") from exc
    if not cech.validate_cocycle(c):
        raise InputError("input is not a cocycle")
    pic = cech.picard_group(cover)
    lines = cech.decompose_into_lines(c)
    classes = sorted(pic.class_of(line) for line in lines)
    result = {"rank": c.rank, "line_classes": [list(k) for k in classes],
              "lines": [{k: v for k, v in line.to_json()["values"].items()} for line in lines]}
    return result, f"splits into {c.rank} line bundle(s) with Pic classes {[list(k) for k in classes]}"


def cmd_covering(args) -> tuple[dict, str]:
    data = read_input(args.input, "covering")
    try:
        cx = (topo.preset_complex(data["complex"]) if isinstance(data["complex"], str)
              else topo.FiniteComplex.from_json(data["complex"]))
        c = topo.TopCocycle.from_json(cx, data)
    except (KeyError, ValueError, IndexError) as exc:
        raise InputError(f"bad cocycle: {exc}") from exc
    if not topo.validate_top_cocycle(c):
        raise InputError("input is not a cocycle")
    rep = topo.is_trivial_bundle(c)
    comps = [sorted([v, k] for v, k in comp) for comp in rep.covering.components]
    result = {"sheets": c.rank, "components": len(comps), "sheets_by_component": comps,
              "trivial": rep.trivial}
    if rep.cochain is not None:
        result["trivializing_permutations"] = {str(v): list(p) for v, p in sorted(rep.cochain.perms.items())}
    word = "trivial" if rep.trivial else "nontrivial"
    return result, f"{c.rank}-sheeted covering with {len(comps)} component(s); bundle is {word}"


def _tpoly(ring, data) -> Any:
    return ring.poly({tuple(t["exponent"]): Fraction(str(t["coeff"])) for t in data})


def cmd_trop(args) -> tuple[dict, str]:
    data = read_input(args.input, "trop")
    a = vl.LabelledAlgebra.from_json(data["algebra"])
    tp = vl.trop_algebra(a, args.closure_bound)
    inj, witness = a.injectivity_spot_check(min(args.closure_bound, 4))
    result = {"congruence": tp.describe(), "exact_normal_forms": tp.quotient.term_rules is not None,
              "monoid_injective_at_bound": inj,
              "injectivity_witness": [list(e) for e in witness] if witness else None}
    verdicts = []
    for lhs, rhs in data.get("queries", []):
        try:
            p, q = _tpoly(tp.ring, lhs), _tpoly(tp.ring, rhs)
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"bad query: {exc}") from exc
        verdicts.append(tp.eq(p, q).value)
    if verdicts:
        result["queries"] = verdicts
        if Verdict.UNKNOWN.value in verdicts:
            raise BoundReached(result)
    return result, f"Trop(A) = T_Q[{','.join(a.variables)}]/{tp.describe()}"


def cmd_check_valuation(args) -> tuple[dict, str]:
    data = read_input(args.input, "valuation")
    a = vl.LabelledAlgebra.from_json(data["algebra"])
    try:
        w = vl.MonomialValuationWitness(tuple(Fraction(x) for x in data["assignment"]))
    except ValueError as exc:
        raise InputError(f"bad assignment: {exc}") from exc
    verdict = vl.check_monomial_valuation(a, w, args.closure_bound)
    return verdict.to_json(), f"monomial valuation: {verdict.status.value}"


def cmd_submodules(args) -> tuple[dict, str]:
    data = read_input(args.input, "submodules")
    try:
        alg = sm.preset_normal_algebra(data["algebra"])
        gens = [alg.parse(g) for g in data.get("generators", [])]
        other = [alg.parse(g) for g in data.get("other", [])]
    except (ValueError, TypeError, SyntaxError) as exc:
        raise InputError(f"bad submodule input: {exc}") from exc
    n = sm.OKSubmodule(alg, tuple(gens))
    m = sm.OKSubmodule(alg, tuple(other))
    op = data["operation"]
    if op == "canonical":
        res = n.to_json()
        return res, f"canonical form {n.describe()}"
    if op in ("sum", "product"):
        out = n + m if op == "sum" else n * m
        return out.to_json(), f"{op}: {out.describe()}"
    if op == "equal":
        eq = n == m
        return {"equal": eq, "left": n.to_json(), "right": m.to_json()}, f"equal: {str(eq).lower()}"
    if op == "unit-generator":
        u = sm.principal_unit_generator(n, m)
        return {"generator": alg.format(u)}, f"principal unit generator {alg.format(u)}"
    if op == "basic-open":
        f, g = alg.parse(data["f"]), alg.parse(data["g"])
        r = sm.basic_open_correspondence(alg, f, g)
        if not r["agree"]:
            raise InvariantError("basic-open inclusion differs between the two sides")
        return r, f"D(f) inside D(g): {str(r['classical']).lower()} on both sides"
    if op == "localize":
        f = alg.parse(data["f"])
        out = sm.psi(alg, f, n, int(data.get("power", 0)))
        return out.to_json(), f"image in the localization: {out.describe()}"
    raise InputError(f"unknown operation {op!r}")


def cmd_lift(args) -> tuple[dict, str]:
    data = read_input(args.input, "lift")
    try:
        alg = sm.preset_normal_algebra(data["algebra"])
        values = {_pairs_key(k): (Fraction(str(v[0])), tuple(int(x) for x in v[1])) for k, v in data["values"].items()}
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad lift input: {exc}") from exc
    res = sm.lift_line_bundle(alg, int(data["size"]), values, bool(data.get("saturated", True)))
    out = res.to_json()
    summary = "lifted cocycle " + ", ".join(f"{k}: {v}" for k, v in out["cocycle"]["values"].items())
    return out, summary


COMMANDS = {
    "analyze-semiring": cmd_analyze_semiring,
    "classify-bundles": cmd_classify,
    "pic": cmd_pic,
    "decompose": cmd_decompose,
    "covering": cmd_covering,
    "trop": cmd_trop,
    "check-valuation": cmd_check_valuation,
    "submodules": cmd_submodules,
    "lift": cmd_lift,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropbundles", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=THEOREMS[name])
        p.add_argument("input", nargs="?", help="input JSON file")
        p.add_argument("--closure-bound", type=int, default=6)
        p.add_argument("--budget", type=int, default=10 ** 6)
        p.add_argument("--preset")
        p.add_argument("--base", choices=("boolean", "tropicalQ", "monoid"), default="tropicalQ")
        p.add_argument("--json-out")
        if name == "classify-bundles":
            p.add_argument("--rank", type=int, default=2)
            p.add_argument("--box", type=int, default=1)
    return parser


def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)
    if args.json_out:
        Path(args.json_out).write_text(text + "\n")
    print(payload["summary"])
    print(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SCHEMA if exc.code else 0
    base = {"schema": "tropbundles.result/1", "command": args.command, "theorem": THEOREMS[args.command]}
    try:
        result, summary = COMMANDS[args.command](args)
        payload = {**base, "status": "ok", "summary": summary, "result": result}
        code = 0
    except BoundReached as exc:
        payload = {**base, "status": "unknown-at-bound", "summary": "bound reached before a verdict",
                   "result": exc.payload}
        code = EXIT_BUDGET
    except BudgetExceeded as exc:
        payload = {**base, "status": "unknown-at-bound", "summary": f"budget exhausted: {exc}", "result": {}}
        code = EXIT_BUDGET
    except InvariantError as exc:
        payload = {**base, "status": "error", "summary": f"invariant failure: {exc}", "result": {}}
        code = EXIT_INVARIANT
    except (InputError, ValueError, KeyError) as exc:
        payload = {**base, "status": "error", "summary": f"input error: {exc}", "result": {}}
        code = EXIT_SCHEMA
    _emit(args, payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
