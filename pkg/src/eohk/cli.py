"""Command-line interface: ``eohk <subcommand> ...``.

Exit codes: 0 success, 2 input or format error, 3 hard verdict (classify
commands), 4 internal invariant failure.
"""
from __future__ import annotations

import argparse
import random
import sys

from . import io
from .appendix import verify_f8
from .bridges import csp_to_eo, eo_to_csp, opposite_class_map, opposite_reduction, square_reduction
from .classifier import HARD, classify, classify_single_arity4
from .evaluators import eval_affine_grid, eval_product_grid
from .factorization import ars_normalize, diagnose, mate_form, upf
from .gadgets import Gate, brute_force, eval_eo_grid, eval_gate, mate, merge, pin
from .recognizers import InternalError, pairwise_opposite, recognize_affine, recognize_product, space_of
from .scalar import Scalar
from .signature import FormatError, PreconditionError, Signature, tilde, z_transform

EXIT_OK, EXIT_INPUT, EXIT_HARD, EXIT_INTERNAL = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise FormatError(message)


def _value_or_sig(x, floats):
    if isinstance(x, Scalar):
        return {"value": io.scalar_to_json(x, floats)}
    return io.signature_to_json(x, floats)


def _load_sig(path):
    return io.signature_from_json(io.load_json(path), path)


def _load_sigset(path):
    obj = io.load_json(path)
    if isinstance(obj, dict) and "signatures" in obj:
        return io.signatures_from_json(obj["signatures"], f"{path}.signatures")
    return {"f": io.signature_from_json(obj, path)}


# ---------------------------------------------------------------------------
# subcommands


def cmd_eval(args, out):
    grid = io.grid_from_json(io.load_json(args.file), args.file)
    if isinstance(grid, Gate):
        return EXIT_OK, _value_or_sig(eval_gate(grid), args.float)
    mode = args.mode
    if mode == "auto":
        sigs = grid.signatures.values()
        if all(recognize_affine(s) is not None for s in sigs):
            mode = "affine"
        elif all(recognize_product(s) is not None for s in sigs):
            mode = "product"
        else:
            mode = "brute"
    if mode == "brute":
        val = eval_eo_grid(grid) if grid.mode == "eo" else brute_force(grid)
    elif mode == "affine":
        val = eval_affine_grid(grid)
    else:
        val = eval_product_grid(grid)
    return EXIT_OK, {"value": io.scalar_to_json(val, args.float), "mode": mode}


def cmd_classify(args, out):
    v = classify(_load_sigset(args.file))
    return (EXIT_HARD if v.outcome == HARD else EXIT_OK), io.verdict_to_json(v, args.float)


def cmd_classify4(args, out):
    v = classify_single_arity4(_load_sig(args.file))
    return (EXIT_HARD if v.outcome == HARD else EXIT_OK), io.verdict_to_json(v, args.float)


def cmd_factor(args, out):
    f = _load_sig(args.file)
    fact = upf(f)
    if args.ars:
        fact = ars_normalize(fact)
    payload = io.factorization_to_json(fact, args.float)
    if args.diagnose:
        payload["diagnostics"] = io.diagnostic_to_json(diagnose(f), args.float)
    return EXIT_OK, payload


def cmd_merge(args, out):
    return EXIT_OK, _value_or_sig(merge(_load_sig(args.file), args.i, args.j), args.float)


def cmd_mate(args, out):
    sig, mm = mate(_load_sig(args.file), args.i, args.j)
    return EXIT_OK, {
        "signature": io.signature_to_json(sig, args.float),
        "matrix": [[io.scalar_to_json(v, args.float) for v in row] for row in mm.rows],
        "form": mate_form(mm),
        "cauchy_schwarz": mm.cauchy_schwarz_holds(),
    }


def cmd_pin(args, out):
    return EXIT_OK, _value_or_sig(pin(_load_sig(args.file), args.i, args.b), args.float)


def cmd_transform_z(args, out):
    direction = "inverse" if args.inverse else "forward"
    return EXIT_OK, io.signature_to_json(z_transform(_load_sig(args.file), direction), args.float)


def cmd_tilde(args, out):
    return EXIT_OK, io.signature_to_json(tilde(_load_sig(args.file)), args.float)


def cmd_csp2eo(args, out):
    return EXIT_OK, io.grid_to_json(csp_to_eo(io.csp_from_json(io.load_json(args.file), args.file)), args.float)


def cmd_eo2csp(args, out):
    grid = io.grid_from_json(io.load_json(args.file), args.file)
    return EXIT_OK, io.csp_to_json(eo_to_csp(grid), args.float)


def cmd_reduce_square(args, out):
    obj = io.load_json(args.file)
    inst = io.csp_from_json(obj, args.file)
    if "base" not in obj:
        raise FormatError(f"{args.file}: missing field 'base' (signatures whose norm squares are the constraints)")
    base = io.signatures_from_json(obj["base"], f"{args.file}.base")
    return EXIT_OK, io.grid_to_json(square_reduction(inst, base), args.float)


def cmd_reduce_opposite(args, out):
    inst = io.csp_from_json(io.load_json(args.file), args.file)
    cmap = opposite_class_map(inst)
    payload = io.grid_to_json(opposite_reduction(inst), args.float)
    payload["class_map"] = {
        "representative": cmap.representative,
        "parity": cmap.parity,
        "bipartite": cmap.consistent,
    }
    return EXIT_OK, payload


def cmd_pairing(args, out):
    f = _load_sig(args.file)
    space = space_of(f)
    if space is None:
        raise PreconditionError("support is empty or not affine")
    return EXIT_OK, {"pairs": [list(p) for p in pairwise_opposite(space).pairs]}


def cmd_verify_f8(args, out):
    rep = verify_f8()
    payload = {
        "ok": rep.ok,
        "support_size": rep.support_size,
        "is_eo": rep.is_eo,
        "is_ars": rep.is_ars,
        "delta_property_absent": rep.delta_property_absent,
        "commutativity_checked": rep.commutativity_checked,
        "in_B": rep.in_B,
        "int_B": rep.int_B,
        "table": [
            {
                "merged": list(r.pair),
                "pairs": [list(p) for p in r.observed],
                "scale": None if r.scale is None else io.scalar_to_json(r.scale, args.float),
                "ok": r.ok,
            }
            for r in rep.factorization_table
        ],
        "failures": rep.failures,
    }
    if not args.json:
        for r in rep.factorization_table:
            pairs = "".join(f"({a}{b})" for a, b in r.observed)
            print(f"d({r.pair[0]}{r.pair[1]}) = {pairs}  scale={r.scale}  {'ok' if r.ok else 'MISMATCH'}", file=sys.stderr)
    return (EXIT_OK if rep.ok else EXIT_INTERNAL), payload


def cmd_selftest(args, out):
    from .selftest import run_selftest

    results = run_selftest(random.Random(args.seed), rounds=args.rounds)
    ok = all(r["ok"] for r in results)
    return (EXIT_OK if ok else EXIT_INTERNAL), {"ok": ok, "seed": args.seed, "checks": results}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eohk", description="Exact #EO / Holant signature calculus")
    p.add_argument("--float", action="store_true", help="print decimal approximations instead of exact values")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.set_defaults(fn=fn)
        # global flags are also accepted after the subcommand
        s.add_argument("--float", action="store_true", default=argparse.SUPPRESS)
        s.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        return s

    s = add("eval", cmd_eval, "partition function of a grid (or signature of a gate)")
    s.add_argument("file")
    s.add_argument("--mode", choices=["auto", "brute", "affine", "product"], default="auto")
    add("classify", cmd_classify, "classify a signature set").add_argument("file")
    add("classify4", cmd_classify4, "classify a single arity-4 signature").add_argument("file")
    s = add("factor", cmd_factor, "unique prime factorization")
    s.add_argument("file")
    s.add_argument("--ars", action="store_true", help="rescale factors to satisfy ARS")
    s.add_argument("--diagnose", action="store_true", help="include merge diagnostics")
    for name, fn in (("merge", cmd_merge), ("mate", cmd_mate)):
        s = add(name, fn, f"{name} two variables")
        s.add_argument("file")
        s.add_argument("i", type=int)
        s.add_argument("j", type=int)
    s = add("pin", cmd_pin, "fix one variable")
    s.add_argument("file")
    s.add_argument("i", type=int)
    s.add_argument("b", type=int)
    s = add("transform-z", cmd_transform_z, "apply the Z basis change")
    s.add_argument("file")
    s.add_argument("--inverse", action="store_true")
    add("tilde", cmd_tilde, "EO embedding of a signature").add_argument("file")
    add("csp2eo", cmd_csp2eo, "encode a CSP instance as an EO grid").add_argument("file")
    add("eo2csp", cmd_eo2csp, "decode an EO grid over tilde images into a CSP instance").add_argument("file")
    add("reduce-square", cmd_reduce_square, "CSP over norm squares to a bipartite Holant grid").add_argument("file")
    add("reduce-opposite", cmd_reduce_opposite, "CSP over pairwise opposite supports to a Holant grid").add_argument("file")
    add("pairing", cmd_pairing, "opposite pairing of an affine half-weight support").add_argument("file")
    add("verify-f8", cmd_verify_f8, "verify the arity-8 merge table").add_argument("--json", action="store_true")
    s = add("selftest", cmd_selftest, "run reduced property suites")
    s.add_argument("--rounds", type=int, default=20)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        code, payload = args.fn(args, out)
    except (FormatError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InternalError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    print(io.dumps(payload), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
