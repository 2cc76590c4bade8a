"""JSON encodings for scalars, signatures, grids, CSP instances and results."""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .bridges import CspInstance
from .classifier import Verdict
from .factorization import DeltaWitness, DiagnosticReport, Factorization
from .gadgets import Gate, SignatureGrid
from .recognizers import AffineRep, AffineSpace, ProductRep
from .scalar import I, ONE, SQRT2, Scalar, format_scalar
from .signature import FormatError, Signature

# ---------------------------------------------------------------------------
# scalars

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt2)|(i)|([-+*/()]))")


def _tokens(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormatError(f"cannot parse scalar {text!r} near position {pos}")
        num, sq, im, op = m.groups()
        out.append(("num", int(num)) if num else ("atom", SQRT2 if sq else I) if (sq or im) else ("op", op))
        pos = m.end()
    return out


def parse_scalar_text(text: str) -> Scalar:
    """Exact parse of ring strings such as ``3/2``, ``-i`` or ``(1+sqrt2)+3/2*i``."""
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        pos += 1
        return toks[pos - 1]

    def expr():
        val = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return atom()

    def atom():
        kind, v = peek()
        if kind == "num":
            take()
            return Scalar(v)
        if kind == "atom":
            take()
            return v
        if (kind, v) == ("op", "("):
            take()
            val = expr()
            if take() != ("op", ")"):
                raise FormatError(f"unbalanced parentheses in scalar {text!r}")
            return val
        raise FormatError(f"unexpected token in scalar {text!r}")

    if not toks:
        raise FormatError("empty scalar string")
    val = expr()
    if pos != len(toks):
        raise FormatError(f"trailing characters in scalar {text!r}")
    return val


def scalar_from_json(obj, where: str = "scalar") -> Scalar:
    if isinstance(obj, bool):
        raise FormatError(f"{where}: booleans are not scalars")
    if isinstance(obj, int):
        return Scalar(obj)
    if isinstance(obj, float):
        if obj != int(obj):
            raise FormatError(f"{where}: non-integral float {obj!r} is not exact; use a 'p/q' string")
        return Scalar(int(obj))
    if isinstance(obj, str):
        try:
            return Scalar(Fraction(obj.strip()))
        except (ValueError, ZeroDivisionError):
            try:
                return parse_scalar_text(obj)
            except (FormatError, ZeroDivisionError) as exc:
                raise FormatError(f"{where}: {exc}") from None
    if isinstance(obj, dict):
        try:
            re0, re1 = obj.get("re", ["0", "0"])
            im0, im1 = obj.get("im", ["0", "0"])
            return Scalar(str(re0), str(re1), str(im0), str(im1))
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise FormatError(f"{where}: bad scalar object {obj!r} ({exc})") from None
    raise FormatError(f"{where}: cannot read {obj!r} as a scalar")


def scalar_to_json(s: Scalar, floats: bool = False) -> str:
    if not floats:
        return format_scalar(s)
    z = s.to_complex()
    re_, im_ = float(f"{z.real:.12g}"), float(f"{z.imag:.12g}")
    if im_ == 0:
        return f"{re_:.12g}"
    if re_ == 0:
        return f"{im_:.12g}i"
    return f"{re_:.12g}{im_:+.12g}i"


# ---------------------------------------------------------------------------
# signatures


def _field(obj, key, where):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    if key not in obj:
        raise FormatError(f"{where}: missing field {key!r}")
    return obj[key]


def signature_from_json(obj, where: str = "signature") -> Signature:
    arity = _field(obj, "arity", where)
    values = _field(obj, "values", where)
    if not isinstance(arity, int) or isinstance(arity, bool):
        raise FormatError(f"{where}.arity: expected an integer")
    if not isinstance(values, list):
        raise FormatError(f"{where}.values: expected a list")
    vals = [scalar_from_json(v, f"{where}.values[{k}]") for k, v in enumerate(values)]
    return Signature(arity, vals)


def signature_to_json(f: Signature, floats: bool = False) -> dict:
    return {"arity": f.arity, "values": [scalar_to_json(v, floats) for v in f.values]}


def signatures_from_json(obj, where: str = "signatures") -> dict[str, Signature]:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object mapping names to signatures")
    return {str(k): signature_from_json(v, f"{where}.{k}") for k, v in obj.items()}


# ---------------------------------------------------------------------------
# grids


def _port(p, where):
    if not (isinstance(p, list) and len(p) == 2 and all(isinstance(x, int) for x in p)):
        raise FormatError(f"{where}: a port is [vertex, port]")
    return (p[0], p[1])


def grid_from_json(obj, where: str = "grid") -> SignatureGrid:
    sigs = signatures_from_json(_field(obj, "signatures", where), f"{where}.signatures")
    verts_raw = _field(obj, "vertices", where)
    if not isinstance(verts_raw, list):
        raise FormatError(f"{where}.vertices: expected a list")
    verts = []
    for k, v in enumerate(verts_raw):
        name = v.get("sig") if isinstance(v, dict) else v
        if not isinstance(name, str):
            raise FormatError(f"{where}.vertices[{k}]: missing field 'sig'")
        verts.append(name)
    edges_raw = _field(obj, "edges", where)
    edges = []
    for k, e in enumerate(edges_raw):
        if not (isinstance(e, list) and len(e) == 2):
            raise FormatError(f"{where}.edges[{k}]: an edge is [[v,p],[v,p]]")
        edges.append((_port(e[0], f"{where}.edges[{k}]"), _port(e[1], f"{where}.edges[{k}]")))
    mode = obj.get("mode", "eo")
    scale = scalar_from_json(obj["scale"], f"{where}.scale") if "scale" in obj else ONE
    dangling = [_port(p, f"{where}.dangling") for p in obj.get("dangling", [])]
    if dangling:
        g = Gate(sigs, verts, edges, mode=mode, scale=scale, dangling=dangling)
    else:
        g = SignatureGrid(sigs, verts, edges, mode=mode, scale=scale)
    g.validate(dangling)
    return g


def grid_to_json(g: SignatureGrid, floats: bool = False) -> dict:
    out = {
        "signatures": {n: signature_to_json(s, floats) for n, s in g.signatures.items()},
        "vertices": [{"sig": n} for n in g.vertices],
        "edges": [[list(a), list(b)] for a, b in g.edges],
        "mode": g.mode,
    }
    if g.scale != ONE:
        out["scale"] = scalar_to_json(g.scale, floats)
    if isinstance(g, Gate):
        out["dangling"] = [list(p) for p in g.dangling]
    return out


# ---------------------------------------------------------------------------
# CSP instances


def csp_from_json(obj, where: str = "csp") -> CspInstance:
    m = _field(obj, "num_vars", where)
    if not isinstance(m, int):
        raise FormatError(f"{where}.num_vars: expected an integer")
    sigs = signatures_from_json(_field(obj, "signatures", where), f"{where}.signatures")
    cons = []
    for k, c in enumerate(_field(obj, "constraints", where)):
        name = _field(c, "sig", f"{where}.constraints[{k}]")
        vs = _field(c, "vars", f"{where}.constraints[{k}]")
        cons.append((name, tuple(vs)))
    inst = CspInstance(m, sigs, cons)
    inst.validate()
    return inst


def csp_to_json(inst: CspInstance, floats: bool = False) -> dict:
    return {
        "num_vars": inst.num_vars,
        "signatures": {n: signature_to_json(s, floats) for n, s in inst.signatures.items()},
        "constraints": [{"sig": n, "vars": list(vs)} for n, vs in inst.constraints],
    }


# ---------------------------------------------------------------------------
# results


def _bitstring(x: int, n: int) -> str:
    return format(x, f"0{n}b") if n else ""


def factorization_to_json(fact: Factorization, floats: bool = False) -> dict:
    return {
        "scale": scalar_to_json(fact.scale, floats),
        "factors": [{"vars": list(vs), "sig": signature_to_json(g, floats)} for vs, g in fact.factors],
    }


def space_to_json(sp: AffineSpace | None) -> dict | None:
    if sp is None:
        return None
    return {
        "arity": sp.arity,
        "basepoint": _bitstring(sp.basepoint, sp.arity),
        "basis": [_bitstring(b, sp.arity) for b in sp.basis],
    }


def rep_to_json(rep, floats: bool = False) -> dict:
    if isinstance(rep, AffineRep):
        return {
            "kind": "affine",
            "lambda": scalar_to_json(rep.lam, floats),
            "space": space_to_json(rep.space),
            "q_linear": [c % 4 for c in rep.q_linear],
            "q_cross": [[j, k, c] for (j, k), c in sorted(rep.q_cross.items())],
        }
    if isinstance(rep, ProductRep):
        return {
            "kind": "product",
            "factors": [
                {"type": kind, "ports": list(ports)}
                | ({"weights": [scalar_to_json(w, floats) for w in ws]} if ws is not None else {})
                for kind, ports, ws in rep.factors
            ],
        }
    raise TypeError(f"not a witness: {rep!r}")


def verdict_to_json(v: Verdict, floats: bool = False) -> dict:
    out = {"outcome": v.outcome, "both_classes": v.both_classes}
    if v.witnesses:
        out["witnesses"] = {n: rep_to_json(r, floats) for n, r in v.witnesses.items()}
    if v.diagnostic is not None:
        out["diagnostic"] = v.diagnostic
    return out


def diagnostic_to_json(rep: DiagnosticReport, floats: bool = False) -> dict:
    w: DeltaWitness | None = rep.delta_witness
    return {
        "in_B": rep.in_B,
        "int_B": rep.int_B,
        "int_B_nonzero": rep.int_B_nonzero,
        "delta_witness": None
        if w is None
        else {"u": w.u, "v": w.v, "r": w.r, "s": w.s, "t": w.t, "b": signature_to_json(w.b, floats)},
        "orthogonality_lambda": None
        if rep.orthogonality_lambda is None
        else scalar_to_json(rep.orthogonality_lambda, floats),
    }


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise FormatError(f"file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2)
