"""Command-line entry point: JSON in, JSON out.

Each subcommand accepts flags, or a single request object on stdin when no
arguments are given::

    {"op": "modularity", "args": {"n": 2, "gram": [[4, 6], [6, 4]]}}

Responses are ``{"op", "input", "result"}`` on success and
``{"op", "input", "error": {"code", "message"}}`` on failure.  Exit status is
0 on success, 2 on validation errors and 3 on arithmetic overflow.  The
``tables`` subcommand writes CSV or aligned text directly unless
``--format json`` is requested.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import lattice as lat
from .errors import LatticeError, Overflow
from .kummer import (
    MukaiData,
    classify_wall,
    exception_models,
    exceptions_scan,
    is_pex,
    is_twisted_modular,
    special_isometries,
    symplectic_effective,
    vertical_wall_report,
)
from .numtheory import as_place
from .qform import DiagonalForm, is_isotropic_local, is_isotropic_rational, kummer_form, relevant_places

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_OVERFLOW = 3



class RequestError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


# -- value parsing --------------------------------------------------------------

def _load(value):
    if isinstance(value, str):
        try:
            return json.loads(value)
        except json.JSONDecodeError as exc:
            raise RequestError("MalformedJSON", f"cannot parse {value!r}: {exc.msg}") from None
    return value


def _int(value, name) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise RequestError("BadArgument", f"{name} must be an integer")
    try:
        return int(value)
    except ValueError:
        raise RequestError("BadArgument", f"{name} must be an integer") from None


def _vector(value, name) -> list[int]:
    value = _load(value)
    if not isinstance(value, list):
        raise RequestError("BadArgument", f"{name} must be an integer array")
    return [_int(x, name) for x in value]


def _matrix(value, name) -> list[list[int]]:
    value = _load(value)
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise RequestError("BadArgument", f"{name} must be an array of integer arrays")
    return [[_int(x, name) for x in row] for row in value]


def _rational(value, name) -> Fraction:
    if isinstance(value, bool):
        raise RequestError("BadArgument", f"{name} must be an integer or a 'p/q' string")
    try:
        return Fraction(value) if isinstance(value, (int, str)) else Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise RequestError("BadArgument", f"{name} must be an integer or a 'p/q' string") from None


def _rat_str(q) -> str | int:
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _require(args, *names):
    missing = [n for n in names if args.get(n) is None]
    if missing:
        raise RequestError("BadArgument", "missing argument(s): " + ", ".join(missing))


# -- handlers: each returns (normalized input, result) --------------------------

def op_isotropy(args):
    if args.get("coeffs") is not None:
        raw = _load(args["coeffs"])
        if not isinstance(raw, list):
            raise RequestError("BadArgument", "coeffs must be an array")
        form = DiagonalForm([_rational(x, "coeffs") for x in raw])
        inp = {"coeffs": [_rat_str(a) for a in form.coeffs]}
    else:
        _require(args, "n", "d")
        variant = args.get("variant") or "I"
        n, d = _int(args["n"], "n"), _int(args["d"], "d")
        form = kummer_form(n, d, variant)
        inp = {"n": n, "d": d, "variant": variant}
    if args.get("place") is not None:
        place = as_place(args["place"])
        inp["place"] = str(place)
        return inp, {"isotropic": is_isotropic_local(form, place)}
    local = {str(v): is_isotropic_local(form, v) for v in relevant_places(form)}
    return inp, {"isotropic": is_isotropic_rational(form), "local": local}


def op_modularity(args):
    _require(args, "n", "gram")
    n, gram = _int(args["n"], "n"), _matrix(args["gram"], "gram")
    return {"n": n, "gram": gram}, {"twisted_modular": is_twisted_modular(n, gram)}


def op_pex(args):
    _require(args, "v", "w")
    v, w = _vector(args["v"], "v"), _vector(args["w"], "w")
    return {"v": v, "w": w}, {"pex": is_pex(v, w)}


def op_wall(args):
    _require(args, "gram", "v")
    gram, v = _matrix(args["gram"], "gram"), _vector(args["v"], "v")
    return {"gram": gram, "v": v}, classify_wall(gram, v).to_json()


def op_vertical_wall(args):
    _require(args, "r", "c", "chi", "d")
    m = MukaiData(*(_int(args[k], k) for k in ("r", "c", "chi", "d")))
    return m.to_json(), vertical_wall_report(m).to_json()


def op_effective(args):
    _require(args, "v")
    v = _vector(args["v"], "v")
    special = args.get("special")
    if special is not None:
        g2, g3 = special_isometries()
        if special not in ("g2", "g3"):
            raise RequestError("BadArgument", "special must be 'g2' or 'g3'")
        g = g2 if special == "g2" else g3
        inp = {"special": special, "v": v}
    else:
        _require(args, "g")
        g = _matrix(args["g"], "g")
        inp = {"g": g, "v": v}
    return inp, symplectic_effective(g, v).to_json()


def _scan_args(args):
    variant = args.get("variant") or "I"
    nmax = _int(args.get("nmax", 20), "nmax")
    dmax = _int(args.get("dmax", 100), "dmax")
    nmin = _int(args.get("nmin", 2), "nmin")
    dmin = _int(args.get("dmin", 1), "dmin")
    parallel = args.get("parallel")
    parallel = _int(parallel, "parallel") if parallel is not None else None
    return variant, nmin, nmax, dmin, dmax, parallel


def op_tables(args):
    variant, nmin, nmax, dmin, dmax, parallel = _scan_args(args)
    table = exceptions_scan(range(nmin, nmax + 1), range(dmin, dmax + 1), variant, parallel)
    inp = {"variant": variant, "nmin": nmin, "nmax": nmax, "dmin": dmin, "dmax": dmax}
    return inp, {"rows": {str(n): ds for n, ds in table.items() if ds}}


def op_exceptions(args):
    _require(args, "case", "n", "d")
    case, n, d = (_int(args[k], k) for k in ("case", "n", "d"))
    return {"case": case, "n": n, "d": d}, exception_models(case, n, d).to_json()


def op_lattice(args):
    _require(args, "gram")
    gram = _matrix(args["gram"], "gram")
    L = lat.Lattice(gram)
    A = lat.discriminant_group(L)
    sig = L.signature()
    result = {
        "rank": L.rank,
        "det": L.det,
        "signature": [sig.pos, sig.neg],
        "even": L.is_even,
        "discriminant_group": {
            "invariant_factors": list(A.invariant_factors),
            "generators": [[_rat_str(x) for x in g] for g in A.generators],
        },
    }
    if L.is_even:
        result["discriminant_group"]["q_values"] = [
            _rat_str(lat.discriminant_form_value(L, g)) for g in A.generators
        ]
    inp = {"gram": gram}
    if args.get("vector") is not None:
        x = _vector(args["vector"], "vector")
        inp["vector"] = x
        info = {
            "square": L.norm(x),
            "divisibility": lat.divisibility(L, x),
            "primitive": lat.is_primitive(L, x),
        }
        if L.norm(x) != 0:
            info["root"] = lat.is_root(L, x)
        result["vector"] = info
    return inp, result


HANDLERS = {
    "isotropy": op_isotropy,
    "modularity": op_modularity,
    "pex": op_pex,
    "wall": op_wall,
    "vertical-wall": op_vertical_wall,
    "effective": op_effective,
    "tables": op_tables,
    "exceptions": op_exceptions,
    "lattice": op_lattice,
}


# -- table rendering --------------------------------------------------------------

def render_csv(table: dict) -> str:
    lines = ["n,d"]
    for n in sorted(table):
        lines.extend(f"{n},{d}" for d in table[n])
    return "\n".join(lines) + "\n"


def render_text(table: dict) -> str:
    rows = [(str(n), ", ".join(map(str, table[n]))) for n in sorted(table) if table[n]]
    if not rows:
        return ""
    width = max(len("n"), *(len(n) for n, _ in rows))
    lines = [f"{'n'.rjust(width)} | d", "-" * width + "-+-" + "-" * 8]
    lines.extend(f"{n.rjust(width)} | {ds}" for n, ds in rows)
    return "\n".join(lines) + "\n"


# -- argument parsing ---------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        code = "UnknownSubcommand" if "invalid choice" in message else "BadArgument"
        raise RequestError(code, message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kummerlat", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="op", required=True, parser_class=_Parser)

    s = sub.add_parser("isotropy", help="isotropy of a diagonal rational form")
    s.add_argument("--coeffs", help="JSON array of integers or 'p/q' strings")
    s.add_argument("--n", type=int)
    s.add_argument("--d", type=int)
    s.add_argument("--variant", choices=("I", "II"))
    s.add_argument("--place", help="prime or 'inf'; omit for isotropy over Q")

    s = sub.add_parser("modularity", help="twisted modularity from an NS Gram matrix")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--gram", required=True)

    s = sub.add_parser("pex", help="stably prime exceptional test in the Mukai lattice")
    s.add_argument("--v", required=True)
    s.add_argument("--w", required=True)

    s = sub.add_parser("wall", help="classify a rank-2 hyperbolic wall lattice")
    s.add_argument("--gram", required=True)
    s.add_argument("--v", required=True)

    s = sub.add_parser("vertical-wall", help="vertical wall report for v = (r, cD, chi), D^2 = 2d")
    for name in ("r", "c", "chi", "d"):
        s.add_argument(f"--{name}", type=int, required=True)

    s = sub.add_parser("effective", help="symplectic effectiveness of a Mukai-lattice isometry")
    s.add_argument("--g")
    s.add_argument("--special", choices=("g2", "g3"))
    s.add_argument("--v", required=True)

    s = sub.add_parser("tables", help="anisotropic (n, d) pairs for the quaternary forms")
    s.add_argument("--variant", choices=("I", "II"), default="I")
    s.add_argument("--nmin", type=int, default=2)
    s.add_argument("--nmax", type=int, default=20)
    s.add_argument("--dmin", type=int, default=1)
    s.add_argument("--dmax", type=int, default=100)
    s.add_argument("--format", choices=("csv", "text", "json"), default="text")
    s.add_argument("--parallel", type=int)

    s = sub.add_parser("exceptions", help="one of the five exceptional NS models, verified")
    s.add_argument("--case", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)

    s = sub.add_parser("lattice", help="invariants of a lattice given by its Gram matrix")
    s.add_argument("--gram", required=True)
    s.add_argument("--vector")
    return p


def _read_request(stdin) -> tuple[str, dict, str]:
    raw = stdin.read()
    try:
        req = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise RequestError("MalformedJSON", f"request is not valid JSON: {exc.msg}") from None
    if not isinstance(req, dict) or not isinstance(req.get("op"), str):
        raise RequestError("MalformedJSON", "request must be an object with a string 'op'")
    args = req.get("args", {})
    if not isinstance(args, dict):
        raise RequestError("MalformedJSON", "'args' must be an object")
    return req["op"], {k.replace("-", "_"): v for k, v in args.items()}, args.get("format", "json")


def _emit(out, payload):
    out.write(json.dumps(payload, sort_keys=True) + "\n")


def run(argv=None, stdin=None, stdout=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    op, inp = None, None
    try:
        if argv:
            ns = build_parser().parse_args(argv)
            op = ns.op
            args = {k: v for k, v in vars(ns).items() if k not in ("op", "format")}
            fmt = getattr(ns, "format", "json")
        else:
            op, args, fmt = _read_request(stdin)
        if op not in HANDLERS:
            raise RequestError("UnknownSubcommand", f"unknown operation {op!r}")
        args = {k: v for k, v in args.items() if v is not None}
        inp = args
        if op == "tables" and fmt in ("csv", "text"):
            variant, nmin, nmax, dmin, dmax, parallel = _scan_args(args)
            table = exceptions_scan(range(nmin, nmax + 1), range(dmin, dmax + 1), variant, parallel)
            stdout.write(render_csv(table) if fmt == "csv" else render_text(table))
            return EXIT_OK
        inp, result = HANDLERS[op](args)
        _emit(stdout, {"op": op, "input": inp, "result": result})
        return EXIT_OK
    except RequestError as exc:
        _emit(stdout, {"op": op, "input": inp, "error": {"code": exc.code, "message": str(exc)}})
        return EXIT_INVALID
    except LatticeError as exc:
        _emit(stdout, {"op": op, "input": inp, "error": {"code": exc.code, "message": str(exc)}})
        return EXIT_INVALID
    except Overflow as exc:
        _emit(stdout, {"op": op, "input": inp, "error": {"code": exc.code, "message": str(exc)}})
        return EXIT_OVERFLOW


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
