"""Command-line front end.

Every command prints one JSON report (or a DOT graph with ``--format dot``).
Exit codes: 0 success, 2 unreadable or invalid input, 3 a mathematical
precondition failed (e.g. a chain between non-comparable congruences).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Callable, Optional

from . import __version__
from .cones import dual_cone, fan_validate, faces, hilbert_basis
from .errors import (ChainDeadEnd, ContextMismatch, ExponentOutsideMonoid, F1ScongError,
                     Inconsistent, MalformedPresentation, MeetsNullIdeal, MonoidAxiomError,
                     NotAFace, NotASubgroupOfFaceLattice, NotContained, NotSaturated,
                     NotVisible, ParseError, ValidationError)
from .io import (NotCanonical, congruence_from, load_json, parse_cone, parse_congruence,
                 parse_context, parse_fan, parse_monoid)
from .lattice import ROOT_SELECTORS
from .monoid import (congruence_closure, is_integral, quotient, root_count_violation)
from .scheme import FanScheme, global_dim, specialization_poset
from .scong import (brute_contains, contains, krull_dim, mspec_enumerate, residue_descriptor,
                    saturated_chain)

INPUT_ERRORS = (ParseError, ValidationError, MalformedPresentation, ExponentOutsideMonoid,
                NotSaturated, NotASubgroupOfFaceLattice, NotAFace, MonoidAxiomError,
                ContextMismatch, IndexError, ValueError)
MATH_ERRORS = (NotContained, ChainDeadEnd, NotCanonical, MeetsNullIdeal, NotVisible,
               Inconsistent)


class Done(Exception):
    """Carries a non-JSON payload (DOT text) out of a command."""

    def __init__(self, text: str):
        self.text = text


# ---------------------------------------------------------------------------
# fan

def _cone_payload(data, fn: Callable):
    if isinstance(data, dict) and "cones" in data:
        fan = parse_fan(data)
        return [fn(c) for c in fan.maximal_cones()]
    return fn(parse_cone(data))


def cmd_fan(args, data):
    if args.action == "validate":
        fan = parse_fan(data)
        violations = fan_validate(fan)
        if violations:
            raise ValidationError("fan axioms violated", violations)
        return {"ok": True, "cones": len(fan.cones),
                "maximal": [c.to_json() for c in fan.maximal_cones()]}
    if args.action == "faces":
        def run(c):
            lat = faces(c)
            return {"cone": c.to_json(), "count": len(lat),
                    "faces": [{"id": f.index, "dim": f.dim, "generators": f.to_json(),
                               "normal": list(f.defining_normal)} for f in lat]}
        return _cone_payload(data, run)
    if args.action == "dual":
        return _cone_payload(data, lambda c: {"cone": c.to_json(),
                                              "dual": dual_cone(c).to_json()})
    if args.action == "hilbert":
        def run(c):
            hb = hilbert_basis(c)
            return {"cone": c.to_json(), "count": len(hb), "hilbert_basis": [list(v) for v in hb]}
        return _cone_payload(data, run)
    raise AssertionError(args.action)


# ---------------------------------------------------------------------------
# scong

def cmd_scong(args, data, extra, fan):
    selector = ROOT_SELECTORS[args.root_selector]
    a = args.action
    if a == "classify":
        _, cls = parse_congruence(data, fan)
        return cls.to_json()
    if a == "height":
        c = congruence_from(data, fan)
        return {"N": c.height_N, "T": c.height_T, "height": c.height}
    if a == "residue":
        c = congruence_from(data, fan)
        torsion, free = residue_descriptor(c)
        return {"torsion": torsion, "free_rank": free}
    if a == "dim":
        ctx = parse_context(data, fan) if "cone" in data else parse_context({"cone": data})
        d, chain = krull_dim(ctx, selector)
        return {"dim": d, "witness_chain": [c.to_json() for c in chain]}
    if a == "mspec":
        ctx = parse_context(data, fan) if "cone" in data else parse_context({"cone": data})
        return {"count": len(ctx.face_lattice),
                "primes": [{"face": f.index, "face_generators": f.to_json(),
                            "generators": [list(g) for g in gens]}
                           for f, gens in mspec_enumerate(ctx)]}
    if extra is None:
        raise ParseError(f"scong {a} needs a second congruence file")
    c1 = congruence_from(data, fan)
    c2 = congruence_from(extra, fan)
    if c1.context != c2.context:
        raise ContextMismatch("the two congruences live on different cones")
    c2 = type(c2)(c1.context, c2.tau, c2.h, c2.chi)
    if a == "contains":
        out = {"contains": contains(c1, c2)}
        if args.check:
            out["brute_contains"] = brute_contains(c1, c2, args.degree_bound)
            out["degree_bound"] = args.degree_bound
        return out
    if a == "chain":
        chain = saturated_chain(c1, c2, selector)
        return {"length": len(chain) - 1, "chain": [c.to_json() for c in chain]}
    raise AssertionError(a)


# ---------------------------------------------------------------------------
# scheme

def cmd_scheme(args, data):
    fs = FanScheme(parse_fan(data))
    if args.action == "dim":
        return global_dim(fs).to_json()
    poset = specialization_poset(fs, args.denom_bound)
    if args.format == "dot":
        raise Done(poset.to_dot())
    return poset.to_json()


# ---------------------------------------------------------------------------
# monoid

def cmd_monoid(args, data, extra):
    m = parse_monoid(data)
    lab = m.labels
    if args.action == "check-integral":
        return {"integral": is_integral(m)}
    if args.action == "check-domain":
        if not is_integral(m):
            return {"domain": False, "reason": "not integral"}
        bad = root_count_violation(m)
        if bad is None:
            return {"domain": True}
        alpha, n, count = bad
        return {"domain": False,
                "witness": {"alpha": lab[alpha], "n": n, "roots": count}}
    if extra is None:
        raise ParseError("monoid quotient needs --pairs")
    pairs = extra["pairs"] if isinstance(extra, dict) else extra
    try:
        idx = [(m.index(str(x)), m.index(str(y))) for x, y in pairs]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad pair list: {exc}") from None
    c = congruence_closure(m, idx)
    q = quotient(m, c)
    return {"classes": [[lab[x] for x in cls] for cls in c.classes], "quotient": q.to_json()}


# ---------------------------------------------------------------------------
# driver

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(f"usage: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="f1scong", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["json", "dot"], default="json")
        sp.add_argument("--denom-bound", type=int, default=1)
        sp.add_argument("--degree-bound", type=int, default=6)
        sp.add_argument("--root-selector", choices=sorted(ROOT_SELECTORS), default="default")
        sp.add_argument("-o", "--output", help="write the report here instead of stdout")

    f = sub.add_parser("fan", help="cones and fans")
    f.add_argument("action", choices=["validate", "faces", "dual", "hilbert"])
    f.add_argument("input")
    common(f)

    s = sub.add_parser("scong", help="strong congruences on an affine toric monoid")
    s.add_argument("action", choices=["classify", "height", "contains", "chain", "dim",
                                      "mspec", "residue"])
    s.add_argument("input")
    s.add_argument("second", nargs="?", help="second congruence (contains, chain)")
    s.add_argument("--fan", help="fan file resolving integer cone references")
    s.add_argument("--check", action="store_true", help="also run the brute-force oracle")
    common(s)

    g = sub.add_parser("scheme", help="glued toric schemes")
    g.add_argument("action", choices=["dim", "poset"])
    g.add_argument("input")
    common(g)

    m = sub.add_parser("monoid", help="finite pointed monoids")
    m.add_argument("action", choices=["check-domain", "check-integral", "quotient"])
    m.add_argument("input")
    m.add_argument("--pairs", help="JSON list of label pairs for quotient")
    common(m)
    return p


def _digest(paths) -> str:
    h = hashlib.sha256()
    for path in paths:
        try:
            h.update(Path(path).read_bytes())
        except OSError:
            h.update(b"<unreadable>")
        h.update(b"\0")
    return h.hexdigest()


def _run(args):
    data = load_json(args.input)
    if args.command == "fan":
        return cmd_fan(args, data)
    if args.command == "scheme":
        return cmd_scheme(args, data)
    if args.command == "monoid":
        extra = load_json(args.pairs) if args.pairs else None
        return cmd_monoid(args, data, extra)
    fan = parse_fan(load_json(args.fan)) if args.fan else None
    extra = load_json(args.second) if args.second else None
    return cmd_scong(args, data, extra, fan)


def _error(exc: Exception) -> dict:
    out = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ValidationError) and exc.violations:
        out["violations"] = exc.violations
    if isinstance(exc, NotCanonical):
        out["classification"] = exc.classification.to_json()
    if isinstance(exc, ChainDeadEnd):
        out["partial_chain"] = [c.to_json() for c in exc.partial_chain]
    return out


def main(argv: Optional[list] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ParseError as exc:
        sys.stdout.write(json.dumps({"error": _error(exc), "version": __version__},
                                    indent=2, sort_keys=True) + "\n")
        return 2
    inputs = [x for x in (args.input, getattr(args, "second", None), getattr(args, "fan", None),
                          getattr(args, "pairs", None)) if x]
    report = {"command": [args.command, args.action] + argv[2:], "input_digest": _digest(inputs),
              "version": __version__}
    start = time.perf_counter()
    code = 0
    text = None
    try:
        report["result"] = _run(args)
    except Done as done:
        text = done.text
    except MATH_ERRORS as exc:
        report["error"] = _error(exc)
        code = 3
    except INPUT_ERRORS as exc:
        report["error"] = _error(exc)
        code = 2
    except F1ScongError as exc:
        report["error"] = _error(exc)
        code = 3
    except (KeyError, TypeError) as exc:
        report["error"] = {"type": "ParseError", "message": f"malformed input: {exc!r}"}
        code = 2
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    if text is None:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
