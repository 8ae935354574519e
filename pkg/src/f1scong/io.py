"""JSON readers for cones, fans, monoids and congruence files."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

from .cones import Cone, Fan
from .errors import F1ScongError, ParseError
from .lattice import QmodZ
from .monoid import FiniteMonoid
from .scong import (FCongruence, MonomialTerm, Presentation, ToricContext, classify_affine,
                    classify_torus, make_congruence, Classification)


def load_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _int_rows(rows, what: str) -> list[tuple]:
    if not isinstance(rows, list):
        raise ParseError(f"{what} must be a list of integer vectors")
    out = []
    for r in rows:
        if not isinstance(r, list) or not all(isinstance(x, int) and not isinstance(x, bool)
                                              for x in r):
            raise ParseError(f"{what}: {r!r} is not an integer vector")
        out.append(tuple(r))
    return out


def parse_cone(data) -> Cone:
    """``{"rank": n, "generators": [[...], ...]}`` or a bare nonempty list of generators."""
    if isinstance(data, list):
        gens = _int_rows(data, "generators")
        if not gens:
            raise ParseError("a bare generator list must be nonempty; give a rank")
        rank = len(gens[0])
    elif isinstance(data, dict):
        gens = _int_rows(data.get("generators", []), "generators")
        rank = data.get("rank", len(gens[0]) if gens else None)
        if not isinstance(rank, int) or rank < 1:
            raise ParseError("cone needs a positive integer rank")
    else:
        raise ParseError("cone must be an object or a list")
    if any(len(g) != rank for g in gens):
        raise ParseError("generator length differs from rank")
    return Cone(gens, rank)


def parse_fan(data) -> Fan:
    """``{"rank": n, "cones": [[gens...], ...]}``; cones are closed under faces."""
    if not isinstance(data, dict) or "cones" not in data:
        raise ParseError('fan file needs "rank" and "cones"')
    rank = data.get("rank")
    if not isinstance(rank, int) or rank < 1:
        raise ParseError("fan needs a positive integer rank")
    cones = [parse_cone({"rank": rank, "generators": c}) for c in data["cones"]]
    if data.get("closed", False):
        return Fan(rank, cones)
    return Fan.from_maximal(rank, cones)


def parse_monoid(data) -> FiniteMonoid:
    if not isinstance(data, dict):
        raise ParseError("monoid file must be an object")
    return FiniteMonoid.from_json(data)


def _parse_angle(text) -> QmodZ:
    try:
        return QmodZ(str(text))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad angle {text!r}") from None


def parse_term(data, rank: int) -> Optional[MonomialTerm]:
    if data == "zero" or data == 0:
        return None
    if not isinstance(data, dict) or "exp" not in data:
        raise ParseError(f'term {data!r} must be "zero" or {{"coeff", "exp"}}')
    exp = _int_rows([data["exp"]], "exp")[0]
    if len(exp) != rank:
        raise ParseError(f"exponent {list(exp)} has the wrong length")
    return MonomialTerm(_parse_angle(data.get("coeff", "0/1")), exp)


def parse_context(data, fan: Optional[Fan] = None) -> ToricContext:
    spec = data.get("cone") if isinstance(data, dict) else None
    if spec is None:
        raise ParseError('congruence file needs "cone"')
    if isinstance(spec, int) and not isinstance(spec, bool):
        if fan is None:
            raise ParseError("a cone index needs --fan")
        if not 0 <= spec < len(fan.cones):
            raise ParseError(f"fan has no cone {spec}")
        return ToricContext(fan.cones[spec])
    sigma = parse_cone(spec)
    if not sigma.is_strongly_convex():
        raise ParseError("cone must be strongly convex")
    return ToricContext(sigma)


def parse_presentation(data, ctx: ToricContext) -> Presentation:
    rels = []
    for r in data.get("relations", []):
        if not isinstance(r, dict) or "a" not in r or "b" not in r:
            raise ParseError('each relation needs "a" and "b"')
        rels.append((parse_term(r["a"], ctx.rank), parse_term(r["b"], ctx.rank)))
    return Presentation(ctx, rels)


def classify(p: Presentation) -> Classification:
    ctx = p.context
    if ctx.is_torus:
        return classify_torus(p)
    if ctx.is_orthant:
        return classify_affine(p)
    raise ParseError("relations can only be classified on a torus or an orthant; "
                     "give canonical data (tau, h, chi) for other cones")


def parse_congruence(data, fan: Optional[Fan] = None):
    """Either canonical data ``{"tau", "h", "chi"}`` or a presentation.

    Returns ``(context, Classification)``.
    """
    ctx = parse_context(data, fan)
    if "relations" in data:
        return ctx, classify(parse_presentation(data, ctx))
    if "tau" not in data:
        raise ParseError('congruence file needs "relations" or "tau"')
    h = _int_rows(data.get("h", []), "h")
    chi = [_parse_angle(x) for x in data.get("chi", [])]
    tau = data["tau"]
    if isinstance(tau, list):
        tau = parse_cone({"rank": ctx.rank, "generators": tau})
    elif not isinstance(tau, int):
        raise ParseError("tau must be a face index or a generator list")
    c = make_congruence(ctx, tau, h, None)
    if len(chi) != c.h.rank:
        raise ParseError("chi needs one value per basis vector of h")
    return ctx, Classification("Canonical", make_congruence(ctx, c.tau, c.h, chi), "given")


def congruence_from(data, fan=None) -> FCongruence:
    """Like ``parse_congruence`` but requires a canonical result."""
    _, cls = parse_congruence(data, fan)
    if cls.congruence is None:
        raise NotCanonical(cls)
    return cls.congruence


class NotCanonical(F1ScongError):
    def __init__(self, classification: Classification):
        super().__init__(f"{classification.verdict}: {classification.reason}")
        self.classification = classification
