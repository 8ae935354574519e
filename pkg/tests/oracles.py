"""Independent checks shared by the unit and acceptance suites."""

from __future__ import annotations

from math import gcd
from functools import reduce

from f1scong.lattice import QmodZ
from f1scong.monoid import FiniteMonoid, congruence_closure, is_domain, quotient, truncated_algebra
from f1scong.scong import FCongruence, MonomialTerm, member


def lcm_of_denominators(c: FCongruence) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), (v.denominator for v in c.chi.values), 1)


def unit_part(m: FiniteMonoid) -> FiniteMonoid:
    """The submonoid of units together with zero."""
    keep = sorted(set(m.units()) | {m.zero})
    pos = {x: i for i, x in enumerate(keep)}
    mult = [[pos[m.mul(a, b)] for b in keep] for a in keep]
    return FiniteMonoid(mult, pos[m.zero], pos[m.one], [m.labels[x] for x in keep], check=False)


def truncation_check(c: FCongruence, degree_bound: int, mu_order: int = None) -> dict:
    """Compare ``member`` with congruence closure on a truncation of ``mu_m[S_sigma]``.

    The generating pairs are every pair ``member`` accepts inside the
    truncation.  Returns counts and the list of pairs that ``member`` rejects
    but the closure joins outside the zero class (which must be empty).
    """
    m = mu_order or lcm_of_denominators(c)
    t = truncated_algebra(c.context.sigma, m, degree_bound)
    terms = [None] + [MonomialTerm(QmodZ(k, m), s) for s in t.exponents for k in range(m)]
    ids = [t.monoid.zero] + [t.element(x.coeff, x.exponent) for x in terms[1:]]
    verdicts = {}
    pairs = []
    for i, a in enumerate(terms):
        for j in range(i, len(terms)):
            v = member(c, a, terms[j])
            verdicts[(ids[i], ids[j])] = v
            if v:
                pairs.append((ids[i], ids[j]))
    closure = congruence_closure(t.monoid, pairs)
    zero_class = closure.partition[t.monoid.zero]
    conflicts = [(a, b) for (a, b), v in verdicts.items()
                 if not v and closure.related(a, b) and closure.partition[a] != zero_class]
    checked = sum(1 for (a, b), v in verdicts.items()
                  if not v and closure.partition[a] != zero_class)
    q = quotient(t.monoid, closure)
    return {"conflicts": conflicts, "checked": checked, "collapsed": closure.is_total,
            "quotient": q, "unit_domain": closure.is_total or is_domain(unit_part(q))}
