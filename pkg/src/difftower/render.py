"""Canonical printing of field elements and rendering of solutions.

Numerator and denominator are expanded, scaled to coprime integer
coefficients with a positive leading denominator term, and printed with
terms in descending order where the topmost tower variable is the most
significant.  Output is deterministic, so it can be compared byte for byte.
"""

import json
import math
import re
from fractions import Fraction

from .sequence import product_start
from .tower import PI, SIGMA

_SIMPLE = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*(\([^()]*\))?$")


def _frac(c):
    return Fraction(int(c.numerator), int(c.denominator))


def _sorted_terms(p):
    return sorted(((m, _frac(c)) for m, c in p.terms()), key=lambda mc: tuple(reversed(mc[0])), reverse=True)


def normalized_parts(f):
    """``(numerator_terms, denominator_terms)`` with coprime integer coefficients."""
    num, den = _sorted_terms(f.numer), _sorted_terms(f.denom)
    if not num:
        return [], [((0,) * len(f.field.gens), Fraction(1))]
    scale = math.lcm(*(c.denominator for _, c in num + den))
    g = math.gcd(*(int(c * scale) for _, c in num + den))
    k = Fraction(scale, g)
    if den[0][1] < 0:
        k = -k
    return [(m, c * k) for m, c in num], [(m, c * k) for m, c in den]


def _power(name, e):
    if e == 1:
        return name
    base = name if _SIMPLE.match(name) else f"({name})"
    return f"{base}^{e}"


def _term(monom, c, names):
    factors = [_power(names[i], e) for i, e in enumerate(monom) if e]
    mono = "*".join(factors)
    mag = abs(c)
    sign = "-" if c < 0 else ""
    if not mono:
        return sign + str(mag)
    if mag == 1:
        return sign + mono
    return f"{sign}{mag}*{mono}"


def _poly_str(terms, names):
    out = ""
    for i, (m, c) in enumerate(terms):
        t = _term(m, c, names)
        if i and not t.startswith("-"):
            out += "+"
        out += t
    return out or "0"


def _is_one(terms):
    return len(terms) == 1 and not any(terms[0][0]) and terms[0][1] == 1


def canonical(tower, f, names=None):
    """Deterministic text of a field element; ``names`` overrides variable display names."""
    f = tower.element(f)
    if names is None:
        names = list(tower.field.symbols) if not tower.names else tower.names
        names = [str(n) for n in names]
    num, den = normalized_parts(f)
    ns = _poly_str(num, names)
    if _is_one(den):
        return ns
    ds = _poly_str(den, names)
    if len(num) > 1:
        ns = f"({ns})"
    if len(den) > 1 or (den[0][1] != 1 and any(den[0][0])):
        ds = f"({ds})"
    return f"{ns}/{ds}"


def plain(tower, f):
    """Canonical text with the tower's own variable names (parseable back)."""
    return canonical(tower, f)


def _grouped(s):
    """Wrap a rendered expression in parentheses when it is a sum."""
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return f"({s})"
    return s


class SequenceNames:
    """How tower variables read as sequences in the index ``n``.

    The shift variable prints as the index itself, a product variable whose
    multiplier is ``index + 1`` with matching initial value prints as a
    factorial, and every other variable ``NAME`` prints as ``NAME(n)``.
    """

    def __init__(self, tower, model):
        self.tower = tower
        self.model = model
        self.index_level = None
        self.factorial_level = None
        for lev, m in enumerate(tower.monomials, start=1):
            if self.index_level is None and m.kind == SIGMA and m.beta == tower.field.one:
                if model.value(lev, model.start(lev)) == model.start(lev):
                    self.index_level = lev
        if self.index_level is not None:
            x = tower.gen(self.index_level)
            for lev, m in enumerate(tower.monomials, start=1):
                if m.kind == PI and m.alpha == x + 1:
                    s = model.start(lev)
                    if s >= 0 and model.value(lev, s) == math.factorial(s):
                        self.factorial_level = lev
                        break

    def names(self, idx):
        out = []
        for lev, name in enumerate(self.tower.names, start=1):
            if lev == self.index_level:
                out.append(idx)
            elif lev == self.factorial_level:
                out.append(f"{idx}!")
            else:
                out.append(f"{name}({idx})")
        return out


def _const_str(c):
    s = str(c)
    return s if c > 0 and c.denominator == 1 else f"({s})"


def family_terms(tower, model, family, horizon=30, order=0):
    """Render each basis element of a hypergeometric family as a sequence in ``n``.

    Returns ``(lam, texts)`` where ``lam`` is the product lower limit.
    """
    F = tower.field
    w = tower.sigma(family.u, -1)
    lam = product_start(model, w, family.basis, horizon + order)
    sn = SequenceNames(tower, model)
    num_c, num_f = w.numer.factor_list()
    den_c, den_f = w.denom.factor_list()
    const = _frac(num_c) / _frac(den_c)
    moved = F.one
    rest = F.one
    R1 = F.ring.one
    for g, e in [(g, e) for g, e in num_f] + [(g, -e) for g, e in den_f]:
        g = F.new(g, R1)
        if lam == 1 and sn.factorial_level and g == tower.gen(sn.index_level):
            moved *= tower.gen(sn.factorial_level) ** e
        else:
            rest *= g ** e
    texts = []
    for v in family.basis:
        parts = []
        vv = v * moved
        vs = canonical(tower, vv, sn.names("n"))
        if vs != "1":
            parts.append(_grouped(vs))
        if const != 1:
            exp = "n" if lam == 1 else f"(n-{lam - 1})" if lam > 1 else f"(n+{1 - lam})"
            parts.append(f"{_const_str(const)}^{exp}")
        if rest != F.one:
            parts.append(f"prod(l={lam}..n,{canonical(tower, rest, sn.names('l'))})")
        texts.append("*".join(parts) or "1")
    return lam, texts


def family_record(tower, model, family, horizon=30, order=0):
    lam, texts = family_terms(tower, model, family, horizon, order)
    return {
        "u": plain(tower, family.u),
        "basis": [plain(tower, v) for v in family.basis],
        "lambda": lam,
        "render": texts,
        "provenance": {
            "a": plain(tower, family.a) if family.a is not None else "1",
            "b": plain(tower, family.b) if family.b is not None else "1",
            "lower": plain(tower, family.lower) if family.lower is not None else plain(tower, family.u),
        },
    }


def render_solution(tower, model, solution, fmt="text", horizon=30, order=0):
    """Text or JSON for one hypergeometric family or one PLDE basis."""
    from .hyper import HyperSolution

    if isinstance(solution, HyperSolution):
        rec = family_record(tower, model, solution, horizon, order)
        if fmt == "json":
            return json.dumps(rec, sort_keys=True)
        return "\n".join(rec["render"])
    vecs = [{"g": plain(tower, g), "c": [str(Fraction(_frac(c))) for c in cs]} for g, cs in solution]
    if fmt == "json":
        return json.dumps({"basis": vecs}, sort_keys=True)
    return "\n".join(f"g = {v['g']}; c = ({', '.join(v['c'])})" for v in vecs)
