"""Exact arithmetic over rational function fields Q(x_1, ..., x_e).

Elements are sympy ``FracElement`` values of one shared field whose
generators are the tower variables in tower order.  Level ``i`` means the
subfield Q(x_1, ..., x_i); its top variable is generator ``i - 1``.
A "polynomial in the top variable" is a field element whose denominator
does not involve that variable.
"""

from dataclasses import dataclass
from itertools import product

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import ring

from .errors import FactorizationError


def level_of(f):
    """Smallest level containing ``f`` (0 for rational constants)."""
    lev = 0
    for p in (f.numer, f.denom):
        for i, d in enumerate(p.degrees()):
            if d > 0 and i + 1 > lev:
                lev = i + 1
    return lev


def is_constant(f):
    return f.numer.is_ground and f.denom.is_ground


def constant_value(f):
    """The rational number represented by a constant field element."""
    return QQ(f.numer.LC) / QQ(f.denom.LC) if f.numer else QQ(0)


def normalize(num, den):
    """Reduced quotient ``num/den`` of two polynomials of the field's ring.

    Equal quotients always produce identical representations.
    """
    if not den:
        raise ZeroDivisionError("division by zero")
    field = _field_of_ring(num.ring)
    return field.new(num, den)


_FIELDS = {}


def _field_of_ring(R):
    from sympy.polys.fields import FracField
    key = (R.symbols, R.domain, R.order)
    if key not in _FIELDS:
        _FIELDS[key] = FracField(R.symbols, R.domain, R.order)
    return _FIELDS[key]


def is_poly_in(f, level):
    """True when ``f`` is a polynomial in the top variable of ``level``."""
    return level == 0 or f.denom.degree(level - 1) <= 0


def degree(f, level):
    """Degree in the top variable of ``level`` (``-1`` for zero)."""
    if not f.numer:
        return -1
    if level == 0:
        return 0
    return max(f.numer.degree(level - 1), 0)


def t_coeffs(f, level):
    """Coefficients of ``f`` in the top variable as ``{exponent: element}``.

    ``f`` must be polynomial in that variable.  The returned elements belong
    to the level below.
    """
    if not f.numer:
        return {}
    if level == 0:
        return {0: f}
    v = level - 1
    if f.denom.degree(v) > 0:
        raise ValueError("not a polynomial in the top variable")
    field = f.field
    R = field.ring
    groups = {}
    for monom, c in f.numer.terms():
        j = monom[v]
        m = monom[:v] + (0,) + monom[v + 1:]
        groups.setdefault(j, []).append((m, c))
    out = {}
    for j, terms in groups.items():
        out[j] = field.new(R.from_terms(terms), f.denom)
    return out


def from_t_coeffs(coeffs, level, field):
    """Inverse of :func:`t_coeffs`."""
    t = field.gens[level - 1] if level else None
    acc = field.zero
    for j, c in coeffs.items():
        if c:
            acc += c * t ** j if j else c
    return acc


def lead_coeff(f, level):
    """Leading coefficient in the top variable (an element of the level below)."""
    if not f.numer:
        return f
    if level == 0:
        return f
    v = level - 1
    d = f.numer.degree(v)
    return f.field.new(f.numer.coeff_wrt(v, d), f.denom)


def monic(f, level):
    if not f.numer:
        return f
    return f / lead_coeff(f, level)


def poly_gcd(p, q, level):
    """Monic gcd in the top variable of two polynomials over the level below."""
    field = p.field
    if not p.numer:
        return monic(q, level) if q.numer else field.zero
    if not q.numer:
        return monic(p, level)
    if level == 0:
        return field.one
    g = p.numer.gcd(q.numer)
    if g.degree(level - 1) <= 0:
        return field.one
    return monic(field.new(g, field.ring.one), level)


def poly_divmod(p, q, level):
    """Quotient and remainder of ``p`` by ``q`` in the top variable."""
    field = p.field
    if not q.numer:
        raise ZeroDivisionError("division by zero")
    a = t_coeffs(p, level)
    b = t_coeffs(q, level)
    db = max(b)
    lb = b[db]
    quo = {}
    while a and max(a) >= db:
        da = max(a)
        c = a[da] / lb
        quo[da - db] = c
        for j, bj in b.items():
            k = j + da - db
            val = a.get(k, field.zero) - c * bj
            if val:
                a[k] = val
            else:
                a.pop(k, None)
        a.pop(da, None)
    return from_t_coeffs(quo, level, field), from_t_coeffs(a, level, field)


def divides(q, p, level):
    return not poly_divmod(p, q, level)[1]


def resultant(p, q, level):
    """Resultant with respect to the top variable; an element one level lower."""
    from sympy import resultant as _res
    field = p.field
    t = field.symbols[level - 1]
    num = _res(p.as_expr(), q.as_expr(), t)
    return field.from_expr(num)


@dataclass(frozen=True)
class Factorization:
    """``unit * prod(f**m for f, m in factors)`` with monic, pairwise coprime factors."""

    unit: object
    factors: tuple
    level: int

    def expand(self):
        acc = self.unit
        for f, m in self.factors:
            acc = acc * f ** m
        return acc

    def __len__(self):
        return len(self.factors)


def _split_factor_list(f, level, pairs, content):
    field = f.field
    unit = field(content) / field.new(f.denom, field.ring.one)
    out = {}
    v = level - 1
    for g, m in pairs:
        ge = field.new(g, field.ring.one)
        if g.degree(v) <= 0:
            unit *= ge ** m
            continue
        lc = lead_coeff(ge, level)
        unit *= lc ** m
        key = ge / lc
        out[key] = out.get(key, 0) + m
    factors = tuple(sorted(out.items(), key=lambda fm: (degree(fm[0], level), str(fm[0]))))
    return Factorization(unit, factors, level)


_factor_memo = {}


def factor_top(f, level):
    """Irreducible factorization in the top variable over the level below."""
    if not f.numer:
        raise ValueError("cannot factor zero")
    if level == 0 or f.numer.degree(level - 1) <= 0:
        return Factorization(f, (), level)
    key = (f.field, f, level)
    hit = _factor_memo.get(key)
    if hit is not None:
        return hit
    content, pairs = f.numer.factor_list()
    result = _split_factor_list(f, level, pairs, content)
    if result.expand() != f:
        raise FactorizationError("factorization incomplete")
    if len(_factor_memo) > 50000:
        _factor_memo.clear()
    _factor_memo[key] = result
    return result


def factor_element(f, level):
    """Factor a nonzero field element in the top variable, exponents may be negative."""
    if not f.numer:
        raise ValueError("cannot factor zero")
    field = f.field
    one = field.ring.one
    num = factor_top(field.new(f.numer, one), level)
    den = factor_top(field.new(f.denom, one), level)
    exps = dict(num.factors)
    for p, e in den.factors:
        exps[p] = exps.get(p, 0) - e
    factors = tuple(sorted(((p, e) for p, e in exps.items() if e),
                           key=lambda fm: (degree(fm[0], level), str(fm[0]))))
    return Factorization(num.unit / den.unit, factors, level)


def squarefree_decomposition(f, level):
    """Square-free parts ``(part, multiplicity)``; parts are monic and pairwise coprime."""
    if not f.numer:
        raise ValueError("cannot decompose zero")
    if level == 0 or f.numer.degree(level - 1) <= 0:
        return Factorization(f, (), level)
    content, pairs = f.numer.sqf_list()
    return _split_factor_list(f, level, pairs, content)


def monic_divisors(fact):
    """Lazily enumerate every monic divisor of a factorization, starting with 1."""
    one = fact.unit.field.one
    ranges = [range(m + 1) for _, m in fact.factors]
    for exps in product(*ranges):
        d = one
        for (g, _), e in zip(fact.factors, exps):
            if e:
                d = d * g ** e
        yield d


_Z = ring("z", QQ)


def _univariate(coeffs):
    R, z = _Z
    return R.from_dict({(i,): QQ.convert(c) for i, c in enumerate(coeffs) if c})


def rational_roots(coeffs):
    """Distinct rational roots of ``sum(coeffs[i] * z**i)``."""
    p = _univariate(coeffs)
    if not p:
        raise ValueError("zero polynomial")
    roots = set()
    _, fl = p.factor_list()
    for g, _ in fl:
        if g.degree() == 1:
            c1 = g.coeff_wrt(0, 1)
            c0 = g.coeff_wrt(0, 0)
            roots.add(-QQ(c0.LC if c0 else 0) / QQ(c1.LC))
    return roots


def integer_roots(coeffs):
    return {int(r.numerator) for r in rational_roots(coeffs) if r.denominator == 1}


def rational_relations(vectors):
    """Q-basis of all ``lam`` with ``sum(lam[s] * vectors[s]) == 0``.

    Each vector is a sequence of field elements of equal length.  Returns a
    list of coefficient lists over ``QQ``.
    """
    n = len(vectors)
    if n == 0:
        return []
    width = len(vectors[0])
    rows = []
    for k in range(width):
        entries = [v[k] for v in vectors]
        nz = [e for e in entries if e.numer]
        if not nz:
            continue
        den = nz[0].denom
        for e in nz[1:]:
            den = den.lcm(e.denom)
        coeffs = {}
        for s, e in enumerate(entries):
            if not e.numer:
                continue
            q = den.exquo(e.denom)
            for monom, c in (e.numer * q).terms():
                coeffs.setdefault(monom, {})[s] = c
        for row in coeffs.values():
            rows.append([QQ(row.get(s, 0)) for s in range(n)])
    return nullspace(rows, n)


def nullspace(rows, n):
    """Rational nullspace basis of a matrix given as row lists with ``n`` columns."""
    if not rows:
        return [[QQ(1) if i == j else QQ(0) for j in range(n)] for i in range(n)]
    M = DomainMatrix([list(r) for r in rows], (len(rows), n), QQ)
    N = M.nullspace()
    out = []
    for r in N.to_list():
        out.append([QQ(c) for c in r])
    return out


def ratq(c):
    """Coerce ints, Fractions and mpq values to ``QQ``."""
    if hasattr(c, "numerator") and hasattr(c, "denominator"):
        return QQ(int(c.numerator), int(c.denominator))
    return QQ(c)
