"""Shift equivalence, spread, regularity problems and multiplicative orbit lattices.

Everything recurses down the tower to Q, where the automorphism is the
identity and the questions become integer arithmetic.
"""

import math
from dataclasses import dataclass

import sympy
from sympy.polys.domains import QQ

from .algebra import (constant_value, degree, factor_element, factor_top, level_of, monic,
                      t_coeffs)
from .errors import DiffTowerError, RegularityBoundError
from .lattice import hermite_basis, integer_kernel
from .tower import PI, SIGMA


@dataclass(frozen=True)
class Progression:
    """The integers ``start + k*period`` for all ``k`` (``period > 0``)."""

    start: int
    period: int

    def __contains__(self, m):
        return (m - self.start) % self.period == 0


@dataclass(frozen=True)
class SpreadResult:
    """``{m >= 0 : gcd(a, sigma**m(b)) != 1}``.

    Finite sets live in ``elements``.  Infinite spreads add ``progressions``
    whose nonnegative members all belong to the set.
    """

    elements: tuple = ()
    progressions: tuple = ()

    @property
    def finite(self):
        return not self.progressions

    @property
    def empty(self):
        return not self.elements and not self.progressions

    def __contains__(self, m):
        return m >= 0 and (m in self.elements or any(m in p for p in self.progressions))

    def minimum(self):
        cands = list(self.elements) + [p.start % p.period for p in self.progressions]
        return min(cands) if cands else None

    def dispersion(self):
        if self.progressions:
            return math.inf
        return max(self.elements) if self.elements else -1


@dataclass
class OrbitModule:
    """Z-basis of the exponent vectors ``e`` with ``prod(f_i**e_i) = sigma(g)/g``."""

    generators: list
    witnesses: list


@dataclass
class GammaResult:
    """Solutions ``gamma`` of ``u**gamma = v*sigma(w)/w``: ``start + k*period`` (period 0: just ``start``)."""

    start: int = None
    period: int = 0
    witness: object = None

    @property
    def empty(self):
        return self.start is None

    def values(self):
        if self.empty:
            return set()
        if self.period:
            raise ValueError("infinitely many solutions")
        return {self.start}

    def __contains__(self, g):
        if self.empty:
            return False
        if self.period:
            return (g - self.start) % self.period == 0
        return g == self.start


@dataclass
class RadicalResult:
    radical: bool
    power: int = None
    witness: object = None

    def __bool__(self):
        return self.radical


def _cache(tower, name):
    c = getattr(tower, "_eq_caches", None)
    if c is None:
        c = tower._eq_caches = {}
    return c.setdefault(name, {})


def _as_int(q):
    q = QQ(q)
    return int(q.numerator) if q.denominator == 1 else None


# -- shift equivalence ------------------------------------------------------

def shift_equivalent(tower, p, q, level=None):
    """``m`` with ``sigma**m(p)`` associate to ``q``.

    Returns an ``int``, ``None`` when no such ``m`` exists, or a
    :class:`Progression` when ``p`` is semiperiodic (all matching ``m``).
    """
    p, q = tower.element(p), tower.element(q)
    if level is None:
        level = max(level_of(p), level_of(q))
    if level == 0:
        return 0 if p == q else None
    cache = _cache(tower, "se")
    raw = (p, q, level)
    if raw in cache:
        return cache[raw]
    if degree(p, level) != degree(q, level):
        cache[raw] = None
        return None
    p, q = monic(p, level), monic(q, level)
    if degree(p, level) == 0:
        return 0 if p == q else None
    key = (p, q, level)
    if key in cache:
        cache[raw] = cache[key]
        return cache[key]
    kind = tower.kind(level)
    if kind == SIGMA:
        res = _se_sum(tower, p, q, level)
    elif kind == PI:
        res = _se_product(tower, p, q, level)
    else:
        res = _se_affine(tower, p, q, level)
    cache[key] = cache[raw] = res
    return res


def _verify_shift(tower, p, q, m, level):
    return m is not None and monic(tower.sigma(p, m), level) == q


def _se_sum(tower, p, q, level):
    F = tower.field
    d = degree(p, level)
    pc, qc = t_coeffs(p, level), t_coeffs(q, level)
    p1, q1 = pc.get(d - 1, F.zero), qc.get(d - 1, F.zero)
    beta = tower.monomial(level).beta
    # sigma**m(d*t + p1) must equal d*t + q1
    f = tower.sigma(p1) - p1 + d * beta
    g = q1 - p1
    if not f:
        raise DiffTowerError(f"shift of {tower.names[level - 1]} telescopes")
    if level_of(f) == 0:
        if level_of(g) != 0:
            return None
        m = _as_int(constant_value(g) / constant_value(f))
    else:
        m = shift_solve(tower, f, f + tower.sigma(g) - g)
    return m if _verify_shift(tower, p, q, m, level) else None


def _se_product(tower, p, q, level):
    t = tower.gen(level)
    if p == t or q == t:
        return Progression(0, 1) if p == q else None
    d = degree(p, level)
    alpha = tower.monomial(level).alpha
    pc, qc = t_coeffs(p, level), t_coeffs(q, level)
    for j in range(d):
        pj = pc.get(j)
        if pj is None:
            continue
        u = tower.sigma(pj) / (pj * alpha ** (d - j))
        if u != 1:
            break
    else:
        raise RegularityBoundError("regularity bound unavailable")
    qj = qc.get(j)
    if qj is None:
        return None
    m = pi_regularity(tower, u, qj / pj)
    if m is None:
        u2 = tower.sigma(qj) / (qj * alpha ** (d - j))
        m2 = pi_regularity(tower, u2, pj / qj)
        m = -m2 if m2 is not None else None
    return m if _verify_shift(tower, p, q, m, level) else None


def _rational_log(a, b):
    """Integer ``k`` with ``a**k == b`` for rational ``|a| != 1``, or None."""
    if b == 1:
        return 0

    def height(c):
        return max(abs(int(c.numerator)), int(c.denominator))

    ha, hb = height(a), height(b)
    k, pw = 1, a
    while height(pw) <= hb and ha > 1:
        if pw == b:
            return k
        if 1 / pw == b:
            return -k
        k += 1
        pw *= a
    return None


def _se_affine(tower, p, q, level):
    m_ = tower.monomial(level)
    alpha, beta = constant_value(m_.alpha), constant_value(m_.beta)
    d = degree(p, level)
    pc = {j: constant_value(c) for j, c in t_coeffs(p, level).items()}
    qc = {j: constant_value(c) for j, c in t_coeffs(q, level).items()}
    if alpha == 1:
        g = qc.get(d - 1, QQ(0)) - pc.get(d - 1, QQ(0))
        m = _as_int(g / (d * beta))
        return m if _verify_shift(tower, p, q, m, level) else None
    c = beta / (1 - alpha)

    def recentre(cs):
        out = [QQ(0)] * (d + 1)
        for j, a in cs.items():
            for i in range(j + 1):
                out[i] += a * sympy.binomial(j, i) * c ** (j - i)
        return out

    ps, qs = recentre(pc), recentre(qc)
    if all(not x for x in ps[:d]) or all(not x for x in qs[:d]):
        if ps == qs:
            return Progression(0, 1)
        return None
    j = next(i for i in range(d) if ps[i])
    if not qs[j]:
        return None
    ratio = qs[j] / ps[j]
    if alpha == -1:
        hits = [m for m in (0, 1) if _verify_shift(tower, p, q, m, level)]
        if len(hits) == 2:
            return Progression(0, 1)
        return Progression(hits[0], 2) if hits else None
    k = _rational_log(alpha, ratio)
    if k is None or k % (j - d):
        return None
    m = k // (j - d)
    return m if _verify_shift(tower, p, q, m, level) else None


def shift_solve(tower, f, F):
    """An integer ``m`` with ``sigma**m(f) == F`` for non-periodic ``f``, else None."""
    f, F = tower.element(f), tower.element(F)
    if f == F:
        return 0
    lev = level_of(f)
    if lev == 0 or level_of(F) != lev or not F:
        return None
    kind = tower.kind(lev)
    t = tower.gen(lev)
    ff = factor_element(f, lev)
    cands = [(p, e) for p, e in ff.factors if not (kind == PI and p == t)]
    if cands:
        p, e = cands[0]
        seen = set()
        for q, e2 in factor_element(F, lev).factors:
            if e2 != e or degree(q, lev) != degree(p, lev):
                continue
            m = shift_equivalent(tower, p, q, lev)
            if isinstance(m, int) and m not in seen:
                seen.add(m)
                if tower.sigma(f, m) == F:
                    return m
        return None
    k = dict(ff.factors).get(t, 0)
    c = ff.unit
    c2 = F / t ** k
    if level_of(c2) >= lev:
        return None
    alpha_k = tower.monomial(lev).alpha ** k
    m = pi_regularity(tower, tower.sigma(c) * alpha_k / c, c2 / c)
    if m is None:
        m2 = pi_regularity(tower, tower.sigma(c2) * alpha_k / c2, c / c2)
        m = -m2 if m2 is not None else None
    if m is not None and tower.sigma(f, m) == F:
        return m
    return None


# -- regularity ---------------------------------------------------------------

def _power_product(tower, u, m, r):
    acc = tower.field.one
    for i in range(m):
        acc *= tower.sigma(u, r * i)
    return acc


def pi_regularity(tower, u, g, r=1):
    """Smallest ``m >= 0`` with ``prod(sigma**(r*i)(u) for i < m) == g``, or None."""
    u, g = tower.element(u), tower.element(g)
    if not u or not g:
        raise ValueError("arguments must be nonzero")
    if r == 0:
        raise ValueError("r must be nonzero")
    if g == 1:
        return 0
    lev = max(level_of(u), level_of(g))
    if lev == 0:
        return _pi_regularity_rational(constant_value(u), constant_value(g))
    if level_of(u) < lev:
        return None
    kind = tower.kind(lev)
    t = tower.gen(lev)
    fu = factor_element(u, lev)
    classed = [p for p, _ in fu.factors if not (kind == PI and p == t)]
    fg = factor_element(g, lev)
    if classed:
        rep = classed[0]

        def indices(fact):
            out = []
            for p, _ in fact.factors:
                if kind == PI and p == t:
                    continue
                s = shift_equivalent(tower, rep, p, lev)
                if isinstance(s, Progression):
                    raise RegularityBoundError("regularity bound unavailable")
                if s is not None:
                    out.append(s)
            return out

        iu, ig = indices(fu), indices(fg)
        if not ig:
            return None
        pick = max if r > 0 else min
        num = pick(ig) - pick(iu)
        if num % r:
            return None
        m = num // r + 1
    else:
        a = dict(fu.factors).get(t, 0)
        eg = dict(fg.factors).get(t, 0)
        if a == 0 or eg % a:
            return None
        m = eg // a
    if m < 1:
        return None
    return m if _power_product(tower, u, m, r) == g else None


def _pi_regularity_rational(u, g):
    if u == 1:
        return None
    if u == -1:
        return 1 if g == -1 else None
    k = _rational_log(u, g)
    return k if k is not None and k >= 1 else None


def sigma_regularity(tower, f, g, r=1):
    """``n >= 0`` with ``sum(sigma**(r*i)(f) for i in range(n + 1)) == g``, or None."""
    f, g = tower.element(f), tower.element(g)
    if not f or not g:
        raise ValueError("arguments must be nonzero")
    if r == 0:
        raise ValueError("r must be nonzero")
    if level_of(f) == 0:
        if level_of(g) != 0:
            return None
        k = _as_int(constant_value(g) / constant_value(f))
        n = k - 1 if k is not None and k >= 1 else None
    else:
        m = shift_solve(tower, f, f + tower.sigma(g, r) - g)
        if m is None or m % r or m // r < 1:
            return None
        n = m // r - 1
    if n is None:
        return None
    acc = tower.field.zero
    for i in range(n + 1):
        acc += tower.sigma(f, r * i)
    return n if acc == g else None


# -- spread and dispersion ------------------------------------------------------

def spread(tower, a, b, level=None):
    a, b = tower.element(a), tower.element(b)
    if not a or not b:
        raise ValueError("arguments must be nonzero")
    if level is None:
        level = max(level_of(a), level_of(b))
    if level == 0:
        return SpreadResult()
    cache = _cache(tower, "spread")
    key = (a, b, level)
    if key not in cache:
        cache[key] = _spread(tower, a, b, level)
    return cache[key]


def _spread(tower, a, b, level):
    fa, fb = factor_top(a, level), factor_top(b, level)
    elems, progs = set(), set()
    for q, _ in fb.factors:
        for p, _ in fa.factors:
            m = shift_equivalent(tower, q, p, level)
            if isinstance(m, Progression):
                progs.add(Progression(m.start % m.period, m.period))
            elif m is not None and m >= 0:
                elems.add(m)
    elems = {m for m in elems if not any(m in pr for pr in progs)}
    return SpreadResult(tuple(sorted(elems)), tuple(sorted(progs, key=lambda p: (p.period, p.start))))


def dispersion(tower, a, b, level=None):
    return spread(tower, a, b, level).dispersion()


# -- orbit lattices -------------------------------------------------------------

def _telescoper(tower, rep, j):
    """``P`` with ``sigma(P)/P == sigma**j(rep)/rep``."""
    acc = tower.field.one
    if j >= 0:
        for l in range(j):
            acc *= tower.sigma(rep, l)
    else:
        for l in range(j, 0):
            acc /= tower.sigma(rep, l)
    return acc


def _reduce(vectors, witnesses):
    if not vectors:
        return [], []
    return hermite_basis(vectors, witnesses, mul=lambda a, b: a * b,
                         inv=lambda a: 1 / a, power=lambda a, k: a ** k)


def _orbit_rational(tower, values):
    n = len(values)
    primes = set()
    for v in values:
        q = constant_value(v)
        primes |= set(sympy.factorint(int(abs(q.numerator)))) | set(sympy.factorint(int(q.denominator)))
    rows = []
    for pr in sorted(primes):
        row = []
        for v in values:
            q = constant_value(v)
            row.append(sympy.multiplicity(pr, int(abs(q.numerator))) - sympy.multiplicity(pr, int(q.denominator)))
        rows.append(row + [0])
    rows.append([1 if constant_value(v) < 0 else 0 for v in values] + [-2])
    kernel = integer_kernel(rows, n + 1)
    vecs = [k[:n] for k in kernel if any(k[:n])]
    return _reduce(vecs, [tower.field.one] * len(vecs))


def _orbit(tower, fs, level):
    n = len(fs)
    F = tower.field
    if n == 0:
        return [], []
    if level == 0:
        return _orbit_rational(tower, fs)
    kind = tower.kind(level)
    t = tower.gen(level)
    facts = [factor_element(f, level) for f in fs]
    reps, members = [], {}
    for fac in facts:
        for p, _ in fac.factors:
            if (kind == PI and p == t) or p in members:
                continue
            for ci, rep in enumerate(reps):
                m = shift_equivalent(tower, rep, p, level)
                if isinstance(m, int):
                    members[p] = (ci, m)
                    break
            else:
                reps.append(p)
                members[p] = (len(reps) - 1, 0)
    rows = [[0] * n for _ in reps]
    for i, fac in enumerate(facts):
        for p, e in fac.factors:
            if p in members:
                rows[members[p][0]][i] += e
    if kind == PI:
        rows.append([dict(fac.factors).get(t, 0) for fac in facts])
    basis = integer_kernel(rows, n)
    if not basis:
        return [], []
    zs, Ws = [], []
    for b in basis:
        content = {}
        fe = F.one
        for i, bi in enumerate(b):
            if not bi:
                continue
            fe *= fs[i] ** bi
            for p, e in facts[i].factors:
                if p in members:
                    content[members[p]] = content.get(members[p], 0) + bi * e
        W = F.one
        for (ci, j), ex in content.items():
            if ex:
                W *= _telescoper(tower, reps[ci], j) ** ex
        z = fe * W / tower.sigma(W)
        if level_of(z) >= level:
            raise DiffTowerError("orbit reduction did not descend")
        zs.append(z)
        Ws.append(W)
    extra = [F.one / tower.monomial(level).alpha] if kind == PI else []
    sub_gens, sub_wits = _orbit(tower, zs + extra, level - 1)
    vecs, wits = [], []
    for lam, w in zip(sub_gens, sub_wits):
        e = [sum(lam[j] * basis[j][i] for j in range(len(basis))) for i in range(n)]
        if not any(e):
            continue
        g = w
        for j, W in enumerate(Ws):
            if lam[j]:
                g *= W ** lam[j]
        if kind == PI and lam[-1]:
            g *= t ** lam[-1]
        vecs.append(e)
        wits.append(g)
    return _reduce(vecs, wits)


def param_pseudo_orbit(tower, fs, level=None):
    """Z-basis of ``M(f_1, ..., f_n)`` over the field of ``level`` with verified witnesses."""
    fs = [tower.element(f) for f in fs]
    if any(not f for f in fs):
        raise ValueError("arguments must be nonzero")
    if level is None:
        level = max((level_of(f) for f in fs), default=0)
    gens, wits = _orbit(tower, fs, level)
    for e, g in zip(gens, wits):
        rhs = tower.field.one
        for f, k in zip(fs, e):
            rhs *= f ** k
        if tower.sigma(g) / g != rhs:
            raise DiffTowerError("orbit witness failed verification")
    return OrbitModule(gens, wits)


def pseudo_orbit_gamma(tower, u, v, level=None):
    """``{gamma : u**gamma * w == v * sigma(w)}`` with a witness ``w`` for ``start``."""
    mod = param_pseudo_orbit(tower, [u, v], level)
    swapped = [[e[1], e[0]] for e in mod.generators]
    rows, wits = _reduce(swapped, list(mod.witnesses))
    if not rows or rows[0][0] == 0 or rows[0][0] != 1:
        return GammaResult()
    start, w = -rows[0][1], 1 / wits[0]
    period = 0
    if len(rows) > 1:
        period = rows[1][1]
        k = start // period
        start -= k * period
        w *= wits[1] ** (-k)
    res = GammaResult(start, period, w)
    u, v = tower.element(u), tower.element(v)
    if u ** start * w != v * tower.sigma(w):
        raise DiffTowerError("pseudo-orbit witness failed verification")
    return res


def sigma_radical_test(tower, alpha, level=None):
    """Is ``sigma(g) = alpha**n * g`` solvable with ``n >= 1``?"""
    mod = param_pseudo_orbit(tower, [alpha], level)
    if not mod.generators:
        return RadicalResult(False)
    n, g = mod.generators[0][0], mod.witnesses[0]
    if n < 0:
        n, g = -n, 1 / g
    return RadicalResult(True, n, g)
