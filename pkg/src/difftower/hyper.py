"""Hypergeometric candidates and solutions of homogeneous difference operators.

A hypergeometric solution is described by a ratio ``u`` and a basis of
``v`` values: every nonzero rational combination ``v`` makes ``E - u*sigma(v)/v``
a right factor of the operator.
"""

import random
from dataclasses import dataclass, field

from .algebra import (constant_value, degree, factor_top, lead_coeff, level_of, monic_divisors, rational_relations,
                      rational_roots)
from .equivalence import param_pseudo_orbit, spread
from .errors import SolverError
from .ore import OreOp, clear_denominators, riccati_residual
from .plde import _solve
from .tower import PI


@dataclass(frozen=True)
class HyperCandidate:
    """Candidate ``u = lower * a / b`` with monic ``a | a_0`` and ``b | sigma**(1-n)(a_n)``."""

    u: object
    a: object
    b: object
    lower: object
    level: int


@dataclass
class HyperSolution:
    u: object
    basis: list
    a: object = None
    b: object = None
    lower: object = None
    operator: object = None
    level: int = 0
    merged: list = field(default_factory=list)

    def ratio(self, v=None):
        v = self.basis[0] if v is None else v
        T = self.operator.tower if self.operator is not None else None
        return self.u * T.sigma(v) / v


def prepare_operator(L):
    """Clear denominators and drop an ``E**s`` right factor.

    Returns ``(L2, s)`` where ``L2 = sum(sigma**(-s)(a_{i+s}) E**i)`` has a
    nonzero constant coefficient and the same first-order right factors as ``L``.
    """
    if not L:
        raise ValueError("zero operator")
    T = L.tower
    s = L.trailing
    if s:
        L = OreOp(T, [T.sigma(c, -s) for c in L.coeffs[s:]])
    return clear_denominators(L), s


def constant_level_candidates(L):
    """Nonzero rational roots of the characteristic polynomial of an operator over Q."""
    coeffs = [constant_value(c) for c in L.coeffs]
    if any(level_of(c) for c in L.coeffs):
        raise ValueError("operator has non-constant coefficients")
    s = next(i for i, c in enumerate(coeffs) if c)
    if len(coeffs) - s < 2:
        return set()
    return {r for r in rational_roots(coeffs[s:]) if r}


def _ab_operator(tower, L, pa, pb, level, pruning):
    """The leading-coefficient operator for the pair ``(a, b)``; None when pruned."""
    a = L.coeffs
    n = L.order
    da, db = degree(pa, level), degree(pb, level)
    taus = {i: degree(c, level) + i * da + (n - i) * db for i, c in enumerate(a) if c}
    mu = max(taus.values())
    idx = [i for i, tau in taus.items() if tau == mu]
    if pruning >= 1 and len(idx) == 1:
        return None
    F = tower.field
    coeffs = [F.zero] * (n + 1)
    for i in idx:
        c = lead_coeff(a[i], level)
        if tower.kind(level) == PI and da != db:
            c *= tower.double_factorial(tower.monomial(level).alpha ** (da - db), i)
        coeffs[i] = c
    return OreOp(tower, coeffs)


def _pairs(tower, L, level, pruning):
    n = L.order
    A = list(monic_divisors(factor_top(L.coeffs[0], level)))
    B = list(monic_divisors(factor_top(tower.sigma(L.coeffs[n], 1 - n), level)))
    for pa in A:
        for pb in B:
            if pruning >= 2 and not spread(tower, pa, pb, level).empty:
                continue
            yield pa, pb


def _complexity(f):
    num, den = f.numer, f.denom
    height = sum(abs(c.numerator) + c.denominator for p in (num, den) for c in p.coeffs())
    return (sum(num.degrees()) + sum(den.degrees()), len(num.terms()) + len(den.terms()), height, str(f))


def candidate_pairs(tower, L, level=None, pruning=2):
    """The ``(a, b)`` pairs that survive pruning, with their leading-coefficient operators."""
    if not isinstance(L, OreOp):
        L = OreOp(tower, L)
    if level is None:
        level = L.level
    L, _ = prepare_operator(L)
    out = []
    for pa, pb in _pairs(tower, L, level, pruning):
        Lab = _ab_operator(tower, L, pa, pb, level, pruning)
        if Lab is not None:
            out.append((pa, pb, Lab))
    return out


def _candidates(tower, L, level, pruning, exact=False):
    """Candidates ``u = lower * a / b``.

    With ``exact`` the lower factors are representatives of the hypergeometric
    solution classes of each leading operator instead of its candidates.
    """
    if L.order < 1:
        return []
    F = tower.field
    if level == 0:
        return [HyperCandidate(F(z), F.one, F.one, F(z), 0) for z in sorted(constant_level_candidates(L))]
    out = []
    seen = set()
    for pa, pb in _pairs(tower, L, level, pruning):
        Lab = _ab_operator(tower, L, pa, pb, level, pruning)
        if Lab is None:
            continue
        if level > 1:
            Lab, _ = prepare_operator(Lab)
        if exact and level > 1:
            lower = [fam.u for fam in hypergeometric_solutions(tower, Lab, level - 1, pruning)]
        else:
            lower = [c.u for c in _candidates(tower, Lab, level - 1, pruning)]
        for lu in lower:
            u = lu * pa / pb
            key = (u, pa, pb)
            if key not in seen:
                seen.add(key)
                out.append(HyperCandidate(u, pa, pb, lu, level))
    out.sort(key=lambda c: _complexity(c.u))
    return out


def hypergeometric_candidates(tower, L, level=None, pruning=2):
    """Finite candidate set: every right factor ``E - r`` has ``r = u*sigma(v)/v`` for some candidate."""
    if not isinstance(L, OreOp):
        L = OreOp(tower, L)
    if level is None:
        level = L.level
    L, _ = prepare_operator(L)
    return _candidates(tower, L, level, pruning)


def _abu_operator(tower, L, cand):
    """``sum(a_i u^(i) a^(i) (sigma^i b)^(n-i) E^i)`` for a candidate."""
    n = L.order
    coeffs = []
    for i, c in enumerate(L.coeffs):
        if not c:
            coeffs.append(c)
            continue
        coeffs.append(c * tower.factorial(cand.lower, i) * tower.factorial(cand.a, i)
                      * tower.factorial(tower.sigma(cand.b, i), n - i))
    return clear_denominators(OreOp(tower, coeffs))


def _equivalence_witness(tower, u1, u2, level):
    """``w`` with ``u2 == u1 * sigma(w)/w``, or None."""
    q = u2 / u1
    if q == tower.field.one:
        return tower.field.one
    mod = param_pseudo_orbit(tower, [q], level)
    if mod.generators and abs(mod.generators[0][0]) == 1:
        w = mod.witnesses[0]
        return w if mod.generators[0][0] == 1 else 1 / w
    return None


def verify_right_factor(L, solution, coeffs):
    """Does ``E - u*sigma(v)/v`` with ``v = sum(c_w * w)`` divide ``L`` on the right?"""
    T = L.tower
    v = T.field.zero
    for c, w in zip(coeffs, solution.basis):
        v += T.field(c) * w
    if not v:
        raise ValueError("combination of the basis is zero")
    return not riccati_residual(L, solution.u * T.sigma(v) / v)


def _independent_elements(vs):
    """A maximal subset of ``vs`` linearly independent over the constants."""
    keep = []
    for v in vs:
        if not rational_relations([[w] for w in keep + [v]]):
            keep.append(v)
    return keep


def _random_combination(rng, k):
    while True:
        c = [rng.randint(-9, 9) for _ in range(k)]
        if any(c):
            return c


def hypergeometric_solutions(tower, L, level=None, pruning=2, checks=3, seed=0, select=None):
    """All hypergeometric solutions, one family per class of ratios modulo ``sigma(w)/w``.

    ``select`` is an optional predicate on candidate ratios ``u``; it must be
    constant on ``sigma(w)/w`` classes.  Rejected candidates are never solved.
    """
    if not isinstance(L, OreOp):
        L = OreOp(tower, L)
    if level is None:
        level = L.level
    original = L
    L, _ = prepare_operator(L)
    if L.order < 1:
        return []
    F = tower.field
    fams = []
    if level == 0:
        for z in sorted(constant_level_candidates(L)):
            if select is not None and not select(F(z)):
                continue
            fams.append(HyperSolution(F(z), [F.one], F.one, F.one, F(z), L, 0))
    else:
        dom = "inv-poly" if tower.kind(level) == PI else "poly"
        for cand in _candidates(tower, L, level, pruning, exact=True):
            if select is not None and not select(cand.u):
                continue
            Labu = _abu_operator(tower, L, cand)
            sols = _solve(tower, list(Labu.coeffs), [], level, dom)
            basis = [g for g, _ in sols if g]
            if not basis:
                continue
            fam = HyperSolution(cand.u, basis, cand.a, cand.b, cand.lower, Labu, level)
            for other in fams:
                w = _equivalence_witness(tower, other.u, cand.u, level)
                if w is not None:
                    other.basis = _independent_elements(other.basis + [v * w for v in basis])
                    other.merged.append(fam)
                    break
            else:
                fams.append(fam)
    rng = random.Random(seed)
    for fam in fams:
        fam.operator = fam.operator or L
        for _ in range(checks):
            c = _random_combination(rng, len(fam.basis))
            if not any(c[i] for i in range(len(fam.basis))):
                continue
            try:
                ok = verify_right_factor(original, fam, c)
            except ValueError:
                continue
            if not ok:
                raise SolverError("hypergeometric family failed the right-factor check")
    return fams
