"""Numeric sequence model of a tower, used to cross-check symbolic answers.

Each variable is a sequence defined by a start index, an initial value and
its shift rule ``value(n+1) = alpha(n)*value(n) + beta(n)``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .tower import PI

UNDEFINED = None


def _frac(c):
    return Fraction(int(c.numerator), int(c.denominator))


def _eval_poly(p, vals):
    acc = Fraction(0)
    for monom, c in p.terms():
        term = _frac(c)
        for v, e in zip(vals, monom):
            if e:
                term *= v ** e
        acc += term
    return acc


def _used(p):
    return {i for monom in p.monoms() for i, e in enumerate(monom) if e}


class SequenceModel:
    """Start indices and initial values per variable, with cached orbits.

    Unspecified sums start at ``0`` with value ``0`` and unspecified products
    at ``0`` with value ``1``; a shift variable then runs through ``0, 1, 2, ...``.
    """

    def __init__(self, tower, inits=None):
        self.tower = tower
        self.starts = []
        self._values = []
        inits = inits or {}
        for m in tower.monomials:
            default = (0, Fraction(1) if m.kind == PI else Fraction(0))
            at, value = inits.get(m.name, default)
            self.starts.append(int(at))
            self._values.append([Fraction(value)])

    def start(self, level):
        return self.starts[level - 1]

    def value(self, level, n):
        """Value of the variable at ``level`` at index ``n``, or None if undefined."""
        s = self.starts[level - 1]
        if n < s:
            raise ValueError(f"index {n} is below the start index {s} of {self.tower.names[level - 1]}")
        seq = self._values[level - 1]
        m = self.tower.monomial(level)
        while len(seq) <= n - s:
            k = s + len(seq) - 1
            prev = seq[-1]
            if prev is UNDEFINED:
                seq.append(UNDEFINED)
                continue
            a = self._eval(m.alpha, k)
            b = self._eval(m.beta, k)
            seq.append(UNDEFINED if a is UNDEFINED or b is UNDEFINED else a * prev + b)
        return seq[n - s]

    def _eval(self, f, n):
        used = _used(f.numer) | _used(f.denom)
        vals = [Fraction(0)] * len(f.field.gens)
        for i in used:
            v = self.value(i + 1, n)
            if v is UNDEFINED:
                return UNDEFINED
            vals[i] = v
        den = _eval_poly(f.denom, vals)
        if den == 0:
            return UNDEFINED
        return _eval_poly(f.numer, vals) / den

    def first_index(self, f):
        """Smallest index at which every variable of ``f`` is defined."""
        used = _used(f.numer) | _used(f.denom)
        return max((self.starts[i] for i in used), default=min(self.starts, default=0))

    def evaluate(self, f, n):
        return self._eval(self.tower.element(f), n)


def evaluate_sequence(model, f, n):
    """Exact value of a field element at index ``n``; None at a pole."""
    return model.evaluate(f, n)


@dataclass
class VerificationReport:
    ok: bool
    checked: int
    horizon: int
    failures: list = field(default_factory=list)
    message: str = ""


def product_start(model, w, vs, last):
    """Smallest ``lam`` so that ``w`` and every ``v`` have no pole or zero on ``[lam, last]``."""
    T = model.tower
    w = T.element(w)
    lo = max([model.first_index(w)] + [model.first_index(T.element(v)) for v in vs])
    bad = lo - 1
    for n in range(lo, last + 1):
        vals = [model.evaluate(w, n)] + [model.evaluate(v, n) for v in vs]
        if any(x is UNDEFINED or x == 0 for x in vals):
            bad = n
    return bad + 1


def _needed(horizon):
    return max(10, horizon // 2)


def _check(model, coeffs, seq, rhs, lo, horizon):
    """Compare ``sum(a_i(n) seq(n+i))`` with ``rhs(n)`` for ``lo <= n <= horizon``."""
    failures = []
    checked = 0
    for n in range(lo, horizon + 1):
        terms = []
        for i, a in enumerate(coeffs):
            if not a:
                continue
            av = model.evaluate(a, n)
            fv = seq(n + i)
            if av is UNDEFINED or fv is UNDEFINED:
                break
            terms.append(av * fv)
        else:
            r = rhs(n)
            if r is UNDEFINED:
                continue
            checked += 1
            lhs = sum(terms, Fraction(0))
            if lhs != r:
                failures.append((n, lhs, r))
                break
    return checked, failures


def verify_solution(model, coeffs, solution, horizon=30, rhs=()):
    """Numerically check a hypergeometric family or a PLDE solution basis."""
    from .hyper import HyperSolution

    T = model.tower
    coeffs = [T.element(a) for a in coeffs]
    order = len(coeffs) - 1
    lo_coeffs = max(model.first_index(a) for a in coeffs if a)
    total, failures = 0, []
    if isinstance(solution, HyperSolution):
        w = T.sigma(solution.u, -1)
        lam = product_start(model, w, solution.basis, horizon + order)
        for v in solution.basis:
            cache = {}

            def seq(n, v=v, cache=cache):
                if n not in cache:
                    if n < lam - 1:
                        cache[n] = UNDEFINED
                    else:
                        acc = model.evaluate(v, n)
                        for l in range(lam, n + 1):
                            if acc is UNDEFINED:
                                break
                            wl = model.evaluate(w, l)
                            acc = UNDEFINED if wl is UNDEFINED else acc * wl
                        cache[n] = acc
                return cache[n]

            checked, fails = _check(model, coeffs, seq, lambda n: Fraction(0), max(lam, lo_coeffs), horizon)
            total += checked
            failures += fails
            if checked < _needed(horizon):
                return VerificationReport(False, total, horizon, failures, "insufficient points")
    else:
        bs = [T.element(b) for b in rhs]
        for g, c in solution:
            lo = max([lo_coeffs, model.first_index(g)] + [model.first_index(b) for b in bs])

            def seq(n, g=g):
                return model.evaluate(g, n)

            def right(n, c=c):
                acc = Fraction(0)
                for cj, bj in zip(c, bs):
                    if cj:
                        bv = model.evaluate(bj, n)
                        if bv is UNDEFINED:
                            return UNDEFINED
                        acc += _frac(cj) * bv
                return acc

            checked, fails = _check(model, coeffs, seq, right, lo, horizon)
            total += checked
            failures += fails
            if checked < _needed(horizon):
                return VerificationReport(False, total, horizon, failures, "insufficient points")
    if failures:
        n = failures[0][0]
        return VerificationReport(False, total, horizon, failures, f"residual is nonzero at n = {n}")
    return VerificationReport(True, total, horizon, [], "ok")
