"""Towers of difference-field monomials over Q and the automorphism they define."""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import sympy
from sympy.polys.domains import QQ
from sympy.polys.fields import FracField
from sympy.polys.orderings import lex

from .algebra import level_of

SIGMA = "sigma"
PI = "pi"
AFFINE = "affine"


@dataclass(frozen=True)
class Monomial:
    """One generator ``t`` with ``sigma(t) = alpha * t + beta``.

    ``kind`` is ``"sigma"`` (alpha = 1), ``"pi"`` (beta = 0) or ``"affine"``
    (general rational alpha and beta, only for a standalone one-variable tower).
    """

    name: str
    kind: str
    alpha: object
    beta: object


@dataclass
class LevelReport:
    level: int
    name: str
    kind: str
    ok: bool
    message: str
    witness: object = None


@dataclass
class TowerReport:
    levels: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return all(r.ok for r in self.levels)

    @property
    def first_failure(self):
        for r in self.levels:
            if not r.ok:
                return r
        return None


class Tower:
    """An ordered tower of monomials; level ``i`` is Q(t_1, ..., t_i).

    ``levels`` is a list of ``(name, kind, value)`` where ``value`` is the
    shift summand (``sigma``), the multiplier (``pi``) or an
    ``(alpha, beta)`` pair (``affine``).  Values may be strings, numbers or
    sympy expressions in the earlier names.
    """

    def __init__(self, levels):
        names = [s[0] for s in levels]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if not names:
            names = ["_c"]
            self._empty = True
        else:
            self._empty = False
        self.field = FracField(names, QQ, lex)
        self.ring = self.field.ring
        self.names = [] if self._empty else names
        self.monomials = []
        for i, (name, kind, value) in enumerate(levels):
            if kind == SIGMA:
                alpha, beta = self.field.one, self.element(value)
            elif kind == PI:
                alpha, beta = self.element(value), self.field.zero
            elif kind == AFFINE:
                alpha, beta = (self.element(v) for v in value)
                if len(levels) != 1 or level_of(alpha) or level_of(beta):
                    raise ValueError("affine monomials are only supported over Q")
            else:
                raise ValueError(f"invalid monomial kind {kind!r}")
            if level_of(alpha) > i or level_of(beta) > i:
                raise ValueError(f"coefficient of {name} refers to a later variable")
            if not alpha:
                raise ValueError(f"multiplier of {name} is zero")
            if kind == SIGMA and not beta:
                raise ValueError(f"shift of {name} is zero")
            self.monomials.append(Monomial(name, kind, alpha, beta))
        self.validated = False
        self._images = {0: list(self.field.gens)}
        self._cache = {}

    @classmethod
    def affine(cls, name, alpha, beta):
        return cls([(name, AFFINE, (alpha, beta))])

    def __len__(self):
        return len(self.monomials)

    @property
    def depth(self):
        return len(self.monomials)

    def __repr__(self):
        parts = []
        for m in self.monomials:
            if m.kind == SIGMA:
                parts.append(f"{m.name}: sigma({m.beta.as_expr()})")
            elif m.kind == PI:
                parts.append(f"{m.name}: pi({m.alpha.as_expr()})")
            else:
                parts.append(f"{m.name}: {m.alpha.as_expr()}*{m.name}+{m.beta.as_expr()}")
        return "Tower(" + "; ".join(parts) + ")"

    def element(self, value):
        """Coerce a string, number, sympy expression or field element into the field."""
        F = self.field
        if hasattr(value, "field") and value.field == F:
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(value, int):
            return F(value)
        if isinstance(value, Fraction):
            return F(QQ(value.numerator, value.denominator))
        if isinstance(value, str):
            locs = {n: sympy.Symbol(n) for n in self.names}
            value = sympy.sympify(value, locals=locs)
        if isinstance(value, sympy.Basic):
            return F.from_expr(value)
        return F(value)

    def gen(self, level):
        return self.field.gens[level - 1]

    def monomial(self, level):
        return self.monomials[level - 1]

    def kind(self, level):
        return self.monomials[level - 1].kind

    def level_of(self, f):
        return 0 if self._empty else level_of(f)

    # -- the automorphism -------------------------------------------------

    def _image(self, n):
        """Images of the generators under sigma**n."""
        if n in self._images:
            return self._images[n]
        step = 1 if n > 0 else -1
        prev = self._image(n - step)
        if step == 1:
            base = self._image(1) if n != 1 else None
        else:
            base = self._image(-1) if n != -1 else None
        if abs(n) == 1:
            imgs = []
            for i, m in enumerate(self.monomials):
                t = self.field.gens[i]
                if step == 1:
                    imgs.append(m.alpha * t + m.beta)
                else:
                    partial = imgs + list(self.field.gens[i:])
                    a = self._apply(m.alpha, partial)
                    b = self._apply(m.beta, partial)
                    imgs.append((t - b) / a)
            if self._empty:
                imgs = list(self.field.gens)
        else:
            imgs = [self._apply(g, base) for g in prev]
        self._images[n] = imgs
        return imgs

    def _apply(self, f, imgs):
        num = self._apply_poly(f.numer, imgs)
        den = self._apply_poly(f.denom, imgs)
        return self.field.new(num[0] * den[1], num[1] * den[0])

    def _apply_poly(self, p, imgs):
        """Image of a polynomial as ``(numerator, denominator)`` polynomials."""
        R = self.ring
        if p.is_ground:
            return p, R.one
        degs = p.degrees()
        nums = [im.numer for im in imgs]
        dens = [im.denom for im in imgs]
        powA = [None] * len(imgs)
        powB = [None] * len(imgs)
        for j, d in enumerate(degs):
            if d <= 0:
                continue
            pa, pb = [R.one], [R.one]
            for _ in range(d):
                pa.append(pa[-1] * nums[j])
                pb.append(pb[-1] * dens[j])
            powA[j], powB[j] = pa, pb
        acc = R.zero
        for monom, c in p.terms():
            term = R(c)
            for j, e in enumerate(monom):
                d = degs[j]
                if d <= 0:
                    continue
                term = term * powA[j][e] if e else term
                if d - e and dens[j] != R.one:
                    term = term * powB[j][d - e]
            acc += term
        den = R.one
        for j, d in enumerate(degs):
            if d > 0 and dens[j] != R.one:
                den *= powB[j][d]
        return acc, den

    def sigma(self, f, n=1):
        """``sigma**n (f)`` for any integer ``n``."""
        f = self.element(f)
        if n == 0 or self._empty or (f.numer.is_ground and f.denom.is_ground):
            return f
        key = (f, n)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = self._apply(f, self._image(n))
        if len(self._cache) > 200000:
            self._cache.clear()
        self._cache[key] = out
        return out

    # -- derived notation ---------------------------------------------------

    def factorial(self, a, n):
        """``prod(sigma**i (a) for i < n)``."""
        if n < 0:
            raise ValueError("n must be nonnegative")
        acc = self.field.one
        for i in range(n):
            acc *= self.sigma(a, i)
        return acc

    def partial_sum(self, a, n):
        """``sum(sigma**i (a) for i < n)``."""
        if n < 0:
            raise ValueError("n must be nonnegative")
        acc = self.field.zero
        for i in range(n):
            acc += self.sigma(a, i)
        return acc

    def double_factorial(self, a, n):
        """``prod(factorial(a, i) for i < n)``."""
        if n < 0:
            raise ValueError("n must be nonnegative")
        acc = self.field.one
        cur = self.field.one
        for i in range(n):
            acc *= cur
            cur = cur * self.sigma(a, i)
        return acc

    def eta(self, level, j):
        """Shift of the top variable: ``sigma**j (t) = t + eta(level, j)`` for a sum level."""
        m = self.monomial(level)
        if m.kind != SIGMA:
            raise ValueError(f"level {level} ({m.name}) is not a sum monomial")
        if j >= 0:
            return self.partial_sum(m.beta, j)
        acc = self.field.zero
        for nu in range(j, 0):
            acc -= self.sigma(m.beta, nu)
        return acc

    def alpha_factorial(self, level, j):
        """Multiplier of the top variable: ``sigma**j (t) = alpha_factorial * t`` for a product level."""
        m = self.monomial(level)
        if m.kind != PI:
            raise ValueError(f"level {level} ({m.name}) is not a product monomial")
        if j >= 0:
            return self.factorial(m.alpha, j)
        acc = self.field.one
        for nu in range(j, 0):
            acc /= self.sigma(m.alpha, nu)
        return acc

    def sigma_power_image(self, level, j):
        """``sigma**j`` of the top variable of ``level``."""
        return self._image(j)[level - 1]

    # -- validation ---------------------------------------------------------

    def validate(self):
        return validate_tower(self)


def sigma_apply(tower, f, n=1):
    return tower.sigma(f, n)


def sigma_factorial(tower, a, n):
    return tower.factorial(a, n)


def sigma_partial_sum(tower, a, n):
    return tower.partial_sum(a, n)


def sigma_double_factorial(tower, a, n):
    return tower.double_factorial(a, n)


def eta_partial_sum(tower, level, j):
    return tower.eta(level, j)


def validate_tower(tower):
    """Check every level; failures are reported, never raised."""
    from .equivalence import param_pseudo_orbit
    from .plde import solve_plde

    report = TowerReport()
    F = tower.field
    for lev, m in enumerate(tower.monomials, start=1):
        below = lev - 1
        if m.kind == AFFINE:
            report.levels.append(LevelReport(lev, m.name, m.kind, False,
                                             "general affine monomial is not a sum or product monomial"))
            continue
        if m.kind == PI:
            mod = param_pseudo_orbit(tower, [m.alpha], below)
            if mod.generators:
                e = mod.generators[0][0]
                report.levels.append(LevelReport(
                    lev, m.name, m.kind, False,
                    f"multiplier is a radical: sigma(g) = alpha^{e} * g", witness=mod.witnesses[0]))
            else:
                report.levels.append(LevelReport(lev, m.name, m.kind, True, "multiplier is not a radical"))
        else:
            basis = solve_plde(tower, [-F.one, F.one], [m.beta], below, domain="field",
                               check_tower=False)
            hit = [(g, c) for g, c in basis if c[0]]
            if hit:
                g, c = hit[0]
                w = g / F(c[0])
                report.levels.append(LevelReport(
                    lev, m.name, m.kind, False,
                    "shift telescopes: sigma(w) - w = beta", witness=w))
            else:
                report.levels.append(LevelReport(lev, m.name, m.kind, True, "shift does not telescope"))
    tower.validated = report.ok
    return report
