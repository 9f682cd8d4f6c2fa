"""Decomposition ``r = z * (a/b) * sigma(c)/c`` of nonzero rational functions."""

from dataclasses import dataclass

from .algebra import degree, factor_top, lead_coeff, level_of, poly_gcd
from .equivalence import spread
from .tower import PI


@dataclass(frozen=True)
class PNFTriple:
    """``z`` lies in the field below; ``a``, ``b``, ``c`` are polynomials in the top variable."""

    z: object
    a: object
    b: object
    c: object
    level: int

    def expand(self, tower):
        return self.z * self.a / self.b * tower.sigma(self.c) / self.c

    @property
    def c_degree(self):
        return degree(self.c, self.level)


def _descending_product(tower, d, h):
    """``prod(sigma**(-i)(d) for i in 1..h)``."""
    acc = tower.field.one
    for i in range(1, h + 1):
        acc *= tower.sigma(d, -i)
    return acc


def pnf_decompose(tower, r, level=None):
    """``(a, b, c)`` with empty ``spread(a, b)``, ``gcd(a, c) = gcd(b, sigma(c)) = 1``; ``z = 1``."""
    r = tower.element(r)
    if not r:
        raise ValueError("cannot decompose zero")
    F = tower.field
    if level is None:
        level = level_of(r)
    a = F.new(r.numer, F.ring.one)
    b = F.new(r.denom, F.ring.one)
    c = F.one
    if level == 0:
        return PNFTriple(F.one, a, b, c, level)
    while True:
        sp = spread(tower, a, b, level)
        if sp.empty:
            break
        h = sp.minimum()
        d = poly_gcd(a, tower.sigma(b, h), level)
        a = a / d
        b = b / tower.sigma(d, -h)
        c = c * _descending_product(tower, d, h)
    return PNFTriple(F.one, a, b, c, level)


def pnf_refined(tower, r, level=None):
    """Monic ``a``, ``b``, ``c`` with the unit content collected in ``z``.

    For a product monomial, powers of ``t`` are moved out of ``c`` so that
    ``c(0) != 0``; each such power contributes ``alpha**m`` to ``z``.
    """
    r = tower.element(r)
    if level is None:
        level = level_of(r)
    base = pnf_decompose(tower, r, level)
    F = tower.field
    if level == 0:
        return PNFTriple(r, F.one, F.one, F.one, 0)
    la, lb, lc = (lead_coeff(p, level) for p in (base.a, base.b, base.c))
    a, b, c = base.a / la, base.b / lb, base.c / lc
    z = la / lb * tower.sigma(lc) / lc
    if tower.kind(level) == PI:
        t = tower.gen(level)
        m = dict(factor_top(c, level).factors).get(t, 0)
        if m:
            c = c / t ** m
            z *= tower.monomial(level).alpha ** m
    return PNFTriple(z, a, b, c, level)
