"""Difference operators ``sum(a_i * E**i)`` in the skew ring with ``E*h = sigma(h)*E``."""

from math import gcd, lcm

from .algebra import level_of, t_coeffs


class OreOp:
    """Immutable operator with ascending coefficients ``a_0, ..., a_n``."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower, coeffs):
        cs = [tower.element(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.tower = tower
        self.coeffs = tuple(cs)

    @classmethod
    def shift(cls, tower, r=None):
        """``E - r`` (or ``E`` when ``r`` is None)."""
        F = tower.field
        return cls(tower, [-tower.element(r) if r is not None else F.zero, F.one])

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, OreOp) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "OreOp(0)"
        terms = [f"({c.as_expr()})*E^{i}" for i, c in enumerate(self.coeffs) if c]
        return "OreOp(" + " + ".join(terms) + ")"

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.tower.field.zero

    @property
    def order(self):
        """Leading degree; -1 for the zero operator."""
        return len(self.coeffs) - 1

    @property
    def trailing(self):
        """Trailing degree (index of the first nonzero coefficient)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    @property
    def level(self):
        return max((level_of(c) for c in self.coeffs), default=0)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return OreOp(self.tower, [self[i] + other[i] for i in range(n)])

    def __neg__(self):
        return OreOp(self.tower, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f):
        """Left multiplication by a field element."""
        f = self.tower.element(f)
        return OreOp(self.tower, [f * c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, OreOp):
            return multiply(self, other)
        return self.scale(other)

    def __call__(self, f):
        return apply(self, f)


def apply(L, f):
    """``L(f) = sum(a_i * sigma**i (f))``."""
    T = L.tower
    f = T.element(f)
    acc = T.field.zero
    for i, c in enumerate(L.coeffs):
        if c:
            acc += c * T.sigma(f, i)
    return acc


def multiply(L1, L2):
    T = L1.tower
    F = T.field
    out = [F.zero] * (max(len(L1.coeffs) + len(L2.coeffs) - 1, 0))
    for i, a in enumerate(L1.coeffs):
        if not a:
            continue
        for j, b in enumerate(L2.coeffs):
            if b:
                out[i + j] += a * T.sigma(b, i)
    return OreOp(T, out)


def right_divide(L, M):
    """``(Q, R)`` with ``L = Q*M + R`` and ``order(R) < order(M)``."""
    if not M:
        raise ZeroDivisionError("division by zero")
    T = L.tower
    F = T.field
    rem = list(L.coeffs)
    dm = M.order
    lm = M.coeffs[-1]
    quo = [F.zero] * max(len(rem) - dm, 0)
    while len(rem) - 1 >= dm:
        d = len(rem) - 1
        s = d - dm
        q = rem[-1] / T.sigma(lm, s)
        quo[s] = q
        for j, c in enumerate(M.coeffs):
            if c:
                rem[j + s] -= q * T.sigma(c, s)
        rem.pop()
        while rem and not rem[-1]:
            rem.pop()
    return OreOp(T, quo), OreOp(T, rem)


def riccati_residual(L, r):
    """``sum(a_i * r^(i))``; zero exactly when ``E - r`` is a right factor of ``L``."""
    T = L.tower
    r = T.element(r)
    if not r:
        raise ValueError("r must be nonzero")
    acc = T.field.zero
    fac = T.field.one
    for i, c in enumerate(L.coeffs):
        if c:
            acc += c * fac
        if i + 1 < len(L.coeffs):
            fac = fac * T.sigma(r, i)
    return acc


def project_components(L, level):
    """Split ``L = sum(t**j * L_j)`` with ``L_j`` free of the top variable ``t``."""
    comps = {}
    for i, c in enumerate(L.coeffs):
        if not c:
            continue
        if level and c.denom.degree(level - 1) > 0:
            raise ValueError("clear denominators first")
        for j, cj in t_coeffs(c, level).items():
            comps.setdefault(j, {})[i] = cj
    out = {}
    for j, d in comps.items():
        out[j] = OreOp(L.tower, [d.get(i, L.tower.field.zero) for i in range(max(d) + 1)])
    return dict(sorted(out.items()))


def _positive(p):
    return -p if p.LC < 0 else p


def clear_denominators(L):
    """Scale ``L`` on the left so its coefficients are polynomials with no common factor.

    Only a positive rational times a polynomial with positive leading
    coefficient is ever multiplied in, so signs are preserved.
    """
    if not L:
        raise ValueError("zero operator")
    T = L.tower
    F = T.field
    R = F.ring
    den = R.one
    for c in L.coeffs:
        if c:
            den = den.lcm(c.denom)
    den = _positive(den)
    nums = [c.numer * den.exquo(c.denom) if c else R.zero for c in L.coeffs]
    g = R.zero
    for p in nums:
        if p:
            g = p if not g else g.gcd(p)
    g = _positive(g)
    nums = [p.exquo(g) if p else p for p in nums]
    dens = [int(c.denominator) for p in nums for c in p.coeffs()]
    scale = lcm(*dens) if dens else 1
    ints = [int(c.numerator) * (scale // int(c.denominator)) for p in nums for c in p.coeffs()]
    content = gcd(*ints) if ints else 1
    factor = F(scale) / F(content)
    return OreOp(T, [F.new(p, R.one) * factor for p in nums])

