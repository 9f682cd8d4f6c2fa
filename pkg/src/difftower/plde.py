"""Parameterized linear difference equations ``sum(a_i sigma**i(g)) = sum(c_j b_j)``.

Solutions are pairs ``(g, c)`` with ``g`` in the requested domain over the
tower field and ``c`` a vector of rationals.  Solving recurses down the
tower: universal denominator, then degree or Laurent bounds, then peeling
off one coefficient in the top variable at a time by solving an equation
one level lower.
"""

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass

from sympy import binomial, factorial
from sympy.polys.domains import QQ

from .algebra import (constant_value, factor_top, level_of, monic, nullspace, poly_divmod, poly_gcd,
                      rational_relations, t_coeffs)
from .equivalence import pseudo_orbit_gamma, spread
from .errors import IterationLimitError, SolverError
from .lattice import QX, X, polynomial_kernel_basis
from .tower import PI, SIGMA

DOMAINS = ("field", "poly", "inv-poly", "laurent")
DEFAULT_MAX_ITERATIONS = 50
_max_iterations = ContextVar("sigma_degree_bound_iterations", default=DEFAULT_MAX_ITERATIONS)


@contextmanager
def iteration_limit(n):
    """Cap the degree-bound iteration for every solver call made inside the block."""
    token = _max_iterations.set(n)
    try:
        yield
    finally:
        _max_iterations.reset(token)


@dataclass
class SolutionBasis:
    """Q-basis of the solution space; each vector is ``(g, (c_1, ..., c_m))``."""

    vectors: list
    m: int

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]

    @property
    def dimension(self):
        return len(self.vectors)


@dataclass
class LaurentBounds:
    """Every Laurent solution lives between ``t**order_low`` and ``t**degree_high``.

    ``m`` and ``M`` are the values coming from the pseudo-orbit sets of the
    trailing and leading components (None when those sets are empty).
    ``order_low > degree_high`` means there is no nonzero solution.
    """

    order_low: int
    degree_high: int
    m: int = None
    M: int = None

    @property
    def nonzero_possible(self):
        return self.order_low <= self.degree_high


# -- small helpers --------------------------------------------------------------

def _trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def _clear(tower, a, b):
    """Multiply the whole equation by a common denominator."""
    R = tower.ring
    F = tower.field
    den = R.one
    for c in list(a) + list(b):
        if c:
            den = den.lcm(c.denom)
    if den == R.one:
        return list(a), list(b)
    D = F.new(den, R.one)
    return [c * D for c in a], [c * D for c in b]


def laurent_coeffs(f, level):
    """Coefficients of a Laurent polynomial in the top variable as ``{exponent: element}``."""
    if not f.numer:
        return {}
    if level == 0:
        return {0: f}
    v = level - 1
    k = f.denom.degree(v)
    if k <= 0:
        return t_coeffs(f, level)
    F = f.field
    t = F.gens[v]
    g = f * t ** k
    if g.denom.degree(v) > 0:
        raise ValueError("not a Laurent polynomial in the top variable")
    return {j - k: c for j, c in t_coeffs(g, level).items()}


def _from_dict(d, level, F):
    t = F.gens[level - 1]
    acc = F.zero
    for j, c in d.items():
        if c:
            acc += c * t ** j
    return acc


def _combine(vectors, weights, F):
    """``sum(w * v)`` for lists of dicts with rational weights."""
    out = {}
    for w, d in zip(weights, vectors):
        if not w:
            continue
        for k, c in d.items():
            out[k] = out.get(k, F.zero) + F(w) * c
    return {k: c for k, c in out.items() if c}


def _impose(params, vectors):
    """Restrict parameter combinations to those where ``vectors`` combine to zero.

    ``params`` is a list of tuples; returns the list of new weight vectors.
    """
    n = len(params)
    if n == 0:
        return []
    if not vectors or all(not any(bool(e) for e in v) for v in vectors):
        return [[QQ(int(i == j)) for j in range(n)] for i in range(n)]
    return rational_relations(vectors)


def _independent(tower, level, sols, m):
    """Drop linearly dependent solution vectors."""
    F = tower.field
    kept = []
    rows = []
    try:
        for g, c in sols:
            rows.append((laurent_coeffs(g, level) if level else ({0: g} if g else {}), c))
    except ValueError:
        # rational in the top variable: compare the elements as a whole
        rows = [({0: g} if g else {}, c) for g, c in sols]
    keys = sorted({k for coeffs, _ in rows for k in coeffs})
    vecs = []
    for coeffs, c in rows:
        vecs.append([coeffs.get(k, F.zero) for k in keys] + [F(x) for x in c])
    for i, v in enumerate(vecs):
        trial = [vecs[j] for j in kept] + [v]
        rel = rational_relations(trial) if trial[0] else []
        if not any(r[-1] for r in rel):
            kept.append(i)
    return [sols[i] for i in kept]


# -- level 0 ---------------------------------------------------------------------

def _solve_constants(tower, a, b):
    F = tower.field
    A = sum((constant_value(c) for c in a), QQ(0))
    m = len(b)
    bs = [constant_value(x) for x in b]
    if A:
        return [(F(bj / A), tuple(QQ(int(i == j)) for i in range(m))) for j, bj in enumerate(bs)]
    out = [(F.one, tuple(QQ(0) for _ in range(m)))]
    rel = rational_relations([[F(bj)] for bj in bs]) if m else []
    for r in rel:
        out.append((F.zero, tuple(r)))
    return out


# -- domain restriction -----------------------------------------------------------

def _obstructions(tower, gs, level, domain, bound):
    """Linear map whose kernel is the set of combinations of ``gs`` inside the domain."""
    F = tower.field
    R = tower.ring
    den = R.one
    for g in gs:
        if g:
            den = den.lcm(g.denom)
    Delem = F.new(den, R.one)
    P = monic(Delem, level) if Delem.numer.degree(level - 1) > 0 else F.one
    c = Delem / P
    t = tower.gen(level)
    k = 0
    if tower.kind(level) == PI and P != F.one:
        k = dict(factor_top(P, level).factors).get(t, 0)
    Pp = P / t ** k
    out = []
    for g in gs:
        n = g * Delem / c  # polynomial in t
        parts = {}
        if domain == "field":
            pass
        elif domain == "poly":
            q, r = poly_divmod(n, P, level)
            for j, e in t_coeffs(r, level).items():
                parts[("r", j)] = e
            if bound is not None:
                for j, e in t_coeffs(q, level).items():
                    if j > bound:
                        parts[("q", j)] = e
        else:
            q, r = poly_divmod(n, Pp, level)
            for j, e in t_coeffs(r, level).items():
                parts[("r", j)] = e
            if domain == "inv-poly":
                for j, e in t_coeffs(q, level).items():
                    if j > k:
                        parts[("q", j)] = e
        out.append(parts)
    keys = sorted({key for p in out for key in p})
    return [[p.get(key, F.zero) for key in keys] for p in out]


def _restrict(tower, sols, level, domain, bound=None):
    if not sols or (domain == "field" and bound is None) or level == 0:
        return sols
    vecs = _obstructions(tower, [g for g, _ in sols], level, domain, bound)
    if not vecs or not vecs[0]:
        return sols
    weights = rational_relations(vecs)
    return _recombine(tower, sols, weights)


def _recombine(tower, sols, weights):
    F = tower.field
    out = []
    for w in weights:
        g = F.zero
        c = None
        for wi, (gi, ci) in zip(w, sols):
            if not wi:
                continue
            g += F(wi) * gi
            c = [x + wi * y for x, y in zip(c, ci)] if c is not None else [wi * y for y in ci]
        if c is None:
            c = [QQ(0)] * (len(sols[0][1]) if sols else 0)
        out.append((g, tuple(c)))
    return out


# -- universal denominator ---------------------------------------------------------

def _strip_t(tower, p, level):
    if tower.kind(level) != PI:
        return p
    t = tower.gen(level)
    k = dict(factor_top(p, level).factors).get(t, 0)
    return p / t ** k


def _coprime_denominator(tower, a, level):
    """Denominator bound for the part of the denominator coprime to ``t`` (all of it for sums)."""
    F = tower.field
    ell = len(a) - 1
    A = _strip_t(tower, tower.sigma(a[ell], -ell), level)
    B = _strip_t(tower, a[0], level)
    sp = spread(tower, A, B, level)
    if not sp.finite:
        raise SolverError("infinite dispersion")
    # peel off common factors, largest shift first
    R = tower.ring
    num, den = R.one, R.one
    for i in sorted(sp.elements, reverse=True):
        g = poly_gcd(A, tower.sigma(B, i), level)
        if g == F.one:
            continue
        A = A / g
        B = B / tower.sigma(g, -i)
        for j in range(i + 1):
            s = tower.sigma(g, -j)
            num, den = num * s.numer, den * s.denom
    d = F.new(num, den)
    return monic(d, level) if d != F.one else d


def universal_denominator(tower, a, b=(), level=None):
    """``d`` such that ``d*g`` is a polynomial for every rational solution ``g``."""
    a = _trim([tower.element(x) for x in a])
    b = [tower.element(x) for x in b]
    if level is None:
        level = max(level_of(x) for x in a + b)
    nu = next(i for i, x in enumerate(a) if x)
    a = a[nu:]
    b = [tower.sigma(x, 0) for x in b]
    a, b = _clear(tower, a, b)
    if len(a) == 1 or level == 0:
        return tower.field.one
    d = _coprime_denominator(tower, a, level)
    if tower.kind(level) == PI:
        a2, b2 = _clear(tower, [x / tower.sigma(d, i) for i, x in enumerate(a)], b)
        lb = pi_laurent_bounds(tower, a2, b2, level)
        if lb.nonzero_possible and lb.order_low < 0:
            d *= tower.gen(level) ** (-lb.order_low)
    if nu:
        d = tower.sigma(d, -nu)
        d = monic(d, level) if level else d
    return d


# -- bounds -----------------------------------------------------------------------

def _components(a, level):
    return [laurent_coeffs(x, level) for x in a]


def pi_laurent_bounds(tower, a, b=(), level=None):
    """Order and degree bounds for Laurent solutions over a product monomial."""
    from .hyper import hypergeometric_solutions
    from .ore import OreOp

    a = [tower.element(x) for x in a]
    b = [tower.element(x) for x in b]
    if level is None:
        level = max(level_of(x) for x in a + b)
    if tower.kind(level) != PI:
        raise ValueError("top monomial is not a product monomial")
    comps = _components(a, level)
    degs = [k for c in comps for k in c]
    nu_L, deg_L = min(degs), max(degs)
    F = tower.field
    alpha = tower.monomial(level).alpha

    cache = tower.__dict__.setdefault("_gamma_cache", {})
    orbit = tower.__dict__.setdefault("_orbit_cache", {})

    def gammas(j):
        key = (tuple(c.get(j, F.zero) for c in comps), level)
        if key not in cache:
            cache[key] = _gammas(OreOp(tower, list(key[0])))
        return cache[key]

    def gamma(u):
        key = (u, level)
        if key not in orbit:
            orbit[key] = pseudo_orbit_gamma(tower, alpha, u, level - 1)
        return orbit[key]

    def _gammas(op):

        vals = set()
        for fam in hypergeometric_solutions(tower, op, level - 1, select=lambda u: not gamma(u).empty):
            G = gamma(fam.u)
            if G.period:
                raise SolverError("pseudo-orbit set is infinite")
            vals.add(G.start)
        return frozenset(vals)

    lows, highs = gammas(nu_L), gammas(deg_L)
    m = min(lows) if lows else None
    M = max(highs) if highs else None
    bl = [laurent_coeffs(x, level) for x in b if x]
    low_c = ([m] if m is not None else []) + [min(c) - nu_L for c in bl]
    high_c = ([M] if M is not None else []) + [max(c) - deg_L for c in bl]
    if not low_c or not high_c:
        return LaurentBounds(0, -1, m, M)
    return LaurentBounds(min(low_c), max(high_c), m, M)


def _poly_mul(p, q):
    """Product of two ``{power: element}`` polynomials in the formal variable."""
    out = {}
    for i, a in p.items():
        for j, b in q.items():
            out[i + j] = out.get(i + j, 0) + a * b
    return {k: v for k, v in out.items() if v}


def _binomial_shifted(i, l):
    """``binomial(x - i, l)`` as a polynomial in ``x`` over Q."""
    p = QX.one
    for r in range(l):
        p *= X - i - r
    p = p.quo_ground(QQ(int(factorial(l))))
    return p


def _qx_dict(p, F):
    return {e[0]: F(c) for e, c in p.terms()}


def sigma_degree_bound(tower, a, phi=(), level=None, max_iterations=None):
    """Degree bound for polynomial solutions over a sum monomial."""
    a = [tower.element(x) for x in a]
    phi = [tower.element(x) for x in phi]
    if level is None:
        level = max(level_of(x) for x in a + phi)
    if tower.kind(level) != SIGMA:
        raise ValueError("top monomial is not a sum monomial")
    if max_iterations is None:
        max_iterations = _max_iterations.get()
    F = tower.field
    comps = _components(a, level)
    alpha = max(k for c in comps for k in c)
    nz = [t_coeffs(x, level) for x in phi if x]
    beta = max(max(c) for c in nz) if nz else None
    if alpha == 0:
        return len(_trim(a)) - 1 + max(beta if beta is not None else 0, 0)
    L_alpha = [c.get(alpha, F.zero) for c in comps]
    b = max(beta - alpha, 0) if beta is not None else 0
    base = _solve(tower, L_alpha, [], level - 1, "field")
    fs = [[{0: w}] for w, _ in base if w]
    if not fs:
        return b
    etas = [tower.eta(level, j) for j in range(len(comps))]
    for n in range(max_iterations):
        if beta is not None:
            b = max(b, beta - alpha + n + 1)
        keys, rhs = [], []
        for u, f in enumerate(fs):
            hu = {}
            for i in range(n + 1):
                fi = f[i]
                for j, cj in enumerate(comps):
                    sig = {p: tower.sigma(c, j) for p, c in fi.items()}
                    for k, ajk in cj.items():
                        l = k + n + 1 - alpha - i
                        if l < 0:
                            continue
                        ep = etas[j] ** l if j else (F.one if l == 0 else F.zero)
                        if not ep:
                            continue
                        scal = _poly_mul(sig, _qx_dict(_binomial_shifted(i, l), F))
                        for p, c in scal.items():
                            hu[p] = hu.get(p, F.zero) + ajk * ep * c
            hu = {p: c for p, c in hu.items() if c}
            keys.append((u, 0))
            rhs.append(-hu.get(0, F.zero))
            for p in sorted(hu):
                if p:
                    keys.append((u, p))
                    rhs.append(-hu[p])
        sols = _solve(tower, L_alpha, rhs, level - 1, "field")
        s = len(sols)
        col = {key: idx for idx, key in enumerate(keys)}
        rows = []
        for (u, p), idx in col.items():
            if p:
                base_idx = col[(u, 0)]
                rows.append([QX(sols[q][1][idx]) - X ** p * QX(sols[q][1][base_idx]) for q in range(s)])
        ker = polynomial_kernel_basis(rows, ncols=s) if s else None
        if ker is None or not ker.basis:
            return max(ker.delta if ker else 0, b)
        r = len(fs)
        kappas = []
        for v in ker.basis:
            kappas.append([sum((v[q] * QX(sols[q][1][col[(u, 0)]]) for q in range(s)), QX.zero)
                           for u in range(r)])
        if all(not k for kap in kappas for k in kap):
            return max(ker.delta, b)
        bprime = max(ker.delta, b + 1)
        new_fs = []
        for v, kap in zip(ker.basis, kappas):
            entry = []
            for i in range(n + 1):
                acc = {}
                for u in range(r):
                    if kap[u]:
                        for p, c in _poly_mul(_qx_dict(kap[u], F), fs[u][i]).items():
                            acc[p] = acc.get(p, F.zero) + c
                entry.append({p: c for p, c in acc.items() if c})
            w = {}
            for q in range(s):
                if v[q]:
                    for p, c in _qx_dict(v[q], F).items():
                        w[p] = w.get(p, F.zero) + c * sols[q][0]
            entry.append({p: c for p, c in w.items() if c})
            new_fs.append(entry)
        if all(not f[0] for f in new_fs):
            return bprime - 1
        fs, b = new_fs, bprime
    raise IterationLimitError("sigma degree-bound iteration limit")


# -- coefficient recursion --------------------------------------------------------

def _shifted_component(tower, ci, i, D, level):
    """``a_i * sigma**i(t**D)`` for a component ``a_i = sum(c_k t**k)``, as a Laurent dict."""
    cache = tower.__dict__.setdefault("_shifted_cache", {})
    key = (tuple(sorted(ci.items())), i, D, level)
    hit = cache.get(key)
    if hit is not None:
        return hit
    F = tower.field
    if tower.kind(level) == PI:
        shift = {D: tower.alpha_factorial(level, i) ** D}
    else:
        if D < 0:
            raise SolverError("negative degree over a sum monomial")
        eta = tower.eta(level, i)
        shift = {e: int(binomial(D, e)) * (eta ** (D - e) if D - e else F.one) for e in range(D + 1)}
    out = {}
    for k, a in ci.items():
        for e, c in shift.items():
            if c:
                out[k + e] = out.get(k + e, F.zero) + a * c
    out = {k: c for k, c in out.items() if c}
    if len(cache) > 20000:
        cache.clear()
    cache[key] = out
    return out


def _apply_monomial(tower, comps, y, D, level):
    """``L(y * t**D)`` as a Laurent dict, for ``y`` free of ``t``."""
    F = tower.field
    out = {}
    for i, ci in enumerate(comps):
        if not ci:
            continue
        sy = tower.sigma(y, i)
        for k, c in _shifted_component(tower, ci, i, D, level).items():
            out[k] = out.get(k, F.zero) + sy * c
    return {k: c for k, c in out.items() if c}


def _level_one_solutions(tower, a, b, low, high):
    """Undetermined coefficients over Q when the top variable is the first one."""
    F = tower.field
    m = len(b)
    comps = [{k: constant_value(c) for k, c in comp.items()} for comp in _components(a, 1)]
    rhs = [{k: constant_value(c) for k, c in laurent_coeffs(bj, 1).items()} for bj in b]
    t = tower.gen(1)
    affine = []
    for i in range(len(comps)):
        img = laurent_coeffs(tower.sigma(t, i), 1)
        affine.append((constant_value(img.get(1, F.zero)), constant_value(img.get(0, F.zero))))
    columns = []
    for d in range(low, high + 1):
        col = {}
        for (A, B), comp in zip(affine, comps):
            if not comp:
                continue
            if not B:
                shift = {d: A ** d}
            else:
                shift = {e: QQ(int(binomial(d, e))) * A ** e * B ** (d - e) for e in range(d + 1)}
            for k, ak in comp.items():
                for e, c in shift.items():
                    col[k + e] = col.get(k + e, QQ(0)) + ak * c
        columns.append(col)
    for r in rhs:
        columns.append({k: -c for k, c in r.items()})
    keys = sorted({k for col in columns for k in col})
    rows = [[col.get(k, QQ(0)) for col in columns] for k in keys]
    R = tower.ring
    width = len(R.gens)
    shift = t ** low
    sols = []
    for vec in nullspace(rows, len(columns)):
        terms = {(d - low,) + (0,) * (width - 1): c for d, c in zip(range(low, high + 1), vec) if c}
        g = F.new(R.from_dict(terms), R.one) * shift if terms else F.zero
        sols.append((g, tuple(vec[len(columns) - m:])))
    return _independent(tower, 1, sols, m)


def coefficient_recursion(tower, a, b, level, low, high):
    """Solutions ``g = sum(g_d t**d for low <= d <= high)`` of the equation, as a list of vectors."""
    if level == 1:
        return _level_one_solutions(tower, a, b, low, high)
    F = tower.field
    m = len(b)
    comps = _components(a, level)
    top_deg = max(k for c in comps for k in c)
    kind = tower.kind(level)
    # parameters: (partial solution g, c vector, residual rhs dict)
    params = []
    for j, bj in enumerate(b):
        params.append((F.zero, tuple(QQ(int(i == j)) for i in range(m)), laurent_coeffs(bj, level)))

    def restrict(pred):
        nonlocal params
        keys = sorted({k for _, _, r in params for k in r if pred(k)})
        if not keys or not params:
            return
        vecs = [[r.get(k, F.zero) for k in keys] for _, _, r in params]
        weights = _impose(params, vecs)
        params = [_mix(w) for w in weights]

    def _mix(w):
        g = F.zero
        c = [QQ(0)] * m
        rs = []
        for wi, (gi, ci, ri) in zip(w, params):
            if wi:
                g += F(wi) * gi
                c = [x + wi * y for x, y in zip(c, ci)]
            rs.append(ri)
        return g, tuple(c), _combine(rs, w, F)

    D = high
    while D >= low:
        top = D + top_deg
        restrict(lambda k, top=top: k > top)
        if kind == PI:
            lead = [c.get(top_deg, F.zero) * tower.alpha_factorial(level, i) ** D
                    for i, c in enumerate(comps)]
        else:
            lead = [c.get(top_deg, F.zero) for c in comps]
        rhs = [r.get(top, F.zero) for _, _, r in params]
        sub = _solve(tower, lead, rhs, level - 1, "field")
        t = tower.gen(level)
        new = []
        for y, mu in sub:
            base = _mix(list(mu)) if params else (F.zero, tuple(QQ(0) for _ in range(m)), {})
            g, c, r = base
            if y:
                ly = _apply_monomial(tower, comps, y, D, level)
                r = dict(r)
                for k, v in ly.items():
                    r[k] = r.get(k, F.zero) - v
                r = {k: v for k, v in r.items() if v}
                g = g + y * t ** D
            r.pop(top, None) if not r.get(top) else None
            new.append((g, c, r))
        params = new
        D -= 1
    restrict(lambda k: True)
    sols = [(g, c) for g, c, _ in params]
    return _independent(tower, level, sols, m)


# -- driver -----------------------------------------------------------------------

def _solve(tower, a, b, level, domain="field", bound=None):
    a = _trim(a)
    if not a:
        raise ValueError("operator must be nonzero")
    m = len(b)
    if level == 0:
        return _solve_constants(tower, a, b)
    nu = next(i for i, x in enumerate(a) if x)
    if nu:
        sols = _solve(tower, a[nu:], b, level, domain, bound)
        return [(tower.sigma(g, -nu), c) for g, c in sols]
    a, b = _clear(tower, a, b)
    if len(a) == 1:
        direct = [(bj / a[0], tuple(QQ(int(i == j)) for i in range(m))) for j, bj in enumerate(b)]
        if not direct:
            return []
        return _independent(tower, level, _restrict(tower, direct, level, domain, bound), m)
    kind = tower.kind(level)
    if kind not in (SIGMA, PI):
        raise SolverError("equations are solved only over sum and product monomials")
    if domain == "field":
        d = _coprime_denominator(tower, a, level)
        a2, b2 = _clear(tower, [x / tower.sigma(d, i) for i, x in enumerate(a)], b)
        sols = _solve_poly(tower, a2, b2, level, "poly" if kind == SIGMA else "laurent", None)
        return [(g / d, c) for g, c in sols]
    return _solve_poly(tower, a, b, level, domain, bound)


def _solve_poly(tower, a, b, level, domain, bound):
    kind = tower.kind(level)
    if kind == SIGMA:
        if domain != "poly":
            raise ValueError(f"domain {domain!r} needs a product monomial")
        high = bound if bound is not None else sigma_degree_bound(tower, a, b, level)
        low = 0
    else:
        if domain == "poly" and bound is not None:
            low, high = 0, bound
        else:
            lb = pi_laurent_bounds(tower, a, b, level)
            low, high = lb.order_low, lb.degree_high
            if not lb.nonzero_possible:
                low, high = 0, -1
            if domain == "poly":
                low = max(low, 0)
                if bound is not None:
                    high = min(high, bound)
            elif domain == "inv-poly":
                high = min(high, 0)
    return coefficient_recursion(tower, a, b, level, low, high)


def solve_plde(tower, a, b=(), level=None, domain="field", degree_bound=None, check_tower=True):
    """A Q-basis of all ``(g, c)`` with ``sum(a_i sigma**i(g)) == sum(c_j b_j)``.

    ``domain`` is ``"field"``, ``"poly"``, ``"inv-poly"`` or ``"laurent"``;
    ``degree_bound`` caps the degree for polynomial solutions.
    """
    if domain not in DOMAINS:
        raise ValueError(f"unknown domain {domain!r}")
    if check_tower and not tower.validated:
        raise SolverError("tower not validated")
    a = [tower.element(x) for x in a]
    b = [tower.element(x) for x in b]
    if not any(a):
        raise ValueError("operator must be nonzero")
    if level is None:
        level = max(level_of(x) for x in a + b)
    sols = _solve(tower, a, b, level, domain, degree_bound)
    return SolutionBasis(sols, len(b))


def verify_plde_solution(tower, a, b, g, c):
    """Exact residual check of one solution vector."""
    lhs = tower.field.zero
    for i, x in enumerate(a):
        lhs += tower.element(x) * tower.sigma(g, i)
    rhs = tower.field.zero
    for cj, bj in zip(c, b):
        rhs += tower.field(cj) * tower.element(bj)
    return lhs == rhs
