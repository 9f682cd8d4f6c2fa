import pytest

from difftower.ore import OreOp, apply, clear_denominators, multiply, project_components, riccati_residual, right_divide
from difftower.plde import solve_plde
from difftower.sequence import SequenceModel

from conftest import FACTORIAL, HARMONIC, HN_COEFF, L_SUB, L_TILDE, elements, random_element


def rand_op(T, rng, order):
    return OreOp(T, [random_element(T, rng, 2, degree=1, coeff=3) for _ in range(order + 1)])


def test_constant_annihilated(H):
    E1 = OreOp(H, [-1, 1])
    assert apply(E1, H.field(5)) == 0


def test_factorial_operator_numeric(P):
    # (E - (x+1)) p = 0, and p(n) = n! at every n
    x, p = P.gen(1), P.gen(2)
    L = OreOp(P, [-(x + 1), 1])
    assert apply(L, p) == 0
    model = SequenceModel(P, {"p": (1, 1)})
    fact = 1
    for n in range(1, 21):
        fact *= n
        assert model.evaluate(p, n) == fact
        assert model.evaluate(P.sigma(p), n) - (n + 1) * model.evaluate(p, n) == 0


def test_twist_rule(H):
    x, h = H.gen(1), H.gen(2)
    E = OreOp(H, [0, 1])
    hop = OreOp(H, [h])
    assert multiply(E, hop).coeffs == (0, (1 + h + h * x) / (1 + x))


def test_telescoped_annihilator(P):
    x, p = P.gen(1), P.gen(2)
    g = p * (x + 2)
    r = P.sigma(g) / g
    L = multiply(OreOp.shift(P, P.sigma(r)), OreOp.shift(P, r))
    assert apply(L, g) == 0


def test_composition(H, rng):
    for _ in range(5):
        L1, L2 = rand_op(H, rng, rng.randint(0, 2)), rand_op(H, rng, rng.randint(0, 2))
        for _ in range(5):
            f = random_element(H, rng, 2)
            assert apply(multiply(L1, L2), f) == apply(L1, apply(L2, f))


def test_associativity(P, rng):
    for _ in range(4):
        A, B, C = (rand_op(P, rng, rng.randint(0, 2)) for _ in range(3))
        assert multiply(multiply(A, B), C) == multiply(A, multiply(B, C))


def test_right_divide_self(H):
    L = OreOp(H, elements(H, HARMONIC))
    Q, R = right_divide(L, L)
    assert Q.coeffs == (1,) and not R


def test_right_divide_product(H, rng):
    for _ in range(5):
        a, b = random_element(H, rng, 2), random_element(H, rng, 2)
        L = multiply(OreOp.shift(H, a), OreOp.shift(H, b))
        Q, R = right_divide(L, OreOp.shift(H, b))
        assert Q == OreOp.shift(H, a) and not R


def test_right_divide_reassembly(P, rng):
    for _ in range(5):
        L, M = rand_op(P, rng, 3), rand_op(P, rng, rng.randint(1, 2))
        Q, R = right_divide(L, M)
        assert multiply(Q, M) + R == L
        assert R.order < M.order


def test_harmonic_right_factors(H):
    x, h = H.gen(1), H.gen(2)
    L = OreOp(H, elements(H, HARMONIC))
    u = (1 + h + h * x) / (x + 1)
    for v in (h, h ** 2):
        r = u * H.sigma(v) / v
        assert riccati_residual(L, r) == 0
        assert not right_divide(L, OreOp.shift(H, r))[1]


def test_factorial_right_factors(P):
    x, p = P.gen(1), P.gen(2)
    L = OreOp(P, elements(P, FACTORIAL))
    v = (p + x ** 2) / p
    for r in ((x + 1) * p, 2 * (x + 1) ** 2 * p * P.sigma(v) / v):
        assert riccati_residual(L, r) == 0


def test_residual_trivial(X):
    assert riccati_residual(OreOp(X, [-1, 1]), 1) == 0
    assert riccati_residual(OreOp(X, [-2, 1]), 1) == -1
    with pytest.raises(ValueError):
        riccati_residual(OreOp(X, [-1, 1]), 0)


def test_residual_matches_division(H, rng):
    for _ in range(6):
        r1 = random_element(H, rng, 2, degree=1)
        r2 = random_element(H, rng, 2, degree=1)
        L = multiply(OreOp.shift(H, r2), OreOp.shift(H, r1))
        assert riccati_residual(L, r1) == 0
        other = r1 + 1
        assert (riccati_residual(L, other) == 0) == (not right_divide(L, OreOp.shift(H, other))[1])


def test_project_components(H):
    L = OreOp(H, elements(H, HN_COEFF))
    comps = project_components(L, 2)
    assert min(comps) == 0 and max(comps) == 2
    x = H.gen(1)
    top = comps[2].coeffs
    common = (1 + x) * (2 + x)
    assert tuple(c / common for c in top) == (1 + x, -(3 + 2 * x), 2 + x)


def test_project_free_operator(X):
    assert list(project_components(OreOp(X, [1, 2, 3]), 0)) == [0]


def test_project_needs_polynomials(H):
    with pytest.raises(ValueError):
        project_components(OreOp(H, ["1/h", 1]), 2)


def test_project_reassembly(P, rng):
    for _ in range(5):
        L = clear_denominators(rand_op(P, rng, 2))
        comps = project_components(L, 2)
        total = OreOp(P, [])
        for j, Lj in comps.items():
            total = total + OreOp(P, [c * P.gen(2) ** j for c in Lj.coeffs])
        assert total == L
        assert comps[min(comps)] and comps[max(comps)]


def test_clear_denominators_factorial(P):
    p = P.gen(2)
    L = OreOp(P, [a / P.sigma(p, i) for i, a in enumerate(elements(P, L_SUB))])
    assert clear_denominators(L) == OreOp(P, elements(P, L_TILDE))


def test_clear_denominators_polynomial_unchanged(H):
    L = OreOp(H, elements(H, HARMONIC))
    assert clear_denominators(L) == L
    assert clear_denominators(OreOp(H, [2 * c for c in L.coeffs])) == L


def test_clear_denominators_keeps_solutions(H):
    L = OreOp(H, [c / (H.gen(1) + 3) for c in elements(H, HARMONIC)])
    a = solve_plde(H, L.coeffs, [], domain="poly")
    b = solve_plde(H, clear_denominators(L).coeffs, [], domain="poly")
    assert a.dimension == b.dimension
