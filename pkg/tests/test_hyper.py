import pytest
from sympy.polys.domains import QQ

from difftower import Tower
from difftower.algebra import rational_relations
from difftower.hyper import (HyperSolution, candidate_pairs, constant_level_candidates, hypergeometric_candidates,
                             hypergeometric_solutions, prepare_operator, verify_right_factor)
from difftower.ore import OreOp, riccati_residual, right_divide
from difftower.plde import solve_plde

from conftest import ALPHA_BAR, BETA_BAR, FACTORIAL, HARMONIC, elements

EMPTY = Tower([])
EMPTY.validate()


def span_equal(T, vs, ws):
    a = [[v] for v in vs]
    b = [[w] for w in ws]
    rank = lambda rows: len(rows) - len(rational_relations(rows))
    return rank(a) == rank(b) == rank(a + b)


class TestConstantLevel:
    def test_roots(self):
        assert constant_level_candidates(OreOp(EMPTY, [2, -3, 1])) == {QQ(1), QQ(2)}
        assert constant_level_candidates(OreOp(EMPTY, [-1, 2])) == {QQ(1, 2)}
        assert constant_level_candidates(OreOp(EMPTY, [1, 0, 1])) == set()

    def test_brute_force(self, rng):
        for _ in range(10):
            coeffs = [rng.randint(-6, 6) for _ in range(3)] + [1]
            found = constant_level_candidates(OreOp(EMPTY, coeffs))
            # rational root theorem: a root p/q has p | a_0 and q | a_n = 1
            scan = set()
            lo = next(i for i, c in enumerate(coeffs) if c)
            c0 = abs(coeffs[lo])
            for p in range(1, c0 + 1):
                if c0 % p == 0:
                    for z in (p, -p):
                        if sum(c * z ** i for i, c in enumerate(coeffs)) == 0:
                            scan.add(QQ(z))
            assert found == scan


class TestCandidates:
    def test_pair_counts(self, H):
        L = OreOp(H, elements(H, HARMONIC))
        assert len(candidate_pairs(H, L, pruning=0)) == 36
        pairs = candidate_pairs(H, L, pruning=2)
        x = H.gen(1)
        alpha = H.element(ALPHA_BAR) / (x + 1)
        beta = H.element(BETA_BAR) / ((x + 1) * (x + 2))
        assert {(a, b) for a, b, _ in pairs} == {(alpha, H.field.one), (beta, H.field.one)}

    def test_leading_operator(self, H):
        L = OreOp(H, elements(H, HARMONIC))
        x = H.gen(1)
        alpha = H.element(ALPHA_BAR) / (x + 1)
        Lab = next(op for a, b, op in candidate_pairs(H, L) if a == alpha)
        # with the non-monic 1+h+hx the i-th coefficient gains the factor (x+1)^(i)
        twisted = prepare_operator(OreOp(H, [c * H.factorial(x + 1, i) for i, c in enumerate(Lab.coeffs)]))[0]
        assert twisted == OreOp(H, [1, -(3 + 2 * x), (2 + x) ** 2])

    def test_lower_candidates(self, H):
        x = H.gen(1)
        Lab = OreOp(H, [1, -(3 + 2 * x), (2 + x) ** 2])
        listed = {H.field.one, 1 / (x + 1), 1 / (x + 1) ** 2}
        for k in (0, 1, 2):
            found = {c.u for c in hypergeometric_candidates(H, Lab, level=1, pruning=k)}
            assert 1 / (x + 1) in found and found <= listed
        # listed ratios carry right factors exactly when L_u(v) = sum a_i u^(i) sigma^i(v) = 0 is solvable
        for u in listed:
            Lu = [c * H.factorial(u, i) for i, c in enumerate(Lab.coeffs)]
            dim = solve_plde(H, Lu, [], level=1).dimension
            assert (dim > 0) == (u == 1 / (x + 1))

    def test_surviving_candidate(self, H):
        x, h = H.gen(1), H.gen(2)
        cands = {c.u for c in hypergeometric_candidates(H, OreOp(H, elements(H, HARMONIC)))}
        assert (1 + h + h * x) / (x + 1) in cands

    def test_factorial_leading_operator(self, P):
        x, p = P.gen(1), P.gen(2)
        L = OreOp(P, elements(P, FACTORIAL))
        Lab = next(op for a, b, op in candidate_pairs(P, L) if (a, b) == (p, P.field.one))
        Lab = prepare_operator(Lab)[0]
        expected = [-2 * (1 + x) ** 2 * (2 + x) * (3 + 2 * x), (2 + x) * (7 + 12 * x + 4 * x ** 2), -(1 + 2 * x)]
        assert Lab == OreOp(P, expected)
        lower = {c.u for c in hypergeometric_candidates(P, Lab, level=1)}
        assert {1 + x, 2 * (1 + x) ** 2} <= lower

    def test_pruning_keeps_candidates_with_solutions(self, P):
        L = OreOp(P, elements(P, FACTORIAL))
        for k in (0, 1):
            assert len(candidate_pairs(P, L, pruning=k)) >= len(candidate_pairs(P, L, pruning=2))


class TestSolutions:
    def test_harmonic(self, H):
        x, h = H.gen(1), H.gen(2)
        fams = hypergeometric_solutions(H, elements(H, HARMONIC))
        assert len(fams) == 1
        fam = fams[0]
        assert fam.u == (1 + h + h * x) / (x + 1)
        assert span_equal(H, fam.basis, [h, h ** 2])

    def test_factorial(self, P):
        x, p = P.gen(1), P.gen(2)
        fams = hypergeometric_solutions(P, elements(P, FACTORIAL))
        assert len(fams) == 2
        by_u = {f.u: f for f in fams}
        assert set(by_u) == {(x + 1) * p, 2 * (x + 1) ** 2 * p}
        assert span_equal(P, by_u[(x + 1) * p].basis, [P.field.one])
        assert span_equal(P, by_u[2 * (x + 1) ** 2 * p].basis, [(p + x ** 2) / p])

    def test_first_order_constant(self, X):
        fams = hypergeometric_solutions(X, [-1, 1])
        assert len(fams) == 1 and fams[0].u == 1 and span_equal(X, fams[0].basis, [X.field.one])

    def test_stripped_power_of_shift(self, X):
        x = X.gen(1)
        # E * (E - x) = E^2 - (x+1) E
        L = OreOp(X, [0, -(x + 1), 1])
        L2, s = prepare_operator(L)
        assert s == 1 and riccati_residual(L2, x) == 0
        fams = hypergeometric_solutions(X, L)
        assert any(riccati_residual(L2, f.ratio()) == 0 for f in fams)


class TestVerifyRightFactor:
    def test_harmonic(self, H):
        x, h = H.gen(1), H.gen(2)
        L = OreOp(H, elements(H, HARMONIC))
        sol = HyperSolution((1 + h + h * x) / (x + 1), [h], operator=L)
        assert verify_right_factor(L, sol, [1])

    def test_factorial(self, P):
        x, p = P.gen(1), P.gen(2)
        L = OreOp(P, elements(P, FACTORIAL))
        sol = HyperSolution(2 * (x + 1) ** 2 * p, [1 + x ** 2 / p], operator=L)
        assert verify_right_factor(L, sol, [3])

    def test_negative_control(self, H):
        x, h = H.gen(1), H.gen(2)
        L = OreOp(H, elements(H, HARMONIC))
        sol = HyperSolution((1 + h + h * x) / (x + 1) * (1 + h), [h], operator=L)
        assert not verify_right_factor(L, sol, [1])

    def test_zero_combination(self, H):
        h = H.gen(2)
        L = OreOp(H, elements(H, HARMONIC))
        sol = HyperSolution(h, [h, 2 * h], operator=L)
        with pytest.raises(ValueError):
            verify_right_factor(L, sol, [2, -1])


def test_every_family_divides(H):
    L = OreOp(H, elements(H, HARMONIC))
    for fam in hypergeometric_solutions(H, L):
        for c in ([1, 0], [0, 1], [2, -5]):
            assert verify_right_factor(L, fam, c)
            r = fam.ratio(sum((H.field(ci) * v for ci, v in zip(c, fam.basis)), H.field.zero))
            assert not right_divide(L, OreOp.shift(H, r))[1]

