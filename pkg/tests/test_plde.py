import pytest
import sympy

from difftower import Tower
from difftower.algebra import rational_relations
from difftower.errors import IterationLimitError, SolverError
from difftower.lattice import polynomial_kernel_basis
from difftower.ore import OreOp, clear_denominators
from difftower.plde import (iteration_limit, pi_laurent_bounds, sigma_degree_bound, solve_plde,
                            universal_denominator, verify_plde_solution)

from conftest import HN_COEFF, L_SUB, L_TILDE, elements

xs = sympy.Symbol("x")


def same_span(T, basis, expected):
    """Mutual membership of two lists of ``(g, c)`` vectors over Q."""
    def flat(vs):
        return [[g] + [T.field(c) for c in cs] for g, cs in vs]

    got, exp = flat(list(basis)), flat(expected)
    rank = len(got) - len(rational_relations(got)) if got else 0
    rank_e = len(exp) - len(rational_relations(exp)) if exp else 0
    both = got + exp
    rank_both = len(both) - len(rational_relations(both)) if both else 0
    return rank == rank_e == rank_both


class TestKernelBasis:
    def test_one_by_one(self):
        res = polynomial_kernel_basis([[xs - 2]])
        assert res.basis == [] and res.delta == 3

    def test_zero_matrix(self):
        res = polynomial_kernel_basis([[0, 0], [0, 0]])
        assert len(res.basis) == 2 and res.delta == 0

    def test_rank_one(self):
        A = [[xs, -1], [xs ** 2, -xs]]
        res = polynomial_kernel_basis(A)
        assert len(res.basis) == 1
        v = [sympy.sympify(e.as_expr()) for e in res.basis[0]]
        assert sympy.expand(v[1] - xs * v[0]) == 0 and res.delta == 0
        for n in (0, 3, 7):
            An = sympy.Matrix(A).subs(xs, n)
            assert An.rank() == 1
            assert An * sympy.Matrix([e.subs(xs, n) for e in v]) == sympy.zeros(2, 1)

    def test_specialization(self, rng):
        for _ in range(8):
            A = [[sympy.Poly([rng.randint(-3, 3) for _ in range(3)], xs).as_expr() for _ in range(3)]
                 for _ in range(2)]
            res = polynomial_kernel_basis(A)
            M = sympy.Matrix(A)
            for n in range(res.delta, res.delta + 4):
                Mn = M.subs(xs, n)
                vecs = [sympy.Matrix([e.as_expr().subs(xs, n) for e in v]) for v in res.basis]
                assert len(vecs) == 3 - Mn.rank()
                for v in vecs:
                    assert Mn * v == sympy.zeros(2, 1)
                if vecs:
                    assert sympy.Matrix.hstack(*vecs).rank() == len(vecs)


class TestSolve:
    def test_harmonic_polynomial_basis(self, H):
        h = H.gen(2)
        basis = solve_plde(H, elements(H, HN_COEFF), [0], domain="poly")
        assert basis.dimension == 3
        assert same_span(H, basis, [(h, (0,)), (h ** 2, (0,)), (H.field.zero, (1,))])
        for g, c in basis:
            assert verify_plde_solution(H, elements(H, HN_COEFF), [0], g, c)

    def test_factorial_inverse_basis(self, P):
        x, p = P.gen(1), P.gen(2)
        basis = solve_plde(P, elements(P, L_SUB), [0], domain="inv-poly")
        assert same_span(P, basis, [(P.field.zero, (1,)), (1 + x ** 2 / p, (0,))])

    def test_factorial_tilde_polynomial_basis(self, P):
        x, p = P.gen(1), P.gen(2)
        basis = solve_plde(P, elements(P, L_TILDE), [], domain="poly")
        assert same_span(P, basis, [(p + x ** 2, ())])

    def test_inverted_product_variable(self):
        # the same operator written in q = 1/p, where sigma(q) = q/(x+1)
        Q = Tower([("x", "sigma", 1), ("q", "pi", "1/(x+1)")])
        Q.validate()
        coeffs = [Q.element(sympy.sympify(c.replace("p", "(1/q)"))) for c in L_SUB]
        x, q = Q.gen(1), Q.gen(2)
        basis = solve_plde(Q, clear_denominators(OreOp(Q, coeffs)).coeffs, [0], domain="poly")
        assert same_span(Q, basis, [(Q.field.zero, (1,)), (1 + x ** 2 * q, (0,))])

    def test_order_zero(self, H):
        b1 = H.gen(2) ** 2 + 3
        basis = solve_plde(H, [1], [b1])
        assert same_span(H, basis, [(b1, (1,))])

    def test_full_field(self, X):
        # (x+1) g(x+1) - x g(x) = 0 has g = 1/x
        x = X.gen(1)
        basis = solve_plde(X, [-x, x + 1], [])
        assert same_span(X, basis, [(1 / x, ())])

    def test_inhomogeneous_telescoping(self, X):
        x = X.gen(1)
        basis = solve_plde(X, [-1, 1], [1 / (x * (x + 1))])
        assert same_span(X, basis, [(X.field.one, (0,)), (-1 / x, (1,))])

    def test_dimension_bound(self, H):
        basis = solve_plde(H, elements(H, HN_COEFF), [0, H.gen(2)], domain="poly")
        assert basis.dimension <= 2 + 2

    def test_unvalidated_tower(self):
        T = Tower([("x", "sigma", 1)])
        with pytest.raises(SolverError):
            solve_plde(T, [-1, 1], [])


class TestBounds:
    def test_denominators(self, H, P, X):
        assert universal_denominator(P, elements(P, L_SUB)) == P.gen(2)
        assert universal_denominator(H, elements(H, HN_COEFF)) == 1
        assert universal_denominator(X, [-1, 1]) == 1

    def test_pi_bounds(self, P):
        lb = pi_laurent_bounds(P, elements(P, L_SUB))
        assert (lb.m, lb.M) == (-1, 0)
        lb = pi_laurent_bounds(P, elements(P, L_TILDE))
        assert (lb.m, lb.M) == (0, 1) and lb.degree_high == 1

    def test_pi_no_solution(self, P):
        # (E - 2) y = 0 has no nonzero Laurent solution in p
        lb = pi_laurent_bounds(P, [-2 * P.gen(2), P.gen(2)])
        assert not lb.nonzero_possible

    def test_sigma_bound(self, H):
        assert sigma_degree_bound(H, elements(H, HN_COEFF)) == 2

    def test_sigma_bound_free_operator(self, H):
        x, h = H.gen(1), H.gen(2)
        assert sigma_degree_bound(H, [-1, 1], [h ** 3 + x]) == 1 + 3

    def test_sigma_bound_trivial(self, H):
        # the top component w + sigma(w) = 0 has no nonzero solution, so the bound is deg(rhs) - deg(L)
        h = H.gen(2)
        assert sigma_degree_bound(H, [h, h], [h ** 3]) == 2

    def test_iteration_cap(self, H):
        with iteration_limit(0):
            with pytest.raises(IterationLimitError):
                sigma_degree_bound(H, elements(H, HN_COEFF))


def test_cleared_and_original_agree(H):
    L = OreOp(H, [c / (H.gen(1) + 2) for c in elements(H, HN_COEFF)])
    a = solve_plde(H, L.coeffs, [0], domain="poly")
    b = solve_plde(H, clear_denominators(L).coeffs, [0], domain="poly")
    assert same_span(H, a, list(b))
