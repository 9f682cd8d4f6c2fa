from fractions import Fraction

import pytest

from difftower.dsl import parse_problem, render_problem
from difftower.errors import ParseError
from difftower.hyper import HyperSolution, hypergeometric_solutions
from difftower.plde import solve_plde
from difftower.render import SequenceNames, canonical, family_terms
from difftower.sequence import SequenceModel, evaluate_sequence, product_start, verify_solution

from conftest import PROBLEMS


def load(name, validate=True):
    return parse_problem((PROBLEMS / name).read_text(), validate=validate)


@pytest.fixture(scope="module")
def harmonic():
    return load("harmonic.dt")


@pytest.fixture(scope="module")
def factorial():
    return load("factorial.dt")


@pytest.fixture(scope="module")
def harmonic_families(harmonic):
    return hypergeometric_solutions(harmonic.tower, harmonic.coeffs)


@pytest.fixture(scope="module")
def factorial_families(factorial):
    return hypergeometric_solutions(factorial.tower, factorial.coeffs)


class TestParse:
    def test_harmonic(self, harmonic):
        T = harmonic.tower
        assert T.names == ["x", "H"] and harmonic.order == 2 and harmonic.homogeneous
        x, h = T.gen(1), T.gen(2)
        assert harmonic.coeffs[2] == h * (1 + x) ** 2 * (2 + x) ** 3 * (1 + h + h * x)
        assert harmonic.inits == {"H": (1, Fraction(1))}

    def test_factorial(self, factorial):
        assert factorial.tower.kind(2) == "pi" and factorial.tower.validated

    def test_constant_problem(self):
        pr = parse_problem("eq: F(n+2) - 3*F(n+1) + 2*F(n) == 0;")
        assert pr.tower.depth == 0 and [int(c.numer.LC) for c in pr.coeffs] == [2, -3, 1]

    def test_negative_shifts_are_normalized(self):
        pr = parse_problem("var x : shift; eq: F(n) - x*F(n-1) == 0;")
        x = pr.tower.gen(1)
        assert pr.coeffs == [-(x + 1), pr.tower.field.one]

    def test_parameterized(self):
        pr = parse_problem("var x : shift; eq: F(n+1) - F(n) == 1/(x+1), x;")
        assert len(pr.rhs) == 2 and not pr.homogeneous

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as exc:
            parse_problem("var x : shift;\neq: F(n+1) - * F(n) == 0;")
        assert exc.value.line == 2 and exc.value.column == 14

    def test_unknown_variable(self):
        with pytest.raises(ParseError, match="unknown"):
            parse_problem("var x : shift;\neq: y*F(n) == 0;")

    def test_later_variable(self):
        with pytest.raises(ParseError):
            parse_problem("var x : sigma(y); var y : shift;")

    def test_invalid_kind(self):
        with pytest.raises(ParseError, match="invalid monomial kind"):
            parse_problem("var x : delta(1);")

    def test_nonlinear_in_f(self):
        with pytest.raises(ParseError):
            parse_problem("var x : shift; eq: F(n)*F(n+1) == 0;")

    def test_invalid_tower(self):
        with pytest.raises(ParseError, match="not valid"):
            parse_problem("var x : shift; var u : sigma(1);")
        assert parse_problem("var x : shift; var u : sigma(1);", validate=False).tower.depth == 2

    def test_round_trip(self):
        for name in ("harmonic.dt", "factorial.dt", "factorial_inv.dt", "harmonic_poly.dt", "normal_form.dt"):
            pr = load(name)
            again = parse_problem(render_problem(pr))
            assert again.tower.names == pr.tower.names
            assert again.tower.monomials == pr.tower.monomials
            assert again.coeffs == pr.coeffs and again.rhs == pr.rhs
            assert again.inits == pr.inits and again.domain == pr.domain
            assert again.pnf_input == pr.pnf_input
            assert render_problem(again) == render_problem(pr)


class TestSequence:
    def test_harmonic_number(self, harmonic):
        model = SequenceModel(harmonic.tower, harmonic.inits)
        assert evaluate_sequence(model, harmonic.tower.gen(2), 3) == Fraction(11, 6)
        assert evaluate_sequence(model, harmonic.tower.gen(1), 17) == 17

    def test_factorial(self, factorial):
        model = SequenceModel(factorial.tower)
        assert evaluate_sequence(model, factorial.tower.gen(2), 4) == 24

    def test_below_start(self, harmonic):
        model = SequenceModel(harmonic.tower, harmonic.inits)
        with pytest.raises(ValueError):
            model.value(2, 0)

    def test_pole_is_undefined(self, harmonic):
        model = SequenceModel(harmonic.tower, harmonic.inits)
        x = harmonic.tower.gen(1)
        assert evaluate_sequence(model, 1 / (x - 4), 4) is None

    def test_product_start(self, harmonic):
        model = SequenceModel(harmonic.tower, harmonic.inits)
        x = harmonic.tower.gen(1)
        assert product_start(model, x - 3, [], 20) == 4

    def test_harmonic_families_verify(self, harmonic, harmonic_families):
        model = SequenceModel(harmonic.tower, harmonic.inits)
        for fam in harmonic_families:
            rep = verify_solution(model, harmonic.coeffs, fam, 30)
            assert rep.ok and rep.checked >= 15

    def test_factorial_families_verify(self, factorial, factorial_families):
        model = SequenceModel(factorial.tower, factorial.inits)
        for fam in factorial_families:
            assert verify_solution(model, factorial.coeffs, fam, 25).ok

    def test_corrupted_solution_fails(self, harmonic, harmonic_families):
        T = harmonic.tower
        model = SequenceModel(T, harmonic.inits)
        fam = harmonic_families[0]
        bad = HyperSolution(fam.u, [v + 1 for v in fam.basis], operator=fam.operator)
        rep = verify_solution(model, harmonic.coeffs, bad, 30)
        # stops at the very first checked index
        assert not rep.ok and len(rep.failures) == 1 and rep.checked == 1

    def test_plde_basis_verifies(self):
        pr = load("harmonic_poly.dt")
        basis = solve_plde(pr.tower, pr.coeffs, pr.rhs, domain=pr.domain)
        rep = verify_solution(SequenceModel(pr.tower, pr.inits), pr.coeffs, basis, 30, pr.rhs)
        assert rep.ok

    def test_insufficient_points(self, harmonic, harmonic_families):
        model = SequenceModel(harmonic.tower, harmonic.inits)
        rep = verify_solution(model, harmonic.coeffs, harmonic_families[0], 5)
        assert not rep.ok and rep.message == "insufficient points"


class TestRender:
    def test_canonical(self, harmonic):
        T = harmonic.tower
        x, h = T.gen(1), T.gen(2)
        assert canonical(T, (1 + h + h * x) / (x + 1)) == "(x*H+H+1)/(x+1)"
        assert canonical(T, h / 2) == "H/2"
        assert canonical(T, -3 / (x * (x + 2))) == "-3/(x^2+2*x)"
        assert canonical(T, T.field.one) == "1"

    def test_names(self, factorial):
        sn = SequenceNames(factorial.tower, SequenceModel(factorial.tower, factorial.inits))
        assert sn.names("n") == ["n", "n!"]

    def test_harmonic(self, harmonic, harmonic_families):
        model = SequenceModel(harmonic.tower, harmonic.inits)
        lam, texts = family_terms(harmonic.tower, model, harmonic_families[0], 30, 2)
        assert lam == 1
        assert texts == ["H(n)*prod(l=1..n,H(l))", "H(n)^2*prod(l=1..n,H(l))"]

    def test_factorial(self, factorial, factorial_families):
        model = SequenceModel(factorial.tower, factorial.inits)
        texts = []
        for fam in factorial_families:
            texts += family_terms(factorial.tower, model, fam, 30, 2)[1]
        assert texts == ["prod(l=1..n,l!)", "(n!+n^2)*2^n*prod(l=1..n,l!)"]

    def test_constant_family(self):
        pr = parse_problem("var x : shift; eq: F(n+1) - F(n) == 0;")
        fam = hypergeometric_solutions(pr.tower, pr.coeffs)[0]
        _, texts = family_terms(pr.tower, SequenceModel(pr.tower), fam)
        assert texts == ["1"]

    def test_deterministic(self, harmonic, harmonic_families):
        model = SequenceModel(harmonic.tower, harmonic.inits)
        a = family_terms(harmonic.tower, model, harmonic_families[0], 30, 2)
        b = family_terms(harmonic.tower, model, harmonic_families[0], 30, 2)
        assert a == b
