import random
import sys
from pathlib import Path

import pytest

from difftower import Tower

ROOT = Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"


def harmonic_tower():
    T = Tower([("x", "sigma", 1), ("h", "sigma", "1/(x+1)")])
    T.validate()
    return T


def factorial_tower():
    T = Tower([("x", "sigma", 1), ("p", "pi", "x+1")])
    T.validate()
    return T


def rational_tower():
    T = Tower([("x", "sigma", 1)])
    T.validate()
    return T


ALPHA_BAR = "(1+h+h*x)"
BETA_BAR = "(3+2*h+2*x+3*h*x+h*x**2)"

# recurrence for F(n) = H_n * prod(H_l), F(n) = H_n^2 * prod(H_l)
HARMONIC = [
    f"{ALPHA_BAR}**2*{BETA_BAR}**2",
    f"-h*(1+x)*(3+2*x)*{BETA_BAR}**2",
    f"h*(1+x)**2*(2+x)**3*{ALPHA_BAR}",
]

# operator whose polynomial solutions are spanned by h and h^2
HN_COEFF = [
    f"{ALPHA_BAR}*{BETA_BAR}",
    f"-h*(3+2*x)*{BETA_BAR}",
    f"h*(2+x)**2*{ALPHA_BAR}",
]

# recurrence for F(n) = prod(l!), F(n) = (n!+n^2) 2^n prod(l!)
FACTORIAL = [
    "-2*p**2*(1+x)**2*(2+x)*(7+3*p+6*x+5*p*x+x**2+2*p*x**2)",
    "p*(1+x)*(2+x)*(16+7*p+16*x+12*p*x+3*x**2+4*p*x**2)",
    "-(2+p+4*x+2*p*x+x**2)",
]

# operator with inverse-polynomial solution 1 + x^2/p
L_SUB = [
    "-(7+3*p+6*x+5*p*x+x**2+2*p*x**2)",
    "(1+x)*(16+7*p+16*x+12*p*x+3*x**2+4*p*x**2)",
    "-2*(1+x)*(2+x)*(2+p+4*x+2*p*x+x**2)",
]

# cleared operator with polynomial solution p + x^2
L_TILDE = [
    "-(7+3*p+6*x+5*p*x+x**2+2*p*x**2)",
    "16+7*p+16*x+12*p*x+3*x**2+4*p*x**2",
    "-2*(2+p+4*x+2*p*x+x**2)",
]


def elements(T, exprs):
    return [T.element(e) for e in exprs]


@pytest.fixture(scope="session")
def H():
    return harmonic_tower()


@pytest.fixture(scope="session")
def P():
    return factorial_tower()


@pytest.fixture(scope="session")
def X():
    return rational_tower()


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_poly(T, rng, level, degree=2, coeff=4):
    """Random polynomial in the first ``level`` variables with small integer coefficients."""
    gens = [T.gen(i) for i in range(1, level + 1)]
    f = T.field.zero
    for _ in range(rng.randint(1, 3)):
        term = T.field(rng.randint(-coeff, coeff) or 1)
        for g in gens:
            term *= g ** rng.randint(0, degree)
        f += term
    return f or T.field.one


def random_element(T, rng, level, degree=2, coeff=4):
    num = random_poly(T, rng, level, degree, coeff)
    den = random_poly(T, rng, level, degree, coeff)
    return num / den


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
