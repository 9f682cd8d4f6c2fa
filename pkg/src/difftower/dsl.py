"""Problem files: a tower declaration plus an equation, in a small statement language.

::

    var x : shift;
    var h : sigma(1/(x+1));
    eq: (x+2)*F(n+1) - F(n) == 0;
    init h at 1 = 1;

Statements end with ``;`` and ``#`` starts a comment.  Besides ``var``,
``eq`` and ``init`` there are ``pnf: EXPR;`` (input for the normal form
command) and ``domain: NAME;`` (solution domain for ``solve plde``).
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .errors import ParseError
from .tower import PI, SIGMA, Tower

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>==|\*\*|[-+*/^(),;:=])
""", re.VERBOSE)

KEYWORDS = {"var", "eq", "init", "pnf", "domain", "at", "sigma", "pi", "shift"}


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    out = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                out.append(Token(kind, tok, line, col))
            col += len(tok)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


@dataclass
class ProblemSpec:
    """Elaborated problem: tower, operator coefficients, right-hand sides and oracle data."""

    tower: Tower
    coeffs: list = field(default_factory=list)
    rhs: list = field(default_factory=list)
    inits: dict = field(default_factory=dict)
    pnf_input: object = None
    domain: str = "field"
    kinds: dict = field(default_factory=dict)
    source: str = ""

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def homogeneous(self):
        return all(not b for b in self.rhs)


class _Linear:
    """``sum(coeff_k * F(n+k)) + const`` while parsing an equation side."""

    def __init__(self, terms, const=sympy.Integer(0)):
        self.terms = terms
        self.const = const

    @staticmethod
    def lift(v):
        return v if isinstance(v, _Linear) else _Linear({}, v)

    def __add__(self, other):
        other = _Linear.lift(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return _Linear(terms, self.const + other.const)

    def scale(self, c):
        return _Linear({k: v * c for k, v in self.terms.items()}, self.const * c)


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0
        self.names = []
        self.allowed = set()
        self.allow_f = False

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.column)

    def next(self):
        t = self.tok
        self.i += 1
        return t

    def expect(self, text):
        if self.tok.text != text:
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.next()

    def expect_name(self):
        if self.tok.kind != "name":
            self.error(f"expected a name, found {self.tok.text or 'end of input'!r}")
        return self.next()

    # expressions -----------------------------------------------------------

    def expr(self):
        v = self.term()
        while self.tok.text in ("+", "-"):
            op = self.next().text
            rhs = self.term()
            v = self.add(v, rhs, op == "-")
        return v

    @staticmethod
    def add(a, b, negate):
        if negate:
            b = b.scale(-1) if isinstance(b, _Linear) else -b
        if isinstance(a, _Linear) or isinstance(b, _Linear):
            return _Linear.lift(a) + b
        return a + b

    def term(self):
        v = self.unary()
        while self.tok.text in ("*", "/"):
            op = self.next()
            rhs = self.unary()
            if op.text == "*":
                if isinstance(v, _Linear) and isinstance(rhs, _Linear):
                    self.error("equation must be linear in F", op)
                if isinstance(v, _Linear):
                    v = v.scale(rhs)
                elif isinstance(rhs, _Linear):
                    v = rhs.scale(v)
                else:
                    v = v * rhs
            else:
                if isinstance(rhs, _Linear):
                    self.error("cannot divide by an F term", op)
                if rhs == 0:
                    self.error("division by zero", op)
                v = v.scale(1 / rhs) if isinstance(v, _Linear) else v / rhs
        return v

    def unary(self):
        if self.tok.text == "-":
            self.next()
            v = self.unary()
            return v.scale(-1) if isinstance(v, _Linear) else -v
        if self.tok.text == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.text in ("^", "**"):
            op = self.next()
            neg = False
            if self.tok.text == "-":
                self.next()
                neg = True
            if self.tok.kind != "num":
                self.error("exponent must be an integer")
            e = int(self.next().text)
            if isinstance(base, _Linear):
                self.error("cannot raise an F term to a power", op)
            if neg and base == 0:
                self.error("division by zero", op)
            return base ** (-e if neg else e)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.next()
            return sympy.Integer(int(t.text))
        if t.text == "(":
            self.next()
            v = self.expr()
            self.expect(")")
            return v
        if t.kind == "name":
            if t.text == "F" and self.toks[self.i + 1].text == "(":
                if not self.allow_f:
                    self.error("F(...) is only allowed on the left of an equation")
                return self.f_term()
            if t.text not in self.allowed:
                if t.text in self.names:
                    self.error(f"variable {t.text!r} is used before its declaration")
                self.error(f"unknown variable {t.text!r}")
            self.next()
            return sympy.Symbol(t.text)
        self.error(f"unexpected {t.text or 'end of input'!r}")

    def f_term(self):
        self.next()
        self.expect("(")
        if self.tok.text != "n":
            self.error("expected the index 'n'")
        self.next()
        k = 0
        if self.tok.text in ("+", "-"):
            sign = -1 if self.next().text == "-" else 1
            if self.tok.kind != "num":
                self.error("expected an integer shift")
            k = sign * int(self.next().text)
        self.expect(")")
        return _Linear({k: sympy.Integer(1)})

    def rational(self):
        sign = 1
        if self.tok.text == "-":
            self.next()
            sign = -1
        if self.tok.kind != "num":
            self.error("expected a rational number")
        num = int(self.next().text)
        den = 1
        if self.tok.text == "/":
            self.next()
            if self.tok.kind != "num":
                self.error("expected a denominator")
            den = int(self.next().text)
            if den == 0:
                self.error("zero denominator")
        return Fraction(sign * num, den)

    def integer(self):
        sign = 1
        if self.tok.text == "-":
            self.next()
            sign = -1
        if self.tok.kind != "num":
            self.error("expected an integer")
        return sign * int(self.next().text)

    # statements ------------------------------------------------------------

    def prescan(self):
        toks = self.toks
        for j in range(len(toks) - 1):
            if toks[j].text == "var" and toks[j + 1].kind == "name":
                if j == 0 or toks[j - 1].text == ";":
                    self.names.append(toks[j + 1].text)

    def parse(self):
        self.prescan()
        decls, eq, inits, pnf, domain = [], None, {}, None, None
        while self.tok.kind != "eof":
            head = self.tok
            if head.text == "var":
                decls.append(self.var_decl())
            elif head.text == "eq":
                if eq is not None:
                    self.error("only one equation is allowed")
                eq = self.equation()
            elif head.text == "init":
                name, at, value, tok = self.init_decl()
                if name in inits:
                    self.error(f"duplicate initial value for {name!r}", tok)
                inits[name] = (at, value)
            elif head.text == "pnf":
                self.next()
                self.expect(":")
                pnf = self.expr()
            elif head.text == "domain":
                self.next()
                self.expect(":")
                parts = [self.expect_name().text]
                while self.tok.text == "-":
                    self.next()
                    parts.append(self.expect_name().text)
                domain = "-".join(parts)
                if domain not in ("field", "poly", "inv-poly", "laurent"):
                    self.error(f"unknown domain {domain!r}", head)
            else:
                self.error(f"unknown statement {head.text!r}")
            self.expect(";")
        return decls, eq, inits, pnf, domain

    def var_decl(self):
        self.next()
        name_tok = self.expect_name()
        name = name_tok.text
        if name in KEYWORDS or name in ("F", "n"):
            self.error(f"{name!r} is reserved", name_tok)
        if name in self.allowed:
            self.error(f"variable {name!r} declared twice", name_tok)
        self.expect(":")
        kind_tok = self.expect_name()
        if kind_tok.text == "shift":
            value = sympy.Integer(1)
            kind = SIGMA
        elif kind_tok.text in ("sigma", "pi"):
            kind = SIGMA if kind_tok.text == "sigma" else PI
            self.expect("(")
            value = self.expr()
            self.expect(")")
        else:
            self.error(f"invalid monomial kind {kind_tok.text!r}", kind_tok)
        self.allowed.add(name)
        return name, kind, value, kind_tok.text, name_tok

    def equation(self):
        self.next()
        self.expect(":")
        self.allow_f = True
        lhs = _Linear.lift(self.expr())
        self.allow_f = False
        if not lhs.terms:
            self.error("equation has no F terms")
        if lhs.const != 0:
            self.error("left-hand side has a term without F")
        self.expect("==")
        rhs = [self.expr()]
        while self.tok.text == ",":
            self.next()
            rhs.append(self.expr())
        return lhs.terms, rhs

    def init_decl(self):
        self.next()
        tok = self.expect_name()
        if tok.text not in self.allowed:
            self.error(f"unknown variable {tok.text!r}", tok)
        if self.tok.text != "at":
            self.error("expected 'at'")
        self.next()
        at = self.integer()
        self.expect("=")
        return tok.text, at, self.rational(), tok


def parse_problem(text, validate=True):
    """Parse and elaborate a problem file; the tower is validated unless asked not to."""
    p = _Parser(text)
    decls, eq, inits, pnf, domain = p.parse()
    levels = [(name, kind, value) for name, kind, value, _, _ in decls]
    try:
        tower = Tower(levels)
    except ValueError as exc:
        tok = decls[-1][4] if decls else None
        raise ParseError(str(exc), tok.line if tok else None, tok.column if tok else None) from exc
    problem = ProblemSpec(tower, inits=inits, domain=domain or "field", source=text,
                          kinds={name: kw for name, _, _, kw, _ in decls})
    if eq is not None:
        terms, rhs = eq
        lo = min(terms)
        hi = max(terms)
        F = tower.field
        coeffs = [F.zero] * (hi - lo + 1)
        for k, c in terms.items():
            coeffs[k - lo] = tower.element(sympy.sympify(c))
        if not any(coeffs):
            raise ParseError("equation has only zero coefficients")
        rhs_el = [tower.element(sympy.sympify(b)) for b in rhs]
        if lo:
            coeffs = [tower.sigma(c, -lo) for c in coeffs]
            rhs_el = [tower.sigma(b, -lo) for b in rhs_el]
        problem.coeffs = coeffs
        problem.rhs = rhs_el
    if pnf is not None:
        problem.pnf_input = tower.element(sympy.sympify(pnf))
    if validate and tower.monomials:
        report = tower.validate()
        if not report.ok:
            bad = report.first_failure
            raise ParseError(f"tower is not valid at {bad.name}: {bad.message}")
    elif not tower.monomials:
        tower.validated = True
    return problem


def render_problem(problem):
    """Problem text that parses back to the same problem."""
    from .render import plain

    T = problem.tower
    lines = []
    for m in T.monomials:
        kw = problem.kinds.get(m.name)
        if kw == "shift":
            lines.append(f"var {m.name} : shift;")
        elif m.kind == SIGMA:
            lines.append(f"var {m.name} : sigma({plain(T, m.beta)});")
        else:
            lines.append(f"var {m.name} : pi({plain(T, m.alpha)});")
    if problem.coeffs:
        terms = [f"({plain(T, c)})*F(n+{i})" for i, c in enumerate(problem.coeffs) if c]
        rhs = ", ".join(plain(T, b) for b in problem.rhs) or "0"
        lines.append("eq: " + " + ".join(terms) + f" == {rhs};")
    for name, (at, value) in problem.inits.items():
        lines.append(f"init {name} at {at} = {value};")
    if problem.pnf_input is not None:
        lines.append(f"pnf: {plain(T, problem.pnf_input)};")
    if problem.domain != "field":
        lines.append(f"domain: {problem.domain};")
    return "\n".join(lines) + "\n"
