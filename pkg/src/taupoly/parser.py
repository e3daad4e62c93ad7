"""Problem-description text format: parsing and polynomial rendering.

A problem file is a sequence of ``;``-terminated statements with
``/* ... */`` comments:

    LDUMK := ( <expr> = 0 ) ;            the differential equation
    T := <expr> ;                        initial Taylor partial sum
    interval := ( <number> , <number> ) ;
    n := <integer> ;                     target approximation degree
    reference_taylor_degree := <integer> ;     (optional, analysis only)

    expr   := term (("+"|"-") term)*
    term   := factor ("*" factor)*
    factor := number | "x" ("^" integer)? | "y" | "dif" "(" "y" "," integer ")"
            | "rat" "(" integer "," integer ")" | "(" expr ")" | "-" factor
    number := integer | integer "/" positive-integer

After expansion the equation must be linear in y and its derivatives
with polynomial coefficients: sum P_i(x)*dif(y,i) + P(x)*y + G(x) = 0.
Every rejection raises ``ParseError`` carrying a ``ParseDiagnostic``
with the line/column of the offending lexeme; the parser never throws
anything else, no matter the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .ode import DiffOperator, IvpProblem
from .polynomial import Poly

_MAX_EXPONENT = 100_000
_MAX_DIF_ORDER = 1_000
_MAX_DIGITS = 4_000
_MAX_DEPTH = 200


@dataclass(frozen=True)
class ProblemSource:
    text: str
    origin: str = "<inline>"


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    message: str
    expected: str = ""

    def __str__(self) -> str:
        tail = f" (expected {self.expected})" if self.expected else ""
        return f"{self.line}:{self.column}: {self.message}{tail}"


@dataclass(frozen=True)
class ParseResult:
    problem: IvpProblem
    reference_taylor_degree: int | None


def parse_problem(src: ProblemSource | str) -> IvpProblem:
    """Parse problem text into an IvpProblem, or raise ParseError."""
    return parse_source(src).problem


def parse_source(src: ProblemSource | str) -> ParseResult:
    """Parse problem text keeping the optional analysis statement."""
    if isinstance(src, str):
        src = ProblemSource(text=src)
    return _Parser(_tokenize(src.text)).parse()


def parse_polynomial(text: str) -> Poly:
    """Parse a bare polynomial expression in x (the T statement's grammar)."""
    parser = _Parser(_tokenize(text))
    expr, start = parser.parse_expression()
    parser.expect_kind("eof", "end of input")
    if expr.dterms:
        parser.fail(start, "expression involves y; expected a polynomial in x")
    return expr.poly


# --- rendering ----------------------------------------------------------


def render_poly(p: Poly, style: str = "human") -> str:
    """Render a polynomial as text.

    ``human``: ascending powers, e.g. ``x^2 - 2/7*x^4``; parseable back
    by this module.  ``aplan``: descending powers as a term-per-constant
    algebraic list, e.g. ``x ^ 4 $ rat(-2,7) + x ^ 2``.
    """
    if style == "human":
        return _render_human(p)
    if style == "aplan":
        return _render_aplan(p)
    raise ValueError(f"unknown render style {style!r}")


def _frac_text(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _render_human(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for power, coeff in enumerate(p.coeffs):
        if coeff == 0:
            continue
        lead = ("-" if coeff < 0 else "") if not parts else (" - " if coeff < 0 else " + ")
        mag = abs(coeff)
        if power == 0:
            body = _frac_text(mag)
        else:
            xpart = "x" if power == 1 else f"x^{power}"
            body = xpart if mag == 1 else f"{_frac_text(mag)}*{xpart}"
        parts.append(lead + body)
    return "".join(parts)


def _render_aplan(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for power in range(len(p.coeffs) - 1, -1, -1):
        coeff = p.coeff(power)
        if coeff == 0:
            continue
        if coeff.denominator == 1:
            const = str(coeff.numerator)
        else:
            const = f"rat({coeff.numerator},{coeff.denominator})"
        if power == 0:
            parts.append(const)
        else:
            xpart = "x" if power == 1 else f"x ^ {power}"
            parts.append(xpart if coeff == 1 else f"{xpart} $ {const}")
    return " + ".join(parts)


# --- lexer ---------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # "name" | "int" | "op" | "eof"
    text: str
    line: int
    column: int


_OPS = (":=", "(", ")", ",", ";", "+", "-", "*", "/", "^", "=")


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, length = 0, len(text)

    def diag(message: str, expected: str = "") -> ParseError:
        return ParseError(ParseDiagnostic(line, col, message, expected))

    while i < length:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if text.startswith("/*", i):
            end = text.find("*/", i + 2)
            if end < 0:
                raise diag("unterminated comment", "*/")
            for c in text[i:end + 2]:
                if c == "\n":
                    line, col = line + 1, 1
                else:
                    col += 1
            i = end + 2
            continue
        if ch.isdigit():
            j = i
            while j < length and text[j].isdigit():
                j += 1
            if j - i > _MAX_DIGITS:
                raise diag(f"integer literal longer than {_MAX_DIGITS} digits")
            tokens.append(_Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < length and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if text.startswith(":=", i):
            tokens.append(_Token("op", ":=", line, col))
            i += 2
            col += 2
            continue
        if ch in _OPS:
            tokens.append(_Token("op", ch, line, col))
            i += 1
            col += 1
            continue
        raise diag(f"unknown token {ch!r}")
    tokens.append(_Token("eof", "", line, col))
    return tokens


# --- expression value: G(x) + sum coeffs[i] * dif(y, i) -------------------


@dataclass(frozen=True)
class _Expr:
    poly: Poly
    dterms: tuple[tuple[int, Poly], ...]  # (derivative order, coefficient)

    @staticmethod
    def of_poly(p: Poly) -> "_Expr":
        return _Expr(p, ())

    @staticmethod
    def of_derivative(order: int) -> "_Expr":
        return _Expr(Poly.zero(), ((order, Poly.one()),))

    def is_plain(self) -> bool:
        return not self.dterms

    def _merged(self, other: "_Expr", negate: bool) -> "_Expr":
        acc: dict[int, Poly] = dict(self.dterms)
        for order, coeff in other.dterms:
            add = -coeff if negate else coeff
            acc[order] = acc.get(order, Poly.zero()) + add
        poly = self.poly - other.poly if negate else self.poly + other.poly
        return _Expr(poly, tuple(sorted(acc.items())))

    def __add__(self, other: "_Expr") -> "_Expr":
        return self._merged(other, negate=False)

    def __sub__(self, other: "_Expr") -> "_Expr":
        return self._merged(other, negate=True)

    def __neg__(self) -> "_Expr":
        return _Expr(-self.poly, tuple((o, -c) for o, c in self.dterms))

    def scaled_by(self, p: Poly) -> "_Expr":
        return _Expr(self.poly * p, tuple((o, c * p) for o, c in self.dterms))


# --- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0
        self.depth = 0

    # token plumbing

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, tok: _Token, message: str, expected: str = "") -> None:
        raise ParseError(ParseDiagnostic(tok.line, tok.column, message, expected))

    def expect_op(self, text: str) -> _Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            self.fail(tok, f"unexpected {_describe(tok)}", expected=f"'{text}'")
        return self.advance()

    def expect_kind(self, kind: str, expected: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            self.fail(tok, f"unexpected {_describe(tok)}", expected=expected)
        return self.advance()

    def expect_int(self, what: str, limit: int | None = None) -> int:
        tok = self.expect_kind("int", what)
        value = int(tok.text)
        if limit is not None and value > limit:
            self.fail(tok, f"{what} {value} exceeds the supported limit {limit}")
        return value

    # statements

    def parse(self) -> ParseResult:
        seen: dict[str, object] = {}
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.kind != "name":
                self.fail(tok, f"unexpected {_describe(tok)}", expected="a statement")
            if tok.text in seen:
                self.fail(tok, f"duplicate '{tok.text}' statement")
            if tok.text == "LDUMK":
                seen["LDUMK"] = self.parse_equation()
            elif tok.text == "T":
                seen["T"] = self.parse_initial()
            elif tok.text == "interval":
                seen["interval"] = self.parse_interval()
            elif tok.text == "n":
                self.advance()
                self.expect_op(":=")
                seen["n"] = self.expect_int("degree n", limit=_MAX_EXPONENT)
                self.expect_op(";")
            elif tok.text == "reference_taylor_degree":
                self.advance()
                self.expect_op(":=")
                seen["reference_taylor_degree"] = self.expect_int(
                    "reference Taylor degree", limit=_MAX_EXPONENT)
                self.expect_op(";")
            else:
                self.fail(tok, f"unknown statement '{tok.text}'",
                          expected="LDUMK, T, interval or n")
        for required in ("LDUMK", "T", "interval", "n"):
            if required not in seen:
                self.fail(self.peek(), f"missing '{required}' statement")

        operator = seen["LDUMK"]
        a, b, interval_tok = seen["interval"]
        try:
            problem = IvpProblem(
                operator=operator,
                initial=seen["T"],
                interval=(a, b),
                degree=seen["n"],
            )
        except ValueError as exc:
            self.fail(interval_tok, str(exc))
        return ParseResult(
            problem=problem,
            reference_taylor_degree=seen.get("reference_taylor_degree"),
        )

    def parse_equation(self) -> DiffOperator:
        self.advance()  # LDUMK
        self.expect_op(":=")
        self.expect_op("(")
        expr, _ = self.parse_expression()
        self.expect_op("=")
        zero_tok = self.expect_kind("int", "0")
        if int(zero_tok.text) != 0:
            self.fail(zero_tok, "right-hand side must be 0")
        self.expect_op(")")
        self.expect_op(";")
        orders = dict(expr.dterms)
        top = max(orders) if orders else 0
        coeffs = tuple(orders.get(i, Poly.zero()) for i in range(top + 1))
        return DiffOperator(coeffs=coeffs, inhomogeneous=expr.poly)

    def parse_initial(self) -> Poly:
        self.advance()  # T
        self.expect_op(":=")
        expr, start = self.parse_expression()
        if expr.dterms:
            self.fail(start, "initial sum must be a polynomial in x, not involve y")
        self.expect_op(";")
        return expr.poly

    def parse_interval(self) -> tuple[Fraction, Fraction, _Token]:
        tok = self.advance()  # interval
        self.expect_op(":=")
        self.expect_op("(")
        a = self.parse_signed_number()
        self.expect_op(",")
        b = self.parse_signed_number()
        self.expect_op(")")
        self.expect_op(";")
        if a >= b:
            self.fail(tok, f"invalid interval: need a < b, got [{a}, {b}]")
        return a, b, tok

    def parse_signed_number(self) -> Fraction:
        negate = False
        while self.peek().kind == "op" and self.peek().text == "-":
            self.advance()
            negate = not negate
        value = self.parse_number()
        return -value if negate else value

    def parse_number(self) -> Fraction:
        num = self.expect_int("a number")
        if self.peek().kind == "op" and self.peek().text == "/":
            self.advance()
            den_tok = self.peek()
            den = self.expect_int("a positive integer denominator")
            if den == 0:
                self.fail(den_tok, "malformed rational: denominator is zero")
            return Fraction(num, den)
        return Fraction(num)

    # expressions

    def parse_expression(self) -> tuple[_Expr, _Token]:
        start = self.peek()
        acc = self.parse_term()
        while self.peek().kind == "op" and self.peek().text in ("+", "-"):
            op = self.advance()
            rhs = self.parse_term()
            acc = acc + rhs if op.text == "+" else acc - rhs
        return acc, start

    def parse_term(self) -> _Expr:
        acc = self.parse_factor()
        while self.peek().kind == "op" and self.peek().text == "*":
            star = self.advance()
            rhs = self.parse_factor()
            if not acc.is_plain() and not rhs.is_plain():
                self.fail(star, "nonlinear term: product of two y-dependent factors")
            if rhs.is_plain():
                acc = acc.scaled_by(rhs.poly)
            else:
                acc = rhs.scaled_by(acc.poly)
        return acc

    def parse_factor(self) -> _Expr:
        self.depth += 1
        try:
            if self.depth > _MAX_DEPTH:
                self.fail(self.peek(), "expression nested too deeply")
            tok = self.peek()
            if tok.kind == "int":
                return _Expr.of_poly(Poly.constant(self.parse_number()))
            if tok.kind == "op" and tok.text == "-":
                self.advance()
                return -self.parse_factor()
            if tok.kind == "op" and tok.text == "(":
                self.advance()
                inner, _ = self.parse_expression()
                self.expect_op(")")
                return inner
            if tok.kind == "name":
                if tok.text == "x":
                    self.advance()
                    power = 1
                    if self.peek().kind == "op" and self.peek().text == "^":
                        self.advance()
                        power = self.expect_int("an exponent", limit=_MAX_EXPONENT)
                    return _Expr.of_poly(Poly.monomial(power))
                if tok.text == "y":
                    self.advance()
                    return _Expr.of_derivative(0)
                if tok.text == "dif":
                    self.advance()
                    self.expect_op("(")
                    arg = self.peek()
                    if not (arg.kind == "name" and arg.text == "y"):
                        self.fail(arg, "only y can be differentiated", expected="'y'")
                    self.advance()
                    self.expect_op(",")
                    order = self.expect_int("a derivative order", limit=_MAX_DIF_ORDER)
                    self.expect_op(")")
                    return _Expr.of_derivative(order)
                if tok.text == "rat":
                    self.advance()
                    self.expect_op("(")
                    num = self.parse_signed_integer()
                    self.expect_op(",")
                    den_tok = self.peek()
                    den = self.parse_signed_integer()
                    if den == 0:
                        self.fail(den_tok, "malformed rational: denominator is zero")
                    self.expect_op(")")
                    return _Expr.of_poly(Poly.constant(Fraction(num, den)))
                self.fail(tok, f"unexpected name '{tok.text}'",
                          expected="x, y, dif or rat")
            self.fail(tok, f"unexpected {_describe(tok)}", expected="a factor")
        finally:
            self.depth -= 1

    def parse_signed_integer(self) -> int:
        negate = False
        while self.peek().kind == "op" and self.peek().text == "-":
            self.advance()
            negate = not negate
        value = self.expect_int("an integer")
        return -value if negate else value


def _describe(tok: _Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    return f"token '{tok.text}'"
