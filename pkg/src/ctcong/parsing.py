"""Expression frontend for Laurent polynomials.

Grammar (whitespace insignificant, no implicit multiplication):

    expr    :=  ['+'|'-'] term { ('+'|'-') term }
    term    :=  factor { ('*'|'/') factor }
    factor  :=  ['+'|'-'] factor  |  power
    power   :=  atom [ ('^'|'**') ['-'] INT ]
    atom    :=  INT  |  VAR  |  '(' expr ')'

The divisor of '/' must evaluate to a single-term polynomial whose
coefficient divides every numerator coefficient exactly.  Variables must
be declared up front; the declaration fixes the dimension even when a
variable cancels out.
"""

from .errors import ParseError
from .laurent import LaurentPoly, VARIABLES, graded_lex_terms


class ExprSource:
    """An expression string together with its declared variables."""

    def __init__(self, text, variables):
        variables = tuple(variables)
        if not variables:
            raise ValueError("at least one variable must be declared")
        seen = set()
        for v in variables:
            if v not in VARIABLES:
                raise ValueError(
                    f"variable {v!r} not in allowed set {VARIABLES}")
            if v in seen:
                raise ValueError(f"duplicate variable {v!r}")
            seen.add(v)
        self.text = text
        self.variables = variables


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.pos = 0
        self.vars = {name: i for i, name in enumerate(variables)}
        self.d = len(variables)

    def error(self, message, pos=None):
        raise ParseError(message, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected integer", start)
        return int(self.text[start:self.pos])

    def parse_expr(self):
        ch = self.peek()
        if ch in "+-":
            self.pos += 1
            value = self.parse_term()
            if ch == "-":
                value = -value
        else:
            value = self.parse_term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                value = value + self.parse_term()
            elif ch == "-":
                self.pos += 1
                value = value - self.parse_term()
            else:
                return value

    def parse_term(self):
        value = self.parse_factor()
        while True:
            ch = self.peek()
            if ch == "*" and not self.text.startswith("**", self.pos):
                self.pos += 1
                value = value * self.parse_factor()
            elif ch == "/":
                at = self.pos
                self.pos += 1
                value = self.divide(value, self.parse_factor(), at)
            else:
                return value

    def parse_factor(self):
        ch = self.peek()
        if ch in "+-":
            self.pos += 1
            value = self.parse_factor()
            return -value if ch == "-" else value
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        self.skip_ws()
        if self.text.startswith("**", self.pos):
            self.pos += 2
        elif self.text.startswith("^", self.pos):
            self.pos += 1
        else:
            return base
        self.skip_ws()
        neg = False
        if self.peek() == "-":
            self.pos += 1
            neg = True
        n = self.take_int()
        return self.power(base, -n if neg else n)

    def parse_atom(self):
        ch = self.peek()
        at = self.pos
        if ch == "(":
            self.pos += 1
            value = self.parse_expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        if ch.isdigit():
            return LaurentPoly.constant(self.d, self.take_int())
        if ch.isalpha():
            self.pos += 1
            if ch not in self.vars:
                if ch in VARIABLES:
                    self.error(f"undeclared variable {ch!r}", at)
                self.error(f"unknown symbol {ch!r}", at)
            return LaurentPoly.variable(self.d, self.vars[ch])
        self.error("expected number, variable, or '('", at)

    def power(self, base, n):
        if n >= 0:
            out = LaurentPoly.constant(self.d, 1)
            for _ in range(n):
                out = out * base
            return out
        # negative exponent: base must be a single term
        inv = self.invert_monomial(base, -n)
        return inv

    def invert_monomial(self, base, n):
        if len(base.terms) != 1:
            self.error("negative exponent requires a monomial base")
        (e, c), = base.terms.items()
        if abs(c) != 1:
            # c**-n must stay integral
            if c == 0:
                self.error("zero cannot be inverted")
            self.error(f"coefficient {c} has no integer inverse")
        coeff = c if n % 2 else 1
        return LaurentPoly(base.d, {tuple(-v * n for v in e): coeff})

    def divide(self, num, den, at):
        if den.is_zero():
            self.error("division by zero", at)
        if len(den.terms) != 1:
            self.error("divisor must be a single-term monomial", at)
        (e, c), = den.terms.items()
        out = {}
        for en, cn in num.terms.items():
            q, r = divmod(cn, c)
            if r:
                self.error(
                    f"coefficient {cn} not divisible by {c}", at)
            out[tuple(a - b for a, b in zip(en, e))] = q
        return LaurentPoly(num.d, out)


def parse(src, variables=None):
    """Parse an expression into a LaurentPoly.

    Accepts either an ExprSource or a (text, variables) pair.
    """
    if isinstance(src, ExprSource):
        text, variables = src.text, src.variables
    else:
        if variables is None:
            raise ValueError("variables must be declared")
        text, variables = src, tuple(variables)
        ExprSource(text, variables)  # validate the declaration
    parser = _Parser(text, variables)
    value = parser.parse_expr()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error(f"unexpected character {text[parser.pos]!r}")
    return value


def _monomial_string(e, names):
    parts = []
    for v, name in zip(e, names):
        if v == 0:
            continue
        parts.append(name if v == 1 else f"{name}^{v}")
    return parts


def to_canonical_string(f, variables=None):
    """Graded-lex ordered text form that parse() round-trips to f."""
    names = tuple(variables) if variables is not None else VARIABLES[:f.d]
    if len(names) != f.d:
        raise ValueError(f"expected {f.d} variable names")
    if f.is_zero():
        return "0"
    chunks = []
    for e, c in graded_lex_terms(f):
        parts = _monomial_string(e, names)
        if not parts:
            chunks.append(str(c))
        elif c == 1:
            chunks.append("*".join(parts))
        else:
            chunks.append("*".join([str(c)] + parts))
    return " + ".join(chunks)
