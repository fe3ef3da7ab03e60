"""

Recursive descent parser for group expressions.

    expr := term { ('x' | '*') term }
    term := atom { '^' int }
    atom := 'Z' | 'S1' | 'F(' int ')' | 'M(' int ')' | 'N(' int ')' | '(' expr ')'

Whitespace is ignored, '^' binds tighter than the product and products are
flattened in written order.

"""


import re
from dataclasses import dataclass

from typing import List

from model.group_kdef import (
    ExprSemanticError,
    Free,
    GroupExpr,
    IntegersZ,
    NonOrientable,
    Orientable,
    Product,
)


class ExprSyntaxError(ValueError):
    """malformed expression, position is the 0-based offset of the offending character"""

    def __init__(self, message: str, position: int, text: str = "") -> None:
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")

    def pointer(self) -> str:
        return f"{self.text}\n{' ' * self.position}^"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


END = "end"

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>S\s*1|Z|F|M|N)|(?P<op>[x*^()]))"
)

_ATOMS = {"F": Free, "M": Orientable, "N": NonOrientable}


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = match.lastgroup
        value = "".join(match.group(kind).split())
        tokens.append(Token(kind, value, match.start(kind)))
        pos = match.end()
    tokens.append(Token(END, "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def error(self, message: str) -> ExprSyntaxError:
        token = self.current
        found = "end of input" if token.kind == END else repr(token.text)
        return ExprSyntaxError(f"{message}, found {found}", token.position, self.text)

    def accept(self, text: str) -> bool:
        if self.current.kind != END and self.current.text == text:
            self.index += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise self.error(f"expected {text!r}")

    def integer(self) -> int:
        token = self.current
        if token.kind != "int":
            raise self.error("expected an integer")
        self.index += 1
        return int(token.text)

    def expr(self) -> GroupExpr:
        items = [self.term()]
        while self.accept("x") or self.accept("*"):
            items.append(self.term())
        return items[0] if len(items) == 1 else Product(tuple(items))

    def term(self) -> GroupExpr:
        result = self.atom()
        while self.accept("^"):
            exponent = self.integer()
            if exponent < 1:
                raise ExprSemanticError(f"exponents must be at least 1, got ^{exponent}")
            result = result if exponent == 1 else Product((result,) * exponent)
        return result

    def atom(self) -> GroupExpr:
        token = self.current
        if token.kind == "name":
            self.index += 1
            if token.text in ("Z", "S1"):
                return IntegersZ()
            self.expect("(")
            value = self.integer()
            self.expect(")")
            return _ATOMS[token.text](value)
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise self.error("expected Z, S1, F(k), M(g), N(q) or '('")

    def parse(self) -> GroupExpr:
        result = self.expr()
        if self.current.kind != END:
            raise self.error("unexpected trailing input")
        return result


def parse_expr(text: str) -> GroupExpr:
    """parse a group expression, e.g. 'M(2) x N(3) x S1' or 'N(2)^3'

    Raises
    ------
    ExprSyntaxError
        malformed input, with the offending position
    ExprSemanticError
        M(0), N(0), N(1), F(0) or a zero exponent

    """
    return _Parser(text).parse()
