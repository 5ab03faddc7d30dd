"""Expression grammar for exact inputs.

Accepted: identifiers, integer and ``p/q`` constants, ``+ - * /``, ``^`` (or
``**``) with integer exponents, parentheses, and ``exp(linear form)``.
Division is allowed by anything that is not exponential.  The result is the
narrowest type that can hold the value: Fraction, Polynomial,
RationalFunction or ExpFunction.
"""

from __future__ import annotations

import ast
import json
from fractions import Fraction
from typing import Mapping, Sequence

from .expfunc import ExpFunction, make_frequency
from .linalg import ExactMatrix
from .polynomial import Polynomial
from .ratfunc import RationalFunction


class ExpressionError(ValueError):
    def __init__(self, message, text="", line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}: {text!r}")
        self.line = line
        self.column = column


def parse_rational(text) -> Fraction:
    """'1/3' -> Fraction(1, 3); also accepts ints and Fractions."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ExpressionError("not a rational number", str(text)) from exc


def parse_expr(text: str, variables: Sequence[str] = (), constants: Mapping[str, object] | None = None):
    """Parse ``text`` into an exact value.

    ``variables`` fixes the leading variable order of the result; other
    identifiers are appended in order of appearance.  ``constants`` maps
    identifiers to values substituted during parsing (parameter
    specialisation).
    """
    src = str(text).replace("^", "**")
    try:
        tree = ast.parse(src.strip(), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError("syntax error", text, exc.lineno, exc.offset) from None
    builder = _Builder(tuple(variables), constants or {}, text)
    value = builder.visit(tree.body)
    return _narrow(value, builder.order)


def _narrow(value, order):
    if isinstance(value, ExpFunction):
        if value.is_rational():
            value = value.rational_part()
        else:
            return ExpFunction({f: c.with_variables(_merge(order, c.variables)) for f, c in value.terms.items()})
    if isinstance(value, RationalFunction):
        value = value.with_variables(_merge(order, value.variables))
        if value.is_polynomial():
            return value.num
        return value
    if isinstance(value, Polynomial):
        return value.with_variables(_merge(order, value.variables))
    return value


def _merge(order, variables):
    return tuple(order) + tuple(v for v in variables if v not in order)


class _Builder(ast.NodeVisitor):
    def __init__(self, variables, constants, text):
        self.order = list(variables)
        self.constants = constants
        self.text = text

    def fail(self, node, message):
        raise ExpressionError(message, self.text, getattr(node, "lineno", None),
                              getattr(node, "col_offset", -1) + 1)

    def generic_visit(self, node):
        self.fail(node, f"unsupported syntax {type(node).__name__}")

    def visit_Constant(self, node):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            self.fail(node, "only integer literals are allowed")
        return Fraction(node.value)

    def visit_Name(self, node):
        if node.id in self.constants:
            value = self.constants[node.id]
            return value if not isinstance(value, (int, str)) else parse_rational(value)
        if node.id == "exp":
            self.fail(node, "exp must be called")
        if node.id not in self.order:
            self.order.append(node.id)
        return Polynomial.var(node.id)

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        self.fail(node, "unsupported unary operator")

    def visit_BinOp(self, node):
        left = self.visit(node.left)
        if isinstance(node.op, ast.Pow):
            exponent = self.visit(node.right)
            if not (isinstance(exponent, Fraction) and exponent.denominator == 1):
                self.fail(node, "exponents must be integer constants")
            k = int(exponent)
            if k < 0:
                if isinstance(left, ExpFunction):
                    self.fail(node, "negative powers of exponentials are not supported")
                return RationalFunction.coerce(left) ** k
            if isinstance(left, Fraction):
                return left ** k
            return left ** k
        right = self.visit(node.right)
        if isinstance(node.op, ast.Add):
            return _lift(left, right, lambda a, b: a + b)
        if isinstance(node.op, ast.Sub):
            return _lift(left, right, lambda a, b: a - b)
        if isinstance(node.op, ast.Mult):
            return _lift(left, right, lambda a, b: a * b)
        if isinstance(node.op, ast.Div):
            if isinstance(right, ExpFunction):
                if right.is_rational():
                    right = right.rational_part()
                else:
                    return ExpFunction.coerce(left) / right
            if isinstance(right, Fraction):
                if not right:
                    self.fail(node, "division by zero")
                return left / right if not isinstance(left, Polynomial) else left * (1 / right)
            if isinstance(right, Polynomial) and right.is_constant():
                c = right.constant_value()
                if not c:
                    self.fail(node, "division by zero")
                return left * (1 / c)
            right = RationalFunction.coerce(right)
            if not right:
                self.fail(node, "division by zero")
            if isinstance(left, ExpFunction):
                return left / right
            return RationalFunction.coerce(left) / right
        self.fail(node, "unsupported operator")

    def visit_Call(self, node):
        if not (isinstance(node.func, ast.Name) and node.func.id == "exp") or len(node.args) != 1 or node.keywords:
            self.fail(node, "only exp(linear form) calls are allowed")
        arg = self.visit(node.args[0])
        if isinstance(arg, Fraction):
            if arg:
                self.fail(node, "exp of a nonzero constant is not rational")
            return Fraction(1)
        if isinstance(arg, RationalFunction):
            if not arg.is_polynomial():
                self.fail(node, "exp argument must be linear")
            arg = arg.num
        if not isinstance(arg, Polynomial) or arg.total_degree() > 1:
            self.fail(node, "exp argument must be a linear form")
        freq = {}
        for e, c in arg.terms.items():
            if not any(e):
                self.fail(node, "exp argument must be homogeneous linear (no constant term)")
            freq[arg.variables[e.index(1)]] = c
        for v in freq:
            if v not in self.order:
                self.order.append(v)
        return ExpFunction.exp(freq)


def _lift(a, b, op):
    if isinstance(a, ExpFunction) or isinstance(b, ExpFunction):
        return op(ExpFunction.coerce(a), ExpFunction.coerce(b))
    if isinstance(a, RationalFunction) or isinstance(b, RationalFunction):
        return op(RationalFunction.coerce(a), RationalFunction.coerce(b))
    return op(a, b)


# -- serialisation ---------------------------------------------------

def dumps(value) -> str:
    """Text form of Fraction, Polynomial, RationalFunction, ExpFunction or
    ExactMatrix; ``loads(dumps(x)) == x``."""
    if isinstance(value, ExactMatrix):
        entries = [[i, j, dumps(v)] for (i, j), v in sorted(value.entries.items())]
        return json.dumps({"rows": value.nrows, "cols": value.ncols, "entries": entries})
    if isinstance(value, (int, Fraction)):
        return str(Fraction(value))
    return str(value)


def loads(text: str, kind: str | None = None):
    """Inverse of :func:`dumps`.  ``kind`` forces the result type."""
    text = text.strip()
    if kind == "matrix" or (kind is None and text.startswith("{")):
        data = json.loads(text)
        entries = {(i, j): loads(v) for i, j, v in data["entries"]}
        return ExactMatrix(data["rows"], data["cols"], entries)
    value = parse_expr(text)
    if kind is None:
        return value
    if kind == "rational":
        if isinstance(value, Polynomial) and value.is_constant():
            return value.constant_value()
        if not isinstance(value, Fraction):
            raise ExpressionError("not a rational constant", text)
        return value
    if kind == "polynomial":
        if isinstance(value, Fraction):
            return Polynomial.constant(value)
        if not isinstance(value, Polynomial):
            raise ExpressionError("not a polynomial", text)
        return value
    if kind == "rational_function":
        if isinstance(value, ExpFunction):
            raise ExpressionError("not a rational function", text)
        return RationalFunction.coerce(value)
    if kind == "exp_function":
        return ExpFunction.coerce(value)
    raise ValueError(f"unknown kind {kind!r}")
