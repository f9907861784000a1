"""
Parsing of --angles values such as ``"pi/3x6"`` or ``"1.2,arccos(-1/3),0.9x4"``
"""

import ast
import math
import operator
import re
from typing import Callable, Dict, List

from hyptet.core.errors import DomainError

_REPEAT = re.compile(r"^(?P<expr>.+?)\s*[×x]\s*(?P<count>\d+)$")

_BINARY: Dict[type, Callable[[float, float], float]] = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY: Dict[type, Callable[[float], float]] = {ast.USub: operator.neg, ast.UAdd: operator.pos}
_NAMES = {"pi": math.pi, "π": math.pi}
_FUNCS = {"arccos": math.acos, "acos": math.acos}


def _eval(node: ast.AST) -> float:
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if isinstance(node, ast.BinOp) and type(node.op) in _BINARY:
        return _BINARY[type(node.op)](_eval(node.left), _eval(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        return _UNARY[type(node.op)](_eval(node.operand))
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
        return _FUNCS[node.func.id](_eval(node.args[0]))
    raise DomainError(f"unsupported expression: {ast.dump(node)}")


def evaluate(expr: str) -> float:
    try:
        tree = ast.parse(expr.strip(), mode="eval")
        value = _eval(tree)
    except (SyntaxError, ValueError, ZeroDivisionError, OverflowError) as e:
        raise DomainError(f"cannot evaluate angle {expr!r}: {e}") from e
    if not math.isfinite(value):
        raise DomainError(f"angle {expr!r} is not finite")
    return value


def expand_token(token: str) -> List[float]:
    token = token.strip()
    match = _REPEAT.match(token)
    if match:
        return [evaluate(match.group("expr"))] * int(match.group("count"))
    return [evaluate(token)]


def parse_angles(text: str) -> List[float]:
    """Six values; a single value is repeated on every edge."""
    values: List[float] = []
    for token in text.split(","):
        if token.strip():
            values.extend(expand_token(token))
    if len(values) == 1:
        values *= 6
    if len(values) != 6:
        raise DomainError(f"expected 6 angles, got {len(values)}")
    return values


__all__ = ["evaluate", "expand_token", "parse_angles"]
