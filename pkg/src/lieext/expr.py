"""Exact evaluation of the small arithmetic expressions stored in the data files.

Expressions use names, integers, + - * / and integer powers, e.g.
``"-(eta**2 - 1)/nu"``.  Evaluation is over Fraction and never calls eval().
"""

from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

__all__ = ["evaluate", "names_in", "condition_holds"]

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}
_COMPARE = {
    ast.Eq: lambda a, b: a == b,
    ast.NotEq: lambda a, b: a != b,
    ast.Lt: lambda a, b: a < b,
    ast.LtE: lambda a, b: a <= b,
    ast.Gt: lambda a, b: a > b,
    ast.GtE: lambda a, b: a >= b,
}


@lru_cache(maxsize=None)
def _parse(text: str) -> ast.AST:
    return ast.parse(text.strip(), mode="eval").body


def _eval(node: ast.AST, env: Mapping[str, Fraction]):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.Name):
        try:
            return env[node.id]
        except KeyError:
            raise NameError(f"unbound symbol {node.id!r}") from None
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, env)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            base = _eval(node.left, env)
            exp = _eval(node.right, env)
            if exp.denominator != 1:
                raise ValueError("only integer powers are supported")
            return base ** int(exp)
        op = _BINOPS.get(type(node.op))
        if op is not None:
            return op(_eval(node.left, env), _eval(node.right, env))
    if isinstance(node, ast.Compare) and len(node.ops) == 1:
        op = _COMPARE.get(type(node.ops[0]))
        if op is not None:
            return op(_eval(node.left, env), _eval(node.comparators[0], env))
    if isinstance(node, ast.BoolOp):
        vals = [_eval(v, env) for v in node.values]
        return all(vals) if isinstance(node.op, ast.And) else any(vals)
    raise ValueError(f"unsupported expression element {ast.dump(node)}")


def evaluate(text: str, env: Mapping[str, Fraction]) -> Fraction:
    """Value of an arithmetic expression; raises ZeroDivisionError on x/0."""
    return _eval(_parse(text), env)


def condition_holds(text: str, env: Mapping[str, Fraction]) -> bool:
    return bool(_eval(_parse(text), env))


def names_in(text: str) -> set[str]:
    return {n.id for n in ast.walk(_parse(text)) if isinstance(n, ast.Name)}
