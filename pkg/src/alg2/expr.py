"""Evaluate the small arithmetic expressions stored in the data file.

Only numbers, names bound in the environment, + - * /, unary minus and
integer powers are accepted. Integer literals become Fractions so that the
result is exact whatever the bound values are.
"""
from __future__ import annotations

import ast
import copy
from fractions import Fraction
from functools import lru_cache


class ExprError(ValueError):
    pass


_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div)


@lru_cache(maxsize=None)
def parse(text: str) -> ast.AST:
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ExprError(f"cannot parse {text!r}") from exc
    _check(tree.body, text)
    return tree.body


def _check(node, text):
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)) and not (
                isinstance(node.right, ast.UnaryOp)
                and isinstance(node.right.op, ast.USub)
                and isinstance(node.right.operand, ast.Constant)
                and isinstance(node.right.operand.value, int)
            ):
                raise ExprError(f"only integer powers are allowed in {text!r}")
        elif not isinstance(node.op, _BINOPS):
            raise ExprError(f"operator not allowed in {text!r}")
        _check(node.left, text)
        _check(node.right, text)
    elif isinstance(node, ast.UnaryOp):
        if not isinstance(node.op, (ast.USub, ast.UAdd)):
            raise ExprError(f"operator not allowed in {text!r}")
        _check(node.operand, text)
    elif isinstance(node, ast.Constant):
        if not isinstance(node.value, int) or isinstance(node.value, bool):
            raise ExprError(f"only integer literals are allowed in {text!r}")
    elif not isinstance(node, ast.Name):
        raise ExprError(f"unsupported syntax {type(node).__name__} in {text!r}")


class _Exact(ast.NodeTransformer):
    """Wrap integer literals so that division stays exact."""

    def visit_Constant(self, node):
        return ast.copy_location(
            ast.Call(func=ast.Name(id="_F", ctx=ast.Load()), args=[node], keywords=[]), node
        )


@lru_cache(maxsize=None)
def _code(text: str):
    body = copy.deepcopy(parse(text))
    tree = ast.Expression(_Exact().visit(_strip_powers(body)))
    ast.fix_missing_locations(tree)
    return compile(tree, "<expr>", "eval")


def _strip_powers(node):
    # exponents must stay plain ints, so protect them from the literal wrapper
    for sub in ast.walk(node):
        if isinstance(sub, ast.BinOp) and isinstance(sub.op, ast.Pow):
            sub.right = ast.Call(
                func=ast.Name(id="int", ctx=ast.Load()), args=[sub.right], keywords=[]
            )
    return node


_GLOBALS = {"__builtins__": {}, "_F": Fraction, "int": int}


def evaluate(text: str, env: dict):
    try:
        return eval(_code(text), _GLOBALS, dict(env))
    except NameError as exc:
        raise ExprError(f"unbound name in {text!r}: {exc}") from None


def names(text: str) -> set:
    return {n.id for n in ast.walk(parse(text)) if isinstance(n, ast.Name)}
