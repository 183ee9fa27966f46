"""Dense univariate polynomials over the rationals, lowest degree first."""
from __future__ import annotations

import math
from fractions import Fraction


def trim(p) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p) -> list:
    return trim([i * c for i, c in enumerate(p)][1:])


def add(p, q) -> list:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q) -> list:
    return add(p, [-c for c in q])


def mul(p, q) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def divmod_(p, q):
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in trim(p)]
    out = [Fraction(0)] * max(len(r) - len(q) + 1, 0)
    lead = Fraction(q[-1])
    while len(r) >= len(q):
        shift = len(r) - len(q)
        f = r[-1] / lead
        out[shift] = f
        for i, c in enumerate(q):
            r[i + shift] -= f * c
        r = trim(r)
    return trim(out), r


def monic(p) -> list:
    p = trim(p)
    if not p:
        return []
    lead = Fraction(p[-1])
    return [Fraction(c) / lead for c in p]


def gcd(p, q) -> list:
    """Monic greatest common divisor; the zero polynomial gives []."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def deflate(p, r) -> list:
    """Quotient of p by (t - r), assuming r is a root."""
    q, rem = divmod_(p, [-r, 1])
    if rem:
        raise ValueError("not a root")
    return q


def integer_scaled(p) -> list:
    """Primitive integer multiple of p with positive leading coefficient."""
    p = [Fraction(c) for c in trim(p)]
    den = math.lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = math.gcd(*ints)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def to_str(p, var="t") -> str:
    terms = []
    for i, c in reversed(list(enumerate(p))):
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            terms.append(mono)
        elif mono and c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}*{mono}" if mono else str(c))
    return " + ".join(terms).replace("+ -", "- ") or "0"
