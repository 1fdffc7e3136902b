"""Bernoulli numbers and polynomials, exactly.

Conventions: B_1 = -1/2 (generating function w/(e^w - 1)), and
B_n(t) = sum_k C(n,k) B_{n-k} t^k, so B_n(0) = B_n.
"""

from __future__ import annotations

from math import comb

from .field import QQ, FieldValue

_numbers: list = [QQ(1)]


def bernoulli_number(n: int) -> QQ:
    """B_n via the recurrence sum_{k<n} C(n+1,k) B_k = 0, memoized."""
    if n < 0:
        raise ValueError("n must be >= 0")
    while len(_numbers) <= n:
        m = len(_numbers)
        acc = QQ(0)
        for k in range(m):
            acc += comb(m + 1, k) * _numbers[k]
        _numbers.append(-acc / (m + 1))
    return _numbers[n]


def bernoulli_polynomial(n: int, t) -> FieldValue:
    """Exact value of B_n(t) for a FieldValue (or rational) argument."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if not isinstance(t, FieldValue):
        t = FieldValue(QQ(t))
    acc = FieldValue(0)
    tp = FieldValue(1)
    for k in range(n + 1):
        acc = acc + tp * FieldValue(comb(n, k) * bernoulli_number(n - k))
        tp = tp * t
    return acc
