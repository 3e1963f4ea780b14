"""Continued-fraction rational number reconstruction with exact bounds.

Scalars are ``fractions.Fraction`` throughout.  Floats are converted to the
exact dyadic rational they denote (never through a decimal detour), so every
comparison below is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterator

RationalLike = Fraction | int | float | str


def exact_fraction(value: RationalLike) -> Fraction:
    """Exact conversion: floats become the dyadic rational they store."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def iter_convergents(alpha: Fraction) -> Iterator[Fraction]:
    """Continued-fraction convergents of alpha >= 0, in order.

    Denominators are strictly increasing from the second convergent on, and
    the sequence terminates because alpha is rational.
    """
    if alpha < 0:
        raise ValueError("iter_convergents requires alpha >= 0")
    num, den = alpha.numerator, alpha.denominator
    p_prev, q_prev = 1, 0
    p_prev2, q_prev2 = 0, 1
    while True:
        a, rem = divmod(num, den)
        p = a * p_prev + p_prev2
        q = a * q_prev + q_prev2
        yield Fraction(p, q)
        if rem == 0:
            return
        p_prev2, q_prev2 = p_prev, q_prev
        p_prev, q_prev = p, q
        num, den = den, rem


def convergents(alpha: Fraction) -> list[Fraction]:
    return list(iter_convergents(alpha))


def rational_reconstruct(alpha: RationalLike, bound: int) -> Fraction | None:
    """The unique p/q with q <= bound and |alpha - p/q| < 1/(2*bound^2).

    Returns None when no such fraction exists.  Uniqueness makes the first
    qualifying convergent the answer; the distance and denominator
    constraints are re-checked exactly before returning, so a non-None
    result always satisfies them.  Negative inputs are reconstructed by
    sign-splitting.
    """
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    a = exact_fraction(alpha)
    if a < 0:
        found = rational_reconstruct(-a, bound)
        return None if found is None else -found
    radius = Fraction(1, 2 * bound * bound)
    for conv in iter_convergents(a):
        if conv.denominator > bound:
            return None
        if abs(a - conv) < radius:
            return conv
    return None


def denominator_bound(
    accuracy: RationalLike, k: int, n: int, d: int, coord_bound: RationalLike
) -> int | None:
    """Reconstruction denominator bound ceil((2*E*k*n*d*M^(d-1))^(-1/2)).

    E is the root accuracy, k the number of points, n the number of
    variables, d the monomial degree and M the coordinate bound.  Everything
    is evaluated exactly (integer square root with true ceiling, never
    rounded optimistically).  Returns None when 2*E*k*n*d*M^(d-1) >= 1,
    i.e. the accuracy is too poor for any reconstruction.
    """
    E = exact_fraction(accuracy)
    M = exact_fraction(coord_bound)
    if E <= 0 or M <= 0:
        raise ValueError("accuracy and coordinate bound must be positive")
    if min(k, n, d) < 1:
        raise ValueError("k, n, d must be >= 1")
    x = 2 * E * k * n * d * M ** (d - 1)
    if x >= 1:
        return None
    # smallest b with b*b >= 1/x, i.e. b*b*p >= q for x = p/q
    p, q = x.numerator, x.denominator
    b = isqrt(q // p)
    while b * b * p < q:
        b += 1
    while b > 1 and (b - 1) * (b - 1) * p >= q:
        b -= 1
    return b
