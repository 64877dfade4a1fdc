"""Bernoulli numbers and polynomials as exact rationals.

Conventions: the generating function ``X exp(tX) / (exp X - 1)`` defines
``B_k(t)``; in particular ``B_k = B_k(0)`` and ``B_1 = -1/2``.

Twisted Bernoulli numbers attached to powers of the Teichmuller character are
always formed with modulus ``ell`` (the character is extended by zero on
multiples of ``ell``), so the untwisted case automatically carries the Euler
factor ``1 - ell**(k-1)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .padic import PadicNum, teichmuller

__all__ = [
    "bernoulli_number",
    "bernoulli_poly",
    "bernoulli_poly_coeffs",
    "gen_bernoulli",
]

# Memo table for B_0, B_1, ...  Concurrent readers are safe: entries are
# immutable Fractions and insertion of an already-present index is idempotent.
_BERNOULLI_CACHE: list[Fraction] = [Fraction(1)]


def bernoulli_number(k: int) -> Fraction:
    """B_k via the defining recurrence sum_{j<=m} C(m+1, j) B_j = 0."""
    if k < 0:
        raise ValueError("k must be >= 0")
    cache = _BERNOULLI_CACHE
    while len(cache) <= k:
        m = len(cache)
        if m > 1 and m % 2 == 1:
            cache.append(Fraction(0))
            continue
        s = Fraction(0)
        for j in range(m):
            if cache[j]:
                s += comb(m + 1, j) * cache[j]
        cache.append(-s / (m + 1))
    return cache[k]


def bernoulli_poly_coeffs(k: int) -> list[Fraction]:
    """Coefficients c_0..c_k of B_k(t) = sum_j c_j t^j."""
    coeffs = [Fraction(0)] * (k + 1)
    for j in range(k + 1):
        coeffs[k - j] = comb(k, j) * bernoulli_number(j)
    return coeffs


def bernoulli_poly(k: int, t) -> Fraction:
    t = Fraction(t)
    acc = Fraction(0)
    for c in reversed(bernoulli_poly_coeffs(k)):
        acc = acc * t + c
    return acc


def gen_bernoulli(k: int, j: int, ell: int, ndigits: int) -> PadicNum:
    """Twisted Bernoulli number for the j-th Teichmuller power, modulus ell.

    Returns ``ell**(k-1) * sum_{a=1..ell-1} omega(a)**j * B_k(a/ell)`` as an
    ell-adic value with ``ndigits`` known digits.  (The character vanishes at
    ``a = ell``.)
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    j %= ell - 1
    work = ndigits + k + 3
    acc = PadicNum.zero(ell)
    for a in range(1, ell):
        term = PadicNum.from_rational(bernoulli_poly(k, Fraction(a, ell)), ell, work)
        if j:
            term = term * teichmuller(a, ell, work) ** j
        acc = acc + term
    out = acc * PadicNum.from_int(ell, ell, work) ** (k - 1)
    return out.reduce_digits(ndigits)
