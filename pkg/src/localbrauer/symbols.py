"""Hilbert symbols over Q_p, twice.

The closed formula reduces (a, b)_p to valuations and residue symbols; the
oracle decides solvability of z^2 = a*x^2 + b*y^2 by exhaustive search over
a modulus large enough that Hensel lifting settles the question over Q_p.
The two implementations share no code, so agreement is real evidence.

Also home to the norm-group membership test, the order-4 extendability
filter, and the cyclic-quartic criterion used to pick tower generators.
"""

from __future__ import annotations

from enum import IntEnum
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import extensions, padic

_ORACLE_MODULUS_CAP = 1 << 26


class SymbolValue(IntEnum):
    """The two values of a quadratic Hilbert symbol, a group under *."""

    PLUS = 1
    MINUS = -1

    def __mul__(self, other):
        if isinstance(other, SymbolValue):
            return SymbolValue(int(self) * int(other))
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "+1" if self is SymbolValue.PLUS else "-1"


def _split(q, prime: int) -> tuple[int, int, int]:
    """Nonzero rational as (valuation, unit numerator, unit denominator)."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("Hilbert symbols take nonzero arguments")
    return padic.rational_val_unit(q, prime)


def _legendre_rational(num: int, den: int, prime: int) -> int:
    # (num/den | p) = (num | p)(den | p) because the symbol is multiplicative
    # and every unit square class is its own inverse
    return padic.legendre(num, prime) * padic.legendre(den, prime)


def _eps(u8: int) -> int:
    """(u - 1)/2 mod 2 for odd u, read off the residue mod 4."""
    return (u8 % 4) // 2


def _omega(u8: int) -> int:
    """(u^2 - 1)/8 mod 2 for odd u, read off the residue mod 8."""
    return 1 if u8 in (3, 5) else 0


def hilbert(a, b, prime: int) -> SymbolValue:
    """Hilbert symbol (a, b)_p by the local closed formulas.

    Only the valuation parities and unit residues enter, so the result
    visibly depends on the square classes of a and b alone.
    """
    padic._check_prime(prime)
    alpha, a_num, a_den = _split(a, prime)
    beta, b_num, b_den = _split(b, prime)
    if prime == 2:
        # the unit part num/den mod 8: odd residues are self-inverse mod 8
        u8 = a_num * a_den % 8
        w8 = b_num * b_den % 8
        exponent = _eps(u8) * _eps(w8) + alpha * _omega(w8) + beta * _omega(u8)
        return SymbolValue.MINUS if exponent % 2 else SymbolValue.PLUS
    sign = 1
    if (alpha * beta * ((prime - 1) // 2)) % 2:
        sign = -sign
    if beta % 2 and _legendre_rational(a_num, a_den, prime) == -1:
        sign = -sign
    if alpha % 2 and _legendre_rational(b_num, b_den, prime) == -1:
        sign = -sign
    return SymbolValue(sign)


@lru_cache(maxsize=None)
def _squares_mod(m: int) -> np.ndarray:
    """Sorted distinct squares modulo m (0 included)."""
    mask = np.zeros(m, dtype=bool)
    chunk = 1 << 20
    # (m - z)^2 = z^2 mod m, so z up to m//2 covers every square
    for start in range(0, m // 2 + 1, chunk):
        z = np.arange(start, min(start + chunk, m // 2 + 1), dtype=np.int64)
        mask[z * z % m] = True
    return np.nonzero(mask)[0]


def hilbert_oracle(a, b, prime: int) -> SymbolValue:
    """Hilbert symbol by brute force: search z^2 = a*x^2 + b*y^2 mod p^B.

    B = 2*max(|v_p(a)|, |v_p(b)|) + (3 if p = 2 else 1) + 2 is large enough
    that a primitive solution mod p^B Hensel-lifts to Q_p, so the search is
    decisive.  A primitive triple has some unit coordinate, and scaling by
    its inverse pins that coordinate to 1; the three resulting families are
    each a two-squares condition c + s*s1 = t*s2 checked by set intersection.
    """
    padic._check_prime(prime)
    a = Fraction(a)
    b = Fraction(b)
    va, _, _ = _split(a, prime)
    vb, _, _ = _split(b, prime)
    B = 2 * max(abs(va), abs(vb)) + (3 if prime == 2 else 1) + 2
    m = prime**B
    if m > _ORACLE_MODULUS_CAP:
        raise ValueError(
            f"oracle modulus {prime}^{B} exceeds the search cap; "
            "use the closed formula for inputs this large")
    # num * den is a square multiple of num/den, hence the same class mod m
    a_int = a.numerator * a.denominator % m
    b_int = b.numerator * b.denominator % m
    squares = _squares_mod(m)
    families = (
        (-a_int, 1, b_int),      # x = 1: -a + z^2 = b*y^2
        (-b_int, 1, a_int),      # y = 1: -b + z^2 = a*x^2
        (1, -a_int, b_int),      # z = 1: 1 - a*x^2 = b*y^2
    )
    for c, s, t in families:
        lhs = (c % m + s % m * squares) % m
        rhs = np.zeros(m, dtype=bool)
        rhs[t % m * squares % m] = True
        if rhs[lhs].any():
            return SymbolValue.PLUS
    return SymbolValue.MINUS


def _require_nonsquare(a, prime: int) -> Fraction:
    a = Fraction(a)
    if a == 0:
        raise ValueError("the quadratic radicand cannot be zero")
    if padic.is_square_rational(a, prime):
        raise ValueError(f"{a} is a square in Q_{prime}; the extension is split")
    return a


def is_norm_quadratic(b, a, prime: int) -> bool:
    """True iff b is a norm from Q_p(sqrt(a)), i.e. (a, b)_p = +1."""
    a = _require_nonsquare(a, prime)
    return hilbert(a, b, prime) is SymbolValue.PLUS


def albert_extendable_deg4(a, prime: int) -> bool:
    """True iff Q_p(sqrt(a)) embeds in a cyclic quartic extension of Q_p.

    By the norm criterion for doubling the degree of a cyclic extension,
    this happens exactly when -1 is a norm, i.e. (a, -1)_p = +1.
    """
    a = _require_nonsquare(a, prime)
    return hilbert(a, -1, prime) is SymbolValue.PLUS


def cyclic_quartic_test(a, v: "extensions.TowerElement",
                        precision: int = padic.DEFAULT_PRECISION) -> bool:
    """Decide whether Q_p(sqrt(a))(sqrt(v)) is cyclic of degree 4 over Q_p.

    Criterion: v must not be a square in the quadratic field, and a times
    the norm of v must be a square in Q_p.
    """
    if not isinstance(v, extensions.TowerElement) or v.level != 1:
        raise ValueError("the quartic test takes a level-1 tower element")
    a = _require_nonsquare(a, v.prime)
    if a != v.base_class:
        raise ValueError(f"element lives over base {v.base_class}, not {a}")
    if v.is_zero:
        raise ValueError("the quartic test needs a nonzero element")
    if extensions.is_square_in_quadratic(v, precision):
        return False
    return padic.is_square_rational(a * extensions.quad_norm(v), v.prime)
