"""Exact arithmetic in quadratic towers over Q_p, unramified root-of-unity
exponent arithmetic, and the recursive minimal polynomials of the nested
square-root generators of the 2-power cyclotomic subfields.

Tower coordinates are exact rationals throughout; the only p-adic
computations are square tests, which reduce into the padic module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import gmpy2

from . import padic

_Rational = (int, Fraction)


def _check_base(prime: int, base: Fraction) -> None:
    if base == 0:
        raise ValueError("the defining radicand cannot be zero")
    if padic.is_square_rational(base, prime):
        raise ValueError(
            f"{base} is a square in Q_{prime}; the quadratic tower would collapse")


@dataclass(frozen=True)
class TowerElement:
    """Element of Q_p(sqrt(a)) (level 1) or Q_p(sqrt(a))(sqrt(v)) (level 2).

    Level-1 coordinates are a pair of Fractions (x, y) meaning x + y*sqrt(a).
    Level-2 coordinates are a pair of level-1 elements (e0, e1) meaning
    e0 + e1*sqrt(v), where v is the level-1 ``second_radicand``.
    """

    prime: int
    base_class: Fraction
    level: int
    coords: tuple
    second_radicand: "TowerElement | None" = None

    def __post_init__(self):
        padic._check_prime(self.prime)
        object.__setattr__(self, "base_class", Fraction(self.base_class))
        _check_base(self.prime, self.base_class)
        if self.level == 1:
            if self.second_radicand is not None:
                raise ValueError("level-1 elements carry no second radicand")
            x, y = self.coords
            object.__setattr__(self, "coords", (Fraction(x), Fraction(y)))
        elif self.level == 2:
            v = self.second_radicand
            if not isinstance(v, TowerElement) or v.level != 1:
                raise ValueError("the second radicand must be a level-1 element")
            if v.prime != self.prime or v.base_class != self.base_class:
                raise ValueError("the second radicand lives in a different quadratic field")
            if v.is_zero:
                raise ValueError("the second radicand cannot be zero")
            if is_square_in_quadratic(v):
                raise ValueError(
                    f"{v} is a square in the quadratic field; the tower would collapse")
            e0, e1 = self.coords
            if not all(isinstance(e, TowerElement) and e.level == 1 for e in (e0, e1)):
                raise ValueError("level-2 coordinates must be level-1 elements")
            if any(e.prime != self.prime or e.base_class != self.base_class
                   for e in (e0, e1)):
                raise ValueError("level-2 coordinates live in a different quadratic field")
        else:
            raise ValueError(f"level must be 1 or 2, got {self.level!r}")

    @classmethod
    def quadratic(cls, prime: int, a, x, y) -> "TowerElement":
        """x + y*sqrt(a) in Q_p(sqrt(a))."""
        return cls(prime, Fraction(a), 1, (Fraction(x), Fraction(y)))

    @classmethod
    def tower(cls, prime: int, a, radicand: "TowerElement", e0, e1) -> "TowerElement":
        """e0 + e1*sqrt(radicand) at level 2; e0, e1 may be rationals."""
        a = Fraction(a)
        e0 = cls._embed(prime, a, e0)
        e1 = cls._embed(prime, a, e1)
        return cls(prime, a, 2, (e0, e1), radicand)

    @classmethod
    def _embed(cls, prime: int, a: Fraction, value) -> "TowerElement":
        if isinstance(value, TowerElement):
            return value
        return cls.quadratic(prime, a, value, 0)

    @property
    def is_zero(self) -> bool:
        if self.level == 1:
            return self.coords == (0, 0)
        return self.coords[0].is_zero and self.coords[1].is_zero

    def _like(self, coords) -> "TowerElement":
        return TowerElement(self.prime, self.base_class, self.level, coords,
                            self.second_radicand)

    def _coerce(self, other) -> "TowerElement":
        if isinstance(other, TowerElement):
            if other.level == 1 and self.level == 2:
                zero = TowerElement.quadratic(self.prime, self.base_class, 0, 0)
                other = self._like((other, zero))
            if (other.prime, other.base_class, other.level) != (
                    self.prime, self.base_class, self.level):
                raise ValueError("tower mismatch")
            if self.level == 2 and other.second_radicand != self.second_radicand:
                raise ValueError("tower mismatch")
            return other
        if isinstance(other, _Rational):
            if self.level == 1:
                return TowerElement.quadratic(self.prime, self.base_class, other, 0)
            return self._coerce(TowerElement.quadratic(self.prime, self.base_class, other, 0))
        raise TypeError(f"cannot coerce {other!r} into the tower")

    def __add__(self, other):
        other = self._coerce(other)
        return self._like((self.coords[0] + other.coords[0],
                           self.coords[1] + other.coords[1]))

    __radd__ = __add__

    def __neg__(self):
        return self._like((-self.coords[0], -self.coords[1]))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        x1, y1 = self.coords
        x2, y2 = other.coords
        if self.level == 1:
            a = self.base_class
            return self._like((x1 * x2 + a * y1 * y2, x1 * y2 + y1 * x2))
        v = self.second_radicand
        return self._like((x1 * x2 + v * y1 * y2, x1 * y2 + y1 * x2))

    __rmul__ = __mul__

    def conj(self) -> "TowerElement":
        """Conjugate over the field one step down: flips the last coordinate."""
        return self._like((self.coords[0], -self.coords[1]))

    def __str__(self) -> str:
        if self.level == 1:
            x, y = self.coords
            return f"{x}+{y}r"
        e0, e1 = self.coords
        return f"({e0})+({e1})s"


def quad_norm(v: TowerElement) -> Fraction:
    """Norm of a level-1 element down to Q_p: x^2 - a*y^2."""
    if not isinstance(v, TowerElement) or v.level != 1:
        raise ValueError("quad_norm takes a level-1 tower element")
    x, y = v.coords
    return x * x - v.base_class * y * y


def tower_norm(w: TowerElement, target: str):
    """Relative norm of a level-2 element.

    target "mid" gives the level-1 element e0^2 - v*e1^2; target "base"
    composes with quad_norm and returns a rational.
    """
    if not isinstance(w, TowerElement) or w.level != 2:
        raise ValueError("tower_norm takes a level-2 tower element")
    if target not in ("mid", "base"):
        raise ValueError(f'target must be "mid" or "base", got {target!r}')
    e0, e1 = w.coords
    mid = e0 * e0 - w.second_radicand * e1 * e1
    if target == "mid":
        return mid
    return quad_norm(mid)


def _det4(m) -> Fraction:
    """Exact 4x4 determinant by cofactor expansion along the first column."""
    def det3(r):
        return (r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]))
    total = Fraction(0)
    sign = 1
    for i in range(4):
        if m[i][0]:
            minor = [row[1:] for j, row in enumerate(m) if j != i]
            total += sign * m[i][0] * det3(minor)
        sign = -sign
    return total


def full_norm(w: TowerElement) -> Fraction:
    """Norm from the level-2 field straight down to Q_p.

    Computed independently of tower_norm as the determinant of the
    multiplication-by-w matrix on the basis (1, r, s, r*s) with r, s the two
    square roots, so it can cross-check norm transitivity.
    """
    if not isinstance(w, TowerElement) or w.level != 2:
        raise ValueError("full_norm takes a level-2 tower element")
    a = w.base_class
    e0, e1 = w.coords
    x0, y0 = e0.coords
    x1, y1 = e1.coords
    t = e1 * w.second_radicand
    tx, ty = t.coords
    cols = [
        (x0, y0, x1, y1),          # w * 1
        (a * y0, x0, a * y1, x1),  # w * r
        (tx, ty, x0, y0),          # w * s
        (a * ty, tx, a * y0, x0),  # w * rs
    ]
    rows = [[cols[c][r] for c in range(4)] for r in range(4)]
    return _det4(rows)


def is_square_in_quadratic(v: TowerElement,
                           precision: int = padic.DEFAULT_PRECISION) -> bool:
    """Decide whether a level-1 element is a square in Q_p(sqrt(a)).

    Uses the explicit root construction: v = (s + t*sqrt(a))^2 forces
    s^2 = (x + n)/2 and t^2 = (x - n)/(2a) for one of the two square roots
    n of the norm of v, so v is a square iff its norm is a square in Q_p
    and for some sign both quotients are squares (or zero) in Q_p.
    """
    if not isinstance(v, TowerElement) or v.level != 1:
        raise ValueError("the square test takes a level-1 tower element")
    if v.is_zero:
        return True
    p = v.prime
    a = v.base_class
    x, _ = v.coords
    norm = quad_norm(v)
    norm_p = padic.from_rational(norm.numerator, norm.denominator, p, precision)
    if not padic.is_square(norm_p):
        return False
    n = padic.sqrt(norm_p)
    xp = padic.from_rational(x.numerator, x.denominator, p, precision)
    two_a = padic.from_rational((2 * a).numerator, (2 * a).denominator, p, precision)
    for root in (n, -n):
        s_sq = (xp + root) / 2
        t_sq = (xp - root) / two_a
        if _square_or_zero(s_sq) and _square_or_zero(t_sq):
            return True
    return False


def _square_or_zero(z: padic.PadicNumber) -> bool:
    return z.is_zero or padic.is_square(z)


@dataclass(frozen=True)
class ReductionReport:
    """Outcome of pushing a level-2 element one step down its tower."""

    vprime: TowerElement
    sqrt_of_vprime_in_L: bool
    quartic_cyclic: bool
    norm_to_base: Fraction
    norm_matches_full: bool
    character_step: str = "assumed (classical identity, not machine-checked)"


def reduction_step_check(a, v: TowerElement,
                         precision: int = padic.DEFAULT_PRECISION) -> ReductionReport:
    """Verify the degree-8-to-degree-4 reduction identities for one tower.

    The ambient field is L = Q_p(sqrt(a_mid)) with a_mid = v.second_radicand,
    required to be cyclic of degree 4 over Q_p.  The report records
    v' = N_{L/L'}(v), whether sqrt(v') already lies in L, whether v'
    regenerates a cyclic quartic tower, the norm of v' to Q_p, and an
    independent cross-check of that norm against the 4x4 determinant norm.
    """
    from . import symbols  # deferred: symbols imports this module at load time

    if not isinstance(v, TowerElement) or v.level != 2:
        raise ValueError("the reduction step takes a level-2 tower element")
    if v.is_zero:
        raise ValueError("the reduction step needs a nonzero element")
    a = Fraction(a)
    if a != v.base_class:
        raise ValueError(f"element lives over base {v.base_class}, not {a}")
    a_mid = v.second_radicand
    if not symbols.cyclic_quartic_test(a, a_mid, precision=precision):
        raise ValueError("the ambient tower is not cyclic of degree 4 over Q_p")
    vprime = tower_norm(v, "mid")
    sqrt_in_L = (is_square_in_quadratic(vprime, precision)
                 or is_square_in_quadratic(vprime * a_mid, precision))
    quartic = symbols.cyclic_quartic_test(a, vprime, precision=precision)
    norm_base = quad_norm(vprime)
    return ReductionReport(
        vprime=vprime,
        sqrt_of_vprime_in_L=sqrt_in_L,
        quartic_cyclic=quartic,
        norm_to_base=norm_base,
        norm_matches_full=(full_norm(v) == norm_base),
    )


def cyclotomic_degree(M: int, prime: int) -> int:
    """Degree of Q_p(zeta_M) over Q_p: the multiplicative order of p mod M."""
    padic._check_prime(prime)
    if not isinstance(M, int) or M < 1:
        raise ValueError(f"modulus must be a positive integer, got {M!r}")
    if gcd(M, prime) != 1:
        raise ValueError(f"modulus {M} is not prime to p={prime}")
    if M == 1:
        return 1
    d, x = 1, prime % M
    while x != 1:
        x = x * prime % M
        d += 1
    return d


@dataclass(frozen=True)
class RootOfUnityElt:
    """zeta_M^exponent inside an unramified extension of Q_p.

    Only the exponent is stored; Frobenius multiplies it by p.  ``degree``
    is the degree of the ambient unramified field (defaults to the full
    cyclotomic degree) and the element must actually lie there, i.e. be
    fixed by the degree-th power of Frobenius.
    """

    modulus: int
    exponent: int
    prime: int
    degree: int | None = None

    def __post_init__(self):
        padic._check_prime(self.prime)
        if not isinstance(self.modulus, int) or self.modulus < 1:
            raise ValueError("modulus must be a positive integer")
        if gcd(self.modulus, self.prime) != 1:
            raise ValueError(
                f"modulus {self.modulus} shares a factor with p={self.prime}; "
                "the extension would be ramified")
        object.__setattr__(self, "exponent", self.exponent % self.modulus)
        full = cyclotomic_degree(self.modulus, self.prime)
        if self.degree is None:
            object.__setattr__(self, "degree", full)
            return
        if not isinstance(self.degree, int) or self.degree < 1:
            raise ValueError("ambient degree must be a positive integer")
        if (pow(self.prime, self.degree, self.modulus) * self.exponent
                - self.exponent) % self.modulus != 0:
            raise ValueError(
                f"zeta_{self.modulus}^{self.exponent} is not fixed by "
                f"Frobenius^{self.degree}, so it is outside the degree-{self.degree} field")

    def order(self) -> int:
        return self.modulus // gcd(self.modulus, self.exponent)

    def frobenius(self) -> "RootOfUnityElt":
        return RootOfUnityElt(self.modulus, self.exponent * self.prime,
                              self.prime, self.degree)

    @property
    def turn(self) -> Fraction:
        """The root of unity as a fraction of a full turn, in [0, 1)."""
        return Fraction(self.exponent, self.modulus)

    def __mul__(self, other):
        if not isinstance(other, RootOfUnityElt):
            return NotImplemented
        if (self.modulus, self.prime, self.degree) != (other.modulus, other.prime,
                                                       other.degree):
            raise ValueError("root-of-unity mismatch")
        return RootOfUnityElt(self.modulus, self.exponent + other.exponent,
                              self.prime, self.degree)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return RootOfUnityElt(self.modulus, self.exponent * k, self.prime, self.degree)

    def __str__(self) -> str:
        return f"zeta_{self.modulus}^{self.exponent}"


def unram_norm(z: RootOfUnityElt, to_subfield_degree: int) -> RootOfUnityElt:
    """Norm down the unramified tower: the exponent picks up the Frobenius
    orbit sum 1 + p^d' + p^(2d') + ... over one coset."""
    if not isinstance(to_subfield_degree, int) or to_subfield_degree < 1:
        raise ValueError("target degree must be a positive integer")
    if z.degree % to_subfield_degree != 0:
        raise ValueError(
            f"{to_subfield_degree} does not divide the ambient degree {z.degree}")
    steps = z.degree // to_subfield_degree
    scale = sum(pow(z.prime, to_subfield_degree * k, z.modulus)
                for k in range(steps)) % z.modulus
    return RootOfUnityElt(z.modulus, z.exponent * scale, z.prime,
                          degree=to_subfield_degree)


_ETA_MAX_LEVEL = 16


def _check_eta_level(j: int) -> None:
    if not isinstance(j, int) or not 1 <= j <= _ETA_MAX_LEVEL:
        raise ValueError(f"level must be an integer in 1..{_ETA_MAX_LEVEL}, got {j!r}")


def _square_nonneg_poly(coeffs: tuple[int, ...]) -> list[int]:
    """Square a polynomial with nonnegative coefficients by Kronecker
    substitution: pack into one big integer, square, unpack.

    Slot width is chosen so product coefficients cannot overflow into the
    next slot; byte alignment keeps the packing a straight memory copy.
    """
    deg = len(coeffs) - 1
    max_bits = max(coeffs).bit_length()
    slot_bits = 2 * max_bits + (2 * deg + 1).bit_length() + 1
    slot_bytes = (slot_bits + 7) // 8
    buf = bytearray((deg + 1) * slot_bytes)
    for i, c in enumerate(coeffs):
        buf[i * slot_bytes:(i + 1) * slot_bytes] = c.to_bytes(slot_bytes, "little")
    packed = gmpy2.mpz(int.from_bytes(bytes(buf), "little"))
    squared = int(packed * packed)
    out_len = 2 * deg + 1
    raw = squared.to_bytes(out_len * slot_bytes, "little")
    return [int.from_bytes(raw[i * slot_bytes:(i + 1) * slot_bytes], "little")
            for i in range(out_len)]


@lru_cache(maxsize=None)
def _eta_even_coeffs(j: int) -> tuple[int, ...]:
    """Even-part coefficients of the level-j minimal polynomial, sign-flipped
    so that every coefficient is nonnegative (constant term first).

    Satisfies G_1(u) = u + 2 and G_{j+1} = G_j^2 - 2, mirroring the
    f_{j+1} = f_j^2 - 2 recursion on the polynomials themselves.
    """
    if j == 1:
        return (2, 1)
    sq = _square_nonneg_poly(_eta_even_coeffs(j - 1))
    sq[0] -= 2
    return tuple(sq)


def eta_minpoly(j: int) -> list[int]:
    """Minimal polynomial of the j-th nested square root of 2 + sqrt(2 + ...).

    Monic of degree 2^j over Q_2, returned as integer coefficients with the
    constant term first.  f_1 = x^2 - 2 and f_{j+1}(x) = f_j(x^2 - 2).
    """
    _check_eta_level(j)
    g = _eta_even_coeffs(j)
    half_deg = 1 << (j - 1)
    out = [0] * (2 * half_deg + 1)
    for i, c in enumerate(g):
        out[2 * i] = c if (half_deg + i) % 2 == 0 else -c
    return out


def eta_norm(j: int) -> int:
    """Field norm of the level-j generator down to Q_2.

    Equals (-1)^degree times the constant coefficient; the degree 2^j is
    even, so this is the constant term: -2 at level 1 and 2 at every level
    after that.
    """
    _check_eta_level(j)
    constant = _eta_even_coeffs(j)[0]
    return -constant if (1 << (j - 1)) % 2 else constant


def is_eisenstein(coeffs: list[int], prime: int) -> bool:
    """Eisenstein criterion on a dense coefficient list (constant term first).

    Requires a monic polynomial of degree >= 1 with every lower coefficient
    divisible by p and constant term not divisible by p^2.
    """
    padic._check_prime(prime)
    if len(coeffs) < 2 or coeffs[-1] != 1:
        return False
    if any(c % prime != 0 for c in coeffs[:-1]):
        return False
    return coeffs[0] % prime**2 != 0
