"""Bounded-precision exact arithmetic in Q_p.

Values are stored as prime^valuation * unit with the unit kept as an exact
residue modulo prime^precision, so every operation on rational inputs is
exact: there is no floating point and no rounding, only an explicit digit
budget.  Zero is a distinguished element marked by ``valuation = None`` and
never carries a fake unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

DEFAULT_PRECISION = 24

_ARITH_OPS = ("add", "sub", "mul", "div")


def is_prime(n: int) -> bool:
    """Deterministic primality test by trial division (inputs here are small)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_prime(prime: int) -> None:
    if not isinstance(prime, int) or prime < 2:
        raise ValueError(f"prime must be an integer >= 2, got {prime!r}")
    if not is_prime(prime):
        raise ValueError(f"{prime} is not prime")


def _check_precision(precision: int) -> None:
    # precision >= 3 keeps the mod-8 square criterion available at p = 2
    if not isinstance(precision, int) or precision < 3:
        raise ValueError(f"precision must be an integer >= 3, got {precision!r}")


def valuation(n: int, prime: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("the zero integer has no finite valuation")
    v = 0
    while n % prime == 0:
        n //= prime
        v += 1
    return v


def rational_val_unit(q: Fraction, prime: int) -> tuple[int, int, int]:
    """Split a nonzero rational as p^v * (num/den) with num, den prime to p.

    Returns (v, num, den).  num keeps the sign of q.
    """
    q = Fraction(q)
    if q == 0:
        raise ValueError("zero has no valuation decomposition")
    vn = valuation(q.numerator, prime)
    vd = valuation(q.denominator, prime)
    return vn - vd, q.numerator // prime**vn, q.denominator // prime**vd


@dataclass(frozen=True)
class PadicNumber:
    """An element of Q_p known to ``precision`` significant p-adic digits."""

    prime: int
    valuation: int | None
    unit: int
    precision: int

    def __post_init__(self):
        _check_prime(self.prime)
        _check_precision(self.precision)
        if self.valuation is None:
            object.__setattr__(self, "unit", 0)
            return
        if not isinstance(self.valuation, int):
            raise ValueError("valuation must be an integer or None for zero")
        u = self.unit % self.prime**self.precision
        if u % self.prime == 0:
            raise ValueError("unit part must be invertible modulo the prime")
        object.__setattr__(self, "unit", u)

    @classmethod
    def zero(cls, prime: int, precision: int = DEFAULT_PRECISION) -> "PadicNumber":
        return cls(prime, None, 0, precision)

    @property
    def is_zero(self) -> bool:
        return self.valuation is None

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return f"{self.prime}^{self.valuation} * {self.unit} mod {self.prime}^{self.precision}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, PadicNumber):
            return NotImplemented
        if self.prime != other.prime:
            return False
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if self.valuation != other.valuation:
            return False
        k = min(self.precision, other.precision)
        m = self.prime**k
        return self.unit % m == other.unit % m

    def __hash__(self):
        # agreement mod p^3 is implied by equality, so this hash is consistent
        if self.is_zero:
            return hash((self.prime, None))
        return hash((self.prime, self.valuation, self.unit % self.prime**3))

    def __add__(self, other):
        return arith(self, _coerce(other, self), "add")

    def __radd__(self, other):
        return arith(_coerce(other, self), self, "add")

    def __sub__(self, other):
        return arith(self, _coerce(other, self), "sub")

    def __rsub__(self, other):
        return arith(_coerce(other, self), self, "sub")

    def __mul__(self, other):
        return arith(self, _coerce(other, self), "mul")

    def __rmul__(self, other):
        return arith(_coerce(other, self), self, "mul")

    def __truediv__(self, other):
        return arith(self, _coerce(other, self), "div")

    def __rtruediv__(self, other):
        return arith(_coerce(other, self), self, "div")

    def __neg__(self):
        if self.is_zero:
            return self
        return PadicNumber(self.prime, self.valuation, -self.unit, self.precision)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if self.is_zero:
            if exponent <= 0:
                raise ZeroDivisionError("zero cannot be raised to a nonpositive power")
            return self
        if exponent == 0:
            return from_rational(1, 1, self.prime, self.precision)
        m = self.prime**self.precision
        u = pow(self.unit, exponent, m)
        return PadicNumber(self.prime, self.valuation * exponent, u, self.precision)


def _coerce(value, like: PadicNumber) -> PadicNumber:
    if isinstance(value, PadicNumber):
        return value
    q = Fraction(value)
    return from_rational(q.numerator, q.denominator, like.prime, like.precision)


def from_rational(numerator: int, denominator: int, prime: int,
                  precision: int = DEFAULT_PRECISION) -> PadicNumber:
    """Exact image of numerator/denominator in Q_p at the given precision."""
    _check_prime(prime)
    _check_precision(precision)
    if denominator == 0:
        raise ZeroDivisionError("denominator is zero")
    if numerator == 0:
        return PadicNumber.zero(prime, precision)
    v, num, den = rational_val_unit(Fraction(numerator, denominator), prime)
    m = prime**precision
    unit = num * pow(den, -1, m) % m
    return PadicNumber(prime, v, unit, precision)


def from_int(value: int, prime: int, precision: int = DEFAULT_PRECISION) -> PadicNumber:
    return from_rational(value, 1, prime, precision)


def arith(x: PadicNumber, y: PadicNumber, operator: str) -> PadicNumber:
    """Field arithmetic at the minimum common precision.

    Additive cancellation is tracked honestly: digits lost to cancellation
    are subtracted from the precision, a sum that vanishes to the full
    working precision collapses to the exact zero element, and a result
    left with fewer than 3 significant digits raises.
    """
    if operator not in _ARITH_OPS:
        raise ValueError(f"operator must be one of {_ARITH_OPS}, got {operator!r}")
    if not isinstance(x, PadicNumber) or not isinstance(y, PadicNumber):
        raise TypeError("arith expects PadicNumber operands")
    if x.prime != y.prime:
        raise ValueError(f"prime mismatch: {x.prime} vs {y.prime}")
    if operator == "sub":
        return arith(x, -y, "add")
    if operator == "add":
        return _add(x, y)
    if operator == "mul":
        return _mul(x, y)
    return _div(x, y)


def _add(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    if x.is_zero:
        return y
    if y.is_zero:
        return x
    p = x.prime
    v = min(x.valuation, y.valuation)
    # absolute exponent up to which the sum is known
    known = min(x.valuation + x.precision, y.valuation + y.precision)
    k = known - v
    m = p**k
    total = (x.unit * p**(x.valuation - v) + y.unit * p**(y.valuation - v)) % m
    if total == 0:
        return PadicNumber.zero(p, min(x.precision, y.precision))
    lost = valuation(total, p)
    new_prec = k - lost
    if new_prec < 3:
        raise ValueError(
            f"cancellation left {new_prec} significant digit(s); need at least 3")
    return PadicNumber(p, v + lost, total // p**lost, new_prec)


def _mul(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    prec = min(x.precision, y.precision)
    if x.is_zero or y.is_zero:
        return PadicNumber.zero(x.prime, prec)
    m = x.prime**prec
    return PadicNumber(x.prime, x.valuation + y.valuation, x.unit * y.unit % m, prec)


def _div(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    if y.is_zero:
        raise ZeroDivisionError("division by the zero element")
    prec = min(x.precision, y.precision)
    if x.is_zero:
        return PadicNumber.zero(x.prime, prec)
    m = x.prime**prec
    unit = x.unit * pow(y.unit, -1, m) % m
    return PadicNumber(x.prime, x.valuation - y.valuation, unit, prec)


def legendre(a: int, prime: int) -> int:
    """Quadratic residue symbol mod an odd prime, valued in {+1, -1}."""
    a %= prime
    if a == 0:
        raise ValueError("legendre symbol needs an argument prime to p")
    r = pow(a, (prime - 1) // 2, prime)
    return 1 if r == 1 else -1


@lru_cache(maxsize=None)
def least_nonresidue(prime: int) -> int:
    """Smallest positive quadratic non-residue mod an odd prime."""
    for n in range(2, prime):
        if legendre(n, prime) == -1:
            return n
    raise ValueError(f"no non-residue mod {prime}")


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def primitive_root(prime: int) -> int:
    """Smallest generator of the multiplicative group mod p."""
    _check_prime(prime)
    if prime == 2:
        return 1
    factors = _prime_factors(prime - 1)
    for g in range(2, prime):
        if all(pow(g, (prime - 1) // q, prime) != 1 for q in factors):
            return g
    raise ValueError(f"no primitive root mod {prime}")  # unreachable for prime p


def is_square(x: PadicNumber) -> bool:
    """Square test in Q_p: even valuation plus the unit criterion.

    Odd p needs the unit to be a residue mod p; p = 2 needs it to be
    1 mod 8.  Both follow from Hensel lifting of approximate roots.
    """
    if not isinstance(x, PadicNumber):
        raise TypeError("is_square expects a PadicNumber")
    if x.is_zero:
        raise ValueError("the zero element is excluded from the square test")
    if x.valuation % 2 != 0:
        return False
    if x.prime == 2:
        return x.unit % 8 == 1
    return legendre(x.unit, x.prime) == 1


def is_square_rational(q, prime: int) -> bool:
    """Square test for a nonzero rational viewed inside Q_p."""
    return is_square(_rational_as_padic(q, prime))


def _rational_as_padic(q, prime: int) -> PadicNumber:
    q = Fraction(q)
    return from_rational(q.numerator, q.denominator, prime, DEFAULT_PRECISION)


def _mod_sqrt_prime(u: int, prime: int) -> int:
    """Tonelli-Shanks square root mod an odd prime, residue input."""
    u %= prime
    if prime % 4 == 3:
        return pow(u, (prime + 1) // 4, prime)
    q, s = prime - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = least_nonresidue(prime)
    m, c = s, pow(z, q, prime)
    t, r = pow(u, q, prime), pow(u, (q + 1) // 2, prime)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % prime
            i += 1
        b = pow(c, 1 << (m - i - 1), prime)
        m, c = i, b * b % prime
        t, r = t * c % prime, r * b % prime
    return r


def sqrt(x: PadicNumber) -> PadicNumber:
    """Canonical square root: the smallest nonnegative unit lift among all roots."""
    if not is_square(x):
        raise ValueError("sqrt of a non-square element of Q_p")
    p, n = x.prime, x.precision
    u = x.unit
    modulus = p**n
    if p == 2:
        r = 1
        for k in range(3, n):
            if (r * r - u) % (1 << (k + 1)):
                r += 1 << (k - 1)
        # four roots mod 2^n for n >= 3
        half = modulus >> 1
        root = min(r % modulus, (-r) % modulus, (r + half) % modulus, (half - r) % modulus)
    else:
        r = _mod_sqrt_prime(u, p)
        e = 1
        while e < n:
            e = min(2 * e, n)
            m = p**e
            r = (r + u % m * pow(r, -1, m)) * pow(2, -1, m) % m
        root = min(r, modulus - r)
    return PadicNumber(p, x.valuation // 2, root, n)


@dataclass(frozen=True)
class SquareClass:
    """Canonical representative of a class in Q_p^x / (Q_p^x)^2."""

    prime: int
    representative: int

    def __post_init__(self):
        _check_prime(self.prime)
        if self.representative not in _reps_tuple(self.prime):
            raise ValueError(
                f"{self.representative} is not a canonical square-class "
                f"representative for p={self.prime}")

    @property
    def is_trivial(self) -> bool:
        return self.representative == 1

    def __str__(self) -> str:
        return str(self.representative)


# class of 2^(val mod 2) * (unit mod 8), written with the canonical sign
_TWO_ADIC_CLASSES = {
    (0, 1): 1, (0, 3): -5, (0, 5): 5, (0, 7): -1,
    (1, 1): 2, (1, 3): -10, (1, 5): 10, (1, 7): -2,
}


def square_class(x: PadicNumber) -> SquareClass:
    """Map a nonzero element to its canonical square-class representative."""
    if x.is_zero:
        raise ValueError("zero has no square class")
    p = x.prime
    if p == 2:
        rep = _TWO_ADIC_CLASSES[(x.valuation % 2, x.unit % 8)]
        return SquareClass(2, rep)
    u = least_nonresidue(p)
    odd_val = x.valuation % 2 == 1
    nonres = legendre(x.unit, p) == -1
    rep = (u if nonres else 1) * (p if odd_val else 1)
    return SquareClass(p, rep)


@lru_cache(maxsize=None)
def _reps_tuple(prime: int) -> tuple[int, ...]:
    if prime == 2:
        return (1, -1, 2, -2, 5, -5, 10, -10)
    u = least_nonresidue(prime)
    return (1, u, prime, u * prime)


def square_class_reps(prime: int) -> list[SquareClass]:
    """All square classes of Q_p, trivial class first: 8 for p=2, else 4."""
    _check_prime(prime)
    return [SquareClass(prime, rep) for rep in _reps_tuple(prime)]


def square_class_of_rational(q, prime: int) -> SquareClass:
    return square_class(_rational_as_padic(q, prime))


def teichmuller(residue: int, prime: int, precision: int = DEFAULT_PRECISION) -> PadicNumber:
    """The unique (p-1)-th root of unity congruent to ``residue`` mod p.

    Computed as the fixed point of x -> x^p, which the iteration reaches in
    at most ``precision`` steps.  Only defined for odd p: the 2-adic unit
    roots are just {1, -1} and need no lifting.
    """
    _check_prime(prime)
    _check_precision(precision)
    if prime == 2:
        raise ValueError("teichmuller lifting is for odd p; mu(Q_2) = {1, -1}")
    if residue % prime == 0:
        raise ValueError("residue must be prime to p")
    m = prime**precision
    x = residue % m
    for _ in range(precision + 1):
        nxt = pow(x, prime, m)
        if nxt == x:
            break
        x = nxt
    return PadicNumber(prime, 0, x, precision)
