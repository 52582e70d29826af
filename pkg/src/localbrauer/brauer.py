"""Brauer invariants over Q_p and Witt classes over the Laurent field
Q_p((t)).

Division classes over the Laurent field are held in decomposed form: a
residue invariant in Q/Z plus a character paired with t.  Index and period
come out of exact invariant arithmetic; symbols over extension fields are
never computed directly but routed through the norm and the corestriction
identity, which is enough for every subfield test performed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import extensions, padic, symbols


@dataclass(frozen=True)
class BrauerInv:
    """An element of Q/Z in lowest terms, 0 <= numerator < denominator."""

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        if self.denominator == 0:
            raise ZeroDivisionError("invariant denominator is zero")
        value = Fraction(self.numerator, self.denominator) % 1
        object.__setattr__(self, "numerator", value.numerator)
        object.__setattr__(self, "denominator", value.denominator)

    @property
    def order(self) -> int:
        """Order in Q/Z: the reduced denominator."""
        return self.denominator

    @property
    def is_zero(self) -> bool:
        return self.numerator == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def scaled(self, k: int) -> "BrauerInv":
        if not isinstance(k, int):
            raise TypeError("invariants scale by integers")
        return BrauerInv(self.numerator * k, self.denominator)

    def __add__(self, other):
        if not isinstance(other, BrauerInv):
            return NotImplemented
        return BrauerInv(self.numerator * other.denominator
                         + other.numerator * self.denominator,
                         self.denominator * other.denominator)

    def __neg__(self):
        return BrauerInv(-self.numerator, self.denominator)

    def __sub__(self, other):
        if not isinstance(other, BrauerInv):
            return NotImplemented
        return self + (-other)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class QuadraticCharacter:
    """Order-2 character of Q_p^x cut out by a nontrivial square class."""

    prime: int
    square_class: padic.SquareClass

    def __post_init__(self):
        padic._check_prime(self.prime)
        if self.square_class.prime != self.prime:
            raise ValueError("square class belongs to a different prime")
        if self.square_class.is_trivial:
            raise ValueError("the trivial square class gives no character")

    @property
    def order(self) -> int:
        return 2


@dataclass(frozen=True)
class UnramifiedCharacter:
    """Character factoring through the valuation; determined by its value
    on a uniformizer, a Brauer invariant of exactly the stated order."""

    prime: int
    order: int
    frobenius_value: BrauerInv

    def __post_init__(self):
        padic._check_prime(self.prime)
        if not isinstance(self.order, int) or self.order < 1:
            raise ValueError(f"character order must be a positive integer, got {self.order!r}")
        if not isinstance(self.frobenius_value, BrauerInv):
            raise ValueError("frobenius_value must be a Brauer invariant")
        if self.frobenius_value.order != self.order:
            raise ValueError(
                f"frobenius value {self.frobenius_value} has order "
                f"{self.frobenius_value.order}, not {self.order}")


Character = QuadraticCharacter | UnramifiedCharacter


def trivial_character(prime: int) -> UnramifiedCharacter:
    return UnramifiedCharacter(prime, 1, BrauerInv(0, 1))


@dataclass(frozen=True)
class WittClass:
    """Class over Q_p((t)) in decomposed form: residue part alpha plus the
    pairing of a character of Q_p^x with the uniformizer t."""

    prime: int
    alpha_inv: BrauerInv
    theta: Character = None

    def __post_init__(self):
        padic._check_prime(self.prime)
        if not isinstance(self.alpha_inv, BrauerInv):
            raise ValueError("alpha_inv must be a Brauer invariant")
        if self.theta is None:
            object.__setattr__(self, "theta", trivial_character(self.prime))
        if self.theta.prime != self.prime:
            raise ValueError("character belongs to a different prime")

    @property
    def period(self) -> int:
        return lcm(self.alpha_inv.order, self.theta.order)


def _residue_degree(v) -> int:
    """Degree over Q_p of the residue field an element generates data for."""
    if isinstance(v, extensions.TowerElement):
        return 2 if v.level == 1 else 4
    if isinstance(v, extensions.RootOfUnityElt):
        return v.degree
    raise ValueError(f"no residue field data for {type(v).__name__} elements")


@dataclass(frozen=True)
class CandidateSubfield:
    """Data of a candidate maximal subfield E of a division class over
    Q_p((t)): a residue extension described by the element v together with
    the ramification picked up from the uniformizer.

    Degree over the Laurent field is [residue field : Q_p] * ramification.
    """

    prime: int
    v: object
    ramification: int = 2
    base_class: Fraction | None = None

    def __post_init__(self):
        padic._check_prime(self.prime)
        if not isinstance(self.ramification, int) or self.ramification < 1:
            raise ValueError("ramification must be a positive integer")
        _residue_degree(self.v)  # rejects unsupported element types
        if self.v.prime != self.prime:
            raise ValueError("element belongs to a different prime")
        if isinstance(self.v, extensions.TowerElement):
            if self.base_class is None:
                object.__setattr__(self, "base_class", self.v.base_class)
            elif Fraction(self.base_class) != self.v.base_class:
                raise ValueError(
                    f"stated base class {self.base_class} disagrees with the "
                    f"element's {self.v.base_class}")
        elif self.base_class is not None:
            raise ValueError("unramified candidates carry no base class")

    @property
    def residue_degree(self) -> int:
        return _residue_degree(self.v)

    @property
    def degree_over_K(self) -> int:
        return self.residue_degree * self.ramification


def local_index(inv: BrauerInv) -> int:
    """Index of the division algebra with this invariant: over a local
    field, period equals index, so this is just the order."""
    if not isinstance(inv, BrauerInv):
        raise TypeError("local_index takes a Brauer invariant")
    return inv.order


def restrict_inv(inv: BrauerInv, extension_degree: int) -> BrauerInv:
    """Invariant after base change to an extension of the given degree."""
    if not isinstance(extension_degree, int) or extension_degree < 1:
        raise ValueError(
            f"extension degree must be a positive integer, got {extension_degree!r}")
    return inv.scaled(extension_degree)


def inv_pairing(theta: Character, b) -> BrauerInv:
    """Invariant of the cyclic class (theta, b) over Q_p.

    Unramified characters pair through the valuation of b; quadratic
    characters pair through the Hilbert symbol, landing in {0, 1/2}.
    """
    b = Fraction(b)
    if b == 0:
        raise ValueError("the pairing takes a nonzero second argument")
    if isinstance(theta, UnramifiedCharacter):
        val, _, _ = padic.rational_val_unit(b, theta.prime)
        return theta.frobenius_value.scaled(val)
    if isinstance(theta, QuadraticCharacter):
        a = theta.square_class.representative
        if symbols.hilbert(a, b, theta.prime) is symbols.SymbolValue.PLUS:
            return BrauerInv(0, 1)
        return BrauerInv(1, 2)
    raise ValueError(f"no pairing for {type(theta).__name__}")


def norm_to_prime_field(v) -> Fraction:
    """Full norm of an extension element down to Q_p, as an exact rational.

    Root-of-unity elements only norm to a rational when the result is +-1;
    any other value is a nontrivial Teichmuller root and is refused rather
    than approximated.
    """
    if isinstance(v, extensions.TowerElement):
        if v.level == 1:
            return extensions.quad_norm(v)
        return extensions.tower_norm(v, "base")
    if isinstance(v, extensions.RootOfUnityElt):
        n = extensions.unram_norm(v, 1)
        if n.turn == 0:
            return Fraction(1)
        if n.turn == Fraction(1, 2):
            return Fraction(-1)
        raise ValueError(
            f"norm of {v} is the root of unity {n}, which has no rational value")
    raise ValueError(f"norm unavailable for {type(v).__name__} elements")


def quaternion_cor(a, v, field_descriptor: int | None = None) -> symbols.SymbolValue:
    """Symbol (a, v) over the residue extension, computed in Q_p.

    Corestriction turns the extension-field symbol into (a, N(v))_p, and
    corestriction of quaternion classes is injective here, so the base-field
    symbol faithfully represents the one upstairs.  ``field_descriptor``,
    when given, is the expected degree of the residue extension and guards
    against passing an element of the wrong field.
    """
    a = Fraction(a)
    if a == 0:
        raise ValueError("the symbol takes a nonzero first argument")
    degree = _residue_degree(v)
    if field_descriptor is not None and field_descriptor != degree:
        raise ValueError(
            f"element generates a degree-{degree} residue field, "
            f"not degree {field_descriptor}")
    return symbols.hilbert(a, norm_to_prime_field(v), v.prime)


def witt_index(delta: WittClass) -> int:
    """Index of the decomposed class over Q_p((t)).

    Two independent formulas are evaluated: the lcm of the two component
    orders, and the order of theta times the index of alpha restricted to
    the field cut out by theta.  Disagreement means an implementation bug
    and raises immediately.
    """
    if not isinstance(delta, WittClass):
        raise TypeError("witt_index takes a WittClass")
    by_lcm = lcm(delta.theta.order, delta.alpha_inv.order)
    restricted = restrict_inv(delta.alpha_inv, delta.theta.order)
    by_tower = delta.theta.order * local_index(restricted)
    if by_lcm != by_tower:
        raise AssertionError(
            f"index formulas disagree: lcm gives {by_lcm}, "
            f"tower gives {by_tower}")
    return by_lcm


def char_extendable(theta: Character) -> bool:
    """Whether theta extends to cyclic characters of every larger 2-power
    (resp. prime-power) order.

    Unramified characters always extend.  A quadratic character extends
    exactly when the generating root of unity of Q_p is a norm from its
    field: at p = 2 that root is -1; at odd p it is the Teichmuller lift of
    a primitive root, and only its square class enters the symbol.
    """
    if isinstance(theta, UnramifiedCharacter):
        return True
    if not isinstance(theta, QuadraticCharacter):
        raise ValueError(f"no extendability test for {type(theta).__name__}")
    p = theta.prime
    a = theta.square_class.representative
    if p == 2:
        return symbols.hilbert(a, -1, 2) is symbols.SymbolValue.PLUS
    zeta = padic.teichmuller(padic.primitive_root(p), p)
    obstruction = padic.square_class(zeta).representative
    return symbols.hilbert(a, obstruction, p) is symbols.SymbolValue.PLUS


def restrict_witt(delta: WittClass, candidate: CandidateSubfield) -> BrauerInv:
    """Invariant of delta after base change to the candidate subfield.

    Zero means the candidate splits delta and so embeds as a maximal
    subfield.  The uniformizer part is absorbed by the candidate's
    ramification, leaving the restricted residue invariant plus the
    quaternion pairing of theta's class with v, evaluated by corestriction.
    """
    if candidate.prime != delta.prime:
        raise ValueError("candidate and class live over different primes")
    if candidate.degree_over_K != witt_index(delta):
        raise ValueError(
            f"degree mismatch: candidate has degree {candidate.degree_over_K} "
            f"over the Laurent field but the class has index {witt_index(delta)}")
    if not isinstance(delta.theta, QuadraticCharacter) or candidate.ramification != 2:
        raise ValueError(
            "restriction is implemented for quadratic theta absorbed by "
            "ramification 2")
    a = delta.theta.square_class.representative
    residue_part = restrict_inv(delta.alpha_inv, candidate.residue_degree)
    if quaternion_cor(a, candidate.v) is symbols.SymbolValue.PLUS:
        pairing = BrauerInv(0, 1)
    else:
        pairing = BrauerInv(1, 2)
    return residue_part + pairing
