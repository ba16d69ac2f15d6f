"""Commutative semirings with exact arithmetic.

Three semirings are provided, each described by a `Semiring` value carrying the structural
flags the contextuality results depend on:

* `NONNEG_RATIONAL` - exact rationals >= 0, the probabilistic case.
* `BOOLEAN` - {0, 1} with OR/AND, the possibilistic case.
* `REAL_FIELD` - exact signed rationals, standing in for the reals.

Raw scalar values are `fractions.Fraction` (rational kinds) or `bool` (Boolean). The `Scalar`
wrapper tags a raw value with its semiring and refuses to mix semirings.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Union

from simplicial_contextuality.exceptions import UsageError

RawScalar = Union[Fraction, bool]


class SemiringKind(str, Enum):
    NONNEG_RATIONAL = 'rational'
    BOOLEAN = 'boolean'
    REAL_FIELD = 'real'


@dataclass(frozen=True)
class Semiring:
    """Descriptor of a commutative semiring and its structural flags."""

    kind: SemiringKind
    ordered: bool
    zero_sum_free: bool
    integral: bool
    has_negation: bool

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def is_boolean(self) -> bool:
        return self.kind is SemiringKind.BOOLEAN

    @property
    def is_division(self) -> bool:
        """Every nonzero element has a multiplicative inverse (true for all three kinds)."""
        return True

    @property
    def zero(self) -> RawScalar:
        return False if self.is_boolean else Fraction(0)

    @property
    def one(self) -> RawScalar:
        return True if self.is_boolean else Fraction(1)

    def add(self, a: RawScalar, b: RawScalar) -> RawScalar:
        if self.is_boolean:
            return a or b
        return a + b

    def mul(self, a: RawScalar, b: RawScalar) -> RawScalar:
        if self.is_boolean:
            return a and b
        return a * b

    def sum(self, values: Iterable[RawScalar]) -> RawScalar:
        if self.is_boolean:
            return any(values)
        return sum(values, Fraction(0))

    def is_zero(self, a: RawScalar) -> bool:
        return not a

    def neg(self, a: RawScalar) -> RawScalar:
        if not self.has_negation:
            raise UsageError(f"the {self.name} semiring has no additive inverses")
        return -a

    def sub(self, a: RawScalar, b: RawScalar) -> RawScalar:
        return self.add(a, self.neg(b))

    def div(self, a: RawScalar, b: RawScalar) -> RawScalar:
        """Return a * b^-1 for nonzero b."""
        if self.is_zero(b):
            raise ZeroDivisionError(f"division by zero in the {self.name} semiring")
        if self.is_boolean:
            return a
        return a / b

    def coerce(self, value: Any) -> RawScalar:
        """Convert a python value (int, Fraction, bool or "p/q" string) into a raw scalar of this semiring."""
        if isinstance(value, str):
            return self.parse(value)
        if self.is_boolean:
            if isinstance(value, bool):
                return value
            number = Fraction(value)
            if number not in (0, 1):
                raise UsageError(f"{value!r} is not an element of the boolean semiring")
            return bool(number)
        if isinstance(value, float):
            raise UsageError(f"refusing inexact float {value!r}; use a 'p/q' string or Fraction")
        number = Fraction(value)
        if not self.has_negation and number < 0:
            raise UsageError(f"{value!r} is negative, not an element of the {self.name} semiring")
        return number

    def parse(self, text: str) -> RawScalar:
        text = text.strip()
        if self.is_boolean:
            lowered = text.lower()
            if lowered in ('1', 'true'):
                return True
            if lowered in ('0', 'false'):
                return False
            raise UsageError(f"{text!r} is not a boolean scalar")
        try:
            number = Fraction(text)
        except ValueError:
            raise UsageError(f"{text!r} is not a rational literal")
        return self.coerce(number)

    def format(self, value: RawScalar) -> str:
        if self.is_boolean:
            return '1' if value else '0'
        return str(value)


NONNEG_RATIONAL = Semiring(
    SemiringKind.NONNEG_RATIONAL, ordered=True, zero_sum_free=True, integral=True, has_negation=False
)
BOOLEAN = Semiring(SemiringKind.BOOLEAN, ordered=True, zero_sum_free=True, integral=True, has_negation=False)
REAL_FIELD = Semiring(SemiringKind.REAL_FIELD, ordered=True, zero_sum_free=False, integral=True, has_negation=True)

SEMIRINGS = {s.name: s for s in (NONNEG_RATIONAL, BOOLEAN, REAL_FIELD)}


def get_semiring(name: Union[str, Semiring]) -> Semiring:
    if isinstance(name, Semiring):
        return name
    try:
        return SEMIRINGS[name.lower()]
    except KeyError:
        raise UsageError(f"unknown semiring {name!r}, expected one of {sorted(SEMIRINGS)}")


def support_map(value: RawScalar) -> bool:
    """Semiring homomorphism from the rationals onto the Boolean semiring."""
    return bool(value)


@dataclass(frozen=True)
class Scalar:
    """A raw value tagged with the semiring it lives in."""

    value: Any
    semiring: Semiring

    def __post_init__(self):
        object.__setattr__(self, 'value', self.semiring.coerce(self.value))

    def _check(self, other: 'Scalar') -> None:
        if not isinstance(other, Scalar) or other.semiring != self.semiring:
            other_name = other.semiring.name if isinstance(other, Scalar) else type(other).__name__
            raise UsageError(f"cannot combine a {self.semiring.name} scalar with a {other_name} operand")

    def __add__(self, other: 'Scalar') -> 'Scalar':
        self._check(other)
        return Scalar(self.semiring.add(self.value, other.value), self.semiring)

    def __mul__(self, other: 'Scalar') -> 'Scalar':
        self._check(other)
        return Scalar(self.semiring.mul(self.value, other.value), self.semiring)

    def is_zero(self) -> bool:
        return self.semiring.is_zero(self.value)

    def __str__(self) -> str:
        return self.semiring.format(self.value)


def add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b
