"""Exact integer, rational and prime-field arithmetic, and the binomial calculus.

Everything here is exact: Python ints are unbounded, rationals are
:class:`fractions.Fraction`, and prime-field values are plain ints in
``[0, p)`` wrapped by :class:`PrimeFieldElement` at the public boundary.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from .errors import ParameterError

Rational = Fraction


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    """Trial division; inputs are desk-scale."""
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def require_prime(p: int) -> int:
    if not is_prime(p):
        raise ParameterError(f"{p!r} is not a prime")
    return p


@dataclass(frozen=True)
class PrimeFieldElement:
    value: int
    modulus: int

    def __post_init__(self):
        require_prime(self.modulus)
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"value {self.value} not reduced mod {self.modulus}")

    @classmethod
    def of(cls, x: int, p: int) -> "PrimeFieldElement":
        return cls(x % p, p)

    def _coerce(self, other) -> int:
        if isinstance(other, PrimeFieldElement):
            if other.modulus != self.modulus:
                raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement((self.value + o) % self.modulus, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement((self.value - o) % self.modulus, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement((o - self.value) % self.modulus, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value * o % self.modulus, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.value % self.modulus, self.modulus)

    def inverse(self) -> "PrimeFieldElement":
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0 in a prime field")
        return PrimeFieldElement(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * PrimeFieldElement(o, self.modulus).inverse()

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


class Field:
    """Ground field: the rationals (characteristic 0) or a prime field.

    Matrices and torus elements store *raw* values for speed: ints or
    Fractions in characteristic 0, ints in ``[0, p)`` otherwise.  ``reduce``
    maps any exact number into that raw form; ``element`` wraps a raw value as
    a public scalar.
    """

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if characteristic != 0:
            require_prime(characteristic)
        self.characteristic = characteristic

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def reduce(self, x):
        p = self.characteristic
        if isinstance(x, PrimeFieldElement):
            if x.modulus != p:
                raise ValueError(f"cannot map an element mod {x.modulus} into {self!r}")
            return x.value
        if p == 0:
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            return int(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def inv(self, x):
        if self.characteristic == 0:
            if x == 0:
                raise ZeroDivisionError("division by zero")
            return self.reduce(Fraction(1) / x)
        return pow(x, -1, self.characteristic)

    def element(self, x):
        """Public scalar for a value: Fraction or PrimeFieldElement."""
        x = self.reduce(x)
        if self.characteristic == 0:
            return Fraction(x)
        return PrimeFieldElement(x, self.characteristic)

    def to_string(self, x) -> str:
        return str(self.reduce(x))


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def binomial(a: int, b: int) -> int:
    """Generalised binomial coefficient for any integer ``a`` and ``b >= 0``.

    Negative tops use the reflection ``binom(a, b) = (-1)^b binom(-a+b-1, b)``.
    """
    if b < 0:
        raise ValueError("binomial needs b >= 0")
    if a >= 0:
        return comb(a, b)
    v = comb(-a + b - 1, b)
    return -v if b % 2 else v


def falling_factorial_binomial(a: int, b: int) -> int:
    """``a(a-1)...(a-b+1)/b!`` computed directly; oracle for :func:`binomial`."""
    num = 1
    for i in range(b):
        num *= a - i
    q, r = divmod(num, factorial(b))
    assert r == 0
    return q


@dataclass(frozen=True)
class PAdicDigits:
    prime: int
    digits: tuple[int, ...]

    def value(self) -> int:
        return sum(d * self.prime**i for i, d in enumerate(self.digits))


def p_adic_digits(a: int, p: int) -> PAdicDigits:
    """Base-``p`` digits of ``a >= 0``, least significant first."""
    require_prime(p)
    if a < 0:
        raise ValueError("p-adic digits need a >= 0")
    if a == 0:
        return PAdicDigits(p, (0,))
    out = []
    while a:
        a, r = divmod(a, p)
        out.append(r)
    return PAdicDigits(p, tuple(out))


@lru_cache(maxsize=None)
def _small_binomials_mod(p: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(comb(x, y) % p for y in range(p)) for x in range(p))


def binomial_mod_p_lucas(a: int, b: int, p: int) -> PrimeFieldElement:
    """``binom(a, b) mod p`` computed digit by digit (Lucas)."""
    require_prime(p)
    if a < 0 or b < 0:
        raise ValueError("Lucas' theorem needs a, b >= 0")
    table = _small_binomials_mod(p)
    r = 1
    while b:
        a, ad = divmod(a, p)
        b, bd = divmod(b, p)
        if bd > ad:
            return PrimeFieldElement(0, p)
        r = r * table[ad][bd] % p
    return PrimeFieldElement(r, p)


def kummer_carry_count(a: int, b: int, p: int) -> int:
    """Number of carries when adding ``a - b`` and ``b`` in base ``p``."""
    require_prime(p)
    if not 0 <= b <= a:
        raise ValueError(f"kummer_carry_count needs 0 <= b <= a, got a={a}, b={b}")
    x, y = a - b, b
    carry = count = 0
    while x or y or carry:
        x, xd = divmod(x, p)
        y, yd = divmod(y, p)
        carry = 1 if xd + yd + carry >= p else 0
        count += carry
    return count


def p_adic_valuation(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _digit_count(amax: int, p: int) -> int:
    k = 1
    while p**k <= amax:
        k += 1
    return k


def lucas_mod_p_array(a, b, p: int) -> np.ndarray:
    """Vectorised Lucas residues for integer arrays ``a``, ``b`` (both >= 0)."""
    require_prime(p)
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if (a < 0).any() or (b < 0).any():
        raise ValueError("Lucas' theorem needs a, b >= 0")
    table = np.array(_small_binomials_mod(p), dtype=np.int64)
    out = np.ones(np.broadcast(a, b).shape, dtype=np.int64)
    a, b = np.broadcast_arrays(a, b)
    a, b = a.copy(), b.copy()
    for _ in range(_digit_count(int(max(a.max(initial=0), b.max(initial=0))), p)):
        out = out * table[a % p, b % p] % p
        a //= p
        b //= p
    return out


def kummer_carries_array(a, b, p: int) -> np.ndarray:
    """Vectorised carry counts for ``(a - b) + b`` in base ``p``; needs 0 <= b <= a."""
    require_prime(p)
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if (b < 0).any() or (b > a).any():
        raise ValueError("kummer_carries_array needs 0 <= b <= a")
    x, y = np.broadcast_arrays(a - b, b)
    x, y = x.copy(), y.copy()
    carry = np.zeros(x.shape, dtype=np.int64)
    count = np.zeros(x.shape, dtype=np.int64)
    for _ in range(_digit_count(int(a.max(initial=0)), p) + 1):
        carry = (x % p + y % p + carry >= p).astype(np.int64)
        count += carry
        x //= p
        y //= p
    return count


def floor_log(n: int, p: int) -> int:
    """Largest t with p**t <= n (the integer part of log_p n)."""
    if n < 1:
        raise ValueError("floor_log needs n >= 1")
    t = 0
    while p ** (t + 1) <= n:
        t += 1
    return t


@lru_cache(maxsize=None)
def binomial_product_expansion(a: int, b: int) -> tuple[tuple[int, int], ...]:
    """Integer expansion of ``binom(H, a) * binom(H, b)`` in the ``binom(H, c)`` basis.

    Returns ``((c, coeff), ...)`` with
    ``coeff = binom(a+b-j, a-j) * binom(b, j)`` and ``c = a+b-j``.
    """
    if a < 0 or b < 0:
        raise ValueError("exponents must be >= 0")
    terms = []
    for j in range(min(a, b) + 1):
        coeff = comb(a + b - j, a - j) * comb(b, j)
        if coeff:
            terms.append((a + b - j, coeff))
    return tuple(terms)


@lru_cache(maxsize=None)
def shift_expansion(c: int, j: int) -> tuple[tuple[int, int], ...]:
    """``binom(H + c, j) = sum_t binom(H, t) binom(c, j - t)`` as ``((t, coeff), ...)``.

    Valid for every integer shift ``c``; negative ``c`` goes through the
    reflection rule in :func:`binomial`.
    """
    if j < 0:
        raise ValueError("j must be >= 0")
    out = []
    for t in range(j + 1):
        coeff = binomial(c, j - t)
        if coeff:
            out.append((t, coeff))
    return tuple(out)


def field_binomial(a: int, b: int, field: Field) -> int:
    """Raw value of ``binom(a, b)`` in ``field`` for any integer ``a``.

    In characteristic p this avoids huge integers: negative tops are
    reflected first and the result is read off digitwise.
    """
    p = field.characteristic
    if p == 0:
        return binomial(a, b)
    if b < 0:
        raise ValueError("binomial needs b >= 0")
    if a >= 0:
        return binomial_mod_p_lucas(a, b, p).value
    v = binomial_mod_p_lucas(-a + b - 1, b, p).value
    return (-v) % p if b % 2 else v
