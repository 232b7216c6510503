"""Exact arithmetic in cyclotomic fields plus an mpmath-backed fallback.

Two scalar families live here:

* :class:`CyclotomicNumber` -- an exact element of Q(zeta_N) stored in the
  power basis modulo the N-th cyclotomic polynomial (integer numerators over
  one positive common denominator).
* :class:`ApproxComplex` -- an arbitrary-precision complex number carrying its
  decimal precision.

The two never mix implicitly; use :func:`to_complex` to downgrade.

:class:`ExactQ` and :class:`ApproxQ` bundle a deformation parameter
``q = exp(i*angle)`` with the q-bracket and q-brace evaluators. Both expose
the same duck-typed interface so that representation code is backend
agnostic.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Union

import mpmath
from mpmath.ctx_mp import MPContext

__all__ = [
    "ApproxComplex",
    "ApproxQ",
    "CyclotomicNumber",
    "ExactQ",
    "RationalAngle",
    "Scalar",
    "TrigKind",
    "UndefinedParameterError",
    "DEFAULT_DIGITS",
    "ZERO_TOL_EXP",
    "cyclotomic_polynomial",
    "q_brace",
    "q_bracket",
    "scalar_from_json",
    "scalar_to_json",
    "to_complex",
    "trig_sign",
]

DEFAULT_DIGITS = 64
# absolute zero-test tolerance 10**-ZERO_TOL_EXP for the Approx backend
ZERO_TOL_EXP = 40


class UndefinedParameterError(ValueError):
    """Raised when q sits at a value where a bracket or brace is undefined."""


# --------------------------------------------------------------------------
# cyclotomic field tables


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class _Field:
    __slots__ = ("order", "degree", "powers", "units")

    def __init__(self, order: int) -> None:
        phi = cyclotomic_polynomial(order)
        deg = len(phi) - 1
        # powers[e] = zeta^e reduced mod Phi, e in [0, order)
        powers: list[tuple[int, ...]] = []
        cur = [1] + [0] * (deg - 1)
        for _ in range(order):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(deg):
                    cur[j] -= top * phi[j]
        self.order = order
        self.degree = deg
        self.powers = powers
        self.units = tuple(a for a in range(2, order) if math.gcd(a, order) == 1)

    def reduce(self, vec: list[int]) -> list[int]:
        deg = self.degree
        out = list(vec[:deg]) + [0] * max(0, deg - len(vec))
        for e in range(deg, len(vec)):
            c = vec[e]
            if c:
                row = self.powers[e % self.order]
                for j in range(deg):
                    if row[j]:
                        out[j] += c * row[j]
        return out

    def galois(self, num: tuple[int, ...], a: int) -> list[int]:
        out = [0] * self.degree
        for j, c in enumerate(num):
            if c:
                row = self.powers[(a * j) % self.order]
                for t in range(self.degree):
                    if row[t]:
                        out[t] += c * row[t]
        return out


@lru_cache(maxsize=None)
def _field(order: int) -> _Field:
    return _Field(order)


def _convolve(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


# --------------------------------------------------------------------------
# exact scalars


class CyclotomicNumber:
    """An exact element of the cyclotomic field Q(zeta_N).

    Stored as integer numerators ``num`` (length ``phi(N)``, power basis
    reduced modulo Phi_N) over a positive denominator ``den`` with
    ``gcd(num..., den) == 1``. That canonical form makes equality a plain
    tuple comparison.

    Rationals (``int``/``Fraction``) coerce automatically; elements of a
    different order do not -- call :meth:`lift` explicitly.
    """

    __slots__ = ("_order", "_num", "_den")

    def __init__(self, order: int, coeffs: Iterable[Rational | int] = ()) -> None:
        fld = _field(order)
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in fr]
        num = fld.reduce(ints) if ints else [0] * fld.degree
        self._order = order
        self._num, self._den = _normalize(num, den)

    @classmethod
    def _raw(cls, order: int, num: list[int] | tuple[int, ...], den: int) -> CyclotomicNumber:
        obj = object.__new__(cls)
        obj._order = order
        obj._num, obj._den = _normalize(num, den)
        return obj

    @classmethod
    def zeta(cls, order: int, exponent: int = 1) -> CyclotomicNumber:
        """The root of unity ``zeta_order ** exponent``."""
        fld = _field(order)
        return cls._raw(order, fld.powers[exponent % order], 1)

    @classmethod
    def rational(cls, order: int, value: Rational | int) -> CyclotomicNumber:
        value = Fraction(value)
        num = [0] * _field(order).degree
        num[0] = value.numerator
        return cls._raw(order, num, value.denominator)

    # -- structure ---------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Canonical coefficients of zeta^0 .. zeta^(phi(N)-1)."""
        return tuple(Fraction(c, self._den) for c in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._num[0], self._den)

    def is_real(self) -> bool:
        return self == self.conj()

    def lift(self, order: int) -> CyclotomicNumber:
        """Embed into Q(zeta_order) via zeta_N -> zeta_order**(order/N)."""
        if order == self._order:
            return self
        if order % self._order:
            raise ValueError(f"Q(zeta_{self._order}) does not embed in Q(zeta_{order})")
        step = order // self._order
        fld = _field(order)
        out = [0] * fld.degree
        for j, c in enumerate(self._num):
            if c:
                row = fld.powers[(j * step) % order]
                for t in range(fld.degree):
                    if row[t]:
                        out[t] += c * row[t]
        return CyclotomicNumber._raw(order, out, self._den)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other: object) -> CyclotomicNumber | None:
        if isinstance(other, CyclotomicNumber):
            if other._order != self._order:
                raise ValueError(
                    f"order mismatch: Q(zeta_{self._order}) vs Q(zeta_{other._order}); lift explicitly"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CyclotomicNumber.rational(self._order, other)
        if isinstance(other, ApproxComplex):
            raise TypeError("cannot mix exact and approximate scalars; use to_complex()")
        return None

    def __add__(self, other: object) -> CyclotomicNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        d1, d2 = self._den, o._den
        num = [a * d2 + b * d1 for a, b in zip(self._num, o._num)]
        return CyclotomicNumber._raw(self._order, num, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> CyclotomicNumber:
        return CyclotomicNumber._raw(self._order, [-a for a in self._num], self._den)

    def __pos__(self) -> CyclotomicNumber:
        return self

    def __sub__(self, other: object) -> CyclotomicNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> CyclotomicNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> CyclotomicNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return CyclotomicNumber._raw(self._order, [0] * len(self._num), 1)
        if o.is_rational():
            c = o._num[0]
            return CyclotomicNumber._raw(self._order, [a * c for a in self._num], self._den * o._den)
        if self.is_rational():
            c = self._num[0]
            return CyclotomicNumber._raw(self._order, [c * b for b in o._num], self._den * o._den)
        fld = _field(self._order)
        num = fld.reduce(_convolve(self._num, o._num))
        return CyclotomicNumber._raw(self._order, num, self._den * o._den)

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicNumber:
        """Multiplicative inverse via the product of the Galois conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CyclotomicNumber._raw(self._order, [self._den] + [0] * (len(self._num) - 1), self._num[0])
        fld = _field(self._order)
        cof = CyclotomicNumber._raw(self._order, [1] + [0] * (fld.degree - 1), 1)
        for a in fld.units:
            cof = cof * CyclotomicNumber._raw(self._order, fld.galois(self._num, a), self._den)
        norm = self * cof
        if not norm.is_rational():
            raise ArithmeticError("field norm is not rational")
        return cof * (1 / norm.rational_value())

    def __truediv__(self, other: object) -> CyclotomicNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> CyclotomicNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> CyclotomicNumber:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = CyclotomicNumber.rational(self._order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> CyclotomicNumber:
        """Complex conjugate: zeta_N -> zeta_N**(N-1)."""
        fld = _field(self._order)
        return CyclotomicNumber._raw(self._order, fld.galois(self._num, self._order - 1), self._den)

    conjugate = conj

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CyclotomicNumber):
            return self._order == other._order and self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self._num[0], self._den))
        return hash((self._order, self._num, self._den))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- presentation ------------------------------------------------------

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self._order}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                mono = f"z{self._order}^{j}" if j > 1 else f"z{self._order}"
                parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_json(self) -> dict:
        return {"order": self._order, "coeffs": [[c.numerator, c.denominator] for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> CyclotomicNumber:
        return cls(int(data["order"]), [Fraction(int(a), int(b)) for a, b in data["coeffs"]])

    def to_complex(self, digits: int = DEFAULT_DIGITS) -> ApproxComplex:
        return to_complex(self, digits)


def _normalize(num: Iterable[int], den: int) -> tuple[tuple[int, ...], int]:
    num = tuple(num)
    if den < 0:
        num, den = tuple(-a for a in num), -den
    g = den
    for a in num:
        if g == 1:
            break
        g = math.gcd(g, a)
    if not any(num):
        return num, 1
    if g > 1:
        num = tuple(a // g for a in num)
        den //= g
    return num, den


# --------------------------------------------------------------------------
# approximate scalars


@lru_cache(maxsize=None)
def _ctx(digits: int) -> MPContext:
    ctx = MPContext()
    ctx.dps = digits
    return ctx


class ApproxComplex:
    """Arbitrary precision complex value tagged with its decimal precision."""

    __slots__ = ("_value", "_digits")

    def __init__(self, value: object, digits: int = DEFAULT_DIGITS) -> None:
        ctx = _ctx(digits)
        if isinstance(value, Fraction):
            value = ctx.mpf(value.numerator) / value.denominator
        self._value = ctx.mpc(value)
        self._digits = digits

    @property
    def digits(self) -> int:
        return self._digits

    @property
    def value(self) -> mpmath.mpc:
        return self._value

    @property
    def real(self):
        return self._value.real

    @property
    def imag(self):
        return self._value.imag

    def _coerce(self, other: object) -> tuple[object, int] | None:
        if isinstance(other, ApproxComplex):
            return other._value, min(self._digits, other._digits)
        if isinstance(other, CyclotomicNumber):
            raise TypeError("cannot mix exact and approximate scalars; use to_complex()")
        if isinstance(other, Fraction):
            ctx = _ctx(self._digits)
            return ctx.mpf(other.numerator) / other.denominator, self._digits
        if isinstance(other, (int, float, complex)) and not isinstance(other, bool):
            return other, self._digits
        if hasattr(other, "_mpf_") or hasattr(other, "_mpc_"):
            return other, self._digits
        return None

    def _wrap(self, fn, other: object) -> ApproxComplex:
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        val, digits = c
        ctx = _ctx(digits)
        return ApproxComplex(fn(ctx.mpc(self._value), ctx.mpc(val)), digits)

    def __add__(self, other):
        return self._wrap(lambda a, b: a + b, other)

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(lambda a, b: a - b, other)

    def __rsub__(self, other):
        return self._wrap(lambda a, b: b - a, other)

    def __mul__(self, other):
        return self._wrap(lambda a, b: a * b, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(lambda a, b: a / b, other)

    def __rtruediv__(self, other):
        return self._wrap(lambda a, b: b / a, other)

    def __neg__(self) -> ApproxComplex:
        return ApproxComplex(-self._value, self._digits)

    def __pow__(self, n: object) -> ApproxComplex:
        ctx = _ctx(self._digits)
        if isinstance(n, int):
            return ApproxComplex(ctx.power(self._value, n), self._digits)
        return NotImplemented

    def __abs__(self):
        return _ctx(self._digits).fabs(self._value)

    def conj(self) -> ApproxComplex:
        return ApproxComplex(_ctx(self._digits).conj(self._value), self._digits)

    conjugate = conj

    def sqrt(self) -> ApproxComplex:
        return ApproxComplex(_ctx(self._digits).sqrt(self._value), self._digits)

    def is_zero(self, tol: object = None) -> bool:
        if tol is None:
            tol = _ctx(self._digits).mpf(10) ** (-ZERO_TOL_EXP)
        return abs(self) < tol

    def __eq__(self, other: object) -> bool:
        c = self._coerce(other) if not isinstance(other, CyclotomicNumber) else None
        if c is None:
            return NotImplemented
        return self._value == c[0]

    def __hash__(self) -> int:
        return hash((self._value, self._digits))

    def __repr__(self) -> str:
        return f"ApproxComplex({mpmath.nstr(self._value, 20)}, digits={self._digits})"

    def __str__(self) -> str:
        return mpmath.nstr(self._value, min(20, self._digits))

    def to_json(self) -> dict:
        ctx = _ctx(self._digits)
        return {
            "re": ctx.nstr(self._value.real, self._digits),
            "im": ctx.nstr(self._value.imag, self._digits),
            "digits": self._digits,
        }

    @classmethod
    def from_json(cls, data: dict) -> ApproxComplex:
        digits = int(data["digits"])
        ctx = _ctx(digits)
        return cls(ctx.mpc(ctx.mpf(data["re"]), ctx.mpf(data["im"])), digits)


Scalar = Union[CyclotomicNumber, ApproxComplex]


def to_complex(x: Scalar | int | Fraction, digits: int = DEFAULT_DIGITS) -> ApproxComplex:
    """Downgrade an exact value to an :class:`ApproxComplex` of ``digits`` digits."""
    if digits < 16:
        raise ValueError("precision must be at least 16 digits")
    if isinstance(x, ApproxComplex):
        return ApproxComplex(x.value, min(digits, x.digits))
    if isinstance(x, (int, Fraction)):
        return ApproxComplex(Fraction(x), digits)
    work = _ctx(digits + 10)
    acc = work.mpc(0)
    two_pi = 2 * work.pi
    for j, c in enumerate(x.coeffs):
        if c:
            ang = two_pi * j / x.order
            acc += (work.mpf(c.numerator) / c.denominator) * work.mpc(work.cos(ang), work.sin(ang))
    return ApproxComplex(acc, digits)


def scalar_to_json(x: Scalar) -> dict:
    return x.to_json()


def scalar_from_json(data: dict) -> Scalar:
    if "order" in data:
        return CyclotomicNumber.from_json(data)
    return ApproxComplex.from_json(data)


# --------------------------------------------------------------------------
# exact signs of sin / cos at rational multiples of pi


class TrigKind(enum.Enum):
    SIN = "sin"
    COS = "cos"


@dataclass(frozen=True)
class RationalAngle:
    """The angle ``pi * r`` for an exact rational ``r``."""

    r: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", Fraction(self.r))

    @property
    def reduced(self) -> Fraction:
        """``r`` reduced into ``[0, 2)``."""
        return self.r - 2 * math.floor(self.r / 2)

    def sin_sign(self) -> int:
        r = self.reduced
        if r == 0 or r == 1:
            return 0
        return 1 if r < 1 else -1

    def cos_sign(self) -> int:
        r = self.reduced
        if r == Fraction(1, 2) or r == Fraction(3, 2):
            return 0
        return 1 if (r < Fraction(1, 2) or r > Fraction(3, 2)) else -1


def trig_sign(angle: RationalAngle | Fraction | int, kind: TrigKind | str) -> int:
    """Exact sign (-1, 0, +1) of sin(pi r) or cos(pi r); no floating point."""
    if not isinstance(angle, RationalAngle):
        angle = RationalAngle(Fraction(angle))
    kind = TrigKind(kind)
    return angle.sin_sign() if kind is TrigKind.SIN else angle.cos_sign()


# --------------------------------------------------------------------------
# deformation parameters


@lru_cache(maxsize=None)
def _exact_bracket(order: int, step: int, e: int) -> CyclotomicNumber:
    z = CyclotomicNumber.zeta
    den = z(order, step) - z(order, -step)
    return (z(order, e) - z(order, -e)) * den.inverse()


@lru_cache(maxsize=None)
def _exact_brace(order: int, step: int, e: int) -> CyclotomicNumber:
    z = CyclotomicNumber.zeta
    den = z(order, step) + z(order, -step)
    return (z(order, e) + z(order, -e)) * den.inverse()


@dataclass(frozen=True)
class ExactQ:
    """``q = exp(i*pi*m/(2k))`` realised exactly inside Q(zeta_{4kd}).

    ``d`` is an extra denominator so that ``q**x`` is representable for every
    ``x`` in ``(1/d)Z``; with ``d = 1`` only integer exponents are allowed.
    """

    m: int
    k: int
    d: int = 1

    def __post_init__(self) -> None:
        if self.k < 1 or self.d < 1:
            raise ValueError("k and d must be positive")
        if self.m % (2 * self.k) == 0:
            raise UndefinedParameterError(f"q = +-1 for m={self.m}, k={self.k}")

    exact = True

    @property
    def order(self) -> int:
        return 4 * self.k * self.d

    @property
    def angle(self) -> Fraction:
        """``angle / pi`` as an exact rational."""
        return Fraction(self.m, 2 * self.k)

    def with_denominator(self, d: int) -> ExactQ:
        d = self.d * d // math.gcd(self.d, d)
        return ExactQ(self.m, self.k, d)

    def for_weight(self, p: Fraction | int) -> ExactQ:
        return self.with_denominator(Fraction(p).denominator)

    def exponent(self, x: Fraction | int) -> int:
        e = Fraction(self.m * self.d) * Fraction(x)
        if e.denominator != 1:
            raise ValueError(f"q**{x} is not in Q(zeta_{self.order}); enlarge the denominator")
        return int(e) % self.order

    def q_pow(self, x: Fraction | int) -> CyclotomicNumber:
        return CyclotomicNumber.zeta(self.order, self.exponent(x))

    @property
    def q(self) -> CyclotomicNumber:
        return self.q_pow(1)

    def bracket(self, x: Fraction | int) -> CyclotomicNumber:
        """``[x] = (q^x - q^-x)/(q - q^-1)``."""
        return _exact_bracket(self.order, self.exponent(1), self.exponent(x))

    def brace(self, x: Fraction | int) -> CyclotomicNumber:
        """``{x} = (q^x + q^-x)/(q + q^-1)``."""
        if (self.m - self.k) % (2 * self.k) == 0 or (self.m + self.k) % (2 * self.k) == 0:
            raise UndefinedParameterError(f"q = +-i for m={self.m}, k={self.k}")
        return _exact_brace(self.order, self.exponent(1), self.exponent(x))

    def zero(self) -> CyclotomicNumber:
        return CyclotomicNumber.rational(self.order, 0)

    def one(self) -> CyclotomicNumber:
        return CyclotomicNumber.rational(self.order, 1)

    def coerce(self, value: object) -> CyclotomicNumber:
        if isinstance(value, CyclotomicNumber):
            return value.lift(self.order)
        if isinstance(value, (int, Fraction)):
            return CyclotomicNumber.rational(self.order, value)
        raise TypeError(f"cannot coerce {type(value).__name__} into Q(zeta_{self.order})")

    def is_zero(self, value: CyclotomicNumber, tol: object = None) -> bool:
        return value == 0

    def sign_angle(self, x: Fraction | int) -> RationalAngle:
        """The rational angle ``angle * x`` so that ``q**x = exp(i*pi*r)``."""
        return RationalAngle(self.angle * Fraction(x))


class ApproxQ:
    """``q = exp(i*angle)`` evaluated with ``digits`` decimal digits.

    ``angle`` may be any real (including irrational multiples of pi) and the
    exponents passed to :meth:`q_pow` may be complex.
    """

    exact = False

    def __init__(self, angle: object, digits: int = DEFAULT_DIGITS, *, m: int | None = None, k: int | None = None) -> None:
        if digits < 16:
            raise ValueError("precision must be at least 16 digits")
        ctx = _ctx(digits)
        self.digits = digits
        self.m, self.k = m, k
        self._angle = ctx.mpf(angle) if not isinstance(angle, Fraction) else ctx.mpf(angle.numerator) / angle.denominator
        q = ctx.expj(self._angle)
        self._q = q
        self._bden = q - 1 / q
        self._cden = q + 1 / q
        if abs(self._bden) < ctx.mpf(10) ** (-ZERO_TOL_EXP):
            raise UndefinedParameterError("q = +-1")

    @classmethod
    def from_root(cls, m: int, k: int, digits: int = DEFAULT_DIGITS) -> ApproxQ:
        ctx = _ctx(digits + 10)
        return cls(ctx.pi * m / (2 * k), digits, m=m, k=k)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ApproxQ) and (self._angle, self.digits) == (other._angle, other.digits)

    def __hash__(self) -> int:
        return hash((self._angle, self.digits))

    def __repr__(self) -> str:
        return f"ApproxQ(angle={mpmath.nstr(self._angle, 20)}, digits={self.digits})"

    @property
    def angle(self):
        return self._angle

    def _num(self, x: object):
        ctx = _ctx(self.digits)
        if isinstance(x, ApproxComplex):
            return ctx.mpc(x.value)
        if isinstance(x, Fraction):
            return ctx.mpf(x.numerator) / x.denominator
        return ctx.mpc(x)

    def q_pow(self, x: object) -> ApproxComplex:
        ctx = _ctx(self.digits)
        return ApproxComplex(ctx.exp(1j * self._angle * self._num(x)), self.digits)

    @property
    def q(self) -> ApproxComplex:
        return ApproxComplex(self._q, self.digits)

    def bracket(self, x: object) -> ApproxComplex:
        ctx = _ctx(self.digits)
        z = ctx.exp(1j * self._angle * self._num(x))
        return ApproxComplex((z - 1 / z) / self._bden, self.digits)

    def brace(self, x: object) -> ApproxComplex:
        ctx = _ctx(self.digits)
        if abs(self._cden) < ctx.mpf(10) ** (-ZERO_TOL_EXP):
            raise UndefinedParameterError("q = +-i")
        z = ctx.exp(1j * self._angle * self._num(x))
        return ApproxComplex((z + 1 / z) / self._cden, self.digits)

    def zero(self) -> ApproxComplex:
        return ApproxComplex(0, self.digits)

    def one(self) -> ApproxComplex:
        return ApproxComplex(1, self.digits)

    def coerce(self, value: object) -> ApproxComplex:
        if isinstance(value, CyclotomicNumber):
            return to_complex(value, self.digits)
        if isinstance(value, ApproxComplex):
            return ApproxComplex(value.value, min(value.digits, self.digits))
        return ApproxComplex(value if not isinstance(value, Fraction) else value, self.digits)

    def is_zero(self, value: ApproxComplex, tol: object = None) -> bool:
        return value.is_zero(tol)

    def default_tol(self):
        return _ctx(self.digits).mpf(10) ** (-ZERO_TOL_EXP)


# --------------------------------------------------------------------------
# convenience evaluators


def q_bracket(m: int, k: int, n: Fraction | int) -> CyclotomicNumber:
    """``[n]`` at ``q = zeta_{4k}**m``, exact in Q(zeta_{4k})."""
    return ExactQ(m, k, Fraction(n).denominator).bracket(n)


def q_brace(m: int, k: int, n: Fraction | int) -> CyclotomicNumber:
    """``{n}`` at ``q = zeta_{4k}**m``, exact in Q(zeta_{4k})."""
    return ExactQ(m, k, Fraction(n).denominator).brace(n)
