"""Scalar arithmetic: exact Q(sqrt2), its complex extension, and float quaternions.

Two paths feed everything downstream.  The complex path is exact
(:class:`ExactComplex` over :class:`ExactScalar`); the quaternionic path is
floating point (:class:`Quaternion`), because conjugating an imaginary
quaternion onto the ``i`` axis needs a square root that leaves Q(sqrt2).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

DEFAULT_TOL = 1e-12

_RATIONAL = r"\d+(?:/\d+)?"


class ParseError(ValueError):
    """Raised when a textual scalar, vector or matrix cannot be parsed."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def _fmt_fraction(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True, eq=False)
class ExactScalar:
    """The number ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "b", _as_fraction(self.b))

    @classmethod
    def coerce(cls, x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        return cls(_as_fraction(x))

    # --- ring structure -------------------------------------------------
    def __add__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactScalar(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.a, -self.b)

    def __sub__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactScalar(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return exact_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return exact_mul(self, exact_inverse(o))

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) * exact_inverse(self)

    def inverse(self) -> "ExactScalar":
        return exact_inverse(self)

    def galois_conj(self) -> "ExactScalar":
        """The image under sqrt2 -> -sqrt2."""
        return ExactScalar(self.a, -self.b)

    def conj(self) -> "ExactScalar":
        # real scalars are self-conjugate; lets generic matrix code call conj()
        return self

    # --- comparisons ----------------------------------------------------
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        """Exact sign of ``a + b*sqrt2`` as -1, 0 or 1."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with 2 b^2
        diff = self.a * self.a - 2 * self.b * self.b
        d = (diff > 0) - (diff < 0)
        return sa * d

    def __eq__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return not self.is_zero()

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(2.0)

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"ExactScalar({format_scalar(self)!r})"


SQRT2 = ExactScalar(0, 1)
ZERO = ExactScalar(0)
ONE = ExactScalar(1)


def exact_mul(x: ExactScalar, y: ExactScalar) -> ExactScalar:
    return ExactScalar(x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a)


def exact_inverse(x: ExactScalar) -> ExactScalar:
    """Inverse via the conjugate: ``(a - b sqrt2) / (a^2 - 2 b^2)``."""
    norm = x.a * x.a - 2 * x.b * x.b
    if norm == 0:
        # sqrt2 is irrational, so the norm vanishes only at zero
        raise ZeroDivisionError("inverse of zero in Q(sqrt2)")
    return ExactScalar(x.a / norm, -x.b / norm)


@dataclass(frozen=True, eq=False)
class ExactComplex:
    """``re + im*i`` with ``re`` and ``im`` in Q(sqrt2)."""

    re: ExactScalar = ZERO
    im: ExactScalar = ZERO

    def __post_init__(self):
        object.__setattr__(self, "re", ExactScalar.coerce(self.re))
        object.__setattr__(self, "im", ExactScalar.coerce(self.im))

    @classmethod
    def coerce(cls, x) -> "ExactComplex":
        if isinstance(x, ExactComplex):
            return x
        return cls(ExactScalar.coerce(x))

    def __add__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex(self.re * o.re - self.im * o.im,
                            self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return ExactComplex.coerce(other) * self.inverse()

    def conj(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def abs2(self) -> ExactScalar:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "ExactComplex":
        n = self.abs2()
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(sqrt2)(i)")
        ninv = exact_inverse(n)
        return ExactComplex(self.re * ninv, -self.im * ninv)

    @property
    def real(self) -> ExactScalar:
        return self.re

    @property
    def imag(self) -> ExactScalar:
        return self.im

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def __eq__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        return format_complex(self)

    def __repr__(self):
        return f"ExactComplex({format_complex(self)!r})"


I = ExactComplex(0, 1)


@dataclass(frozen=True)
class Quaternion:
    """Float quaternion ``r0 + r1 i + r2 j + r3 k``."""

    r0: float = 0.0
    r1: float = 0.0
    r2: float = 0.0
    r3: float = 0.0

    @classmethod
    def coerce(cls, x) -> "Quaternion":
        if isinstance(x, Quaternion):
            return x
        if isinstance(x, ImaginaryQuat):
            return x.to_quaternion()
        if isinstance(x, ExactComplex):
            return cls(float(x.re), float(x.im))
        if isinstance(x, (int, float, Fraction, ExactScalar)):
            return cls(float(x))
        if isinstance(x, complex):
            return cls(x.real, x.imag)
        raise TypeError(f"cannot use {type(x).__name__} as a quaternion")

    def __iter__(self):
        return iter((self.r0, self.r1, self.r2, self.r3))

    def __add__(self, other):
        try:
            o = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        return Quaternion(self.r0 + o.r0, self.r1 + o.r1, self.r2 + o.r2, self.r3 + o.r3)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.r0, -self.r1, -self.r2, -self.r3)

    def __sub__(self, other):
        try:
            o = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        return Quaternion(self.r0 - o.r0, self.r1 - o.r1, self.r2 - o.r2, self.r3 - o.r3)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        return quat_mul(self, o)

    def __rmul__(self, other):
        # left multiplication by a real or complex-path scalar
        try:
            o = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        return quat_mul(o, self)

    def __truediv__(self, other):
        """Right division ``self * other^-1``."""
        try:
            o = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        return quat_mul(self, o.inverse())

    def conj(self) -> "Quaternion":
        return Quaternion(self.r0, -self.r1, -self.r2, -self.r3)

    def abs2(self) -> float:
        return self.r0 ** 2 + self.r1 ** 2 + self.r2 ** 2 + self.r3 ** 2

    def norm(self) -> float:
        return math.sqrt(self.abs2())

    def inverse(self) -> "Quaternion":
        n = self.abs2()
        if n == 0.0:
            raise ZeroDivisionError("inverse of the zero quaternion")
        return Quaternion(self.r0 / n, -self.r1 / n, -self.r2 / n, -self.r3 / n)

    def scale(self, s: float) -> "Quaternion":
        return Quaternion(s * self.r0, s * self.r1, s * self.r2, s * self.r3)

    @property
    def real(self) -> float:
        return self.r0

    @property
    def imag(self) -> "ImaginaryQuat":
        return ImaginaryQuat(self.r1, self.r2, self.r3)

    def is_zero(self) -> bool:
        return self.abs2() == 0.0

    def isclose(self, other, tol: float = DEFAULT_TOL) -> bool:
        """Absolute closeness scaled by ``max(1, |self|, |other|)``."""
        o = Quaternion.coerce(other)
        scale = max(1.0, self.norm(), o.norm())
        return (self - o).norm() <= tol * scale

    def __str__(self):
        return format_quaternion(self)


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p q``."""
    a1, b1, c1, d1 = p.r0, p.r1, p.r2, p.r3
    a2, b2, c2, d2 = q.r0, q.r1, q.r2, q.r3
    return Quaternion(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def quat_conj_norm(q: Quaternion) -> tuple[Quaternion, float]:
    return q.conj(), q.norm()


QI = Quaternion(0.0, 1.0, 0.0, 0.0)
QJ = Quaternion(0.0, 0.0, 1.0, 0.0)
QK = Quaternion(0.0, 0.0, 0.0, 1.0)
QONE = Quaternion(1.0)


@dataclass(frozen=True)
class ImaginaryQuat:
    """Purely imaginary quaternion ``t1 i + t2 j + t3 k``."""

    t1: float = 0.0
    t2: float = 0.0
    t3: float = 0.0

    def to_quaternion(self) -> Quaternion:
        return Quaternion(0.0, self.t1, self.t2, self.t3)

    def __add__(self, other):
        if not isinstance(other, ImaginaryQuat):
            return NotImplemented
        return ImaginaryQuat(self.t1 + other.t1, self.t2 + other.t2, self.t3 + other.t3)

    def __neg__(self):
        return ImaginaryQuat(-self.t1, -self.t2, -self.t3)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: float) -> "ImaginaryQuat":
        return ImaginaryQuat(s * self.t1, s * self.t2, s * self.t3)

    def abs2(self) -> float:
        return self.t1 ** 2 + self.t2 ** 2 + self.t3 ** 2

    def norm(self) -> float:
        return math.sqrt(self.abs2())

    def is_zero(self) -> bool:
        return self.abs2() == 0.0

    def __str__(self):
        return format_quaternion(self.to_quaternion())


# --- text serialization -------------------------------------------------

def format_scalar(x: ExactScalar) -> str:
    """``p/q+r/s*sqrt2`` with zero parts omitted; ``0`` for zero."""
    x = ExactScalar.coerce(x)
    if x.is_zero():
        return "0"
    parts = []
    if x.a != 0:
        parts.append(_fmt_fraction(x.a))
    if x.b != 0:
        s = _fmt_fraction(x.b) + "*sqrt2"
        if parts and x.b > 0:
            s = "+" + s
        parts.append(s)
    return "".join(parts)


_SCALAR_RE = re.compile(
    rf"^(?:(?P<a>[+-]?{_RATIONAL})(?=[+-]|$))?"
    rf"(?:(?P<bs>[+-])?(?P<b>{_RATIONAL})?\*?sqrt2)?$"
)


def parse_scalar(text: str) -> ExactScalar:
    """Inverse of :func:`format_scalar`; also accepts ``sqrt2`` and ``-sqrt2``."""
    s = text.strip().replace(" ", "")
    m = _SCALAR_RE.match(s)
    if not s or m is None:
        raise ParseError(f"not an element of Q(sqrt2): {text!r}")
    try:
        return _scalar_from_match(s, m)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}") from None


def _scalar_from_match(s: str, m) -> ExactScalar:
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    if not s.endswith("sqrt2"):
        return ExactScalar(a)
    if m.group("a") and not m.group("bs"):
        raise ParseError(f"missing sign between parts: {s!r}")
    b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
    if m.group("bs") == "-":
        b = -b
    return ExactScalar(a, b)


def format_complex(z: ExactComplex) -> str:
    z = ExactComplex.coerce(z)
    return f"({format_scalar(z.re)})+({format_scalar(z.im)})i"


_COMPLEX_RE = re.compile(r"^\((?P<re>[^()]*)\)\+\((?P<im>[^()]*)\)i$")
_IMAG_RE = re.compile(r"^(?P<sign>[+-]?)\((?P<im>[^()]*)\)i$")


def parse_complex(text: str) -> ExactComplex:
    """Parse ``(re)+(im)i``; a bare real scalar or ``(im)i`` is also accepted."""
    s = text.strip().replace(" ", "")
    m = _COMPLEX_RE.match(s)
    if m:
        return ExactComplex(parse_scalar(m.group("re")), parse_scalar(m.group("im")))
    m = _IMAG_RE.match(s)
    if m:
        im = parse_scalar(m.group("im"))
        return ExactComplex(ZERO, -im if m.group("sign") == "-" else im)
    try:
        return ExactComplex(parse_scalar(s))
    except ParseError:
        raise ParseError(f"not an element of Q(sqrt2)(i): {text!r}") from None


def _fmt_float(x: float) -> str:
    return repr(float(x))


def format_quaternion(q: Quaternion) -> str:
    out = _fmt_float(q.r0)
    for coeff, unit in ((q.r1, "i"), (q.r2, "j"), (q.r3, "k")):
        s = _fmt_float(coeff)
        if not s.startswith("-"):
            s = "+" + s
        out += s + unit
    return out


_FLOAT = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|inf|nan"
_QTERM_RE = re.compile(rf"([+-]?)({_FLOAT})?([ijk]?)")


def parse_quaternion(text: str) -> Quaternion:
    """Inverse of :func:`format_quaternion`.

    Terms may be given in any order and omitted, so ``2j`` and ``-0.5+k``
    are accepted as well.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ParseError("empty quaternion")
    coeffs = {"": 0.0, "i": 0.0, "j": 0.0, "k": 0.0}
    seen = set()
    pos = 0
    while pos < len(s):
        m = _QTERM_RE.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"not a quaternion: {text!r}")
        sign, num, unit = m.groups()
        if num is None and not unit:
            raise ParseError(f"not a quaternion: {text!r}")
        if pos > 0 and not sign:
            raise ParseError(f"missing sign between terms: {text!r}")
        if unit in seen:
            raise ParseError(f"repeated component {unit or 'real'!r}: {text!r}")
        seen.add(unit)
        value = float(num) if num is not None else 1.0
        coeffs[unit] = -value if sign == "-" else value
        pos = m.end()
    return Quaternion(coeffs[""], coeffs["i"], coeffs["j"], coeffs["k"])


def parse_imaginary_quat(text: str) -> ImaginaryQuat:
    q = parse_quaternion(text)
    if q.r0 != 0.0:
        raise ParseError(f"expected a purely imaginary quaternion: {text!r}")
    return q.imag
