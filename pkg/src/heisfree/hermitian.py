"""Vectors and matrices over K^{2,1} with the anti-diagonal Hermitian form.

Entries live on one of two scalar paths: exact (:class:`ExactComplex`) or
float quaternion (:class:`Quaternion`).  Constructors normalize every entry
onto a single path, so a mixed matrix is never built.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import (
    DEFAULT_TOL,
    ExactComplex,
    ExactScalar,
    ImaginaryQuat,
    ParseError,
    Quaternion,
    format_complex,
    format_quaternion,
    parse_complex,
    parse_quaternion,
)

EXACT = "exact"
QUATERNION = "quaternion"


class VectorType(enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    NULL = "Null"


class SiegelRegion(enum.Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    EXTERIOR = "Exterior"


def path_of(x) -> str:
    if isinstance(x, (Quaternion, ImaginaryQuat, float, complex)):
        return QUATERNION
    if isinstance(x, (ExactComplex, ExactScalar, int, Fraction)):
        return EXACT
    raise TypeError(f"{type(x).__name__} is not a scalar on either path")


def _to_path(x, path: str):
    if path == QUATERNION:
        return Quaternion.coerce(x)
    return ExactComplex.coerce(x)


def _common_path(entries: Iterable) -> str:
    paths = {path_of(e) for e in entries}
    return QUATERNION if QUATERNION in paths else EXACT


def _real_part(x):
    return x.real


def _zero(path):
    return Quaternion() if path == QUATERNION else ExactComplex()


def _one(path):
    return Quaternion(1.0) if path == QUATERNION else ExactComplex(1)


@dataclass(frozen=True)
class Vector3:
    z1: object
    z2: object
    z3: object

    def __post_init__(self):
        path = _common_path((self.z1, self.z2, self.z3))
        for name in ("z1", "z2", "z3"):
            object.__setattr__(self, name, _to_path(getattr(self, name), path))

    @property
    def path(self) -> str:
        return path_of(self.z1)

    def __iter__(self):
        return iter((self.z1, self.z2, self.z3))

    def __getitem__(self, i):
        return (self.z1, self.z2, self.z3)[i]

    def __add__(self, other: "Vector3") -> "Vector3":
        return Vector3(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "Vector3") -> "Vector3":
        return Vector3(*(a - b for a, b in zip(self, other)))

    def __neg__(self):
        return Vector3(-self.z1, -self.z2, -self.z3)

    def scale_right(self, s) -> "Vector3":
        """``z s``: scalars act on the right of K^{2,1}."""
        return Vector3(*(e * s for e in self))

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self)

    def __str__(self):
        return format_vector(self)


@dataclass(frozen=True)
class Matrix3:
    """3x3 matrix stored row-major as a tuple of three row tuples."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Matrix3 needs exactly 3 rows of 3 entries")
        path = _common_path(e for r in rows for e in r)
        rows = tuple(tuple(_to_path(e, path) for e in r) for r in rows)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, path: str = EXACT) -> "Matrix3":
        z, o = _zero(path), _one(path)
        return cls(((o, z, z), (z, o, z), (z, z, o)))

    @classmethod
    def diag(cls, a, b, c) -> "Matrix3":
        z = 0.0 if _common_path((a, b, c)) == QUATERNION else 0
        return cls(((a, z, z), (z, b, z), (z, z, c)))

    @property
    def path(self) -> str:
        return path_of(self.rows[0][0])

    def __getitem__(self, rc):
        r, c = rc
        return self.rows[r][c]

    def __mul__(self, other):
        if isinstance(other, Matrix3):
            a, b = self.rows, other.rows
            return Matrix3(tuple(
                tuple(a[r][0] * b[0][c] + a[r][1] * b[1][c] + a[r][2] * b[2][c]
                      for c in range(3))
                for r in range(3)))
        if isinstance(other, Vector3):
            return Vector3(*(row[0] * other.z1 + row[1] * other.z2 + row[2] * other.z3
                             for row in self.rows))
        return NotImplemented

    def __add__(self, other: "Matrix3") -> "Matrix3":
        return Matrix3(tuple(tuple(x + y for x, y in zip(r, s))
                             for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "Matrix3") -> "Matrix3":
        return Matrix3(tuple(tuple(x - y for x, y in zip(r, s))
                             for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return Matrix3(tuple(tuple(-x for x in r) for r in self.rows))

    def __pow__(self, n: int) -> "Matrix3":
        if n < 0:
            raise ValueError("negative powers need an explicit inverse")
        out = Matrix3.identity(self.path)
        for _ in range(n):
            out = out * self
        return out

    def conj_transpose(self) -> "Matrix3":
        return Matrix3(tuple(tuple(self.rows[c][r].conj() for c in range(3))
                             for r in range(3)))

    def transpose(self) -> "Matrix3":
        return Matrix3(tuple(tuple(self.rows[c][r] for c in range(3)) for r in range(3)))

    def trace(self):
        return self.rows[0][0] + self.rows[1][1] + self.rows[2][2]

    def entries(self):
        return [e for r in self.rows for e in r]

    def scalar_multiple_of_identity(self):
        """Return ``lam`` if the matrix equals ``lam * I`` exactly, else None."""
        r = self.rows
        if any(not r[i][j].is_zero() for i in range(3) for j in range(3) if i != j):
            return None
        if r[0][0] == r[1][1] == r[2][2]:
            return r[0][0]
        return None

    def isclose(self, other: "Matrix3", tol: float = DEFAULT_TOL) -> bool:
        a = [Quaternion.coerce(x) for x in self.entries()]
        b = [Quaternion.coerce(x) for x in other.entries()]
        return all(x.isclose(y, tol) for x, y in zip(a, b))

    def __str__(self):
        return format_matrix(self)


FORM_H = Matrix3(((0, 0, 1), (0, 1, 0), (1, 0, 0)))

ORIGIN = Vector3(0, 0, 1)
INFINITY = Vector3(1, 0, 0)


def form_matrix(path: str = EXACT) -> Matrix3:
    if path == QUATERNION:
        return Matrix3(tuple(tuple(Quaternion.coerce(e) for e in r) for r in FORM_H.rows))
    return FORM_H


def _check_same_path(*objs):
    paths = {o.path for o in objs}
    if len(paths) > 1:
        raise TypeError(f"mixed scalar paths: {sorted(paths)}")


def herm_inner(z: Vector3, w: Vector3):
    """``<z, w> = conj(w3) z1 + conj(w2) z2 + conj(w1) z3``."""
    _check_same_path(z, w)
    return w.z3.conj() * z.z1 + w.z2.conj() * z.z2 + w.z1.conj() * z.z3


def _sign_of_real(value, path: str, scale: float, tol: float) -> int:
    if path == EXACT:
        if not value.is_real():
            raise ArithmeticError("Hermitian norm has a nonzero imaginary part")
        return value.re.sign()
    r = value.real
    if abs(r) <= tol * max(1.0, scale):
        return 0
    return 1 if r > 0 else -1


def classify_vector(z: Vector3, tol: float = DEFAULT_TOL) -> VectorType:
    """Sign of ``<z, z>``: exact on the exact path, within ``tol`` on floats."""
    if z.is_zero():
        raise ValueError("the zero vector has no type")
    scale = sum(Quaternion.coerce(e).abs2() for e in z)
    s = _sign_of_real(herm_inner(z, z), z.path, scale, tol)
    return {1: VectorType.POSITIVE, -1: VectorType.NEGATIVE, 0: VectorType.NULL}[s]


def is_unitary(g: Matrix3, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``g* H g = H``; entrywise within ``tol`` on the float path."""
    h = form_matrix(g.path)
    lhs = g.conj_transpose() * h * g
    if g.path == EXACT:
        return lhs == h
    scale = max(1.0, max(Quaternion.coerce(e).abs2() for e in g.entries()))
    return lhs.isclose(h, tol * scale)


def standard_lift(p) -> Vector3:
    """``(-|zeta|^2 + nu, sqrt2 zeta, 1)`` for a Heisenberg point ``p``."""
    from .heisenberg import embed_nu, sqrt2_on_path

    zeta = p.zeta
    nu = embed_nu(p)
    return Vector3(-zeta.abs2() + nu, sqrt2_on_path(p.path) * zeta, 1)


def projective_coordinates(z: Vector3):
    """``(z1 z3^-1, z2 z3^-1)`` using right division."""
    if z.z3.is_zero():
        raise ZeroDivisionError("point at infinity has no finite coordinates")
    inv = z.z3.inverse()
    return z.z1 * inv, z.z2 * inv


def siegel_membership(w1, w2, tol: float = DEFAULT_TOL) -> SiegelRegion:
    """Locate ``(w1, w2)`` by the sign of ``2 Re(w1) + |w2|^2``."""
    path = _common_path((w1, w2))
    w1, w2 = _to_path(w1, path), _to_path(w2, path)
    value = 2 * _real_part(w1) + w2.abs2()
    if path == EXACT:
        s = value.sign()
    else:
        scale = max(1.0, abs(w1.real), w2.abs2())
        s = 0 if abs(value) <= tol * scale else (1 if value > 0 else -1)
    return {-1: SiegelRegion.INTERIOR, 0: SiegelRegion.BOUNDARY, 1: SiegelRegion.EXTERIOR}[s]


# --- text format --------------------------------------------------------

def _fmt_entry(x) -> str:
    if isinstance(x, Quaternion):
        return format_quaternion(x)
    return format_complex(x)


def _parse_entry(text: str, path: str):
    if path == QUATERNION:
        return parse_quaternion(text)
    return parse_complex(text)


def format_vector(v: Vector3) -> str:
    """Column vector: one entry per row, rows separated by ``;``."""
    return ";".join(_fmt_entry(e) for e in v)


def parse_vector(text: str, path: str = EXACT) -> Vector3:
    parts = text.split(";")
    if len(parts) != 3:
        raise ParseError(f"expected 3 rows separated by ';': {text!r}")
    return Vector3(*(_parse_entry(p, path) for p in parts))


def format_matrix(m: Matrix3) -> str:
    return ";".join(",".join(_fmt_entry(e) for e in row) for row in m.rows)


def parse_matrix(text: str, path: str = EXACT) -> Matrix3:
    rows = text.split(";")
    if len(rows) != 3:
        raise ParseError(f"expected 3 rows separated by ';': {text!r}")
    out = []
    for row in rows:
        cells = row.split(",")
        if len(cells) != 3:
            raise ParseError(f"expected 3 entries separated by ',': {row!r}")
        out.append(tuple(_parse_entry(c, path) for c in cells))
    return Matrix3(tuple(out))


def matrix_from_rows(rows: Sequence[Sequence]) -> Matrix3:
    return Matrix3(tuple(tuple(r) for r in rows))
