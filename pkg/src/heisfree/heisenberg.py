"""The Heisenberg group K x Im(K) and its translations of K^{2,1}."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .hermitian import EXACT, QUATERNION, Matrix3, Vector3, standard_lift
from .scalars import (
    SQRT2,
    ExactComplex,
    ExactScalar,
    ImaginaryQuat,
    ParseError,
    Quaternion,
    format_complex,
    format_quaternion,
    format_scalar,
    parse_complex,
    parse_imaginary_quat,
    parse_quaternion,
    parse_scalar,
)


@dataclass(frozen=True)
class HeisPoint:
    """A point ``(zeta, nu)`` of the Heisenberg group.

    On the exact path ``zeta`` is an :class:`ExactComplex` and ``nu`` is the
    real coefficient of ``i`` (an :class:`ExactScalar`).  On the quaternion
    path ``zeta`` is a :class:`Quaternion` and ``nu`` an :class:`ImaginaryQuat`.
    """

    zeta: object
    nu: object = 0

    def __post_init__(self):
        quat = isinstance(self.zeta, (Quaternion, float)) or isinstance(self.nu, ImaginaryQuat)
        if quat:
            object.__setattr__(self, "zeta", Quaternion.coerce(self.zeta))
            nu = self.nu
            if isinstance(nu, Quaternion):
                if nu.r0 != 0.0:
                    raise ValueError("nu must be purely imaginary")
                nu = nu.imag
            elif not isinstance(nu, ImaginaryQuat):
                if nu != 0:
                    raise TypeError("quaternion-path nu must be an ImaginaryQuat")
                nu = ImaginaryQuat()
            object.__setattr__(self, "nu", nu)
        else:
            object.__setattr__(self, "zeta", ExactComplex.coerce(self.zeta))
            object.__setattr__(self, "nu", ExactScalar.coerce(self.nu))

    @property
    def path(self) -> str:
        return QUATERNION if isinstance(self.zeta, Quaternion) else EXACT

    def __mul__(self, other: "HeisPoint") -> "HeisPoint":
        return heis_mul(self, other)

    def inverse(self) -> "HeisPoint":
        return HeisPoint(-self.zeta, -self.nu)

    def __str__(self):
        return format_heis_point(self)


def identity_point(path: str = EXACT) -> HeisPoint:
    if path == QUATERNION:
        return HeisPoint(Quaternion(), ImaginaryQuat())
    return HeisPoint(0, 0)


def _im_part(x):
    if isinstance(x, Quaternion):
        return x.imag
    return x.im


def embed_nu(p: HeisPoint):
    """``nu`` as a scalar on the point's path (``nu * i`` on the exact path)."""
    if p.path == QUATERNION:
        return p.nu.to_quaternion()
    return ExactComplex(0, p.nu)


def sqrt2_on_path(path: str):
    if path == QUATERNION:
        return Quaternion(math.sqrt(2.0))
    return ExactComplex(SQRT2)


def _check_paths(p: HeisPoint, q: HeisPoint):
    if p.path != q.path:
        raise TypeError(f"mixed scalar paths: {p.path} and {q.path}")


def heis_mul(p: HeisPoint, q: HeisPoint) -> HeisPoint:
    """Group law ``(z1, n1)(z2, n2) = (z1 + z2, n1 + n2 + 2 Im(z2* z1))``."""
    _check_paths(p, q)
    twist = _im_part(q.zeta.conj() * p.zeta)
    if p.path == QUATERNION:
        twist = twist.scale(2.0)
    else:
        twist = 2 * twist
    return HeisPoint(p.zeta + q.zeta, p.nu + q.nu + twist)


def heis_action(p0: HeisPoint, p: HeisPoint) -> HeisPoint:
    """Image of ``p`` under the left translation by ``p0``."""
    return heis_mul(p0, p)


def heis_translation_matrix(p: HeisPoint) -> Matrix3:
    """Unipotent upper-triangular matrix of the translation by ``p``.

    Rows ``(1, -sqrt2 zeta*, -|zeta|^2 + nu)``, ``(0, 1, sqrt2 zeta)``,
    ``(0, 0, 1)``.
    """
    r2 = sqrt2_on_path(p.path)
    zeta = p.zeta
    corner = -zeta.abs2() + embed_nu(p)
    return Matrix3((
        (1, -(r2 * zeta.conj()), corner),
        (0, 1, r2 * zeta),
        (0, 0, 1),
    ))


def is_vertical(p: HeisPoint) -> bool:
    return p.zeta.is_zero()


def lift(p: HeisPoint) -> Vector3:
    return standard_lift(p)


# --- text format: "(zeta; nu)" ------------------------------------------

def format_heis_point(p: HeisPoint) -> str:
    if p.path == QUATERNION:
        return f"({format_quaternion(p.zeta)}; {format_quaternion(p.nu.to_quaternion())})"
    return f"({format_complex(p.zeta)}; {format_scalar(p.nu)})"


_POINT_RE = re.compile(r"^\((?P<zeta>.*);(?P<nu>[^;]*)\)$")


def parse_heis_point(text: str, path: str = EXACT) -> HeisPoint:
    m = _POINT_RE.match(text.strip())
    if m is None:
        raise ParseError(f"expected '(zeta; nu)': {text!r}")
    if path == QUATERNION:
        return HeisPoint(parse_quaternion(m.group("zeta")), parse_imaginary_quat(m.group("nu")))
    return HeisPoint(parse_complex(m.group("zeta")), parse_scalar(m.group("nu")))

