"""Cartan angular invariant, polar vectors and complex-geodesic inversions.

Everything here runs on the exact complex path.  The angle is returned as a
float for display, but the triple product itself is kept exactly so that
threshold comparisons never go through ``arg``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .heisenberg import HeisPoint
from .hermitian import (
    EXACT,
    INFINITY,
    ORIGIN,
    Matrix3,
    Vector3,
    VectorType,
    classify_vector,
    herm_inner,
    standard_lift,
)
from .scalars import ExactComplex, ExactScalar

# zeta is forced to -1 by matching i0*i2 against the fixed generator A
DECOMPOSITION_ZETA = ExactComplex(-1)


class ConstraintError(ValueError):
    """Input violates an exact algebraic constraint; ``residual`` says by how much."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


def _require_exact(*vectors):
    for v in vectors:
        if v.path != EXACT:
            raise TypeError("only the exact complex path is supported here")


def are_proportional(u: Vector3, v: Vector3) -> bool:
    """Whether ``u`` and ``v`` span the same complex line (all 2x2 minors vanish)."""
    for a, b in ((0, 1), (0, 2), (1, 2)):
        if not (u[a] * v[b] - u[b] * v[a]).is_zero():
            return False
    return True


@dataclass(frozen=True)
class BoundaryTriple:
    p0: Vector3
    p1: Vector3
    p2: Vector3

    def __post_init__(self):
        _require_exact(self.p0, self.p1, self.p2)
        for name in ("p0", "p1", "p2"):
            if classify_vector(getattr(self, name)) is not VectorType.NULL:
                raise ValueError(f"{name} is not a null vector")
        pts = (self.p0, self.p1, self.p2)
        for i in range(3):
            for j in range(i + 1, 3):
                if are_proportional(pts[i], pts[j]):
                    raise ValueError(f"p{i} and p{j} are the same boundary point")

    @classmethod
    def standard(cls, nu) -> "BoundaryTriple":
        """The triple ``(o, infinity, lift(-1, nu))``."""
        return cls(ORIGIN, INFINITY, standard_lift(HeisPoint(DECOMPOSITION_ZETA, nu)))


@dataclass(frozen=True)
class CartanInvariant:
    """``angle = arg(product)``; ``product`` is the exact negated triple product."""

    product: ExactComplex
    angle: float

    @property
    def tangent_pair(self) -> tuple[ExactScalar, ExactScalar]:
        """``(Im, Re)`` of the product, so ``tan(angle) = Im / Re``."""
        return self.product.im, self.product.re

    @property
    def tangent(self):
        """Exact ``tan(angle)``, or None when the angle is +-pi/2."""
        if self.product.re.is_zero():
            return None
        return self.product.im / self.product.re

    def tangent_squared_at_most(self, bound) -> bool:
        """Exact test ``Im^2 <= bound * Re^2``, i.e. ``tan^2 <= bound``."""
        im, re = self.tangent_pair
        return (im * im) <= ExactScalar.coerce(bound) * (re * re)


def triple_product(p0: Vector3, p1: Vector3, p2: Vector3) -> ExactComplex:
    return -(herm_inner(p0, p1) * herm_inner(p1, p2) * herm_inner(p2, p0))


def cartan_invariant(t: BoundaryTriple) -> CartanInvariant:
    prod = triple_product(t.p0, t.p1, t.p2)
    if prod.is_zero():
        raise ValueError("degenerate triple: the triple product vanishes")
    if prod.re.sign() < 0:
        # cannot happen for null vectors; a failure here means corrupted input
        raise ArithmeticError("triple product has negative real part")
    angle = math.atan2(float(prod.im), float(prod.re))
    return CartanInvariant(prod, angle)


def polar_vector(pa: Vector3, pb: Vector3) -> Vector3:
    """Positive vector ``c`` with ``<pa, c> = <pb, c> = 0``.

    ``<p, c> = 0`` is linear in ``(c1, c2, c3)`` with coefficient row
    ``(conj p3, conj p2, conj p1)`` after conjugation, so ``c`` is the cross
    product of the two rows.  The result is scaled so that its first nonzero
    entry is 1.
    """
    _require_exact(pa, pb)
    if are_proportional(pa, pb):
        raise ValueError("polar vector needs two distinct points")
    u = (pa.z3.conj(), pa.z2.conj(), pa.z1.conj())
    v = (pb.z3.conj(), pb.z2.conj(), pb.z1.conj())
    c = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
    lead = next(x for x in c if not x.is_zero())
    inv = lead.inverse()
    return Vector3(*(x * inv for x in c))


def inversion_matrix(c: Vector3) -> Matrix3:
    """Matrix of ``Z -> -Z + 2 <Z, c> / <c, c> * c``."""
    _require_exact(c)
    norm = herm_inner(c, c)
    if not norm.is_real() or norm.re.sign() <= 0:
        raise ValueError("inversion needs a positive polar vector")
    k = ExactComplex(2) / norm
    # <Z, c> = conj(c3) Z1 + conj(c2) Z2 + conj(c1) Z3
    row = (c.z3.conj(), c.z2.conj(), c.z1.conj())
    rows = []
    for r in range(3):
        rows.append(tuple(
            k * c[r] * row[col] - (1 if r == col else 0) for col in range(3)
        ))
    return Matrix3(tuple(rows))


@dataclass(frozen=True)
class Decomposition:
    nu: ExactScalar
    i0: Matrix3
    i1: Matrix3
    i2: Matrix3
    triple: BoundaryTriple

    @property
    def mu(self) -> ExactComplex:
        return mu_from_nu(self.nu)


def mu_from_nu(nu) -> ExactComplex:
    """``mu = (-1 - i nu) / (1 + nu^2)``."""
    nu = ExactScalar.coerce(nu)
    return ExactComplex(-1, -nu) / ExactComplex(1 + nu * nu)


def circle_residual(mu: ExactComplex) -> ExactScalar:
    """``Re(mu) + |mu|^2``; zero exactly on the circle ``|mu + 1/2| = 1/2``."""
    mu = ExactComplex.coerce(mu)
    return mu.re + mu.abs2()


def nu_from_mu(mu: ExactComplex) -> ExactScalar:
    mu = ExactComplex.coerce(mu)
    res = circle_residual(mu)
    if not res.is_zero():
        raise ConstraintError(f"mu is off the circle; Re(mu)+|mu|^2 = {res}", res)
    if mu.is_zero():
        raise ConstraintError("mu = 0 has no parameter nu", res)
    return mu.im / mu.re


def decompose_generators(mu) -> Decomposition:
    """Write ``A = i0 i2`` and ``B(mu) = i2 i1`` as products of inversions.

    Raises :class:`ConstraintError` unless ``mu`` lies on the circle and is
    nonzero.  Both products are checked exactly before returning.
    """
    from .freeness import GENERATOR_A, generator_b

    mu = ExactComplex.coerce(mu)
    nu = nu_from_mu(mu)
    t = BoundaryTriple.standard(nu)
    i0 = inversion_matrix(polar_vector(t.p1, t.p2))
    i1 = inversion_matrix(polar_vector(t.p0, t.p2))
    i2 = inversion_matrix(polar_vector(t.p0, t.p1))
    if i0 * i2 != GENERATOR_A or i2 * i1 != generator_b(mu):
        raise ArithmeticError("inversion products do not reproduce the generators")
    return Decomposition(nu, i0, i1, i2, t)
