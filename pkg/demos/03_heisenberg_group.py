"""The Heisenberg group law and its translation matrices."""

from heisfree.heisenberg import HeisPoint, heis_mul, heis_translation_matrix, lift
from heisfree.hermitian import classify_vector, is_unitary
from heisfree.scalars import ExactComplex, Quaternion, ImaginaryQuat

p = HeisPoint(ExactComplex(1, 1), 0)
q = HeisPoint(ExactComplex(0, 1), 1)
print("p*q =", heis_mul(p, q))
print("q*p =", heis_mul(q, p))         # non-abelian: the nu parts differ

T = heis_translation_matrix
print("T(p)T(q) == T(pq):", T(p) * T(q) == T(heis_mul(p, q)))
print("T(p) unitary:", is_unitary(T(p)))
print("lift(p) is", classify_vector(lift(p)).value)

# quaternionic points run the same law in floating point
a = HeisPoint(Quaternion(0.5, 1.0, -2.0, 0.25), ImaginaryQuat(1.0, 0.0, 0.5))
b = HeisPoint(Quaternion(1.0, 0.0, 3.0, -1.0), ImaginaryQuat(0.0, 2.0, 0.0))
print("a*b =", heis_mul(a, b))
print("homomorphism (floats):", (T(a) * T(b)).isclose(T(heis_mul(a, b))))
