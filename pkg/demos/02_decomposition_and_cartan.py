"""Generators as products of complex-geodesic inversions, and the Cartan angle.

For mu on the circle |mu + 1/2| = 1/2 write mu = (-1 - i nu)/(1 + nu^2).  Then
A = i0 i2 and B(mu) = i2 i1, with the inversions fixed by a boundary triple
whose Cartan invariant has tangent -nu.
"""
from fractions import Fraction

from heisfree.cartan import BoundaryTriple, cartan_invariant, decompose_generators, mu_from_nu
from heisfree.freeness import CIRCLE_THRESHOLD, NU_SQUARED_BOUND

for nu in (Fraction(0), Fraction(2), Fraction(-7, 3), Fraction(13)):
    mu = mu_from_nu(nu)
    d = decompose_generators(mu)            # raises if either product fails
    inv = cartan_invariant(BoundaryTriple.standard(nu))
    print(f"nu = {nu}: mu = {mu}, |mu|^2 = {mu.abs2()}")
    print(f"  tan(angle) = {inv.tangent}   angle = {inv.angle:.6f} rad")
    print(f"  nu^2 <= {NU_SQUARED_BOUND}: {nu * nu <= NU_SQUARED_BOUND};"
          f" |mu|^2 >= {CIRCLE_THRESHOLD}: {mu.abs2() >= CIRCLE_THRESHOLD}")

print("i2 for nu = 2:", decompose_generators(mu_from_nu(2)).i2)
