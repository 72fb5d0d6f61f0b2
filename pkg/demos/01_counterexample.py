"""Why mu = -3/4 is not free.

|mu| = 3/4 clears the older, flawed radius bound (~0.577), yet the product AB
has trace zero and (AB)^3 is the identity.  Everything below is exact.
"""
from fractions import Fraction

from heisfree import generator_pair, identity_word_search, trace_ab
from heisfree.freeness import flawed_prior_bound, flawed_prior_condition, is_projective_identity

mu = Fraction(-3, 4)
pair = generator_pair(mu)

print("A =", pair.A)
print("B =", pair.B)

ab = pair.A * pair.B
print("AB =", ab)
print("tr(AB) =", trace_ab(mu))     # 0: an elliptic element of order 3

print("(AB)^3 is the identity:", is_projective_identity(ab ** 3))

# BFS over reduced words finds the shortest relation
print("shortest relation:", identity_word_search(pair, 6))
print("nothing shorter:", identity_word_search(pair, 5))

print(f"flawed bound {flawed_prior_bound():.7f} <= |mu| = 0.75 ->", flawed_prior_condition(mu))
