"""Quaternionic variants: the vertical pair and the complex-slice reduction."""
from heisfree.freeness import check_free_quat, check_free_vertical_quat, quat_conjugator
from heisfree.scalars import QI, ImaginaryQuat, Quaternion

tau = ImaginaryQuat(-1.0, 2.0, 2.0)
alpha = quat_conjugator(tau)
print("alpha =", alpha)
print("alpha tau alpha^-1 =", alpha * tau.to_quaternion() * alpha.inverse())  # ~ 3i

for t in (tau, ImaginaryQuat(0.5, 1.0, 0.5)):
    v = check_free_vertical_quat(t)
    print(f"|tau| = {t.norm():.3f}: {v.kind.value} ({v.certificate})")

# a quaternion mu is conjugate to a complex mu with the same real part and modulus
mu = Quaternion(-0.5, 0.3, 0.3, 0.2)
v = check_free_quat(mu)
print(f"mu = {mu}: {v.kind.value} ({v.certificate})")
