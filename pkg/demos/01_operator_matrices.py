# The compressed shift in the basis f0 = alpha + beta z, z^2, z^3, ...
import numpy as np

from shiftlab import ParamPair, hyponormality_check, kernel_adjoint, matrix
from shiftlab.shift import apply_adjoint

np.set_printoptions(precision=4, suppress=True, linewidth=120)

s = 1 / np.sqrt(2)
pair = ParamPair(s, s)

print(matrix(pair, "S", 6).entries.real)
print()

# I - S*S only sees f0; I - SS* has a 2x2 corner
print(matrix(pair, "I-S*S", 5).entries.real)
print(matrix(pair, "I-SS*", 5).entries.real)

k = kernel_adjoint(pair, 8)
print("kernel vector", k.vec[:3], " ||S* k|| =", apply_adjoint(pair, k).norm())

# self-commutator stays positive semidefinite for random pairs
rng = np.random.default_rng(0)
lows = [hyponormality_check(ParamPair.random(rng), 64) for _ in range(200)]
print("smallest eigenvalue of S*S - SS* over 200 pairs:", min(lows))
