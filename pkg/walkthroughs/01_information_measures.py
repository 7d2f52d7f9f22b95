"""
Entropies, transmissions and the sign of configurational information
=====================================================================

Three binary variables U, I, G (membership of a document in the university,
industry and government sectors) with a joint distribution stored as a
(2, 2, 2) array indexed [u, i, g].
"""

# %%
import numpy as np

from triplehelix import configurational_information, entropy, joint_entropy, transmission2
from triplehelix.measures import conditional_transmission

# %%
# Shannon entropy in bits, and the same value in millibits
print(entropy([0.5, 0.25, 0.25]))
print(entropy([0.5, 0.25, 0.25], unit="mbit"))

# %%
# Two correlated binary variables: joint entropy and mutual information
xy = np.array([[0.4, 0.1], [0.1, 0.4]])
print("H(X,Y) =", joint_entropy(xy))
print("T(X,Y) =", transmission2(xy))

# %%
# Three copies of one fair coin: every pair shares information, T(UIG) = +1 bit
copies = np.zeros((2, 2, 2))
copies[0, 0, 0] = copies[1, 1, 1] = 0.5
print("redundant copies:", configurational_information(copies))

# %%
# XOR: any two variables are independent but together fix the third,
# so knowing G reduces the uncertainty between U and I.  T(UIG) = -1 bit.
xor = np.zeros((2, 2, 2))
for cell in [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]:
    xor[cell] = 0.25
print("xor:", configurational_information(xor))
print("T(U,I) =", transmission2(xor.sum(axis=2)), " T(U,I|G) =", conditional_transmission(xor, given=2))

# %%
# Random joint: T(UIG) = T(U,I) - T(U,I|G)
rng = np.random.default_rng(0)
j = rng.random((2, 2, 2))
j /= j.sum()
lhs = configurational_information(j).value
rhs = transmission2(j.sum(axis=2)).value - conditional_transmission(j, given=2).value
print(f"{lhs:.12f} == {rhs:.12f}")
