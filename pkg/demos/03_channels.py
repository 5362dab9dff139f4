"""From a density to a linear map: Choi matrices and channel checks.

Each density p(a, b | x, y) induces the map sending the matrix unit
E_xy to sum_ab p(a, b | x, y) E_ab.  Densities with vector models give
channels (completely positive, trace preserving); with equal input and
output counts and a bisynchronous zero pattern, the channel is also
unital, fixes the all-ones matrix, and preserves the entry-sum
functional.  Merely nonsignalling densities can fail all of that.
"""

import numpy as np

from bisyncgames import cpmaps, densities as dn, qperm

# A quantum-permutation density gives a unital channel.
rng = np.random.default_rng(1)
sys = qperm.block_pair(qperm.random_rank1_projection(rng, 2),
                       qperm.random_rank1_projection(rng, 2))
m = cpmaps.phi_from_density(qperm.induced_density(sys))
print("channel report for a quantum-permutation density:")
for check in cpmaps.channel_report(m).checks:
    print(f"  {check.name}: {check.passed}  (violation {check.max_violation:.2e})")

# The cyclic order-3 counterexample is not even positive: it sends the
# all-ones matrix J to I + 2S for the cyclic shift S, which is not
# Hermitian, and its Choi matrix is not Hermitian either.
z3 = dn.z3_counterexample()
mz = cpmaps.phi_from_density(z3)
phi_j = cpmaps.apply_map(mz, np.ones((3, 3)))
print("\ncyclic example: Phi(J) =")
print(np.round(phi_j.real, 12))
print("completely positive?", cpmaps.is_cp(mz))
print("spectral non-CP margin:", cpmaps.noncp_spectral_margin(mz),
      "(= 1/sqrt(3); distance of the Choi spectrum from the nonnegative reals)")

# A Hermitian example: correlate on every input pair except one diagonal
# pair, anticorrelate there.  The Choi matrix picks up the eigenvalue
# -1/sqrt(2).
m2 = cpmaps.phi_from_density(dn.noncp_nonsignalling_example())
print("\nanticorrelated 2x2 example: min Choi eigenvalue =",
      cpmaps.min_choi_eigenvalue(m2))

# Kraus form of a CP map, extracted from Choi eigenvectors.
ks = cpmaps.kraus_from_choi(m)
print("\nKraus rank of the block-pair channel:", len(ks.operators))
recon = cpmaps.choi_from_kraus(ks, m.n, m.k)
print("Choi reconstruction error:", np.abs(recon.choi - m.choi).max())

# Adjoint: the map of the flipped tensor.
adj = cpmaps.adjoint_map(m)
x = rng.normal(size=(4, 4))
y = rng.normal(size=(4, 4))
lhs = np.trace(cpmaps.apply_map(m, x).conj().T @ y)
rhs = np.trace(x.conj().T @ cpmaps.apply_map(adj, y))
print("trace pairing <Phi(X), Y> = <X, Phi*(Y)>:", abs(lhs - rhs) < 1e-10)
