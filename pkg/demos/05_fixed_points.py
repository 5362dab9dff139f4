"""The fixed-point algebra of a quantum-permutation channel, three ways.

For a channel induced by a quantum permutation u, the matrices A with
Phi(A) = A form an algebra computable by three independent routes:

  1. matrices with (A (x) 1) u = u (A (x) 1),
  2. the eigenspace of Phi at eigenvalue 1, equal to the joint
     commutant of the Kraus operators of Phi,
  3. matrices constant on the position classes generated by the
     relation "(i,j) ~ (k,l) when E[i,k] E[j,l] is nonzero".

The three answers coincide, the algebra is closed under the entrywise
(Schur) product, and it depends only on the density: conjugating the
system by a unitary changes nothing.
"""

import numpy as np

from bisyncgames import cpmaps, linalg, qperm

rng = np.random.default_rng(21)

# For a single cycle the algebra is the circulant commutant.
cycle = qperm.from_permutation([1, 2, 3, 4, 0])
fe = qperm.fix_equivalence_check(cycle)
print("5-cycle:", fe.report.check("dimensions_equal").witness)

# A genuinely quantum system: the two-block family merges classes inside
# each 2x2 block sector.
pair = qperm.block_pair(qperm.random_rank1_projection(rng, 2),
                        qperm.random_rank1_projection(rng, 2))
fe = qperm.fix_equivalence_check(pair)
print("\nblock pair:", fe.report.check("dimensions_equal").witness)
print("position classes:")
for cls in fe.pattern.classes:
    print("  ", list(cls))
print("all cross-checks pass:", fe.report.passed)

# Schur closure: entrywise products of fixed points stay fixed.
print("fixed basis Schur-closed:",
      cpmaps.is_schur_closed(fe.fix_eigen_basis))

# Uniqueness: a conjugated system induces the same density, and the
# commutation subspace is literally the same.
conj = qperm.conjugate(pair, qperm.random_unitary(rng, 2))
s1 = qperm.commutation_subspace(pair)
s2 = qperm.commutation_subspace(conj)
print("\nconjugated system, same commutation subspace:",
      len(s1) == len(s2)
      and linalg.span_containment_residual(s1, s2) < 1e-9)
