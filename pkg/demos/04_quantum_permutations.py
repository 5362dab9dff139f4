"""Quantum permutations: verified certificates for bisynchronous densities.

A quantum permutation is a square grid of projections whose rows and
columns sum to the identity; the block matrix is unitary.  With a
tracial state on the ancilla, the pairings tau(E[x,a] E[y,b]) form a
bisynchronous density, and evaluating X -> (id (x) tau)(u*(X (x) 1)u)
reproduces the induced map exactly.  Vector strategies certify the same
densities one level down: flattening the projections gives a grid of
vectors whose Gram matrix is the density.
"""

import numpy as np

from bisyncgames import cpmaps, densities as dn, games, qperm, vect

rng = np.random.default_rng(8)

# Constructions: classical permutations, the two-block family, weighted
# direct sums, and unitary conjugations.
classical = qperm.from_permutation([2, 0, 1])
pair = qperm.block_pair(qperm.random_rank1_projection(rng, 2),
                        qperm.random_rank1_projection(rng, 2))
summed = qperm.direct_sum(pair, qperm.from_permutation([1, 0, 3, 2]), 0.7, 0.3)
conj = qperm.conjugate(summed, [qperm.random_unitary(rng, d) for d in summed.dims])

for name, sys in [("classical", classical), ("block_pair", pair),
                  ("direct_sum", summed), ("conjugated", conj)]:
    rep = qperm.verify_system(sys)
    print(f"{name:11s} n={sys.n} ancilla dims={sys.dims} verified={rep.passed}")

d_sum = qperm.induced_density(summed)
d_conj = qperm.induced_density(conj)
print("\nconjugation leaves the density unchanged:",
      np.abs(d_sum.p - d_conj.p).max())

# The evaluation through the ancilla equals the induced map on every input.
m = cpmaps.phi_from_density(d_sum)
x = rng.normal(size=(4, 4))
diff = qperm.factorizable_apply(summed, x) - cpmaps.apply_map(m, x)
print("ancilla evaluation vs induced map:", np.abs(diff).max())

# Flip = transpose of the grid.
flipped = dn.flip_density(d_sum)
transposed = qperm.induced_density(qperm.transpose_system(summed))
print("flip equals the transposed grid's density:",
      np.abs(flipped.p - transposed.p).max())

# Graph intertwiners: a relabeling of the 5-cycle intertwines the
# adjacency matrices; no permutation can intertwine C5 with the path P5.
c5 = games.cycle_graph(5)
sigma = list(rng.permutation(5))
relabeled = games.relabel_graph(c5, sigma)
u = qperm.from_permutation(sigma)
print("\nrelabeling intertwines C5 with its relabeling:",
      qperm.intertwines(u, c5, relabeled))
print("identity permutation intertwines C5 with P5:",
      qperm.intertwines(qperm.from_permutation(range(5)), c5,
                        games.path_graph(5)))

# Vector strategies: the flattened projections verify the
# vector-permutation conditions and their Gram matrix is the density.
vs = vect.vect_from_projective(summed)
print("\nvector strategy verifies:", vect.verify_bisync_vect(vs).passed)
print("Gram density equals trace density:",
      np.abs(vect.density_from_vectors(vs).p - d_sum.p).max())
