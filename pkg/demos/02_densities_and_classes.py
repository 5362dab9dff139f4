"""Densities: validation, signalling, the zero patterns, and the flip.

A conditional probability density p(a, b | x, y) is bisynchronous when
it vanishes off the diagonal for equal inputs and on the diagonal for
distinct inputs.  Flipping the roles of inputs and outputs preserves
this class for densities with quantum models, but NOT for merely
nonsignalling densities: the order-3 cyclic counterexample below is
bisynchronous and nonsignalling, yet its flip is not even a density.
"""

import numpy as np

from bisyncgames import densities as dn

d = dn.z3_counterexample()
print("cyclic order-3 density:")
print("  valid?          ", dn.validate(d))
print("  nonsignalling?  ", dn.is_nonsignalling(d))
print("  bisynchronous?  ", dn.is_bisynchronous_density(d))
print("  p(2,1|0,1) =", d.p[0, 1, 2, 1], " (2 - 1 = 1 mod 3)")

flip = dn.flip_density(d)
report = dn.validation_report(flip)
print("\nits flip validates?", report.passed)
for check in report.checks:
    print(f"  {check.name}: pass={check.passed}"
          + (f"  [{check.witness}]" if check.witness and not check.passed else ""))
print("  row (a,b)=(2,0) total mass:", flip.p[2, 0].sum())

# Deterministic densities come from permutations; convex mixtures stay
# bisynchronous.
sigma = [1, 2, 0]
perm = dn.from_permutation(sigma)
mix = dn.mixture([perm, dn.from_permutation([2, 0, 1])], [0.5, 0.5])
print("\npermutation density bisynchronous?", dn.is_bisynchronous_density(perm))
print("mixture of permutations bisynchronous?", dn.is_bisynchronous_density(mix))

# Composition r(a,b|v,w) = sum_xy q(a,b|x,y) p(x,y|v,w) preserves the class.
r = dn.compose(mix, perm)
print("composition bisynchronous?", dn.is_bisynchronous_density(r))

# flip of flip is the identity on tensors
print("\nflip involution exact?", np.array_equal(dn.flip_density(flip).p, d.p))
