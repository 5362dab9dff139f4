import itertools
import math

import numpy as np
import pytest

from bisyncgames import densities as dn
from bisyncgames import games
from bisyncgames.errors import (
    BadWeights,
    InvalidDensity,
    NotBijective,
    PreconditionFailed,
    ShapeMismatch,
    TooLarge,
)


def test_uniform_validates():
    assert dn.validate(dn.uniform_density(3, 4))


def test_permutation_density_validates_and_is_deterministic():
    d = dn.from_permutation([2, 0, 1])
    assert dn.validate(d)
    assert dn.is_nonsignalling(d)
    assert d.p[0, 1, 2, 0] == 1.0


def test_from_permutation_rejects_nonbijection():
    with pytest.raises(NotBijective):
        dn.from_permutation([0, 0, 1])


def test_identity_permutation_density_pattern():
    d = dn.from_permutation(range(3))
    for x, y, a, b in itertools.product(range(3), repeat=4):
        assert d.p[x, y, a, b] == (1.0 if (a, b) == (x, y) else 0.0)


def test_three_cycle_density_entry():
    d = dn.from_permutation([1, 2, 0])
    assert d.p[0, 1, 1, 2] == 1.0


def test_permutation_densities_always_bisynchronous():
    for n in range(1, 5):
        for sigma in itertools.permutations(range(n)):
            assert dn.is_bisynchronous_density(dn.from_permutation(sigma))


def test_z3_counterexample_classification():
    d = dn.z3_counterexample()
    assert dn.validate(d)
    assert dn.is_nonsignalling(d)
    assert dn.is_bisynchronous_density(d)
    assert d.p[0, 1, 2, 1] == pytest.approx(1 / 3)  # 2 - 1 = 1 mod 3


def test_z3_flip_is_not_a_density():
    flip = dn.flip_density(dn.z3_counterexample())
    assert not dn.validate(flip)
    # the row of input pair (2, 0) carries no mass at all
    assert flip.p[2, 0].sum() == 0.0


def test_flip_involution(rng):
    p = rng.random((3, 3, 3, 3))
    p /= p.sum(axis=(2, 3), keepdims=True)
    d = dn.Density(p)
    again = dn.flip_density(dn.flip_density(d))
    assert np.array_equal(again.p, d.p)


def test_flip_shape_guard():
    with pytest.raises(ShapeMismatch):
        dn.flip_density(dn.uniform_density(2, 3))


def test_nonsignalling_requires_valid():
    bad = dn.Density(np.zeros((2, 2, 2, 2)))
    with pytest.raises(InvalidDensity):
        dn.is_nonsignalling(bad)


def test_sync_and_bisync_examples():
    constant = dn.from_response_function([0, 0], 2)
    assert dn.is_synchronous_density(constant)
    assert not dn.is_bisynchronous_density(constant)
    assert not dn.is_synchronous_density(dn.uniform_density(2, 2))


def test_noncp_example_classification():
    d = dn.noncp_nonsignalling_example()
    assert dn.validate(d)
    assert dn.is_nonsignalling(d)
    # the anticorrelated exception sits on a diagonal input pair, so the
    # density is not synchronous
    assert not dn.is_synchronous_density(d)


def test_is_perfect_for_iso_game():
    c5 = games.cycle_graph(5)
    g = games.iso_game(c5, c5)
    f = [x + 5 if x < 5 else x - 5 for x in range(10)]
    d = dn.from_response_function(f, 10)
    assert dn.is_perfect_for(g, d)


def test_no_density_is_perfect_for_flipped_hom():
    g = games.flip_game(games.hom_game(games.complete_graph(3), games.path_graph(3)))
    assert not dn.is_perfect_for(g, dn.uniform_density(3, 3))
    assert not dn.is_perfect_for(g, dn.from_permutation([0, 1, 2]))


def test_perfect_shape_guard():
    g = games.hom_game(games.complete_graph(2), games.complete_graph(2))
    with pytest.raises(ShapeMismatch):
        dn.is_perfect_for(g, dn.uniform_density(3, 3))


def test_compose_with_identity():
    d = dn.z3_counterexample()
    ident = dn.from_permutation(range(3))
    assert np.abs(dn.compose(d, ident).p - d.p).max() < 1e-15
    assert np.abs(dn.compose(ident, d).p - d.p).max() < 1e-15


def test_compose_of_permutations():
    sigma = [1, 2, 0]
    tau = [2, 1, 0]
    comp = dn.compose(dn.from_permutation(tau), dn.from_permutation(sigma))
    expected = dn.from_permutation([tau[sigma[x]] for x in range(3)])
    assert np.array_equal(comp.p, expected.p)


def test_compose_preserves_bisynchronicity(rng):
    mixes = []
    for _ in range(2):
        perms = [tuple(rng.permutation(4)) for _ in range(3)]
        w = rng.random(3)
        mixes.append(dn.mixture([dn.from_permutation(s) for s in perms], w / w.sum()))
    r = dn.compose(mixes[0], mixes[1])
    assert dn.is_bisynchronous_density(r)
    assert dn.is_nonsignalling(r)


def test_mixture_singleton_and_weights():
    d = dn.z3_counterexample()
    assert np.array_equal(dn.mixture([d], [1.0]).p, d.p)
    with pytest.raises(BadWeights):
        dn.mixture([d, d], [0.7, 0.7])


def test_uniform_mixture_of_all_permutations():
    # with sigma uniform over S_3: P(sigma(x) = a) = 1/3 on the diagonal
    # and P(sigma(x) = a, sigma(y) = b) = (n-2)!/n! = 1/6 off it
    perms = list(itertools.permutations(range(3)))
    mix = dn.mixture([dn.from_permutation(s) for s in perms],
                     [1 / 6] * 6)
    for x, y, a, b in itertools.product(range(3), repeat=4):
        if x == y:
            expected = (1 / 3) if a == b else 0.0
        elif a == b:
            expected = 0.0
        else:
            expected = 1 / 6
        assert mix.p[x, y, a, b] == pytest.approx(expected)


def test_mixture_of_bisynchronous_is_bisynchronous(rng):
    ds = [dn.from_permutation(rng.permutation(4)) for _ in range(3)]
    w = rng.random(3)
    assert dn.is_bisynchronous_density(dn.mixture(ds, w / w.sum()))


def test_membership_single_permutation():
    d = dn.from_permutation([1, 0, 2])
    res = dn.local_bisync_membership(d)
    assert isinstance(res, dn.PermutationMixture)
    big = [s for w, s in zip(res.weights, res.permutations) if w > 0.5]
    assert big == [(1, 0, 2)]


def test_membership_recovers_random_mixture(rng):
    perms = [tuple(rng.permutation(4)) for _ in range(4)]
    w = rng.random(len(perms))
    d = dn.mixture([dn.from_permutation(s) for s in perms], w / w.sum())
    res = dn.local_bisync_membership(d)
    assert isinstance(res, dn.PermutationMixture)
    recon = dn.mixture_density(res)
    assert np.abs(recon.p - d.p).max() <= 1e-9


def test_membership_z3_infeasible_with_certificate():
    d = dn.z3_counterexample()
    res = dn.local_bisync_membership(d)
    assert isinstance(res, dn.Infeasible)
    assert res.violation > 1e-6
    on_polytope, at_d = dn.separation_margins(d, res)
    assert on_polytope <= 1e-9
    assert at_d == pytest.approx(res.violation, abs=1e-9)


def test_membership_preconditions():
    with pytest.raises(PreconditionFailed):
        dn.local_bisync_membership(dn.uniform_density(2, 2))
    big = dn.from_permutation(range(9))
    with pytest.raises(PreconditionFailed):
        dn.local_bisync_membership(big)


def test_sync_membership_feasible_and_guard(rng):
    funcs = [tuple(rng.integers(0, 2, size=3)) for _ in range(3)]
    w = rng.random(3)
    w /= w.sum()
    d = dn.mixture([dn.from_response_function(f, 2) for f in funcs], w)
    res = dn.local_sync_membership(d)
    assert isinstance(res, dn.ResponseMixture)
    recon = dn.response_mixture_density(res)
    assert np.abs(recon.p - d.p).max() <= 1e-9
    with pytest.raises(TooLarge):
        dn.local_sync_membership(dn.from_response_function([0] * 12, 4))


def test_sync_membership_rejects_entangled_like_density():
    # bisynchronous but nonlocal: the order-3 counterexample is not even
    # synchronous-locally decomposable
    d = dn.z3_counterexample()
    res = dn.local_sync_membership(d)
    assert isinstance(res, dn.Infeasible)
    assert res.violation > 1e-6
    assert res.atoms == "responses"
    # the separating functional is checked over all 3^3 response columns
    on_polytope, at_d = dn.separation_margins(d, res)
    assert on_polytope <= 1e-9
    assert at_d == pytest.approx(res.violation, abs=1e-9)
