import itertools

import numpy as np
import pytest

from bisyncgames import games
from bisyncgames.errors import BadInput, NotSynchronous, TooLarge
from bisyncgames.games import (
    Game,
    bisync_lift,
    complete_graph,
    cycle_graph,
    empty_graph,
    flip_game,
    graph_complement,
    hom_game,
    is_bisynchronous,
    is_synchronous,
    iso_game,
    path_graph,
)


def random_graph(rng, n):
    adj = rng.integers(0, 2, size=(n, n)).astype(bool)
    adj = np.triu(adj, 1)
    return games.Graph(adj | adj.T)


def random_game(rng, n, k):
    return Game(rng.integers(0, 2, size=(n, n, k, k)).astype(bool))


def test_graph_constructors():
    k3 = complete_graph(3)
    assert k3.adjacency.sum() == 6
    assert graph_complement(k3).adjacency.sum() == 0
    with pytest.raises(BadInput):
        complete_graph(0)
    with pytest.raises(BadInput):
        games.Graph(np.eye(2, dtype=bool))


def test_complement_involution(rng):
    for n in (1, 3, 5):
        g = random_graph(rng, n)
        assert np.array_equal(graph_complement(graph_complement(g)).adjacency,
                              g.adjacency)


def test_complement_of_c5_is_isomorphic_to_c5():
    # oracle: enumerate all 120 relabelings of the pentagram
    c5 = cycle_graph(5)
    comp = graph_complement(c5)
    hits = [s for s in itertools.permutations(range(5))
            if np.array_equal(games.relabel_graph(comp, s).adjacency, c5.adjacency)]
    assert hits


def test_hom_game_synchronous():
    assert is_synchronous(hom_game(complete_graph(3), complete_graph(3)))


def test_hom_game_k2_entries():
    g = hom_game(complete_graph(2), complete_graph(2))
    # an edge of the source must land on an edge of the target
    assert not g.lam[0, 1, 0, 0]
    assert g.lam[0, 1, 0, 1]


def test_random_hom_games_synchronous(rng):
    for _ in range(5):
        g = random_graph(rng, int(rng.integers(1, 5)))
        h = random_graph(rng, int(rng.integers(1, 5)))
        assert is_synchronous(hom_game(g, h))


def test_nonsynchronous_game_detected():
    lam = np.ones((2, 2, 2, 2), dtype=bool)
    g = Game(lam)  # allows different answers to equal questions
    assert not is_synchronous(g)


def test_bisynchronous_hom_games():
    assert is_bisynchronous(hom_game(complete_graph(3), cycle_graph(5)))
    assert not is_bisynchronous(hom_game(cycle_graph(5), complete_graph(3)))


def test_hom_from_complete_always_bisynchronous(rng):
    for c in (2, 3, 4):
        g = random_graph(rng, int(rng.integers(2, 6)))
        assert is_bisynchronous(hom_game(complete_graph(c), g))


def test_iso_game_bisynchronous(rng):
    assert is_synchronous(iso_game(cycle_graph(5), cycle_graph(5)))
    assert is_bisynchronous(iso_game(cycle_graph(5), cycle_graph(5)))
    g = random_graph(rng, 3)
    h = random_graph(rng, 3)
    assert is_bisynchronous(iso_game(g, h))


def test_iso_game_k1():
    # one vertex per side: the predicate is 1 exactly when each answer
    # lies in the graph opposite its question
    g = iso_game(complete_graph(1), complete_graph(1))
    for x, y, a, b in itertools.product(range(2), repeat=4):
        assert g.lam[x, y, a, b] == (a != x and b != y)


def test_iso_game_identity_strategy_perfect():
    # oracle: check the winning predicate on all 10^4 tuples
    c5 = cycle_graph(5)
    g = iso_game(c5, c5)
    f = [x + 5 if x < 5 else x - 5 for x in range(10)]
    assert games.is_perfect_deterministic(g, f)


def test_hom_k3_to_k2_has_no_perfect_strategy():
    # K_3 is not 2-colorable: all 2^3 response functions lose somewhere
    g = hom_game(complete_graph(3), complete_graph(2))
    assert not games.has_perfect_deterministic(g)
    assert games.has_perfect_deterministic(hom_game(complete_graph(2), complete_graph(2)))


def test_flip_involution(rng):
    for _ in range(5):
        g = random_game(rng, int(rng.integers(1, 4)), int(rng.integers(1, 4)))
        assert np.array_equal(flip_game(flip_game(g)).lam, g.lam)


def test_bisynchronous_iff_both_flips_synchronous(rng):
    samples = [hom_game(complete_graph(3), cycle_graph(5)),
               hom_game(cycle_graph(5), complete_graph(3)),
               iso_game(cycle_graph(4), cycle_graph(4))]
    for _ in range(10):
        samples.append(random_game(rng, 3, 3))
    for g in samples:
        both = is_synchronous(g) and is_synchronous(flip_game(g))
        assert is_bisynchronous(g) == both
        assert is_bisynchronous(g) == is_bisynchronous(flip_game(g))


def test_flip_of_hom_from_complete_has_dead_input_pair():
    # flipping Hom(K_3, P_3) leaves some input pair with no winning answers
    g = flip_game(hom_game(complete_graph(3), path_graph(3)))
    dead = [(x, y) for x in range(3) for y in range(3)
            if x != y and not g.lam[x, y].any()]
    assert (0, 2) in dead


def test_bisync_lift():
    base = hom_game(cycle_graph(5), complete_graph(3))
    lifted = bisync_lift(base)
    assert lifted.kA == 15
    assert is_bisynchronous(lifted)


def test_bisync_lift_random_synchronous(rng):
    for _ in range(5):
        g = random_graph(rng, int(rng.integers(1, 4)))
        h = random_graph(rng, int(rng.integers(1, 4)))
        assert is_bisynchronous(bisync_lift(hom_game(g, h)))


def test_bisync_lift_requires_synchronous():
    with pytest.raises(NotSynchronous):
        bisync_lift(Game(np.ones((2, 2, 2, 2), dtype=bool)))


def test_bisync_lift_of_perfect_strategy():
    # a perfect response function f lifts to x -> (x, f(x))
    g = hom_game(complete_graph(2), complete_graph(2))
    f = [0, 1]
    assert games.is_perfect_deterministic(g, f)
    lifted = bisync_lift(g)
    k = g.kA
    lifted_f = [games.lift_output_index(x, f[x], k) for x in range(2)]
    assert games.is_perfect_deterministic(lifted, lifted_f)


def test_response_function_guard():
    with pytest.raises(TooLarge):
        list(games.response_functions(12, 4))
