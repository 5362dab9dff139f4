"""Games: synchronicity, bisynchronicity, flips, and the bisynchronous lift.

A synchronous game forces equal answers to equal questions; a
bisynchronous game additionally forces distinct answers to distinct
questions.  Graph games illustrate both: homomorphism games from a
complete graph are bisynchronous (distinct questions are adjacent, so
answers must be adjacent, hence distinct), homomorphism games INTO a
complete graph need not be (a coloring may repeat colors), and the
isomorphism game always is.
"""

import numpy as np

from bisyncgames import games

k3 = games.complete_graph(3)
c5 = games.cycle_graph(5)
p3 = games.path_graph(3)

print("Hom(K3, C5):",
      "synchronous" if games.is_synchronous(games.hom_game(k3, c5)) else "-",
      "| bisynchronous" if games.is_bisynchronous(games.hom_game(k3, c5)) else "")
print("Hom(C5, K3) bisynchronous?",
      games.is_bisynchronous(games.hom_game(c5, k3)),
      "(a 3-coloring of C5 repeats colors on non-adjacent vertices)")

iso = games.iso_game(c5, c5)
print("Iso(C5, C5) bisynchronous?", games.is_bisynchronous(iso))
identity_relabeling = [x + 5 if x < 5 else x - 5 for x in range(10)]
print("identity relabeling wins Iso(C5, C5)?",
      games.is_perfect_deterministic(iso, identity_relabeling))

# The flip exchanges questions and answers.  A game is bisynchronous
# exactly when it and its flip are both synchronous.
g = games.hom_game(k3, p3)
flipped = games.flip_game(g)
print("\nflip is an involution?",
      np.array_equal(games.flip_game(flipped).lam, g.lam))
dead = [(x, y) for x in range(3) for y in range(3)
        if not flipped.lam[x, y].any()]
print("flip of Hom(K3, P3) has input pairs with no winning answer:", dead)
print("(so that flipped game has no perfect strategy of any kind)")

# Every synchronous game lifts to a bisynchronous one: the players
# return their question along with their answer.
lifted = games.bisync_lift(g)
print("\nlift of Hom(K3, P3): outputs", g.kA, "->", lifted.kA,
      "| bisynchronous?", games.is_bisynchronous(lifted))

# 2-coloring as a game: K2 -> K2 works, K3 -> K2 cannot
print("\nK2 2-colorable?",
      games.has_perfect_deterministic(games.hom_game(games.complete_graph(2),
                                                     games.complete_graph(2))))
print("K3 2-colorable?",
      games.has_perfect_deterministic(games.hom_game(k3,
                                                     games.complete_graph(2))))
