"""JSON formats for every artifact the package exchanges.

Complex scalars are [re, im] pairs.  All indices are 0-based.  Formats:

graph    {"n": int, "edges": [[i, j], ...]}
game     {"nA", "nB", "kA", "kB", "zeros": [[x, y, a, b], ...]}
density  {"n": int, "k": int, "p": [x][y][a][b]}
vect     {"n": int, "m": int, "h": [x][a] -> [[re, im] * m]}
system   {"n", "k", "blocks": [{"d", "weight", "E": [x][a] -> d x d of [re, im]}]}
choi     {"n", "k", "choi": flattened row-major [re, im] list}
mixture  {"n", "weights": [...], "permutations": [[...], ...]}
matrix   {"rows", "cols", "entries": [row][col] -> [re, im]}
"""

from __future__ import annotations

import json
import sys

import numpy as np

from .cpmaps import ChoiMap
from .densities import Density, PermutationMixture
from .errors import BadInput
from .games import Game, Graph
from .qperm import ProjectiveSystem
from .vect import VectorStrategy


def _c2pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _pair2c(p) -> complex:
    if not isinstance(p, (list, tuple)) or len(p) != 2:
        raise BadInput(f"expected [re, im], got {p!r}")
    return complex(float(p[0]), float(p[1]))


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def graph_from_dict(d: dict) -> Graph:
    try:
        n = int(d["n"])
        edges = d.get("edges", [])
    except (KeyError, TypeError) as exc:
        raise BadInput(f"bad graph JSON: {exc}")
    from .games import graph_from_edges
    return graph_from_edges(n, [tuple(e) for e in edges])


def game_to_dict(g: Game) -> dict:
    zeros = np.argwhere(~g.lam)
    return {
        "nA": g.nA, "nB": g.nB, "kA": g.kA, "kB": g.kB,
        "zeros": [[int(v) for v in row] for row in zeros],
    }


def game_from_dict(d: dict) -> Game:
    try:
        shape = (int(d["nA"]), int(d["nB"]), int(d["kA"]), int(d["kB"]))
        zeros = d.get("zeros", [])
    except (KeyError, TypeError) as exc:
        raise BadInput(f"bad game JSON: {exc}")
    lam = np.ones(shape, dtype=bool)
    for t in zeros:
        if len(t) != 4:
            raise BadInput(f"bad zero tuple {t!r}")
        lam[tuple(int(v) for v in t)] = False
    return Game(lam)


def density_to_dict(d: Density) -> dict:
    if not d.square:
        raise BadInput("density JSON covers the square case nA = nB, kA = kB")
    return {"n": d.nA, "k": d.kA, "p": d.p.tolist()}


def density_from_dict(d: dict) -> Density:
    try:
        n, k = int(d["n"]), int(d["k"])
        p = np.asarray(d["p"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise BadInput(f"bad density JSON: {exc}")
    if p.shape != (n, n, k, k):
        raise BadInput(f"density tensor shape {p.shape} != {(n, n, k, k)}")
    return Density(p)


def vect_to_dict(v: VectorStrategy) -> dict:
    h = [[[_c2pair(z) for z in v.vectors[x, a]] for a in range(v.k)]
         for x in range(v.n)]
    return {"n": v.n, "m": v.m, "h": h}


def vect_from_dict(d: dict) -> VectorStrategy:
    try:
        h = d["h"]
        arr = np.array([[[_pair2c(z) for z in vec] for vec in row] for row in h])
    except (KeyError, TypeError, ValueError) as exc:
        raise BadInput(f"bad vect JSON: {exc}")
    return VectorStrategy(arr)


def system_to_dict(s: ProjectiveSystem) -> dict:
    blocks = []
    for g, w in zip(s.grids, s.weights):
        d = g.shape[2]
        e = [[[[_c2pair(g[x, a, i, j]) for j in range(d)] for i in range(d)]
              for a in range(s.k)] for x in range(s.n)]
        blocks.append({"d": d, "weight": w, "E": e})
    return {"n": s.n, "k": s.k, "blocks": blocks}


def system_from_dict(d: dict) -> ProjectiveSystem:
    try:
        blocks = d["blocks"]
        grids, weights = [], []
        for blk in blocks:
            dim = int(blk["d"])
            weights.append(float(blk["weight"]))
            e = blk["E"]
            arr = np.array(
                [[[[_pair2c(z) for z in row] for row in mat] for mat in outrow]
                 for outrow in e])
            if arr.shape[2:] != (dim, dim):
                raise BadInput(f"block entries are not {dim} x {dim}")
            grids.append(arr)
    except (KeyError, TypeError, ValueError) as exc:
        raise BadInput(f"bad system JSON: {exc}")
    return ProjectiveSystem(tuple(grids), tuple(weights))


def choi_to_dict(m: ChoiMap) -> dict:
    flat = [_c2pair(z) for z in m.choi.reshape(-1)]
    return {"n": m.n, "k": m.k, "choi": flat}


def choi_from_dict(d: dict) -> ChoiMap:
    try:
        n, k = int(d["n"]), int(d["k"])
        flat = np.array([_pair2c(z) for z in d["choi"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise BadInput(f"bad choi JSON: {exc}")
    if flat.size != (n * k) ** 2:
        raise BadInput("choi entry count does not match n, k")
    return ChoiMap(n, k, flat.reshape(n * k, n * k))


def mixture_to_dict(m: PermutationMixture) -> dict:
    return {
        "n": m.n,
        "weights": [float(w) for w in m.weights],
        "permutations": [list(s) for s in m.permutations],
    }


def mixture_from_dict(d: dict) -> PermutationMixture:
    try:
        return PermutationMixture(
            np.asarray(d["weights"], dtype=float),
            tuple(tuple(int(v) for v in s) for s in d["permutations"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise BadInput(f"bad mixture JSON: {exc}")


def matrix_to_dict(a) -> dict:
    a = np.asarray(a, dtype=np.complex128)
    return {
        "rows": a.shape[0], "cols": a.shape[1],
        "entries": [[_c2pair(z) for z in row] for row in a],
    }


def matrix_from_dict(d: dict) -> np.ndarray:
    try:
        arr = np.array([[_pair2c(z) for z in row] for row in d["entries"]])
        if arr.shape != (int(d["rows"]), int(d["cols"])):
            raise BadInput("matrix shape disagrees with rows/cols")
    except (KeyError, TypeError, ValueError) as exc:
        raise BadInput(f"bad matrix JSON: {exc}")
    return arr


def load_json(path: str) -> dict:
    """Read a JSON object from a path, or stdin when path is '-'."""
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read JSON from {path}: {exc}")


def dump_json(obj: dict, path: str, pretty: bool = False) -> None:
    text = json.dumps(obj, indent=2 if pretty else None,
                      separators=None if pretty else (",", ":"))
    if path == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
