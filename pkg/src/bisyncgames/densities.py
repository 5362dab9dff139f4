"""Conditional probability densities p(a, b | x, y) and their classes.

The tensor layout is ``p[x, y, a, b]`` (inputs first).  Class predicates
(valid, nonsignalling, synchronous, bisynchronous, perfect-for-a-game)
are tolerance-based; exact local membership is decided by linear
programming over deterministic strategies.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
import scipy.optimize
import scipy.sparse

from .errors import (
    BadWeights,
    InvalidDensity,
    NotBijective,
    PreconditionFailed,
    ShapeMismatch,
    TooLarge,
)
from .games import Game
from .linalg import DEFAULT_TOL
from .report import Report

_FACTORIAL_GUARD = 8      # largest n for permutation-column LPs
_RESPONSE_GUARD = 3000    # largest k**n for response-function LPs


@dataclass(frozen=True)
class Density:
    """Nonnegative tensor p[x, y, a, b]; see :func:`validate` for the contract."""

    p: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.p, dtype=float)
        if arr.ndim != 4 or min(arr.shape) < 1:
            raise ShapeMismatch("density tensor must have four indices")
        object.__setattr__(self, "p", arr)

    @property
    def nA(self) -> int:
        return self.p.shape[0]

    @property
    def nB(self) -> int:
        return self.p.shape[1]

    @property
    def kA(self) -> int:
        return self.p.shape[2]

    @property
    def kB(self) -> int:
        return self.p.shape[3]

    @property
    def square(self) -> bool:
        return self.nA == self.nB and self.kA == self.kB


def validation_report(d: Density, tol: float = DEFAULT_TOL) -> Report:
    """Nonnegativity and per-(x, y) normalization, with witnesses."""
    rep = Report("density validate")
    neg = -float(d.p.min())
    witness = None
    if neg > 0:
        x, y, a, b = np.unravel_index(int(d.p.argmin()), d.p.shape)
        witness = f"p(a={a},b={b}|x={x},y={y}) = {d.p[x, y, a, b]}"
    rep.add("nonnegative", neg <= tol, max(neg, 0.0), witness)
    sums = d.p.sum(axis=(2, 3))
    dev = np.abs(sums - 1.0)
    x, y = np.unravel_index(int(dev.argmax()), dev.shape)
    rep.add("normalized", float(dev.max()) <= tol, float(dev.max()),
            f"sum over outputs at (x={x},y={y}) = {sums[x, y]}")
    return rep


def validate(d: Density, tol: float = DEFAULT_TOL) -> bool:
    return validation_report(d, tol).passed


def is_nonsignalling(d: Density, tol: float = DEFAULT_TOL) -> bool:
    """Alice's output marginal must not depend on y, and symmetrically."""
    if not validate(d, tol):
        raise InvalidDensity("nonsignalling test requires a valid density")
    marg_a = d.p.sum(axis=3)          # [x, y, a]
    dev_a = np.abs(marg_a - marg_a[:, :1, :]).max()
    marg_b = d.p.sum(axis=2)          # [x, y, b]
    dev_b = np.abs(marg_b - marg_b[:1, :, :]).max()
    return bool(max(dev_a, dev_b) <= tol)


def _require_square(d: Density):
    if not d.square:
        raise ShapeMismatch("this classification needs nA = nB and kA = kB")


def is_synchronous_density(d: Density, tol: float = DEFAULT_TOL) -> bool:
    """p(a, b | x, x) = 0 whenever a != b."""
    if not validate(d, tol):
        raise InvalidDensity("classification requires a valid density")
    _require_square(d)
    k = d.kA
    off = ~np.eye(k, dtype=bool)
    worst = max(float(d.p[x, x][off].max()) for x in range(d.nA)) if k > 1 else 0.0
    return worst <= tol


def is_bisynchronous_density(d: Density, tol: float = DEFAULT_TOL) -> bool:
    """Synchronous, and p(a, a | x, y) = 0 whenever x != y."""
    if not is_synchronous_density(d, tol):
        return False
    n = d.nA
    worst = 0.0
    for x in range(n):
        for y in range(n):
            if x != y:
                worst = max(worst, float(d.p[x, y].diagonal().max()))
    return worst <= tol


def is_perfect_for(g: Game, d: Density, tol: float = DEFAULT_TOL) -> bool:
    """No probability mass on losing tuples."""
    if (g.nA, g.nB, g.kA, g.kB) != (d.nA, d.nB, d.kA, d.kB):
        raise ShapeMismatch("game and density shapes disagree")
    forbidden = d.p[~g.lam]
    return bool(forbidden.size == 0 or forbidden.max() <= tol)


def flip_density(d: Density) -> Density:
    """Exchange the roles of inputs and outputs: q(x, y | a, b) = p(a, b | x, y).

    The result need not be a valid density; callers must validate.
    """
    if d.nA != d.kA or d.nB != d.kB:
        raise ShapeMismatch("flip needs input and output sets of equal size per player")
    return Density(d.p.transpose(2, 3, 0, 1))


def compose(q: Density, p: Density) -> Density:
    """r(a, b | v, w) = sum_{x,y} q(a, b | x, y) p(x, y | v, w)."""
    if (q.nA, q.nB) != (p.kA, p.kB):
        raise ShapeMismatch("inner dimensions do not match")
    r = np.einsum("xyab,vwxy->vwab", q.p, p.p)
    return Density(r)


def from_permutation(sigma) -> Density:
    """Deterministic density of a permutation: p(a, b | x, y) = [a = s(x)][b = s(y)]."""
    sigma = list(sigma)
    n = len(sigma)
    if sorted(sigma) != list(range(n)):
        raise NotBijective(f"{sigma} is not a permutation of 0..{n - 1}")
    p = np.zeros((n, n, n, n))
    for x in range(n):
        for y in range(n):
            p[x, y, sigma[x], sigma[y]] = 1.0
    return Density(p)


def from_response_function(f, k: int) -> Density:
    """Deterministic density of a shared response function [n] -> [k]."""
    f = list(f)
    n = len(f)
    if any(not 0 <= v < k for v in f):
        raise ShapeMismatch("response values must lie in 0..k-1")
    p = np.zeros((n, n, k, k))
    for x in range(n):
        for y in range(n):
            p[x, y, f[x], f[y]] = 1.0
    return Density(p)


def mixture(ds, weights) -> Density:
    """Entrywise convex combination of densities of equal shape."""
    ds = list(ds)
    w = np.asarray(list(weights), dtype=float)
    if len(ds) == 0 or len(ds) != w.size:
        raise BadWeights("need one weight per density")
    if w.min() < 0 or abs(w.sum() - 1.0) > 1e-12:
        raise BadWeights("weights must be nonnegative and sum to one")
    shape = ds[0].p.shape
    if any(d.p.shape != shape for d in ds):
        raise ShapeMismatch("all densities must share a shape")
    acc = np.zeros(shape)
    for wi, di in zip(w, ds):
        acc += wi * di.p
    return Density(acc)


def uniform_density(n: int, k: int) -> Density:
    return Density(np.full((n, n, k, k), 1.0 / (k * k)))


def z3_counterexample() -> Density:
    """Order-3 cyclic bisynchronous nonsignalling density with no quantum model.

    Equal inputs give equal outputs uniformly; distinct inputs force
    a - b = 1 (mod 3) uniformly.  Its flip is not a density and its
    induced map is not even positive.
    """
    p = np.zeros((3, 3, 3, 3))
    for x in range(3):
        for y in range(3):
            for a in range(3):
                for b in range(3):
                    if x == y:
                        p[x, y, a, b] = 1.0 / 3.0 if a == b else 0.0
                    else:
                        p[x, y, a, b] = 1.0 / 3.0 if (a - b) % 3 == 1 else 0.0
    return Density(p)


def noncp_nonsignalling_example() -> Density:
    """Two-input, two-output nonsignalling density whose induced map is not CP.

    Outputs are perfectly correlated on every input pair except (1, 1),
    where they are perfectly anticorrelated.  All marginals are uniform.
    Note the anticorrelated pair sits on the diagonal, so the density is
    not synchronous.
    """
    p = np.zeros((2, 2, 2, 2))
    for x in range(2):
        for y in range(2):
            if (x, y) != (1, 1):
                p[x, y, 0, 0] = p[x, y, 1, 1] = 0.5
            else:
                p[x, y, 0, 1] = p[x, y, 1, 0] = 0.5
    return Density(p)


@dataclass(frozen=True)
class PermutationMixture:
    """Convex combination of permutations of [n]."""

    weights: np.ndarray
    permutations: tuple

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        perms = tuple(tuple(int(v) for v in s) for s in self.permutations)
        if w.size != len(perms) or w.size == 0:
            raise BadWeights("need one weight per permutation")
        if w.min() < -1e-12 or abs(w.sum() - 1.0) > 1e-9:
            raise BadWeights("weights must be nonnegative and sum to one")
        n = len(perms[0])
        for s in perms:
            if sorted(s) != list(range(n)):
                raise NotBijective(f"{s} is not a permutation")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "permutations", perms)

    @property
    def n(self) -> int:
        return len(self.permutations[0])


def mixture_density(mix: PermutationMixture) -> Density:
    n = mix.n
    acc = np.zeros((n, n, n, n))
    for w, s in zip(mix.weights, mix.permutations):
        for x in range(n):
            for y in range(n):
                acc[x, y, s[x], s[y]] += w
    return Density(acc)


@dataclass(frozen=True)
class ResponseMixture:
    """Convex combination of shared response functions [n] -> [k]."""

    weights: np.ndarray
    functions: tuple
    k: int


def response_mixture_density(mix: ResponseMixture) -> Density:
    acc = None
    for w, f in zip(mix.weights, mix.functions):
        d = from_response_function(f, mix.k)
        acc = w * d.p if acc is None else acc + w * d.p
    return Density(acc)


@dataclass(frozen=True)
class Infeasible:
    """Separating-functional certificate that a density is outside a polytope.

    ``functional`` (flat, one entry per density coordinate) and ``offset``
    define f(q) = <functional, q> + offset with f <= 0 on every vertex of
    the polytope while f(density) = ``violation`` > 0.  ``witness`` names
    the density coordinate with the largest unmatched residual; ``atoms``
    records which vertex family the polytope has ("permutations" or
    "responses").
    """

    violation: float
    functional: np.ndarray
    offset: float
    witness: str
    atoms: str = "permutations"


def _deterministic_columns(atoms, index_of, n: int, k: int):
    """Sparse 0/1 matrix whose columns are flattened deterministic densities,
    plus a trailing all-ones normalization row."""
    rows, cols = [], []
    for j, atom in enumerate(atoms):
        for x in range(n):
            for y in range(n):
                rows.append(index_of(x, y, atom[x], atom[y]))
                cols.append(j)
    ncols = len(atoms)
    nrows = n * n * k * k
    data = np.ones(len(rows))
    body = scipy.sparse.csc_matrix((data, (rows, cols)), shape=(nrows, ncols))
    norm_row = scipy.sparse.csc_matrix(np.ones((1, ncols)))
    return scipy.sparse.vstack([body, norm_row]).tocsc()


def _membership_lp(a, b, tol):
    """Minimize the sup-norm slack t over {lam >= 0 : |A lam - b| <= t, sum lam = 1}.

    Returns (t*, lam, dual_y, dual_mu).  The dual pair satisfies
    y . col + mu <= 0 for every column and y . b + mu = t*.
    """
    nrows, ncols = a.shape
    ones_col = scipy.sparse.csc_matrix(np.ones((nrows, 1)))
    a_ub = scipy.sparse.vstack([
        scipy.sparse.hstack([a, -ones_col]),
        scipy.sparse.hstack([-a, -ones_col]),
    ]).tocsc()
    b_ub = np.concatenate([b, -b])
    a_eq = scipy.sparse.hstack([
        scipy.sparse.csc_matrix(np.ones((1, ncols))),
        scipy.sparse.csc_matrix((1, 1)),
    ]).tocsc()
    c = np.zeros(ncols + 1)
    c[-1] = 1.0
    res = scipy.optimize.linprog(
        c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=[1.0],
        bounds=[(0, None)] * (ncols + 1), method="highs",
    )
    if res.status != 0:
        raise RuntimeError(f"membership LP failed with status {res.status}")
    lam = res.x[:ncols]
    marg = res.ineqlin.marginals
    y = marg[:nrows] - marg[nrows:]
    mu = float(res.eqlin.marginals[0])
    return float(res.fun), lam, y, mu


def _polish_mixture(a, b, lam, support_cut=1e-12):
    """Nonnegative least squares on the LP support to sharpen the weights."""
    support = np.flatnonzero(lam > support_cut)
    if support.size == 0:
        support = np.array([int(np.argmax(lam))])
    dense = a[:, support].toarray()
    w, _ = scipy.optimize.nnls(dense, b)
    total = w.sum()
    if total > 0:
        w = w / total
    result = np.zeros_like(lam)
    result[support] = w
    return result


def _decide_membership(atoms, a, b, d, tol, wrap, atom_family):
    t_star, lam, y, mu = _membership_lp(a, b, tol)
    if t_star <= tol:
        lam = _polish_mixture(a, b, lam)
        keep = np.flatnonzero(lam > 1e-14)
        weights = lam[keep] / lam[keep].sum()
        return wrap(weights, [atoms[j] for j in keep])
    resid = np.abs(a @ lam - b)[:-1]
    idx = int(resid.argmax())
    n, _, k, _ = d.p.shape
    x, yy, aa, bb = np.unravel_index(idx, (n, n, k, k))
    witness = (f"p(a={aa},b={bb}|x={x},y={yy}): residual {resid[idx]:.3e} "
               f"at the closest mixture")
    return Infeasible(t_star, y[:-1].copy(), mu + float(y[-1]), witness,
                      atom_family)


def local_bisync_membership(d: Density, tol: float = DEFAULT_TOL):
    """Exact membership of a bisynchronous density in the local polytope.

    Feasible inputs yield a PermutationMixture reproducing the density
    within ``tol`` per entry (the decomposition is not unique); otherwise
    an :class:`Infeasible` certificate is returned.
    """
    if not validate(d, tol):
        raise PreconditionFailed("density must be valid")
    if not d.square or d.nA != d.kA:
        raise PreconditionFailed("need n inputs and n outputs for both players")
    if not is_bisynchronous_density(d, tol):
        raise PreconditionFailed("density must be bisynchronous")
    n = d.nA
    if n > _FACTORIAL_GUARD:
        raise PreconditionFailed(f"n = {n} exceeds the factorial guard {_FACTORIAL_GUARD}")
    atoms = list(itertools.permutations(range(n)))

    def index_of(x, y, a, b):
        return ((x * n + y) * n + a) * n + b

    a = _deterministic_columns(atoms, index_of, n, n)
    b = np.append(d.p.reshape(-1), 1.0)
    return _decide_membership(
        atoms, a, b, d, tol,
        lambda w, kept: PermutationMixture(w, tuple(kept)),
        "permutations",
    )


def local_sync_membership(d: Density, tol: float = DEFAULT_TOL):
    """Membership of a synchronous density in the local polytope.

    Columns are the k^n shared response functions; guarded by an explicit
    TooLarge error.
    """
    if not validate(d, tol):
        raise PreconditionFailed("density must be valid")
    _require_square(d)
    if not is_synchronous_density(d, tol):
        raise PreconditionFailed("density must be synchronous")
    n, k = d.nA, d.kA
    if k ** n > _RESPONSE_GUARD:
        raise TooLarge(f"{k}^{n} response functions exceed the guard of {_RESPONSE_GUARD}")
    atoms = list(itertools.product(range(k), repeat=n))

    def index_of(x, y, a, b):
        return ((x * n + y) * k + a) * k + b

    a = _deterministic_columns(atoms, index_of, n, k)
    b = np.append(d.p.reshape(-1), 1.0)
    return _decide_membership(
        atoms, a, b, d, tol,
        lambda w, kept: ResponseMixture(w, tuple(kept), k),
        "responses",
    )


def separation_margins(d: Density, cert: Infeasible):
    """Evaluate a certificate: (max over deterministic atoms, value at d).

    A valid certificate has the first value <= ~0 and the second equal to
    the reported violation.  The atom family (all permutations, or all
    shared response functions) is the one recorded on the certificate.
    """
    n, k = d.nA, d.kA
    value_at_d = float(cert.functional @ d.p.reshape(-1) + cert.offset)
    if cert.atoms == "permutations":
        atoms = itertools.permutations(range(n))
    else:
        atoms = itertools.product(range(k), repeat=n)
    worst = -math.inf
    for atom in atoms:
        col = np.zeros((n, n, k, k))
        for x in range(n):
            for y in range(n):
                col[x, y, atom[x], atom[y]] = 1.0
        worst = max(worst, float(cert.functional @ col.reshape(-1) + cert.offset))
    return worst, value_at_d
