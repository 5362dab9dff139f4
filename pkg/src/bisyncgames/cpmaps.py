"""Linear maps induced by densities: Choi matrices, channel checks, Kraus forms.

A density p(a, b | x, y) with n inputs and k outputs induces the map
Phi(E_xy) = sum_ab p(a, b | x, y) E_ab from n x n to k x k matrices.  The
map is stored through its Choi matrix C = sum_xy E_xy (x) Phi(E_xy),
with the input factor first, so C[(x, a), (y, b)] = p(a, b | x, y).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .densities import Density, PermutationMixture, mixture_density, validate
from .errors import (
    InternalMismatch,
    InvalidDensity,
    NotCP,
    NotHermitian,
    NotUnitalChannel,
    ShapeMismatch,
)
from .linalg import DEFAULT_TOL, dagger, norm_max
from .report import Report


@dataclass(frozen=True)
class ChoiMap:
    """Choi matrix of a linear map from n x n to k x k matrices."""

    n: int
    k: int
    choi: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.choi, dtype=np.complex128)
        if c.shape != (self.n * self.k, self.n * self.k):
            raise ShapeMismatch("Choi matrix must be (n k) x (n k)")
        object.__setattr__(self, "choi", c)


def phi_from_density(d: Density, tol: float = DEFAULT_TOL) -> ChoiMap:
    """Choi matrix of the map induced by a valid density.

    The density determines the map uniquely; :func:`density_tensor`
    recovers it exactly.
    """
    if not validate(d, tol):
        raise InvalidDensity("phi_from_density needs a valid density")
    if not d.square:
        raise ShapeMismatch("need nA = nB and kA = kB")
    n, k = d.nA, d.kA
    choi = d.p.transpose(0, 2, 1, 3).reshape(n * k, n * k)
    return ChoiMap(n, k, choi.astype(np.complex128))


def choi_from_tensor(p: np.ndarray) -> ChoiMap:
    """Choi matrix from a raw (possibly non-density) tensor p[x, y, a, b]."""
    p = np.asarray(p, dtype=np.complex128)
    n, k = p.shape[0], p.shape[2]
    return ChoiMap(n, k, p.transpose(0, 2, 1, 3).reshape(n * k, n * k))


def density_tensor(m: ChoiMap) -> np.ndarray:
    """The tensor p[x, y, a, b] encoded in the Choi matrix (exact round trip)."""
    n, k = m.n, m.k
    return m.choi.reshape(n, k, n, k).transpose(0, 2, 1, 3)


def density_from_choi(m: ChoiMap) -> Density:
    t = density_tensor(m)
    if norm_max(t.imag) > 0:
        raise InvalidDensity("Choi matrix encodes complex weights")
    return Density(t.real)


def apply_map(m: ChoiMap, x) -> np.ndarray:
    """Evaluate the map: Phi(X) = sum_xy X[x, y] Phi(E_xy)."""
    x = linalg.as_cmatrix(x)
    if x.shape != (m.n, m.n):
        raise ShapeMismatch(f"argument must be {m.n} x {m.n}")
    return np.einsum("xyab,xy->ab", density_tensor(m), x)


def identity_map(n: int) -> ChoiMap:
    p = np.zeros((n, n, n, n), dtype=np.complex128)
    for x in range(n):
        for y in range(n):
            p[x, y, x, y] = 1.0
    return choi_from_tensor(p)


def compose_maps(outer: ChoiMap, inner: ChoiMap) -> ChoiMap:
    """Choi matrix of outer . inner."""
    if inner.k != outer.n:
        raise ShapeMismatch("inner output dimension must match outer input dimension")
    q = density_tensor(outer)
    p = density_tensor(inner)
    r = np.einsum("xyab,vwxy->vwab", q, p)
    return choi_from_tensor(r)


def is_hermiticity_preserving(m: ChoiMap, tol: float = DEFAULT_TOL) -> bool:
    return linalg.is_hermitian(m.choi, tol * max(1.0, norm_max(m.choi)))


def is_cp(m: ChoiMap, tol: float = DEFAULT_TOL) -> bool:
    """Complete positivity: the Choi matrix is positive semidefinite."""
    try:
        return linalg.is_psd(m.choi, tol)
    except NotHermitian:
        return False


def is_tp(m: ChoiMap, tol: float = DEFAULT_TOL) -> bool:
    """Trace preservation: tr Phi(E_xy) = delta_xy, i.e. the partial trace
    of the Choi matrix over the output factor is the identity."""
    t = density_tensor(m)
    partial = np.einsum("xyaa->xy", t)
    return norm_max(partial - np.eye(m.n)) <= tol


def is_unital(m: ChoiMap, tol: float = DEFAULT_TOL) -> bool:
    return norm_max(apply_map(m, np.eye(m.n)) - np.eye(m.k)) <= tol


def preserves_J(m: ChoiMap, tol: float = DEFAULT_TOL) -> bool:
    """Whether the all-ones matrix maps to the all-ones matrix."""
    out = apply_map(m, np.ones((m.n, m.n)))
    return norm_max(out - np.ones((m.k, m.k))) <= tol


def preserves_sigma(m: ChoiMap, tol: float = DEFAULT_TOL) -> bool:
    """Whether the entry-sum functional is preserved on every matrix unit."""
    t = density_tensor(m)
    sums = np.einsum("xyab->xy", t)
    return norm_max(sums - np.ones((m.n, m.n))) <= tol


def noncp_spectral_margin(m: ChoiMap) -> float:
    """How far the Choi spectrum sits from the nonnegative reals.

    Zero for PSD Choi matrices.  For a Hermitian Choi matrix this is
    max(0, -(least eigenvalue)); otherwise it is the largest distance of
    any (complex) eigenvalue from the set of nonnegative reals.  Any
    positive value certifies the map is not completely positive.
    """
    c = m.choi
    if linalg.is_hermitian(c, DEFAULT_TOL * max(1.0, norm_max(c))):
        w = np.linalg.eigvalsh(0.5 * (c + dagger(c)))
        return float(max(0.0, -w.min()))
    ev = np.linalg.eigvals(c)
    dist = np.where(ev.real >= 0, np.abs(ev.imag), np.abs(ev))
    return float(dist.max())


def min_choi_eigenvalue(m: ChoiMap) -> float:
    """Least eigenvalue of the Choi matrix (requires Hermiticity)."""
    c = m.choi
    if not linalg.is_hermitian(c, DEFAULT_TOL * max(1.0, norm_max(c))):
        raise NotHermitian("Choi matrix is not Hermitian; see noncp_spectral_margin")
    return float(np.linalg.eigvalsh(0.5 * (c + dagger(c)))[0])


def channel_report(m: ChoiMap, tol: float = DEFAULT_TOL) -> Report:
    """All channel-property checks in a fixed order."""
    rep = Report("map check")
    herm_dev = norm_max(m.choi - dagger(m.choi))
    rep.add("hermiticity_preserving", is_hermiticity_preserving(m, tol), herm_dev)
    margin = noncp_spectral_margin(m)
    rep.add("completely_positive", is_cp(m, tol), margin,
            None if margin == 0 else f"spectral non-CP margin {margin:.6g}")
    t = density_tensor(m)
    partial = np.einsum("xyaa->xy", t)
    rep.add("trace_preserving", is_tp(m, tol), norm_max(partial - np.eye(m.n)))
    if m.n == m.k:
        rep.add("unital", is_unital(m, tol),
                norm_max(apply_map(m, np.eye(m.n)) - np.eye(m.k)))
        rep.add("preserves_all_ones", preserves_J(m, tol),
                norm_max(apply_map(m, np.ones((m.n, m.n))) - np.ones((m.k, m.k))))
    sums = np.einsum("xyab->xy", t)
    rep.add("preserves_entry_sum", preserves_sigma(m, tol),
            norm_max(sums - np.ones((m.n, m.n))))
    return rep


def adjoint_map(m: ChoiMap) -> ChoiMap:
    """Adjoint for the trace pairing: Phi*(E_ab) = sum_xy p(a, b | x, y) E_xy."""
    t = density_tensor(m)
    return choi_from_tensor(t.transpose(2, 3, 0, 1))


@dataclass(frozen=True)
class KrausSet:
    """Operators K_i (each n x k) with Phi(X) = sum_i K_i* X K_i."""

    operators: tuple

    def __post_init__(self):
        ops = tuple(linalg.as_cmatrix(k) for k in self.operators)
        object.__setattr__(self, "operators", ops)

    def apply(self, x) -> np.ndarray:
        x = linalg.as_cmatrix(x)
        out = None
        for k in self.operators:
            term = dagger(k) @ x @ k
            out = term if out is None else out + term
        return out


def kraus_from_choi(m: ChoiMap, tol: float = DEFAULT_TOL) -> KrausSet:
    """Kraus operators from the Choi eigendecomposition.

    Eigenpairs with eigenvalue above ``tol`` times the top eigenvalue
    contribute one operator each; orthogonality of eigenvectors makes
    the operators linearly independent.
    """
    if not is_cp(m, tol):
        raise NotCP("Kraus extraction requires a completely positive map")
    eig = linalg.hermitian_eig(0.5 * (m.choi + dagger(m.choi)), tol)
    top = max(float(eig.eigenvalues[-1]), 0.0)
    cutoff = tol * max(top, 1.0)
    ops = []
    for lam, vecr in zip(eig.eigenvalues, eig.eigenvectors.T):
        if lam > cutoff:
            v = np.sqrt(lam) * vecr
            ops.append(np.conj(v.reshape(m.n, m.k)))
    if not ops:
        ops.append(np.zeros((m.n, m.k), dtype=np.complex128))
    kraus = KrausSet(tuple(ops))
    basis = np.eye(m.n)
    worst = 0.0
    for x in range(m.n):
        for y in range(m.n):
            unit = np.outer(basis[x], basis[y])
            worst = max(worst, norm_max(kraus.apply(unit) - apply_map(m, unit)))
    if worst > 1e-7 * max(1.0, norm_max(m.choi)):
        raise InternalMismatch(f"Kraus form deviates from the map by {worst}")
    return kraus


def choi_from_kraus(ks: KrausSet, n: int, k: int) -> ChoiMap:
    p = np.zeros((n, n, k, k), dtype=np.complex128)
    basis = np.eye(n)
    for x in range(n):
        for y in range(n):
            p[x, y] = ks.apply(np.outer(basis[x], basis[y]))
    return choi_from_tensor(p)


def fixed_point_set(m: ChoiMap, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of Fix(Phi) = {A : Phi(A) = A} for a unital channel.

    Computed as the nullspace of (Phi - id) in vectorized form and
    cross-checked against the joint commutant of the Kraus operators;
    a dimension disagreement raises InternalMismatch.
    """
    if m.n != m.k:
        raise NotUnitalChannel("fixed points need equal input and output dimensions")
    if not (is_unital(m, tol) and is_tp(m, tol) and is_cp(m, tol)):
        raise NotUnitalChannel("fixed_point_set requires a unital channel")
    n = m.n
    super_op = density_tensor(m).transpose(2, 3, 0, 1).reshape(n * n, n * n)
    basis_vecs = linalg.nullspace(super_op - np.eye(n * n), tol)
    fixed = [v.reshape(n, n) for v in basis_vecs]
    kraus = kraus_from_choi(m, tol)
    commutant = linalg.joint_commutant(kraus.operators, tol)
    if len(commutant) != len(fixed):
        raise InternalMismatch(
            f"eigenspace dimension {len(fixed)} != Kraus-commutant dimension {len(commutant)}")
    return fixed


def is_schur_closed(basis, tol: float = DEFAULT_TOL) -> bool:
    """Whether every entrywise product of two basis elements stays in the span."""
    mats = [linalg.as_cmatrix(b) for b in basis]
    if not mats:
        return True
    shape = mats[0].shape
    if any(b.shape != shape for b in mats):
        raise ShapeMismatch("basis elements must share a shape")
    span = linalg.orthonormal_span(mats, tol)
    worst = 0.0
    for a in mats:
        for b in mats:
            worst = max(worst, linalg.residual_outside_span(span, a * b))
    return worst <= tol * 10 * max(1.0, max(norm_max(a) for a in mats) ** 2)


def mixed_permutation_map(mix: PermutationMixture) -> ChoiMap:
    """The map X -> sum_j w_j U_j* X U_j over permutation matrices U_j.

    Equals the map induced by the corresponding mixture density.
    """
    return phi_from_density(mixture_density(mix))
