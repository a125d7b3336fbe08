"""Subspaces of truncated weighted spaces and their lattice operations.

A ``Subspace`` stores a basis that is orthogonal in the weighted metric
together with the squared norms of the basis vectors.  Monomial-pattern
subspaces (the residue-class ladders invariant under multiplication by z^N)
keep raw monomials as their basis, so their coordinate metric is the
corresponding slice of the weight sequence and restricted operators keep the
explicit coefficient form of the ambient ones.  Bases produced numerically
are normalized in float mode; in exact rational mode normalization would
leave the field, so the squared norms are carried instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from . import _exact
from .errors import (
    AmbientMismatch,
    BadResidue,
    DepthOverflow,
    DimensionMismatch,
)
from .operators import LinearMap, _conj, to_float, weighted_matrix
from .space import CoefficientVector, TruncatedSpace, random_vector
from .weights import ScalarMode

#: Relative tolerance for rank decisions during orthogonalization.
RANK_TOL = 1e-10


def _wdot(metric, v, b, mode):
    """<v, b> in the diagonal metric."""
    if mode.is_exact:
        return ((v * b) * metric).sum()
    return np.sum(metric * v * np.conjugate(b))


def _wnorm_sq(metric, v, mode):
    if mode.is_exact:
        return ((v * v) * metric).sum()
    return float(np.sum(metric * np.abs(v) ** 2))


class Subspace:
    """Metric-orthogonal basis of a subspace of a truncated space."""

    def __init__(
        self,
        ambient: TruncatedSpace,
        basis: np.ndarray,
        norms_sq: np.ndarray,
        *,
        residues: Optional[frozenset] = None,
        multiplicity: Optional[int] = None,
    ):
        basis = np.asarray(basis)
        if basis.ndim != 2 or basis.shape[0] != ambient.dim:
            raise DimensionMismatch(
                f"basis shape {basis.shape} does not match ambient dim {ambient.dim}"
            )
        norms_sq = np.asarray(norms_sq)
        if norms_sq.shape != (basis.shape[1],):
            raise DimensionMismatch("one squared norm per basis vector required")
        basis = basis.copy()
        basis.flags.writeable = False
        self.ambient = ambient
        self.basis = basis
        self.norms_sq = norms_sq
        self.residues = None if residues is None else frozenset(residues)
        self.multiplicity = multiplicity

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def coordinate_space(self) -> TruncatedSpace:
        """Space of coordinates in this basis; its metric is the squared norms."""
        return TruncatedSpace(metric=np.asarray(self.norms_sq), mode=self.ambient.mode)

    def to_ambient(self, coords: np.ndarray) -> np.ndarray:
        return self.basis @ coords

    def vectors(self) -> list[CoefficientVector]:
        return [CoefficientVector(self.ambient, self.basis[:, j]) for j in range(self.dim)]

    def __repr__(self) -> str:
        tag = f", residues={sorted(self.residues)}" if self.residues is not None else ""
        return f"Subspace(dim={self.dim}, ambient={self.ambient.dim}{tag})"


def _empty_basis(ambient: TruncatedSpace) -> tuple[np.ndarray, np.ndarray]:
    if ambient.mode.is_exact:
        return _exact.zeros((ambient.dim, 0)), np.empty(0, dtype=object)
    return np.zeros((ambient.dim, 0), dtype=np.complex128), np.zeros(0)


def zero_subspace(ambient: TruncatedSpace) -> Subspace:
    basis, norms = _empty_basis(ambient)
    return Subspace(ambient, basis, norms)


def orthogonalize(
    ambient: TruncatedSpace,
    columns: np.ndarray,
    rank_tol: float = RANK_TOL,
) -> tuple[np.ndarray, np.ndarray]:
    """Modified Gram-Schmidt in the weighted metric, one re-orthogonalization pass.

    Float mode normalizes the surviving vectors and drops any whose residual
    norm falls below ``rank_tol`` times its original norm.  Exact mode keeps
    unnormalized orthogonal vectors (square roots leave the rationals) and
    drops exactly dependent ones.
    """
    mode = ambient.mode
    metric = np.asarray(ambient.metric)
    kept: list[np.ndarray] = []
    norms: list = []
    for j in range(columns.shape[1]):
        v = columns[:, j].copy()
        if mode.is_exact:
            for b, g in zip(kept, norms):
                v = v - b * (_wdot(metric, v, b, mode) / g)
            if bool((v != 0).any()):
                kept.append(v)
                norms.append(_wnorm_sq(metric, v, mode))
        else:
            ref = np.sqrt(_wnorm_sq(metric, v, mode))
            if ref == 0.0:
                continue
            for _ in range(2):
                for b, _g in zip(kept, norms):
                    v = v - b * _wdot(metric, v, b, mode)
            n = np.sqrt(_wnorm_sq(metric, v, mode))
            if n > rank_tol * ref:
                kept.append(v / n)
                norms.append(1.0)
    if not kept:
        return _empty_basis(ambient)
    if mode.is_exact:
        basis = np.empty((ambient.dim, len(kept)), dtype=object)
        for j, v in enumerate(kept):
            basis[:, j] = v
        nn = np.empty(len(norms), dtype=object)
        nn[:] = norms
        return basis, nn
    return np.column_stack(kept), np.asarray(norms, dtype=np.float64)


def from_vectors(
    ambient: TruncatedSpace,
    columns: np.ndarray,
    rank_tol: float = RANK_TOL,
) -> Subspace:
    """Span of the given coefficient columns, orthogonalized."""
    basis, norms = orthogonalize(ambient, np.asarray(columns), rank_tol)
    return Subspace(ambient, basis, norms)


def residue_degrees(N: int, residues: Iterable[int], dim: int) -> list[int]:
    """Sorted degrees {k + j*N : k in residues} below ``dim``."""
    res = sorted(set(residues))
    for k in res:
        if not 0 <= k < N:
            raise BadResidue(f"residue {k} outside range(0, {N})")
    return sorted(d for k in res for d in range(k, dim, N))


def residue_subspace(space: TruncatedSpace, N: int, residues: Iterable[int]) -> Subspace:
    """Monomial ladder span{z^(k + j*N) : k in residues}, a reducing subspace.

    The basis is the raw monomials in degree order, so the coordinate metric
    is the slice of the weight sequence at the selected degrees.
    """
    if space.weights is None:
        raise AmbientMismatch("residue subspaces need a weight-backed ambient space")
    degrees = residue_degrees(N, residues, space.dim)
    if space.mode.is_exact:
        basis = _exact.zeros((space.dim, len(degrees)))
        one = Fraction(1)
    else:
        basis = np.zeros((space.dim, len(degrees)), dtype=np.complex128)
        one = 1.0
    for j, d in enumerate(degrees):
        basis[d, j] = one
    norms = np.asarray(space.metric)[degrees] if degrees else _empty_basis(space)[1]
    return Subspace(space, basis, norms,
                    residues=frozenset(residues), multiplicity=N)


def full_subspace(space: TruncatedSpace, N: int) -> Subspace:
    return residue_subspace(space, N, range(N))


def coefficient_functionals(sub: Subspace) -> np.ndarray:
    """Matrix of the coordinate functionals: coords(v) = functionals @ v.

    Row j is conj(b_j) scaled entrywise by metric / ||b_j||^2.  The scaling
    ratio is formed first, in real arithmetic in float mode (complex division
    rounds even x/x), so one-hot monomial bases produce exact 1.0 entries and
    projections of lattice vectors are exact even in floating point.
    """
    w = np.asarray(sub.ambient.metric)
    g = np.asarray(sub.norms_sq)
    if sub.ambient.mode.is_exact:
        m = _conj(sub.basis, sub.ambient.mode).T * w[None, :]
        return m / g[:, None]
    scale = w[None, :].astype(np.float64) / g[:, None].astype(np.float64)
    return np.conjugate(sub.basis).T * scale


def project_coefficients(sub: Subspace, arr: np.ndarray) -> np.ndarray:
    """Apply the metric-orthogonal projector onto ``sub`` to raw coefficients."""
    if sub.dim == 0:
        return arr * 0
    return sub.basis @ (coefficient_functionals(sub) @ arr)


def projector(sub: Subspace) -> np.ndarray:
    """Projector matrix in ambient coordinates: B diag(1/g) B^H G."""
    if sub.dim == 0:
        d = sub.ambient.dim
        return _exact.zeros((d, d)) if sub.ambient.mode.is_exact \
            else np.zeros((d, d), dtype=np.complex128)
    return sub.basis @ coefficient_functionals(sub)


def project(sub: Subspace, v: CoefficientVector) -> CoefficientVector:
    if v.space != sub.ambient:
        raise AmbientMismatch("vector does not live in the subspace's ambient space")
    return CoefficientVector(sub.ambient, project_coefficients(sub, v.coeffs))


def _check_compatible(sub: Subspace, space: TruncatedSpace) -> None:
    if sub.ambient.mode != space.mode:
        raise AmbientMismatch("scalar modes differ")
    d = min(sub.ambient.dim, space.dim)
    a = np.asarray(sub.ambient.metric)[:d]
    b = np.asarray(space.metric)[:d]
    if not bool((a == b).all()):
        raise AmbientMismatch("weight sequences disagree on the common truncation")


def _float_truncation_coords(sub: Subspace, dim: int, rank_tol: float) -> np.ndarray:
    """Basis coordinates of the part of ``sub`` supported on degrees < dim.

    The rank decision happens in the weighted metric with columns scaled to
    unit metric norm, so the singular values measure the relative metric mass
    above the cut and the absolute threshold ``rank_tol`` is scale-free.
    """
    top = sub.basis[dim:, :]
    rows, cols = top.shape
    if rows == 0 or cols == 0:
        return np.eye(cols, dtype=np.complex128)
    w_top = np.sqrt(np.asarray(sub.ambient.metric, dtype=np.float64)[dim:])
    col_norms = np.sqrt(np.asarray(sub.norms_sq, dtype=np.float64))
    scaled = (top * w_top[:, None]) / col_norms[None, :]
    _u, s, vt = np.linalg.svd(scaled, full_matrices=True)
    rank = int(np.sum(s > rank_tol))
    return vt[rank:].conj().T / col_norms[:, None]


def truncate(sub: Subspace, dim: int, rank_tol: float = RANK_TOL) -> Subspace:
    """Intersection of the subspace with the smaller truncation span{z^n : n < dim}."""
    if dim > sub.ambient.dim:
        raise DimensionMismatch("truncate target exceeds the current ambient dimension")
    if sub.ambient.weights is not None:
        target = TruncatedSpace(sub.ambient.weights, dim)
    else:
        target = TruncatedSpace(metric=np.asarray(sub.ambient.metric)[:dim],
                                mode=sub.ambient.mode)
    if sub.residues is not None:
        return residue_subspace(target, sub.multiplicity, sub.residues)
    if dim == sub.ambient.dim:
        return Subspace(target, sub.basis, sub.norms_sq)
    if sub.ambient.mode.is_exact:
        coords = _exact.nullspace(sub.basis[dim:, :])
    else:
        coords = _float_truncation_coords(sub, dim, rank_tol)
    cols = (sub.basis @ coords)[:dim, :]
    return from_vectors(target, cols, rank_tol)


def extend(sub: Subspace, space: TruncatedSpace) -> Subspace:
    """Canonical extension of the subspace into another truncation.

    Residue-tagged subspaces regrow their monomial pattern.  Untagged ones
    are zero-padded into a larger truncation and intersected with a smaller
    one.
    """
    _check_compatible(sub, space)
    if sub.residues is not None:
        return residue_subspace(space, sub.multiplicity, sub.residues)
    if space.dim == sub.ambient.dim:
        return Subspace(space, sub.basis, sub.norms_sq)
    if space.dim < sub.ambient.dim:
        return truncate(sub, space.dim)
    if sub.ambient.mode.is_exact:
        basis = _exact.zeros((space.dim, sub.dim))
    else:
        basis = np.zeros((space.dim, sub.dim), dtype=np.complex128)
    basis[: sub.ambient.dim, :] = sub.basis
    return Subspace(space, basis, sub.norms_sq)


def max_degree(sub: Subspace, rel_tol: float = 1e-12) -> int:
    """Largest degree carrying a nonnegligible coefficient; -1 for the zero subspace."""
    if sub.dim == 0:
        return -1
    if sub.ambient.mode.is_exact:
        rows = [i for i in range(sub.ambient.dim) if bool((sub.basis[i, :] != 0).any())]
        return max(rows) if rows else -1
    amax = np.abs(sub.basis).max(axis=1)
    thr = rel_tol * max(float(amax.max()), 1.0)
    rows = np.nonzero(amax > thr)[0]
    return int(rows.max()) if len(rows) else -1


@dataclass(frozen=True)
class InvarianceResult:
    passed: bool
    residual: float


@dataclass(frozen=True)
class ReducingResult:
    passed: bool
    residual_forward: float
    residual_adjoint: float

    @property
    def residual(self) -> float:
        return max(self.residual_forward, self.residual_adjoint)


def _restriction_data(m: LinearMap, sub: Subspace, ext: Subspace):
    """Coordinates of m(basis of sub) in ext's basis, plus the leftover residual."""
    imgs = m.matrix @ sub.basis
    if ext.dim == 0:
        coords = imgs[:0, :]
        recon = imgs * 0
    else:
        coords = coefficient_functionals(ext) @ imgs
        recon = ext.basis @ coords
    leftover = imgs - recon
    w = np.asarray(m.codomain.metric)
    mode = m.mode
    residual = 0.0
    for i in range(sub.dim):
        rsq = _wnorm_sq(w, leftover[:, i], mode)
        residual = max(residual, float(np.sqrt(float(rsq) / float(sub.norms_sq[i]))))
    return coords, residual


def is_invariant(m: LinearMap, sub: Subspace, tol: float = 1e-10) -> InvarianceResult:
    """Does m map the subspace into its extension in m's codomain?

    The residual is max_i ||(I - P) m b_i|| / ||b_i|| over basis vectors,
    where P projects onto the canonical extension of the subspace inside the
    codomain truncation.
    """
    if sub.ambient != m.domain:
        raise AmbientMismatch("subspace does not live in the map's domain")
    ext = extend(sub, m.codomain)
    _coords, residual = _restriction_data(m, sub, ext)
    return InvarianceResult(residual <= tol, residual)


def is_reducing(s: LinearMap, sub: Subspace, tol: float = 1e-10) -> ReducingResult:
    """Invariance under the map and under its metric adjoint."""
    fwd = is_invariant(s, sub, tol)
    ext = extend(sub, s.codomain)
    adj = is_invariant(s.adjoint(), ext, tol)
    return ReducingResult(fwd.passed and adj.passed, fwd.residual, adj.residual)


def wandering(sub: Subspace, t: LinearMap) -> Subspace:
    """Orthogonal complement of range(t) inside the subspace's extension.

    ``t`` must be a restricted map (carrying subspace links), typically the
    shift restricted to ``sub``; the result is the wandering part, expressed
    in the ambient truncation of t's codomain subspace.
    """
    cod = t.codomain_sub
    if cod is None or t.domain_sub is None:
        raise DimensionMismatch("wandering needs a restricted map with subspace links")
    g = np.asarray(cod.norms_sq)
    mode = cod.ambient.mode
    rp, r = t.matrix.shape
    if rp == 0:
        return zero_subspace(cod.ambient)
    if r == 0:
        coords = _exact.eye(rp) if mode.is_exact else np.eye(rp, dtype=np.complex128)
    elif mode.is_exact:
        constraints = _conj(t.matrix, mode).T * g[None, :]
        coords = _exact.nullspace(constraints)
    else:
        sg = np.sqrt(g)
        weighted_cols = t.matrix * sg[:, None]
        u, s, _vt = np.linalg.svd(weighted_cols, full_matrices=True)
        rank = int(np.sum(s > RANK_TOL * (s[0] if len(s) else 1.0)))
        coords = u[:, rank:] / sg[:, None]
    basis = cod.basis @ coords
    if mode.is_exact:
        basis, norms = orthogonalize(cod.ambient, basis)
        return Subspace(cod.ambient, basis, norms)
    norms = np.ones(coords.shape[1])
    return Subspace(cod.ambient, basis, norms)


def invariant_closure(e: Subspace, t: LinearMap, h: Subspace, depth: int) -> Subspace:
    """Span of the iterated shift orbit {T^j e : e in E, 0 <= j <= depth}.

    Degrees only move up in steps of N, so applying T^j displaces the
    coefficient array of e by j*N rows.  The whole orbit must fit inside the
    ambient truncation; otherwise DepthOverflow signals that the truncation
    dimension should be raised.
    """
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    if e.ambient != h.ambient:
        raise AmbientMismatch("wandering part must be expressed in the base truncation")
    if t.domain_sub is None or t.codomain_sub is None:
        raise DimensionMismatch("invariant_closure needs a restricted map")
    step = t.codomain_sub.ambient.dim - t.domain_sub.ambient.dim
    if step < 1:
        raise DimensionMismatch("the restricted map does not raise the truncation level")
    if e.dim == 0:
        return zero_subspace(h.ambient)
    d = h.ambient.dim
    k = max_degree(e)
    if k + depth * step > d - 1:
        raise DepthOverflow(
            f"orbit of depth {depth} reaches degree {k + depth * step}, "
            f"beyond truncation {d}; raise the dimension"
        )
    mode = h.ambient.mode
    cols = _exact.zeros((d, e.dim * (depth + 1))) if mode.is_exact else \
        np.zeros((d, e.dim * (depth + 1)), dtype=np.complex128)
    for j in range(depth + 1):
        lo = j * step
        block = e.basis[: d - lo, :] if lo else e.basis
        cols[lo:, j * e.dim : (j + 1) * e.dim] = block
    return from_vectors(h.ambient, cols)


def kernel(m: LinearMap, tol: float = 1e-10) -> Subspace:
    """Subspace {v : ||m v|| <= tol ||v||}, exact kernel in rational mode.

    When m acts between subspace coordinate spaces the kernel is re-expressed
    in the ambient truncation of m's domain subspace.
    """
    mode = m.mode
    din = m.domain.dim
    if mode.is_exact:
        coords = _exact.nullspace(m.matrix)
    else:
        if din == 0:
            coords = np.zeros((0, 0), dtype=np.complex128)
        else:
            wm = weighted_matrix(m)
            u, s, vt = np.linalg.svd(wm, full_matrices=True)
            rank = int(np.sum(s > tol))
            null_w = vt[rank:].conj().T
            coords = null_w / np.sqrt(np.asarray(m.domain.metric))[:, None]
    if m.domain_sub is not None:
        ambient = m.domain_sub.ambient
        cols = m.domain_sub.basis @ coords
    else:
        ambient = m.domain
        cols = coords
    return from_vectors(ambient, cols)


def span_union(*subs: Subspace) -> Subspace:
    """Orthogonalized span of the union of the given subspaces."""
    if not subs:
        raise ValueError("at least one subspace required")
    ambient = subs[0].ambient
    for s in subs[1:]:
        if s.ambient != ambient:
            raise AmbientMismatch("subspaces live in different ambient spaces")
    cols = np.concatenate([s.basis for s in subs], axis=1)
    return from_vectors(ambient, cols)


def subspace_distance(u: Subspace, v: Subspace) -> float:
    """Metric operator norm of P_U - P_V (the sine of the largest principal angle).

    Equals 0 exactly when the subspaces coincide and 1 when one contains a
    direction orthogonal to the whole of the other.
    """
    if u.ambient != v.ambient:
        raise AmbientMismatch("subspaces live in different ambient spaces")
    if u.ambient.dim == 0:
        return 0.0
    diff = to_float(projector(u) - projector(v)) if u.ambient.mode.is_exact \
        else projector(u) - projector(v)
    sw = np.sqrt(to_float(np.asarray(u.ambient.metric)))
    m = (diff * sw[:, None]) / sw[None, :]
    return float(np.linalg.norm(m, 2))


def projectors_equal(u: Subspace, v: Subspace) -> bool:
    """Exact equality of the two subspaces via their projector matrices."""
    if u.ambient != v.ambient:
        raise AmbientMismatch("subspaces live in different ambient spaces")
    return bool((projector(u) == projector(v)).all())


def random_subspace(space: TruncatedSpace, dim: int, seed: int) -> Subspace:
    """Span of ``dim`` deterministic pseudo-random vectors (untagged)."""
    cols = [random_vector(space, int(s)).coeffs
            for s in np.random.default_rng(seed).integers(0, 2**63 - 1, size=dim)]
    if space.mode.is_exact:
        mat = np.empty((space.dim, dim), dtype=object)
        for j, c in enumerate(cols):
            mat[:, j] = c
    else:
        mat = np.column_stack(cols) if cols else np.zeros((space.dim, 0), np.complex128)
    return from_vectors(space, mat)


@dataclass(frozen=True)
class CensusEntry:
    label: str
    residual: float
    passed: bool


@dataclass(frozen=True)
class CensusReport:
    """Outcome of sweeping all residue subspaces plus random controls."""

    residue_entries: tuple
    random_entries: tuple

    @property
    def max_residue_residual(self) -> float:
        return max((e.residual for e in self.residue_entries), default=0.0)

    @property
    def min_random_residual(self) -> float:
        return min((e.residual for e in self.random_entries), default=np.inf)

    @property
    def all_residues_reduce(self) -> bool:
        return all(e.passed for e in self.residue_entries)

    @property
    def all_randoms_fail(self) -> bool:
        return all(not e.passed for e in self.random_entries)

    @property
    def passed(self) -> bool:
        return self.all_residues_reduce and self.all_randoms_fail


def reducing_census(
    s: LinearMap,
    N: int,
    trials: int = 20,
    seed: int = 0,
    tol: float = 1e-10,
    random_dim: int = 2,
) -> CensusReport:
    """Verify that residue ladders, and only they, pass the reducing test.

    All 2^N residue subspaces (including the zero and full ones) must reduce
    the shift with zero residual; ``trials`` seeded random subspaces must all
    fail.
    """
    residue_entries = []
    for size in range(N + 1):
        for combo in itertools.combinations(range(N), size):
            sub = residue_subspace(s.domain, N, combo)
            r = is_reducing(s, sub, tol)
            label = "{" + ",".join(map(str, combo)) + "}"
            residue_entries.append(CensusEntry(label, r.residual, r.passed))
    random_entries = []
    for i in range(trials):
        sub = random_subspace(s.domain, random_dim, seed + i)
        r = is_reducing(s, sub, tol)
        random_entries.append(CensusEntry(f"random[{seed + i}]", r.residual, r.passed))
    return CensusReport(tuple(residue_entries), tuple(random_entries))
