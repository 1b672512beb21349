"""Projector pairs, comparison operators, and relative indices.

Everything here is finite-dimensional: a pair of idempotents (P, R) on the
same space determines the comparison operator T = RP + (I-R)(I-P), and the
relative index of the pair is computed three independent ways — by kernel
dimensions of the restricted map, by the remainder-trace formula through a
parametrix, and by the brute-force rank difference.  The three must agree;
the trace route is exactly parametrix-independent, so arbitrary finite
perturbations of the parametrix change nothing.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    AdmissibilityError,
    DimensionMismatchError,
    IllConditionedKernelError,
    NonIntegerTraceError,
    SmallnessError,
)

__all__ = [
    "Projector",
    "ProjectorPair",
    "WeightedScale",
    "TraceIndex",
    "NeumannInverse",
    "comparison_operator",
    "relative_index_kernel",
    "relative_index_trace",
    "relative_index_rank",
    "logarithmic_property",
    "neumann_continuation",
    "toeplitz_winding",
    "agranovich_dynin_shadow",
    "random_projector",
    "coordinate_projector",
    "weighted_trace",
]

_IDEMPOTENT_TOL = 1e-12
_RANK_THRESHOLD = 1e-10
_GAP = (1e-12, 1e-8)
_INTEGRALITY_TOL = 1e-6
_NEUMANN_RADIUS = 0.5


def _rank_with_gap(matrix: np.ndarray, context: str) -> int:
    """Numerical rank; refuses to answer when a singular value is ambiguous."""
    if matrix.size == 0:
        return 0
    svals = np.linalg.svd(matrix, compute_uv=False)
    ambiguous = svals[(svals >= _GAP[0]) & (svals <= _GAP[1])]
    if ambiguous.size:
        raise IllConditionedKernelError(
            f"singular value {ambiguous[0]:.3e} of {context} falls in the "
            f"undecidable gap [{_GAP[0]:.0e}, {_GAP[1]:.0e}]"
        )
    return int((svals > _RANK_THRESHOLD).sum())


def _range_basis(matrix: np.ndarray, context: str) -> np.ndarray:
    """Orthonormal basis of the column space."""
    u, svals, _ = np.linalg.svd(matrix)
    rank = _rank_with_gap(matrix, context)
    return u[:, :rank]


def _truncated_pinv(matrix: np.ndarray) -> np.ndarray:
    """Pseudo-inverse with an absolute singular-value cutoff.

    numpy's rcond is relative to the largest singular value, which would
    happily invert a matrix made of pure rounding noise (every entry tiny);
    an absolute cutoff keeps the parametrix of a numerically-zero
    comparison operator at zero instead.
    """
    u, svals, vh = np.linalg.svd(matrix)
    keep = svals > _RANK_THRESHOLD
    inverted = np.zeros_like(svals)
    inverted[keep] = 1.0 / svals[keep]
    return (vh.conj().T * inverted) @ u.conj().T


@dataclass(frozen=True)
class Projector:
    """A square idempotent, not necessarily orthogonal."""

    matrix: np.ndarray
    self_adjoint: bool | None = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatchError(f"projector must be square, got {m.shape}")
        defect = np.abs(m @ m - m).max()
        if defect > _IDEMPOTENT_TOL:
            raise AdmissibilityError(
                f"matrix is not idempotent: max |P^2 - P| = {defect:.3e}"
            )
        object.__setattr__(self, "matrix", m)
        hermitian = np.abs(m - m.conj().T).max() <= _IDEMPOTENT_TOL
        if self.self_adjoint is None:
            object.__setattr__(self, "self_adjoint", bool(hermitian))
        elif self.self_adjoint and not hermitian:
            raise AdmissibilityError("projector declared self-adjoint but is not")

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def rank(self) -> int:
        return _rank_with_gap(self.matrix, "projector")

    def complement(self) -> "Projector":
        return Projector(np.eye(self.dimension) - self.matrix)


class TraceIndex(NamedTuple):
    """Rounded trace-formula index together with the raw real trace."""

    index: int
    raw: float


class NeumannInverse(NamedTuple):
    """Partial geometric-series inverse with its convergence bookkeeping."""

    matrix: np.ndarray
    order: int
    contraction_norm: float


def _comparison_matrix(p: np.ndarray, r: np.ndarray) -> np.ndarray:
    eye = np.eye(p.shape[0])
    return r @ p + (eye - r) @ (eye - p)


def comparison_operator(p: Projector, r: Projector, smoothing=None):
    """T = RP + (I-R)(I-P) with a parametrix and its two remainders.

    The parametrix is the pseudo-inverse of T, optionally perturbed by a
    caller-supplied matrix (any finite matrix counts as smoothing here);
    remainders are K1 = I - TU and K2 = I - UT.
    """
    if p.dimension != r.dimension:
        raise DimensionMismatchError(
            f"projectors act on different spaces: {p.dimension} vs {r.dimension}"
        )
    t = _comparison_matrix(p.matrix, r.matrix)
    u = _truncated_pinv(t)
    if smoothing is not None:
        extra = np.asarray(smoothing, dtype=complex)
        if extra.shape != t.shape:
            raise DimensionMismatchError(
                f"smoothing perturbation has shape {extra.shape}, expected {t.shape}"
            )
        u = u + extra
    eye = np.eye(t.shape[0])
    return t, u, eye - t @ u, eye - u @ t


@dataclass(frozen=True)
class ProjectorPair:
    """A projector pair with a parametrix for its comparison operator."""

    p: Projector
    r: Projector
    parametrix: np.ndarray
    k1: np.ndarray
    k2: np.ndarray

    def __post_init__(self):
        t = self.comparison
        eye = np.eye(t.shape[0])
        defect = max(
            np.abs(t @ self.parametrix + self.k1 - eye).max(),
            np.abs(self.parametrix @ t + self.k2 - eye).max(),
        )
        if defect > _IDEMPOTENT_TOL:
            raise AdmissibilityError(
                f"parametrix remainders are inconsistent: defect {defect:.3e}"
            )

    @classmethod
    def from_projectors(cls, p: Projector, r: Projector, smoothing=None):
        _, u, k1, k2 = comparison_operator(p, r, smoothing)
        return cls(p, r, u, k1, k2)

    @property
    def comparison(self) -> np.ndarray:
        return _comparison_matrix(self.p.matrix, self.r.matrix)

    @property
    def dimension(self) -> int:
        return self.p.dimension


def _restricted_kernel_dims(p: Projector, r: Projector) -> tuple:
    """Kernel dimensions of RP: range P -> range R and of its adjoint."""
    basis_p = _range_basis(p.matrix, "first projector")
    basis_r_star = _range_basis(r.matrix.conj().T, "second projector adjoint")
    forward = r.matrix @ p.matrix @ basis_p
    backward = (r.matrix @ p.matrix).conj().T @ basis_r_star
    ker_forward = basis_p.shape[1] - _rank_with_gap(forward, "restricted comparison")
    ker_backward = basis_r_star.shape[1] - _rank_with_gap(
        backward, "adjoint restricted comparison"
    )
    if (
        basis_p.shape[1] > 0
        and basis_r_star.shape[1] > 0
        and _rank_with_gap(r.matrix @ p.matrix, "comparison product") == 0
    ):
        warnings.warn(
            "comparison product RP vanishes although both projectors are "
            "nonzero; the pair is maximally degenerate and the relative "
            "index is a difference of full kernel dimensions",
            stacklevel=3,
        )
    return ker_forward, ker_backward


def relative_index_kernel(pair: ProjectorPair) -> int:
    """Relative index as a difference of restricted kernel dimensions."""
    ker_forward, ker_backward = _restricted_kernel_dims(pair.p, pair.r)
    return ker_forward - ker_backward


def relative_index_trace(pair: ProjectorPair) -> TraceIndex:
    """Relative index through the parametrix remainder traces.

    The raw value Tr(P K2 P) - Tr(R K1 R) must round to an integer within
    1e-6; anything else signals an invalid parametrix.
    """
    p, r = pair.p.matrix, pair.r.matrix
    raw = float(
        np.trace(p @ pair.k2 @ p).real - np.trace(r @ pair.k1 @ r).real
    )
    nearest = round(raw)
    if abs(raw - nearest) > _INTEGRALITY_TOL:
        raise NonIntegerTraceError(
            f"trace formula value {raw!r} is {abs(raw - nearest):.3e} away "
            "from the nearest integer"
        )
    return TraceIndex(int(nearest), raw)


def relative_index_rank(pair: ProjectorPair) -> int:
    """Brute-force oracle: rank P minus rank R."""
    return pair.p.rank - pair.r.rank


def logarithmic_property(p: Projector, q: Projector, r: Projector) -> dict:
    """Composite relative index versus the sum of the two steps."""
    if not p.dimension == q.dimension == r.dimension:
        raise DimensionMismatchError("projectors act on different spaces")
    basis_p = _range_basis(p.matrix, "first projector")
    basis_r_star = _range_basis(r.matrix.conj().T, "third projector adjoint")
    through = r.matrix @ q.matrix @ p.matrix
    ker_forward = basis_p.shape[1] - _rank_with_gap(
        through @ basis_p, "composite comparison"
    )
    ker_backward = basis_r_star.shape[1] - _rank_with_gap(
        through.conj().T @ basis_r_star, "adjoint composite comparison"
    )
    composite = ker_forward - ker_backward
    first = relative_index_kernel(ProjectorPair.from_projectors(p, q))
    second = relative_index_kernel(ProjectorPair.from_projectors(q, r))
    return {
        "composite_index": composite,
        "first_step": first,
        "second_step": second,
        "sum_of_steps": first + second,
        "consistent": composite == first + second,
    }


def neumann_continuation(family, tau0: float, tau: float, tol: float = 1e-10):
    """Continue the inverse of a matrix family from ``tau0`` to ``tau``.

    Writes A_tau = A_tau0 (I - E) and sums the geometric series in E as
    long as the contraction norm stays below 1/2; the series order is
    chosen so the operator-norm tail bound is below ``tol``.
    """
    a0 = np.asarray(family(tau0), dtype=complex)
    a1 = np.asarray(family(tau), dtype=complex)
    a0_inv = np.linalg.inv(a0)
    e = a0_inv @ (a0 - a1)
    norm = float(np.linalg.norm(e, 2))
    if norm >= _NEUMANN_RADIUS:
        midpoint = 0.5 * (tau0 + tau)
        raise SmallnessError(
            f"contraction norm {norm:.3f} is not below {_NEUMANN_RADIUS}",
            hint=f"continue in two steps via tau = {midpoint!r}",
        )
    if norm == 0.0:
        order = 0
    else:
        scale = float(np.linalg.norm(a0_inv, 2)) / (1.0 - norm)
        order = 0
        while scale * norm ** (order + 1) >= tol:
            order += 1
    total = np.eye(a0.shape[0], dtype=complex)
    power = np.eye(a0.shape[0], dtype=complex)
    for _ in range(order):
        power = power @ e
        total = total + power
    return NeumannInverse(total @ a0_inv, order, norm)


def coordinate_projector(dimension: int, positions) -> Projector:
    """Orthogonal projection onto a set of coordinate axes."""
    diag = np.zeros(dimension)
    diag[np.asarray(positions, dtype=int)] = 1.0
    return Projector(np.diag(diag).astype(complex))


def toeplitz_winding(window: int, k: int) -> int:
    """Relative index of the clipped winding-k symbol on a Fourier window.

    The window carries frequencies -window..window; the reference projector
    keeps 0..window, and conjugating by multiplication with the winding-k
    exponential shifts it to k..window (the upper end falls off the window
    for k > 0, the lower end stays clipped for k < 0).  The relative index
    recovers the winding number.
    """
    if window < 1:
        raise AdmissibilityError(f"window must be positive, got {window}")
    if abs(k) > window / 2:
        raise AdmissibilityError(
            f"winding {k} is too large for the frequency window {window} "
            f"(need |k| <= window/2)"
        )
    dim = 2 * window + 1
    offset = window  # frequency f lives at position f + offset
    hardy = coordinate_projector(dim, [f + offset for f in range(0, window + 1)])
    shifted = coordinate_projector(dim, [f + offset for f in range(k, window + 1)])
    return relative_index_kernel(ProjectorPair.from_projectors(hardy, shifted))


def agranovich_dynin_shadow(s1: Projector, s2: Projector, frame=None) -> dict:
    """Difference of two boundary conditions against the corner difference.

    Each corner projector is embedded in a block projector shaped like the
    even boundary model — the corner on the degree-0 slot, a zero block for
    the higher even degrees, and the identity on the odd slot — and both
    are compared against one fixed reference projector.  The difference of
    the two relative indices must equal the corner rank difference, which
    is itself the relative index of the corner pair.
    """
    if s1.dimension != s2.dimension:
        raise DimensionMismatchError(
            f"corner projectors differ in size: {s1.dimension} vs {s2.dimension}"
        )
    corner = s1.dimension
    extra_even, odd = frame if frame is not None else (corner, corner)
    if odd < 1:
        raise AdmissibilityError("block frame needs a nonempty odd slot")
    dim = corner + extra_even + odd

    def embed(s: Projector) -> Projector:
        block = np.zeros((dim, dim), dtype=complex)
        block[:corner, :corner] = s.matrix
        block[corner + extra_even:, corner + extra_even:] = np.eye(odd)
        return Projector(block)

    reference = coordinate_projector(dim, range(corner + extra_even, dim))
    first = relative_index_kernel(
        ProjectorPair.from_projectors(reference, embed(s1))
    )
    second = relative_index_kernel(
        ProjectorPair.from_projectors(reference, embed(s2))
    )
    corner_index = relative_index_kernel(ProjectorPair.from_projectors(s1, s2))
    report = {
        "block_dimension": dim,
        "difference": second - first,
        "rank_difference": s1.rank - s2.rank,
        "corner_index": corner_index,
    }
    report["consistent"] = (
        report["difference"] == report["rank_difference"] == report["corner_index"]
    )
    return report


@dataclass(frozen=True)
class WeightedScale:
    """Diagonal weight profile standing in for a nested family of norms."""

    dimension: int
    weights: tuple

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        if len(weights) != self.dimension:
            raise DimensionMismatchError(
                f"need {self.dimension} weights, got {len(weights)}"
            )
        if any(w < 1.0 for w in weights):
            raise AdmissibilityError("scale weights must all be >= 1")
        object.__setattr__(self, "weights", weights)

    def norm(self, x, s: float = 0.0) -> float:
        """The s-weighted norm; nondecreasing in s because weights >= 1."""
        scaled = np.asarray(self.weights) ** s * np.asarray(x)
        return float(np.linalg.norm(scaled))

    def transform(self, matrix, s: float = 1.0) -> np.ndarray:
        """Similarity transform of a matrix into the s-weighted coordinates."""
        w = np.asarray(self.weights) ** s
        return (w[:, None] * np.asarray(matrix, dtype=complex)) / w[None, :]


def weighted_trace(scale: WeightedScale, matrix, s: float = 1.0) -> float:
    """Trace evaluated in weighted coordinates (similarity-invariant)."""
    return float(np.trace(scale.transform(matrix, s)).real)


def random_projector(rng, dimension: int, rank: int, *, self_adjoint: bool = True) -> Projector:
    """Haar-random orthogonal projector of the given rank."""
    if not 0 <= rank <= dimension:
        raise AdmissibilityError(
            f"rank {rank} out of range for dimension {dimension}"
        )
    gauss = rng.normal(size=(dimension, dimension)) + 1j * rng.normal(
        size=(dimension, dimension)
    )
    q, _ = np.linalg.qr(gauss)
    basis = q[:, :rank]
    matrix = basis @ basis.conj().T
    # clean up rounding so the idempotency gate is comfortable
    matrix = 0.5 * (matrix + matrix.conj().T)
    if not self_adjoint:
        # conjugate by a mild invertible map: still idempotent, no longer
        # hermitian
        mix = np.eye(dimension) + 0.1 * rng.normal(size=(dimension, dimension))
        matrix = mix @ matrix @ np.linalg.inv(mix)
    return Projector(matrix, self_adjoint=None)
