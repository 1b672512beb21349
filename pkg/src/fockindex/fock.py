"""Truncated ladder algebra on a graded multi-index oscillator basis.

The basis consists of all multi-indices in ``num_vars`` variables with total
degree at most ``cutoff``, enumerated in graded lexicographic order.
Operators are hard projections: matrix entries that would leave the
truncated basis are dropped, and algebraic identities are therefore only
asserted on states whose degree stays ``guard`` levels below the cutoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .errors import ConfigMismatchError

__all__ = [
    "FockSpaceConfig",
    "TruncatedOperator",
    "multi_indices",
    "basis_index",
    "degrees",
    "guard_mask",
    "creation",
    "annihilation",
    "harmonic_oscillator",
    "identity",
    "compose",
    "adjoint",
    "commutator",
    "oscillator_identity_residuals",
    "max_abs_on_guard",
]


@dataclass(frozen=True)
class FockSpaceConfig:
    """Truncation parameters: number of variables, degree cutoff, guard band.

    Identities are asserted on states of degree <= cutoff - guard, so the
    cutoff must leave room for at least a two-level guard band.
    """

    num_vars: int
    cutoff: int
    guard: int = 2

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError(f"num_vars must be >= 1, got {self.num_vars}")
        if self.guard < 0:
            raise ValueError(f"guard must be >= 0, got {self.guard}")
        if self.cutoff < self.guard + 2:
            raise ValueError(
                f"cutoff {self.cutoff} too small for guard {self.guard}: "
                f"need cutoff >= guard + 2"
            )

    @property
    def dimension(self) -> int:
        return math.comb(self.cutoff + self.num_vars, self.num_vars)


@lru_cache(maxsize=None)
def _basis(num_vars: int, cutoff: int) -> tuple[tuple[int, ...], ...]:
    """All multi-indices with |k| <= cutoff in graded lexicographic order."""

    def _compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in _compositions(total - first, parts - 1):
                yield (first,) + rest

    out = []
    for degree in range(cutoff + 1):
        out.extend(sorted(_compositions(degree, num_vars)))
    return tuple(out)


@lru_cache(maxsize=None)
def _index_map(num_vars: int, cutoff: int) -> dict:
    return {k: i for i, k in enumerate(_basis(num_vars, cutoff))}


def multi_indices(config: FockSpaceConfig) -> tuple[tuple[int, ...], ...]:
    """Basis enumeration (graded lexicographic) for the given truncation."""
    return _basis(config.num_vars, config.cutoff)


def basis_index(config: FockSpaceConfig, index: tuple[int, ...]) -> int:
    """Position of a multi-index in the enumeration; rejects invalid indices."""
    key = tuple(int(m) for m in index)
    if len(key) != config.num_vars or any(m < 0 for m in key):
        raise ValueError(f"invalid multi-index {index} for {config.num_vars} variables")
    try:
        return _index_map(config.num_vars, config.cutoff)[key]
    except KeyError:
        raise ValueError(
            f"multi-index {index} exceeds cutoff {config.cutoff}"
        ) from None


def degrees(config: FockSpaceConfig) -> np.ndarray:
    """Total degree |k| of each basis element, in enumeration order."""
    return np.array([sum(k) for k in multi_indices(config)], dtype=int)


def guard_mask(config: FockSpaceConfig, margin: int | None = None) -> np.ndarray:
    """Boolean mask of basis states with degree <= cutoff - margin."""
    margin = config.guard if margin is None else margin
    return degrees(config) <= config.cutoff - margin


@dataclass(frozen=True)
class TruncatedOperator:
    """A hard-projected operator over the truncated basis.

    ``matrix`` is square over the full truncated basis (CSR storage; use
    :meth:`dense` for a numpy array).  ``degree_shift`` records how the
    operator changes total degree, or ``None`` when it is not graded.
    Instances are treated as immutable.
    """

    matrix: sp.csr_matrix
    degree_shift: int | None
    config: FockSpaceConfig

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


def _operator(matrix, degree_shift, config) -> TruncatedOperator:
    m = sp.csr_matrix(matrix, dtype=np.complex128)
    m.sum_duplicates()
    m.sort_indices()
    return TruncatedOperator(m, degree_shift, config)


def creation(config: FockSpaceConfig, j: int) -> TruncatedOperator:
    """Raising operator in variable ``j`` (1-based).

    Maps the basis state ``k`` to ``sqrt(2 (k_j + 1))`` times the state with
    ``k_j`` incremented; transitions beyond the cutoff are dropped.
    """
    if not 1 <= j <= config.num_vars:
        raise ValueError(f"variable index {j} out of range 1..{config.num_vars}")
    basis = multi_indices(config)
    index_map = _index_map(config.num_vars, config.cutoff)
    rows, cols, vals = [], [], []
    for col, k in enumerate(basis):
        if sum(k) + 1 > config.cutoff:
            continue
        target = k[: j - 1] + (k[j - 1] + 1,) + k[j:]
        rows.append(index_map[target])
        cols.append(col)
        vals.append(math.sqrt(2.0 * (k[j - 1] + 1)))
    dim = config.dimension
    m = sp.coo_matrix((vals, (rows, cols)), shape=(dim, dim))
    return _operator(m, +1, config)


def annihilation(config: FockSpaceConfig, j: int) -> TruncatedOperator:
    """Lowering operator in variable ``j``: exactly the adjoint of creation."""
    return adjoint(creation(config, j))


def harmonic_oscillator(config: FockSpaceConfig) -> TruncatedOperator:
    """Diagonal operator with entry 2|k| + num_vars on each basis state."""
    diag = 2.0 * degrees(config) + config.num_vars
    return _operator(sp.diags(diag.astype(np.complex128)), 0, config)


def identity(config: FockSpaceConfig) -> TruncatedOperator:
    return _operator(sp.identity(config.dimension, dtype=np.complex128), 0, config)


def _check_compatible(a: TruncatedOperator, b: TruncatedOperator):
    if a.config != b.config:
        raise ConfigMismatchError(f"config mismatch: {a.config} vs {b.config}")
    if a.shape != b.shape:
        raise ConfigMismatchError(f"operator shapes differ: {a.shape} vs {b.shape}")


def compose(a: TruncatedOperator, b: TruncatedOperator) -> TruncatedOperator:
    """Operator composition a o b (apply ``b`` first)."""
    _check_compatible(a, b)
    shift = None
    if a.degree_shift is not None and b.degree_shift is not None:
        shift = a.degree_shift + b.degree_shift
    return _operator(a.matrix @ b.matrix, shift, a.config)


def adjoint(a: TruncatedOperator) -> TruncatedOperator:
    """Conjugate transpose; the degree shift flips sign."""
    shift = None if a.degree_shift is None else -a.degree_shift
    return _operator(a.matrix.conj().T, shift, a.config)


def commutator(a: TruncatedOperator, b: TruncatedOperator) -> TruncatedOperator:
    """[a, b] = a o b - b o a, with the common graded shift when defined."""
    _check_compatible(a, b)
    shift = None
    if a.degree_shift is not None and b.degree_shift is not None:
        shift = a.degree_shift + b.degree_shift
    return _operator(a.matrix @ b.matrix - b.matrix @ a.matrix, shift, a.config)


def oscillator_identity_residuals(config: FockSpaceConfig) -> tuple[float, float]:
    """Guarded-column errors of the two ladder factorizations of the oscillator.

    Returns the residuals of ``sum_j C_j^* C_j - num_vars`` and
    ``sum_j C_j C_j^* + num_vars`` against the oscillator Hamiltonian.
    """
    h = harmonic_oscillator(config).matrix
    dim = config.dimension
    lower = sp.csr_matrix((dim, dim), dtype=np.complex128)
    upper = sp.csr_matrix((dim, dim), dtype=np.complex128)
    for j in range(1, config.num_vars + 1):
        c = creation(config, j).matrix
        a = c.conj().T
        lower = lower + a @ c
        upper = upper + c @ a
    eye = sp.identity(dim, dtype=np.complex128)
    nv = config.num_vars
    res1 = max_abs_on_guard(lower - nv * eye - h, config)
    res2 = max_abs_on_guard(upper + nv * eye - h, config)
    return res1, res2


def max_abs_on_guard(matrix, config: FockSpaceConfig, margin: int | None = None,
                     mask: np.ndarray | None = None) -> float:
    """Largest |entry| over columns indexed by guarded basis states.

    ``mask`` overrides the default oscillator-degree mask (used by graded
    spaces whose column layout differs from the plain oscillator basis).
    """
    if mask is None:
        mask = guard_mask(config, margin)
    cols = np.nonzero(mask)[0]
    if cols.size == 0:
        return 0.0
    sub = sp.csr_matrix(matrix)[:, cols]
    if sub.nnz == 0:
        return 0.0
    return float(np.abs(sub.data).max())
