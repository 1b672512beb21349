"""Graded spinor model: oscillator states tensored with an exterior algebra.

The form factor is spanned by the subsets of ``{1, ..., num_vars}`` in
lexicographic order, normalized so that wedge/contraction are exact
adjoints.  The coupled first-order operator ``dirac_plus`` exchanges the
even and odd form-degree sectors while preserving total degree; its square
is diagonal in both the oscillator degree and the form degree.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import chain, combinations
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp

from .errors import PairingFloorError
from .fock import (
    FockSpaceConfig,
    TruncatedOperator,
    _operator,
    adjoint,
    annihilation,
    creation,
    degrees,
    multi_indices,
)

__all__ = [
    "EVEN",
    "ODD",
    "PAIRING_FLOOR",
    "GradedBasisIndex",
    "form_subsets",
    "wedge_matrix",
    "contract_matrix",
    "graded_basis",
    "graded_dimension",
    "graded_index",
    "graded_osc_degrees",
    "graded_form_degrees",
    "graded_guard_mask",
    "sector_indices",
    "wedge",
    "contract",
    "degree_projection",
    "dirac_plus",
    "dirac_plus_even",
    "dirac_plus_odd",
    "vacuum_index",
    "basis_vector",
    "vacuum_szego",
    "deformed_szego",
    "square_identity_residual",
]

EVEN = "even"
ODD = "odd"

# Deformed vacua must keep at least this much overlap with the reference one.
PAIRING_FLOOR = 1e-3


class GradedBasisIndex(NamedTuple):
    """One basis element: an oscillator multi-index and a form label subset."""

    osc: tuple[int, ...]
    form: tuple[int, ...]


def _check_parity(parity: str):
    if parity not in (EVEN, ODD):
        raise ValueError(f"parity must be '{EVEN}' or '{ODD}', got {parity!r}")


@lru_cache(maxsize=None)
def form_subsets(num_vars: int) -> tuple[tuple[int, ...], ...]:
    """All subsets of {1..num_vars} as sorted tuples, in lexicographic order."""
    labels = range(1, num_vars + 1)
    subsets = chain.from_iterable(
        combinations(labels, r) for r in range(num_vars + 1)
    )
    return tuple(sorted(subsets))


@lru_cache(maxsize=None)
def wedge_matrix(num_vars: int, j: int) -> np.ndarray:
    """Exterior multiplication by label ``j`` on the subset basis.

    Inserting ``j`` into a subset picks up the sign of the permutation that
    moves ``j`` past the smaller labels already present.
    """
    if not 1 <= j <= num_vars:
        raise ValueError(f"form label {j} out of range 1..{num_vars}")
    subsets = form_subsets(num_vars)
    index = {s: i for i, s in enumerate(subsets)}
    n = len(subsets)
    out = np.zeros((n, n))
    for col, s in enumerate(subsets):
        if j in s:
            continue
        sign = (-1) ** sum(1 for i in s if i < j)
        target = tuple(sorted(s + (j,)))
        out[index[target], col] = sign
    return out


@lru_cache(maxsize=None)
def contract_matrix(num_vars: int, j: int) -> np.ndarray:
    """Interior contraction with label ``j``: the exact adjoint of the wedge."""
    return wedge_matrix(num_vars, j).T.copy()


@lru_cache(maxsize=None)
def _graded_basis(num_vars: int, cutoff: int) -> tuple[GradedBasisIndex, ...]:
    osc = _osc_basis(num_vars, cutoff)
    forms = form_subsets(num_vars)
    return tuple(GradedBasisIndex(k, s) for k in osc for s in forms)


def _osc_basis(num_vars, cutoff):
    return multi_indices(FockSpaceConfig(num_vars, cutoff, 0))


def graded_basis(config: FockSpaceConfig) -> tuple[GradedBasisIndex, ...]:
    """Tensor-product enumeration, oscillator-major / form-minor."""
    return _graded_basis(config.num_vars, config.cutoff)


def graded_dimension(config: FockSpaceConfig) -> int:
    return config.dimension * 2**config.num_vars


def graded_index(config: FockSpaceConfig, index: GradedBasisIndex) -> int:
    """Position of a graded basis element in the enumeration."""
    basis = graded_basis(config)
    target = GradedBasisIndex(tuple(index.osc), tuple(index.form))
    try:
        # oscillator-major layout: locate directly instead of scanning
        from .fock import basis_index

        osc_pos = basis_index(config, target.osc)
        forms = form_subsets(config.num_vars)
        form_pos = forms.index(target.form)
    except ValueError as exc:
        raise ValueError(f"invalid graded index {index}: {exc}") from None
    pos = osc_pos * len(forms) + form_pos
    assert basis[pos] == target
    return pos


def graded_osc_degrees(config: FockSpaceConfig) -> np.ndarray:
    nf = 2**config.num_vars
    return np.repeat(degrees(config), nf)


def graded_form_degrees(config: FockSpaceConfig) -> np.ndarray:
    form_deg = np.array([len(s) for s in form_subsets(config.num_vars)], dtype=int)
    return np.tile(form_deg, config.dimension)


def graded_guard_mask(config: FockSpaceConfig, margin: int | None = None) -> np.ndarray:
    """Mask of graded states whose oscillator degree is guarded."""
    margin = config.guard if margin is None else margin
    return graded_osc_degrees(config) <= config.cutoff - margin


def sector_indices(config: FockSpaceConfig, parity: str) -> np.ndarray:
    """Positions of the even (resp. odd) form-degree sector."""
    _check_parity(parity)
    rem = 0 if parity == EVEN else 1
    return np.nonzero(graded_form_degrees(config) % 2 == rem)[0]


def _lift_form(config: FockSpaceConfig, form_op: np.ndarray) -> sp.csr_matrix:
    eye = sp.identity(config.dimension, dtype=np.complex128)
    return sp.kron(eye, sp.csr_matrix(form_op)).tocsr()


def wedge(config: FockSpaceConfig, j: int) -> TruncatedOperator:
    """Wedge by label ``j`` on the graded space (raises form degree by one)."""
    return _operator(_lift_form(config, wedge_matrix(config.num_vars, j)), +1, config)


def contract(config: FockSpaceConfig, j: int) -> TruncatedOperator:
    """Contraction with label ``j`` (lowers form degree by one)."""
    return _operator(_lift_form(config, contract_matrix(config.num_vars, j)), -1, config)


def degree_projection(config: FockSpaceConfig, q: int) -> TruncatedOperator:
    """Orthogonal projection onto form degree ``q``."""
    if not 0 <= q <= config.num_vars:
        raise ValueError(f"form degree {q} out of range 0..{config.num_vars}")
    diag = (graded_form_degrees(config) == q).astype(np.complex128)
    return _operator(sp.diags(diag), 0, config)


def dirac_plus(config: FockSpaceConfig) -> TruncatedOperator:
    """The coupled operator i * sum_j (C_j contract_j - C_j^* wedge_j).

    Exchanges the even/odd form sectors while preserving total degree; its
    matrix is exactly self-adjoint under the hard truncation.
    """
    nv = config.num_vars
    total = None
    for j in range(1, nv + 1):
        up = creation(config, j).matrix
        down = annihilation(config, j).matrix
        term = sp.kron(up, sp.csr_matrix(contract_matrix(nv, j))) - sp.kron(
            down, sp.csr_matrix(wedge_matrix(nv, j))
        )
        total = term if total is None else total + term
    return _operator(1j * total, 0, config)


def _sector_projector(config: FockSpaceConfig, parity: str) -> sp.csr_matrix:
    rem = 0 if parity == EVEN else 1
    diag = (graded_form_degrees(config) % 2 == rem).astype(np.complex128)
    return sp.diags(diag).tocsr()


def dirac_plus_even(config: FockSpaceConfig) -> TruncatedOperator:
    """Restriction of dirac_plus mapping the even sector into the odd one.

    Returned as a square operator on the full graded space that vanishes
    outside the even-sector columns / odd-sector rows.
    """
    d = dirac_plus(config).matrix
    return _operator(
        _sector_projector(config, ODD) @ d @ _sector_projector(config, EVEN), 0, config
    )


def dirac_plus_odd(config: FockSpaceConfig) -> TruncatedOperator:
    """Restriction mapping the odd sector into the even one (exact adjoint)."""
    return adjoint(dirac_plus_even(config))


def vacuum_index(config: FockSpaceConfig) -> GradedBasisIndex:
    return GradedBasisIndex((0,) * config.num_vars, ())


def basis_vector(config: FockSpaceConfig, index: GradedBasisIndex) -> np.ndarray:
    vec = np.zeros(graded_dimension(config), dtype=np.complex128)
    vec[graded_index(config, index)] = 1.0
    return vec


def vacuum_szego(config: FockSpaceConfig) -> TruncatedOperator:
    """Rank-one orthogonal projection onto the vacuum state."""
    pos = graded_index(config, vacuum_index(config))
    dim = graded_dimension(config)
    m = sp.coo_matrix(([1.0], ([pos], [pos])), shape=(dim, dim))
    return _operator(m, 0, config)


def deformed_szego(config: FockSpaceConfig, theta: float,
                   target: GradedBasisIndex) -> TruncatedOperator:
    """Rank-one projection onto cos(theta) * vacuum + sin(theta) * target.

    The target must be a basis state of even form degree distinct from the
    vacuum; the deformation is admissible only while the overlap with the
    vacuum stays above ``PAIRING_FLOOR``.
    """
    if len(target.form) % 2 != 0:
        raise ValueError(f"deformation target must have even form degree, got {target}")
    if tuple(target.osc) == (0,) * config.num_vars and tuple(target.form) == ():
        raise ValueError("deformation target must differ from the vacuum")
    pairing = abs(math.cos(theta))
    if pairing < PAIRING_FLOOR:
        raise PairingFloorError(
            f"vacuum pairing |cos(theta)| = {pairing:.3e} below floor {PAIRING_FLOOR}"
        )
    vec = math.cos(theta) * basis_vector(config, vacuum_index(config))
    vec = vec + math.sin(theta) * basis_vector(config, target)
    return _operator(sp.csr_matrix(np.outer(vec, vec.conj())), 0, config)


def square_identity_residual(config: FockSpaceConfig) -> float:
    """Max guarded-column error of the squared coupled operator.

    The square must act diagonally as twice the oscillator degree plus twice
    the form degree; computed sparsely so large truncations stay cheap.
    """
    d = dirac_plus(config).matrix
    expected = 2.0 * graded_osc_degrees(config) + 2.0 * graded_form_degrees(config)
    diff = (d @ d - sp.diags(expected.astype(np.complex128))).tocsr()
    from .fock import max_abs_on_guard

    return max_abs_on_guard(diff, config, mask=graded_guard_mask(config))


