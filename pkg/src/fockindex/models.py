"""Block model operators on the truncated oscillator-form space.

The comparison operator couples a rank-one (possibly deformed) projector
block on the even-form sector with the chiral halves of the coupled
raising/lowering operator and the oscillator Hamiltonian.  Blocks carry
declared orders; the block calculus keeps, at each position, only the
summand of highest declared order, which is exactly how the comparison
operator arises from the projector models.

All model matrices act on the two form-parity sectors stacked even-first.
Right-hand sides for the inverse formulas must be supported on oscillator
degree ``cutoff - 2`` or lower so the formulas never touch the truncation
edge; there the explicit solution is exact and pseudo-inverses recover the
unique preimages orthogonal to the kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .errors import GuardViolationError, PairingFloorError
from .fock import FockSpaceConfig
from .spinors import (
    EVEN,
    ODD,
    PAIRING_FLOOR,
    GradedBasisIndex,
    basis_vector,
    deformed_szego,
    dirac_plus,
    graded_form_degrees,
    graded_index,
    graded_osc_degrees,
    sector_indices,
    vacuum_index,
)

__all__ = [
    "ModelConfig",
    "BlockOperator",
    "build_calderon_model",
    "build_boundary_model",
    "build_comparison_model",
    "invert_comparison_model",
    "certify_invertibility",
    "deformation_block_ranks",
    "random_guarded_rhs",
    "COMPARISON_ORDERS",
    "PARAMETRIX_ORDERS",
]

COMPARISON_ORDERS = ((0, -1), (-1, -2))
PARAMETRIX_ORDERS = ((0, 1), (1, 1))
_RANK_CUTOFF = 1e-8
_PINV_CUTOFF = 1e-10
_DEFORMATION_RANK_BOUND = 4


@dataclass(frozen=True)
class ModelConfig:
    """Parameters of the block model on ``n - 1`` oscillator variables."""

    n: int
    alpha: float = 1.0
    beta: float | None = None
    cutoff: int = 12
    theta: float = 0.0
    target: GradedBasisIndex | None = None
    tol: float = 1e-9

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need n >= 2, got n = {self.n}")
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.beta is None:
            object.__setattr__(self, "beta", float(self.n - 1))
        if self.target is None:
            excited = (1,) + (0,) * (self.n - 2)
            object.__setattr__(self, "target", GradedBasisIndex(excited, ()))

    @property
    def fock_config(self) -> FockSpaceConfig:
        return FockSpaceConfig(self.n - 1, self.cutoff)

    @property
    def deformed(self) -> bool:
        return self.theta != 0.0


@dataclass(frozen=True)
class BlockOperator:
    """2x2 block matrix over the form-parity sectors with declared orders.

    ``blocks[i][j]`` is a sparse matrix or ``None`` (an exactly-zero block);
    ``heisenberg_orders[i][j]`` is its declared order, ``None`` for zero
    blocks.  The first slot is always the even-form sector.
    """

    blocks: tuple
    heisenberg_orders: tuple
    row_dims: tuple
    col_dims: tuple

    def block(self, i: int, j: int) -> sp.csr_matrix:
        entry = self.blocks[i][j]
        if entry is None:
            return sp.csr_matrix((self.row_dims[i], self.col_dims[j]), dtype=complex)
        return entry

    def matrix(self) -> sp.csr_matrix:
        """The assembled two-sector matrix."""
        return sp.bmat(
            [[self.block(0, 0), self.block(0, 1)], [self.block(1, 0), self.block(1, 1)]],
            format="csr",
        )

    def apply(self, top: np.ndarray, bottom: np.ndarray):
        a = self.block(0, 0) @ top + self.block(0, 1) @ bottom
        b = self.block(1, 0) @ top + self.block(1, 1) @ bottom
        return a, b

    def adjoint(self) -> "BlockOperator":
        def flip(entry):
            return None if entry is None else sp.csr_matrix(entry.conj().T)

        return BlockOperator(
            blocks=(
                (flip(self.blocks[0][0]), flip(self.blocks[1][0])),
                (flip(self.blocks[0][1]), flip(self.blocks[1][1])),
            ),
            heisenberg_orders=(
                (self.heisenberg_orders[0][0], self.heisenberg_orders[1][0]),
                (self.heisenberg_orders[0][1], self.heisenberg_orders[1][1]),
            ),
            row_dims=self.col_dims,
            col_dims=self.row_dims,
        )

    def compose(self, other: "BlockOperator") -> "BlockOperator":
        """Plain block product; each order is the best declared sum."""
        if self.col_dims != other.row_dims:
            raise ValueError("block operators have incompatible sector dimensions")
        blocks, orders = [], []
        for i in range(2):
            brow, orow = [], []
            for j in range(2):
                total, order = None, None
                for k in range(2):
                    left, right = self.blocks[i][k], other.blocks[k][j]
                    if left is None or right is None:
                        continue
                    term = sp.csr_matrix(left @ right)
                    total = term if total is None else total + term
                    lo = self.heisenberg_orders[i][k]
                    ro = other.heisenberg_orders[k][j]
                    if lo is not None and ro is not None:
                        order = lo + ro if order is None else max(order, lo + ro)
                brow.append(total)
                orow.append(order)
            blocks.append(tuple(brow))
            orders.append(tuple(orow))
        return BlockOperator(tuple(blocks), tuple(orders), self.row_dims, other.col_dims)

    def graded_add(self, other: "BlockOperator") -> "BlockOperator":
        """Blockwise sum where the higher declared order wins outright.

        Blocks of equal declared order add; a block of strictly lower
        declared order than its counterpart is discarded entirely.
        Exact-zero sums are normalized back to empty blocks.
        """
        if self.row_dims != other.row_dims or self.col_dims != other.col_dims:
            raise ValueError("block operators have incompatible sector dimensions")
        blocks, orders = [], []
        for i in range(2):
            brow, orow = [], []
            for j in range(2):
                a, b = self.blocks[i][j], other.blocks[i][j]
                ao, bo = self.heisenberg_orders[i][j], other.heisenberg_orders[i][j]
                if a is None or (b is not None and bo > ao):
                    entry, order = b, bo
                elif b is None or ao > bo:
                    entry, order = a, ao
                else:
                    entry, order = sp.csr_matrix(a + b), ao
                if entry is not None and (
                    entry.nnz == 0 or np.abs(entry.data).max() == 0.0
                ):
                    entry, order = None, None
                brow.append(entry)
                orow.append(order)
            blocks.append(tuple(brow))
            orders.append(tuple(orow))
        return BlockOperator(tuple(blocks), tuple(orders), self.row_dims, self.col_dims)


class _SectorData:
    """Sector restrictions of the coupled operators for one config."""

    def __init__(self, cfg: ModelConfig):
        config = cfg.fock_config
        self.cfg = cfg
        self.even_idx = sector_indices(config, EVEN)
        self.odd_idx = sector_indices(config, ODD)
        self.dim_even = len(self.even_idx)
        self.dim_odd = len(self.odd_idx)
        dirac = dirac_plus(config).matrix.tocsc()
        self.raise_block = sp.csr_matrix(dirac[self.odd_idx, :][:, self.even_idx])
        self.lower_block = sp.csr_matrix(dirac[self.even_idx, :][:, self.odd_idx])
        nv = config.num_vars
        osc = graded_osc_degrees(config)
        self.h0_even = 2.0 * osc[self.even_idx] + nv
        self.h0_odd = 2.0 * osc[self.odd_idx] + nv
        self.form0_even = graded_form_degrees(config)[self.even_idx] == 0
        self.guard_even = osc[self.even_idx] <= cfg.cutoff - 2
        self.guard_odd = osc[self.odd_idx] <= cfg.cutoff - 2
        vac_graded = graded_index(config, vacuum_index(config))
        self.vacuum_pos = int(np.searchsorted(self.even_idx, vac_graded))
        self.z0 = np.zeros(self.dim_even)
        self.z0[self.vacuum_pos] = 1.0
        # the deformed vacuum; deformed_szego validates the target and angle
        szego = deformed_szego(config, cfg.theta, cfg.target).matrix.tocsc()
        self.szego_even = sp.csr_matrix(szego[self.even_idx, :][:, self.even_idx])
        target_vec = basis_vector(config, cfg.target)
        self.z0_prime = target_vec[self.even_idx] * math.sin(cfg.theta)
        self.z0_prime[self.vacuum_pos] += math.cos(cfg.theta)
        self.pairing = math.cos(cfg.theta)
        self.lower_pinv = np.linalg.pinv(self.lower_block.toarray(), rcond=_PINV_CUTOFF)
        self.raise_pinv = np.linalg.pinv(self.raise_block.toarray(), rcond=_PINV_CUTOFF)

    def h0_diag(self, parity: str) -> sp.csr_matrix:
        values = self.h0_even if parity == EVEN else self.h0_odd
        return sp.diags(values.astype(complex), format="csr")

    def eye(self, parity: str) -> sp.csr_matrix:
        dim = self.dim_even if parity == EVEN else self.dim_odd
        return sp.identity(dim, dtype=complex, format="csr")


@lru_cache(maxsize=16)
def _sectors(cfg: ModelConfig) -> _SectorData:
    return _SectorData(cfg)


def _check_chirality(chirality: str):
    if chirality not in (EVEN, ODD):
        raise ValueError(f"chirality must be '{EVEN}' or '{ODD}', got {chirality!r}")


def build_calderon_model(chirality: str, complement: bool, cfg: ModelConfig) -> BlockOperator:
    """Model of the one-sided boundary projector (or its complement).

    One diagonal corner is the identity, the other the shifted oscillator
    Hamiltonian (shift ``-beta`` for the projector, ``+beta`` for the
    complement); the off-diagonal blocks carry the chiral halves of the
    coupled operator, negated in the complement.
    """
    _check_chirality(chirality)
    sec = _sectors(cfg)
    alpha, beta = cfg.alpha, cfg.beta
    sign = -1.0 if complement else 1.0
    shift = beta if complement else -beta
    up = sp.csr_matrix(sign * alpha * sec.raise_block)
    down = sp.csr_matrix(sign * alpha * sec.lower_block)
    heavy_parity = ODD if (chirality == EVEN) != complement else EVEN
    heavy = sp.csr_matrix(
        alpha**2 * (sec.h0_diag(heavy_parity) + shift * sec.eye(heavy_parity))
    )
    if heavy_parity == ODD:
        blocks = ((sec.eye(EVEN), down), (up, heavy))
        orders = ((0, -1), (-1, -2))
    else:
        blocks = ((heavy, down), (up, sec.eye(ODD)))
        orders = ((-2, -1), (-1, 0))
    dims = (sec.dim_even, sec.dim_odd)
    return BlockOperator(blocks, orders, dims, dims)


def build_boundary_model(chirality: str, cfg: ModelConfig) -> BlockOperator:
    """Model of the generalized projector side condition.

    Even chirality keeps the rank-one corner together with the whole odd
    sector; odd chirality is its exact block complement.
    """
    _check_chirality(chirality)
    sec = _sectors(cfg)
    dims = (sec.dim_even, sec.dim_odd)
    if chirality == EVEN:
        blocks = ((sec.szego_even, None), (None, sec.eye(ODD)))
        orders = ((0, None), (None, 0))
    else:
        blocks = ((sp.csr_matrix(sec.eye(EVEN) - sec.szego_even), None), (None, None))
        orders = ((0, None), (None, None))
    return BlockOperator(blocks, orders, dims, dims)


def build_comparison_model(chirality: str, cfg: ModelConfig) -> BlockOperator:
    """The comparison-operator model, assembled directly.

    Equals the graded combination ``R P + (Id - R)(Id - P)`` of the boundary
    and one-sided projector models, blockwise and exactly.
    """
    _check_chirality(chirality)
    sec = _sectors(cfg)
    alpha, beta = cfg.alpha, cfg.beta
    mixed = sp.csr_matrix(
        (sec.eye(EVEN) - 2.0 * sec.szego_even) @ (alpha * sec.lower_block)
    )
    if chirality == EVEN:
        top_right = sp.csr_matrix(-1.0 * mixed)
        bottom_left = sp.csr_matrix(alpha * sec.raise_block)
        heavy = alpha**2 * (sec.h0_diag(ODD) - beta * sec.eye(ODD))
    else:
        top_right = mixed
        bottom_left = sp.csr_matrix(-alpha * sec.raise_block)
        heavy = alpha**2 * (sec.h0_diag(ODD) + beta * sec.eye(ODD))
    blocks = ((sec.szego_even, top_right), (bottom_left, sp.csr_matrix(heavy)))
    dims = (sec.dim_even, sec.dim_odd)
    return BlockOperator(blocks, COMPARISON_ORDERS, dims, dims)


def _check_guarded(sec: _SectorData, a: np.ndarray, b: np.ndarray):
    if a.shape[0] != sec.dim_even or b.shape[0] != sec.dim_odd:
        raise ValueError(
            f"rhs sectors must have lengths {sec.dim_even} and {sec.dim_odd}, "
            f"got {a.shape[0]} and {b.shape[0]}"
        )
    loose = 0.0
    if (~sec.guard_even).any():
        loose = max(loose, np.abs(a[~sec.guard_even]).max())
    if (~sec.guard_odd).any():
        loose = max(loose, np.abs(b[~sec.guard_odd]).max())
    if loose != 0.0:
        raise GuardViolationError(
            "rhs has support above oscillator degree cutoff-2; the inverse "
            "formulas are only exact away from the truncation edge"
        )


def _solve_columns(chirality: str, cfg: ModelConfig, a: np.ndarray, b: np.ndarray):
    """The explicit solution formulas, applied to stacked rhs columns."""
    sec = _sectors(cfg)
    if abs(sec.pairing) < PAIRING_FLOOR:
        raise PairingFloorError(
            f"projector pairing |cos(theta)| = {abs(sec.pairing):.3e} is below "
            f"the floor {PAIRING_FLOOR}; the rank-one corrections blow up"
        )
    alpha, beta = cfg.alpha, cfg.beta
    sign = -1.0 if chirality == EVEN else 1.0

    # strip the vacuum component of a, re-aimed along the deformed vacuum,
    # so what remains lies in the range of the lowering block
    vacuum_weight = sec.z0 @ a
    w = a - np.outer(sec.z0_prime / sec.pairing, vacuum_weight)
    v = sign * (sec.lower_pinv @ w) / alpha

    heavy = alpha**2 * (sec.h0_odd + sign * beta)
    u_hat = -sign * (sec.raise_pinv @ (b - heavy[:, None] * v)) / alpha

    reduced = a + sign * alpha * (sec.lower_block @ v) - u_hat
    degree0 = np.where(sec.form0_even[:, None], reduced, 0.0)
    coeff = (sec.z0_prime @ degree0) / sec.pairing
    u0 = np.outer(sec.z0, coeff)
    return u0 + u_hat, v


def invert_comparison_model(chirality: str, cfg: ModelConfig, rhs) -> tuple:
    """Solve the comparison model by the explicit solution formulas.

    ``rhs`` is the pair ``(a, b)`` of even/odd sector vectors, supported on
    oscillator degree ``cutoff - 2`` or lower.  Returns ``(u, v)``.  The
    ``v``-component is read off from ``a`` alone, so the (2,2) block of the
    inverse vanishes identically.
    """
    _check_chirality(chirality)
    sec = _sectors(cfg)
    a = np.asarray(rhs[0], dtype=complex)
    b = np.asarray(rhs[1], dtype=complex)
    if a.ndim != 1 or b.ndim != 1:
        raise ValueError("rhs must be a pair of one-dimensional sector vectors")
    _check_guarded(sec, a, b)
    u, v = _solve_columns(chirality, cfg, a[:, None], b[:, None])
    return u[:, 0], v[:, 0]


def random_guarded_rhs(rng, cfg: ModelConfig) -> tuple:
    """Seeded complex rhs pair supported on the guarded oscillator degrees."""
    sec = _sectors(cfg)
    a = rng.normal(size=sec.dim_even) + 1j * rng.normal(size=sec.dim_even)
    b = rng.normal(size=sec.dim_odd) + 1j * rng.normal(size=sec.dim_odd)
    a[~sec.guard_even] = 0.0
    b[~sec.guard_odd] = 0.0
    scale = math.sqrt(np.vdot(a, a).real + np.vdot(b, b).real)
    return a / scale, b / scale


def _block_rank(matrix: np.ndarray) -> int:
    if matrix.size == 0 or np.abs(matrix).max() == 0.0:
        return 0
    svals = np.linalg.svd(matrix, compute_uv=False)
    return int(np.sum(svals > _RANK_CUTOFF * svals[0]))


def _inverse_on_guard(chirality: str, cfg: ModelConfig) -> tuple:
    """Stacked inverse columns over the guarded unit vectors."""
    sec = _sectors(cfg)
    num_even = int(sec.guard_even.sum())
    num_odd = int(sec.guard_odd.sum())
    a = np.zeros((sec.dim_even, num_even + num_odd), dtype=complex)
    b = np.zeros((sec.dim_odd, num_even + num_odd), dtype=complex)
    a[np.flatnonzero(sec.guard_even), np.arange(num_even)] = 1.0
    b[np.flatnonzero(sec.guard_odd), num_even + np.arange(num_odd)] = 1.0
    u, v = _solve_columns(chirality, cfg, a, b)
    return np.vstack([u, v]), num_even


def deformation_block_ranks(chirality: str, cfg: ModelConfig) -> list:
    """Numerical ranks of the deformed-minus-undeformed inverse blocks.

    The deformation perturbs the inverse by a handful of rank-one couplings
    between the two vacua, so every block has small finite rank and the
    (2,2) block is untouched (exactly zero difference).
    """
    _check_chirality(chirality)
    inverse, num_even = _inverse_on_guard(chirality, cfg)
    plain, _ = _inverse_on_guard(chirality, replace(cfg, theta=0.0))
    diff = inverse - plain
    ne = _sectors(cfg).dim_even
    return [
        [_block_rank(diff[:ne, :num_even]), _block_rank(diff[:ne, num_even:])],
        [_block_rank(diff[ne:, :num_even]), _block_rank(diff[ne:, num_even:])],
    ]


def certify_invertibility(chirality: str, cfg: ModelConfig, *, num_rhs: int = 16,
                          seed: int = 0) -> dict:
    """Numerical certificate that the model operator is invertible.

    Reports the smallest singular value of the model restricted to the
    guarded columns (an injectivity bound), formula-inverse residuals over
    seeded right-hand sides, the rank certificates of the
    deformed-minus-undeformed inverse blocks, and the declared parametrix
    block orders.  Admissibility failures are surfaced in the report
    instead of raised.
    """
    _check_chirality(chirality)
    report = {
        "check": "model-invertibility",
        "chirality": chirality,
        "n": cfg.n,
        "alpha": cfg.alpha,
        "beta": cfg.beta,
        "cutoff": cfg.cutoff,
        "theta": cfg.theta,
        "tol": cfg.tol,
        "seed": seed,
        "num_rhs": num_rhs,
    }
    try:
        sec = _sectors(cfg)
        model = build_comparison_model(chirality, cfg)
        full = model.matrix().toarray()
        guard = np.concatenate([sec.guard_even, sec.guard_odd])
        # injectivity bound: guarded columns, all rows.  (Chopping the rows
        # as well can be exactly singular for n >= 3 because the image of a
        # guarded vector reaches one oscillator degree past the guard.)
        svals = np.linalg.svd(full[:, guard], compute_uv=False)
        square = full[np.ix_(guard, guard)]
        assert square.shape[0] == square.shape[1]
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(num_rhs):
            a, b = random_guarded_rhs(rng, cfg)
            u, v = invert_comparison_model(chirality, cfg, (a, b))
            ta, tb = model.apply(u, v)
            err = math.sqrt(
                np.vdot(ta - a, ta - a).real + np.vdot(tb - b, tb - b).real
            )
            worst = max(worst, err)
        ranks = deformation_block_ranks(chirality, cfg)
        report.update(
            {
                "passed": bool(
                    svals[-1] > cfg.tol
                    and worst <= cfg.tol
                    and max(ranks[0][0], ranks[0][1], ranks[1][0])
                    <= _DEFORMATION_RANK_BOUND
                    and ranks[1][1] == 0
                ),
                "error": None,
                "smallest_singular_value": float(svals[-1]),
                "singular_floor": cfg.tol,
                "residual_max": worst,
                "square_index": 0,
                "deformation_block_ranks": ranks,
                "deformation_rank_bound": _DEFORMATION_RANK_BOUND,
                "heisenberg_orders": [list(row) for row in COMPARISON_ORDERS],
                "parametrix_orders": [list(row) for row in PARAMETRIX_ORDERS],
            }
        )
    except (PairingFloorError, GuardViolationError) as exc:
        report.update({"passed": False, "error": str(exc)})
    return report
