"""Boundary symbol calculus on the tangential exterior algebra.

Symbols act on the ``2^(n-1)``-dimensional form space of ``n - 1``
tangential labels, with the basis reordered so the even-degree block comes
first; every matrix then splits into four ``2^(n-2)``-sized blocks.  The
first-order factor ``d1`` is linear in the covector, so it is represented by
``2n`` constant gradient matrices; this also makes the Hessian-weighted
symbols and their contour integrals straightforward.

Covector component layout: ``(xi1, xi_2..xi_n, xi_contact, xi_{n+2}..xi_{2n})``
with ``xi_contact`` the distinguished boundary component and ``xi_perp`` the
remaining ``2(n-1)`` tangential ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import OffContactLineError, PoleOnContourError, ZeroCovectorError
from .spinors import EVEN, ODD, contract_matrix, form_subsets, wedge_matrix

__all__ = [
    "Covector",
    "SymbolMatrix",
    "HessianData",
    "random_covector",
    "random_hessian",
    "symbol_dimension",
    "sector_slices",
    "sd_matrix",
    "d1_gradient",
    "d1",
    "boundary_isomorphism",
    "calderon_symbol0",
    "comparison_symbol0",
    "q_symbol",
    "q_symbol_integrand",
    "trace_term_integrand",
    "contour_integral",
    "closed_form_trace_contour",
    "closed_form_contact_contour",
    "calderon_symbol_minus1",
]


@dataclass(frozen=True)
class Covector:
    """Real covector split into first-order, contact, and tangential parts."""

    xi1: float
    xi_contact: float
    xi_perp: tuple[float, ...] = ()

    def __post_init__(self):
        if len(self.xi_perp) % 2 != 0:
            raise ValueError("xi_perp must hold an even number of components")
        object.__setattr__(self, "xi_perp", tuple(float(x) for x in self.xi_perp))

    @property
    def n(self) -> int:
        return len(self.xi_perp) // 2 + 1

    def components(self) -> np.ndarray:
        """Full 2n-component array in the layout documented above."""
        half = len(self.xi_perp) // 2
        return np.array(
            [self.xi1, *self.xi_perp[:half], self.xi_contact, *self.xi_perp[half:]],
            dtype=float,
        )

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.components()))

    @property
    def boundary_norm(self) -> float:
        """|xi'|: the norm of the components tangent to the boundary."""
        return math.hypot(self.xi_contact, float(np.linalg.norm(self.xi_perp)))

    @property
    def perp_norm(self) -> float:
        return float(np.linalg.norm(self.xi_perp))


@dataclass(frozen=True, eq=False)
class SymbolMatrix:
    """A symbol value: a matrix over the reordered form basis plus chirality."""

    matrix: np.ndarray
    chirality: str

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def blocks(self):
        half = self.dimension // 2
        m = self.matrix
        return ((m[:half, :half], m[:half, half:]), (m[half:, :half], m[half:, half:]))


def _check_chirality(chirality):
    if chirality not in (EVEN, ODD):
        raise ValueError(f"chirality must be '{EVEN}' or '{ODD}', got {chirality!r}")


def _check_side(side):
    if side not in (+1, -1):
        raise ValueError(f"side must be +1 or -1, got {side!r}")


def symbol_dimension(n: int) -> int:
    if n < 2:
        raise ValueError(f"need n >= 2, got n = {n}")
    return 2 ** (n - 1)


@lru_cache(maxsize=None)
def _form_order(n: int) -> tuple[tuple[int, ...], int]:
    """Permutation putting even-degree subsets first; returns (perm, dim_even)."""
    subsets = form_subsets(n - 1)
    even = [i for i, s in enumerate(subsets) if len(s) % 2 == 0]
    odd = [i for i, s in enumerate(subsets) if len(s) % 2 == 1]
    return tuple(even + odd), len(even)


@lru_cache(maxsize=None)
def _parity_projectors(n: int):
    dim = symbol_dimension(n)
    _, dim_even = _form_order(n)
    pi_e = np.zeros((dim, dim))
    pi_o = np.zeros((dim, dim))
    pi_e[np.arange(dim_even), np.arange(dim_even)] = 1.0
    pi_o[np.arange(dim_even, dim), np.arange(dim_even, dim)] = 1.0
    return pi_e, pi_o


def sector_slices(n: int) -> tuple[slice, slice]:
    """Row/column slices of the even-degree and odd-degree blocks."""
    _, dim_even = _form_order(n)
    return slice(0, dim_even), slice(dim_even, symbol_dimension(n))


def _reordered(n: int, form_op: np.ndarray) -> np.ndarray:
    perm, _ = _form_order(n)
    idx = np.array(perm)
    return form_op[np.ix_(idx, idx)]


@lru_cache(maxsize=None)
def _sd_gradient(n: int) -> np.ndarray:
    """Constant matrices G with sd(xi'') = sum_k xi_perp[k] * G[k]."""
    nv = n - 1
    dim = symbol_dimension(n)
    out = np.zeros((2 * nv, dim, dim), dtype=complex)
    for label in range(1, nv + 1):
        e = _reordered(n, contract_matrix(nv, label))
        eps = _reordered(n, wedge_matrix(nv, label))
        out[label - 1] = 1j * (e - eps)
        out[nv + label - 1] = e + eps
    return out


def sd_matrix(n: int, xi_perp) -> np.ndarray:
    """Tangential symbol: i xi-linear combination of contractions and wedges."""
    xi_perp = np.asarray(xi_perp)
    if xi_perp.shape != (2 * (n - 1),):
        raise ValueError(f"expected {2 * (n - 1)} tangential components")
    return np.tensordot(xi_perp, _sd_gradient(n), axes=1)


@lru_cache(maxsize=None)
def d1_gradient(chirality: str, n: int) -> np.ndarray:
    """The 2n constant matrices of the (linear) first-order symbol factor."""
    _check_chirality(chirality)
    dim = symbol_dimension(n)
    pi_e, pi_o = _parity_projectors(n)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    sign = 1.0 if chirality == EVEN else -1.0
    grad = np.zeros((2 * n, dim, dim), dtype=complex)
    grad[0] = sign * 1j * inv_sqrt2 * (pi_e - pi_o)
    grad[n] = -inv_sqrt2 * (pi_e + pi_o)
    sd_grad = _sd_gradient(n)
    nv = n - 1
    for k in range(nv):
        off_e = pi_e @ sd_grad[k] @ pi_o - pi_o @ sd_grad[k] @ pi_e
        off_c = pi_e @ sd_grad[nv + k] @ pi_o - pi_o @ sd_grad[nv + k] @ pi_e
        grad[1 + k] = sign * inv_sqrt2 * off_e
        grad[n + 1 + k] = sign * inv_sqrt2 * off_c
    return grad


def _other(chirality: str) -> str:
    return ODD if chirality == EVEN else EVEN


def _evaluate_d1(chirality: str, n: int, components) -> np.ndarray:
    return np.tensordot(np.asarray(components), d1_gradient(chirality, n), axes=1)


def d1(chirality: str, xi: Covector) -> SymbolMatrix:
    """First-order symbol factor: linear in the covector, parity-exchanging."""
    _check_chirality(chirality)
    return SymbolMatrix(_evaluate_d1(chirality, xi.n, xi.components()), chirality)


def boundary_isomorphism(chirality: str, side: int, n: int) -> SymbolMatrix:
    """Diagonal identification of boundary values with interior traces.

    Scales the leading parity block by ``side / sqrt(2)`` and the other block
    by the opposite sign; the roles swap between chiralities.
    """
    _check_chirality(chirality)
    _check_side(side)
    pi_e, pi_o = _parity_projectors(n)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    if chirality == EVEN:
        m = side * inv_sqrt2 * (pi_e - pi_o)
    else:
        m = side * inv_sqrt2 * (pi_o - pi_e)
    return SymbolMatrix(m.astype(complex), chirality)


def _boundary_components(xi_prime: Covector, xi1_value) -> np.ndarray:
    comps = xi_prime.components().astype(complex)
    comps[0] = xi1_value
    return comps


def _require_boundary(xi_prime: Covector):
    if xi_prime.xi1 != 0.0:
        raise ValueError("boundary covector must have xi1 = 0")
    if xi_prime.boundary_norm == 0.0:
        raise ZeroCovectorError("boundary covector must be nonzero")


def calderon_symbol0(chirality: str, side: int, xi_prime: Covector) -> SymbolMatrix:
    """Order-zero boundary projector symbol for one side of the boundary.

    Built as the opposite-chirality first-order factor evaluated at
    ``xi1 = side * i |xi'|``, scaled by ``1/|xi'|`` and composed with the
    boundary isomorphism.  Idempotent; the two sides sum to the identity.
    """
    _check_chirality(chirality)
    _check_side(side)
    _require_boundary(xi_prime)
    n = xi_prime.n
    ell = xi_prime.boundary_norm
    comps = _boundary_components(xi_prime, side * 1j * ell)
    core = _evaluate_d1(_other(chirality), n, comps) / ell
    return SymbolMatrix(core @ boundary_isomorphism(chirality, side, n).matrix, chirality)


def comparison_symbol0(chirality: str, xi_prime: Covector) -> SymbolMatrix:
    """Order-zero comparison symbol: scalar diagonal plus tangential coupling.

    All its singular values coincide.  It vanishes exactly where the
    tangential part is zero and the contact component equals ``-|xi'|``
    (the positive contact direction), and is the identity at ``+|xi'|``.
    """
    _check_chirality(chirality)
    _require_boundary(xi_prime)
    n = xi_prime.n
    ell = xi_prime.boundary_norm
    pi_e, pi_o = _parity_projectors(n)
    sd = sd_matrix(n, xi_prime.xi_perp)
    off = pi_e @ sd @ pi_o - pi_o @ sd @ pi_e
    sign = -1.0 if chirality == EVEN else 1.0
    m = (ell + xi_prime.xi_contact) * np.eye(symbol_dimension(n)) + sign * off
    return SymbolMatrix(m / (2.0 * ell), chirality)


@dataclass(frozen=True, eq=False)
class HessianData:
    """Real quadratic data of a boundary defining function.

    ``matrix_a`` is the symmetric real form of the Hermitian part (block
    pattern ``[[a0, -a1], [a1, a0]]``); ``matrix_b`` the symmetric-complex
    part (``[[b0, -b1], [-b1, -b0]]``).  ``beta`` is the tangential trace
    ``tr(A)/2 - A[0, 0]``.
    """

    alpha: float
    matrix_a: np.ndarray
    matrix_b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.matrix_a, dtype=float)
        b = np.asarray(self.matrix_b, dtype=float)
        object.__setattr__(self, "matrix_a", a)
        object.__setattr__(self, "matrix_b", b)
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] % 2 != 0:
            raise ValueError("matrix_a must be square with even dimension")
        if b.shape != a.shape:
            raise ValueError("matrix_b must match matrix_a in shape")
        n = a.shape[0] // 2
        scale = 1.0 + np.abs(a).max() + np.abs(b).max()
        tol = 1e-12 * scale
        if np.abs(a - a.T).max() > tol:
            raise ValueError("matrix_a must be symmetric")
        if (
            np.abs(a[:n, :n] - a[n:, n:]).max() > tol
            or np.abs(a[:n, n:] + a[n:, :n]).max() > tol
        ):
            raise ValueError("matrix_a must have the [[a0, -a1], [a1, a0]] pattern")
        if (
            np.abs(b[:n, :n] + b[n:, n:]).max() > tol
            or np.abs(b[:n, n:] - b[n:, :n]).max() > tol
            or np.abs(b[:n, n:] - b[n:, :n].T).max() > tol
        ):
            raise ValueError("matrix_b must have the [[b0, -b1], [-b1, -b0]] pattern")

    @property
    def n(self) -> int:
        return self.matrix_a.shape[0] // 2

    @property
    def beta(self) -> float:
        return 0.5 * float(np.trace(self.matrix_a)) - float(self.matrix_a[0, 0])

    @property
    def contact_adapted(self) -> bool:
        """True when the first complex column of the Hermitian part is trivial."""
        col = self.matrix_a[:, 0].copy()
        col[0] = 0.0
        return bool(np.abs(col).max() == 0.0) if col.size else True

    @classmethod
    def from_complex(cls, alpha: float, a: np.ndarray, b: np.ndarray) -> "HessianData":
        """Assemble the real forms from a Hermitian ``a`` and symmetric ``b``."""
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        if np.abs(a - a.conj().T).max() > 1e-12 * (1.0 + np.abs(a).max()):
            raise ValueError("a must be Hermitian")
        if np.abs(b - b.T).max() > 1e-12 * (1.0 + np.abs(b).max()):
            raise ValueError("b must be symmetric")
        a0, a1 = a.real, a.imag
        b0, b1 = b.real, b.imag
        big_a = np.block([[a0, -a1], [a1, a0]])
        big_b = np.block([[b0, -b1], [-b1, -b0]])
        return cls(alpha, big_a, big_b)

    @classmethod
    def kahler(cls, n: int, alpha: float = 1.0) -> "HessianData":
        """Flat model: identity Hermitian part, vanishing symmetric part."""
        return cls.from_complex(alpha, np.eye(n), np.zeros((n, n)))


def random_covector(rng, n: int, boundary: bool = False, contact: bool = False) -> Covector:
    """Seeded covector with comfortably nonzero norms."""
    while True:
        comps = rng.normal(size=2 * n)
        if contact:
            comps[np.arange(2 * n) != n] = 0.0
        if boundary or contact:
            comps[0] = 0.0
        xi = Covector(
            float(comps[0]),
            float(comps[n]),
            tuple(comps[1:n]) + tuple(comps[n + 1 :]),
        )
        if contact and abs(xi.xi_contact) > 0.3:
            return xi
        if not contact and xi.boundary_norm > 0.3 and xi.norm > 0.3:
            return xi


def random_hessian(rng, n: int, contact_adapted: bool = True) -> HessianData:
    """Seeded Hessian data; by default the Hermitian part is contact-adapted."""
    h = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    a = 0.5 * (h + h.conj().T)
    if contact_adapted:
        a[0, 1:] = 0.0
        a[1:, 0] = 0.0
        a[0, 0] = a[0, 0].real
    s = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    b = 0.5 * (s + s.T)
    alpha = float(rng.uniform(0.5, 1.5))
    return HessianData.from_complex(alpha, a, b)


def _xi_square(components) -> complex:
    # analytic continuation of |xi|^2: a plain sum of squares, no conjugation
    comps = np.asarray(components)
    return complex(np.sum(comps * comps))


def _q_matrix(order: int, chirality: str, n: int, components,
              hess: HessianData | None) -> np.ndarray:
    comps = np.asarray(components, dtype=complex)
    norm_sq = _xi_square(comps)
    if norm_sq == 0:
        raise ZeroCovectorError("q-symbol undefined at the zero covector")
    d1m = _evaluate_d1(chirality, n, comps)
    if order == -1:
        return 2.0 * d1m / norm_sq
    if order == -2:
        if hess is None:
            raise ValueError("order -2 requires Hessian data")
        if hess.n != n:
            raise ValueError(f"Hessian is for n = {hess.n}, covector for n = {n}")
        a_xi = hess.matrix_a @ comps
        trace_a = float(np.trace(hess.matrix_a))
        grad = d1_gradient(chirality, n)
        pairing = np.tensordot(a_xi, grad, axes=1)
        term = (
            -trace_a * d1m / norm_sq**2
            + 4.0 * d1m * np.dot(a_xi, comps) / norm_sq**3
            - 2.0 * pairing / norm_sq**2
        )
        return 2j * comps[0] * hess.alpha * term
    raise ValueError(f"order must be -1 or -2, got {order}")


def q_symbol(order: int, chirality: str, xi: Covector,
             hess: HessianData | None = None) -> SymbolMatrix:
    """Interior expansion symbols: the leading inverse and its Hessian correction.

    ``order = -1`` gives ``2 d1 / |xi|^2``; ``order = -2`` the correction that
    is linear in the Hessian data.
    """
    _check_chirality(chirality)
    return SymbolMatrix(
        _q_matrix(order, chirality, xi.n, xi.components(), hess), chirality
    )


def q_symbol_integrand(order: int, chirality: str, xi_prime: Covector,
                       hess: HessianData | None = None):
    """Callable ``xi1 -> matrix`` for contour integration in the first slot."""
    _check_chirality(chirality)
    _require_boundary(xi_prime)
    n = xi_prime.n
    base = xi_prime.components().astype(complex)

    def integrand(xi1):
        comps = base.copy()
        comps[0] = xi1
        return _q_matrix(order, chirality, n, comps, hess)

    ell = xi_prime.boundary_norm
    integrand.chirality = chirality
    integrand.poles = (1j * ell, -1j * ell)
    return integrand


def trace_term_integrand(chirality: str, xi_prime: Covector, hess: HessianData):
    """Callable ``xi1 -> 2 i xi1 alpha tr(A) d1 / |xi|^4`` for contour integration.

    The Hessian-trace-weighted piece of the second-order expansion; its
    contour integral has the closed form returned by
    :func:`closed_form_trace_contour`.
    """
    _check_chirality(chirality)
    _require_boundary(xi_prime)
    n = xi_prime.n
    base = xi_prime.components().astype(complex)
    trace_a = float(np.trace(hess.matrix_a))
    alpha = hess.alpha

    def integrand(xi1):
        comps = base.copy()
        comps[0] = xi1
        norm_sq = _xi_square(comps)
        return (2j * xi1 * alpha * trace_a / norm_sq**2) * _evaluate_d1(chirality, n, comps)

    ell = xi_prime.boundary_norm
    integrand.chirality = chirality
    integrand.poles = (1j * ell, -1j * ell)
    return integrand


def contour_integral(integrand, side: int, xi_prime: Covector,
                     num_points: int = 512):
    """(1/2 pi) times the contour integral of a matrix-valued integrand.

    Integrates over a circle of radius ``|xi'|/2`` around ``side * i |xi'|``,
    positively oriented for the upper circle and negatively for the lower
    one.  The integrand must be meromorphic with its poles away from the
    circle; poles it declares through a ``poles`` attribute (the integrand
    factories in this module do) are checked against the quadrature nodes.
    Returns a :class:`SymbolMatrix` when the integrand declares its
    ``chirality``, otherwise the bare matrix.
    """
    _check_side(side)
    ell = xi_prime.boundary_norm
    if ell == 0.0:
        raise ZeroCovectorError("contour undefined for a zero boundary covector")
    radius = 0.5 * ell
    center = side * 1j * ell
    angles = 2.0 * np.pi * np.arange(num_points) / num_points
    nodes = center + radius * np.exp(1j * angles)
    for pole in getattr(integrand, "poles", (1j * ell, -1j * ell)):
        if np.min(np.abs(nodes - pole)) / ell < 1e-6:
            raise PoleOnContourError(f"pole {pole} sits on the quadrature contour")
    values = np.array([integrand(z) for z in nodes])
    if not np.all(np.isfinite(values)):
        raise PoleOnContourError("integrand is singular on the quadrature contour")
    orientation = 1.0 if side > 0 else -1.0
    weights = np.exp(1j * angles)
    value = orientation * (1j * radius / num_points) * np.tensordot(weights, values, axes=1)
    chirality = getattr(integrand, "chirality", None)
    return SymbolMatrix(value, chirality) if chirality is not None else value


def closed_form_trace_contour(chirality: str, hess: HessianData,
                              xi_prime: Covector) -> np.ndarray:
    """Closed form of the contour integral of the Hessian-trace term.

    Equals ``i alpha tr(A) / (2 |xi'|)`` times the first gradient matrix of
    ``d1`` — the same value for both contours.
    """
    _check_chirality(chirality)
    _require_boundary(xi_prime)
    ell = xi_prime.boundary_norm
    trace_a = float(np.trace(hess.matrix_a))
    return (1j * hess.alpha * trace_a / (2.0 * ell)) * d1_gradient(chirality, xi_prime.n)[0]


def closed_form_contact_contour(chirality: str, hess: HessianData,
                                xi_prime: Covector) -> np.ndarray:
    """Closed form of the full order(-2) contour integral on the contact line.

    Equals ``-i alpha beta / |xi'|`` times the first gradient matrix of
    ``d1``; exact as a full matrix for contact-adapted Hessian data.
    """
    _check_chirality(chirality)
    if xi_prime.perp_norm != 0.0:
        raise OffContactLineError("closed form only valid on the contact line")
    ell = abs(xi_prime.xi_contact)
    if ell == 0.0:
        raise ZeroCovectorError("contact covector must be nonzero")
    return (-1j * hess.alpha * hess.beta / ell) * d1_gradient(chirality, xi_prime.n)[0]


def calderon_symbol_minus1(chirality: str, side: int, hess: HessianData,
                           xi_prime: Covector) -> SymbolMatrix:
    """Order(-1) correction of the boundary projector on the contact line.

    The opposite-chirality contour value composed with the boundary
    isomorphism; its matrix is a multiple of the identity.
    """
    _check_chirality(chirality)
    _check_side(side)
    core = closed_form_contact_contour(_other(chirality), hess, xi_prime)
    n = xi_prime.n
    return SymbolMatrix(core @ boundary_isomorphism(chirality, side, n).matrix, chirality)
