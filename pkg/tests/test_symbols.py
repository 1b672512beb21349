"""Symbol-calculus tests.

The n = 2 symbols are small enough to derive by hand; those frozen 2x2
matrices pin every sign convention.  The contour quadrature is checked
against closed forms obtained independently by residue calculus, and the
closed forms are cross-checked against each other through the boundary
isomorphism.
"""

import numpy as np
import pytest

from fockindex.errors import (
    OffContactLineError,
    PoleOnContourError,
    ZeroCovectorError,
)
from fockindex.symbols import (
    EVEN,
    ODD,
    Covector,
    HessianData,
    boundary_isomorphism,
    calderon_symbol0,
    calderon_symbol_minus1,
    closed_form_contact_contour,
    closed_form_trace_contour,
    comparison_symbol0,
    contour_integral,
    d1,
    d1_gradient,
    q_symbol,
    q_symbol_integrand,
    random_covector,
    random_hessian,
    sd_matrix,
    sector_slices,
    symbol_dimension,
    trace_term_integrand,
)

CHIRALITIES = (EVEN, ODD)
SIDES = (+1, -1)


def _contact_ray(n, contact):
    return Covector(0.0, contact, (0.0,) * (2 * (n - 1)))


def _scaled(xi, lam):
    return Covector(lam * xi.xi1, lam * xi.xi_contact,
                    tuple(lam * np.array(xi.xi_perp)))


def test_covector_layout_and_norms():
    xi = Covector(1.0, 3.0, (2.0, 4.0))
    assert xi.n == 2
    assert np.array_equal(xi.components(), [1.0, 2.0, 3.0, 4.0])
    assert xi.norm == pytest.approx(np.sqrt(30.0))
    assert xi.boundary_norm == pytest.approx(np.sqrt(29.0))
    assert xi.perp_norm == pytest.approx(np.sqrt(20.0))
    with pytest.raises(ValueError):
        Covector(0.0, 1.0, (1.0,))


def test_symbol_dimension_and_sector_split():
    assert symbol_dimension(2) == 2
    assert symbol_dimension(3) == 4
    with pytest.raises(ValueError):
        symbol_dimension(1)
    even, odd = sector_slices(3)
    assert even == slice(0, 2) and odd == slice(2, 4)


def test_sd_n2_frozen_matrix():
    # by hand: contraction/wedge on one label, even-degree state first
    xi2, xi4 = 0.7, -1.3
    expected = np.array([[0.0, 1j * xi2 + xi4], [-1j * xi2 + xi4, 0.0]])
    assert np.abs(sd_matrix(2, (xi2, xi4)) - expected).max() < 1e-15


def test_sd_self_adjoint_with_scalar_square():
    rng = np.random.default_rng(11)
    for n in (2, 3, 4):
        eye = np.eye(symbol_dimension(n))
        for _ in range(20):
            xp = rng.normal(size=2 * (n - 1))
            sd = sd_matrix(n, xp)
            assert np.abs(sd - sd.conj().T).max() < 1e-14
            assert np.abs(sd @ sd - np.dot(xp, xp) * eye).max() < 1e-13


def test_d1_n2_frozen_matrix():
    a, b, c, e = 0.9, -0.4, 1.2, 0.3  # xi1, perp0, contact, perp1
    xi = Covector(a, c, (b, e))
    s = 1.0 / np.sqrt(2.0)
    even = s * np.array([[1j * a - c, 1j * b + e], [1j * b - e, -1j * a - c]])
    odd = s * np.array([[-1j * a - c, -1j * b - e], [-1j * b + e, 1j * a - c]])
    assert np.abs(d1(EVEN, xi).matrix - even).max() < 1e-15
    assert np.abs(d1(ODD, xi).matrix - odd).max() < 1e-15


def test_d1_factorization_is_scalar():
    rng = np.random.default_rng(23)
    for n in (2, 3, 4):
        eye = np.eye(symbol_dimension(n))
        for _ in range(30):
            xi = random_covector(rng, n)
            half_sq = 0.5 * xi.norm**2
            oe = d1(ODD, xi).matrix @ d1(EVEN, xi).matrix
            eo = d1(EVEN, xi).matrix @ d1(ODD, xi).matrix
            assert np.abs(oe - half_sq * eye).max() < 1e-12
            assert np.abs(eo - half_sq * eye).max() < 1e-12


def test_d1_gradient_reassembles_d1():
    rng = np.random.default_rng(5)
    xi = random_covector(rng, 3)
    comps = xi.components()
    for ch in CHIRALITIES:
        total = np.tensordot(comps, d1_gradient(ch, 3), axes=1)
        assert np.abs(total - d1(ch, xi).matrix).max() == 0.0


def test_boundary_isomorphism_scalars():
    s = 1.0 / np.sqrt(2.0)
    for n in (2, 3):
        even_slc, odd_slc = sector_slices(n)
        eye = np.eye(symbol_dimension(n))
        for ch in CHIRALITIES:
            plus = boundary_isomorphism(ch, +1, n).matrix
            minus = boundary_isomorphism(ch, -1, n).matrix
            tangential = even_slc if ch == EVEN else odd_slc
            normal = odd_slc if ch == EVEN else even_slc
            assert np.allclose(np.diag(plus)[tangential], s)
            assert np.allclose(np.diag(plus)[normal], -s)
            assert np.abs(plus - np.diag(np.diag(plus))).max() == 0.0
            # opposite signs composed: -(1/2) Id
            assert np.abs(plus @ minus + 0.5 * eye).max() < 1e-15
    with pytest.raises(ValueError):
        boundary_isomorphism(EVEN, 2, 2)


def test_calderon0_idempotent_and_complementary():
    rng = np.random.default_rng(31)
    for n in (2, 3):
        eye = np.eye(symbol_dimension(n))
        for _ in range(50):
            xp = random_covector(rng, n, boundary=True)
            for ch in CHIRALITIES:
                plus = calderon_symbol0(ch, +1, xp).matrix
                minus = calderon_symbol0(ch, -1, xp).matrix
                assert np.abs(plus @ plus - plus).max() < 1e-12
                assert np.abs(minus @ minus - minus).max() < 1e-12
                assert np.abs(plus + minus - eye).max() < 1e-12


def test_calderon0_zero_homogeneous():
    rng = np.random.default_rng(37)
    xp = random_covector(rng, 3, boundary=True)
    base = calderon_symbol0(ODD, +1, xp).matrix
    for lam in (0.25, 4.0, 117.0):
        assert np.abs(calderon_symbol0(ODD, +1, _scaled(xp, lam)).matrix - base).max() < 1e-12


def test_calderon0_contact_ray_block_structure():
    # on the ray with negative contact component, the even projector for
    # the upper side keeps exactly the even-degree block
    for n in (2, 3):
        dim = symbol_dimension(n)
        even_slc, odd_slc = sector_slices(n)
        pos_dir = calderon_symbol0(EVEN, +1, _contact_ray(n, -2.0)).matrix
        expected = np.zeros((dim, dim))
        expected[even_slc, even_slc] = np.eye(dim // 2)
        assert np.abs(pos_dir - expected).max() < 1e-14
        neg_dir = calderon_symbol0(EVEN, +1, _contact_ray(n, 2.0)).matrix
        flipped = np.zeros((dim, dim))
        flipped[odd_slc, odd_slc] = np.eye(dim // 2)
        assert np.abs(neg_dir - flipped).max() < 1e-14


def test_calderon0_rejects_bad_covectors():
    with pytest.raises(ZeroCovectorError):
        calderon_symbol0(EVEN, +1, Covector(0.0, 0.0, (0.0, 0.0)))
    with pytest.raises(ValueError):
        calderon_symbol0(EVEN, +1, Covector(1.0, 1.0, (0.0, 0.0)))


def test_comparison_symbol_has_equal_singular_values():
    rng = np.random.default_rng(41)
    for n in (2, 3):
        for _ in range(50):
            xp = random_covector(rng, n, boundary=True)
            ell = xp.boundary_norm
            expected = np.sqrt((ell + xp.xi_contact) ** 2 + xp.perp_norm**2) / (2 * ell)
            for ch in CHIRALITIES:
                sv = np.linalg.svd(comparison_symbol0(ch, xp).matrix, compute_uv=False)
                assert np.abs(sv - expected).max() < 1e-12
                if xp.perp_norm > 0:
                    assert sv.min() > 0


def test_comparison_symbol_degenerates_only_on_one_ray():
    for n in (2, 3):
        eye = np.eye(symbol_dimension(n))
        for ch in CHIRALITIES:
            vanishing = comparison_symbol0(ch, _contact_ray(n, -2.0)).matrix
            assert np.abs(vanishing).max() < 1e-15
            full = comparison_symbol0(ch, _contact_ray(n, 2.0)).matrix
            assert np.abs(full - eye).max() < 1e-15


def test_q_minus1_is_right_inverse_of_d1():
    rng = np.random.default_rng(43)
    for n in (2, 3):
        eye = np.eye(symbol_dimension(n))
        for _ in range(20):
            xi = random_covector(rng, n)
            assert np.abs(d1(ODD, xi).matrix @ q_symbol(-1, EVEN, xi).matrix - eye).max() < 1e-12
            assert np.abs(d1(EVEN, xi).matrix @ q_symbol(-1, ODD, xi).matrix - eye).max() < 1e-12


def test_q_minus2_scaling_and_hessian_linearity():
    rng = np.random.default_rng(47)
    n = 3
    xi = random_covector(rng, n)
    hess = random_hessian(rng, n)
    none = HessianData.from_complex(hess.alpha, np.zeros((n, n)), np.zeros((n, n)))
    for ch in CHIRALITIES:
        base = q_symbol(-2, ch, xi, hess).matrix
        scaled = q_symbol(-2, ch, _scaled(xi, 1.7), hess).matrix
        assert np.abs(scaled - base / 1.7**2).max() < 1e-12
        assert np.abs(q_symbol(-2, ch, xi, none).matrix).max() == 0.0
    with pytest.raises(ValueError):
        q_symbol(-3, EVEN, xi, hess)
    with pytest.raises(ValueError):
        q_symbol(-2, EVEN, xi)
    with pytest.raises(ZeroCovectorError):
        q_symbol(-1, EVEN, Covector(0.0, 0.0, (0.0,) * 4))


def test_hessian_data_structure_and_beta():
    a = np.array([[2.0, 1j], [-1j, 5.0]])
    b = np.array([[0.5, 1.0 - 2j], [1.0 - 2j, -3.0]])
    hess = HessianData.from_complex(1.25, a, b)
    assert hess.n == 2
    assert hess.beta == pytest.approx(5.0)  # tr(A)/2 - A[0,0] = 7 - 2
    assert not hess.contact_adapted
    adapted = HessianData.from_complex(1.0, np.diag([2.0, 5.0]), np.zeros((2, 2)))
    assert adapted.contact_adapted
    kahler = HessianData.kahler(3, alpha=1.0)
    assert kahler.beta == pytest.approx(2.0)
    assert kahler.contact_adapted
    with pytest.raises(ValueError):
        HessianData.from_complex(1.0, np.array([[0.0, 1.0], [0.0, 0.0]]), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        HessianData(0.0, np.eye(4), np.zeros((4, 4)))
    with pytest.raises(ValueError):
        HessianData(1.0, np.eye(4) + np.diag([0.0, 1.0, 0.0, 0.0]), np.zeros((4, 4)))


def test_random_generators_respect_flags():
    rng = np.random.default_rng(53)
    for n in (2, 3):
        xb = random_covector(rng, n, boundary=True)
        assert xb.xi1 == 0.0 and xb.boundary_norm > 0.3
        xc = random_covector(rng, n, contact=True)
        assert xc.xi1 == 0.0 and xc.perp_norm == 0.0 and abs(xc.xi_contact) > 0.3
        hess = random_hessian(rng, n)
        assert hess.contact_adapted
        free = random_hessian(rng, n, contact_adapted=False)
        assert free.matrix_a.shape == (2 * n, 2 * n)


def test_contour_reproduces_order_zero_projector():
    rng = np.random.default_rng(59)
    for n in (2, 3):
        for _ in range(5):
            xp = random_covector(rng, n, boundary=True)
            for ch in CHIRALITIES:
                source = ODD if ch == EVEN else EVEN
                for side in SIDES:
                    quad = contour_integral(q_symbol_integrand(-1, source, xp), side, xp)
                    assert quad.chirality == source
                    composed = quad.matrix @ boundary_isomorphism(ch, side, n).matrix
                    direct = calderon_symbol0(ch, side, xp).matrix
                    assert np.abs(composed - direct).max() < 1e-12


def test_contour_trace_term_closed_form():
    rng = np.random.default_rng(61)
    for n in (2, 3):
        for _ in range(5):
            xp = random_covector(rng, n, boundary=True)
            hess = random_hessian(rng, n, contact_adapted=False)
            for ch in CHIRALITIES:
                closed = closed_form_trace_contour(ch, hess, xp)
                scale = np.abs(closed).max()
                for side in SIDES:
                    quad = contour_integral(trace_term_integrand(ch, xp, hess), side, xp)
                    assert np.abs(quad.matrix - closed).max() / scale < 1e-10


def test_contour_contact_line_closed_form():
    rng = np.random.default_rng(67)
    for n in (2, 3):
        for sign in (-1.0, 1.0):
            xp = _contact_ray(n, sign * float(rng.uniform(0.5, 2.0)))
            hess = random_hessian(rng, n)
            for ch in CHIRALITIES:
                closed = closed_form_contact_contour(ch, hess, xp)
                scale = np.abs(closed).max()
                for side in SIDES:
                    quad = contour_integral(q_symbol_integrand(-2, ch, xp, hess), side, xp)
                    assert np.abs(quad.matrix - closed).max() / scale < 1e-10


def test_contact_closed_form_needs_the_contact_line():
    hess = HessianData.kahler(3)
    with pytest.raises(OffContactLineError):
        closed_form_contact_contour(EVEN, hess, Covector(0.0, 1.0, (0.1, 0.0, 0.0, 0.0)))
    with pytest.raises(ZeroCovectorError):
        closed_form_contact_contour(EVEN, hess, Covector(0.0, 0.0, (0.0,) * 4))


def test_minus1_correction_is_scalar_and_cancels_in_the_sum():
    rng = np.random.default_rng(71)
    for n in (2, 3):
        eye = np.eye(symbol_dimension(n))
        for sign in (-1.0, 1.0):
            xp = _contact_ray(n, sign * 1.3)
            hess = random_hessian(rng, n)
            ell = xp.boundary_norm
            for ch in CHIRALITIES:
                plus = calderon_symbol_minus1(ch, +1, hess, xp).matrix
                minus = calderon_symbol_minus1(ch, -1, hess, xp).matrix
                expected = -(hess.alpha * hess.beta / (2 * ell)) * eye
                assert np.abs(plus - expected).max() < 1e-13
                assert np.abs(plus + minus).max() == 0.0


def test_minus1_matches_contour_through_the_isomorphism():
    rng = np.random.default_rng(73)
    n = 3
    xp = _contact_ray(n, -0.9)
    hess = random_hessian(rng, n)
    for ch in CHIRALITIES:
        source = ODD if ch == EVEN else EVEN
        for side in SIDES:
            quad = contour_integral(q_symbol_integrand(-2, source, xp, hess), side, xp)
            composed = quad.matrix @ boundary_isomorphism(ch, side, n).matrix
            direct = calderon_symbol_minus1(ch, side, hess, xp).matrix
            assert np.abs(composed - direct).max() < 1e-10


def test_minus1_scales_linearly_in_beta():
    xp = _contact_ray(2, -1.0)
    single = calderon_symbol_minus1(EVEN, +1, HessianData.kahler(2), xp).matrix
    doubled = calderon_symbol_minus1(
        EVEN, +1, HessianData.from_complex(1.0, 2.0 * np.eye(2), np.zeros((2, 2))), xp
    ).matrix
    assert np.abs(doubled - 2.0 * single).max() < 1e-15


def test_contour_rejects_declared_pole_on_the_nodes():
    xp = Covector(0.0, 1.0, (0.0, 0.0))

    def integrand(z):
        return np.eye(2) / (z - 1.5j)

    integrand.poles = (1.5j,)  # lands exactly on the top of the upper circle
    with pytest.raises(PoleOnContourError):
        contour_integral(integrand, +1, xp)
    with pytest.raises(ZeroCovectorError):
        contour_integral(integrand, +1, Covector(0.0, 0.0, (0.0, 0.0)))
