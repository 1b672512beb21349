"""Projector-pair index tests.

The rank difference is the oracle: every index route (restricted kernels,
remainder traces, brute-force ranks) must produce it, over randomized pairs
and for the structured Toeplitz / block-embedding instances whose expected
values are written down by hand.
"""

from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fockindex.errors import (
    AdmissibilityError,
    DimensionMismatchError,
    IllConditionedKernelError,
    NonIntegerTraceError,
    SmallnessError,
)
from fockindex.pairs import (
    Projector,
    ProjectorPair,
    WeightedScale,
    agranovich_dynin_shadow,
    comparison_operator,
    coordinate_projector,
    logarithmic_property,
    neumann_continuation,
    random_projector,
    relative_index_kernel,
    relative_index_rank,
    relative_index_trace,
    toeplitz_winding,
    weighted_trace,
)


def test_projector_validation():
    with pytest.raises(AdmissibilityError):
        Projector(np.array([[0.5, 0.0], [0.0, 1.0]]))
    with pytest.raises(DimensionMismatchError):
        Projector(np.zeros((2, 3)))
    p = Projector(np.diag([1.0, 0.0, 1.0]).astype(complex))
    assert p.rank == 2
    assert p.self_adjoint
    assert p.complement().rank == 1
    # declared self-adjoint must actually be self-adjoint
    skew = np.array([[1.0, 1.0], [0.0, 0.0]])  # idempotent, not hermitian
    assert np.abs(skew @ skew - skew).max() == 0.0
    with pytest.raises(AdmissibilityError):
        Projector(skew, self_adjoint=True)
    assert not Projector(skew).self_adjoint


def test_identical_projectors_give_zero():
    rng = np.random.default_rng(0)
    p = random_projector(rng, 12, 5)
    pair = ProjectorPair.from_projectors(p, p)
    assert relative_index_kernel(pair) == 0
    t, u, k1, k2 = comparison_operator(p, p)
    assert np.abs(t - np.eye(12)).max() < 1e-12
    assert np.abs(k1).max() < 1e-9 and np.abs(k2).max() < 1e-9
    assert relative_index_trace(pair).index == 0


def test_rank_seven_vs_four_gives_three():
    rng = np.random.default_rng(7)
    p = random_projector(rng, 20, 7)
    r = random_projector(rng, 20, 4)
    pair = ProjectorPair.from_projectors(p, r)
    assert relative_index_kernel(pair) == 3
    assert relative_index_trace(pair).index == 3
    assert relative_index_rank(pair) == 3


def test_triple_agreement_and_antisymmetry_seeded():
    rng = np.random.default_rng(2024)
    for _ in range(60):
        dim = int(rng.integers(2, 41))
        p = random_projector(rng, dim, int(rng.integers(0, dim + 1)))
        r = random_projector(rng, dim, int(rng.integers(0, dim + 1)))
        pair = ProjectorPair.from_projectors(p, r)
        expected = relative_index_rank(pair)
        assert relative_index_kernel(pair) == expected
        assert relative_index_trace(pair).index == expected
        flipped = ProjectorPair.from_projectors(p.complement(), r.complement())
        assert relative_index_kernel(flipped) == -expected


def test_non_self_adjoint_pairs_agree():
    rng = np.random.default_rng(31)
    for _ in range(10):
        dim = int(rng.integers(3, 25))
        p = random_projector(rng, dim, int(rng.integers(1, dim)), self_adjoint=False)
        r = random_projector(rng, dim, int(rng.integers(1, dim)), self_adjoint=False)
        assert not p.self_adjoint
        pair = ProjectorPair.from_projectors(p, r)
        expected = relative_index_rank(pair)
        assert relative_index_kernel(pair) == expected
        assert relative_index_trace(pair).index == expected


def test_parametrix_perturbation_keeps_trace_index():
    rng = np.random.default_rng(5)
    p = random_projector(rng, 30, 11)
    r = random_projector(rng, 30, 4)
    base = relative_index_trace(ProjectorPair.from_projectors(p, r))
    assert base.index == 7
    for _ in range(5):
        noise = rng.normal(size=(30, 30)) + 1j * rng.normal(size=(30, 30))
        pert = ProjectorPair.from_projectors(p, r, smoothing=noise)
        with_noise = relative_index_trace(pert)
        assert with_noise.index == base.index
        # the raw values differ microscopically but round identically
        assert abs(with_noise.raw - base.raw) < 1e-6


def test_square_comparison_has_index_zero():
    rng = np.random.default_rng(11)
    for _ in range(10):
        dim = int(rng.integers(2, 30))
        p = random_projector(rng, dim, int(rng.integers(0, dim + 1)))
        r = random_projector(rng, dim, int(rng.integers(0, dim + 1)))
        _, _, k1, k2 = comparison_operator(p, r)
        value = np.trace(k2).real - np.trace(k1).real
        assert round(value) == 0
        assert abs(value - round(value)) < 1e-8


def test_exact_inverse_parametrix_means_equal_ranks():
    """An invertible comparison forces rank P = rank R; remainders vanish."""
    rng = np.random.default_rng(13)
    p = random_projector(rng, 16, 6)
    r = random_projector(rng, 16, 6)
    t, u, k1, k2 = comparison_operator(p, r)
    assert np.abs(k1).max() < 1e-9
    assert np.abs(k2).max() < 1e-9
    pair = ProjectorPair.from_projectors(p, r)
    assert relative_index_trace(pair).index == 0 == relative_index_kernel(pair)


def test_degenerate_orthogonal_rank_ones_warn_and_give_zero():
    e0 = coordinate_projector(6, [0])
    e1 = coordinate_projector(6, [1])
    pair = ProjectorPair.from_projectors(e0, e1)
    with pytest.warns(UserWarning, match="degenerate"):
        assert relative_index_kernel(pair) == 0


def test_ill_conditioned_kernel_is_refused():
    # a diagonal idempotent-to-tolerance matrix with an entry in the gap
    # cannot be built (idempotency fails), so corrupt the pair after the
    # fact: feed the kernel computation a projector-like matrix directly
    eps = 1e-10
    m = np.diag([1.0, eps, 0.0]).astype(complex)
    # not idempotent at tolerance, as expected
    with pytest.raises(AdmissibilityError):
        Projector(m)
    # but a genuine near-tangent pair can land in the gap: build projectors
    # onto lines at angle phi where sin(phi) falls inside it
    phi = 1e-10
    v1 = np.array([1.0, 0.0])
    v2 = np.array([np.cos(phi), np.sin(phi)])
    p = Projector(np.outer(v1, v1).astype(complex))
    r = Projector(np.outer(v2, v2).astype(complex))
    pair = ProjectorPair.from_projectors(p.complement(), r)
    with pytest.raises(IllConditionedKernelError):
        relative_index_kernel(pair)


def test_inconsistent_parametrix_is_refused_at_construction():
    rng = np.random.default_rng(17)
    p = random_projector(rng, 8, 3)
    r = random_projector(rng, 8, 5)
    good = ProjectorPair.from_projectors(p, r)
    with pytest.raises(AdmissibilityError, match="inconsistent"):
        ProjectorPair(p, r, good.parametrix, good.k1 + 0.01, good.k2)


def test_non_integer_trace_is_refused():
    """The integrality rail on the trace route.

    For validated pairs the trace value is exactly parametrix-independent
    (it collapses to rank P - rank R), so the rail is only reachable when
    the stored remainders have drifted from what construction checked;
    emulate that with a bare stand-in carrying corrupted remainders.
    """
    rng = np.random.default_rng(17)
    p = random_projector(rng, 8, 3)
    r = random_projector(rng, 8, 5)
    good = ProjectorPair.from_projectors(p, r)
    drifted = SimpleNamespace(
        p=p, r=r, k1=good.k1, k2=good.k2 + 0.01 * np.eye(8)
    )
    with pytest.raises(NonIntegerTraceError):
        relative_index_trace(drifted)


def test_logarithmic_property_on_random_triples():
    rng = np.random.default_rng(23)
    for _ in range(15):
        dim = int(rng.integers(3, 30))
        p = random_projector(rng, dim, int(rng.integers(0, dim + 1)))
        q = random_projector(rng, dim, int(rng.integers(0, dim + 1)))
        r = random_projector(rng, dim, int(rng.integers(0, dim + 1)))
        report = logarithmic_property(p, q, r)
        assert report["consistent"]
        assert report["sum_of_steps"] == report["first_step"] + report["second_step"]


def test_logarithmic_property_specific_ranks():
    rng = np.random.default_rng(29)
    p = random_projector(rng, 24, 9)
    q = random_projector(rng, 24, 6)
    r = random_projector(rng, 24, 2)
    report = logarithmic_property(p, q, r)
    assert report["first_step"] == 3
    assert report["second_step"] == 4
    assert report["composite_index"] == 7
    # middle equal to an endpoint collapses to the plain relative index
    collapsed = logarithmic_property(p, p, r)
    assert collapsed["composite_index"] == relative_index_kernel(
        ProjectorPair.from_projectors(p, r)
    )
    # matching endpoints cancel
    closed = logarithmic_property(p, q, p)
    assert closed["composite_index"] == 0


def test_neumann_continuation_constant_family():
    a = np.array([[2.0, 1.0], [0.0, 3.0]])
    result = neumann_continuation(lambda tau: a, 0.0, 5.0)
    assert result.order == 0
    assert result.contraction_norm == 0.0
    assert np.abs(result.matrix - np.linalg.inv(a)).max() < 1e-14


def test_neumann_continuation_nilpotent_direction():
    nil = np.zeros((5, 5))
    nil[0, 1] = nil[1, 2] = nil[2, 3] = 0.4
    assert abs(np.linalg.norm(nil, 2) - 0.4) < 1e-12
    result = neumann_continuation(lambda tau: np.eye(5) + tau * nil, 0.0, 1.0)
    exact = np.linalg.inv(np.eye(5) + nil)
    assert np.abs(result.matrix - exact).max() < 1e-10
    assert abs(result.contraction_norm - 0.4) < 1e-12


def test_neumann_smallness_violation_hints_midpoint():
    big = np.zeros((4, 4))
    big[0, 1] = 0.6
    with pytest.raises(SmallnessError) as excinfo:
        neumann_continuation(lambda tau: np.eye(4) + tau * big, 0.0, 1.0)
    assert excinfo.value.hint == "continue in two steps via tau = 0.5"
    # following the hint succeeds
    half = neumann_continuation(lambda tau: np.eye(4) + tau * big, 0.0, 0.5)
    assert np.abs(half.matrix - np.linalg.inv(np.eye(4) + 0.5 * big)).max() < 1e-10


@pytest.mark.parametrize("k", range(-5, 6))
def test_toeplitz_winding_window64(k):
    assert toeplitz_winding(64, k) == k


def test_toeplitz_winding_rejects_oversized():
    with pytest.raises(AdmissibilityError):
        toeplitz_winding(10, 6)
    with pytest.raises(AdmissibilityError):
        toeplitz_winding(10, -6)
    with pytest.raises(AdmissibilityError):
        toeplitz_winding(0, 0)


@settings(max_examples=25, deadline=None)
@given(window=st.integers(4, 24), k=st.integers(-12, 12))
def test_toeplitz_winding_property(window, k):
    if abs(k) > window / 2:
        with pytest.raises(AdmissibilityError):
            toeplitz_winding(window, k)
    else:
        assert toeplitz_winding(window, k) == k


def test_agranovich_dynin_shadow_ranks():
    rng = np.random.default_rng(41)
    s1 = random_projector(rng, 9, 5)
    s2 = random_projector(rng, 9, 2)
    report = agranovich_dynin_shadow(s1, s2)
    assert report["difference"] == 3
    assert report["rank_difference"] == 3
    assert report["corner_index"] == 3
    assert report["consistent"]
    swapped = agranovich_dynin_shadow(s2, s1)
    assert swapped["difference"] == -3
    same = agranovich_dynin_shadow(s1, s1)
    assert same["difference"] == 0 and same["consistent"]
    with pytest.raises(DimensionMismatchError):
        agranovich_dynin_shadow(s1, random_projector(rng, 5, 2))


def test_agranovich_dynin_seeded_family():
    rng = np.random.default_rng(43)
    for _ in range(12):
        dim = int(rng.integers(2, 12))
        s1 = random_projector(rng, dim, int(rng.integers(0, dim + 1)))
        s2 = random_projector(rng, dim, int(rng.integers(0, dim + 1)))
        report = agranovich_dynin_shadow(s1, s2)
        assert report["consistent"]


def test_weighted_scale_validation_and_norms():
    with pytest.raises(AdmissibilityError):
        WeightedScale(2, (0.5, 2.0))
    with pytest.raises(DimensionMismatchError):
        WeightedScale(3, (1.0, 2.0))
    scale = WeightedScale(4, (1.0, 2.0, 4.0, 8.0))
    x = np.array([1.0, 1.0, 1.0, 1.0])
    assert scale.norm(x, 0.0) <= scale.norm(x, 1.0) <= scale.norm(x, 2.0)


def test_weighted_trace_is_similarity_invariant():
    rng = np.random.default_rng(47)
    scale = WeightedScale(12, tuple(1.0 + 3.0 * rng.random(12)))
    p = random_projector(rng, 12, 5)
    r = random_projector(rng, 12, 7)
    _, _, k1, k2 = comparison_operator(p, r)
    inner = p.matrix @ k2 @ p.matrix
    for s in (0.0, 1.0, 2.5):
        assert abs(weighted_trace(scale, inner, s) - np.trace(inner).real) < 1e-8
