"""
Closed-form Gaussian schemes: DPC building blocks, strong/mixed/weak families,
the rate-splitting region, its high-state limit and the baselines
"""
import math

import numpy as np
import pytest

from src.models.channel import SchemeParams, StdChannel
from src.models.errors import (
    ChannelCaseError,
    InfeasibleCancellationError,
    InfeasibleSplitError,
    UndefinedRatioError,
)
from src.services.gaussian.baseline_service import (
    BaselineKind,
    baseline_region,
    corner_points,
    inner_ignore_state,
    outer_bound,
    state_as_noise,
)
from src.services.gaussian.bounds_service import (
    general_bounds,
    general_region,
    high_state_bounds,
    high_state_region,
)
from src.services.gaussian.formulas import capacity, dpc_mac_bounds, half_log2, optimal_dpc
from src.services.gaussian.mixed_service import MixedVariant, mixed_bounds, mixed_region
from src.services.gaussian.strong_service import StrongVariant, strong_bounds, strong_region
from src.services.gaussian.weak_service import (
    WeakVariant,
    fixed_private_powers,
    private_rates,
    weak_bounds,
    weak_caps,
    weak_region,
)
from src.services.geometry.region_service import contains, point_in_region, regions_equal, transpose
from src.services.model.channel_service import swap_channel, swap_params, with_state

SEED = 99
STRONG = StdChannel(g12=10.0, g21=10.0, P1=10.0, P2=10.0, K=10.0)
MIXED = StdChannel(g12=0.2, g21=2.0, P1=10.0, P2=10.0, K=10.0)
DEGRADED = StdChannel(g12=0.2, g21=5.0, P1=10.0, P2=10.0, K=10.0)
WEAK = StdChannel(g12=0.2, g21=0.2, P1=10.0, P2=10.0, K=10.0)


def c(x: float) -> float:
    return 0.5 * math.log2(1.0 + x)


def random_channel(rng, g12_range, g21_range, swap=False) -> StdChannel:
    ch = StdChannel(
        g12=float(rng.uniform(*g12_range)), g21=float(rng.uniform(*g21_range)),
        P1=float(rng.uniform(1.0, 30.0)), P2=float(rng.uniform(1.0, 30.0)),
        K=float(rng.uniform(0.0, 30.0)), N1=float(rng.uniform(0.5, 2.0)), N2=float(rng.uniform(0.5, 2.0)),
    )
    return swap_channel(ch) if swap and rng.random() < 0.5 else ch


def test_capacity_and_log_guards():
    assert math.isclose(float(capacity(10.0)), c(10.0))
    assert float(half_log2(0.0, 1.0)) == -math.inf
    assert math.isnan(float(half_log2(-1.0, 1.0)))


def test_optimal_dpc_at_strong_gains():
    alpha1, alpha2 = optimal_dpc(10.0, 10.0, 10.0, 10.0, target=1, mu=1.0)
    assert math.isclose(float(alpha1), 10.0 / 111.0, rel_tol=1e-12)
    assert math.isclose(float(alpha2), math.sqrt(10.0) * 10.0 / 111.0, rel_tol=1e-12)
    assert math.isclose(float(alpha1), 0.09009, abs_tol=1e-5)
    assert math.isclose(float(alpha2), 0.28490, abs_tol=1e-5)


def test_optimal_dpc_edge_cases():
    assert tuple(map(float, optimal_dpc(3.0, 0.5, 0.0, 0.0, target=2, mu=0.8))) == (0.0, 0.0)
    with pytest.raises(ValueError):
        optimal_dpc(1.0, 1.0, 1.0, 1.0, target=3, mu=1.0)


def test_optimal_dpc_makes_the_mac_state_free():
    rng = np.random.default_rng(SEED)
    for _ in range(50):
        p1, p2, g = rng.uniform(0.1, 20.0, 3)
        K, mu = rng.uniform(0.0, 50.0), rng.uniform(-1.0, 1.0)
        a1, a2 = optimal_dpc(g, 1.0, p1, p2, target=1, mu=mu)
        own, other, total = dpc_mac_bounds(p1, p2, g, a1, a2, mu, K)
        assert math.isclose(float(own), c(p1), abs_tol=1e-9)
        assert math.isclose(float(other), c(g * p2), abs_tol=1e-9)
        assert math.isclose(float(total), c(p1 + g * p2), abs_tol=1e-9)


def test_strong_without_state_is_the_mac_intersection():
    r1, r2, sum_rate = strong_bounds(with_state(STRONG, 0.0), 0.0, 0.0, target=1)
    assert math.isclose(float(r1), c(10.0), abs_tol=1e-12)
    assert math.isclose(float(r2), c(10.0), abs_tol=1e-12)
    assert math.isclose(float(sum_rate), 0.5 * math.log2(111.0), abs_tol=1e-12)
    assert math.isclose(float(sum_rate), 3.397, abs_tol=1e-3)


def test_strong_bounds_match_a_scalar_oracle():
    K, g = STRONG.K, STRONG.g12
    a10, a20 = 10.0 / 111.0, math.sqrt(10.0) * 10.0 / 111.0
    G1, G2 = a10 ** 2 * K / 10.0, a20 ** 2 * K / 10.0
    D = 1.0 + G1 + G2 + K * (a20 + a10 * math.sqrt(g) - 1.0) ** 2
    r2 = 0.5 * math.log2(((1.0 + 10.0) * (1.0 + G1) + K * (a10 * math.sqrt(g) - 1.0) ** 2) / D)
    r1_mac = 0.5 * math.log2(((1.0 + g * 10.0) * (1.0 + G2) + K * (a20 - 1.0) ** 2) / D)
    sum_mac = 0.5 * math.log2((1.0 + 10.0 + g * 10.0 + K) / D)

    region = strong_region(STRONG, StrongVariant.DPC_RX1)
    got = strong_bounds(STRONG, 0.0, 0.0, target=1)
    assert math.isclose(float(got[0]), min(c(10.0), r1_mac), abs_tol=1e-12)
    assert math.isclose(float(got[1]), r2, abs_tol=1e-12)
    assert math.isclose(float(got[2]), min(0.5 * math.log2(111.0), sum_mac), abs_tol=1e-12)
    assert region.provenance["scheme"] == "dpc_rx1"


def test_strong_reduction_identities_and_symmetry():
    rng = np.random.default_rng(SEED)
    for _ in range(20):
        ch = random_channel(rng, (1.0, 20.0), (1.0, 20.0))
        assert regions_equal(strong_region(ch, StrongVariant.AIC_RX1, 0.0, 0.0),
                             strong_region(ch, StrongVariant.DPC_RX1), tol=1e-12)
        assert regions_equal(strong_region(ch, StrongVariant.AIC_RX2, 0.0, 0.0),
                             strong_region(ch, StrongVariant.DPC_RX2), tol=1e-12)
        assert regions_equal(strong_region(ch, StrongVariant.DPC_RX2),
                             transpose(strong_region(swap_channel(ch), StrongVariant.DPC_RX1)), tol=1e-9)


def test_strong_schemes_stay_inside_the_outer_bound():
    rng = np.random.default_rng(SEED + 1)
    for _ in range(20):
        ch = random_channel(rng, (1.0, 20.0), (1.0, 20.0))
        outer = outer_bound(ch)
        limit1 = math.sqrt(0.5 * ch.P1 / ch.K) if ch.K > 0 else 0.0
        for variant in StrongVariant:
            assert contains(outer, strong_region(ch, variant), tol=1e-9)
        assert contains(outer, strong_region(ch, StrongVariant.AIC_RX1, limit1, 0.0), tol=1e-9)


def test_strong_rejects_wrong_case_and_excess_cancellation():
    with pytest.raises(ChannelCaseError):
        strong_region(WEAK, StrongVariant.DPC_RX1)
    with pytest.raises(InfeasibleCancellationError):
        strong_region(STRONG, StrongVariant.AIC_RX1, gamma1=1.0)
    ignored = strong_region(STRONG, StrongVariant.DPC_RX1, gamma1=5.0)
    assert regions_equal(ignored, strong_region(STRONG, StrongVariant.DPC_RX1), tol=1e-12)


def test_mixed_receiver_two_variant_at_preset_powers():
    r1, r2, sum_rate = mixed_bounds(MIXED, point_to_point=False)
    assert math.isclose(float(r2), 0.5 * math.log2(11.0), abs_tol=1e-12)
    assert math.isclose(float(sum_rate), 0.5 * math.log2(31.0), abs_tol=1e-12)
    assert math.isclose(float(r2), 1.7297, abs_tol=1e-4)
    assert math.isclose(float(sum_rate), 2.4771, abs_tol=1e-4)


def test_mixed_reduction_identities():
    rng = np.random.default_rng(SEED + 2)
    for _ in range(20):
        ch = random_channel(rng, (0.05, 0.9), (1.2, 10.0), swap=True)
        for alpha22 in (0.0, 0.3):
            assert regions_equal(mixed_region(ch, MixedVariant.AIC_P2P, alpha22, 0.0, 0.0),
                                 mixed_region(ch, MixedVariant.DPC_P2P, alpha22), tol=1e-12)
        assert regions_equal(mixed_region(ch, MixedVariant.AIC_RX2, 0.0, 0.0, 0.0),
                             mixed_region(ch, MixedVariant.DPC_RX2), tol=1e-12)


def test_mixed_orientation_is_normalized():
    flipped = swap_channel(MIXED)
    region = mixed_region(flipped, MixedVariant.DPC_P2P, alpha22=0.3)
    assert region.provenance["swapped"] is True
    assert regions_equal(region, transpose(mixed_region(MIXED, MixedVariant.DPC_P2P, alpha22=0.3)), tol=1e-12)


def test_degraded_channel_takes_the_mixed_path():
    region = mixed_region(DEGRADED, MixedVariant.DPC_RX2)
    assert region.provenance["degraded"] is True
    assert mixed_region(MIXED, MixedVariant.DPC_RX2).provenance["degraded"] is False
    with pytest.raises(ChannelCaseError):
        mixed_region(STRONG, MixedVariant.DPC_RX2)


def test_weak_private_powers_and_rates():
    pb1, pb2 = fixed_private_powers(WEAK)
    assert (pb1, pb2) == (5.0, 5.0)
    p1, p2 = private_rates(WEAK, pb1, pb2)
    assert math.isclose(float(p1), 0.5 * math.log2(3.5), abs_tol=1e-12)
    assert math.isclose(float(p2), 0.9037, abs_tol=1e-4)


def test_weak_reduction_identities_and_symmetry():
    rng = np.random.default_rng(SEED + 3)
    for _ in range(20):
        ch = random_channel(rng, (0.05, 0.9), (0.05, 0.9))
        assert regions_equal(weak_region(ch, WeakVariant.AIC_RX1, 0.0, 0.0),
                             weak_region(ch, WeakVariant.FIXED_RX1), tol=1e-12)
        assert regions_equal(weak_region(ch, WeakVariant.AIC_RX2, 0.0, 0.0),
                             weak_region(ch, WeakVariant.FIXED_RX2), tol=1e-12)
        assert regions_equal(weak_region(ch, WeakVariant.FIXED_RX2),
                             transpose(weak_region(swap_channel(ch), WeakVariant.FIXED_RX1)), tol=1e-9)


def test_weak_parameter_checks():
    with pytest.raises(InfeasibleSplitError):
        weak_region(WEAK, WeakVariant.SPLIT_RX1, beta1=1.0, beta2=0.5)
    with pytest.raises(InfeasibleSplitError):
        weak_region(WEAK, WeakVariant.SPLIT_RX2, beta1=0.5)
    # cancellation draws on the common power only: 10 - 5 = 5 here
    with pytest.raises(InfeasibleCancellationError):
        weak_region(WEAK, WeakVariant.AIC_RX1, gamma1=math.sqrt(0.6))
    with pytest.raises(ChannelCaseError):
        weak_region(MIXED, WeakVariant.FIXED_RX1)
    split = weak_region(WEAK, WeakVariant.SPLIT_RX1, beta1=0.3, beta2=0.6)
    assert split.provenance["private_power1"] == pytest.approx(3.0)


def test_fixed_split_regions_at_the_reference_weak_channel():
    r1, r2, sum_rate = (float(v) for v in weak_bounds(WEAK, 5.0, 5.0, 0.0, 0.0, 1))
    assert r1 == pytest.approx(0.98009, abs=1e-5)
    # private C(2.5) plus common C(1/7) is exactly one bit
    assert r2 == pytest.approx(1.0, abs=1e-12)
    assert sum_rate == pytest.approx(2.17644, abs=1e-4)

    fixed1 = weak_region(WEAK, WeakVariant.FIXED_RX1)
    expected = [(0.0, 0.0), (0.0, 1.0), (r1, 0.0), (r1, 1.0)]
    assert np.allclose(sorted(fixed1.vertices), expected, atol=1e-9)
    assert r1 + r2 > c(10.0)
    assert regions_equal(weak_region(WEAK, WeakVariant.FIXED_RX2), transpose(fixed1), tol=1e-9)


def test_collapsed_common_cap_gives_an_empty_region():
    # receiver 1 sees the state 20 dB above receiver 2
    ch = StdChannel(g12=0.2, g21=0.2, P1=10.0, P2=10.0, K=10.0, N1=0.01, N2=1.0)
    caps = weak_caps(ch, 5.0, 5.0, 0.0, 0.0, 1)
    assert float(caps["common1"]) < 0.0
    assert float(caps["common2"]) > 0.0

    region = weak_region(ch, WeakVariant.FIXED_RX1)
    assert region.empty
    assert set(region.provenance["collapsed"]) == {"common1", "common_sum"}
    assert region.provenance["scheme"] == "fixed_rx1"
    assert all(math.isnan(float(v)) for v in weak_bounds(ch, 5.0, 5.0, 0.0, 0.0, 1))
    assert not weak_region(WEAK, WeakVariant.FIXED_RX1).empty


def test_general_bounds_without_state():
    ch = StdChannel(g12=0.5, g21=0.8, P1=6.0, P2=4.0, K=0.0)
    bounds = general_bounds(ch, SchemeParams())
    assert math.isclose(bounds["R10+R11+R20@rx1"], 0.5 * math.log2((1 + 6.0 + 0.5 * 4.0) / (1 + 0.5 * 2.0)))
    assert math.isclose(bounds["R11@rx1"], c(3.0 / (1 + 0.5 * 2.0)))
    assert math.isclose(bounds["R10@rx1"], c(3.0 / (1 + 0.5 * 2.0)))
    assert math.isclose(bounds["R10+R20+R22@rx2"], 0.5 * math.log2((1 + 4.0 + 0.8 * 6.0) / (1 + 0.8 * 3.0)))
    assert len(bounds.bounds) == 12
    assert not bounds.pinned


def test_general_region_with_common_messages_only_is_the_strong_scheme():
    alpha10, alpha20 = optimal_dpc(STRONG.g12, STRONG.g21, STRONG.P1, STRONG.P2, target=1, mu=1.0)
    sp = SchemeParams(beta1=1.0, beta2=1.0, alpha10=float(alpha10), alpha20=float(alpha20))
    bounds = general_bounds(STRONG, sp)
    assert bounds.pinned == frozenset({"R11", "R22"})
    assert math.isclose(bounds["R10@rx1"], c(10.0), abs_tol=1e-9)
    assert math.isclose(bounds["R11+R20@rx1"], c(100.0), abs_tol=1e-9)
    assert math.isclose(bounds["R10+R11+R20@rx1"], c(110.0), abs_tol=1e-9)

    region = general_region(STRONG, sp)
    assert regions_equal(region, strong_region(STRONG, StrongVariant.DPC_RX1), tol=1e-6)


def test_general_region_symmetry_and_errors():
    ch = StdChannel(g12=0.4, g21=1.5, P1=8.0, P2=5.0, K=3.0, N1=1.0, N2=2.0)
    sp = SchemeParams(beta1=0.6, beta2=0.3, gamma1=0.2, gamma2=-0.1, alpha10=0.2, alpha11=0.1, alpha20=0.3)
    assert regions_equal(general_region(swap_channel(ch), swap_params(sp)),
                         transpose(general_region(ch, sp)), tol=1e-9)
    with pytest.raises(InfeasibleCancellationError):
        general_region(ch, SchemeParams(gamma1=2.0))


def test_high_state_needs_positive_split_powers():
    with pytest.raises(UndefinedRatioError):
        high_state_bounds(STRONG, SchemeParams(beta1=1.0, alpha10=0.2, alpha20=0.2))


def test_high_state_region_is_the_large_state_limit():
    rng = np.random.default_rng(SEED + 4)
    ch = with_state(STRONG, 1e8)
    root = math.sqrt(ch.g12)
    for _ in range(10):
        beta1, beta2 = rng.uniform(0.95, 0.99, 2)
        # slightly below the balanced value so the private coefficients stay clear of zero
        alpha10, alpha20 = 1.0 / (1.0 + root) - rng.uniform(0.01, 0.02, 2)
        sp = SchemeParams(
            beta1=float(beta1), beta2=float(beta2),
            alpha10=float(alpha10), alpha20=float(alpha20),
            alpha11=float(1.0 - alpha10 - alpha20 * root),
            alpha22=float(1.0 - alpha20 - alpha10 * root),
        )
        limit = high_state_region(ch, sp)
        finite = general_region(ch, sp)
        assert not limit.empty and not finite.empty
        size = max(1.0, max(max(v) for v in limit.vertices))
        assert regions_equal(limit, finite, tol=1e-3 * size)


def test_state_as_noise_channel():
    assert state_as_noise(with_state(MIXED, 0.0)) == with_state(MIXED, 0.0)
    eff = state_as_noise(MIXED)
    assert math.isclose(eff.P1, 10.0 / 11.0)
    assert math.isclose(eff.g21, 2.0)
    assert eff.K == 0.0


def test_outer_bound_at_strong_preset():
    outer = outer_bound(STRONG)
    assert math.isclose(max(x for x, _ in outer.vertices), c(10.0), abs_tol=1e-9)
    assert math.isclose(max(x + y for x, y in outer.vertices), 0.5 * math.log2(111.0), abs_tol=1e-9)
    assert outer.provenance["case"] == "strong"
    assert regions_equal(baseline_region(STRONG, BaselineKind.OUTER), outer, tol=1e-12)


def test_outer_bound_orientation():
    flipped = swap_channel(MIXED)
    assert regions_equal(outer_bound(flipped), transpose(outer_bound(MIXED)), tol=1e-9)


def test_inner_bound_keeps_the_corners_and_sits_inside_the_outer_bound():
    for ch in (STRONG, MIXED, DEGRADED, WEAK, swap_channel(MIXED)):
        inner = inner_ignore_state(ch)
        assert not inner.empty
        for corner in corner_points(state_as_noise(ch)):
            assert point_in_region(inner, corner)
        assert contains(outer_bound(ch), inner, tol=1e-9)
