"""
Weak Service - common/private splitting for g12 <= 1 and g21 <= 1

Both receivers first decode the two common messages treating all private
power as noise, then their own private message treating the other private
message as noise. DPC covers the common parts only and is tuned for the
common-message MAC at one receiver.

Power splits:
  fixed   P_Bj = min{P_j, 1/g_cross}, so the private signal reaches the other
          receiver at the noise level
  split   P_Bj = beta_j P_j for a private fraction beta_j in (0, 1)
Cancellation is drawn from the common power only.
"""
from enum import Enum
from typing import Dict, Tuple

import numpy as np

from src.models.channel import InterferenceCase, StdChannel
from src.models.errors import ChannelCaseError, InfeasibleSplitError
from src.services.gaussian.formulas import capacity, dpc_mac_bounds, optimal_dpc
from src.services.gaussian.strong_service import check_cancellation
from src.services.geometry.region_service import RateRegion, empty_region, pentagon
from src.services.model.channel_service import classify, residual_state, swap_channel


class WeakVariant(str, Enum):
    FIXED_RX1 = "fixed_rx1"
    FIXED_RX2 = "fixed_rx2"
    AIC_RX1 = "aic_rx1"
    AIC_RX2 = "aic_rx2"
    SPLIT_RX1 = "split_rx1"
    SPLIT_RX2 = "split_rx2"

    @property
    def target(self) -> int:
        return 1 if self.value.endswith("rx1") else 2

    @property
    def cancels(self) -> bool:
        return self in (WeakVariant.AIC_RX1, WeakVariant.AIC_RX2)

    @property
    def splits(self) -> bool:
        return self in (WeakVariant.SPLIT_RX1, WeakVariant.SPLIT_RX2)


COMMON_CAPS = ("common1", "common2", "common_sum")


def fixed_private_powers(ch: StdChannel) -> Tuple[float, float]:
    """Private powers that make each interfered private SNR equal to one"""
    pb1 = ch.P1 if ch.g21 <= 0.0 else min(ch.P1, 1.0 / ch.g21)
    pb2 = ch.P2 if ch.g12 <= 0.0 else min(ch.P2, 1.0 / ch.g12)
    return pb1, pb2


def private_rates(ch: StdChannel, pb1, pb2):
    return capacity(pb1 / (1.0 + ch.g12 * pb2)), capacity(pb2 / (1.0 + ch.g21 * pb1))


def _caps_rx1(ch: StdChannel, pa1, pb1, pa2, pb2, gamma1, gamma2) -> Dict[str, np.ndarray]:
    spent1 = gamma1 * gamma1 * ch.K
    spent2 = gamma2 * gamma2 * ch.K
    common1, common2 = pa1 - spent1, pa2 - spent2
    mu1, mu2 = residual_state(ch, gamma1, gamma2)
    alpha10, alpha20 = optimal_dpc(ch.g12, ch.g21, common1, common2, target=1, mu=mu1,
                                   load_p1=pa1 + pb1 - spent1, load_p2=pa2 + pb2 - spent2)

    floor1 = 1.0 + pb1 + ch.g12 * pb2
    floor2 = 1.0 + pb2 + ch.g21 * pb1
    r2_mac, r1_mac, sum_mac = dpc_mac_bounds(common2, common1, ch.g21, alpha20, alpha10, mu2, ch.K, floor2)
    p1, p2 = private_rates(ch, pb1, pb2)
    return {
        "common1": np.minimum(capacity(common1 / floor1), r1_mac),
        "common2": np.minimum(capacity(ch.g12 * common2 / floor1), r2_mac),
        "common_sum": np.minimum(capacity((common1 + ch.g12 * common2) / floor1), sum_mac),
        "private1": p1,
        "private2": p2,
    }


def weak_caps(ch: StdChannel, pb1, pb2, gamma1, gamma2, target: int) -> Dict[str, np.ndarray]:
    """Common-message caps and private rates for private powers pb_j and cancellation gamma_j; vectorized"""
    pb1 = np.asarray(pb1, dtype=float)
    pb2 = np.asarray(pb2, dtype=float)
    gamma1 = np.asarray(gamma1, dtype=float)
    gamma2 = np.asarray(gamma2, dtype=float)
    if target == 1:
        return _caps_rx1(ch, ch.P1 - pb1, pb1, ch.P2 - pb2, pb2, gamma1, gamma2)
    sw = swap_channel(ch)
    caps = _caps_rx1(sw, sw.P1 - pb2, pb2, sw.P2 - pb1, pb1, gamma2, gamma1)
    return {"common1": caps["common2"], "common2": caps["common1"], "common_sum": caps["common_sum"],
            "private1": caps["private2"], "private2": caps["private1"]}


def collapsed_caps(caps: Dict[str, np.ndarray]) -> np.ndarray:
    """Mask of parameter points with a negative (or undefined) common-message cap"""
    collapsed = np.zeros((), dtype=bool)
    for name in COMMON_CAPS:
        collapsed = collapsed | ~(np.asarray(caps[name]) >= 0.0)
    return collapsed


def weak_bounds(ch: StdChannel, pb1, pb2, gamma1, gamma2, target: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(R1, R2, R1+R2) caps for private powers pb_j and cancellation gamma_j; vectorized

    Points whose common-message region is empty come back as NaN, which the
    sweep drops before building hulls.
    """
    caps = weak_caps(ch, pb1, pb2, gamma1, gamma2, target)
    keep = ~collapsed_caps(caps)
    p1, p2 = caps["private1"], caps["private2"]
    return (np.where(keep, caps["common1"] + p1, np.nan),
            np.where(keep, caps["common2"] + p2, np.nan),
            np.where(keep, caps["common_sum"] + p1 + p2, np.nan))


def weak_pentagon(ch: StdChannel, pb1: float, pb2: float, gamma1: float, gamma2: float, target: int, /,
                  **notes) -> RateRegion:
    """Pentagon of one parameter point; empty, naming the collapsed caps, when a common cap is negative"""
    caps = {name: float(value) for name, value in weak_caps(ch, pb1, pb2, gamma1, gamma2, target).items()}
    collapsed = [name for name in COMMON_CAPS if not caps[name] >= 0.0]
    if collapsed:
        return empty_region(collapsed=collapsed, caps=caps, **notes)
    p1, p2 = caps["private1"], caps["private2"]
    return pentagon(caps["common1"] + p1, caps["common2"] + p2, caps["common_sum"] + p1 + p2, **notes)


def weak_region(ch: StdChannel, variant: WeakVariant, gamma1: float = 0.0, gamma2: float = 0.0,
                beta1: float = None, beta2: float = None) -> RateRegion:
    """Region of a weak-case scheme; `beta_j` is the private power fraction of the split variants"""
    variant = WeakVariant(variant)
    if classify(ch) is not InterferenceCase.WEAK:
        raise ChannelCaseError(f"{variant.value} needs weak interference (g12={ch.g12}, g21={ch.g21})")

    if variant.splits:
        for name, beta in (("beta1", beta1), ("beta2", beta2)):
            if beta is None or not 0.0 < beta < 1.0:
                raise InfeasibleSplitError(f"{name}={beta} must lie in (0, 1)")
        pb1, pb2 = beta1 * ch.P1, beta2 * ch.P2
    else:
        pb1, pb2 = fixed_private_powers(ch)

    if not variant.cancels:
        gamma1 = gamma2 = 0.0
    check_cancellation(ch, gamma1, gamma2, budget1=ch.P1 - pb1, budget2=ch.P2 - pb2)

    return weak_pentagon(ch, pb1, pb2, gamma1, gamma2, variant.target, scheme=variant.value,
                         gamma1=gamma1, gamma2=gamma2, private_power1=pb1, private_power2=pb2)
