"""
Mixed Service - schemes for one strong and one weak cross link

Formulas are written for the canonical orientation g21 > 1 > g12: user 1
sends a common message (receiver 2 must decode it), user 2 sends a private
one that receiver 1 treats as noise. Channels in the other orientation are
evaluated with users swapped and the region transposed back. A degraded
channel (g12 * g21 = 1) takes the same path.
"""
from enum import Enum
from typing import Tuple

import numpy as np

from src.models.channel import InterferenceCase, StdChannel
from src.models.errors import ChannelCaseError
from src.services.gaussian.formulas import capacity, dpc_link_bound, dpc_mac_bounds, optimal_dpc
from src.services.gaussian.strong_service import check_cancellation
from src.services.geometry.region_service import RateRegion, pentagon, transpose
from src.services.model.channel_service import classify, residual_state, swap_channel


class MixedVariant(str, Enum):
    DPC_P2P = "dpc_p2p"
    DPC_RX2 = "dpc_rx2"
    AIC_P2P = "aic_p2p"
    AIC_RX2 = "aic_rx2"

    @property
    def point_to_point(self) -> bool:
        return self in (MixedVariant.DPC_P2P, MixedVariant.AIC_P2P)

    @property
    def cancels(self) -> bool:
        return self in (MixedVariant.AIC_P2P, MixedVariant.AIC_RX2)


def is_canonical(ch: StdChannel) -> bool:
    return ch.g21 >= ch.g12


def _p2p_bounds(ch: StdChannel, alpha22, gamma1, gamma2):
    p1 = ch.P1 - gamma1 * gamma1 * ch.K
    p2 = ch.P2 - gamma2 * gamma2 * ch.K
    mu1, mu2 = residual_state(ch, gamma1, gamma2)
    alpha10, _ = optimal_dpc(ch.g12, ch.g21, p1, p2, target=1, mu=mu1)
    r2_mac, r1_mac, sum_mac = dpc_mac_bounds(p2, p1, ch.g21, alpha22, alpha10, mu2, ch.K)
    r1 = np.minimum(capacity(p1 / (1.0 + ch.g12 * p2)), r1_mac)
    return r1, r2_mac, sum_mac


def _rx2_bounds(ch: StdChannel, gamma1, gamma2):
    p1 = ch.P1 - gamma1 * gamma1 * ch.K
    p2 = ch.P2 - gamma2 * gamma2 * ch.K
    mu1, mu2 = residual_state(ch, gamma1, gamma2)
    alpha10, _ = optimal_dpc(ch.g12, ch.g21, p1, p2, target=2, mu=mu2)
    r1 = dpc_link_bound(p1, alpha10, mu1, ch.K, floor=1.0 + ch.g12 * p2)
    return r1, capacity(p2), capacity(p2 + ch.g21 * p1)


def mixed_bounds(ch: StdChannel, point_to_point: bool, alpha22=0.0, gamma1=0.0,
                 gamma2=0.0) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(R1, R2, R1+R2) caps in the canonical orientation; vectorized over alpha22 and gamma"""
    gamma1 = np.asarray(gamma1, dtype=float)
    gamma2 = np.asarray(gamma2, dtype=float)
    if point_to_point:
        return _p2p_bounds(ch, np.asarray(alpha22, dtype=float), gamma1, gamma2)
    return _rx2_bounds(ch, gamma1, gamma2)


def mixed_region(ch: StdChannel, variant: MixedVariant, alpha22: float = 0.0,
                 gamma1: float = 0.0, gamma2: float = 0.0) -> RateRegion:
    """Region of a mixed-case scheme

    `alpha22` is the private DPC coefficient of the user whose own receiver
    sees the strong interference, i.e. user 2 in the canonical orientation.
    The gammas belong to the actual users 1 and 2.
    """
    variant = MixedVariant(variant)
    case = classify(ch)
    if case not in (InterferenceCase.MIXED, InterferenceCase.DEGRADED):
        raise ChannelCaseError(f"{variant.value} needs mixed interference (g12={ch.g12}, g21={ch.g21})")
    if not variant.cancels:
        gamma1 = gamma2 = 0.0
    if not variant.point_to_point:
        alpha22 = 0.0
    check_cancellation(ch, gamma1, gamma2)

    canonical = is_canonical(ch)
    work = ch if canonical else swap_channel(ch)
    g1, g2 = (gamma1, gamma2) if canonical else (gamma2, gamma1)
    r1, r2, sum_rate = mixed_bounds(work, variant.point_to_point, alpha22, g1, g2)
    region = pentagon(float(r1), float(r2), float(sum_rate), scheme=variant.value,
                      alpha22=alpha22, gamma1=gamma1, gamma2=gamma2,
                      degraded=case is InterferenceCase.DEGRADED, swapped=not canonical)
    return region if canonical else transpose(region)
