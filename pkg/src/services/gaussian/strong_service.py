"""
Strong Service - common-message schemes for g12 >= 1 and g21 >= 1

Both receivers decode both messages. DPC is tuned for the MAC at one
receiver, which then operates at capacity; the MAC at the other receiver
lives with the mismatched coefficients. The cancelling variants first
spend gamma_j^2 K of each power budget on pushing the state down.
"""
from enum import Enum
from typing import Tuple

import numpy as np

from src.models.channel import InterferenceCase, StdChannel
from src.models.errors import ChannelCaseError, InfeasibleCancellationError
from src.services.gaussian.formulas import capacity, dpc_mac_bounds, optimal_dpc
from src.services.geometry.region_service import RateRegion, pentagon
from src.services.model.channel_service import classify, residual_state, swap_channel


class StrongVariant(str, Enum):
    DPC_RX1 = "dpc_rx1"
    DPC_RX2 = "dpc_rx2"
    AIC_RX1 = "aic_rx1"
    AIC_RX2 = "aic_rx2"

    @property
    def target(self) -> int:
        return 1 if self in (StrongVariant.DPC_RX1, StrongVariant.AIC_RX1) else 2

    @property
    def cancels(self) -> bool:
        return self in (StrongVariant.AIC_RX1, StrongVariant.AIC_RX2)


def check_cancellation(ch: StdChannel, gamma1: float, gamma2: float,
                       budget1: float = None, budget2: float = None) -> None:
    """gamma_j^2 K must stay strictly below the budget; gamma_j = 0 is always allowed"""
    budgets = (ch.P1 if budget1 is None else budget1, ch.P2 if budget2 is None else budget2)
    for idx, (gamma, budget) in enumerate(zip((gamma1, gamma2), budgets), start=1):
        if gamma != 0.0 and not gamma * gamma * ch.K < budget:
            raise InfeasibleCancellationError(
                f"gamma{idx}^2 K = {gamma * gamma * ch.K:.6g} must be below {budget:.6g}"
            )


def _bounds_rx1(ch: StdChannel, gamma1, gamma2):
    p1 = ch.P1 - gamma1 * gamma1 * ch.K
    p2 = ch.P2 - gamma2 * gamma2 * ch.K
    mu1, mu2 = residual_state(ch, gamma1, gamma2)
    alpha10, alpha20 = optimal_dpc(ch.g12, ch.g21, p1, p2, target=1, mu=mu1)
    # receiver 2 is the mismatched MAC; user 2 is its own user
    r2_mac, r1_mac, sum_mac = dpc_mac_bounds(p2, p1, ch.g21, alpha20, alpha10, mu2, ch.K)
    r1 = np.minimum(capacity(p1), r1_mac)
    sum_rate = np.minimum(capacity(p1 + ch.g12 * p2), sum_mac)
    return r1, r2_mac, sum_rate


def strong_bounds(ch: StdChannel, gamma1, gamma2, target: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(R1, R2, R1+R2) caps of the scheme tuned for `target`; vectorized over gamma"""
    if target == 1:
        return _bounds_rx1(ch, np.asarray(gamma1, dtype=float), np.asarray(gamma2, dtype=float))
    r2, r1, sum_rate = _bounds_rx1(swap_channel(ch), np.asarray(gamma2, dtype=float),
                                   np.asarray(gamma1, dtype=float))
    return r1, r2, sum_rate


def strong_region(ch: StdChannel, variant: StrongVariant, gamma1: float = 0.0, gamma2: float = 0.0) -> RateRegion:
    variant = StrongVariant(variant)
    if classify(ch) is not InterferenceCase.STRONG:
        raise ChannelCaseError(f"{variant.value} needs strong interference (g12={ch.g12}, g21={ch.g21})")
    if not variant.cancels:
        gamma1 = gamma2 = 0.0
    check_cancellation(ch, gamma1, gamma2)
    r1, r2, sum_rate = strong_bounds(ch, gamma1, gamma2, variant.target)
    return pentagon(float(r1), float(r2), float(sum_rate),
                    scheme=variant.value, gamma1=gamma1, gamma2=gamma2)
