"""
Closed-form building blocks shared by the Gaussian schemes

Everything here is vectorized: scalars and numpy arrays broadcast together,
so the same expressions serve single parameter points and whole sweep grids.
Rates are in bits per channel use.
"""
from typing import Tuple

import numpy as np


def capacity(snr):
    """C(x) = 1/2 log2(1 + x)"""
    with np.errstate(divide="ignore", invalid="ignore"):
        return 0.5 * np.log2(1.0 + np.asarray(snr, dtype=float))


def half_log2(numerator, denominator):
    """1/2 log2(num/den); a zero ratio gives -inf and a negative one NaN, both read as empty downstream"""
    num = np.asarray(numerator, dtype=float)
    den = np.asarray(denominator, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return 0.5 * np.log2(num / den)


def dpc_ratio(alpha, K, power):
    """alpha^2 K / P, taken as 0 where the power is exhausted (the auxiliary carries nothing)"""
    alpha = np.asarray(alpha, dtype=float)
    power = np.asarray(power, dtype=float)
    safe = np.where(power > 0.0, power, 1.0)
    return np.where(power > 0.0, alpha * alpha * K / safe, 0.0)


def optimal_dpc(g12: float, g21: float, eff_p1, eff_p2, target: int, mu,
                load_p1=None, load_p2=None) -> Tuple[np.ndarray, np.ndarray]:
    """DPC coefficients (alpha_1, alpha_2) that make the MAC at receiver `target` state-free

    `eff_p*` are the powers carried by the DPC-coded parts; `load_p*` are the
    powers that appear in the receiver's total received power and default to
    the effective ones.
    """
    eff_p1 = np.asarray(eff_p1, dtype=float)
    eff_p2 = np.asarray(eff_p2, dtype=float)
    load_p1 = eff_p1 if load_p1 is None else np.asarray(load_p1, dtype=float)
    load_p2 = eff_p2 if load_p2 is None else np.asarray(load_p2, dtype=float)
    if target == 1:
        total = 1.0 + load_p1 + g12 * load_p2
        return mu * eff_p1 / total, mu * np.sqrt(g12) * eff_p2 / total
    if target == 2:
        total = 1.0 + load_p2 + g21 * load_p1
        return mu * np.sqrt(g21) * eff_p1 / total, mu * eff_p2 / total
    raise ValueError(f"target receiver must be 1 or 2, got {target}")


def dpc_mac_bounds(own_power, other_power, gain, alpha_own, alpha_other, mu, K, floor=1.0):
    """Rate bounds of a two-user MAC whose inputs are DPC-coded against the state

    The receiver sees its own user directly and the other user through `gain`;
    `floor` is the noise plus any undecoded private power, and `mu` the residual
    state coefficient. Returns the (own, other, sum) bounds.
    """
    own_power = np.asarray(own_power, dtype=float)
    other_power = np.asarray(other_power, dtype=float)
    root_gain = np.sqrt(gain)
    g_own = dpc_ratio(alpha_own, K, own_power)
    g_other = dpc_ratio(alpha_other, K, other_power)

    denominator = floor * (1.0 + g_own + g_other) + K * (alpha_own + alpha_other * root_gain - mu) ** 2
    own = half_log2((floor + own_power) * (1.0 + g_other) + K * (alpha_other * root_gain - mu) ** 2, denominator)
    other = half_log2((floor + gain * other_power) * (1.0 + g_own) + K * (alpha_own - mu) ** 2, denominator)
    total = half_log2(floor + own_power + gain * other_power + mu * mu * K, denominator)
    return own, other, total


def dpc_link_bound(power, alpha, mu, K, floor=1.0):
    """Single-user DPC rate when everything else at the receiver is treated as noise of power `floor`"""
    own, _, _ = dpc_mac_bounds(power, 0.0, 0.0, alpha, 0.0, mu, K, floor)
    return own

