"""
Channel Service - standard form, derived scheme quantities and case classification
"""
import math
from dataclasses import replace

from src.models.channel import (
    DerivedParams,
    InterferenceCase,
    RawChannel,
    SchemeParams,
    StdChannel,
)
from src.models.errors import (
    DegenerateChannelError,
    InfeasibleCancellationError,
    InfeasibleSplitError,
)
from src.models.types import DEFAULTS


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def validate_channel(ch: StdChannel) -> StdChannel:
    if ch.N1 <= 0 or ch.N2 <= 0:
        raise DegenerateChannelError(f"noise variances must be positive (N1={ch.N1}, N2={ch.N2})")
    if ch.g12 < 0 or ch.g21 < 0:
        raise DegenerateChannelError(f"cross gains must be non-negative (g12={ch.g12}, g21={ch.g21})")
    if ch.P1 < 0 or ch.P2 < 0 or ch.K < 0:
        raise DegenerateChannelError("powers and state variance must be non-negative")
    return ch


def standardize(raw: RawChannel) -> StdChannel:
    """Normalize direct gains and noise to one, keeping N_i for the state coupling"""
    if raw.h11 == 0 or raw.h22 == 0:
        raise DegenerateChannelError("direct link gains h11 and h22 must be non-zero")
    if raw.N1 <= 0 or raw.N2 <= 0:
        raise DegenerateChannelError(f"noise variances must be positive (N1={raw.N1}, N2={raw.N2})")
    if raw.P1_raw < 0 or raw.P2_raw < 0 or raw.K < 0:
        raise DegenerateChannelError("powers and state variance must be non-negative")

    return StdChannel(
        g12=raw.h12 ** 2 * raw.N2 / (raw.h22 ** 2 * raw.N1),
        g21=raw.h21 ** 2 * raw.N1 / (raw.h11 ** 2 * raw.N2),
        P1=raw.h11 ** 2 * raw.P1_raw / raw.N1,
        P2=raw.h22 ** 2 * raw.P2_raw / raw.N2,
        K=raw.K,
        N1=raw.N1,
        N2=raw.N2,
    )


def residual_state(ch: StdChannel, gamma1: float, gamma2: float):
    """State coefficients left at each receiver after active cancellation"""
    mu1 = ch.state_gain1 - gamma1 - gamma2 * math.sqrt(ch.g12)
    mu2 = ch.state_gain2 - gamma2 - gamma1 * math.sqrt(ch.g21)
    return mu1, mu2


def cancellation_power(ch: StdChannel, gamma: float) -> float:
    return gamma * gamma * ch.K


def derive(ch: StdChannel, sp: SchemeParams) -> DerivedParams:
    """Split powers, DPC ratios and residual state coefficients for a parameter point"""
    for name, beta in (("beta1", sp.beta1), ("beta2", sp.beta2)):
        if not 0.0 <= beta <= 1.0:
            raise InfeasibleSplitError(f"{name}={beta} outside [0, 1]")

    remaining = []
    for idx, (gamma, power) in enumerate(((sp.gamma1, ch.P1), (sp.gamma2, ch.P2)), start=1):
        spent = cancellation_power(ch, gamma)
        if spent > power:
            raise InfeasibleCancellationError(
                f"gamma{idx}^2 K = {spent:.6g} exceeds P{idx} = {power:.6g}"
            )
        remaining.append(power - spent)

    P_A1 = sp.beta1 * remaining[0]
    P_B1 = remaining[0] - P_A1
    P_A2 = sp.beta2 * remaining[1]
    P_B2 = remaining[1] - P_A2

    disabled = set()
    ratios = {}
    for aux, alpha, power in (
        ("U1", sp.alpha10, P_A1),
        ("V1", sp.alpha11, P_B1),
        ("U2", sp.alpha20, P_A2),
        ("V2", sp.alpha22, P_B2),
    ):
        if power <= 0.0:
            disabled.add(aux)
            ratios[aux] = math.inf
        else:
            ratios[aux] = alpha * alpha * ch.K / power

    mu1, mu2 = residual_state(ch, sp.gamma1, sp.gamma2)
    return DerivedParams(
        P_A1=P_A1, P_B1=P_B1, P_A2=P_A2, P_B2=P_B2,
        G_U1=ratios["U1"], G_V1=ratios["V1"], G_U2=ratios["U2"], G_V2=ratios["V2"],
        mu1=mu1, mu2=mu2,
        disabled=frozenset(disabled),
    )


def is_degraded(ch: StdChannel, tol: float = DEFAULTS.DEGRADED_TOL) -> bool:
    return abs(ch.g12 * ch.g21 - 1.0) <= tol


def classify(ch: StdChannel) -> InterferenceCase:
    if ch.g12 >= 1.0 and ch.g21 >= 1.0:
        return InterferenceCase.STRONG
    if is_degraded(ch):
        return InterferenceCase.DEGRADED
    if (ch.g12 > 1.0 > ch.g21) or (ch.g21 > 1.0 > ch.g12):
        return InterferenceCase.MIXED
    return InterferenceCase.WEAK


def swap_channel(ch: StdChannel) -> StdChannel:
    """Exchange the roles of the two users"""
    return StdChannel(g12=ch.g21, g21=ch.g12, P1=ch.P2, P2=ch.P1, K=ch.K, N1=ch.N2, N2=ch.N1)


def swap_params(sp: SchemeParams) -> SchemeParams:
    return SchemeParams(
        beta1=sp.beta2, beta2=sp.beta1,
        gamma1=sp.gamma2, gamma2=sp.gamma1,
        alpha10=sp.alpha20, alpha11=sp.alpha22,
        alpha20=sp.alpha10, alpha22=sp.alpha11,
    )


def with_state(ch: StdChannel, K: float) -> StdChannel:
    return replace(ch, K=K)
