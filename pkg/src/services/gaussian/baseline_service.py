"""
Baseline Service - comparators for the state-aware schemes

inner: transmitters ignore the state, so it is just extra Gaussian noise of
power K/N_i at receiver i. The channel is renormalized to unit noise and the
case's schemes without cancellation are evaluated on it with K = 0.

outer: bounds for the interference channel without state.
  strong            R1 <= C(P1), R2 <= C(P2), R1+R2 <= min{C(P1+I1), C(P2+I2)}
  weak              R1 <= C(P1), R2 <= C(P2)
                    R1+R2  <= C(P1) + C(P2/(1+I2))                 (g21 <= 1)
                    R1+R2  <= C(P2) + C(P1/(1+I1))                 (g12 <= 1)
                    R1+R2  <= C(I1 + P1/(1+I2)) + C(I2 + P2/(1+I1))
                    2R1+R2 <= C(P1+I1) + C(P1/(1+I2)) + C(I2 + P2/(1+I1))
                    R1+2R2 <= C(P2+I2) + C(P2/(1+I1)) + C(I1 + P1/(1+I2))
  mixed, degraded   (canonical g21 > 1 > g12) the weak set without the
                    g21 <= 1 Z bound, plus R1+R2 <= C(P2+I2)
with I1 = g12 P2 the interference power at receiver 1 and I2 = g21 P1.
"""
from enum import Enum
from typing import List

from src.models.channel import InterferenceCase, StdChannel
from src.services.gaussian.formulas import capacity
from src.services.gaussian.mixed_service import is_canonical, mixed_bounds
from src.services.gaussian.strong_service import strong_bounds
from src.services.gaussian.weak_service import fixed_private_powers, weak_pentagon
from src.services.geometry.region_service import (
    HalfPlane,
    RateRegion,
    hull,
    intersect_halfplanes,
    pentagon,
    transpose,
)
from src.services.model.channel_service import classify, swap_channel


class BaselineKind(str, Enum):
    INNER = "inner_ignore_state"
    OUTER = "outer"


def state_as_noise(ch: StdChannel) -> StdChannel:
    """Equivalent state-free channel when the state is treated as noise"""
    n1 = 1.0 + ch.K / ch.N1
    n2 = 1.0 + ch.K / ch.N2
    return StdChannel(g12=ch.g12 * n2 / n1, g21=ch.g21 * n1 / n2,
                      P1=ch.P1 / n1, P2=ch.P2 / n2, K=0.0, N1=ch.N1, N2=ch.N2)


def corner_points(ch: StdChannel):
    return [(float(capacity(ch.P1)), 0.0), (0.0, float(capacity(ch.P2)))]


def _pentagons(bound_triples) -> List[RateRegion]:
    return [pentagon(float(r1), float(r2), float(s)) for r1, r2, s in bound_triples]


def inner_ignore_state(ch: StdChannel) -> RateRegion:
    case = classify(ch)
    eff = state_as_noise(ch)
    swapped = False
    if case is InterferenceCase.STRONG:
        parts = _pentagons(strong_bounds(eff, 0.0, 0.0, target) for target in (1, 2))
    elif case in (InterferenceCase.MIXED, InterferenceCase.DEGRADED):
        swapped = not is_canonical(ch)
        work = swap_channel(eff) if swapped else eff
        parts = _pentagons(mixed_bounds(work, p2p) for p2p in (True, False))
    else:
        pb1, pb2 = fixed_private_powers(eff)
        parts = [weak_pentagon(eff, pb1, pb2, 0.0, 0.0, target) for target in (1, 2)]

    if swapped:
        parts = [transpose(p) for p in parts]
    region = hull(parts + corner_points(eff))
    return region.with_provenance(baseline=BaselineKind.INNER.value, case=case.value)


def _c(x) -> float:
    return float(capacity(x))


def _canonical_outer_planes(ch: StdChannel, case: InterferenceCase) -> List[HalfPlane]:
    i1 = ch.g12 * ch.P2
    i2 = ch.g21 * ch.P1
    planes = [HalfPlane(1.0, 0.0, _c(ch.P1)), HalfPlane(0.0, 1.0, _c(ch.P2))]
    if case is InterferenceCase.STRONG:
        planes.append(HalfPlane(1.0, 1.0, min(_c(ch.P1 + i1), _c(ch.P2 + i2))))
        return planes

    genie_sum = _c(i1 + ch.P1 / (1.0 + i2)) + _c(i2 + ch.P2 / (1.0 + i1))
    planes += [
        HalfPlane(1.0, 1.0, genie_sum),
        HalfPlane(2.0, 1.0, _c(ch.P1 + i1) + _c(ch.P1 / (1.0 + i2)) + _c(i2 + ch.P2 / (1.0 + i1))),
        HalfPlane(1.0, 2.0, _c(ch.P2 + i2) + _c(ch.P2 / (1.0 + i1)) + _c(i1 + ch.P1 / (1.0 + i2))),
    ]
    if ch.g12 <= 1.0:
        planes.append(HalfPlane(1.0, 1.0, _c(ch.P2) + _c(ch.P1 / (1.0 + i1))))
    if case is InterferenceCase.WEAK and ch.g21 <= 1.0:
        planes.append(HalfPlane(1.0, 1.0, _c(ch.P1) + _c(ch.P2 / (1.0 + i2))))
    if case is not InterferenceCase.WEAK:
        planes.append(HalfPlane(1.0, 1.0, _c(ch.P2 + i2)))
    return planes


def outer_bound(ch: StdChannel) -> RateRegion:
    case = classify(ch)
    swapped = case in (InterferenceCase.MIXED, InterferenceCase.DEGRADED) and not is_canonical(ch)
    work = swap_channel(ch) if swapped else ch
    planes = _canonical_outer_planes(work, case)
    region = intersect_halfplanes(planes)
    if swapped:
        region = transpose(region)
    caps = [[p.a, p.b, p.c] for p in planes]
    return region.with_provenance(baseline=BaselineKind.OUTER.value, case=case.value,
                                  half_planes=caps, swapped=swapped)


def baseline_region(ch: StdChannel, kind: BaselineKind) -> RateRegion:
    kind = BaselineKind(kind)
    if kind is BaselineKind.INNER:
        return inner_ignore_state(ch)
    return outer_bound(ch)
