"""
Bounds Service - rate-splitting region with DPC, cancellation and power split

Each receiver decodes its own common and private parts plus the other
user's common part, giving six bounds per receiver over the sub-rates
(R10, R11, R20, R22). Keys of a bound set read "<sub-rate sum>@rx<i>".
"""
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet

from src.models.channel import SchemeParams, StdChannel
from src.models.errors import UndefinedRatioError
from src.services.fme.fme_service import SUB_RATES, IneqSystem, project_to_rate_pair
from src.services.gaussian.formulas import half_log2
from src.services.geometry.region_service import RateRegion
from src.services.model.channel_service import derive

# sub-rate combinations in receiver-1 roles: own private, own common, other common
_GENERAL_ROWS = ("V", "U", "U+V", "V+O", "U+O", "U+V+O")
_HIGH_STATE_ROWS = ("U+V", "V+O", "U+O", "U+V+O")
_ROLES = {
    1: {"U": "R10", "V": "R11", "O": "R20"},
    2: {"U": "R20", "V": "R22", "O": "R10"},
}


@dataclass(frozen=True)
class GaussianBoundSet:
    bounds: Dict[str, float]
    pinned: FrozenSet[str] = field(default_factory=frozenset)

    def __getitem__(self, key: str) -> float:
        return self.bounds[key]

    def to_system(self) -> IneqSystem:
        """Sub-rate system: one row per bound, pinned sub-rates at zero, non-negativity"""
        rows = []
        for key, value in self.bounds.items():
            combination = key.split("@")[0]
            rows.append(({name: 1.0 for name in combination.split("+")}, value))
        for name in sorted(self.pinned):
            rows.append(({name: 1.0}, 0.0))
        return IneqSystem.from_rows(SUB_RATES, rows).with_nonnegativity()


def _label(receiver: int, row: str) -> str:
    names = sorted(_ROLES[receiver][part] for part in row.split("+"))
    return "+".join(names) + f"@rx{receiver}"


def _receiver_terms(own_common, own_private, other_common, other_private, gain,
                    g_u, g_v, g_o, a_u, a_v, a_o, mu, K) -> Dict[str, float]:
    root = math.sqrt(gain)
    own_total = own_common + own_private
    other_total = other_common + other_private
    den = (1 + gain * other_private) * (1 + g_u + g_o + g_v) + K * (a_u + a_o * root + a_v - mu) ** 2

    def pair_boost(x, y):
        return 1 + x * y / (1 + x + y)

    numerators = {
        "V": (1 + own_private + gain * other_private) * (1 + g_u + g_o + g_u * g_o)
        + K * (a_u + a_o * root - mu) ** 2 * pair_boost(g_u, g_o),
        "U": (1 + own_common + gain * other_private) * (1 + g_v + g_o + g_v * g_o)
        + K * (a_v + a_o * root - mu) ** 2 * pair_boost(g_v, g_o),
        "U+V": (1 + own_total + gain * other_private) * (1 + g_o) + K * (a_o * root - mu) ** 2,
        "V+O": (1 + own_private + gain * other_total) * (1 + g_u) + K * (a_u - mu) ** 2,
        "U+O": (1 + own_common + gain * other_total) * (1 + g_v) + K * (a_v - mu) ** 2,
        "U+V+O": 1 + own_total + gain * other_total + mu * mu * K,
    }
    return {row: float(half_log2(num, den)) for row, num in numerators.items()}


def _effective_alphas(d, sp: SchemeParams):
    """Coefficients of disabled auxiliaries are ignored"""
    return {
        aux: (0.0 if d.is_disabled(aux) else alpha)
        for aux, alpha in (("U1", sp.alpha10), ("V1", sp.alpha11), ("U2", sp.alpha20), ("V2", sp.alpha22))
    }


def general_bounds(ch: StdChannel, sp: SchemeParams) -> GaussianBoundSet:
    d = derive(ch, sp)
    a = _effective_alphas(d, sp)
    rx1 = _receiver_terms(d.P_A1, d.P_B1, d.P_A2, d.P_B2, ch.g12,
                          d.ratio("U1"), d.ratio("V1"), d.ratio("U2"),
                          a["U1"], a["V1"], a["U2"], d.mu1, ch.K)
    rx2 = _receiver_terms(d.P_A2, d.P_B2, d.P_A1, d.P_B1, ch.g21,
                          d.ratio("U2"), d.ratio("V2"), d.ratio("U1"),
                          a["U2"], a["V2"], a["U1"], d.mu2, ch.K)
    bounds = {}
    for receiver, terms in ((1, rx1), (2, rx2)):
        for row in _GENERAL_ROWS:
            bounds[_label(receiver, row)] = terms[row]
    sub_rate = {"U1": "R10", "V1": "R11", "U2": "R20", "V2": "R22"}
    pinned = frozenset(sub_rate[aux] for aux in d.disabled)
    return GaussianBoundSet(bounds, pinned)


def general_region(ch: StdChannel, sp: SchemeParams) -> RateRegion:
    bound_set = general_bounds(ch, sp)
    region = project_to_rate_pair(bound_set.to_system())
    return region.with_provenance(scheme="general", bounds=dict(bound_set.bounds),
                                  pinned=sorted(bound_set.pinned))


def _high_state_terms(own_common, own_private, other_common, other_private, gain,
                      r_u, r_v, r_o, a_u, a_v, a_o, mu) -> Dict[str, float]:
    root = math.sqrt(gain)
    own_total = own_common + own_private
    other_total = other_common + other_private
    den = (1 + gain * other_private) * (r_u + r_o + r_v) + (a_u + a_o * root + a_v - mu) ** 2
    numerators = {
        "U+V": (1 + own_total + gain * other_private) * r_o + (a_o * root - mu) ** 2,
        "V+O": (1 + own_private + gain * other_total) * r_u + (a_u - mu) ** 2,
        "U+O": (1 + own_common + gain * other_total) * r_v + (a_v - mu) ** 2,
        "U+V+O": mu * mu,
    }
    return {row: float(half_log2(num, den)) for row, num in numerators.items()}


def high_state_bounds(ch: StdChannel, sp: SchemeParams) -> GaussianBoundSet:
    """Limit of the general bounds as the state power grows without bound

    The DPC ratios enter as alpha^2/P; the state power itself drops out. The
    single sub-rate bounds grow with the state power and disappear in the limit.
    """
    d = derive(ch, sp)
    if d.disabled:
        raise UndefinedRatioError(f"zero split power for {sorted(d.disabled)}")
    r = {
        "U1": sp.alpha10 ** 2 / d.P_A1,
        "V1": sp.alpha11 ** 2 / d.P_B1,
        "U2": sp.alpha20 ** 2 / d.P_A2,
        "V2": sp.alpha22 ** 2 / d.P_B2,
    }
    rx1 = _high_state_terms(d.P_A1, d.P_B1, d.P_A2, d.P_B2, ch.g12, r["U1"], r["V1"], r["U2"],
                            sp.alpha10, sp.alpha11, sp.alpha20, d.mu1)
    rx2 = _high_state_terms(d.P_A2, d.P_B2, d.P_A1, d.P_B1, ch.g21, r["U2"], r["V2"], r["U1"],
                            sp.alpha20, sp.alpha22, sp.alpha10, d.mu2)
    bounds = {}
    for receiver, terms in ((1, rx1), (2, rx2)):
        for row in _HIGH_STATE_ROWS:
            bounds[_label(receiver, row)] = terms[row]
    return GaussianBoundSet(bounds)


def high_state_region(ch: StdChannel, sp: SchemeParams) -> RateRegion:
    bound_set = high_state_bounds(ch, sp)
    region = project_to_rate_pair(bound_set.to_system())
    return region.with_provenance(scheme="high_state", bounds=dict(bound_set.bounds))
