"""
Channel and scheme parameter types
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet


class InterferenceCase(str, Enum):
    STRONG = "strong"
    MIXED = "mixed"
    DEGRADED = "degraded"
    WEAK = "weak"


@dataclass(frozen=True)
class RawChannel:
    """Gaussian IC before normalization: Y_i = h_ii X_i + h_ij X_j + S + Z_i"""
    h11: float
    h12: float
    h21: float
    h22: float
    N1: float
    N2: float
    P1_raw: float
    P2_raw: float
    K: float


@dataclass(frozen=True)
class StdChannel:
    """Standard form: Y1 = X1 + sqrt(g12) X2 + S/sqrt(N1) + Z1, and symmetrically"""
    g12: float
    g21: float
    P1: float
    P2: float
    K: float
    N1: float = 1.0
    N2: float = 1.0

    @property
    def state_gain1(self) -> float:
        return 1.0 / math.sqrt(self.N1)

    @property
    def state_gain2(self) -> float:
        return 1.0 / math.sqrt(self.N2)


@dataclass(frozen=True)
class SchemeParams:
    """DPC coefficients, cancellation coefficients and common-power fractions

    beta_j is the fraction of the post-cancellation power given to the common
    part A_j; the private part B_j gets the remaining 1 - beta_j.
    """
    beta1: float = 0.5
    beta2: float = 0.5
    gamma1: float = 0.0
    gamma2: float = 0.0
    alpha10: float = 0.0
    alpha11: float = 0.0
    alpha20: float = 0.0
    alpha22: float = 0.0


AUXILIARIES = ("U1", "V1", "U2", "V2")


@dataclass(frozen=True)
class DerivedParams:
    P_A1: float
    P_B1: float
    P_A2: float
    P_B2: float
    G_U1: float
    G_V1: float
    G_U2: float
    G_V2: float
    mu1: float
    mu2: float
    disabled: FrozenSet[str] = field(default_factory=frozenset)

    def is_disabled(self, auxiliary: str) -> bool:
        return auxiliary in self.disabled

    def ratio(self, auxiliary: str) -> float:
        """G ratio for use inside rate formulas; a disabled auxiliary contributes 0"""
        if auxiliary in self.disabled:
            return 0.0
        return getattr(self, f"G_{auxiliary}")
