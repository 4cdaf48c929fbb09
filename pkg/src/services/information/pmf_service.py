"""
PMF Service - finite joint distributions and conditional mutual information (bits)
"""
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from src.models.errors import SchemeValidationError
from src.models.types import DEFAULTS


@dataclass(frozen=True, eq=False)
class FinitePmf:
    """Probability table over named discrete variables, one array axis per variable"""
    names: Tuple[str, ...]
    weights: np.ndarray

    def __post_init__(self):
        weights = np.array(self.weights, dtype=float)
        if weights.ndim != len(self.names):
            raise SchemeValidationError(f"{len(self.names)} variable names for a {weights.ndim}-axis table")
        if len(set(self.names)) != len(self.names):
            raise SchemeValidationError("duplicate variable names")
        weights.setflags(write=False)
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "weights", weights)

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.weights.shape

    def validate(self, tol: float = DEFAULTS.PMF_TOL) -> "FinitePmf":
        if np.any(self.weights < 0):
            raise SchemeValidationError("negative probability")
        total = float(self.weights.sum())
        if abs(total - 1.0) > tol:
            raise SchemeValidationError(f"weights sum to {total!r}, not 1")
        return self

    def axes(self, names: Iterable[str]) -> Tuple[int, ...]:
        missing = [n for n in names if n not in self.names]
        if missing:
            raise KeyError(f"unknown variables {missing}")
        return tuple(self.names.index(n) for n in names)

    def marginal(self, names: Sequence[str]) -> np.ndarray:
        """Marginal table with axes in the order given by `names`"""
        names = list(names)
        keep = self.axes(names)
        drop = tuple(i for i in range(len(self.names)) if i not in keep)
        table = self.weights.sum(axis=drop) if drop else self.weights
        # remaining axes are in original order; reorder to the requested order
        remaining = [self.names[i] for i in range(len(self.names)) if i in keep]
        return np.transpose(table, [remaining.index(n) for n in names])


# The full joint keeps this axis order
JOINT_VARIABLES = ("Q", "S", "U1", "V1", "U2", "V2", "X1", "X2", "Y1", "Y2")


class JointPmf(FinitePmf):
    """Joint over (Q, S, U1, V1, U2, V2, X1, X2, Y1, Y2)"""

    def __init__(self, weights: np.ndarray):
        super().__init__(JOINT_VARIABLES, weights)


def entropy(pmf: FinitePmf, names: Sequence[str]) -> float:
    """H(names) in bits with 0 log 0 = 0"""
    if not names:
        return 0.0
    p = pmf.marginal(names).ravel()
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def cond_mutual_info(pmf: FinitePmf, A: Sequence[str], B: Sequence[str], C: Sequence[str] = ()) -> float:
    """I(A;B|C) in bits by direct summation over the support"""
    A, B, C = list(A), list(B), list(C)
    if set(A) & set(B) or set(A) & set(C) or set(B) & set(C):
        raise ValueError(f"variable sets must be disjoint: {A} / {B} / {C}")
    if not A or not B:
        return 0.0
    p_abc = pmf.marginal(A + B + C)
    size_a = int(np.prod(p_abc.shape[:len(A)]))
    size_b = int(np.prod(p_abc.shape[len(A):len(A) + len(B)]))
    p_abc = p_abc.reshape(size_a, size_b, -1)
    p_ac = p_abc.sum(axis=1, keepdims=True)
    p_bc = p_abc.sum(axis=0, keepdims=True)
    p_c = p_abc.sum(axis=(0, 1), keepdims=True)

    support = p_abc > 0
    num = (p_abc * p_c)[support]
    den = np.broadcast_to(p_ac * p_bc, p_abc.shape)[support]
    return float(np.sum(p_abc[support] * np.log2(num / den)))


def mutual_info(pmf: FinitePmf, A: Sequence[str], B: Sequence[str]) -> float:
    return cond_mutual_info(pmf, A, B, ())
