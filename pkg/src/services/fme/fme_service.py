"""
FME Service - Fourier-Motzkin elimination over sub-rate inequality systems
"""
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from src.models.types import DEFAULTS
from src.services.geometry.region_service import (
    HalfPlane,
    RateRegion,
    empty_region,
    intersect_halfplanes,
)

SUB_RATES = ("R10", "R11", "R20", "R22")


@dataclass(frozen=True, eq=False)
class IneqSystem:
    """Rows A @ x <= b over the named variables"""
    var_names: Tuple[str, ...]
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if A.size == 0:
            A = A.reshape(0, len(self.var_names))
        if A.shape[1] != len(self.var_names):
            raise ValueError(f"coefficient width {A.shape[1]} != {len(self.var_names)} variables")
        if A.shape[0] != b.shape[0]:
            raise ValueError("row count mismatch between A and b")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "var_names", tuple(self.var_names))

    @classmethod
    def from_rows(cls, var_names: Sequence[str], rows: Iterable[Tuple[Mapping[str, float], float]]) -> "IneqSystem":
        """Build from ({var: coeff}, rhs) pairs"""
        names = tuple(var_names)
        coeffs, rhs = [], []
        for terms, bound in rows:
            row = np.zeros(len(names))
            for name, value in terms.items():
                row[names.index(name)] += value
            coeffs.append(row)
            rhs.append(bound)
        return cls(names, np.array(coeffs).reshape(len(coeffs), len(names)), np.array(rhs, dtype=float))

    @property
    def n_rows(self) -> int:
        return self.A.shape[0]

    @property
    def rows(self) -> List[Tuple[np.ndarray, float]]:
        return [(self.A[i], float(self.b[i])) for i in range(self.n_rows)]

    def with_nonnegativity(self) -> "IneqSystem":
        """Append -x_i <= 0 for every variable"""
        n = len(self.var_names)
        return IneqSystem(self.var_names, np.vstack([self.A, -np.eye(n)]), np.concatenate([self.b, np.zeros(n)]))

    def is_feasible_point(self, x: Sequence[float], tol: float = DEFAULTS.ROW_TOL) -> bool:
        return bool(np.all(self.A @ np.asarray(x, dtype=float) <= self.b + tol))

    def __repr__(self) -> str:
        lines = []
        for coeffs, rhs in self.rows:
            lhs = " ".join(f"{c:+g}*{n}" for c, n in zip(coeffs, self.var_names) if c != 0) or "0"
            lines.append(f"{lhs} <= {rhs:g}")
        return f"IneqSystem({list(self.var_names)}; " + "; ".join(lines) + ")"


def _infeasible(var_names: Sequence[str]) -> IneqSystem:
    return IneqSystem(tuple(var_names), np.zeros((1, len(var_names))), np.array([-1.0]))


def is_infeasible_marker(sys: IneqSystem, tol: float = DEFAULTS.ROW_TOL) -> bool:
    """True when some all-zero row has a negative right-hand side"""
    zero = np.all(np.abs(sys.A) <= tol, axis=1)
    return bool(np.any(sys.b[zero] < -tol))


def eliminate(sys: IneqSystem, var: str, tol: float = DEFAULTS.ROW_TOL) -> IneqSystem:
    """Project out `var`: pair every positive row with every negative row, carry the rest"""
    k = sys.var_names.index(var)
    col = sys.A[:, k]
    pos = np.flatnonzero(col > tol)
    neg = np.flatnonzero(col < -tol)
    zero = np.flatnonzero(np.abs(col) <= tol)

    keep = [i for i in range(len(sys.var_names)) if i != k]
    new_A = [sys.A[i, keep] for i in zero]
    new_b = [sys.b[i] for i in zero]
    for p in pos:
        for n in neg:
            cp, cn = sys.A[p, k], -sys.A[n, k]
            combined = cn * sys.A[p] + cp * sys.A[n]
            new_A.append(combined[keep])
            new_b.append(cn * sys.b[p] + cp * sys.b[n])

    names = tuple(sys.var_names[i] for i in keep)
    if not new_A:
        return IneqSystem(names, np.zeros((0, len(names))), np.zeros(0))
    return IneqSystem(names, np.array(new_A), np.array(new_b))


def _normalize(A: np.ndarray, b: np.ndarray, tol: float) -> Tuple[np.ndarray, np.ndarray, bool]:
    """Scale rows by their largest coefficient and drop trivial rows; flag infeasibility"""
    scale = np.max(np.abs(A), axis=1) if A.size else np.zeros(len(b))
    trivial = scale <= tol
    if np.any(b[trivial] < -tol):
        return A[:0], b[:0], True
    keep = ~trivial & np.isfinite(b)
    A, b, scale = A[keep], b[keep], scale[keep]
    return A / scale[:, None], b / scale, False


def _drop_dominated(A: np.ndarray, b: np.ndarray, tol: float) -> Tuple[np.ndarray, np.ndarray]:
    """Among rows sharing a normal direction keep only the tightest"""
    tightest: Dict[Tuple[float, ...], int] = {}
    for i, row in enumerate(A):
        key = tuple(np.round(row / tol) * tol) if tol > 0 else tuple(row)
        j = tightest.get(key)
        if j is None or b[i] < b[j]:
            tightest[key] = i
    order = sorted(tightest.values())
    return A[order], b[order]


def remove_redundant(sys: IneqSystem, exact: bool = True, tol: float = DEFAULTS.ROW_TOL,
                     lp_tol: float = DEFAULTS.GEOM_TOL) -> IneqSystem:
    """Drop rows that do not shape the feasible set

    Duplicates and rows dominated by a parallel tighter row always go. With
    `exact` each remaining row is tested by maximizing its left-hand side over
    the rest of the system (row relaxed by 0.1 to keep the LP bounded).
    """
    A, b, infeasible = _normalize(sys.A, sys.b, tol)
    if infeasible:
        return _infeasible(sys.var_names)
    A, b = _drop_dominated(A, b, tol)
    if not exact or A.shape[0] <= 1:
        return IneqSystem(sys.var_names, A, b)

    n = A.shape[1]
    active = list(range(A.shape[0]))
    bounds = [(None, None)] * n
    for k in list(active):
        h = b[active].copy()
        pos = active.index(k)
        h[pos] += 0.1
        sol = linprog(-A[k], A_ub=A[active], b_ub=h, bounds=bounds, method="highs")
        if sol.status == 2:
            return _infeasible(sys.var_names)
        if sol.status == 0 and -sol.fun - b[k] <= lp_tol:
            active.remove(k)
    return IneqSystem(sys.var_names, A[active], b[active])


def _to_rate_pair_coordinates(sys: IneqSystem) -> IneqSystem:
    """Rewrite rows over (R10, R11, R20, R22) in (R1, R10, R2, R20) using R11 = R1 - R10, R22 = R2 - R20"""
    missing = [name for name in SUB_RATES if name not in sys.var_names]
    if missing:
        raise ValueError(f"system lacks sub-rate variables {missing}")
    idx = {name: sys.var_names.index(name) for name in SUB_RATES}
    c10, c11 = sys.A[:, idx["R10"]], sys.A[:, idx["R11"]]
    c20, c22 = sys.A[:, idx["R20"]], sys.A[:, idx["R22"]]
    A = np.column_stack([c11, c10 - c11, c22, c20 - c22])
    return IneqSystem(("R1", "R10", "R2", "R20"), A, sys.b.copy())


def rate_pair_system(sys: IneqSystem, order: Sequence[str] = ("R10", "R20")) -> IneqSystem:
    """Irredundant (R1, R2) system of a sub-rate system, or an infeasibility marker

    Every elimination step is followed by exact redundancy removal, so the
    rows that remain are the edges of the projected region.
    """
    current = _to_rate_pair_coordinates(sys)
    for var in order:
        current = remove_redundant(eliminate(current, var), exact=True)
        if is_infeasible_marker(current):
            return current
    return current


def project_to_rate_pair(sys: IneqSystem, order: Sequence[str] = ("R10", "R20"),
                         clip: float = DEFAULTS.CLIP_BITS) -> RateRegion:
    """Achievable (R1, R2) polygon of a sub-rate system with R1 = R10 + R11, R2 = R20 + R22"""
    if np.any(np.isnan(sys.b)) or np.any(sys.b == -math.inf):
        return empty_region(reason="non-finite right-hand side")
    current = rate_pair_system(sys, order)
    if is_infeasible_marker(current):
        return empty_region(reason="infeasible rate-pair system")

    planes = []
    for coeffs, rhs in current.rows:
        if rhs == math.inf:
            continue
        planes.append(HalfPlane(float(coeffs[0]), float(coeffs[1]), rhs))
    if not planes:
        return intersect_halfplanes([], clip=clip)
    return intersect_halfplanes(planes, clip=clip)


# Coefficients of the simultaneous-encoding rows, keyed by the label of each right-hand side
RATE_ROW_TERMS: Dict[str, Dict[str, float]] = {
    "a1": {"R11": 1.0},
    "b1": {"R10": 1.0},
    "d1": {"R10": 1.0, "R11": 1.0},
    "e1": {"R11": 1.0, "R20": 1.0},
    "f1": {"R10": 1.0, "R20": 1.0},
    "g1": {"R10": 1.0, "R11": 1.0, "R20": 1.0},
    "a2": {"R22": 1.0},
    "b2": {"R20": 1.0},
    "d2": {"R20": 1.0, "R22": 1.0},
    "e2": {"R22": 1.0, "R10": 1.0},
    "f2": {"R20": 1.0, "R10": 1.0},
    "g2": {"R20": 1.0, "R22": 1.0, "R10": 1.0},
}


def labeled_system(values: Mapping[str, float], terms: Mapping[str, Mapping[str, float]] = RATE_ROW_TERMS) -> IneqSystem:
    """Sub-rate system with one row per labeled right-hand side, plus non-negativity"""
    rows = [(terms[label], float(values[label])) for label in terms]
    return IneqSystem.from_rows(SUB_RATES, rows).with_nonnegativity()


def explicit_rate_pair_bounds(v: Mapping[str, float]) -> Dict[str, float]:
    """Closed-form (R1, R2) bounds of the simultaneous-encoding system"""
    a1, b1, d1, e1, f1, g1 = (v[k] for k in ("a1", "b1", "d1", "e1", "f1", "g1"))
    a2, b2, d2, e2, f2, g2 = (v[k] for k in ("a2", "b2", "d2", "e2", "f2", "g2"))
    return {
        "R1": min(d1, g1, a1 + b1, a1 + f1, a1 + e2, a1 + f2, b1 + e1, e1 + f1, e1 + f2),
        "R2": min(d2, g2, a2 + b2, a2 + f2, a2 + e1, a2 + f1, b2 + e2, e2 + f2, e2 + f1),
        "R1+R2": min(a1 + g2, a2 + g1, e1 + g2, e2 + g1, e1 + e2,
                     a1 + a2 + f1, a1 + a2 + f2, a1 + b2 + e2, a2 + b1 + e1),
        "R1+2R2": min(e1 + f1 + 2 * a2, e1 + 2 * a2 + f2, e1 + a2 + g2),
        "2R1+R2": min(e2 + f2 + 2 * a1, e2 + 2 * a1 + f1, e2 + a1 + g1),
    }


_EXPLICIT_NORMALS = {
    "R1": (1.0, 0.0),
    "R2": (0.0, 1.0),
    "R1+R2": (1.0, 1.0),
    "R1+2R2": (1.0, 2.0),
    "2R1+R2": (2.0, 1.0),
}


def explicit_rate_pair_region(values: Mapping[str, float], tol: float = DEFAULTS.ROW_TOL,
                              clip: float = DEFAULTS.CLIP_BITS) -> RateRegion:
    """Direct evaluation of the eliminated simultaneous-encoding region

    Every row bounds a sum of non-negative sub-rates, so a negative right-hand
    side anywhere makes the region empty.
    """
    negative = sorted(k for k, val in values.items() if not val >= -tol)
    if negative:
        return empty_region(collapsed=negative)
    clamped = {k: max(float(val), 0.0) for k, val in values.items()}
    bounds = explicit_rate_pair_bounds(clamped)
    planes = [HalfPlane(*_EXPLICIT_NORMALS[name], bound) for name, bound in bounds.items()]
    return intersect_halfplanes(planes, clip=clip).with_provenance(bounds=bounds)
