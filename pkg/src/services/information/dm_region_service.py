"""
DM Region Service - sub-rate systems of the two finite-alphabet coding schemes
"""
from functools import partial
from typing import Dict

from src.models.types import DEFAULTS
from src.services.fme.fme_service import (
    RATE_ROW_TERMS,
    IneqSystem,
    labeled_system,
    project_to_rate_pair,
)
from src.services.geometry.region_service import RateRegion
from src.services.information.pmf_service import FinitePmf, cond_mutual_info
from src.services.information.scheme_service import (
    DmScheme,
    EncodingMode,
    build_joint,
    require_mode,
)

# Rows of the superposition scheme reuse the labels of the matching simultaneous rows
SUPERPOSITION_LABELS = ("a1", "d1", "e1", "g1", "a2", "d2", "e2", "g2")


def _other(user: int) -> int:
    return 2 if user == 1 else 1


def simultaneous_terms(joint: FinitePmf) -> Dict[str, float]:
    """Right-hand sides a_j .. g_j for independent public/private auxiliaries"""
    I = partial(cond_mutual_info, joint)
    values: Dict[str, float] = {}
    for j in (1, 2):
        k = _other(j)
        U, V, Uo, Y = f"U{j}", f"V{j}", f"U{k}", f"Y{j}"
        Q = ["Q"]
        common = I([U], [Uo], Q) + I([U, Uo], [V], Q)
        bin_u = I([U], ["S"], Q)
        bin_v = I([V], ["S"], Q)
        bin_o = I([Uo], ["S"], Q)
        values[f"a{j}"] = common + I([V], [Y], [U, Uo, "Q"]) - bin_v
        values[f"b{j}"] = common + I([U], [Y], [V, Uo, "Q"]) - bin_u
        values[f"d{j}"] = common + I([U, V], [Y], [Uo, "Q"]) - bin_u - bin_v
        values[f"e{j}"] = common + I([V, Uo], [Y], [U, "Q"]) - bin_v - bin_o
        values[f"f{j}"] = common + I([U, Uo], [Y], [V, "Q"]) - bin_u - bin_o
        values[f"g{j}"] = common + I([U, V, Uo], [Y], Q) - bin_u - bin_v - bin_o
    return values


def superposition_terms(joint: FinitePmf) -> Dict[str, float]:
    """Right-hand sides when the private auxiliary is superimposed on the public one"""
    I = partial(cond_mutual_info, joint)
    values: Dict[str, float] = {}
    for j in (1, 2):
        k = _other(j)
        U, V, Uo, Y = f"U{j}", f"V{j}", f"U{k}", f"Y{j}"
        Q = ["Q"]
        common = I([U, V], [Uo], Q)
        bin_v = I([V], ["S"], [U, "Q"])
        bin_uv = I([U, V], ["S"], Q)
        bin_o = I([Uo], ["S"], Q)
        values[f"a{j}"] = common + I([V], [Y], [U, Uo, "Q"]) - bin_v
        values[f"d{j}"] = common + I([U, V], [Y], [Uo, "Q"]) - bin_uv
        values[f"e{j}"] = common + I([V, Uo], [Y], [U, "Q"]) - bin_v - bin_o
        values[f"g{j}"] = common + I([U, V, Uo], [Y], Q) - bin_uv - bin_o
    return values


def simultaneous_system(scheme: DmScheme, max_alphabet: int = DEFAULTS.MAX_ALPHABET) -> IneqSystem:
    """Twelve-row system over (R10, R11, R20, R22) plus non-negativity"""
    require_mode(scheme, EncodingMode.SIMULTANEOUS)
    return labeled_system(simultaneous_terms(build_joint(scheme, max_alphabet)))


def superposition_system(scheme: DmScheme, max_alphabet: int = DEFAULTS.MAX_ALPHABET) -> IneqSystem:
    """Eight-row system over (R10, R11, R20, R22) plus non-negativity"""
    require_mode(scheme, EncodingMode.SUPERPOSITION)
    terms = {label: RATE_ROW_TERMS[label] for label in SUPERPOSITION_LABELS}
    return labeled_system(superposition_terms(build_joint(scheme, max_alphabet)), terms)


def dm_region(scheme: DmScheme, max_alphabet: int = DEFAULTS.MAX_ALPHABET) -> RateRegion:
    if scheme.mode == EncodingMode.SIMULTANEOUS:
        system = simultaneous_system(scheme, max_alphabet)
    else:
        system = superposition_system(scheme, max_alphabet)
    return project_to_rate_pair(system).with_provenance(encoding=scheme.mode.value)
