"""
Scheme Service - finite-alphabet coding schemes and the joint pmf they induce
"""
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, Mapping, Optional

import numpy as np

from src.models.errors import EncodingModeError, SchemeValidationError
from src.models.types import DEFAULTS
from src.services.information.pmf_service import JointPmf

ALPHABETS = ("Q", "S", "U1", "V1", "U2", "V2", "X1", "X2", "Y1", "Y2")


class EncodingMode(str, Enum):
    SIMULTANEOUS = "simultaneous"
    SUPERPOSITION = "superposition"


@dataclass(frozen=True, eq=False)
class DmScheme:
    """Auxiliary distributions, encoder maps and channel of a DM interference channel with state

    Table layouts (last axis is the distributed variable):
      u_j   (Q, S, U_j)
      v_j   (Q, S, V_j) simultaneous, (Q, S, U_j, V_j) superposition
      f_j   (U_j, V_j, S) -> index into X_j
      channel (X1, X2, S, Y1, Y2), normalized over (Y1, Y2)
    """
    sizes: Mapping[str, int]
    p_q: np.ndarray
    p_s: np.ndarray
    u1: np.ndarray
    v1: np.ndarray
    u2: np.ndarray
    v2: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    channel: np.ndarray
    mode: EncodingMode = EncodingMode.SIMULTANEOUS

    def size(self, name: str) -> int:
        return int(self.sizes[name])

    def expected_shapes(self) -> Dict[str, tuple]:
        z = self.size
        shapes = {
            "p_q": (z("Q"),),
            "p_s": (z("S"),),
            "u1": (z("Q"), z("S"), z("U1")),
            "u2": (z("Q"), z("S"), z("U2")),
            "f1": (z("U1"), z("V1"), z("S")),
            "f2": (z("U2"), z("V2"), z("S")),
            "channel": (z("X1"), z("X2"), z("S"), z("Y1"), z("Y2")),
        }
        if self.mode == EncodingMode.SIMULTANEOUS:
            shapes["v1"] = (z("Q"), z("S"), z("V1"))
            shapes["v2"] = (z("Q"), z("S"), z("V2"))
        else:
            shapes["v1"] = (z("Q"), z("S"), z("U1"), z("V1"))
            shapes["v2"] = (z("Q"), z("S"), z("U2"), z("V2"))
        return shapes


def _check_rows(name: str, table: np.ndarray, row_width: int, tol: float):
    rows = np.asarray(table, dtype=float).reshape(-1, row_width)
    for idx, row in enumerate(rows):
        if np.any(row < 0):
            raise SchemeValidationError("negative probability", table=name, row=idx)
        if abs(row.sum() - 1.0) > tol:
            raise SchemeValidationError(f"row sums to {row.sum():.15g}", table=name, row=idx)


def validate(scheme: DmScheme, max_alphabet: int = DEFAULTS.MAX_ALPHABET,
             tol: float = DEFAULTS.PMF_TOL) -> DmScheme:
    missing = [n for n in ALPHABETS if n not in scheme.sizes]
    if missing:
        raise SchemeValidationError(f"missing alphabet sizes {missing}", table="sizes")
    for name in ALPHABETS:
        size = scheme.size(name)
        if size < 1:
            raise SchemeValidationError(f"alphabet {name} has size {size}", table="sizes")
        if size > max_alphabet:
            raise SchemeValidationError(
                f"alphabet {name} has size {size} > cap {max_alphabet}; raise max_alphabet to allow it",
                table="sizes",
            )

    for name, shape in scheme.expected_shapes().items():
        actual = np.shape(getattr(scheme, name))
        if actual != shape:
            raise SchemeValidationError(f"shape {actual}, expected {shape}", table=name)

    _check_rows("p_q", scheme.p_q, scheme.size("Q"), tol)
    _check_rows("p_s", scheme.p_s, scheme.size("S"), tol)
    _check_rows("u1", scheme.u1, scheme.size("U1"), tol)
    _check_rows("v1", scheme.v1, scheme.size("V1"), tol)
    _check_rows("u2", scheme.u2, scheme.size("U2"), tol)
    _check_rows("v2", scheme.v2, scheme.size("V2"), tol)
    _check_rows("channel", scheme.channel, scheme.size("Y1") * scheme.size("Y2"), tol)

    for name, x_name in (("f1", "X1"), ("f2", "X2")):
        table = np.asarray(getattr(scheme, name))
        if not np.issubdtype(table.dtype, np.integer):
            raise SchemeValidationError("encoder map must hold integer indices", table=name)
        flat = table.reshape(-1)
        bad = np.flatnonzero((flat < 0) | (flat >= scheme.size(x_name)))
        if bad.size:
            raise SchemeValidationError(f"value {flat[bad[0]]} outside {x_name}", table=name, row=int(bad[0]))
    return scheme


def _encoder_indicator(f: np.ndarray, x_size: int) -> np.ndarray:
    """1[x = f(u, v, s)] as a (U, V, S, X) tensor"""
    return np.eye(x_size)[np.asarray(f, dtype=int)]


def build_joint(scheme: DmScheme, max_alphabet: int = DEFAULTS.MAX_ALPHABET) -> JointPmf:
    validate(scheme, max_alphabet=max_alphabet)
    d1 = _encoder_indicator(scheme.f1, scheme.size("X1"))
    d2 = _encoder_indicator(scheme.f2, scheme.size("X2"))
    # q s a=u1 b=v1 c=u2 d=v2 x=x1 y=x2 m=y1 n=y2
    if scheme.mode == EncodingMode.SIMULTANEOUS:
        subscripts = "q,s,qsa,qsb,qsc,qsd,absx,cdsy,xysmn->qsabcdxymn"
    else:
        subscripts = "q,s,qsa,qsab,qsc,qscd,absx,cdsy,xysmn->qsabcdxymn"
    weights = np.einsum(
        subscripts, scheme.p_q, scheme.p_s, scheme.u1, scheme.v1, scheme.u2, scheme.v2,
        d1, d2, scheme.channel, optimize=True,
    )
    total = float(weights.sum())
    if abs(total - 1.0) > DEFAULTS.JOINT_TOL:
        raise SchemeValidationError(f"joint sums to {total!r}")
    return JointPmf(weights)


def require_mode(scheme: DmScheme, mode: EncodingMode):
    if scheme.mode != mode:
        raise EncodingModeError(f"scheme uses {scheme.mode.value} encoding, {mode.value} required")


def embed_simultaneous(scheme: DmScheme) -> DmScheme:
    """Superposition-form copy whose private conditionals ignore the public auxiliary"""
    require_mode(scheme, EncodingMode.SIMULTANEOUS)
    v1 = np.broadcast_to(scheme.v1[:, :, None, :],
                         (scheme.size("Q"), scheme.size("S"), scheme.size("U1"), scheme.size("V1"))).copy()
    v2 = np.broadcast_to(scheme.v2[:, :, None, :],
                         (scheme.size("Q"), scheme.size("S"), scheme.size("U2"), scheme.size("V2"))).copy()
    return replace(scheme, v1=v1, v2=v2, mode=EncodingMode.SUPERPOSITION)


def swap_users(scheme: DmScheme) -> DmScheme:
    sizes = dict(scheme.sizes)
    for a, b in (("U1", "U2"), ("V1", "V2"), ("X1", "X2"), ("Y1", "Y2")):
        sizes[a], sizes[b] = scheme.sizes[b], scheme.sizes[a]
    return replace(
        scheme,
        sizes=sizes,
        u1=scheme.u2, v1=scheme.v2, u2=scheme.u1, v2=scheme.v1,
        f1=scheme.f2, f2=scheme.f1,
        channel=np.transpose(scheme.channel, (1, 0, 2, 4, 3)),
    )


def _random_rows(rng: np.random.Generator, shape) -> np.ndarray:
    table = rng.random(shape) + 1e-3
    return table / table.sum(axis=-1, keepdims=True)


def random_scheme(rng: np.random.Generator, sizes: Optional[Mapping[str, int]] = None,
                  mode: EncodingMode = EncodingMode.SIMULTANEOUS) -> DmScheme:
    """Random normalized scheme (binary alphabets unless `sizes` says otherwise)"""
    z = {name: 2 for name in ALPHABETS}
    if sizes:
        z.update(sizes)
    Q, S = z["Q"], z["S"]
    if mode == EncodingMode.SIMULTANEOUS:
        v1_shape, v2_shape = (Q, S, z["V1"]), (Q, S, z["V2"])
    else:
        v1_shape, v2_shape = (Q, S, z["U1"], z["V1"]), (Q, S, z["U2"], z["V2"])
    channel = _random_rows(rng, (z["X1"], z["X2"], S, z["Y1"] * z["Y2"]))
    return DmScheme(
        sizes=z,
        p_q=_random_rows(rng, (Q,)),
        p_s=_random_rows(rng, (S,)),
        u1=_random_rows(rng, (Q, S, z["U1"])),
        v1=_random_rows(rng, v1_shape),
        u2=_random_rows(rng, (Q, S, z["U2"])),
        v2=_random_rows(rng, v2_shape),
        f1=rng.integers(0, z["X1"], size=(z["U1"], z["V1"], S)),
        f2=rng.integers(0, z["X2"], size=(z["U2"], z["V2"], S)),
        channel=channel.reshape(z["X1"], z["X2"], S, z["Y1"], z["Y2"]),
        mode=mode,
    )
