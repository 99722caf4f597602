"""Air-to-ground probabilistic LoS/NLoS channels and cascaded-link assembly.

Large-scale model: free-space path loss plus an environment-dependent excess
loss for LoS or NLoS, with the link state drawn per Monte Carlo trial from an
elevation-angle sigmoid.  Small-scale model: LoS links are a deterministic
rank-1 product of unit-modulus array responses; NLoS links are i.i.d.
zero-mean unit-variance complex Gaussian per entry.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import Point3, distance, elevation_angle_deg

SPEED_OF_LIGHT = 3.0e8

__all__ = [
    "EnvParams",
    "ENV_PRESETS",
    "LinkState",
    "LinkChannel",
    "ChannelRealization",
    "los_probability",
    "path_loss_db",
    "terrestrial_path_loss_db",
    "ula_response",
    "draw_link",
    "draw_terrestrial_link",
    "realize_channels",
    "cascade_rows",
    "effective_channel",
    "db_to_linear",
    "dbm_to_watts",
]


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def dbm_to_watts(x_dbm: float) -> float:
    return 10.0 ** ((x_dbm - 30.0) / 10.0)


@dataclass(frozen=True)
class EnvParams:
    """Air-to-ground environment constants.

    a, b parameterize the elevation sigmoid of the LoS probability;
    eta_los_db / eta_nlos_db are the excess losses added to free-space path
    loss; f_c is the carrier frequency in Hz.
    """

    a: float
    b: float
    eta_los_db: float
    eta_nlos_db: float
    f_c: float = 2.0e9

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("sigmoid constants a, b must be > 0")
        if not (self.eta_nlos_db > self.eta_los_db >= 0):
            raise ValueError("excess losses must satisfy eta_nlos > eta_los >= 0")
        if not (self.f_c > 0):
            raise ValueError("carrier frequency must be > 0")


# Standard four-environment parameterization of the elevation-sigmoid model.
ENV_PRESETS: dict[str, EnvParams] = {
    "suburban": EnvParams(a=4.88, b=0.43, eta_los_db=0.1, eta_nlos_db=21.0),
    "urban": EnvParams(a=9.61, b=0.16, eta_los_db=1.0, eta_nlos_db=20.0),
    "dense_urban": EnvParams(a=12.08, b=0.11, eta_los_db=1.6, eta_nlos_db=23.0),
    "highrise": EnvParams(a=27.23, b=0.08, eta_los_db=2.3, eta_nlos_db=34.0),
}


class LinkState(enum.Enum):
    LOS = "los"
    NLOS = "nlos"


@dataclass
class LinkChannel:
    """One realized point-to-point link.

    matrix has shape (rx_elements, tx_elements); large_scale_gain is the
    linear power gain already folded into the matrix entries.
    """

    matrix: np.ndarray
    state: LinkState
    large_scale_gain: float
    distance: float


@dataclass
class ChannelRealization:
    """One Monte Carlo draw of every link in the reflected system.

    bs_to_uav[l] is (N, M); uav_to_user[l] is (1, N); direct is (1, M) or
    None when the direct path is blocked (the dead-zone default).
    """

    bs_to_uav: list[LinkChannel]
    uav_to_user: list[LinkChannel]
    direct: LinkChannel | None
    eta_reflect: float
    M: int
    N: int
    L: int
    _rows_cache: tuple[np.ndarray, np.ndarray | None] | None = field(
        default=None, repr=False, compare=False
    )

    def __post_init__(self):
        if len(self.bs_to_uav) != self.L or len(self.uav_to_user) != self.L:
            raise ValueError("link list lengths must equal the UAV count L")
        if not (0 < self.eta_reflect <= 1):
            raise ValueError("reflection efficiency must be in (0, 1]")


def los_probability(theta_deg: float, env: EnvParams) -> float:
    """Sigmoid LoS probability for an air-to-ground link at elevation theta_deg."""
    if not (0 < theta_deg <= 90):
        raise ValueError(f"elevation angle must be in (0, 90], got {theta_deg}")
    return 1.0 / (1.0 + env.a * math.exp(-env.b * (theta_deg - env.a)))


def path_loss_db(d: float, state: LinkState, env: EnvParams) -> float:
    """Free-space path loss plus the per-state excess loss, in dB."""
    if not (d > 0):
        raise ValueError(f"link distance must be > 0, got {d}")
    fspl = 20.0 * math.log10(4.0 * math.pi * env.f_c * d / SPEED_OF_LIGHT)
    excess = env.eta_los_db if state is LinkState.LOS else env.eta_nlos_db
    return fspl + excess


def terrestrial_path_loss_db(d: float, env: EnvParams, exponent: float = 3.5) -> float:
    """Log-distance ground-to-ground path loss (1 m free-space reference)."""
    if not (d > 0):
        raise ValueError(f"link distance must be > 0, got {d}")
    ref = 20.0 * math.log10(4.0 * math.pi * env.f_c / SPEED_OF_LIGHT)
    return ref + 10.0 * exponent * math.log10(d)


_ARANGE_CACHE: dict[int, np.ndarray] = {}


def _arange(count: int) -> np.ndarray:
    k = _ARANGE_CACHE.get(count)
    if k is None:
        k = np.arange(count)
        k.setflags(write=False)
        _ARANGE_CACHE[count] = k
    return k


def ula_response(count: int, angle_rad: float, spacing_wavelengths: float = 0.5) -> np.ndarray:
    """Uniform-linear-array response: exp(j*2*pi*spacing*k*sin(angle)), k=0..count-1."""
    if count < 1:
        raise ValueError("element count must be >= 1")
    if not (spacing_wavelengths > 0):
        raise ValueError("element spacing must be > 0")
    phase = 2.0 * math.pi * spacing_wavelengths * math.sin(angle_rad)
    return np.exp(1j * phase * _arange(count))


def _gain_from_pl(pl_db: float) -> float:
    # No amplification: clamp for pathological sub-wavelength distances.
    return min(1.0, db_to_linear(-pl_db))


def _complex_gaussian(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    # One RNG call for both quadratures; unit variance per complex entry.
    parts = rng.standard_normal(shape + (2,))
    return parts.view(np.complex128)[..., 0] / math.sqrt(2.0)


def draw_link(
    tx: Point3,
    rx: Point3,
    tx_n: int,
    rx_n: int,
    env: EnvParams,
    rng: np.random.Generator,
    force_state: LinkState | None = None,
) -> LinkChannel:
    """Draw one air-to-ground link between a ground node and an aerial node.

    The LoS/NLoS state is Bernoulli in the elevation-keyed LoS probability
    (one uniform draw, consumed even when force_state is given, so forced and
    unforced runs stay stream-aligned).  The LoS matrix is the outer product
    of unit-modulus array responses: the departure response is keyed to the
    link azimuth at the transmitter, the arrival response to the (signed)
    link elevation at the receiver.
    """
    if tx == rx:
        raise ValueError("link endpoints must differ")
    lo, hi = (tx, rx) if tx.z < rx.z else (rx, tx)
    theta = elevation_angle_deg(lo, hi)
    d = distance(tx, rx)

    p_los = los_probability(theta, env)
    u = rng.random()
    if force_state is not None:
        state = force_state
    else:
        state = LinkState.LOS if u < p_los else LinkState.NLOS
    gain = _gain_from_pl(path_loss_db(d, state, env))

    if state is LinkState.LOS:
        az_tx = math.atan2(rx.y - tx.y, rx.x - tx.x)
        el_rx = math.asin((tx.z - rx.z) / d)
        matrix = math.sqrt(gain) * np.outer(
            ula_response(rx_n, el_rx), np.conj(ula_response(tx_n, az_tx))
        )
    else:
        matrix = math.sqrt(gain) * _complex_gaussian(rng, (rx_n, tx_n))
    return LinkChannel(matrix=matrix, state=state, large_scale_gain=gain, distance=d)


def draw_terrestrial_link(
    tx: Point3,
    rx: Point3,
    tx_n: int,
    env: EnvParams,
    rng: np.random.Generator,
    exponent: float = 3.5,
) -> LinkChannel:
    """Ground-to-ground NLoS link (direct BS-user path when not blocked)."""
    d = distance(tx, rx)
    gain = _gain_from_pl(terrestrial_path_loss_db(d, env, exponent))
    matrix = math.sqrt(gain) * _complex_gaussian(rng, (1, tx_n))
    return LinkChannel(matrix=matrix, state=LinkState.NLOS, large_scale_gain=gain, distance=d)


def realize_channels(
    bs: Point3,
    uavs: list[Point3],
    user: Point3,
    M: int,
    N: int,
    eta_reflect: float,
    env: EnvParams,
    rng: np.random.Generator,
    direct_link_mode: str = "blocked",
) -> ChannelRealization:
    """Draw every link of one trial: L incident matrices, L reflected vectors,
    and optionally the direct path.

    Draw order is fixed (all BS->UAV links, then all UAV->user links, then
    the direct link) so a given stream state reproduces the realization
    bit-for-bit.
    """
    if not uavs:
        raise ValueError("at least one UAV is required")
    if M < 1 or N < 1:
        raise ValueError("element counts must be >= 1")
    if direct_link_mode not in ("blocked", "terrestrial_nlos"):
        raise ValueError(f"unknown direct_link_mode: {direct_link_mode!r}")

    bs_to_uav = [draw_link(bs, uav, M, N, env, rng) for uav in uavs]
    uav_to_user = [draw_link(uav, user, N, 1, env, rng) for uav in uavs]
    direct = None
    if direct_link_mode == "terrestrial_nlos":
        direct = draw_terrestrial_link(bs, user, M, env, rng)
    return ChannelRealization(
        bs_to_uav=bs_to_uav,
        uav_to_user=uav_to_user,
        direct=direct,
        eta_reflect=eta_reflect,
        M=M,
        N=N,
        L=len(uavs),
    )


def cascade_rows(r: ChannelRealization) -> tuple[np.ndarray, np.ndarray | None]:
    """Per-element cascaded contribution rows.

    Returns (rows, direct_row): rows has shape (L*N, M) with row (l, n) equal
    to conj(h_l[n]) * eta * G_l[n, :]; direct_row is conj of the stored direct
    vector (or None).  For phases theta and unit precoder w the received
    scalar is sum_k exp(1j*theta_k) * rows[k] @ w (+ direct_row @ w), i.e. the
    row-form effective channel applied to w.  Cached per realization.
    """
    if r._rows_cache is not None:
        return r._rows_cache
    rows = np.empty((r.L * r.N, r.M), dtype=complex)
    for l in range(r.L):
        block = rows[l * r.N : (l + 1) * r.N]
        np.multiply(
            np.conj(r.uav_to_user[l].matrix[0])[:, None], r.bs_to_uav[l].matrix, out=block
        )
        block *= r.eta_reflect
    direct_row = np.conj(r.direct.matrix[0]) if r.direct is not None else None
    r._rows_cache = (rows, direct_row)
    return r._rows_cache


def effective_channel(r: ChannelRealization, phases: np.ndarray) -> np.ndarray:
    """Cascaded effective channel (row form, length M) for per-element phases.

    phases must have shape (L, N).  The returned vector e satisfies
    "received scalar = e @ w"; it is linear in each per-element phasor and
    additive over UAVs.
    """
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (r.L, r.N):
        raise ValueError(f"phases must have shape {(r.L, r.N)}, got {phases.shape}")
    rows, direct_row = cascade_rows(r)
    e = np.exp(1j * phases.ravel()) @ rows
    if direct_row is not None:
        e = e + direct_row
    return e
