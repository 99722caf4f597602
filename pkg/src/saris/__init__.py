"""Link-level Monte Carlo simulator for a BS serving ground users through a
UAV swarm of reflecting surfaces: probabilistic air-to-ground channels,
closed-form joint beamforming, pilot-based cascaded-channel estimation, and
3D swarm deployment optimization."""

from .beamforming import (
    BeamformingSolution,
    BfOptions,
    align_phases,
    alternating_optimize,
    mrt,
    quantize_phases,
    snr_and_rate,
)
from .channel import (
    ENV_PRESETS,
    ChannelRealization,
    EnvParams,
    LinkChannel,
    LinkState,
    draw_link,
    effective_channel,
    los_probability,
    path_loss_db,
    realize_channels,
    ula_response,
)
from .deployment import GainMap, Grid2D, evaluate_position, grid_search
from .estimation import (
    EstimationResult,
    PilotBook,
    SubsurfaceGrouping,
    coefficient_count,
    group_subsurfaces,
    pilot_patterns,
    rate_loss,
    run_estimation,
)
from .experiments import (
    ResultTable,
    Scenario,
    run_deploy_map,
    run_estimation_sweep,
    run_rate_vs_radius,
    run_rate_vs_uavs,
)
from .geometry import DiskRegion, Point3, distance, elevation_angle_deg, sample_cluster, sample_uniform_disk

__version__ = "0.1.0"
