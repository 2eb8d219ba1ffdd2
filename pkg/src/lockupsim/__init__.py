"""Quarter-car wheel-lockup brake-attack simulation toolkit."""

from .actuator import BrakeActuator
from .dynamics import (
    DisturbanceSpec,
    DomainError,
    SpeedFloorError,
    TractionState,
    VehicleParams,
    lumped_disturbance,
    rhs_v_lambda,
    rhs_v_omega,
    slip_from_speeds,
    speeds_from_slip,
    vanishing_disturbance,
)
from .engine import (
    ActuatorConfig,
    Metrics,
    NdobConfig,
    Scenario,
    ScenarioResult,
    SimConfig,
    compiled_available,
    compute_metrics,
    run_scenario,
)
from .friction import BurckhardtParams, FrictionModel, mu_extrema
from .observer import SlipDisturbanceObserver, ndob_derivative
from .policies import (
    AdversaryModel,
    AttackPolicy,
    attack_torque,
    control_phi_one,
    control_phi_p,
    control_sign_phi_p,
    min_gain_lumped,
    min_gain_vanishing,
    phi_one,
    phi_p,
)

__version__ = "0.1.0"

__all__ = [
    "ActuatorConfig",
    "AdversaryModel",
    "AttackPolicy",
    "BrakeActuator",
    "BurckhardtParams",
    "DisturbanceSpec",
    "DomainError",
    "FrictionModel",
    "Metrics",
    "NdobConfig",
    "Scenario",
    "ScenarioResult",
    "SimConfig",
    "SlipDisturbanceObserver",
    "SpeedFloorError",
    "TractionState",
    "VehicleParams",
    "attack_torque",
    "compiled_available",
    "compute_metrics",
    "control_phi_one",
    "control_phi_p",
    "control_sign_phi_p",
    "lumped_disturbance",
    "min_gain_lumped",
    "min_gain_vanishing",
    "mu_extrema",
    "ndob_derivative",
    "phi_one",
    "phi_p",
    "rhs_v_lambda",
    "rhs_v_omega",
    "run_scenario",
    "slip_from_speeds",
    "speeds_from_slip",
    "vanishing_disturbance",
    "__version__",
]
