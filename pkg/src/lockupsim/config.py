"""Scenario configuration: INI-style documents with typed, validated keys.

Every physical and controller default is named here (never hard-coded in
the physics code).  Unknown sections or keys are rejected; parse ->
serialize -> parse is a fixed point.
"""

from __future__ import annotations

import configparser
import io
import math

from .dynamics import DisturbanceSpec, VehicleParams
from .engine import ActuatorConfig, NdobConfig, Scenario, SimConfig
from .friction import ROAD_PRESETS, FrictionModel
from .policies import AdversaryModel, AttackPolicy


class ConfigError(ValueError):
    """Invalid scenario configuration; ``key`` names the offending entry."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


def _parse_bool(s: str) -> bool:
    low = s.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


_F = ("float", float)
_B = ("bool", _parse_bool)
_S = ("str", lambda s: s.strip())

# section -> key -> (default, (type name, parser))
SCHEMA: dict[str, dict[str, tuple] ] = {
    "vehicle": {
        "m": (250.0, _F),
        "r": (0.3, _F),
        "j": (1.5, _F),
        "alpha_deg": (0.0, _F),
        "g": (9.81, _F),
    },
    "road": {
        "kind": ("burckhardt", _S),
        "preset": ("dry_asphalt", _S),
        "c1": (None, _F),
        "c2": (None, _F),
        "c3": (None, _F),
        "knots": ("", _S),
    },
    "disturbance": {
        "kind": ("zero", _S),
        "amplitude_v": (0.0, _F),
        "frequency_v": (1.0, _F),
        "amplitude_w": (0.0, _F),
        "frequency_w": (1.0, _F),
        "bound_v": (0.0, _F),
        "bound_w": (0.0, _F),
    },
    "actuator": {
        "tau_f_ms": (16.0, _F),
        "delta_f_ms": (15.0, _F),
        "ideal": (False, _B),
    },
    "attack": {
        "variant": ("prop3", _S),
        "t_c": (0.95, _F),
        "p": (0.15, _F),
        "k": (0.0, _F),
        "k_a": (0.0, _F),
        "use_ndob": (None, _B),
        "nu_hat": (15.0, _F),
        "mu_hat": ("zero", _S),
        "upsilon_const": (10.0, _F),
        "v_min_assumed": ("auto", _S),
        "boundary_layer": (0.0, _F),
        "upsilon_max": ("none", _S),
    },
    "ndob": {
        "enabled": (None, _B),
        "l_d": (2.65, _F),
        "init": ("zero_state", _S),
    },
    "sim": {
        "dt": (1e-4, _F),
        "t_max": (3.0, _F),
        "v0": (30.0, _F),
        "lambda0": (0.0, _F),
        "lockup_threshold": (0.99, _F),
        "v_floor": (0.5, _F),
        "coordinates": ("v_lambda", _S),
        "stop_on_lockup": (True, _B),
    },
}

# maps the external controller variant identifiers to internal names
VARIANT_NAMES = {
    "prop1": "phi_p",
    "prop2": "sign_phi_p",
    "prop3": "phi_one",
    "constant": "constant",
}


class ScenarioConfig:
    """A fully resolved key-value configuration plus its typed builder."""

    def __init__(self, values: dict[str, dict[str, object]]):
        self.values = values

    def get(self, section: str, key: str):
        return self.values[section][key]

    def serialize(self) -> str:
        cp = configparser.ConfigParser(interpolation=None)
        for section, keys in SCHEMA.items():
            cp.add_section(section)
            for key in keys:
                val = self.values[section][key]
                if val is None:
                    continue
                cp.set(section, key, _fmt(val))
        buf = io.StringIO()
        cp.write(buf)
        return buf.getvalue()

    def as_dict(self) -> dict:
        return {
            section: {k: v for k, v in keys.items() if v is not None}
            for section, keys in self.values.items()
        }

    # -- typed builders ----------------------------------------------------

    def _vehicle(self) -> VehicleParams:
        v = self.values["vehicle"]
        try:
            return VehicleParams(
                M=v["m"],
                r=v["r"],
                J=v["j"],
                alpha=math.radians(v["alpha_deg"]),
                g=v["g"],
            )
        except ValueError as exc:
            raise ConfigError("vehicle", str(exc)) from None

    def _road(self) -> FrictionModel:
        r = self.values["road"]
        kind = r["kind"]
        if kind == "zero":
            return FrictionModel.zero()
        if kind == "table":
            if not r["knots"]:
                raise ConfigError("road.knots", "table kind needs knots")
            try:
                pairs = []
                for item in r["knots"].split(","):
                    lam_s, mu_s = item.split(":")
                    pairs.append((float(lam_s), float(mu_s)))
                return FrictionModel.tabulated(pairs)
            except ConfigError:
                raise
            except ValueError as exc:
                raise ConfigError("road.knots", str(exc)) from None
        if kind != "burckhardt":
            raise ConfigError(
                "road.kind", f"unknown kind {kind!r}; use burckhardt, zero or table"
            )
        preset = r["preset"]
        if preset not in ROAD_PRESETS:
            raise ConfigError(
                "road.preset",
                f"unknown preset {preset!r}; options: {sorted(ROAD_PRESETS)}",
            )
        c1, c2, c3 = ROAD_PRESETS[preset]
        c1 = r["c1"] if r["c1"] is not None else c1
        c2 = r["c2"] if r["c2"] is not None else c2
        c3 = r["c3"] if r["c3"] is not None else c3
        try:
            return FrictionModel.burckhardt(c1, c2, c3)
        except ValueError as exc:
            raise ConfigError("road", str(exc)) from None

    def _disturbances(self) -> DisturbanceSpec:
        d = self.values["disturbance"]
        kind = d["kind"]
        try:
            if kind == "zero":
                return DisturbanceSpec.zero()
            if kind == "constant":
                return DisturbanceSpec.constant(
                    d["amplitude_v"],
                    d["amplitude_w"],
                    bound_v=d["bound_v"] or None,
                    bound_w=d["bound_w"] or None,
                )
            if kind == "sinusoid":
                return DisturbanceSpec.sinusoid(
                    d["amplitude_v"],
                    d["frequency_v"],
                    d["amplitude_w"],
                    d["frequency_w"],
                    bound_v=d["bound_v"] or None,
                    bound_w=d["bound_w"] or None,
                )
        except ValueError as exc:
            raise ConfigError("disturbance", str(exc)) from None
        raise ConfigError(
            "disturbance.kind",
            f"unknown kind {kind!r}; use zero, constant or sinusoid",
        )

    def _ndob_enabled(self) -> bool:
        use_ndob = self.values["attack"]["use_ndob"]
        enabled = self.values["ndob"]["enabled"]
        if use_ndob is None and enabled is None:
            return self.values["attack"]["variant"] != "constant"
        if use_ndob is not None and enabled is not None and use_ndob != enabled:
            raise ConfigError(
                "ndob.enabled",
                "attack.use_ndob and ndob.enabled disagree",
            )
        return use_ndob if use_ndob is not None else enabled

    def _policy(self) -> AttackPolicy:
        a = self.values["attack"]
        variant_id = a["variant"]
        if variant_id not in VARIANT_NAMES:
            raise ConfigError(
                "attack.variant",
                f"unknown variant {variant_id!r}; options: "
                f"{sorted(VARIANT_NAMES)}",
            )
        mu_hat_id = a["mu_hat"]
        if mu_hat_id == "zero":
            mu_hat = FrictionModel.zero()
        elif mu_hat_id in ROAD_PRESETS:
            mu_hat = FrictionModel.preset(mu_hat_id)
        else:
            raise ConfigError(
                "attack.mu_hat",
                f"unknown value {mu_hat_id!r}; use zero or a road preset",
            )
        v_min = a["v_min_assumed"]
        if v_min == "auto":
            v_min = 0.3 * self.values["sim"]["v0"]
        else:
            try:
                v_min = float(v_min)
            except ValueError:
                raise ConfigError(
                    "attack.v_min_assumed", f"not a number or 'auto': {v_min!r}"
                ) from None
        ups_max = a["upsilon_max"]
        if ups_max == "none":
            ups_max = None
        else:
            try:
                ups_max = float(ups_max)
            except ValueError:
                raise ConfigError(
                    "attack.upsilon_max", f"not a number or 'none': {ups_max!r}"
                ) from None
        try:
            adversary = AdversaryModel(
                nu_hat=a["nu_hat"],
                mu_hat=mu_hat,
                v_min_assumed=v_min,
                bound_v_assumed=self.values["disturbance"]["bound_v"],
                bound_w_assumed=self.values["disturbance"]["bound_w"],
            )
            return AttackPolicy(
                variant=VARIANT_NAMES[variant_id],
                adversary=adversary,
                T_c=a["t_c"],
                p=a["p"],
                k=a["k"],
                k_a=a["k_a"],
                upsilon_const=a["upsilon_const"],
                boundary_layer=a["boundary_layer"],
                use_ndob=self._ndob_enabled(),
                upsilon_max=ups_max,
            )
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError("attack", str(exc)) from None

    def build(self) -> Scenario:
        n = self.values["ndob"]
        s = self.values["sim"]
        act = self.values["actuator"]
        try:
            ndob = NdobConfig(
                enabled=self._ndob_enabled(), L_d=n["l_d"], init=n["init"]
            )
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError("ndob", str(exc)) from None
        try:
            sim = SimConfig(
                dt=s["dt"],
                t_max=s["t_max"],
                v0=s["v0"],
                lambda0=s["lambda0"],
                lockup_threshold=s["lockup_threshold"],
                v_floor=s["v_floor"],
                coordinates=s["coordinates"],
                stop_on_lockup=s["stop_on_lockup"],
            )
        except ValueError as exc:
            raise ConfigError("sim", str(exc)) from None
        try:
            actuator = ActuatorConfig(
                tau_f=act["tau_f_ms"] / 1000.0,
                delta_f=act["delta_f_ms"] / 1000.0,
                ideal=act["ideal"],
            )
        except ValueError as exc:
            raise ConfigError("actuator", str(exc)) from None
        try:
            return Scenario(
                vehicle=self._vehicle(),
                friction=self._road(),
                disturbances=self._disturbances(),
                actuator=actuator,
                policy=self._policy(),
                ndob=ndob,
                sim=sim,
            )
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError("scenario", str(exc)) from None


def default_values() -> dict[str, dict[str, object]]:
    return {
        section: {key: spec[0] for key, spec in keys.items()}
        for section, keys in SCHEMA.items()
    }


def from_overrides(overrides: dict[str, dict[str, object]]) -> ScenarioConfig:
    """Build a configuration from defaults plus a nested override mapping."""
    values = default_values()
    for section, keys in overrides.items():
        if section not in values:
            raise ConfigError(section, "unknown section")
        for key, val in keys.items():
            if key not in values[section]:
                raise ConfigError(f"{section}.{key}", "unknown key")
            values[section][key] = val
    return ScenarioConfig(values)


def parse_scenario(text: str) -> ScenarioConfig:
    """Parse a configuration document, applying defaults for absent keys.

    Raises ConfigError naming the offending section/key on unknown entries,
    type mismatches or invariant violations.
    """
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError("document", f"malformed configuration: {exc}") from None

    values = default_values()
    for section in cp.sections():
        if section not in SCHEMA:
            raise ConfigError(section, "unknown section")
        for key, raw in cp.items(section):
            if key not in SCHEMA[section]:
                raise ConfigError(f"{section}.{key}", "unknown key")
            type_name, parser = SCHEMA[section][key][1]
            try:
                values[section][key] = parser(raw)
            except ValueError:
                raise ConfigError(
                    f"{section}.{key}",
                    f"expected {type_name}, got {raw!r}",
                ) from None
    cfg = ScenarioConfig(values)
    cfg.build()  # validate eagerly so callers get errors at parse time
    return cfg


def load_scenario(path) -> ScenarioConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scenario(fh.read())


# -- the five-attack comparison suite ---------------------------------------

FIVE_ATTACKS = (
    ("constant_torque", "constant", False),
    ("phi_p", "prop1", False),
    ("phi_1", "prop3", False),
    ("phi_p_ndob", "prop1", True),
    ("phi_1_ndob", "prop3", True),
)

SUITE_LABELS = {
    "constant_torque": "constant torque",
    "phi_p": "phi_p controller",
    "phi_1": "phi_1 controller",
    "phi_p_ndob": "phi_p + NDOB",
    "phi_1_ndob": "phi_1 + NDOB",
}


def five_attacks_suite(
    road: str, dt: float | None = None, t_max: float | None = None
) -> list[tuple[str, ScenarioConfig]]:
    """The five-scenario comparison on one road preset ('dry' or 'wet').

    Constant torque, the smooth and exponential controller families without
    an observer, and the same two families with the observer; the adversary
    has no road knowledge (mu_hat = 0) and no robustness gains (k = k_a = 0).
    """
    preset = {"dry": "dry_asphalt", "wet": "wet_asphalt"}.get(road)
    if preset is None:
        raise ConfigError("road", f"unknown road {road!r}; use dry or wet")
    out = []
    for name, variant, ndob in FIVE_ATTACKS:
        overrides: dict[str, dict[str, object]] = {
            "road": {"preset": preset},
            "attack": {"variant": variant, "use_ndob": ndob},
            "ndob": {"enabled": ndob},
        }
        if dt is not None:
            overrides.setdefault("sim", {})["dt"] = dt
        if t_max is not None:
            overrides.setdefault("sim", {})["t_max"] = t_max
        out.append((name, from_overrides(overrides)))
    return out
