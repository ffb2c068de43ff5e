"""Problem configuration shared by every other module.

Node 1 lives in the inner disk/ball of radius ``r1`` and node 2 in the
concentric outer region of radius ``r2 >= r1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class InternodalError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(InternodalError, ValueError):
    pass


class NonPositiveRadius(ConfigError):
    pass


class InnerExceedsOuter(ConfigError):
    pass


class NonFiniteInput(ConfigError):
    pass


class DomainError(InternodalError, ValueError):
    pass


class Dimension(enum.IntEnum):
    PLANAR_2D = 2
    SPATIAL_3D = 3

    @classmethod
    def parse(cls, value) -> "Dimension":
        if isinstance(value, Dimension):
            return value
        try:
            return cls(int(value))
        except (TypeError, ValueError):
            raise ConfigError(f"dimension must be 2 or 3, got {value!r}") from None


class PlacementKind(enum.Enum):
    UNIFORM = "uniform"
    RWP = "rwp"


class Scenario(enum.Enum):
    """Static/mobile assignment of the inner and outer node.

    ===  ==========  ==========
         inner (R1)  outer (R2)
    ===  ==========  ==========
    S1   RWP         uniform
    S2   uniform     RWP
    S3   RWP         RWP
    S4   uniform     uniform
    ===  ==========  ==========
    """

    S1 = "s1"
    S2 = "s2"
    S3 = "s3"
    S4 = "s4"

    def inner_node_model(self) -> PlacementKind:
        if self in (Scenario.S1, Scenario.S3):
            return PlacementKind.RWP
        return PlacementKind.UNIFORM

    def outer_node_model(self) -> PlacementKind:
        if self in (Scenario.S2, Scenario.S3):
            return PlacementKind.RWP
        return PlacementKind.UNIFORM

    @classmethod
    def parse(cls, value) -> "Scenario":
        if isinstance(value, Scenario):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ConfigError(f"scenario must be one of s1..s4, got {value!r}") from None


def check_radius(radius: float, name: str = "radius") -> float:
    radius = float(radius)
    if not math.isfinite(radius):
        raise NonFiniteInput(f"{name} must be finite, got {radius!r}")
    if radius <= 0.0:
        raise NonPositiveRadius(f"{name} must be > 0, got {radius!r}")
    return radius


@dataclass(frozen=True)
class NetworkConfig:
    dim: Dimension
    scenario: Scenario
    r1: float
    r2: float

    def __post_init__(self):
        object.__setattr__(self, "dim", Dimension.parse(self.dim))
        object.__setattr__(self, "scenario", Scenario.parse(self.scenario))

    @property
    def r_minus(self) -> float:
        return self.r2 - self.r1

    @property
    def r_plus(self) -> float:
        return self.r1 + self.r2

    @property
    def equal_radius(self) -> bool:
        return self.r1 == self.r2

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, self.r_plus)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Interior points where the density changes analytic form."""
        if self.equal_radius:
            return ()
        return (self.r_minus, self.r2)

    def scaled(self, c: float) -> "NetworkConfig":
        return NetworkConfig(self.dim, self.scenario, self.r1 * c, self.r2 * c)

    def label(self) -> str:
        return f"{int(self.dim)}d-{self.scenario.value}-r1={self.r1:g}-r2={self.r2:g}"

    def as_dict(self) -> dict:
        return {
            "dim": int(self.dim),
            "scenario": self.scenario.value,
            "r1": self.r1,
            "r2": self.r2,
        }


def validate_config(cfg: NetworkConfig) -> NetworkConfig:
    """Return ``cfg`` unchanged if its radii describe a valid geometry.

    Raises
    ------
    NonFiniteInput, NonPositiveRadius, InnerExceedsOuter
    """
    r1 = check_radius(cfg.r1, "r1")
    r2 = check_radius(cfg.r2, "r2")
    if r1 > r2:
        raise InnerExceedsOuter(f"r1 ({r1!r}) must not exceed r2 ({r2!r})")
    if (r1, r2) != (cfg.r1, cfg.r2):
        return NetworkConfig(cfg.dim, cfg.scenario, r1, r2)
    return cfg


def make_config(dim, scenario, r1, r2) -> NetworkConfig:
    return validate_config(NetworkConfig(Dimension.parse(dim), Scenario.parse(scenario), r1, r2))


def all_configs(r1: float = 1.0, r2: float = 2.0) -> list[NetworkConfig]:
    return [
        make_config(dim, scenario, r1, r2)
        for dim in Dimension
        for scenario in Scenario
    ]
