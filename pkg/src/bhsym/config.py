"""Run-level settings shared by the command line and the scripts."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class VerificationConfig:
    """Zero-test and worker settings."""

    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError("threads must be at least 1")


@dataclass(frozen=True)
class GridConfig:
    """Finite-difference study: coarsest grid and number of halvings."""

    x_range: tuple = (-1.0, 1.0)
    nx: int = 33
    ny: int = 33
    levels: int = 3
    t: float = 0.0
    min_order: float = 1.8


@dataclass(frozen=True)
class ExampleSetup:
    """Numeric values used when a closed-form solution is put on a grid."""

    constants: dict = field(default_factory=lambda: {"c1": 1, "c2": 1, "c3": 1, "c4": 1, "c5": 1, "a": 1})
    profile_params: dict = field(default_factory=dict)
    grid: GridConfig = field(default_factory=GridConfig)


EXAMPLE_SETUPS = {
    "cylinder": ExampleSetup(profile_params={"b4": 1.5}, grid=GridConfig(x_range=(-1.0, 1.0))),
    "pseudosphere": ExampleSetup(grid=GridConfig(x_range=(-1.0, 1.0))),
    "paraboloid": ExampleSetup(grid=GridConfig(x_range=(1.0, 2.0))),
}
