"""Synthetic nine-gas DGA decision tables with a binary fault label.

Gas concentrations are drawn log-normally around per-class median levels.
A shared latent severity factor correlates the gases within each object, so
discretized condition vectors recur often enough for exact-match rules to
generalize. The seven fault gases sit at elevated levels under fault;
nitrogen and oxygen are class-independent.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .data import DecisionTable

GAS_NAMES = ("h2", "ch4", "c2h4", "c2h6", "c2h2", "co", "co2", "n2", "o2")
FAULT_GASES = GAS_NAMES[:7]
MIN_OBJECTS = 10


@dataclass(frozen=True)
class GasDistribution:
    """Log-normal parameters for one gas: median ppm and log-scale spread per class."""

    healthy_location: float
    healthy_spread: float
    faulty_location: float
    faulty_spread: float

    def __post_init__(self):
        for value in (
            self.healthy_location,
            self.healthy_spread,
            self.faulty_location,
            self.faulty_spread,
        ):
            if not value > 0:
                raise ValueError("location and spread parameters must be positive")


@dataclass(frozen=True)
class GasProfile:
    """Per-gas distributions plus the fault rate and inter-gas correlation."""

    gases: dict[str, GasDistribution]
    fault_fraction: float
    latent_weight: float

    def __post_init__(self):
        if tuple(self.gases) != GAS_NAMES:
            raise ValueError(f"profile must define exactly the gases {GAS_NAMES} in order")
        if not 0.0 < self.fault_fraction < 1.0:
            raise ValueError("fault_fraction must lie in (0, 1)")
        if not 0.0 <= self.latent_weight < 1.0:
            raise ValueError("latent_weight must lie in [0, 1)")


def profile_from_json(payload: dict) -> GasProfile:
    gases = {}
    for name in GAS_NAMES:
        entry = payload["gases"][name]
        gases[name] = GasDistribution(
            healthy_location=float(entry["healthy"]["location"]),
            healthy_spread=float(entry["healthy"]["spread"]),
            faulty_location=float(entry["faulty"]["location"]),
            faulty_spread=float(entry["faulty"]["spread"]),
        )
    return GasProfile(
        gases=gases,
        fault_fraction=float(payload["fault_fraction"]),
        latent_weight=float(payload["latent_weight"]),
    )


def profile_to_json(profile: GasProfile) -> dict:
    return {
        "fault_fraction": profile.fault_fraction,
        "latent_weight": profile.latent_weight,
        "gases": {
            name: {
                "healthy": {"location": d.healthy_location, "spread": d.healthy_spread},
                "faulty": {"location": d.faulty_location, "spread": d.faulty_spread},
            }
            for name, d in profile.gases.items()
        },
    }


def load_profile(path: str | Path) -> GasProfile:
    with open(path, encoding="utf-8") as fh:
        return profile_from_json(json.load(fh))


def default_profile() -> GasProfile:
    """The calibrated profile shipped with the package."""
    text = resources.files("roughcut").joinpath("profiles/default_dga.json").read_text("utf-8")
    return profile_from_json(json.loads(text))


def generate(profile: GasProfile, n: int, seed: int) -> DecisionTable:
    """Draw n objects: class by fault_fraction, gases log-normal given the class.

    Each object gets one latent severity draw shared (weighted by
    latent_weight) across all gases. Deterministic per seed.
    """
    if n < MIN_OBJECTS:
        raise ValueError(f"n must be at least {MIN_OBJECTS}")
    rng = np.random.default_rng(seed)
    decisions = (rng.random(n) < profile.fault_fraction).astype(np.int64)
    while decisions.sum() in (0, n):  # a training table needs both classes
        decisions = (rng.random(n) < profile.fault_fraction).astype(np.int64)

    shared = rng.standard_normal(n)
    mix = profile.latent_weight
    noise_weight = math.sqrt(1.0 - mix * mix)
    faulty = decisions == 1

    values = np.empty((n, len(GAS_NAMES)))
    for g, name in enumerate(GAS_NAMES):
        dist = profile.gases[name]
        z = mix * shared + noise_weight * rng.standard_normal(n)
        location = np.where(faulty, dist.faulty_location, dist.healthy_location)
        spread = np.where(faulty, dist.faulty_spread, dist.healthy_spread)
        values[:, g] = location * np.exp(spread * z)
    return DecisionTable(GAS_NAMES, values, decisions)
