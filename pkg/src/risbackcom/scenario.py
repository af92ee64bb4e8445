"""Experiment description: geometry, powers, fading statistics, protocol sizing.

Every other module consumes a validated, immutable :class:`Scenario`. All
internal math is linear/SI; dB and dBm appear only at the configuration
boundary (see :mod:`risbackcom.config`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

TWO_PI = 2.0 * math.pi

RAYLEIGH = "rayleigh"
RICIAN = "rician"
FADING_KINDS = (RAYLEIGH, RICIAN)

RANDOM = "random"
FORWARD_ALIGNED = "forward_aligned"
COORDINATE_ASCENT = "coordinate_ascent"
PHASE_DESIGNS = (RANDOM, FORWARD_ALIGNED, COORDINATE_ASCENT)

REFERENCE_ZERO = "reference_zero"
PER_BD_ALIGNED = "per_bd_aligned"
TRAINING_POLICIES = (REFERENCE_ZERO, PER_BD_ALIGNED)


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0) / 1000.0


def watts_to_dbm(watts: float) -> float:
    return 10.0 * math.log10(watts * 1000.0)


class ScenarioError(ValueError):
    """Scenario invariant violation; the message names every failed check."""


@dataclass(frozen=True)
class Position2D:
    x: float
    y: float


def distance(a: Position2D, b: Position2D) -> float:
    """Euclidean distance between two positions, in meters."""
    return math.hypot(a.x - b.x, a.y - b.y)


@dataclass(frozen=True)
class FadingSpec:
    """Small-scale fading law for a group of links.

    ``rician_factor`` is the linear LoS-to-scatter power ratio and is
    ignored for Rayleigh links. ``path_loss_exponent`` feeds the d^(-alpha)
    large-scale gain of the same links.
    """

    kind: str = RAYLEIGH
    rician_factor: float = 0.0
    path_loss_exponent: float = 3.0


@dataclass(frozen=True)
class Corridor:
    """Axis-aligned box that every BD position must fall inside."""

    x_min: float = 5.0
    x_max: float = 95.0
    y_min: float = 0.0
    y_max: float = 0.0

    def contains(self, p: Position2D) -> bool:
        return self.x_min <= p.x <= self.x_max and self.y_min <= p.y <= self.y_max


# Linear defaults for the dB-valued quantities: 35 dBm carrier power,
# -90 dBm noise, 15 dB SINR threshold, 3 dB Rician factor.
DEFAULT_CE_POWER_W = dbm_to_watts(35.0)
DEFAULT_NOISE_POWER_W = dbm_to_watts(-90.0)
DEFAULT_SINR_THRESHOLD = db_to_linear(15.0)
DEFAULT_RICIAN_FACTOR = db_to_linear(3.0)


@dataclass(frozen=True)
class Scenario:
    """Complete description of one simulated deployment.

    Immutable after :func:`validate`; safe to share across trial workers.
    """

    ce_pos: Position2D = Position2D(0.0, 0.0)
    br_pos: Position2D = Position2D(100.0, 0.0)
    ris_pos: Position2D = Position2D(20.0, 0.0)
    bd_positions: tuple[Position2D, ...] = (Position2D(30.0, 0.0), Position2D(70.0, 0.0))
    n_elements: int = 40
    ce_power: float = DEFAULT_CE_POWER_W
    noise_power: float = DEFAULT_NOISE_POWER_W
    gamma1: float = 0.8
    gamma2: float = 0.3
    sinr_threshold: float = DEFAULT_SINR_THRESHOLD
    ris_link_fading: FadingSpec = FadingSpec(RICIAN, DEFAULT_RICIAN_FACTOR, 2.4)
    other_link_fading: FadingSpec = FadingSpec(RAYLEIGH, 0.0, 3.0)
    phase_design: str = COORDINATE_ASCENT
    phase_bits: int | None = None
    training_phase_policy: str = REFERENCE_ZERO
    slot_duration: float = 0.01
    n_frames: int = 100
    conversion_efficiency: float = 0.2
    n_transmission_slots: int | None = None
    corridor: Corridor = field(default_factory=Corridor)

    @property
    def n_bds(self) -> int:
        return len(self.bd_positions)

    @property
    def n_clusters(self) -> int:
        return self.n_bds // 2


def _check_fading(spec: FadingSpec, label: str, problems: list[str]) -> None:
    if spec.kind not in FADING_KINDS:
        problems.append(f"{label}: unknown fading kind {spec.kind!r} (expected one of {FADING_KINDS})")
    if not spec.rician_factor >= 0.0:
        problems.append(f"{label}: rician_factor must be >= 0, got {spec.rician_factor}")
    if not spec.path_loss_exponent > 0.0:
        problems.append(f"{label}: path_loss_exponent must be > 0, got {spec.path_loss_exponent}")


def validate(scenario: Scenario) -> Scenario:
    """Check every scenario invariant and fill defaults for absent fields.

    Returns the scenario (with ``n_transmission_slots`` defaulted to one
    slot per cluster) when all invariants hold. Raises :class:`ScenarioError`
    whose message lists every violated invariant, not just the first.
    """
    problems: list[str] = []
    s = scenario

    for name, pos in (("ce_pos", s.ce_pos), ("br_pos", s.br_pos), ("ris_pos", s.ris_pos)):
        if not (math.isfinite(pos.x) and math.isfinite(pos.y)):
            problems.append(f"{name} must be finite, got ({pos.x}, {pos.y})")

    k = s.n_bds
    if k < 2:
        problems.append(f"need at least 2 BDs, got {k}")
    if k % 2 != 0:
        problems.append(f"K must be even for pairing, got K={k}")
    for i, pos in enumerate(s.bd_positions):
        if not (math.isfinite(pos.x) and math.isfinite(pos.y)):
            problems.append(f"bd_positions[{i}] must be finite, got ({pos.x}, {pos.y})")
        elif not s.corridor.contains(pos):
            problems.append(
                f"bd_positions[{i}] = ({pos.x}, {pos.y}) outside corridor "
                f"x in [{s.corridor.x_min}, {s.corridor.x_max}], "
                f"y in [{s.corridor.y_min}, {s.corridor.y_max}]"
            )

    if s.n_elements < 0:
        problems.append(f"n_elements must be >= 0, got {s.n_elements}")
    if not s.ce_power > 0.0:
        problems.append(f"ce_power must be positive, got {s.ce_power}")
    if not s.noise_power > 0.0:
        problems.append(f"noise_power must be positive, got {s.noise_power}")

    if not (0.0 <= s.gamma2 < s.gamma1 <= 1.0):
        problems.append(
            f"gamma order violated: require 1 >= gamma1 > gamma2 >= 0, "
            f"got gamma1={s.gamma1}, gamma2={s.gamma2}"
        )

    if not s.sinr_threshold > 0.0:
        problems.append(f"sinr_threshold must be positive, got {s.sinr_threshold}")

    _check_fading(s.ris_link_fading, "ris_link_fading", problems)
    _check_fading(s.other_link_fading, "other_link_fading", problems)

    if s.phase_design not in PHASE_DESIGNS:
        problems.append(f"unknown phase_design {s.phase_design!r} (expected one of {PHASE_DESIGNS})")
    if s.phase_bits is not None and s.phase_bits < 1:
        problems.append(f"phase_bits must be >= 1 when set, got {s.phase_bits}")
    if s.training_phase_policy not in TRAINING_POLICIES:
        problems.append(
            f"unknown training_phase_policy {s.training_phase_policy!r} "
            f"(expected one of {TRAINING_POLICIES})"
        )

    if not s.slot_duration > 0.0:
        problems.append(f"slot_duration must be positive, got {s.slot_duration}")
    if s.n_frames < 1:
        problems.append(f"n_frames must be >= 1, got {s.n_frames}")
    if not 0.0 <= s.conversion_efficiency <= 1.0:
        problems.append(f"conversion_efficiency must be in [0, 1], got {s.conversion_efficiency}")

    # One transmission slot per cluster; any other allocation breaks the
    # frame shape that decoding and energy accounting assume.
    if k >= 2 and k % 2 == 0:
        if s.n_transmission_slots is not None and s.n_transmission_slots != k // 2:
            problems.append(
                f"n_transmission_slots must equal K/2 = {k // 2}, got {s.n_transmission_slots}"
            )

    if problems:
        raise ScenarioError("scenario validation failed:\n  - " + "\n  - ".join(problems))

    if s.n_transmission_slots is None:
        return replace(s, n_transmission_slots=k // 2)
    return s
