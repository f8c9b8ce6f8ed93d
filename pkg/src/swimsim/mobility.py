"""Destination-selection kernel.

Each node scores every cell with

    w(C) = alpha * decay(distance(home, C)) + (1 - alpha) * seen_norm(C)

where the distance term falls off as 1 / (1 + k*d)^2 from the home-cell
center and seen_norm is the node's encounter count at C normalized by one
plus its total encounters. A destination is picked in two steps: alpha
decides between the near set (home + neighbouring cells) and the visiting
set, then one cell of the chosen set is drawn proportionally to w(C).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import (
    AreaBounds,
    LocationClass,
    LocationMap,
    Point2D,
    classify_locations,
    random_point_in_cell,
)

SEEN_UPDATE_MODES = ("symmetric", "bystanders_only")


@dataclass(frozen=True)
class UniformWait:
    low: float
    high: float

    def __post_init__(self):
        if not (0 < self.low <= self.high):
            raise ValueError(f"waitTime needs 0 < min <= max, got [{self.low}, {self.high}]")


@dataclass(frozen=True)
class PowerLawWait:
    """Truncated power law: density proportional to t^(-exponent) on [low, high]."""

    exponent: float
    low: float
    high: float

    def __post_init__(self):
        if self.exponent <= 1:
            raise ValueError(f"waitTime power-law exponent must be > 1, got {self.exponent}")
        if not (0 < self.low <= self.high):
            raise ValueError(f"waitTime needs 0 < min <= max, got [{self.low}, {self.high}]")


WaitTimeDist = UniformWait | PowerLawWait


def draw_wait_time(dist: WaitTimeDist, rng: np.random.Generator) -> float:
    """Inverse-CDF sample of the pause duration; always within [low, high]."""
    if dist.high == dist.low:
        return dist.low
    u = rng.random()
    if isinstance(dist, UniformWait):
        return dist.low + u * (dist.high - dist.low)
    g = 1.0 - dist.exponent
    return (dist.low**g + u * (dist.high**g - dist.low**g)) ** (1.0 / g)


@dataclass(frozen=True)
class ModelParams:
    """All simulation knobs; validated on construction."""

    alpha: float
    speed: float
    neighbour_limit: float
    n_locations: int
    area: AreaBounds
    wait: WaitTimeDist
    node_count: int
    sim_duration: float
    seed: int = 1
    decay_scale: float | None = None  # k; None picks 2 / area diagonal
    seen_update: str = "symmetric"

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 1.0):
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.speed <= 0:
            raise ValueError(f"speed must be > 0, got {self.speed}")
        if self.neighbour_limit < 0:
            raise ValueError(f"neighbourLocationLimit must be >= 0, got {self.neighbour_limit}")
        if self.n_locations < 2:
            raise ValueError(f"noOfLocations must be >= 2, got {self.n_locations}")
        if self.node_count < 1:
            raise ValueError(f"nodeCount must be >= 1, got {self.node_count}")
        if self.sim_duration <= 0:
            raise ValueError(f"simDuration must be > 0, got {self.sim_duration}")
        if not (isinstance(self.seed, int) and self.seed >= 0):
            raise ValueError(f"seed must be a nonnegative integer, got {self.seed}")
        if self.decay_scale is not None and self.decay_scale <= 0:
            raise ValueError(f"k must be > 0, got {self.decay_scale}")
        if self.seen_update not in SEEN_UPDATE_MODES:
            raise ValueError(f"seen_update must be one of {SEEN_UPDATE_MODES}, got {self.seen_update!r}")

    @property
    def k(self) -> float:
        if self.decay_scale is not None:
            return self.decay_scale
        return 2.0 / self.area.diagonal


def node_stream(seed: int, node_id: int) -> np.random.Generator:
    """Independent per-node RNG stream, stable under node-count changes."""
    return np.random.default_rng([seed, node_id])


@dataclass
class Paused:
    cell: int
    until: float
    since: float = 0.0


@dataclass
class Moving:
    origin: Point2D
    target: Point2D
    target_cell: int
    depart_at: float
    arrive_at: float


@dataclass
class NodeState:
    id: int
    home: int
    classes: list[LocationClass]
    position: Point2D
    phase: Paused | Moving
    seen: np.ndarray
    decay: np.ndarray = field(repr=False)          # cached decay per cell
    near_cells: np.ndarray = field(repr=False)     # home + neighbouring ids
    visiting_cells: np.ndarray = field(repr=False)


def make_node_state(
    node_id: int,
    position: Point2D,
    location_map: LocationMap,
    params: ModelParams,
) -> NodeState:
    """Derive home, classes and cached selection vectors from a position."""
    home = location_map.cell_of(position)
    classes = classify_locations(location_map, home, params.neighbour_limit)
    near = np.array(
        [i for i, c in enumerate(classes) if c is not LocationClass.VISITING],
        dtype=np.int64,
    )
    visiting = np.array(
        [i for i, c in enumerate(classes) if c is LocationClass.VISITING],
        dtype=np.int64,
    )
    return NodeState(
        id=node_id,
        home=home,
        classes=classes,
        position=position,
        phase=Paused(cell=home, until=0.0),
        seen=np.zeros(len(location_map), dtype=np.int64),
        decay=decay_vector(location_map, home, params.k),
        near_cells=near,
        visiting_cells=visiting,
    )


def distance_decay(home: int, c: int, location_map: LocationMap, k: float) -> float:
    """Distance term 1 / (1 + k*d)^2 for center-to-center distance d."""
    if k <= 0:
        raise ValueError(f"k must be > 0, got {k}")
    dx, dy = location_map.centers[c] - location_map.centers[home]
    d = float(np.hypot(dx, dy))
    return 1.0 / (1.0 + k * d) ** 2


def decay_vector(location_map: LocationMap, home: int, k: float) -> np.ndarray:
    d = np.hypot(*(location_map.centers - location_map.centers[home]).T)
    return 1.0 / (1.0 + k * d) ** 2


def seen_normalized(node: NodeState, c: int) -> float:
    """Encounter count at c over (1 + total encounters); 0 on a cold start."""
    return float(node.seen[c]) / (1.0 + float(node.seen.sum()))


def weight(node: NodeState, c: int, location_map: LocationMap, params: ModelParams) -> float:
    return params.alpha * distance_decay(node.home, c, location_map, params.k) + (
        1.0 - params.alpha
    ) * seen_normalized(node, c)


def normalized_weights(weights: np.ndarray) -> np.ndarray:
    """Selection probabilities proportional to nonnegative weights.

    All-zero weights fall back to a uniform choice, so scaling every weight
    by a positive constant never changes the result.
    """
    total = weights.sum()
    if total <= 0.0:
        return np.full(len(weights), 1.0 / len(weights))
    return weights / total


@dataclass(frozen=True)
class DestinationChoice:
    cell: int
    point: Point2D
    fallback: bool  # step-1 set was empty and the other set was used


def select_destination(
    node: NodeState,
    location_map: LocationMap,
    params: ModelParams,
    rng: np.random.Generator,
) -> DestinationChoice:
    """Two-step SWIM destination draw.

    Step 1: with probability alpha the candidate set is the near set
    (home + neighbouring), otherwise the visiting set; an empty set falls
    back to the other one. Step 2: one candidate is drawn proportionally to
    w(C), uniformly if every weight in the set is zero. The exact point is
    uniform over the chosen cell, which may be the node's current cell.
    """
    u = rng.random()
    candidates = node.near_cells if u < params.alpha else node.visiting_cells
    fallback = candidates.size == 0
    if fallback:
        candidates = node.visiting_cells if u < params.alpha else node.near_cells
    probs = normalized_weights(
        params.alpha * node.decay[candidates]
        + (1.0 - params.alpha) * node.seen[candidates] / (1.0 + float(node.seen.sum()))
    )
    r = rng.random()
    idx = int(np.searchsorted(np.cumsum(probs), r, side="right"))
    idx = min(idx, len(candidates) - 1)
    cell_id = int(candidates[idx])
    point = random_point_in_cell(location_map.cells[cell_id], rng)
    return DestinationChoice(cell=cell_id, point=point, fallback=fallback)
