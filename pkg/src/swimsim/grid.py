"""Rectangular grid of movement locations.

The movement area is split into a grid of equal-size rectangular cells
("locations"). Every node shares the same grid; a node classifies each cell
as its home location, a neighbouring location (cell center within the
neighbour limit of the home center) or a visiting location.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

LOCATIONS_HEADER_RE = re.compile(r"^# swim-locations v1 rows=(\d+) cols=(\d+)$")


@dataclass(frozen=True)
class Point2D:
    x: float
    y: float


@dataclass(frozen=True)
class AreaBounds:
    width: float
    height: float

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise ValueError(f"area must be positive, got {self.width} x {self.height}")

    @property
    def diagonal(self) -> float:
        return math.hypot(self.width, self.height)

    def contains(self, p: Point2D) -> bool:
        return 0.0 <= p.x <= self.width and 0.0 <= p.y <= self.height


@dataclass(frozen=True)
class Cell:
    id: int
    min_x: float
    min_y: float
    max_x: float
    max_y: float

    @property
    def center(self) -> Point2D:
        return Point2D((self.min_x + self.max_x) / 2.0, (self.min_y + self.max_y) / 2.0)

    def contains(self, p: Point2D) -> bool:
        return self.min_x <= p.x <= self.max_x and self.min_y <= p.y <= self.max_y


class LocationClass(Enum):
    HOME = "home"
    NEIGHBOURING = "neighbouring"
    VISITING = "visiting"


@dataclass
class LocationMap:
    """Immutable grid of cells tiling the movement area, row-major ids."""

    cells: tuple[Cell, ...]
    rows: int
    cols: int
    area: AreaBounds
    # (n, 2) cell-center coordinates, kept alongside for vectorized math
    centers: np.ndarray = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        if self.centers is None:
            object.__setattr__(
                self,
                "centers",
                np.array([[c.center.x, c.center.y] for c in self.cells]),
            )

    def __len__(self) -> int:
        return len(self.cells)

    def cell_of(self, p: Point2D) -> int:
        return cell_of(self, p)


def grid_shape(area: AreaBounds, n_locations: int) -> tuple[int, int]:
    """Pick (rows, cols) with rows*cols == n_locations and the squarest cells.

    Ties on |cell_width - cell_height| break toward cols >= rows, then toward
    fewer rows, so the choice is total and deterministic.
    """
    best = None
    for rows in range(1, n_locations + 1):
        if n_locations % rows:
            continue
        cols = n_locations // rows
        diff = abs(area.width / cols - area.height / rows)
        key = (diff, 0 if cols >= rows else 1, rows)
        if best is None or key < best[0]:
            best = (key, (rows, cols))
    return best[1]


def build_grid(area: AreaBounds, n_locations: int) -> LocationMap:
    """Tile the area with n_locations equal cells; needs at least 2 cells."""
    if n_locations < 2:
        raise ValueError(f"noOfLocations must be >= 2, got {n_locations}")
    rows, cols = grid_shape(area, n_locations)
    cells = []
    for r in range(rows):
        for c in range(cols):
            cells.append(
                Cell(
                    id=r * cols + c,
                    min_x=area.width * c / cols,
                    min_y=area.height * r / rows,
                    max_x=area.width * (c + 1) / cols,
                    max_y=area.height * (r + 1) / rows,
                )
            )
    return LocationMap(cells=tuple(cells), rows=rows, cols=cols, area=area)


def _axis_index(v: float, extent: float, n: int) -> int:
    i = int(v / extent * n)
    return min(i, n - 1)  # points on the outer closed edge belong to the last cell


def cell_of(location_map: LocationMap, p: Point2D) -> int:
    """Id of the cell containing p; interior edges belong to the higher index."""
    if not location_map.area.contains(p):
        raise ValueError(f"point ({p.x}, {p.y}) outside area")
    col = _axis_index(p.x, location_map.area.width, location_map.cols)
    row = _axis_index(p.y, location_map.area.height, location_map.rows)
    # float division above can land one cell off near shared edges; settle
    # against the stored bounds so containment is exact
    cell = location_map.cells[row * location_map.cols + col]
    if p.x < cell.min_x:
        col -= 1
    elif p.x >= cell.max_x and col < location_map.cols - 1:
        col += 1
    if p.y < cell.min_y:
        row -= 1
    elif p.y >= cell.max_y and row < location_map.rows - 1:
        row += 1
    return row * location_map.cols + col


def random_point_in_cell(cell: Cell, rng: np.random.Generator) -> Point2D:
    """Uniform point over the cell rectangle, one independent draw per axis."""
    return Point2D(
        float(rng.uniform(cell.min_x, cell.max_x)),
        float(rng.uniform(cell.min_y, cell.max_y)),
    )


def classify_locations(
    location_map: LocationMap, home: int, limit: float
) -> list[LocationClass]:
    """Per-cell class for a node homed at `home`.

    A cell is neighbouring when its center lies within `limit` meters of the
    home cell's center; everything else (other than home itself) is visiting.
    """
    if limit < 0:
        raise ValueError(f"neighbourLocationLimit must be >= 0, got {limit}")
    home_center = location_map.centers[home]
    dists = np.hypot(*(location_map.centers - home_center).T)
    classes = [
        LocationClass.NEIGHBOURING if d <= limit else LocationClass.VISITING
        for d in dists
    ]
    classes[home] = LocationClass.HOME
    return classes


def write_locations_file(location_map: LocationMap, path) -> None:
    """Write the shared locations file: one `id,min_x,min_y,max_x,max_y` line
    per cell at 6-decimal fixed point, preceded by a versioned header."""
    lines = [f"# swim-locations v1 rows={location_map.rows} cols={location_map.cols}\n"]
    for cell in location_map.cells:
        lines.append(
            f"{cell.id},{cell.min_x:.6f},{cell.min_y:.6f},"
            f"{cell.max_x:.6f},{cell.max_y:.6f}\n"
        )
    with open(path, "w", newline="") as f:
        f.writelines(lines)


def read_locations_file(path) -> LocationMap:
    """Parse a locations file back into a LocationMap."""
    with open(path) as f:
        header = f.readline().rstrip("\n")
        m = LOCATIONS_HEADER_RE.match(header)
        if not m:
            raise ValueError(f"{path}: not a swim-locations v1 file")
        rows, cols = int(m.group(1)), int(m.group(2))
        cells = []
        for line in f:
            cid, min_x, min_y, max_x, max_y = line.rstrip("\n").split(",")
            cells.append(
                Cell(int(cid), float(min_x), float(min_y), float(max_x), float(max_y))
            )
    if len(cells) != rows * cols:
        raise ValueError(f"{path}: expected {rows * cols} cells, found {len(cells)}")
    if [c.id for c in cells] != list(range(len(cells))):
        raise ValueError(f"{path}: cell ids are not 0..{len(cells) - 1} in order")
    area = AreaBounds(max(c.max_x for c in cells), max(c.max_y for c in cells))
    return LocationMap(cells=tuple(cells), rows=rows, cols=cols, area=area)
