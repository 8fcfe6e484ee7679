"""Rule-based trajectory classification from door / inside ROI membership.

Only the start and end points of a trajectory are consulted; intermediate
points never change the outcome.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import EmptyTrajectory

Point = tuple[float, float]


class RoiKind(Enum):
    DOOR = "door"
    INSIDE = "inside"


@dataclass(frozen=True)
class Roi:
    """Axis-aligned rectangle in image pixel coordinates, closed on all edges."""

    x_min: float
    y_min: float
    x_max: float
    y_max: float
    kind: RoiKind = RoiKind.DOOR

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("degenerate ROI rectangle")


@dataclass
class Trajectory:
    """Ordered bounding-box centers, optionally timestamped."""

    points: list[Point]
    timestamps: list[float] | None = None

    def __post_init__(self):
        if self.timestamps is not None:
            if len(self.timestamps) != len(self.points):
                raise ValueError("timestamps must parallel points")
            for a, b in zip(self.timestamps, self.timestamps[1:]):
                if not a < b:
                    raise ValueError("timestamps must be strictly increasing")


class Behavior(Enum):
    ALIGHTING = "alighting"
    BOARDING = "boarding"
    MOVING_INSIDE = "moving_inside"
    REMAINING_OUTSIDE = "remaining_outside"
    UNCLASSIFIED = "unclassified"


def point_in_roi(p: Point, roi: Roi) -> bool:
    x, y = p
    return roi.x_min <= x <= roi.x_max and roi.y_min <= y <= roi.y_max


def classify(traj: Trajectory, door: Roi, inside: Roi) -> Behavior:
    """Classify a trajectory by its start/end ROI membership.

    The four conditions are evaluated in fixed order (alighting, boarding,
    moving inside, remaining outside); the first match wins. Points in the
    door/inside overlap count as members of both rectangles.
    """
    if len(traj.points) < 2:
        raise EmptyTrajectory(f"need at least 2 points, got {len(traj.points)}")
    s, e = traj.points[0], traj.points[-1]
    s_door, s_in = point_in_roi(s, door), point_in_roi(s, inside)
    e_door, e_in = point_in_roi(e, door), point_in_roi(e, inside)

    if s_in and not s_door and e_door:
        return Behavior.ALIGHTING
    if s_door and e_in and not e_door:
        return Behavior.BOARDING
    if s_in and not s_door and e_in and not e_door:
        return Behavior.MOVING_INSIDE
    if s_door and e_door:
        return Behavior.REMAINING_OUTSIDE
    return Behavior.UNCLASSIFIED
