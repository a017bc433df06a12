"""Exception types and the structured failure value returned by scaled runs."""

from __future__ import annotations

from dataclasses import dataclass, field


class ToursubError(Exception):
    """Base class for all package errors."""


class InfeasibleDegree(ToursubError):
    """Host minimum out-degree is below the finder's precondition."""


class InfeasibleSize(ToursubError):
    """Host vertex count is below the finder's precondition."""


class TooSmall(ToursubError):
    """Tournament too small for the requested pigeonhole window."""


class CutInvalid(ToursubError):
    """Derived cut fails a size/orientation requirement (scaled runs)."""

    def __init__(self, reason: str, source_size: int, cut_size: int, sink_size: int):
        super().__init__(
            f"{reason} (|S|={source_size}, |U|={cut_size}, |sink|={sink_size})"
        )
        self.reason = reason
        self.source_size = source_size
        self.cut_size = cut_size
        self.sink_size = sink_size


class RepairExhausted(ToursubError):
    """Cut repair would push the sink below the required size."""


class InsufficientOutNeighbours(ToursubError):
    """A branch vertex lacks the out-neighbours needed by the path embedding."""

    def __init__(self, vertex: int, have: int, need: int):
        super().__init__(f"vertex {vertex} has {have} out-neighbours, needs {need}")
        self.vertex = vertex
        self.have = have
        self.need = need


class BallTooLarge(ToursubError):
    """A BFS ball exceeds the separator procedure's size precondition."""

    def __init__(self, vertex: int, radius: int, size: int, bound: float):
        super().__init__(
            f"ball of radius {radius} around {vertex} has {size} vertices,"
            f" bound {bound:.3f}"
        )
        self.vertex = vertex
        self.radius = radius
        self.size = size
        self.bound = bound


@dataclass(frozen=True)
class FailureTrace:
    """Structured non-result for best-effort (scaled) finder runs."""

    stage: str
    reason: str
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"stage": self.stage, "reason": self.reason, "details": dict(self.details)}
