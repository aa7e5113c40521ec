"""Per-step joint displacements, speeds, and the per-sequence speed maximum.

Step i (1-based, i in 1..n-1) connects frame i to frame i+1; its per-joint
delta is frame[i+1] - frame[i] and its speed is the Euclidean norm of that
delta. The speed maximum over all joints and steps normalizes the
saturation/brightness encodings downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .skeleton import SkeletonSequence

__all__ = ["TrajectoryStep", "TrajectorySet", "joint_speed", "compute_trajectories"]


@dataclass(frozen=True)
class TrajectoryStep:
    """One inter-frame step: deltas, start points, and speeds for all joints."""

    step_index: int  # 1-based, in [1, n-1]
    deltas: np.ndarray  # (m, 3)
    start_points: np.ndarray  # (m, 3)
    speeds: np.ndarray  # (m,)


@dataclass
class TrajectorySet:
    """All n-1 steps of a sequence, stacked, plus the global speed maximum.

    Attributes:
        deltas: (n-1, m, 3) per-step per-joint displacement vectors.
        start_points: (n-1, m, 3) positions the steps start from.
        speeds: (n-1, m) Euclidean norms of the deltas.
        v_max: max speed over all joints and steps; 0.0 for static sequences.
    """

    deltas: np.ndarray
    start_points: np.ndarray
    speeds: np.ndarray
    v_max: float

    def __len__(self) -> int:
        return self.deltas.shape[0]

    def __getitem__(self, i: int) -> TrajectoryStep:
        """Step at 0-based position i, carrying its 1-based step_index."""
        return TrajectoryStep(
            step_index=i + 1 if i >= 0 else len(self) + i + 1,
            deltas=self.deltas[i],
            start_points=self.start_points[i],
            speeds=self.speeds[i],
        )

    @property
    def steps(self) -> list[TrajectoryStep]:
        return [self[i] for i in range(len(self))]


def joint_speed(p_next, p) -> float:
    """Euclidean distance between two 3D positions."""
    a = np.asarray(p_next, dtype=np.float64)
    b = np.asarray(p, dtype=np.float64)
    d = a - b
    return math.sqrt(float(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]))


def compute_trajectories(seq: SkeletonSequence) -> TrajectorySet:
    """Difference consecutive frames of a sequence into a TrajectorySet."""
    frames = seq.frames
    deltas = frames[1:] - frames[:-1]
    # Summation order fixed (x^2 + y^2, then + z^2) so speeds match the
    # scalar joint_speed bit for bit.
    dx, dy, dz = deltas[:, :, 0], deltas[:, :, 1], deltas[:, :, 2]
    speeds = np.sqrt(dx * dx + dy * dy + dz * dz)
    return TrajectorySet(
        deltas=deltas,
        start_points=frames[:-1].copy(),
        speeds=speeds,
        v_max=float(speeds.max()),
    )
