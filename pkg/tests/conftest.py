"""Shared fixtures: hand-built desk-scale sequences used by the oracle tests."""

import numpy as np

from jtmkit import BodyPart, SkeletonSequence, layout_from_names

PART_NAME = {BodyPart.LEFT: "left", BodyPart.RIGHT: "right", BodyPart.MIDDLE: "middle"}

# (case name, joint names, frames as nested lists), all <= 3 joints and
# <= 4 frames so the brute-force oracle stays desk-checkable.
HAND_BUILT_CASES = [
    (
        "two-joint-l",
        ["left_hand", "right_hand"],
        [
            [(0.0, 0.0, 0.0), (1.0, 0.0, 0.5)],
            [(0.5, 1.0, 0.0), (1.0, 0.5, 0.0)],
            [(1.0, 0.0, 1.0), (0.0, 1.0, 0.5)],
        ],
    ),
    (
        "diagonal-sweep",
        ["head"],
        [
            [(0.0, 0.0, 0.0)],
            [(1.0, 1.0, 1.0)],
            [(2.0, 0.5, 0.25)],
            [(0.25, 2.0, 1.5)],
        ],
    ),
    (
        "mixed-parts",
        ["left_foot", "right_knee", "torso"],
        [
            [(-1.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0)],
            [(-0.5, 0.5, 0.25), (0.5, -0.5, -0.25), (0.0, 1.0, 0.1)],
            [(0.0, -1.0, 0.5), (1.5, 1.5, 0.5), (-0.2, 0.8, -0.1)],
        ],
    ),
    (
        "one-static-one-fast",
        ["neck", "right_hand"],
        [
            [(0.0, 0.0, 0.0), (3.0, 0.0, 0.0)],
            [(0.0, 0.0, 0.0), (3.0, 4.0, 0.0)],
            [(0.0, 0.0, 0.0), (0.0, 4.0, 3.0)],
            [(0.0, 0.0, 0.0), (3.0, 0.0, 0.0)],
        ],
    ),
    (
        "tiny-extent",
        ["left_wrist", "hip_center"],
        [
            [(0.001, 0.002, 0.003), (0.004, 0.001, 0.002)],
            [(0.002, 0.001, 0.004), (0.003, 0.003, 0.001)],
        ],
    ),
    (
        "fully-static",
        ["left_hand", "head"],
        [
            [(1.0, 2.0, 3.0), (4.0, 5.0, 6.0)],
            [(1.0, 2.0, 3.0), (4.0, 5.0, 6.0)],
            [(1.0, 2.0, 3.0), (4.0, 5.0, 6.0)],
        ],
    ),
]


def build_case(names, frames) -> SkeletonSequence:
    return SkeletonSequence(
        layout=layout_from_names(names), frames=np.array(frames, dtype=np.float64)
    )


def part_strings(seq: SkeletonSequence) -> list:
    return [PART_NAME[p] for p in seq.layout.parts]


def random_grid_sequence(rng: np.random.Generator, n=None, m=None) -> SkeletonSequence:
    """Random sequence on an exact 2^-6 grid so affine translations stay exact."""
    n = n if n is not None else int(rng.integers(2, 7))
    m = m if m is not None else int(rng.integers(1, 4))
    pool = ["left_hand", "right_hand", "head", "left_foot", "right_knee", "torso"]
    names = list(rng.choice(pool, size=m, replace=False))
    frames = rng.integers(-512, 512, size=(n, m, 3)).astype(np.float64) / 64.0
    return SkeletonSequence(layout=layout_from_names(names), frames=frames)
