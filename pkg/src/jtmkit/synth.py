"""Seeded synthetic action generators for self-contained testing and demos.

Five parametric motions, two to four joints each, with subject-dependent
amplitude/phase variation and additive Gaussian noise. The clockwise and
counter-clockwise circles trace the same ring through the same sample
points, so shape alone cannot separate them; only the temporal color
encoding can. Everything is deterministic given (generator, seed, index).
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .skeleton import SkeletonSequence, layout_from_names, serialize_canonical

__all__ = [
    "GENERATOR_NAMES",
    "GENERATOR_LABELS",
    "generate_sequence",
    "generate_suite",
    "write_suite",
]

GENERATOR_NAMES = ("circle-cw", "circle-ccw", "wave", "kick", "clap")
GENERATOR_LABELS = {name: i for i, name in enumerate(GENERATOR_NAMES)}

_TAU = 2.0 * math.pi


def _circle(n: int, amp: float, phase: float, direction: float) -> tuple[list[str], np.ndarray]:
    names = ["right_shoulder", "right_elbow", "right_hand"]
    frames = np.empty((n, 3, 3))
    r = 0.35 * amp
    for t in range(n):
        theta = phase + direction * _TAU * t / (n - 1)
        hand = (0.25 + r * math.cos(theta), 1.1 + r * math.sin(theta), 0.08 * math.cos(theta))
        elbow = (
            0.2 + 0.5 * r * math.cos(theta - 0.4),
            1.25 + 0.5 * r * math.sin(theta - 0.4),
            0.04 * math.cos(theta - 0.4),
        )
        frames[t] = [(0.0, 1.45, 0.0), elbow, hand]
    return names, frames


def _wave(n: int, amp: float, phase: float) -> tuple[list[str], np.ndarray]:
    names = ["right_shoulder", "right_elbow", "right_hand"]
    frames = np.empty((n, 3, 3))
    for t in range(n):
        u = t / (n - 1)
        frames[t] = [
            (0.0, 1.45, 0.0),
            (
                0.22 + 0.12 * amp * math.sin(2.0 * _TAU * u + phase - 0.5),
                1.3 + 0.05 * math.sin(_TAU * u + phase),
                0.05 * math.cos(2.0 * _TAU * u + phase),
            ),
            (
                0.3 + 0.25 * amp * math.sin(2.0 * _TAU * u + phase),
                1.5 + 0.12 * math.sin(_TAU * u + phase),
                0.1 * math.cos(2.0 * _TAU * u + phase),
            ),
        ]
    return names, frames


def _kick(n: int, amp: float, phase: float) -> tuple[list[str], np.ndarray]:
    # Out-and-back swing: a thin lens-shaped arc, not a closed ring.
    names = ["hip_center", "right_knee", "right_foot"]
    frames = np.empty((n, 3, 3))
    for t in range(n):
        u = t / (n - 1)
        swing = math.sin(math.pi * u)
        frames[t] = [
            (0.0, 0.9, 0.0),
            (
                0.05 + 0.3 * amp * swing,
                0.5 + 0.12 * amp * swing + 0.03 * math.sin(_TAU * u + phase),
                0.05 * swing,
            ),
            (
                0.1 + 0.6 * amp * swing,
                0.1 + 0.35 * amp * swing + 0.06 * math.sin(_TAU * u + phase),
                0.1 * swing,
            ),
        ]
    return names, frames


def _clap(n: int, amp: float, phase: float) -> tuple[list[str], np.ndarray]:
    names = ["neck", "left_hand", "right_hand"]
    frames = np.empty((n, 3, 3))
    for t in range(n):
        u = t / (n - 1)
        gap = 0.05 + 0.4 * amp * abs(math.cos(_TAU * u + phase))
        y = 1.2 + 0.06 * math.sin(_TAU * u + phase)
        z = 0.06 * math.cos(_TAU * u + phase)
        frames[t] = [(0.0, 1.4, 0.0), (-gap, y, z), (gap, y, z)]
    return names, frames


def generate_sequence(
    name: str,
    sample_index: int = 0,
    seed: int = 0,
    subject: int | None = None,
    n_frames: int = 36,
    noise: float = 0.01,
) -> SkeletonSequence:
    """One synthetic sample, deterministic in (name, seed, sample_index).

    Subjects default to cycling 1..8 with the sample index; subject identity
    systematically shifts amplitude and phase so cross-subject splits are a
    real generalization test, and per-sample Gaussian noise of scale
    ``noise`` is added on top (``noise=0`` gives the clean parametric path).
    """
    if name not in GENERATOR_LABELS:
        raise ValueError(f"unknown generator {name!r}; choose from {GENERATOR_NAMES}")
    if n_frames < 2:
        raise ValueError("need at least 2 frames")
    if subject is None:
        subject = sample_index % 8 + 1
    label = GENERATOR_LABELS[name]
    amp = 1.0 + 0.04 * (subject - 4.5)
    phase = 0.15 * subject
    if name == "circle-cw":
        names, frames = _circle(n_frames, amp, phase, direction=-1.0)
    elif name == "circle-ccw":
        names, frames = _circle(n_frames, amp, phase, direction=+1.0)
    elif name == "wave":
        names, frames = _wave(n_frames, amp, phase)
    elif name == "kick":
        names, frames = _kick(n_frames, amp, phase)
    else:
        names, frames = _clap(n_frames, amp, phase)
    if noise > 0.0:
        rng = np.random.default_rng([seed, label, sample_index])
        frames = frames + rng.normal(0.0, noise, size=frames.shape)
    return SkeletonSequence(
        layout=layout_from_names(names), frames=frames, label=label, subject=subject
    )


def generate_suite(
    count: int = 40,
    seed: int = 0,
    names: tuple[str, ...] = GENERATOR_NAMES,
    n_frames: int = 36,
    noise: float = 0.01,
) -> list[tuple[str, SkeletonSequence]]:
    """``count`` samples per generator, as (sample_id, sequence) pairs."""
    out = []
    for name in names:
        for idx in range(count):
            out.append(
                (
                    f"{name}-{idx:03d}",
                    generate_sequence(name, idx, seed, n_frames=n_frames, noise=noise),
                )
            )
    return out


def write_suite(
    out_dir: str | Path,
    count: int = 40,
    seed: int = 0,
    names: tuple[str, ...] = GENERATOR_NAMES,
    n_frames: int = 36,
    noise: float = 0.01,
) -> list[Path]:
    """Write a generated suite as canonical files ``<id>.jtm``; returns paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for sample_id, seq in generate_suite(count, seed, names, n_frames, noise):
        path = out_dir / f"{sample_id}.jtm"
        path.write_text(serialize_canonical(seq), encoding="utf-8")
        paths.append(path)
    return paths
