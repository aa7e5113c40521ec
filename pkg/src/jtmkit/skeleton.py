"""Skeleton data model, canonical sequence file format, and dataset parsers.

A skeleton sequence is an ordered stack of frames, each frame giving the 3D
position of a fixed set of named joints. Joints belong to one of three body
parts (left / right / middle), which downstream encoding uses to pick a
colormap per trajectory.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "BodyPart",
    "JointId",
    "SkeletonLayout",
    "SkeletonSequence",
    "FormatError",
    "ValidationError",
    "TooShortError",
    "infer_body_part",
    "layout_from_names",
    "default_layout_20",
    "parse_canonical",
    "serialize_canonical",
    "parse_msrc12_stream",
]


class FormatError(ValueError):
    """Raised when input text does not match the expected file format."""


class ValidationError(ValueError):
    """Raised when well-formed input violates a data-model invariant.

    `line` carries the 1-based offending line number when known.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class TooShortError(ValidationError):
    """Raised for sequences with fewer than two frames (no trajectory step)."""


class BodyPart(Enum):
    LEFT = "left"
    RIGHT = "right"
    MIDDLE = "middle"


@dataclass(frozen=True)
class JointId:
    """A joint's position in the layout order plus its human-readable name."""

    index: int
    name: str

    def __post_init__(self):
        if self.index < 0:
            raise ValidationError(f"joint index must be >= 0, got {self.index}")
        if not self.name:
            raise ValidationError("joint name must be non-empty")


@dataclass(frozen=True)
class SkeletonLayout:
    """Ordered joint set with a total assignment of joints to body parts."""

    joints: tuple[JointId, ...]
    parts: tuple[BodyPart, ...]

    def __post_init__(self):
        if len(self.joints) < 1:
            raise ValidationError("layout needs at least one joint")
        if len(self.parts) != len(self.joints):
            raise ValidationError(
                f"parts ({len(self.parts)}) and joints ({len(self.joints)}) differ in length"
            )
        names = [j.name for j in self.joints]
        if len(set(names)) != len(names):
            raise ValidationError("joint names must be unique within a layout")
        indices = [j.index for j in self.joints]
        if len(set(indices)) != len(indices):
            raise ValidationError("joint indices must be unique within a layout")

    @property
    def m(self) -> int:
        """Number of joints."""
        return len(self.joints)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(j.name for j in self.joints)

    def part_of(self, joint: JointId | int | str) -> BodyPart:
        """Body part of a joint, addressed by JointId, position, or name."""
        if isinstance(joint, JointId):
            return self.parts[self.joints.index(joint)]
        if isinstance(joint, int):
            return self.parts[joint]
        for jid, part in zip(self.joints, self.parts):
            if jid.name == joint:
                return part
        raise KeyError(f"no joint named {joint!r} in layout")


def infer_body_part(name: str) -> BodyPart:
    """Assign a body part from a joint name prefix.

    Names starting with "left_"/"left " go to LEFT, "right_"/"right " to
    RIGHT, everything else (head, neck, torso, hip_center, ...) to MIDDLE.
    """
    lowered = name.lower()
    if lowered.startswith(("left_", "left ")):
        return BodyPart.LEFT
    if lowered.startswith(("right_", "right ")):
        return BodyPart.RIGHT
    return BodyPart.MIDDLE


def layout_from_names(
    names: list[str] | tuple[str, ...],
    parts: list[BodyPart] | tuple[BodyPart, ...] | None = None,
) -> SkeletonLayout:
    """Build a layout from joint names; parts are inferred unless given."""
    joints = tuple(JointId(i, n) for i, n in enumerate(names))
    if parts is None:
        parts = tuple(infer_body_part(n) for n in names)
    return SkeletonLayout(joints=joints, parts=tuple(parts))


# Kinect-v1 style joint order (hip-to-extremities), named so that the
# left/right/middle partition is 8/8/4.
DEFAULT_JOINT_NAMES_20 = (
    "hip_center",
    "torso",
    "neck",
    "head",
    "left_shoulder",
    "left_elbow",
    "left_wrist",
    "left_hand",
    "right_shoulder",
    "right_elbow",
    "right_wrist",
    "right_hand",
    "left_hip",
    "left_knee",
    "left_ankle",
    "left_foot",
    "right_hip",
    "right_knee",
    "right_ankle",
    "right_foot",
)


def default_layout_20() -> SkeletonLayout:
    """The default 20-joint layout with the 8 left / 8 right / 4 middle split."""
    return layout_from_names(DEFAULT_JOINT_NAMES_20)


@dataclass
class SkeletonSequence:
    """One action sample: a layout plus an (n, m, 3) stack of joint positions.

    Attributes:
        layout: joint naming and body-part assignment, m joints.
        frames: float64 array of shape (n, m, 3); n >= 2, all values finite.
        label: optional integer class id.
        subject: optional integer performer id.
    """

    layout: SkeletonLayout
    frames: np.ndarray
    label: int | None = None
    subject: int | None = None

    def __post_init__(self):
        frames = np.asarray(self.frames, dtype=np.float64)
        if frames.ndim != 3 or frames.shape[2] != 3:
            raise ValidationError(f"frames must have shape (n, m, 3), got {frames.shape}")
        if frames.shape[0] < 2:
            raise TooShortError(
                f"sequence needs at least 2 frames, got {frames.shape[0]}"
            )
        if frames.shape[1] != self.layout.m:
            raise ValidationError(
                f"frames carry {frames.shape[1]} joints but layout has {self.layout.m}"
            )
        if not np.isfinite(frames).all():
            raise ValidationError("joint coordinates must be finite")
        self.frames = frames

    @property
    def n(self) -> int:
        """Frame count."""
        return self.frames.shape[0]

    @property
    def m(self) -> int:
        """Joint count."""
        return self.frames.shape[1]


_HEADER_RE = re.compile(
    r"^JTM1 m=(\d+) n=(\d+) label=(-|-?\d+) subject=(-|-?\d+)$"
)


def _decode(data: bytes | str) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError(f"input is not valid UTF-8: {exc}") from None
    return data


def parse_canonical(data: bytes | str) -> SkeletonSequence:
    """Parse the canonical text format into a validated sequence.

    Layout:
        line 1: ``JTM1 m=<joints> n=<frames> label=<int|-> subject=<int|->``
        line 2: m space-separated joint names
        lines 3..n+2: 3m space-separated floats, x1 y1 z1 x2 y2 z2 ...

    Body parts are inferred from joint-name prefixes (see infer_body_part).
    """
    text = _decode(data)
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty input")
    match = _HEADER_RE.match(lines[0].strip())
    if match is None:
        raise FormatError(f"malformed header: {lines[0]!r}")
    m, n = int(match.group(1)), int(match.group(2))
    label = None if match.group(3) == "-" else int(match.group(3))
    subject = None if match.group(4) == "-" else int(match.group(4))
    if n < 2:
        raise TooShortError(f"header declares n={n}, need n >= 2", line=1)
    if len(lines) < 2 + n:
        raise FormatError(f"expected {2 + n} lines, got {len(lines)}")
    names = lines[1].split()
    if len(names) != m:
        raise ValidationError(f"expected {m} joint names, got {len(names)}", line=2)
    layout = layout_from_names(names)

    frames = np.empty((n, m, 3), dtype=np.float64)
    for i in range(n):
        lineno = 3 + i
        tokens = lines[2 + i].split()
        if len(tokens) != 3 * m:
            raise ValidationError(
                f"expected {3 * m} values, got {len(tokens)}", line=lineno
            )
        try:
            row = [float(t) for t in tokens]
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        frames[i] = np.array(row, dtype=np.float64).reshape(m, 3)
    if any(line.strip() for line in lines[2 + n :]):
        raise FormatError(f"unexpected data after frame {n}")
    return SkeletonSequence(layout=layout, frames=frames, label=label, subject=subject)


def serialize_canonical(seq: SkeletonSequence) -> str:
    """Render a sequence in the canonical text format.

    Floats are written with shortest round-trip repr, so
    parse_canonical(serialize_canonical(seq)) reproduces frames bit-exactly.
    """
    label = "-" if seq.label is None else str(seq.label)
    subject = "-" if seq.subject is None else str(seq.subject)
    out = [f"JTM1 m={seq.m} n={seq.n} label={label} subject={subject}"]
    out.append(" ".join(seq.layout.names))
    for frame in seq.frames:
        out.append(" ".join(repr(float(v)) for v in frame.reshape(-1)))
    return "\n".join(out) + "\n"


MSRC12_VALUES_PER_JOINT = 4  # x, y, z, confidence


def parse_msrc12_stream(data: bytes | str, layout: SkeletonLayout) -> SkeletonSequence:
    """Parse a whitespace-separated 20-joint stream, one frame per row.

    Each row holds 4 values per joint (x, y, z, confidence); the confidence
    column is discarded. Rows must carry exactly 4 * layout.m values.
    """
    text = _decode(data)
    rows = []
    expected = MSRC12_VALUES_PER_JOINT * layout.m
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) != expected:
            raise ValidationError(
                f"expected {expected} values per row, got {len(tokens)}", line=lineno
            )
        try:
            values = [float(t) for t in tokens]
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        frame = np.array(values, dtype=np.float64).reshape(layout.m, 4)
        rows.append(frame[:, :3])
    if len(rows) < 2:
        raise TooShortError(f"stream has {len(rows)} frames, need at least 2")
    return SkeletonSequence(layout=layout, frames=np.stack(rows))
