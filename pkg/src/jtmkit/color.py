"""Colormaps and the hue/saturation/brightness stroke-color pipeline.

Each trajectory step gets a base color from a colormap indexed by its
normalized temporal position, so early strokes and late strokes differ in
hue. Three colormaps tell the body parts apart: a blue-to-red ramp for the
left side, its reverse for the right side, and light gray to black for the
middle. On top of that, per-joint speed can modulate the color's saturation
and brightness so that fast motion stands out.

All color math runs in float64 on 0..255-scaled RGB; quantization to 8-bit
happens once, at raster write time.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .skeleton import BodyPart

__all__ = [
    "Colormap",
    "ReversedColormap",
    "ColormapBank",
    "EncodingLevel",
    "MagnitudeRange",
    "JET",
    "LIGHT_GRAY_TO_BLACK",
    "WHITE",
    "default_bank",
    "temporal_position",
    "base_color",
    "saturation_scale",
    "brightness_scale",
    "rgb_to_hsv",
    "hsv_to_rgb",
    "stroke_color",
    "bank_table",
]

RGBF = tuple[float, float, float]

WHITE: RGBF = (255.0, 255.0, 255.0)


@dataclass(frozen=True)
class Colormap:
    """Piecewise-linear RGB ramp over [0, 1].

    Anchors are (position, (r, g, b)) pairs with positions strictly
    increasing from 0.0 to 1.0. Between two anchors the color is
    ``c_lo + (c_hi - c_lo) * t`` per channel with
    ``t = (x - p_lo) / (p_hi - p_lo)``; exactly that expression, so lookups
    are reproducible bit-for-bit.
    """

    anchors: tuple[tuple[float, tuple[int, int, int]], ...]

    def __post_init__(self):
        if len(self.anchors) < 2:
            raise ValueError("colormap needs at least two anchors")
        positions = [p for p, _ in self.anchors]
        if positions[0] != 0.0 or positions[-1] != 1.0:
            raise ValueError("anchors must start at 0.0 and end at 1.0")
        if any(b <= a for a, b in zip(positions, positions[1:])):
            raise ValueError("anchor positions must be strictly increasing")

    def lookup(self, x: float) -> RGBF:
        """Color at position x in [0, 1], as float RGB on the 0..255 scale."""
        if not 0.0 <= x <= 1.0:
            raise ValueError(f"colormap position {x} outside [0, 1]")
        anchors = self.anchors
        for (p_lo, c_lo), (p_hi, c_hi) in zip(anchors, anchors[1:]):
            if x <= p_hi:
                t = (x - p_lo) / (p_hi - p_lo)
                return (
                    c_lo[0] + (c_hi[0] - c_lo[0]) * t,
                    c_lo[1] + (c_hi[1] - c_lo[1]) * t,
                    c_lo[2] + (c_hi[2] - c_lo[2]) * t,
                )
        raise AssertionError("unreachable: anchors end at 1.0")


@dataclass(frozen=True)
class ReversedColormap:
    """Mirror image of another colormap: lookup(x) == base.lookup(1 - x).

    Delegating (rather than re-anchoring) makes the mirror identity exact in
    floating point by construction.
    """

    base: Colormap

    @property
    def anchors(self) -> tuple[tuple[float, tuple[int, int, int]], ...]:
        return tuple((1.0 - p, c) for p, c in reversed(self.base.anchors))

    def lookup(self, x: float) -> RGBF:
        if not 0.0 <= x <= 1.0:
            raise ValueError(f"colormap position {x} outside [0, 1]")
        return self.base.lookup(1.0 - x)


# Blue -> cyan -> yellow -> (orange) -> red ramp, anchored so that the named
# colors land on exactly representable positions.
JET = Colormap(
    anchors=(
        (0.0, (0, 0, 128)),
        (0.125, (0, 0, 255)),
        (0.375, (0, 255, 255)),
        (0.625, (255, 255, 0)),
        (0.875, (255, 0, 0)),
        (1.0, (128, 0, 0)),
    )
)

LIGHT_GRAY_TO_BLACK = Colormap(anchors=((0.0, (211, 211, 211)), (1.0, (0, 0, 0))))


@dataclass(frozen=True)
class ColormapBank:
    """The three per-body-part colormaps: left, right (reversed), middle."""

    c1: Colormap
    c2: Colormap | ReversedColormap
    c3: Colormap

    def for_part(self, part: BodyPart) -> Colormap | ReversedColormap:
        if part is BodyPart.LEFT:
            return self.c1
        if part is BodyPart.RIGHT:
            return self.c2
        return self.c3


def default_bank() -> ColormapBank:
    return ColormapBank(c1=JET, c2=ReversedColormap(JET), c3=LIGHT_GRAY_TO_BLACK)


class EncodingLevel(Enum):
    """The six stroke-encoding schemes, from bare trajectories to full
    hue + body-part + saturation + brightness modulation.

    Enum values double as the names used in CLI flags and output filenames.
    """

    PLAIN = "plain"
    HUE = "hue"
    HUE_PARTS = "parts"
    HUE_PARTS_SAT = "sat"
    HUE_PARTS_BRIGHT = "bright"
    HUE_PARTS_SAT_BRIGHT = "satbright"

    @property
    def uses_hue(self) -> bool:
        return self is not EncodingLevel.PLAIN

    @property
    def uses_part_colormaps(self) -> bool:
        return self.value in _PART_LEVELS

    @property
    def modulates_saturation(self) -> bool:
        return self.value in _SAT_LEVELS

    @property
    def modulates_brightness(self) -> bool:
        return self.value in _BRIGHT_LEVELS


_PART_LEVELS = frozenset(("parts", "sat", "bright", "satbright"))
_SAT_LEVELS = frozenset(("sat", "satbright"))
_BRIGHT_LEVELS = frozenset(("bright", "satbright"))


@dataclass(frozen=True)
class MagnitudeRange:
    """Target ranges for speed-modulated saturation and brightness."""

    s_min: float = 0.0
    s_max: float = 1.0
    b_min: float = 0.0
    b_max: float = 1.0

    def __post_init__(self):
        for name in ("s_min", "s_max", "b_min", "b_max"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name}={v} outside [0, 1]")
        if self.s_min > self.s_max:
            raise ValueError("s_min must be <= s_max")
        if self.b_min > self.b_max:
            raise ValueError("b_min must be <= b_max")


FULL_RANGE = MagnitudeRange()


def temporal_position(q: int, n: int) -> float:
    """Normalized colormap position q / (n - 1) of step q in an n-frame sequence."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not 1 <= q <= n - 1:
        raise ValueError(f"step index {q} outside [1, {n - 1}]")
    return q / (n - 1)


def saturation_scale(v: float, v_max: float, rng: MagnitudeRange = FULL_RANGE) -> float:
    """Map speed v linearly onto [s_min, s_max]; a static sequence maps to s_min."""
    if v < 0:
        raise ValueError(f"speed must be >= 0, got {v}")
    if v_max == 0.0:
        return rng.s_min
    return v / v_max * (rng.s_max - rng.s_min) + rng.s_min


def brightness_scale(v: float, v_max: float, rng: MagnitudeRange = FULL_RANGE) -> float:
    """Map speed v linearly onto [b_min, b_max]; a static sequence maps to b_min."""
    if v < 0:
        raise ValueError(f"speed must be >= 0, got {v}")
    if v_max == 0.0:
        return rng.b_min
    return v / v_max * (rng.b_max - rng.b_min) + rng.b_min


def rgb_to_hsv(r: float, g: float, b: float) -> tuple[float, float, float]:
    """Hexcone RGB(0..255) -> (hue degrees in [0, 360), saturation, value in [0, 1]).

    Exact formula: with rn = r/255, gn = g/255, bn = b/255,
    maxc = max(rn, gn, bn), minc = min(rn, gn, bn), delta = maxc - minc,
        h = 0 if delta == 0
            60 * (((gn - bn) / delta) % 6)   if maxc == rn (ties resolve here)
            60 * ((bn - rn) / delta + 2)     elif maxc == gn
            60 * ((rn - gn) / delta + 4)     otherwise
        s = 0 if maxc == 0 else delta / maxc
        v = maxc
    Achromatic inputs get hue 0 by convention.
    """
    rn, gn, bn = r / 255.0, g / 255.0, b / 255.0
    maxc = max(rn, gn, bn)
    minc = min(rn, gn, bn)
    delta = maxc - minc
    if delta == 0.0:
        h = 0.0
    elif maxc == rn:
        h = 60.0 * (((gn - bn) / delta) % 6.0)
    elif maxc == gn:
        h = 60.0 * ((bn - rn) / delta + 2.0)
    else:
        h = 60.0 * ((rn - gn) / delta + 4.0)
    s = 0.0 if maxc == 0.0 else delta / maxc
    return h, s, maxc


def hsv_to_rgb(h: float, s: float, v: float) -> RGBF:
    """Hexcone (hue degrees in [0, 360), s, v in [0, 1]) -> RGB floats 0..255.

    Exact formula: c = v*s; x = c * (1 - abs((h/60) % 2 - 1)); m = v - c;
    the (c, x, 0) permutation is picked by the 60-degree sector of h; each
    channel is (component + m) * 255.
    """
    if not 0.0 <= h < 360.0:
        raise ValueError(f"hue {h} outside [0, 360)")
    c = v * s
    x = c * (1.0 - abs((h / 60.0) % 2.0 - 1.0))
    m = v - c
    sector = int(h // 60.0)
    rp, gp, bp = (
        (c, x, 0.0),
        (x, c, 0.0),
        (0.0, c, x),
        (0.0, x, c),
        (x, 0.0, c),
        (c, 0.0, x),
    )[sector]
    return ((rp + m) * 255.0, (gp + m) * 255.0, (bp + m) * 255.0)


def base_color(
    part: BodyPart,
    fraction: float,
    level: EncodingLevel,
    bank: ColormapBank,
) -> RGBF:
    """Unmodulated stroke color for a body part at a temporal position.

    PLAIN paints every stroke white; HUE indexes the primary colormap for
    all parts; every higher level selects the colormap by body part.
    """
    if level is EncodingLevel.PLAIN:
        return WHITE
    if level is EncodingLevel.HUE:
        return bank.c1.lookup(fraction)
    return bank.for_part(part).lookup(fraction)


def stroke_color(
    part: BodyPart,
    fraction: float,
    v: float,
    v_max: float,
    level: EncodingLevel,
    bank: ColormapBank,
    rng: MagnitudeRange = FULL_RANGE,
) -> RGBF:
    """Final float RGB of one stroke under the chosen encoding level.

    Saturation/brightness levels convert the base color to HSV, replace the
    S and/or V channel with the speed-scaled value, and convert back; the
    channels a level does not modulate keep the base color's values. Levels
    without magnitude modulation return the base color untouched (no HSV
    round trip).
    """
    color = base_color(part, fraction, level, bank)
    if not (level.modulates_saturation or level.modulates_brightness):
        return color
    h, s, val = rgb_to_hsv(*color)
    if level.modulates_saturation:
        s = saturation_scale(v, v_max, rng)
    if level.modulates_brightness:
        val = brightness_scale(v, v_max, rng)
    return hsv_to_rgb(h, s, val)


def bank_table(bank: ColormapBank) -> str:
    """Small text table of the bank's anchors, for documentation and manifests."""
    lines = []
    for name, cmap in (("c1", bank.c1), ("c2", bank.c2), ("c3", bank.c3)):
        for p, (r, g, b) in cmap.anchors:
            lines.append(f"{name} {p:g} {r} {g} {b}")
    return "\n".join(lines) + "\n"
