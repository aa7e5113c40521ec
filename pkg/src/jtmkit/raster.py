"""Projection of trajectories onto the three Cartesian planes and stroke
rasterization into fixed-size RGB images.

Rendering is deterministic by construction: pixel selection is pure integer
arithmetic (midpoint line stepping with a fixed tie rule), float math is
confined to the affine fit and color pipeline with a pinned operation order,
and colors quantize to 8-bit only at the moment a pixel is written. Strokes
accumulate by in-order overwrite, so a prefix of the steps can be rendered
first and extended later with identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .color import (
    ColormapBank,
    EncodingLevel,
    FULL_RANGE,
    MagnitudeRange,
    base_color,
    brightness_scale,
    default_bank,
    hsv_to_rgb,
    rgb_to_hsv,
    saturation_scale,
)
from .skeleton import BodyPart, SkeletonSequence
from .trajectory import compute_trajectories

__all__ = [
    "Plane",
    "CanvasConfig",
    "JtmImage",
    "AffineMap2D",
    "StrokeRecord",
    "fit_transform",
    "draw_stroke",
    "render_jtm",
    "render_all_planes",
    "save_png",
    "save_ppm",
]


class Plane(Enum):
    """The three orthogonal projections; values name output files and flags."""

    FRONT = "front"
    TOP = "top"
    SIDE = "side"

    @property
    def axes(self) -> tuple[int, int]:
        """(horizontal, vertical) world-axis indices of the projection."""
        return _PLANE_AXES[self]


_PLANE_AXES = {Plane.FRONT: (0, 1), Plane.TOP: (0, 2), Plane.SIDE: (2, 1)}


@dataclass(frozen=True)
class CanvasConfig:
    """Raster geometry: canvas size, relative margin, background color."""

    width: int = 256
    height: int = 256
    margin_fraction: float = 0.05
    background: tuple[int, int, int] = (0, 0, 0)

    def __post_init__(self):
        if self.width < 16 or self.height < 16:
            raise ValueError("canvas must be at least 16x16")
        if not 0.0 <= self.margin_fraction < 0.5:
            raise ValueError(f"margin_fraction {self.margin_fraction} outside [0, 0.5)")
        if len(self.background) != 3 or any(
            not 0 <= c <= 255 for c in self.background
        ):
            raise ValueError("background must be three 0..255 channel values")


DEFAULT_CANVAS = CanvasConfig()


@dataclass
class JtmImage:
    """A rendered trajectory map: (height, width, 3) uint8 pixels plus metadata."""

    plane: Plane
    pixels: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        pixels = np.ascontiguousarray(self.pixels, dtype=np.uint8)
        if pixels.ndim != 3 or pixels.shape[2] != 3:
            raise ValueError(f"pixels must have shape (h, w, 3), got {pixels.shape}")
        self.pixels = pixels

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def tobytes(self) -> bytes:
        return self.pixels.tobytes()


@dataclass(frozen=True)
class AffineMap2D:
    """Uniform-scale projection of plane coordinates onto pixel coordinates.

    Exact mapping (operation order is part of the contract):
        px = offset_x + (u - u_min) * scale
        py = offset_y + (v_max - v) * scale
    The vertical axis is measured from v_max downward, so larger world
    values render nearer the top of the image.
    """

    scale: float
    u_min: float
    v_max: float
    offset_x: float
    offset_y: float

    def apply(self, u: float, v: float) -> tuple[float, float]:
        return (
            self.offset_x + (u - self.u_min) * self.scale,
            self.offset_y + (self.v_max - v) * self.scale,
        )

    def apply_arrays(self, u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized apply; elementwise identical to the scalar form."""
        return (
            self.offset_x + (u - self.u_min) * self.scale,
            self.offset_y + (self.v_max - v) * self.scale,
        )


def fit_transform(
    seq: SkeletonSequence, plane: Plane, canvas: CanvasConfig = DEFAULT_CANVAS
) -> AffineMap2D:
    """Fit the sequence's projected bounding box into the canvas interior.

    The box over all frames and joints maps into the canvas inset by
    margin_fraction on every side, uniformly scaled (aspect preserved) and
    centered. A box degenerate in both axes maps everything to the canvas
    center; a box degenerate in one axis centers that axis.
    """
    a_u, a_v = plane.axes
    u = seq.frames[:, :, a_u]
    v = seq.frames[:, :, a_v]
    u_min, u_max = float(u.min()), float(u.max())
    v_min, v_max = float(v.min()), float(v.max())
    ext_u = u_max - u_min
    ext_v = v_max - v_min
    inner_w = canvas.width * (1.0 - 2.0 * canvas.margin_fraction)
    inner_h = canvas.height * (1.0 - 2.0 * canvas.margin_fraction)
    candidates = []
    if ext_u > 0.0:
        candidates.append(inner_w / ext_u)
    if ext_v > 0.0:
        candidates.append(inner_h / ext_v)
    scale = min(candidates) if candidates else 0.0
    cx = (canvas.width - 1) / 2.0
    cy = (canvas.height - 1) / 2.0
    return AffineMap2D(
        scale=scale,
        u_min=u_min,
        v_max=v_max,
        offset_x=cx - ext_u * scale / 2.0,
        offset_y=cy - ext_v * scale / 2.0,
    )


def _round_px(p: float) -> int:
    """Round-half-up to an integer pixel coordinate."""
    return math.floor(p + 0.5)


def _quantize(c: float) -> int:
    """Round-half-up a float channel to 0..255 with clamping."""
    q = math.floor(c + 0.5)
    return 0 if q < 0 else 255 if q > 255 else q


def _line_points(
    x0: int, y0: int, x1: int, y1: int, width: int, height: int
) -> list[tuple[int, int]]:
    """In-bounds pixels of the midpoint line from (x0, y0) to (x1, y1), in order.

    At each step i along the driving (longer) axis the other coordinate is
    start + sign * ((2*i*d_minor + d_major) // (2*d_major)), i.e. the ideal
    line position rounded half away from the start. Matches the classic
    integer Bresenham walk; documented in closed form so it can be checked
    with exact rational arithmetic. Off-canvas pixels are skipped without
    being generated, so arbitrarily distant endpoints stay cheap.
    """
    dx = x1 - x0
    dy = y1 - y0
    adx, ady = abs(dx), abs(dy)
    sx = 1 if dx >= 0 else -1
    sy = 1 if dy >= 0 else -1
    pts: list[tuple[int, int]] = []
    if adx == 0 and ady == 0:
        if 0 <= x0 < width and 0 <= y0 < height:
            pts.append((x0, y0))
        return pts
    inside = (
        0 <= x0 < width and 0 <= y0 < height and 0 <= x1 < width and 0 <= y1 < height
    )
    if adx >= ady:
        if inside:
            i_lo, i_hi = 0, adx
        elif sx == 1:
            i_lo, i_hi = max(0, -x0), min(adx, width - 1 - x0)
        else:
            i_lo, i_hi = max(0, x0 - (width - 1)), min(adx, x0)
        d2 = 2 * adx
        for i in range(i_lo, i_hi + 1):
            y = y0 + sy * ((2 * i * ady + adx) // d2)
            if inside or 0 <= y < height:
                pts.append((x0 + sx * i, y))
    else:
        if inside:
            i_lo, i_hi = 0, ady
        elif sy == 1:
            i_lo, i_hi = max(0, -y0), min(ady, height - 1 - y0)
        else:
            i_lo, i_hi = max(0, y0 - (height - 1)), min(ady, y0)
        d2 = 2 * ady
        for i in range(i_lo, i_hi + 1):
            x = x0 + sx * ((2 * i * adx + ady) // d2)
            if inside or 0 <= x < width:
                pts.append((x, y0 + sy * i))
    return pts


def draw_stroke(
    img: JtmImage,
    p0: tuple[float, float],
    p1: tuple[float, float],
    color: Sequence[float],
) -> JtmImage:
    """Draw one line segment onto the image, overwriting existing pixels.

    Endpoints are pixel coordinates (rounded half-up before stepping) and may
    lie outside the canvas; out-of-bounds pixels are skipped. A zero-length
    stroke paints a single pixel.
    """
    for p in (*p0, *p1):
        if not math.isfinite(p):
            raise ValueError("stroke endpoints must be finite")
    x0, y0 = _round_px(p0[0]), _round_px(p0[1])
    x1, y1 = _round_px(p1[0]), _round_px(p1[1])
    rgb = np.array([_quantize(c) for c in color], dtype=np.uint8)
    for x, y in _line_points(x0, y0, x1, y1, img.width, img.height):
        img.pixels[y, x] = rgb
    return img


@dataclass(frozen=True)
class StrokeRecord:
    """One rendered stroke, as appended to a render's stroke log."""

    step_index: int
    joint: int
    part: BodyPart
    fraction: float
    speed: float
    p0: tuple[int, int]
    p1: tuple[int, int]
    color: tuple[int, int, int]


def render_jtm(
    seq: SkeletonSequence,
    plane: Plane,
    level: EncodingLevel = EncodingLevel.HUE_PARTS_SAT_BRIGHT,
    bank: ColormapBank | None = None,
    mag: MagnitudeRange = FULL_RANGE,
    canvas: CanvasConfig = DEFAULT_CANVAS,
    *,
    v_max: float | None = None,
    first_step: int = 1,
    last_step: int | None = None,
    into: JtmImage | None = None,
    stroke_log: list[StrokeRecord] | None = None,
) -> JtmImage:
    """Rasterize a sequence's trajectories on one plane.

    Steps are drawn in temporal order, joints in layout order within a step,
    each as a line from the joint's projected position at the step's start
    frame to its position at the next frame, colored by the encoding level.
    Later strokes overwrite earlier ones.

    ``first_step``/``last_step`` (1-based, inclusive) restrict rendering to a
    step range; ``into`` continues accumulation on a previously rendered
    image of the same geometry, which is updated in place and returned.
    Rendering steps 1..j from scratch and rendering 1..j-1 then extending
    with step j produce identical bytes.

    ``v_max`` overrides the per-sequence speed maximum (e.g. with a corpus-
    wide constant); by default each sequence self-normalizes. When
    ``stroke_log`` is a list, one StrokeRecord per stroke is appended.
    """
    if bank is None:
        bank = default_bank()
    traj = compute_trajectories(seq)
    vmax = traj.v_max if v_max is None else float(v_max)
    n_steps = len(traj)
    if last_step is None:
        last_step = n_steps
    if not 1 <= first_step <= last_step <= n_steps:
        raise ValueError(
            f"step range [{first_step}, {last_step}] invalid for {n_steps} steps"
        )

    w, h = canvas.width, canvas.height
    tmap = fit_transform(seq, plane, canvas)
    a_u, a_v = plane.axes
    px_f, py_f = tmap.apply_arrays(seq.frames[:, :, a_u], seq.frames[:, :, a_v])
    px = np.floor(px_f + 0.5).astype(np.int64).tolist()
    py = np.floor(py_f + 0.5).astype(np.int64).tolist()
    speeds = traj.speeds.tolist()
    parts = seq.layout.parts
    n = seq.n
    m = seq.m

    if into is None:
        bg_r, bg_g, bg_b = canvas.background
        buf = [(bg_r << 16) | (bg_g << 8) | bg_b] * (w * h)
    else:
        if into.width != w or into.height != h:
            raise ValueError("existing image does not match the canvas size")
        if into.plane is not plane:
            raise ValueError("existing image was rendered for a different plane")
        flat = into.pixels.astype(np.uint32)
        buf = (
            (flat[:, :, 0] << 16) | (flat[:, :, 1] << 8) | flat[:, :, 2]
        ).reshape(-1).tolist()

    # The per-stroke color pipeline (see stroke_color) is unrolled here with
    # per-step caching: at modulated levels the base color and its HSV form
    # depend only on (body part, step), so they are computed once per part
    # and only the speed-dependent modulation runs per joint. Equality with
    # the stroke_color composition is pinned by tests.
    mod_sat = level.modulates_saturation
    mod_bright = level.modulates_brightness
    modulated = mod_sat or mod_bright
    for q in range(first_step, last_step + 1):
        frac = q / (n - 1)
        row0x, row0y = px[q - 1], py[q - 1]
        row1x, row1y = px[q], py[q]
        step_speeds = speeds[q - 1]
        hsv_by_part: dict = {}
        packed_by_part: dict = {}
        for j in range(m):
            part = parts[j]
            speed = step_speeds[j]
            if modulated:
                hsv = hsv_by_part.get(part)
                if hsv is None:
                    hsv = rgb_to_hsv(*bank.for_part(part).lookup(frac))
                    hsv_by_part[part] = hsv
                hue, sat, val = hsv
                if mod_sat:
                    sat = saturation_scale(speed, vmax, mag)
                if mod_bright:
                    val = brightness_scale(speed, vmax, mag)
                r, g, b = hsv_to_rgb(hue, sat, val)
                packed = (_quantize(r) << 16) | (_quantize(g) << 8) | _quantize(b)
            else:
                packed = packed_by_part.get(part)
                if packed is None:
                    r, g, b = base_color(part, frac, level, bank)
                    packed = (_quantize(r) << 16) | (_quantize(g) << 8) | _quantize(b)
                    packed_by_part[part] = packed
            pts = _line_points(row0x[j], row0y[j], row1x[j], row1y[j], w, h)
            for x, y in pts:
                buf[y * w + x] = packed
            if stroke_log is not None:
                stroke_log.append(
                    StrokeRecord(
                        step_index=q,
                        joint=j,
                        part=parts[j],
                        fraction=frac,
                        speed=speed,
                        p0=(row0x[j], row0y[j]),
                        p1=(row1x[j], row1y[j]),
                        color=(packed >> 16, (packed >> 8) & 0xFF, packed & 0xFF),
                    )
                )

    packed_arr = np.asarray(buf, dtype=np.uint32).reshape(h, w)
    pixels = np.empty((h, w, 3), dtype=np.uint8)
    pixels[:, :, 0] = (packed_arr >> 16) & 0xFF
    pixels[:, :, 1] = (packed_arr >> 8) & 0xFF
    pixels[:, :, 2] = packed_arr & 0xFF

    if into is not None:
        into.pixels[:] = pixels
        return into
    meta = {"label": seq.label, "subject": seq.subject, "level": level.value}
    return JtmImage(plane=plane, pixels=pixels, meta=meta)


def render_all_planes(
    seq: SkeletonSequence,
    level: EncodingLevel = EncodingLevel.HUE_PARTS_SAT_BRIGHT,
    bank: ColormapBank | None = None,
    mag: MagnitudeRange = FULL_RANGE,
    canvas: CanvasConfig = DEFAULT_CANVAS,
    *,
    v_max: float | None = None,
) -> tuple[JtmImage, JtmImage, JtmImage]:
    """Render the front, top, and side maps with independent bounding-box fits."""
    return tuple(
        render_jtm(seq, plane, level, bank, mag, canvas, v_max=v_max)
        for plane in (Plane.FRONT, Plane.TOP, Plane.SIDE)
    )


def save_png(img: JtmImage, path) -> None:
    """Write the image as 8-bit RGB PNG (no alpha)."""
    from PIL import Image

    Image.fromarray(img.pixels, mode="RGB").save(str(path), format="PNG")


def save_ppm(img: JtmImage, path) -> None:
    """Write the image as binary PPM (P6), handy for byte-level diffing."""
    header = f"P6\n{img.width} {img.height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header + img.pixels.tobytes())
