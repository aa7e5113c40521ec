"""jtmkit: joint trajectory map encoding of 3D skeleton action sequences.

A skeleton action sample (n frames of m named 3D joints) becomes up to three
fixed-size RGB images, one per Cartesian projection plane, by accumulating
each joint's inter-frame displacement as a colored stroke. Stroke hue tracks
the step's position in time, the colormap tracks the joint's body part, and
saturation/brightness can track joint speed. A deterministic nearest-neighbor
harness over downsampled pixels measures how well the encoding separates
action classes under cross-subject splits.
"""

from .skeleton import (
    BodyPart,
    FormatError,
    JointId,
    SkeletonLayout,
    SkeletonSequence,
    TooShortError,
    ValidationError,
    default_layout_20,
    infer_body_part,
    layout_from_names,
    parse_canonical,
    parse_msrc12_stream,
    serialize_canonical,
)
from .trajectory import TrajectorySet, TrajectoryStep, compute_trajectories, joint_speed
from .color import (
    Colormap,
    ColormapBank,
    EncodingLevel,
    JET,
    LIGHT_GRAY_TO_BLACK,
    MagnitudeRange,
    ReversedColormap,
    bank_table,
    base_color,
    brightness_scale,
    default_bank,
    hsv_to_rgb,
    rgb_to_hsv,
    saturation_scale,
    stroke_color,
    temporal_position,
)
from .raster import (
    AffineMap2D,
    CanvasConfig,
    JtmImage,
    Plane,
    StrokeRecord,
    draw_stroke,
    fit_transform,
    render_all_planes,
    render_jtm,
    save_png,
    save_ppm,
)
from .harness import (
    EvalReport,
    FeatureVector,
    OddEvenSubjects,
    SampleRecord,
    Split,
    SubjectLists,
    confusion_csv,
    evaluate,
    featurize,
    format_report,
    fuse_scores,
    knn_scores,
    make_split,
    records_text,
)
from .synth import GENERATOR_LABELS, GENERATOR_NAMES, generate_sequence, generate_suite

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
