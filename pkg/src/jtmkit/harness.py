"""Cross-subject splits, a deterministic nearest-neighbor baseline over
trajectory-map pixels, per-plane score fusion, and metric reporting.

The classifier is intentionally simple: images are box-downsampled,
normalized, and flattened; test samples are scored by the class fractions of
their k nearest training vectors (Euclidean distance, ties broken by lower
training index); per-plane score vectors are averaged before the argmax.
Everything is deterministic, including tie cases, so reports can be frozen
as regression values.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .color import ColormapBank, EncodingLevel, FULL_RANGE, MagnitudeRange
from .raster import CanvasConfig, DEFAULT_CANVAS, JtmImage, Plane, render_jtm
from .skeleton import SkeletonSequence

__all__ = [
    "OddEvenSubjects",
    "SubjectLists",
    "Split",
    "FeatureVector",
    "SampleRecord",
    "EvalReport",
    "make_split",
    "featurize",
    "knn_scores",
    "fuse_scores",
    "evaluate",
    "format_report",
    "records_text",
    "confusion_csv",
]

ALL_PLANES = (Plane.FRONT, Plane.TOP, Plane.SIDE)


@dataclass(frozen=True)
class OddEvenSubjects:
    """Odd subject ids train, even subject ids test."""


@dataclass(frozen=True)
class SubjectLists:
    """Explicit train / validation / test subject sets (pass empty sets freely)."""

    train: frozenset[int]
    validation: frozenset[int]
    test: frozenset[int]

    def __init__(self, train, validation, test):
        object.__setattr__(self, "train", frozenset(train))
        object.__setattr__(self, "validation", frozenset(validation))
        object.__setattr__(self, "test", frozenset(test))
        if self.train & self.test:
            raise ValueError(
                f"train and test subjects overlap: {sorted(self.train & self.test)}"
            )
        if self.validation & (self.train | self.test):
            raise ValueError("validation subjects overlap train or test")


SplitProtocol = OddEvenSubjects | SubjectLists


@dataclass
class Split:
    """Index partition of a sample list (positions, not subject ids)."""

    train: list[int]
    test: list[int]
    validation: list[int] = field(default_factory=list)


def make_split(
    samples: list[SkeletonSequence], protocol: SplitProtocol
) -> Split:
    """Partition samples by subject id according to a split protocol.

    Every sample must carry a subject id; both the train and the test side
    must end up non-empty. Validation subjects (when the protocol names
    any) are carried through but unused by the nearest-neighbor baseline.
    """
    for i, s in enumerate(samples):
        if s.subject is None:
            raise ValueError(f"sample {i} has no subject id; cannot split")
    split = Split(train=[], test=[])
    for i, s in enumerate(samples):
        if isinstance(protocol, OddEvenSubjects):
            (split.train if s.subject % 2 == 1 else split.test).append(i)
        else:
            if s.subject in protocol.train:
                split.train.append(i)
            elif s.subject in protocol.test:
                split.test.append(i)
            elif s.subject in protocol.validation:
                split.validation.append(i)
            # subjects outside all sets are dropped
    if not split.train:
        raise ValueError("split produced an empty training set")
    if not split.test:
        raise ValueError("split produced an empty test set")
    return split


@dataclass
class FeatureVector:
    """Flattened, [0, 1]-normalized pixels of a downsampled map."""

    values: np.ndarray
    plane: Plane


def featurize(img: JtmImage, side: int = 64) -> FeatureVector:
    """Box-downsample to side x side RGB, scale to [0, 1], flatten row-major.

    When side does not divide the image dimensions, pixels go to the bucket
    floor(index * side / dimension), an area average with uneven bins.
    """
    h, w = img.pixels.shape[:2]
    if side < 1 or side > min(h, w):
        raise ValueError(f"side {side} must be in [1, min(h, w)={min(h, w)}]")
    pix = img.pixels.astype(np.float64)
    if h % side == 0 and w % side == 0:
        small = pix.reshape(side, h // side, side, w // side, 3).mean(axis=(1, 3))
    else:
        rows = (np.arange(h) * side) // h
        cols = (np.arange(w) * side) // w
        sums = np.zeros((side, side, 3), dtype=np.float64)
        counts = np.zeros((side, side, 1), dtype=np.float64)
        np.add.at(sums, (rows[:, None], cols[None, :]), pix)
        np.add.at(counts, (rows[:, None], cols[None, :]), 1.0)
        small = sums / counts
    return FeatureVector(values=(small / 255.0).reshape(-1), plane=img.plane)


def knn_scores(
    query: np.ndarray | FeatureVector,
    train_values: np.ndarray,
    train_classes: np.ndarray,
    k: int,
    n_classes: int | None = None,
) -> np.ndarray:
    """Per-class score vector: fraction of the k nearest neighbors per class.

    Distance is Euclidean; equidistant neighbors resolve to the lower
    training index. Scores sum to 1.
    """
    q = query.values if isinstance(query, FeatureVector) else np.asarray(query)
    train_values = np.asarray(train_values, dtype=np.float64)
    train_classes = np.asarray(train_classes, dtype=np.int64)
    if train_values.shape[0] == 0:
        raise ValueError("training set is empty")
    if not 1 <= k <= train_values.shape[0]:
        raise ValueError(f"k={k} outside [1, {train_values.shape[0]}]")
    if n_classes is None:
        n_classes = int(train_classes.max()) + 1
    diff = train_values - q
    dist_sq = np.einsum("ij,ij->i", diff, diff)
    order = np.argsort(dist_sq, kind="stable")[:k]
    counts = np.bincount(train_classes[order], minlength=n_classes)
    return counts / float(k)


def fuse_scores(front: np.ndarray, top: np.ndarray, side: np.ndarray) -> np.ndarray:
    """Element-wise mean of the three per-plane score vectors."""
    front, top, side = (np.asarray(s, dtype=np.float64) for s in (front, top, side))
    if not front.shape == top.shape == side.shape:
        raise ValueError(
            f"score lengths differ: {front.shape}, {top.shape}, {side.shape}"
        )
    return (front + top + side) / 3.0


@dataclass
class SampleRecord:
    """Per-test-sample outcome: identity, truth, prediction, fused scores."""

    sample_id: str
    subject: int | None
    true_class: int
    predicted_class: int
    scores: np.ndarray


@dataclass
class EvalReport:
    """Aggregate metrics of one evaluation run."""

    classes: list[int]
    overall_accuracy: float
    per_class_accuracy: dict[int, float]
    confusion: np.ndarray
    per_plane_accuracy: dict[Plane, float]
    records: list[SampleRecord]
    level: EncodingLevel
    planes: tuple[Plane, ...]


def evaluate(
    samples: list[SkeletonSequence],
    protocol: SplitProtocol | Split,
    level: EncodingLevel = EncodingLevel.HUE_PARTS_SAT_BRIGHT,
    *,
    planes: tuple[Plane, ...] = ALL_PLANES,
    k: int = 1,
    feature_side: int = 64,
    bank: ColormapBank | None = None,
    mag: MagnitudeRange = FULL_RANGE,
    canvas: CanvasConfig = DEFAULT_CANVAS,
    ids: list[str] | None = None,
    workers: int = 1,
) -> EvalReport:
    """Render, featurize, classify, and tabulate one dataset end to end.

    ``protocol`` may be a split protocol (partitioned here by subject) or a
    precomputed Split of sample indices. ``planes`` selects single-plane or
    fused evaluation. ``workers`` parallelizes rendering across samples
    without changing any result.
    """
    if ids is None:
        ids = [f"s{i:04d}" for i in range(len(samples))]
    if len(ids) != len(samples):
        raise ValueError("ids and samples differ in length")
    for i, s in enumerate(samples):
        if s.label is None:
            raise ValueError(f"sample {ids[i]} has no class label")

    split = protocol if isinstance(protocol, Split) else make_split(samples, protocol)
    classes = sorted({int(s.label) for s in samples})
    class_index = {c: ci for ci, c in enumerate(classes)}
    n_classes = len(classes)

    def features_of(sample: SkeletonSequence) -> list[np.ndarray]:
        return [
            featurize(render_jtm(sample, p, level, bank, mag, canvas), feature_side).values
            for p in planes
        ]

    wanted = sorted(set(split.train) | set(split.test))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            feats = dict(zip(wanted, pool.map(lambda i: features_of(samples[i]), wanted)))
    else:
        feats = {i: features_of(samples[i]) for i in wanted}

    train_classes = np.array(
        [class_index[int(samples[i].label)] for i in split.train], dtype=np.int64
    )
    train_by_plane = [
        np.stack([feats[i][pi] for i in split.train]) for pi in range(len(planes))
    ]

    confusion = np.zeros((n_classes, n_classes), dtype=np.int64)
    per_plane_hits = [0] * len(planes)
    records = []
    for i in split.test:
        true_ci = class_index[int(samples[i].label)]
        plane_scores = [
            knn_scores(feats[i][pi], train_by_plane[pi], train_classes, k, n_classes)
            for pi in range(len(planes))
        ]
        if len(planes) == 3:
            fused = fuse_scores(*plane_scores)
        else:
            fused = np.mean(plane_scores, axis=0)
        pred_ci = int(np.argmax(fused))
        confusion[true_ci, pred_ci] += 1
        for pi, sc in enumerate(plane_scores):
            if int(np.argmax(sc)) == true_ci:
                per_plane_hits[pi] += 1
        records.append(
            SampleRecord(
                sample_id=ids[i],
                subject=samples[i].subject,
                true_class=classes[true_ci],
                predicted_class=classes[pred_ci],
                scores=fused,
            )
        )

    total = len(split.test)
    per_class = {}
    for c, ci in class_index.items():
        row = confusion[ci].sum()
        per_class[c] = float(confusion[ci, ci] / row) if row else float("nan")
    return EvalReport(
        classes=classes,
        overall_accuracy=float(np.trace(confusion) / total),
        per_class_accuracy=per_class,
        confusion=confusion,
        per_plane_accuracy={
            p: per_plane_hits[pi] / total for pi, p in enumerate(planes)
        },
        records=records,
        level=level,
        planes=planes,
    )


def format_report(report: EvalReport) -> str:
    """Human-readable aligned text table of an EvalReport."""
    lines = [
        f"encoding level : {report.level.value}",
        f"planes         : {', '.join(p.value for p in report.planes)}",
        f"test samples   : {len(report.records)}",
        f"overall        : {report.overall_accuracy:.4f}",
        "",
        "per-plane accuracy",
    ]
    for p, acc in report.per_plane_accuracy.items():
        lines.append(f"  {p.value:<6} {acc:.4f}")
    lines.append("")
    lines.append("per-class accuracy")
    for c in report.classes:
        acc = report.per_class_accuracy[c]
        shown = f"{acc:.4f}" if acc == acc else "-"
        lines.append(f"  class {c:<4} {shown}")
    return "\n".join(lines) + "\n"


def records_text(report: EvalReport) -> str:
    """Machine-readable per-sample records: id, truth, prediction, scores."""
    header = "id\tsubject\ttrue\tpredicted\t" + "\t".join(
        f"score_{c}" for c in report.classes
    )
    lines = [header]
    for r in report.records:
        scores = "\t".join(repr(float(s)) for s in r.scores)
        lines.append(
            f"{r.sample_id}\t{r.subject}\t{r.true_class}\t{r.predicted_class}\t{scores}"
        )
    return "\n".join(lines) + "\n"


def confusion_csv(report: EvalReport) -> str:
    """Confusion matrix as CSV; rows are true classes, columns predictions."""
    header = "true\\pred," + ",".join(str(c) for c in report.classes)
    lines = [header]
    for ci, c in enumerate(report.classes):
        lines.append(f"{c}," + ",".join(str(int(v)) for v in report.confusion[ci]))
    return "\n".join(lines) + "\n"
