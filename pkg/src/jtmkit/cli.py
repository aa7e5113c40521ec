"""Command-line entry point: encode, eval, export, and synth subcommands.

Exit codes are a stable contract: 0 success, 1 processing error, 2 usage
error. Every command is deterministic given identical inputs, flags, and
seed; run manifests differ between identical runs only in their timestamp.
File-level work parallelizes across a thread pool capped by the JTM_THREADS
environment variable without affecting any output byte.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .color import EncodingLevel, MagnitudeRange, default_bank
from .harness import (
    ALL_PLANES,
    OddEvenSubjects,
    SubjectLists,
    confusion_csv,
    evaluate,
    format_report,
    make_split,
    records_text,
)
from .raster import CanvasConfig, Plane, render_jtm, save_png
from .skeleton import (
    FormatError,
    SkeletonSequence,
    ValidationError,
    default_layout_20,
    parse_canonical,
    parse_msrc12_stream,
)
from .synth import GENERATOR_NAMES, write_suite

LEVEL_CHOICES = [lv.value for lv in EncodingLevel] + ["all"]
PLANE_CHOICES = [p.value for p in Plane] + ["all"]


class ProcessingError(Exception):
    """A non-usage failure that should terminate with exit code 1."""


def _workers() -> int:
    env = os.environ.get("JTM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ProcessingError(f"JTM_THREADS={env!r} is not an integer") from None
    return min(8, os.cpu_count() or 1)


def _parse_size(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"size must look like 256x256, got {text!r}")


def _levels(arg: str) -> list[EncodingLevel]:
    if arg == "all":
        return list(EncodingLevel)
    return [EncodingLevel(arg)]


def _planes(arg: str) -> tuple[Plane, ...]:
    if arg == "all":
        return ALL_PLANES
    return (Plane(arg),)


def _canvas(args) -> CanvasConfig:
    w, h = args.size
    return CanvasConfig(width=w, height=h, margin_fraction=args.margin)


def _mag(args) -> MagnitudeRange:
    return MagnitudeRange(
        s_min=args.smin, s_max=args.smax, b_min=args.bmin, b_max=args.bmax
    )


def _parse_subject_ranges(text: str) -> frozenset[int]:
    subjects: set[int] = set()
    for chunk in text.split(","):
        if "-" in chunk:
            lo, hi = chunk.split("-")
            subjects.update(range(int(lo), int(hi) + 1))
        elif chunk:
            subjects.add(int(chunk))
    return frozenset(subjects)


def _parse_protocol(tokens: list[str]):
    if tokens == ["odd-even"]:
        return OddEvenSubjects()
    if len(tokens) == 2 and tokens[0] == "subjects":
        groups = tokens[1].split("/")
        if len(groups) == 2:
            train, test = (_parse_subject_ranges(g) for g in groups)
            return SubjectLists(train, frozenset(), test)
        if len(groups) == 3:
            train, validation, test = (_parse_subject_ranges(g) for g in groups)
            return SubjectLists(train, validation, test)
    raise ProcessingError(
        f"bad protocol {' '.join(tokens)!r}; use 'odd-even' or "
        "'subjects TRAIN/TEST' or 'subjects TRAIN/VALIDATION/TEST'"
    )


def _load_sequence(path: Path, fmt: str) -> SkeletonSequence:
    data = path.read_bytes()
    if fmt == "auto":
        fmt = "canonical" if data.startswith(b"JTM1 ") else "msrc12"
    if fmt == "canonical":
        return parse_canonical(data)
    return parse_msrc12_stream(data, default_layout_20())


def _load_dataset(directory: Path) -> tuple[list[str], list[SkeletonSequence]]:
    paths = sorted(directory.glob("*.jtm"))
    if not paths:
        raise ProcessingError(f"no .jtm files in {directory}")
    ids, samples = [], []
    for path in paths:
        try:
            seq = parse_canonical(path.read_bytes())
        except (FormatError, ValidationError) as exc:
            raise ProcessingError(f"{path}: {exc}") from None
        if seq.label is None:
            raise ProcessingError(f"{path}: sample has no class label")
        ids.append(path.stem)
        samples.append(seq)
    return ids, samples


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _manifest(command: str, args, levels, planes, inputs, outputs) -> dict:
    bank = default_bank()
    return {
        "tool": "jtmkit",
        "version": __version__,
        "command": command,
        "config": {
            "levels": [lv.value for lv in levels],
            "planes": [p.value for p in planes],
            "canvas": {
                "width": args.size[0],
                "height": args.size[1],
                "margin_fraction": args.margin,
                "background": [0, 0, 0],
            },
            "magnitude_range": {
                "s_min": args.smin,
                "s_max": args.smax,
                "b_min": args.bmin,
                "b_max": args.bmax,
            },
            "colormap_anchors": {
                "c1": [[p, list(c)] for p, c in bank.c1.anchors],
                "c2": [[p, list(c)] for p, c in bank.c2.anchors],
                "c3": [[p, list(c)] for p, c in bank.c3.anchors],
            },
        },
        "inputs": [{"path": str(p), "sha256": _sha256(p)} for p in inputs],
        "outputs": [str(p) for p in outputs],
        "created_utc": datetime.now(timezone.utc).isoformat(),
    }


def cmd_encode(args) -> int:
    levels = _levels(args.level)
    planes = _planes(args.plane)
    canvas = _canvas(args)
    mag = _mag(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    inputs = [Path(p) for p in args.inputs]

    def process(path: Path):
        outputs = []
        try:
            seq = _load_sequence(path, args.format)
            for level in levels:
                for plane in planes:
                    img = render_jtm(seq, plane, level, mag=mag, canvas=canvas)
                    target = out_dir / f"{path.stem}_{plane.value}_{level.value}.png"
                    save_png(img, target)
                    outputs.append(target)
        except (OSError, FormatError, ValidationError) as exc:
            return outputs, f"{path}: {exc}"
        return outputs, None

    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        results = list(pool.map(process, inputs))

    outputs, errors = [], []
    for path, (outs, err) in zip(inputs, results):
        outputs.extend(outs)
        if err is not None:
            errors.append(err)
    for err in errors:
        print(f"error: {err}", file=sys.stderr)
    if errors and not args.keep_going:
        return 1
    manifest = _manifest("encode", args, levels, planes, inputs=[p for p in inputs], outputs=outputs)
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {len(outputs)} images to {out_dir}")
    return 1 if errors else 0


def cmd_eval(args) -> int:
    ids, samples = _load_dataset(Path(args.dataset))
    protocol = _parse_protocol(args.protocol)
    canvas = _canvas(args)
    mag = _mag(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    workers = _workers()

    if args.ablation:
        lines = ["level\taccuracy"]
        for level in EncodingLevel:
            report = evaluate(
                samples,
                protocol,
                level,
                planes=(Plane.FRONT,),
                k=args.k,
                mag=mag,
                canvas=canvas,
                ids=ids,
                workers=workers,
            )
            lines.append(f"{level.value}\t{report.overall_accuracy:.4f}")
            print(f"{level.value:<10} {report.overall_accuracy:.4f}")
        (out_dir / "ablation.tsv").write_text("\n".join(lines) + "\n")
        return 0

    report = evaluate(
        samples,
        protocol,
        _levels(args.level)[0],
        planes=_planes(args.plane),
        k=args.k,
        mag=mag,
        canvas=canvas,
        ids=ids,
        workers=workers,
    )
    (out_dir / "eval_report.txt").write_text(format_report(report))
    (out_dir / "records.tsv").write_text(records_text(report))
    (out_dir / "confusion.csv").write_text(confusion_csv(report))
    print(format_report(report), end="")
    return 0


def cmd_export(args) -> int:
    ids, samples = _load_dataset(Path(args.dataset))
    protocol = _parse_protocol(args.protocol)
    split = make_split(samples, protocol)
    levels = _levels(args.level)
    planes = _planes(args.plane)
    canvas = _canvas(args)
    mag = _mag(args)
    out_dir = Path(args.out)

    jobs = []  # (sample index, target path, level, plane)
    for part, indices in (
        ("train", split.train),
        ("validation", split.validation),
        ("test", split.test),
    ):
        for i in indices:
            for level in levels:
                for plane in planes:
                    target = (
                        out_dir
                        / part
                        / str(samples[i].label)
                        / f"{ids[i]}_{plane.value}_{level.value}.png"
                    )
                    jobs.append((i, target, level, plane))

    if not args.force:
        existing = [str(t) for _, t, _, _ in jobs if t.exists()]
        if existing:
            print(
                f"error: {len(existing)} output files already exist "
                f"(first: {existing[0]}); rerun with --force to overwrite",
                file=sys.stderr,
            )
            return 1

    def process(job):
        i, target, level, plane = job
        target.parent.mkdir(parents=True, exist_ok=True)
        img = render_jtm(samples[i], plane, level, mag=mag, canvas=canvas)
        save_png(img, target)
        return target

    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        outputs = list(pool.map(process, jobs))

    manifest = _manifest(
        "export",
        args,
        levels,
        planes,
        inputs=sorted(Path(args.dataset).glob("*.jtm")),
        outputs=outputs,
    )
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"exported {len(outputs)} images to {out_dir}")
    return 0


def cmd_synth(args) -> int:
    paths = write_suite(
        Path(args.out),
        count=args.count,
        seed=args.seed,
        names=(args.generator,),
        noise=args.noise,
    )
    print(f"wrote {len(paths)} sequences to {args.out}")
    return 0


def _add_render_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--plane", choices=PLANE_CHOICES, default="all")
    p.add_argument("--level", choices=LEVEL_CHOICES, default="satbright")
    p.add_argument("--size", type=_parse_size, default=(256, 256), metavar="WxH")
    p.add_argument("--margin", type=float, default=0.05)
    p.add_argument("--smin", type=float, default=0.0)
    p.add_argument("--smax", type=float, default=1.0)
    p.add_argument("--bmin", type=float, default=0.0)
    p.add_argument("--bmax", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jtm",
        description="Encode skeleton action sequences as joint trajectory maps "
        "and evaluate them with a deterministic pixel-space baseline.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_enc = sub.add_parser("encode", help="render sequences to PNG trajectory maps")
    p_enc.add_argument("inputs", nargs="+", metavar="FILE")
    _add_render_flags(p_enc)
    p_enc.add_argument("--format", choices=["auto", "canonical", "msrc12"], default="auto")
    p_enc.add_argument("--out", default=".")
    p_enc.add_argument("--keep-going", action="store_true")
    p_enc.set_defaults(func=cmd_encode)

    p_eval = sub.add_parser("eval", help="cross-subject nearest-neighbor evaluation")
    p_eval.add_argument("dataset", metavar="DIR")
    _add_render_flags(p_eval)
    p_eval.add_argument("--protocol", nargs="+", default=["odd-even"])
    p_eval.add_argument("--k", type=int, default=1)
    p_eval.add_argument("--ablation", action="store_true")
    p_eval.add_argument("--out", default=".")
    p_eval.set_defaults(func=cmd_eval)

    p_exp = sub.add_parser("export", help="write a class-foldered train/test image tree")
    p_exp.add_argument("dataset", metavar="DIR")
    _add_render_flags(p_exp)
    p_exp.add_argument("--protocol", nargs="+", default=["odd-even"])
    p_exp.add_argument("--out", default="export")
    p_exp.add_argument("--force", action="store_true")
    p_exp.set_defaults(func=cmd_export)

    p_syn = sub.add_parser("synth", help="generate seeded synthetic sequences")
    p_syn.add_argument("generator", choices=GENERATOR_NAMES)
    p_syn.add_argument("--count", type=int, default=1)
    p_syn.add_argument("--seed", type=int, default=0)
    p_syn.add_argument("--noise", type=float, default=0.01)
    p_syn.add_argument("--out", default=".")
    p_syn.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ProcessingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FormatError, ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
