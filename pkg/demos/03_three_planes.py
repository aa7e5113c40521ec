"""Project one action onto the three Cartesian planes.

A circle drawn by the right hand looks like a ring from the front, and like
flattened bands from the top and the side; each plane gets its own
bounding-box fit so all three use the full canvas.

Run from the repository root:  python3 demos/03_three_planes.py
"""

from pathlib import Path

from jtmkit import render_all_planes, save_png
from jtmkit.synth import generate_sequence

OUT = Path(__file__).parent / "output"


def main():
    OUT.mkdir(exist_ok=True)
    seq = generate_sequence("circle-cw", sample_index=0, seed=0, noise=0.0)
    front, top, side = render_all_planes(seq)
    for img in (front, top, side):
        path = OUT / f"circle_{img.plane.value}.png"
        save_png(img, path)
        occupied = img.pixels.any(axis=2)
        rows = occupied.any(axis=1).sum()
        cols = occupied.any(axis=0).sum()
        print(f"{img.plane.value:<6} strokes span {cols:3d} columns x {rows:3d} rows -> {path.name}")


if __name__ == "__main__":
    main()
