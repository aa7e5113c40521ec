"""Show the colormap bank and render one action at all six encoding levels.

Writes a color-bar strip for each of the three body-part colormaps, then a
trajectory map of the same synthetic sample per encoding level, so the
effect of each ladder rung (hue, part colormaps, saturation, brightness) is
visible side by side in demos/output/.

Run from the repository root:  python3 demos/02_colormaps_and_levels.py
"""

from pathlib import Path

import numpy as np

from jtmkit import (
    CanvasConfig,
    EncodingLevel,
    JtmImage,
    Plane,
    bank_table,
    default_bank,
    render_jtm,
    save_png,
)
from jtmkit.synth import generate_sequence

OUT = Path(__file__).parent / "output"


def colorbar(cmap, width=256, height=24) -> JtmImage:
    pixels = np.empty((height, width, 3), dtype=np.uint8)
    for x in range(width):
        r, g, b = cmap.lookup(x / (width - 1))
        pixels[:, x] = (round(r), round(g), round(b))
    return JtmImage(plane=Plane.FRONT, pixels=pixels)


def main():
    OUT.mkdir(exist_ok=True)
    bank = default_bank()
    print("colormap anchors (name, position, r, g, b):")
    print(bank_table(bank))
    for name, cmap in (("c1_left", bank.c1), ("c2_right", bank.c2), ("c3_middle", bank.c3)):
        save_png(colorbar(cmap), OUT / f"colormap_{name}.png")
        print(f"wrote {OUT / f'colormap_{name}.png'}")

    seq = generate_sequence("clap", sample_index=0, seed=0)
    canvas = CanvasConfig(width=256, height=256)
    print("\nencoding ladder on one 'clap' sample (front plane):")
    for level in EncodingLevel:
        img = render_jtm(seq, Plane.FRONT, level, canvas=canvas)
        path = OUT / f"ladder_{level.value}.png"
        save_png(img, path)
        lit = int(img.pixels.any(axis=2).sum())
        print(f"  {level.value:<10} {lit:5d} stroke pixels -> {path.name}")


if __name__ == "__main__":
    main()
