"""Demonstrate the accumulative nature of the map: render step by step.

Because strokes accumulate by in-order overwrite, a map can be extended one
step at a time as frames arrive (the online-recognition hook) and the result
is byte-identical to rendering the whole sequence at once. This script grows
a wave sample one step per iteration and saves a few snapshots.

Run from the repository root:  python3 demos/04_online_accumulation.py
"""

from pathlib import Path

from jtmkit import Plane, render_jtm, save_png
from jtmkit.synth import generate_sequence

OUT = Path(__file__).parent / "output"


def main():
    OUT.mkdir(exist_ok=True)
    seq = generate_sequence("wave", sample_index=0, seed=0)
    n_steps = seq.n - 1

    img = render_jtm(seq, Plane.FRONT, last_step=1)
    for step in range(2, n_steps + 1):
        img = render_jtm(seq, Plane.FRONT, first_step=step, last_step=step, into=img)
        if step in (n_steps // 4, n_steps // 2, n_steps):
            path = OUT / f"accumulate_step{step:02d}.png"
            save_png(img, path)
            print(f"after step {step:2d}/{n_steps}: wrote {path.name}")

    oneshot = render_jtm(seq, Plane.FRONT)
    print(
        "incremental == one-shot:",
        img.tobytes() == oneshot.tobytes(),
    )


if __name__ == "__main__":
    main()
