"""Write SVG drawings of the transformed corpus into an output directory.

    python scripts/render_figures.py out/ [--zoom 400]
"""
import argparse
from pathlib import Path

from seglink.corpus import CORPUS
from seglink.gadgets import transform_circuit
from seglink.linker import decide_circuit
from seglink.render import render_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--zoom", type=float, default=400.0, help="magnify the A'1 displacement for display")
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name, make in CORPUS.items():
        src = make()
        out, rep = transform_circuit(src)
        (args.outdir / f"{name}_input.svg").write_text(render_svg(src, decide_circuit(src)))
        svg = render_svg(out, decide_circuit(out), rep, args.zoom)
        (args.outdir / f"{name}_transformed.svg").write_text(svg)
        print(f"{name}: {len(src)} -> {len(out)} segments")


if __name__ == "__main__":
    main()
