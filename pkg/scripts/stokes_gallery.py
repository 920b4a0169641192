#!/usr/bin/env python3
"""Render a gallery of Stokes graphs across psi, with the ray overlaid.

Usage: python scripts/stokes_gallery.py [outdir] [gamma]
"""

import math
import pathlib
import sys

from wkbspec import PotentialQuadratic, build_stokes_graph
from wkbspec.svgplot import render_stokes_svg


def main() -> int:
    outdir = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path("stokes_gallery")
    gamma = float(sys.argv[2]) if len(sys.argv) > 2 else math.pi / 8.0
    outdir.mkdir(parents=True, exist_ok=True)
    # one sample from each crossing regime plus the compound configurations
    psis = [
        gamma / 2.0,
        gamma + 0.3,
        math.pi / 2.0,
        math.pi,
        2.0 * math.pi - 3.0 * gamma + 0.15,
        2.0 * math.pi - 0.05,
    ]
    for k, psi in enumerate(psis):
        graph = build_stokes_graph(PotentialQuadratic.z_form(psi % (2.0 * math.pi)))
        svg = render_stokes_svg(graph, ray_angle=gamma - psi)
        path = outdir / f"stokes_{k}_psi_{psi:.4f}.svg"
        path.write_text(svg)
        print(f"{path}  compound={graph.compound}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
