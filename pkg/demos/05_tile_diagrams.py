"""Tile diagrams: where each state lives in the flattened grid.

Rows are the S-side basis strings and columns the S'-side strings. '#'
marks the GHZ (or Bell) pair, '+' the third state.
"""
import sys
from pathlib import Path

from nlw import Bipartition, gen_bell_triple, gen_example1, gen_example2, gen_ghosh_set
from nlw.tiles import render_ascii, render_svg, tile_diagram

figures = [
    (gen_bell_triple(), "1|2"),
    (gen_ghosh_set(), "1|2"),
    (gen_example1(3), "1,2|3"),
    (gen_example1(4), "1,2|3,4"),
    (gen_example2(3), "1,2|3"),
    (gen_example2(4), "1,2|3,4"),
]
out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else None
for s, split in figures:
    t = tile_diagram(s, Bipartition.parse(split, s.num_parties))
    print(render_ascii(t))
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / f"{s.label}.svg").write_text(render_svg(t))
