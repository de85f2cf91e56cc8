"""Tile diagrams of a state set under a bipartition.

Rows are the S-side basis strings and columns the S'-side strings, in the
same order as :func:`nlw.bipart.flatten`. A cell lists the states whose
flattened coefficient there is nonzero; states 1 and 2 are drawn dark,
every later state grey.
"""
from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from . import bipart
from .bipart import Bipartition
from .model import StateSet

SUPPORT_TOL = 1e-12
GLYPHS = {"dark": "#", "grey": "+", "mixed": "*", "empty": "."}


@dataclass(frozen=True)
class TileDiagram:
    title: str
    split: Bipartition
    rows: tuple[str, ...]
    cols: tuple[str, ...]
    cells: dict[tuple[int, int], frozenset[int]]
    shading: dict[int, str]

    def cell_class(self, r: int, c: int) -> str:
        idx = self.cells.get((r, c), frozenset())
        if not idx:
            return "empty"
        classes = {self.shading[i] for i in idx}
        return classes.pop() if len(classes) == 1 else "mixed"


def tile_diagram(s: StateSet, b: Bipartition) -> TileDiagram:
    flats = [bipart.flatten(st, b).matrix for st in s.states]
    cells: dict[tuple[int, int], set[int]] = {}
    for k, mat in enumerate(flats):
        for r, c in zip(*(abs(mat) > SUPPORT_TOL).nonzero()):
            cells.setdefault((int(r), int(c)), set()).add(k)
    shading = {k: ("dark" if k < 2 else "grey") for k in range(len(s))}
    return TileDiagram(
        title=s.label,
        split=b,
        rows=tuple(bipart.side_labels(s.local_dims, b.left)),
        cols=tuple(bipart.side_labels(s.local_dims, b.right)),
        cells={k: frozenset(v) for k, v in cells.items()},
        shading=shading,
    )


def render_ascii(t: TileDiagram) -> str:
    rw = max(len(r) for r in t.rows)
    cw = max(max(len(c) for c in t.cols), 1)
    lines = [f"{t.title}  split {t.split} ({t.split.letters()})"]
    lines.append(" " * rw + " " + " ".join(c.rjust(cw) for c in t.cols))
    for i, r in enumerate(t.rows):
        glyphs = [GLYPHS[t.cell_class(i, j)].rjust(cw) for j in range(len(t.cols))]
        lines.append(r.rjust(rw) + " " + " ".join(glyphs))
    lines.append("# states 1,2   + later states   * both   . empty")
    return "\n".join(lines) + "\n"


_FILL = {"dark": "#333333", "grey": "#aaaaaa", "mixed": "#666699", "empty": "#ffffff"}


def render_svg(t: TileDiagram, cell: int = 28) -> str:
    pad = 8 * (max(len(r) for r in t.rows) + 1)
    top = 40
    w = pad + cell * len(t.cols) + 10
    h = top + cell * len(t.rows) + 10
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="monospace" font-size="12">',
        f'<text x="4" y="14">{escape(t.title)} split {escape(str(t.split))}</text>',
    ]
    for j, c in enumerate(t.cols):
        out.append(f'<text x="{pad + j * cell + 4}" y="{top - 6}">{c}</text>')
    for i, r in enumerate(t.rows):
        y = top + i * cell
        out.append(f'<text x="4" y="{y + cell // 2 + 4}">{r}</text>')
        for j in range(len(t.cols)):
            fill = _FILL[t.cell_class(i, j)]
            out.append(
                f'<rect x="{pad + j * cell}" y="{y}" width="{cell}" height="{cell}" fill="{fill}" stroke="#000"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
