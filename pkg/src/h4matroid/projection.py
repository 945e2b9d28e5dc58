"""Affine projection of the 60 points to the page, emitted as SVG.

A golden change of basis T is applied to every column, the result is
scaled onto the hyperplane x1 = 1 and the remaining affine triple is
flattened by a fixed parallel view. All arithmetic is exact until the
final 6-decimal rendering, so the output is byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .gfield import GoldenNumber, ONE, ZERO, parse_golden
from .matroid import H4Matroid
from .roots import RootPoint

Matrix = tuple[tuple[GoldenNumber, ...], ...]

# first row chosen by a small search: nonzero on every root and the
# smallest spread of projected coordinates among nearby candidates
DEFAULT_TRANSFORM: Matrix = (
    (GoldenNumber(7, 2), GoldenNumber(5), GoldenNumber(1), GoldenNumber(2)),
    (ZERO, ONE, ZERO, ZERO),
    (ZERO, ZERO, ONE, ZERO),
    (ZERO, ZERO, ZERO, ONE),
)
# oblique parallel view of the affine triple (y, z, w)
DEFAULT_VIEW: Matrix = (
    (ONE, ZERO, GoldenNumber(0, 1) - 1),
    (ZERO, ONE, GoldenNumber(1, -1) / 2),
)
LINE_COLORS = {2: "#9e9e9e", 3: "#1f77b4", 5: "#d62728"}


class ProjectionError(ValueError):
    pass


def _det(m: Sequence[Sequence[GoldenNumber]]) -> GoldenNumber:
    """Exact determinant by Gaussian elimination over Q(τ)."""
    rows = [list(r) for r in m]
    n = len(rows)
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = rows[c][c].inverse()
        for r in range(c + 1, n):
            f = rows[r][c] * inv
            if f:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return det


def parse_matrix(text: str, shape: tuple[int, int] = (4, 4)) -> Matrix:
    """Parse rows separated by ';' and entries by ',' in the a+b*t grammar."""
    rows = tuple(
        tuple(parse_golden(e.strip()) for e in row.split(",")) for row in text.split(";") if row.strip()
    )
    if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
        raise ProjectionError(f"expected a {shape[0]}x{shape[1]} matrix, got {[len(r) for r in rows]}")
    return rows


@dataclass(frozen=True)
class ProjectionSpec:
    transform: Matrix = DEFAULT_TRANSFORM
    view: Matrix = DEFAULT_VIEW
    width: int = 800
    height: int = 800
    margin: int = 40
    point_radius: float = 4.0
    stroke_width: float = 1.0
    point_color: str = "#000000"
    highlight_color: str = "#ff7f0e"
    font_size: int = 9

    def validate(self, points: Sequence[RootPoint]) -> None:
        if len(self.transform) != 4 or any(len(r) != 4 for r in self.transform):
            raise ProjectionError("transform must be 4x4")
        if len(self.view) != 2 or any(len(r) != 3 for r in self.view):
            raise ProjectionError("view must be 2x3")
        if not _det(self.transform):
            raise ProjectionError("transform is singular")
        for p in points:
            if not _first(self.transform, p.coords):
                raise ProjectionError(f"point {p.id} has zero first coordinate after the transform")


def _first(t: Matrix, v) -> GoldenNumber:
    return sum((a * b for a, b in zip(t[0], v)), ZERO)


def affine_triple(spec: ProjectionSpec, v) -> tuple[GoldenNumber, ...]:
    u = [sum((a * b for a, b in zip(row, v)), ZERO) for row in spec.transform]
    inv = u[0].inverse()
    return tuple(x * inv for x in u[1:])


def project_points(spec: ProjectionSpec, points: Sequence[RootPoint]) -> list[tuple[GoldenNumber, GoldenNumber]]:
    """Exact 2D images of the points, before page scaling."""
    spec.validate(points)
    out = []
    for p in points:
        t = affine_triple(spec, p.coords)
        out.append(tuple(sum((a * b for a, b in zip(row, t)), ZERO) for row in spec.view))
    return out


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


@dataclass
class Drawing:
    coords: list[tuple[float, float]]
    segments: list[tuple[int, int, int]] = field(default_factory=list)  # (size, a, b)
    highlighted: tuple[int, ...] = ()


def layout(spec: ProjectionSpec, points: Sequence[RootPoint]) -> list[tuple[float, float]]:
    exact = project_points(spec, points)
    xs = [float(x) for x, _ in exact]
    ys = [float(y) for _, y in exact]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    sx = (spec.width - 2 * spec.margin) / span
    sy = (spec.height - 2 * spec.margin) / span
    s = min(sx, sy)
    # page y grows downward
    return [(spec.margin + (x - min(xs)) * s, spec.height - spec.margin - (y - min(ys)) * s) for x, y in zip(xs, ys)]


def _extremes(line: Sequence[int], coords: list[tuple[float, float]]) -> tuple[int, int]:
    """The two points of a collinear set that lie farthest apart."""
    best = (line[0], line[1])
    dist = -1.0
    for i, a in enumerate(line):
        for b in line[i + 1 :]:
            d = (coords[a][0] - coords[b][0]) ** 2 + (coords[a][1] - coords[b][1]) ** 2
            if d > dist + 1e-12:
                best, dist = (a, b), d
    return best


def build_drawing(
    spec: ProjectionSpec,
    m: H4Matroid,
    line_sizes: Sequence[int] = (),
    plane: int | None = None,
) -> Drawing:
    coords = layout(spec, m.points)
    drawing = Drawing(coords)
    for k in sorted(set(line_sizes)):
        if k not in (2, 3, 5):
            raise ProjectionError(f"line size must be 2, 3 or 5, got {k}")
        for line in m.flats[f"line{k}"]:
            a, b = _extremes(line.points, coords)
            drawing.segments.append((k, a, b))
    if plane is not None:
        planes = m.flats["pi15"]
        if not 0 <= plane < len(planes):
            raise ProjectionError(f"plane index must be in 0..{len(planes) - 1}, got {plane}")
        drawing.highlighted = planes[plane].points
    return drawing


def render_svg(spec: ProjectionSpec, drawing: Drawing) -> str:
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
        f'<rect x="0" y="0" width="{spec.width}" height="{spec.height}" fill="#ffffff"/>',
    ]
    c = drawing.coords
    if drawing.segments:
        out.append('<g id="lines" fill="none">')
        for k, a, b in drawing.segments:
            out.append(
                f'<line class="line{k}" x1="{_fmt(c[a][0])}" y1="{_fmt(c[a][1])}" '
                f'x2="{_fmt(c[b][0])}" y2="{_fmt(c[b][1])}" stroke="{LINE_COLORS[k]}" '
                f'stroke-width="{spec.stroke_width}" stroke-opacity="0.6"/>'
            )
        out.append("</g>")
    hl = set(drawing.highlighted)
    out.append('<g id="points">')
    for i, (x, y) in enumerate(c):
        color = spec.highlight_color if i in hl else spec.point_color
        r = spec.point_radius * (1.5 if i in hl else 1.0)
        out.append(f'<circle class="point" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{r}" fill="{color}"/>')
        out.append(
            f'<text x="{_fmt(x + r + 1)}" y="{_fmt(y - r - 1)}" font-size="{spec.font_size}" '
            f'font-family="sans-serif">{i}</text>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def project_svg(
    m: H4Matroid | None = None,
    spec: ProjectionSpec | None = None,
    line_sizes: Sequence[int] = (),
    plane: int | None = None,
) -> str:
    m = m or H4Matroid()
    spec = spec or ProjectionSpec()
    return render_svg(spec, build_drawing(spec, m, line_sizes, plane))
