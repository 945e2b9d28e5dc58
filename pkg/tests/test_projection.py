import re

import pytest

from h4matroid.gfield import ONE, ZERO, GoldenNumber
from h4matroid.projection import (
    DEFAULT_TRANSFORM,
    ProjectionError,
    ProjectionSpec,
    parse_matrix,
    project_points,
    project_svg,
)


def test_default_projection_draws_all_points(m):
    svg = project_svg(m)
    assert svg.count('class="point"') == 60
    assert "<line" not in svg
    assert len(set(re.findall(r'cx="([^"]+)" cy="([^"]+)"', svg))) == 60


@pytest.mark.parametrize("k, count", [(2, 450), (3, 200), (5, 72)])
def test_line_overlays(m, k, count):
    svg = project_svg(m, line_sizes=[k])
    assert svg.count(f'class="line{k}"') == count


def test_plane_overlay(m):
    svg = project_svg(m, plane=3)
    assert svg.count('fill="#ff7f0e"') == 15


def test_output_is_byte_stable(m):
    assert project_svg(m, line_sizes=[3, 5], plane=0) == project_svg(m, line_sizes=[3, 5], plane=0)
    assert re.search(r'cx="-?\d+\.\d{6}"', project_svg(m))


def test_default_transform_avoids_zero(m):
    ProjectionSpec().validate(m.points)
    assert len(project_points(ProjectionSpec(), m.points)) == 60


def test_zero_first_coordinate_names_the_point(m):
    spec = ProjectionSpec(transform=((ONE, ZERO, ZERO, ZERO),) + DEFAULT_TRANSFORM[1:])
    first_zero = next(p.id for p in m.points if not p.coords[0])
    with pytest.raises(ProjectionError, match=rf"point {first_zero}\b"):
        project_svg(m, spec)


def test_singular_transform(m):
    row = DEFAULT_TRANSFORM[0]
    spec = ProjectionSpec(transform=(row, row) + DEFAULT_TRANSFORM[2:])
    with pytest.raises(ProjectionError, match="singular"):
        project_svg(m, spec)


def test_bad_overlay_arguments(m):
    with pytest.raises(ProjectionError):
        project_svg(m, line_sizes=[4])
    with pytest.raises(ProjectionError):
        project_svg(m, plane=60)


def test_parse_matrix():
    t = parse_matrix("7+2*t,5+0*t,1+0*t,2+0*t;0+0*t,1+0*t,0+0*t,0+0*t;0+0*t,0+0*t,1+0*t,0+0*t;0+0*t,0+0*t,0+0*t,1+0*t")
    assert t == DEFAULT_TRANSFORM
    assert t[0][0] == GoldenNumber(7, 2)
    with pytest.raises(ProjectionError):
        parse_matrix("1+0*t,0+0*t")
