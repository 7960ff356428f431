"""SVG rendering: structure, radii, palette, and byte determinism."""
import re

import numpy as np
import pytest

from varden.model import Dataset, Labeling, NOISE
from varden.render import NOISE_COLOR, PALETTE, UnsupportedDimension, render_svg

CIRCLE_RE = re.compile(r'<circle cx="([^"]+)" cy="([^"]+)" r="([^"]+)" fill="([^"]+)"/>')


def _circles(text):
    return [(float(x), float(y), float(r), fill) for x, y, r, fill in CIRCLE_RE.findall(text)]


@pytest.fixture
def small_scene(tmp_path):
    ds = Dataset(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [8.0, 9.0]]))
    lab = Labeling([0, 0, 1, NOISE], [2, 1, 2, 0])  # core, border, core, noise
    path = tmp_path / "scene.svg"
    render_svg(ds, lab, path)
    return ds, lab, path.read_text()


def test_one_circle_per_point_plus_legend(small_scene):
    ds, lab, text = small_scene
    # 4 point circles + 3 legend swatches (cluster 0, cluster 1, noise)
    assert len(_circles(text)) == 4 + 3


def test_fill_colors(small_scene):
    _, _, text = small_scene
    pts = _circles(text)[:4]
    assert pts[0][3] == PALETTE[0]
    assert pts[1][3] == PALETTE[0]
    assert pts[2][3] == PALETTE[1]
    assert pts[3][3] == NOISE_COLOR


def test_border_radius_is_70_percent(small_scene):
    _, _, text = small_scene
    pts = _circles(text)[:4]
    core_r = pts[0][2]
    assert pts[1][2] == pytest.approx(0.7 * core_r, rel=1e-6)
    assert pts[2][2] == core_r
    assert pts[3][2] == pytest.approx(0.7 * core_r, rel=1e-6)  # noise draws small too


def test_viewbox_has_five_percent_margin(tmp_path):
    ds = Dataset(np.array([[0.0, 0.0], [10.0, 0.0], [0.0, 10.0]]))
    lab = Labeling([NOISE] * 3, [0] * 3)
    path = tmp_path / "v.svg"
    render_svg(ds, lab, path)
    m = re.search(r'viewBox="([^"]+)"', path.read_text())
    vx, vy, vw, vh = (float(v) for v in m.group(1).split())
    assert (vx, vy, vw, vh) == (-0.5, -0.5, 11.0, 11.0)


def test_y_axis_points_up(tmp_path):
    # higher data y must land at smaller SVG cy
    ds = Dataset(np.array([[0.0, 0.0], [0.0, 10.0]]))
    lab = Labeling([NOISE, NOISE], [0, 0])
    path = tmp_path / "flip.svg"
    render_svg(ds, lab, path)
    pts = _circles(path.read_text())[:2]
    assert pts[1][1] < pts[0][1]


def test_all_noise_renders_gray(tmp_path):
    ds = Dataset(np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 0.5]]))
    lab = Labeling([NOISE] * 3, [0] * 3)
    path = tmp_path / "noise.svg"
    render_svg(ds, lab, path)
    text = path.read_text()
    pts = _circles(text)
    assert len(pts) == 3 + 1  # 3 points + 1 legend swatch
    assert all(fill == NOISE_COLOR for _, _, _, fill in pts)
    for color in PALETTE:
        assert color not in text


def test_legend_lists_cluster_sizes(small_scene):
    _, _, text = small_scene
    assert ">cluster 0 (n=2)</text>" in text
    assert ">cluster 1 (n=1)</text>" in text
    assert ">noise (n=1)</text>" in text


def test_palette_cycles_beyond_twelve(tmp_path):
    n = 13
    coords = np.array([[float(i) * 10, 0.0] for i in range(n)])
    lab = Labeling(list(range(n)), [2] * n)
    path = tmp_path / "many.svg"
    render_svg(Dataset(coords), lab, path)
    pts = _circles(path.read_text())[:n]
    assert pts[12][3] == PALETTE[0]
    assert pts[11][3] == PALETTE[11]


def test_byte_deterministic(tmp_path):
    rng = np.random.default_rng(1)
    ds = Dataset(rng.normal(size=(50, 2)))
    labels = rng.integers(-1, 3, size=50)
    classes = np.where(labels == NOISE, 0, 2)
    lab = Labeling(labels, classes)
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    render_svg(ds, lab, a)
    render_svg(ds, lab, b)
    assert a.read_bytes() == b.read_bytes()


def test_single_point_dataset(tmp_path):
    ds = Dataset(np.array([[3.0, 4.0]]))
    lab = Labeling([NOISE], [0])
    path = tmp_path / "one.svg"
    render_svg(ds, lab, path)  # zero span must not break the viewBox
    m = re.search(r'viewBox="([^"]+)"', path.read_text())
    _, _, vw, vh = (float(v) for v in m.group(1).split())
    assert vw > 0 and vh > 0


def test_three_d_rejected(tmp_path):
    ds = Dataset(np.zeros((2, 3)))
    lab = Labeling([0, 0], [2, 2])
    with pytest.raises(UnsupportedDimension):
        render_svg(ds, lab, tmp_path / "x.svg")


def test_length_mismatch(tmp_path):
    ds = Dataset(np.zeros((2, 2)))
    with pytest.raises(Exception):
        render_svg(ds, Labeling([0], [2]), tmp_path / "x.svg")
