import pytest

from confspace.covering import PathSamples
from confspace.demo import swap_loop
from confspace.errors import ParseError
from confspace.permgroup import Configuration
from confspace.plotting import PlotSpec, render_loop_svg


def test_swap_loop_renders_two_strokes():
    svg = render_loop_svg(swap_loop(n=2, steps=32))
    assert svg.startswith('<?xml version="1.0"')
    assert 'version="1.1"' in svg
    assert svg.count("<path ") == 2
    assert svg.count("<polygon ") == 2  # arrowheads
    assert ">A</text>" in svg and ">B</text>" in svg


def test_constant_loop_renders_dots_only():
    config = Configuration([[0, 0, 0], [1, 0, 0], [0, 2, 0]])
    loop = PathSamples(samples=(config,) * 4, closed=True)
    svg = render_loop_svg(loop)
    assert svg.count("<path ") == 0
    assert svg.count("<circle ") == 3
    assert ">C</text>" in svg


def test_render_is_deterministic():
    loop = swap_loop(n=3, steps=48)
    spec = PlotSpec(projection=(0, 2), stride=2, width=400, height=300)
    assert render_loop_svg(loop, spec) == render_loop_svg(loop, spec)


def test_pca_projection_renders():
    svg = render_loop_svg(swap_loop(n=2, steps=32), PlotSpec(projection="pca"))
    assert svg.count("<path ") == 2


def test_bad_projection_indices_rejected():
    with pytest.raises(ParseError, match="projection"):
        render_loop_svg(swap_loop(n=2, steps=16), PlotSpec(projection=(0, 7)))


def test_stride_keeps_final_sample():
    loop = swap_loop(n=2, steps=33)
    svg_full = render_loop_svg(loop, PlotSpec(stride=10))
    assert svg_full.count("<path ") == 2
