"""
Unit tests for the square-balancing grid scan, CSV and PPM output.
"""

import pytest

from balancing import Variant
from exceptions import DomainError, ShapeError
from gridlab import (BLACK, LIGHT_GRAY, RED, WHITE, cell_color, emit_csv, emit_ppm,
                     pattern_report, render_image, scan_grid)


@pytest.fixture(scope="module")
def small_balancing_scan():
    return scan_grid(3, 3, 50, Variant.BALANCING)


@pytest.mark.unit
def test_scan_skips_non_coprime_cells(small_balancing_scan):
    assert sorted(small_balancing_scan.cells) == [(1, 1), (1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)]


@pytest.mark.unit
def test_every_balancing_cell_has_trivial_solution(small_balancing_scan):
    for solutions in small_balancing_scan.cells.values():
        assert (solutions[0].n, solutions[0].r) == (1, 0)


@pytest.mark.unit
def test_csv_layout(small_balancing_scan):
    lines = emit_csv(small_balancing_scan).decode("ascii").splitlines()
    assert lines[0] == "# variant=balancing n_max=50"
    assert lines[1] == "a,b,count,solutions"
    assert len(lines) == 2 + 7
    assert lines[2].startswith("1,1,")
    for line in lines[2:]:
        a, b, count, solutions = line.split(",")
        assert int(count) == len(solutions.split(";"))
        assert "1:0" in solutions.split(";")


@pytest.mark.unit
def test_ppm_decodes_with_pillow(small_balancing_scan, ppm_helper):
    data = emit_ppm(small_balancing_scan)
    assert ppm_helper.header(data) == ("P3", 3, 3, 255)
    image = ppm_helper.decode(data)
    assert image.size == (3, 3)
    assert image.getpixel((1, 1)) == WHITE
    assert image.getpixel((0, 0)) != WHITE
    assert image.tobytes() == render_image(small_balancing_scan).tobytes()


@pytest.mark.unit
def test_outputs_identical_across_runs_and_jobs(small_balancing_scan, ppm_helper):
    again = scan_grid(3, 3, 50, Variant.BALANCING, jobs=2)
    assert emit_csv(again) == emit_csv(small_balancing_scan)
    assert ppm_helper.hash_bytes(emit_ppm(again)) == ppm_helper.hash_bytes(emit_ppm(small_balancing_scan))


@pytest.mark.unit
def test_cell_colors():
    assert cell_color(0, Variant.BALANCING) == WHITE
    assert cell_color(1, Variant.BALANCING) == LIGHT_GRAY
    assert cell_color(2, Variant.BALANCING) == RED
    assert cell_color(3, Variant.BALANCING) == BLACK
    assert cell_color(1, Variant.COBALANCING) == BLACK


@pytest.mark.unit
def test_scan_grid_bounds_checked():
    with pytest.raises(DomainError):
        scan_grid(0, 3, 10, Variant.BALANCING)


@pytest.mark.unit
def test_pattern_report_cobalancing():
    scan = scan_grid(4, 1, 100, Variant.COBALANCING)
    assert any((s.n, s.r) == (1, 1) for s in scan.cells[(4, 1)])
    report = pattern_report(scan)
    assert report.nonempty_cells >= 1
    assert 0 <= report.conforming_fraction <= 1
    assert report.to_dict()["period_a"]["period"] == 42


@pytest.mark.unit
def test_pattern_report_needs_cobalancing(small_balancing_scan):
    with pytest.raises(ShapeError):
        pattern_report(small_balancing_scan)
