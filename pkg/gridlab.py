"""
Square-Balancing Grid Lab
Scans every coprime (a, b) cell of a grid for square (a,b) balancing or
cobalancing solutions and renders the counts as CSV and a plain PPM image.
"""

import csv
import io
import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Tuple

from PIL import Image

from balancing import BalanceSolution, CoeffPair, Variant, find_all
from exceptions import DomainError, ShapeError
from workers import parallel_map

logger = logging.getLogger(__name__)

WHITE = (255, 255, 255)
LIGHT_GRAY = (192, 192, 192)
RED = (255, 0, 0)
BLACK = (0, 0, 0)

# cobalancing pattern periods in a and b
PERIOD_A = 42
PERIOD_B = 6


@dataclass
class GridScan:
    a_max: int
    b_max: int
    n_max: int
    variant: Variant
    cells: Dict[Tuple[int, int], List[BalanceSolution]] = field(default_factory=dict)

    def count(self, a: int, b: int) -> int:
        return len(self.cells.get((a, b), []))


def _scan_cell(task: Tuple[int, int, str, int]) -> List[BalanceSolution]:
    a, b, variant, n_max = task
    return find_all(CoeffPair(a, b), Variant(variant), n_max, power=2)


def scan_grid(a_max: int, b_max: int, n_max: int, variant: Variant, jobs: int = 1) -> GridScan:
    """Square solutions with n <= n_max for every coprime 1 <= a <= a_max, 1 <= b <= b_max."""
    if a_max < 1 or b_max < 1 or n_max < 1:
        raise DomainError("grid bounds must be positive")
    variant = Variant(variant)
    pairs = [(a, b) for a in range(1, a_max + 1) for b in range(1, b_max + 1) if gcd(a, b) == 1]
    print_every = max(1, len(pairs) // 10)
    logger.info("[SCAN] %d coprime cells, %s, n <= %d, %d jobs", len(pairs), variant.value, n_max, jobs)
    results = parallel_map(_scan_cell, [(a, b, variant.value, n_max) for a, b in pairs], jobs)
    scan = GridScan(a_max, b_max, n_max, variant)
    for i, (pair, solutions) in enumerate(zip(pairs, results), start=1):
        scan.cells[pair] = solutions
        if i % print_every == 0:
            logger.debug("[SCAN] %d/%d cells merged", i, len(pairs))
    return scan


def emit_csv(scan: GridScan) -> bytes:
    """One row per coprime cell in (a, b) order: a,b,count,n:r;n:r..."""
    buffer = io.StringIO()
    buffer.write(f"# variant={scan.variant.value} n_max={scan.n_max}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["a", "b", "count", "solutions"])
    for (a, b) in sorted(scan.cells):
        solutions = scan.cells[(a, b)]
        writer.writerow([a, b, len(solutions), ";".join(f"{s.n}:{s.r}" for s in solutions)])
    return buffer.getvalue().encode("ascii")


def cell_color(count: int, variant: Variant) -> Tuple[int, int, int]:
    if count <= 0:
        return WHITE
    if variant == Variant.COBALANCING:
        return BLACK
    return {1: LIGHT_GRAY, 2: RED}.get(count, BLACK)


def render_image(scan: GridScan) -> Image.Image:
    """Column b-1, row a-1; cells that are not coprime stay white."""
    image = Image.new("RGB", (scan.b_max, scan.a_max), WHITE)
    for (a, b), solutions in scan.cells.items():
        image.putpixel((b - 1, a - 1), cell_color(len(solutions), scan.variant))
    return image


def emit_ppm(scan: GridScan) -> bytes:
    """Plain (P3) PPM of render_image, one image row per text line."""
    image = render_image(scan)
    width, height = image.size
    pixels = list(image.getdata())
    lines = [f"P3\n{width} {height}\n255"]
    for row in range(height):
        chunk = pixels[row * width:(row + 1) * width]
        lines.append(" ".join(f"{r} {g} {b}" for r, g, b in chunk))
    return ("\n".join(lines) + "\n").encode("ascii")


@dataclass
class PatternReport:
    nonempty_cells: int
    conforming_cells: int
    period_a_pairs: int
    period_a_agree: int
    period_b_pairs: int
    period_b_agree: int
    exceptions: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def conforming_fraction(self) -> float:
        return self.conforming_cells / self.nonempty_cells if self.nonempty_cells else 1.0

    def to_dict(self) -> Dict:
        return {
            "nonempty_cells": self.nonempty_cells,
            "conforming_cells": self.conforming_cells,
            "conforming_fraction": f"{self.conforming_fraction:.6f}",
            "period_a": {"period": PERIOD_A, "pairs": self.period_a_pairs, "agree": self.period_a_agree},
            "period_b": {"period": PERIOD_B, "pairs": self.period_b_pairs, "agree": self.period_b_agree},
            "exceptions": [list(cell) for cell in self.exceptions],
        }


def _conforms(a: int, b: int, solution: BalanceSolution) -> bool:
    r = solution.r
    return r > 0 and (a - b) % r == 0 and solution.n in (r, r - 1)


def pattern_report(scan: GridScan) -> PatternReport:
    """
    For square cobalancing scans: how many solutions have r | (a - b) with n in {r, r-1},
    and how often emptiness repeats with period 42 in a and 6 in b.
    """
    if scan.variant != Variant.COBALANCING:
        raise ShapeError("pattern report applies to cobalancing scans only")
    nonempty = conforming = 0
    exceptions = []
    for (a, b), solutions in sorted(scan.cells.items()):
        if not solutions:
            continue
        nonempty += 1
        if all(_conforms(a, b, s) for s in solutions):
            conforming += 1
        else:
            exceptions.append((a, b))

    def periodic(da: int, db: int) -> Tuple[int, int]:
        pairs = agree = 0
        for (a, b) in scan.cells:
            other = (a + da, b + db)
            if other in scan.cells:
                pairs += 1
                agree += bool(scan.cells[(a, b)]) == bool(scan.cells[other])
        return pairs, agree

    pa, aa = periodic(PERIOD_A, 0)
    pb, ab = periodic(0, PERIOD_B)
    return PatternReport(nonempty, conforming, pa, aa, pb, ab, exceptions)
