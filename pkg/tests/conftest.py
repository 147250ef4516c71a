import random
from fractions import Fraction

import pytest

from geocake.geometry import Rect, Staircase
from geocake.measure import PiecewiseUniformMeasure, eval_region


def random_measure(rng: random.Random, box: Rect, cells: int = 3, grid: int = 8) -> PiecewiseUniformMeasure:
    """Up to ``cells`` disjoint grid-aligned cells inside ``box`` with integer densities."""
    out = []
    for _ in range(50):
        if len(out) == cells:
            break
        xs = sorted(rng.sample(range(grid + 1), 2))
        ys = sorted(rng.sample(range(grid + 1), 2))
        w, h = box.width, box.height
        r = Rect(box.x_min + w * Fraction(xs[0], grid), box.y_min + h * Fraction(ys[0], grid),
                 box.x_min + w * Fraction(xs[1], grid), box.y_min + h * Fraction(ys[1], grid))
        if any(r.overlaps(o) for o, _ in out):
            continue
        out.append((r, Fraction(rng.randint(1, 9))))
    return PiecewiseUniformMeasure(tuple(out))


def clip_measure(m: PiecewiseUniformMeasure, parts) -> PiecewiseUniformMeasure:
    cells = []
    for r, d in m.cells:
        for part in parts:
            x = r.intersection(part)
            if x is not None and x.width > 0 and x.height > 0:
                cells.append((x, d))
    return PiecewiseUniformMeasure(tuple(cells))


def random_staircase(rng: random.Random, k: int) -> Staircase:
    xs = sorted(rng.sample(range(8), k), reverse=True)
    ys = sorted(rng.sample(range(8), k))
    return Staircase(tuple((Fraction(x, 2), Fraction(y, 2)) for x, y in zip(xs, ys)))


def staircase_measure(rng: random.Random, s: Staircase) -> PiecewiseUniformMeasure:
    while True:
        m = clip_measure(random_measure(rng, Rect(0, 0, 6, 6)), s.slabs())
        if m.cells:
            return m


def shortfalls(alloc, measures, bound, cake, players=None) -> list:
    """Players whose piece is worth less than ``bound`` of their value of ``cake``."""
    bad = []
    for i, m in enumerate(measures):
        if players is not None and i not in players:
            continue
        total = eval_region(m, cake)
        got = eval_region(m, alloc.pieces[i])
        if got < bound * total:
            bad.append((i, got / total))
    return bad


def overlapping(pieces) -> list:
    live = [(i, p) for i, p in enumerate(pieces) if p is not None]
    return [(i, j) for a, (i, p) in enumerate(live) for j, r in live[a + 1:] if p.overlaps(r)]


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240601)
