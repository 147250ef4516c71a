"""Upper-bound side: bound formulas, water-pool instances and brute-force oracles."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import (INF, GeometryError, Rect, RectilinearRegion, Square, Staircase, fmt,
                       is_inf, is_r_fat, q)
from .measure import PiecewiseUniformMeasure, eval_region

DEFAULT_EPSILON = Fraction(1, 64)
GRID_LIMIT = 12
MAX_POOLS = 8


class SizeLimit(ValueError):
    """Input too large for an exhaustive oracle."""


# ---------------------------------------------------------------------------
# bound formulas

@dataclass(frozen=True)
class PropBound:
    """Guaranteed (lower) and impossible-to-beat (upper) proportionality.

    ``lower`` is None where no division procedure is known, or where the
    procedure lies outside this package (``upper_only``).
    """

    cake: str
    family: str
    n: int
    lower: Optional[Fraction]
    upper: Fraction
    upper_only: bool = False

    def to_json(self) -> dict:
        return {"cake": self.cake, "family": self.family, "n": self.n,
                "lower": None if self.lower is None else fmt(self.lower),
                "upper": fmt(self.upper), "upper_only": self.upper_only}


CAKES = ("square", "rectilinear", "quarterplane", "staircase", "halfplane", "plane",
         "rectangle", "cube")
FAMILIES = ("squares", "fat", "rectangles", "cubes")


def _inv(d) -> Fraction:
    return Fraction(1, d)


def prop_bound(cake: str, family: str, n: int, k: int = None, L=None, R=None,
               d: int = None, delta: int = None) -> PropBound:
    """Bounds on the proportionality level for one cake/shape combination.

    ``k`` counts corners (staircase) or the independence number
    (rectilinear), ``L`` is the aspect of an ``L x 1`` rectangle, ``R`` the
    fatness, ``d`` and ``delta`` the cube dimension and its unbounded sides.
    """
    if n < 1:
        raise ValueError("n must be positive")

    def need(name, value, minimum=1):
        if value is None:
            raise ValueError(f"{cake}/{family} needs parameter {name}")
        if value < minimum:
            raise ValueError(f"parameter {name} must be at least {minimum}")
        return value

    def min_n(m):
        if n < m:
            raise ValueError(f"{cake}/{family} bound is stated for n >= {m}")

    row = (cake, family)
    if row == ("square", "squares"):
        min_n(2)
        return PropBound(cake, family, n, _inv(4 * n - 4), _inv(2 * n))
    if row == ("square", "fat"):
        if R is not None and q(R) != 2:
            raise ValueError("the square/fat row is for 2-fat rectangles")
        return PropBound(cake, family, n, _inv(4 * n - 5), _inv(2 * n - 1))
    if row == ("rectilinear", "fat"):
        k = need("k", k)
        return PropBound(cake, family, n, None, _inv(2 * n - 2 + k))
    if row == ("quarterplane", "squares"):
        return PropBound(cake, family, n, _inv(2 * n - 1), _inv(2 * n - 1))
    if row == ("staircase", "squares"):
        k = need("k", k)
        return PropBound(cake, family, n, _inv(2 * n - 2 + k), _inv(2 * n - 2 + k))
    if row == ("halfplane", "squares"):
        min_n(2)
        return PropBound(cake, family, n, _inv(2 * n - 2), _inv(math.ceil(Fraction(3 * n, 2)) - 1))
    if row == ("plane", "squares"):
        min_n(4)
        return PropBound(cake, family, n, _inv(2 * n - 4), _inv(n))
    if row == ("rectangle", "fat"):
        L, R = q(need("L", L)), q(need("R", R))
        if L <= 1:
            raise ValueError("the rectangle row needs L > 1")
        return PropBound(cake, family, n, _inv(4 * n - 6 + math.ceil(max(2, L) / R)),
                         _inv(2 * n - 2 + math.ceil(L / R)))
    if row == ("cube", "cubes"):
        min_n(2)
        d = need("d", d)
        delta = need("delta", delta, 0)
        if delta > d:
            raise ValueError("a d-cube has at most d unbounded sides here")
        return PropBound(cake, family, n, None,
                         _inv(d * (n - 2) + 2 ** (d - delta) + delta), upper_only=True)
    raise KeyError(f"no bound for cake {cake!r} with {family!r}")


# ---------------------------------------------------------------------------
# pool instances

@dataclass(frozen=True)
class PoolInstance:
    """Equal square pools of water in a desert cake; value is uniform on the pools."""

    pools: tuple
    cake: object
    claimed_bound: Fraction
    epsilon: Fraction
    kind: str = ""

    def __post_init__(self) -> None:
        rects = [p.to_rect() for p in self.pools]
        for i, a in enumerate(rects):
            if not _inside(self.cake, a):
                raise GeometryError(f"pool {a} leaves the cake")
            for b in rects[i + 1:]:
                if a.overlaps(b):
                    raise GeometryError("pools overlap")

    @property
    def rects(self) -> list:
        return [p.to_rect() for p in self.pools]

    def measure(self) -> PiecewiseUniformMeasure:
        """Each pool carries one unit of value."""
        return PiecewiseUniformMeasure(tuple((r, 1 / r.area) for r in self.rects))

    def to_json(self) -> dict:
        return {"kind": self.kind, "cake": _cake_json(self.cake),
                "pools": [p.to_rect().to_json() for p in self.pools],
                "claimed_bound": fmt(self.claimed_bound), "epsilon": fmt(self.epsilon),
                "measure": self.measure().to_json()}


def _cake_json(cake) -> dict:
    if isinstance(cake, Rect):
        return {"rect": cake.to_json()}
    if isinstance(cake, RectilinearRegion):
        return {"rectilinear": cake.to_json()}
    raise TypeError(type(cake).__name__)


def _inside(cake, r: Rect) -> bool:
    return cake.contains(r) if isinstance(cake, Rect) else cake.contains_rect(r)


def _arrangement(n: int, eps: Fraction) -> list:
    """2n-1 pools in the unit box, nested towards the origin.

    Level n puts pools of side eps at the corners (1, 0) and (0, 1) of the
    box and shrinks the level n-1 arrangement into ``[0, eps]^2``.
    """
    if n == 1:
        return [Square(0, 0, eps)]
    inner = [Square(p.corner_x * eps, p.corner_y * eps, p.side * eps) for p in _arrangement(n - 1, eps)]
    return inner + [Square(1 - eps, 0, eps), Square(0, 1 - eps, eps)]


def _check_eps(eps) -> Fraction:
    eps = q(eps)
    if not 0 < eps < Fraction(1, 4):
        raise ValueError("epsilon must lie in (0, 1/4)")
    return eps


def pools_quarterplane(n: int, eps=DEFAULT_EPSILON) -> PoolInstance:
    """2n-1 pools in the quadrant x, y >= 0 admitting at most n-1 two-pool squares."""
    if n < 1:
        raise ValueError("n must be positive")
    eps = _check_eps(eps)
    return PoolInstance(tuple(_arrangement(n, eps)), Rect(0, 0, INF, INF),
                        Fraction(1, 2 * n - 1), eps, "quarterplane")


def pools_square(n: int, eps=DEFAULT_EPSILON) -> PoolInstance:
    """The quadrant arrangement in the unit square plus a pool at the north-east corner."""
    if n < 2:
        raise ValueError("the square construction needs n >= 2")
    eps = _check_eps(eps)
    pools = _arrangement(n, eps) + [Square(1 - eps, 1 - eps, eps)]
    return PoolInstance(tuple(pools), Rect(0, 0, 1, 1), Fraction(1, 2 * n), eps, "square")


def _convex_corners(region: RectilinearRegion) -> list:
    """(corner, orientation) of every convex vertex; orientation points into the region."""
    xs = sorted({c for r in region.rects for c in (r.x_min, r.x_max)})
    ys = sorted({c for r in region.rects for c in (r.y_min, r.y_max)})
    h = Fraction(1, 2) * min(min(b - a for a, b in zip(xs, xs[1:])),
                             min(b - a for a, b in zip(ys, ys[1:])))
    out = []
    for x in xs:
        for y in ys:
            inside = {(sx, sy) for sx in (1, -1) for sy in (1, -1)
                      if region.contains_point(x + sx * h / 2, y + sy * h / 2)}
            if len(inside) == 1:
                out.append(((x, y), inside.pop()))
    return out


def _maximal_corner_square(region: RectilinearRegion, corner, orient) -> Rect:
    boxes = maximal_rectangles(region)
    (x, y), (sx, sy) = corner, orient
    best = Fraction(0)
    for m in boxes:
        if m.contains_point(x, y):
            wx = (m.x_max - x) if sx > 0 else (x - m.x_min)
            wy = (m.y_max - y) if sy > 0 else (y - m.y_min)
            best = max(best, min(wx, wy))
    return _oriented_box(corner, orient, best)


def _oriented_box(corner, orient, side) -> Rect:
    (x, y), (sx, sy) = corner, orient
    xs, ys = sorted((x, x + sx * side)), sorted((y, y + sy * side))
    return Rect(xs[0], ys[0], xs[1], ys[1])


def pools_rectilinear(c: RectilinearRegion, n: int, eps=DEFAULT_EPSILON,
                      independent_set: Sequence[Square] = (), corner=None) -> PoolInstance:
    """Independent pools of ``c`` with one of them traded for a quadrant arrangement.

    A convex corner whose maximal corner square meets exactly one pool is
    chosen (or ``corner`` if given); that pool is replaced by the 2n-1 pool
    arrangement squeezed into the box between the corner and the pool's far
    corner.
    """
    if n < 1:
        raise ValueError("n must be positive")
    eps = _check_eps(eps)
    pools = [p if isinstance(p, Square) else Square(*p) for p in independent_set]
    if not pools:
        raise ValueError("independent set must not be empty")
    rects = [p.to_rect() for p in pools]
    for r in rects:
        if not c.contains_rect(r):
            raise GeometryError(f"pool {r} leaves the region")
    for a, b in itertools.combinations(rects, 2):
        if _covered_together(c, a, b, "squares"):
            raise ValueError("pools are not independent: one square inside the region covers two")
    corners = _convex_corners(c)
    if corner is not None:
        corners = [(pt, o) for pt, o in corners if pt == (q(corner[0]), q(corner[1]))]
        if not corners:
            raise ValueError(f"{corner} is not a convex corner of the region")
    for pt, orient in corners:
        s = _maximal_corner_square(c, pt, orient)
        hit = [i for i, r in enumerate(rects) if r.overlaps(s)]
        if len(hit) == 1:
            break
    else:
        raise ValueError("no convex corner whose corner square meets exactly one pool")
    (x, y), (sx, sy) = pt, orient
    gone = rects[hit[0]]
    delta = max(max(abs(gone.x_min - x), abs(gone.x_max - x)),
                max(abs(gone.y_min - y), abs(gone.y_max - y)))
    nested = []
    for p in _arrangement(n, eps):
        r = _oriented_box((x + sx * p.corner_x * delta, y + sy * p.corner_y * delta), orient,
                          p.side * delta)
        nested.append(Square.from_rect(r))
    kept = [p for i, p in enumerate(pools) if i != hit[0]]
    return PoolInstance(tuple(kept + nested), c, Fraction(1, 2 * n - 2 + len(pools)), eps,
                        "rectilinear")


# ---------------------------------------------------------------------------
# grid oracles

def maximal_rectangles(region: RectilinearRegion) -> list:
    """All inclusion-maximal rectangles inside a region, with vertices on its coordinate grid."""
    xs = sorted({c for r in region.rects for c in (r.x_min, r.x_max)})
    ys = sorted({c for r in region.rects for c in (r.y_min, r.y_max)})
    cells = {}
    for i, (a, b) in enumerate(zip(xs, xs[1:])):
        for j, (c, d) in enumerate(zip(ys, ys[1:])):
            cells[i, j] = region.contains_point((a + b) / 2, (c + d) / 2)
    found = []
    nx, ny = len(xs) - 1, len(ys) - 1
    for i0 in range(nx):
        for i1 in range(i0 + 1, nx + 1):
            for j0 in range(ny):
                for j1 in range(j0 + 1, ny + 1):
                    if all(cells[i, j] for i in range(i0, i1) for j in range(j0, j1)):
                        found.append(Rect(xs[i0], ys[j0], xs[i1], ys[j1]))
    return [r for r in found if not any(o != r and o.contains(r) for o in found)]


def _check_grid(c: RectilinearRegion, res: Fraction) -> None:
    if c.is_empty:
        raise ValueError("empty region")
    if res <= 0:
        raise ValueError("resolution must be positive")
    for r in c.rects:
        for v in (r.x_min, r.y_min, r.x_max, r.y_max):
            if (v / res).denominator != 1:
                raise SizeLimit("region vertices must lie on the resolution grid")
    box = c.bbox
    if box.width > GRID_LIMIT or box.height > GRID_LIMIT:
        raise SizeLimit(f"bounding box exceeds {GRID_LIMIT} x {GRID_LIMIT}")


def _fits(m: Rect, box: Rect, family: str, R) -> bool:
    """Some family shape inside ``m`` contains ``box``."""
    if not m.contains(box):
        return False
    w, h = box.width, box.height
    if family == "squares":
        s = max(w, h)
        return s <= m.width and s <= m.height
    if family == "fat":
        w2, h2 = max(w, h / R), max(h, w / R)
        return w2 <= m.width and h2 <= m.height
    if family == "rectangles":
        return True
    raise ValueError(f"unknown shape family {family!r}")


def _covered_together(c: RectilinearRegion, a: Rect, b: Rect, family: str, R=2, boxes=None) -> bool:
    box = Rect(min(a.x_min, b.x_min), min(a.y_min, b.y_min),
               max(a.x_max, b.x_max), max(a.y_max, b.y_max))
    boxes = boxes if boxes is not None else maximal_rectangles(c)
    return any(_fits(m, box, family, q(R)) for m in boxes)


def _grid_cells(c: RectilinearRegion, res: Fraction) -> list:
    box = c.bbox
    nx, ny = int(box.width / res), int(box.height / res)
    out = []
    for i in range(nx):
        for j in range(ny):
            r = Rect(box.x_min + i * res, box.y_min + j * res,
                     box.x_min + (i + 1) * res, box.y_min + (j + 1) * res)
            if c.contains_point((r.x_min + r.x_max) / 2, (r.y_min + r.y_max) / 2):
                out.append(r)
    return out


def _max_independent_set(n: int, adj: list) -> int:
    """Exact maximum independent set size; ``adj`` holds neighbour bitmasks."""
    best = 0

    def greedy_colouring_bound(cand: int) -> int:
        # number of cliques in a greedy clique cover bounds the independent set
        count = 0
        while cand:
            v = (cand & -cand).bit_length() - 1
            clique = 1 << v
            rest = cand & adj[v] & ~clique
            while rest:
                u = (rest & -rest).bit_length() - 1
                clique |= 1 << u
                rest &= adj[u]
            cand &= ~clique
            count += 1
        return count

    def search(cand: int, size: int) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + greedy_colouring_bound(cand) <= best:
            return
        # branch on the vertex with most candidate neighbours
        v = max((u for u in range(n) if cand >> u & 1), key=lambda u: bin(adj[u] & cand).count("1"))
        search(cand & ~adj[v] & ~(1 << v), size + 1)
        search(cand & ~(1 << v), size)

    search((1 << n) - 1, 0)
    return best


def independence_number_bruteforce(c: RectilinearRegion, family: str = "squares", R=2,
                                   resolution=Fraction(1, 2)) -> int:
    """Largest set of grid cells no two of which one family shape inside ``c`` covers.

    Cells have side ``resolution``; the result is a lower bound on the
    independence number that is exact on grid-friendly regions.
    """
    res = q(resolution)
    _check_grid(c, res)
    cells = _grid_cells(c, res)
    boxes = maximal_rectangles(c)
    adj = [0] * len(cells)
    for i, j in itertools.combinations(range(len(cells)), 2):
        if _covered_together(c, cells[i], cells[j], family, R, boxes):
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return _max_independent_set(len(cells), adj)


def _grid_shapes(c: RectilinearRegion, family: str, R, res: Fraction) -> list:
    """Maximal family shapes inside ``c`` with corners on the grid."""
    box = c.bbox
    nx, ny = int(box.width / res), int(box.height / res)
    boxes = maximal_rectangles(c)
    shapes = []
    for i0 in range(nx):
        for j0 in range(ny):
            for i1 in range(i0 + 1, nx + 1):
                for j1 in range(j0 + 1, ny + 1):
                    r = Rect(box.x_min + i0 * res, box.y_min + j0 * res,
                             box.x_min + i1 * res, box.y_min + j1 * res)
                    if family == "squares" and r.width != r.height:
                        continue
                    if family == "fat" and not is_r_fat(r, R):
                        continue
                    if any(m.contains(r) for m in boxes):
                        shapes.append(r)
    return [r for r in shapes if not any(o != r and o.contains(r) for o in shapes)]


def cover_number_bruteforce(c: RectilinearRegion, family: str = "squares", R=2,
                            resolution=Fraction(1, 2)) -> int:
    """Fewest grid-aligned family shapes inside ``c`` whose union is ``c``."""
    res = q(resolution)
    _check_grid(c, res)
    cells = _grid_cells(c, res)
    shapes = _grid_shapes(c, family, q(R), res)
    masks = []
    for s in shapes:
        m = 0
        for i, cell in enumerate(cells):
            if s.contains(cell):
                m |= 1 << i
        masks.append(m)
    full = (1 << len(cells)) - 1
    if any(not any(m >> i & 1 for m in masks) for i in range(len(cells))):
        raise GeometryError("grid shapes cannot cover the region")
    by_cell = [[m for m in masks if m >> i & 1] for i in range(len(cells))]
    biggest = max(bin(m).count("1") for m in masks)
    best = len(cells)

    def search(covered: int, used: int) -> None:
        nonlocal best
        if covered == full:
            best = min(best, used)
            return
        left = bin(full & ~covered).count("1")
        if used + -(-left // biggest) >= best:
            return
        # branch on the uncovered cell with the fewest options
        free = full & ~covered
        i = min((i for i in range(len(cells)) if free >> i & 1), key=lambda i: len(by_cell[i]))
        for m in sorted(by_cell[i], key=lambda m: -bin(m & free).count("1")):
            search(covered | m, used + 1)

    search(0, 0)
    return best


# ---------------------------------------------------------------------------
# two-pool squares

@dataclass(frozen=True)
class _PairSquare:
    """Smallest squares touching two pools: side ``l``, corner ranges in x and y."""

    pair: tuple
    l: Fraction
    xr: tuple
    yr: tuple


def _pair_square(i: int, j: int, a: Rect, b: Rect) -> _PairSquare:
    gx = max(Fraction(0), b.x_min - a.x_max, a.x_min - b.x_max)
    gy = max(Fraction(0), b.y_min - a.y_max, a.y_min - b.y_max)
    l = max(gx, gy)
    if l == 0:
        raise GeometryError("touching pools admit arbitrarily small two-pool squares")
    xr = (max(a.x_min, b.x_min) - l, min(a.x_max, b.x_max))
    yr = (max(a.y_min, b.y_min) - l, min(a.y_max, b.y_max))
    return _PairSquare((i, j), l, xr, yr)


def _feasible(nodes: int, edges: list) -> bool:
    """Difference constraints v[b] - v[a] <= w as edges (a, b, w); node 0 is the origin."""
    dist = [Fraction(0)] * nodes
    for _ in range(nodes):
        changed = False
        for a, b, w in edges:
            if dist[a] + w < dist[b]:
                dist[b] = dist[a] + w
                changed = True
        if not changed:
            return True
    return False


def _bounds_edges(cands: list, boxes: list, axis: int) -> list:
    edges = []
    for k, (cand, box) in enumerate(zip(cands, boxes), start=1):
        lo, hi = cand.xr if axis == 0 else cand.yr
        blo, bhi = (box.x_min, box.x_max) if axis == 0 else (box.y_min, box.y_max)
        lo = max(lo, blo) if not is_inf(blo) else lo
        if not is_inf(bhi):
            hi = min(hi, bhi - cand.l)
        if lo > hi:
            return None
        edges.append((0, k, hi))
        edges.append((k, 0, -lo))
    return edges


def _placeable(cands: list, boxes: list) -> bool:
    """Can the squares be placed pairwise interior-disjoint, each in its container box?"""
    base = [_bounds_edges(cands, boxes, axis) for axis in (0, 1)]
    if base[0] is None or base[1] is None:
        return False
    pairs = list(itertools.combinations(range(1, len(cands) + 1), 2))
    n = len(cands) + 1

    def go(p: int, ex: list, ey: list) -> bool:
        if p == len(pairs):
            return True
        i, j = pairs[p]
        li, lj = cands[i - 1].l, cands[j - 1].l
        # i left of j, j left of i, i below j, j below i
        for axis, edge in ((0, (j, i, -li)), (0, (i, j, -lj)), (1, (j, i, -li)), (1, (i, j, -lj))):
            nx, ny = (ex + [edge], ey) if axis == 0 else (ex, ey + [edge])
            if _feasible(n, nx if axis == 0 else ny) and go(p + 1, nx, ny):
                return True
        return False

    return go(0, base[0], base[1])


def max_disjoint_two_pool_squares(instance: PoolInstance, resolution=None) -> int:
    """Most pairwise-disjoint squares inside the cake that each meet two or more pools.

    Every such square contains a smallest square touching two of its pools,
    so it suffices to place those: one candidate family per pool pair, with
    the placement decided exactly as a system of difference constraints.
    ``resolution`` is accepted for interface compatibility; the search is exact.
    """
    rects = instance.rects
    if len(rects) > MAX_POOLS:
        raise SizeLimit(f"more than {MAX_POOLS} pools")
    cake = instance.cake
    containers = [cake] if isinstance(cake, Rect) else maximal_rectangles(cake)
    cands = []
    for i, j in itertools.combinations(range(len(rects)), 2):
        ps = _pair_square(i, j, rects[i], rects[j])
        homes = [m for m in containers if _placeable([ps], [m])]
        if homes:
            cands.append((ps, homes))
    if not cands:
        return 0
    compatible = {}
    for a, b in itertools.combinations_with_replacement(range(len(cands)), 2):
        ok = any(_placeable([cands[a][0], cands[b][0]], [ma, mb])
                 for ma in cands[a][1] for mb in cands[b][1])
        compatible[a, b] = compatible[b, a] = ok
    best = 1
    k = 2
    while True:
        found = False
        for combo in itertools.combinations_with_replacement(range(len(cands)), k):
            if not all(compatible[a, b] for a, b in itertools.combinations(combo, 2)):
                continue
            squares = [cands[a][0] for a in combo]
            for homes in itertools.product(*(cands[a][1] for a in combo)):
                if _placeable(squares, list(homes)):
                    found = True
                    break
            if found:
                break
        if not found:
            return best
        best = k
        k += 1


# ---------------------------------------------------------------------------
# allocation checks

def _shape_ok(piece: Rect, family: str, R=2) -> bool:
    if family == "squares":
        return piece.is_square
    if family == "fat":
        return piece.is_finite and is_r_fat(piece, R)
    if family == "rectangles":
        return True
    raise ValueError(f"unknown shape family {family!r}")


def _inside_cake(piece: Rect, cake) -> bool:
    if isinstance(cake, Rect):
        return cake.contains(piece)
    return cake.contains_rect(piece)


@dataclass
class VerificationReport:
    proportions: list
    bound: Fraction
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        finite = [p for p in self.proportions if p is not None]
        return {"pass": self.passed, "bound": fmt(self.bound),
                "proportions": [None if p is None else fmt(p) for p in self.proportions],
                "proportions_decimal": [None if p is None else float(p) for p in self.proportions],
                "min_proportion": fmt(min(finite)) if finite else None,
                "failures": self.failures}


def verify_allocation(pieces: Sequence, measures: Sequence[PiecewiseUniformMeasure], bound,
                      family: str = "squares", cake=None, container=None, R=2,
                      players: Optional[Sequence[int]] = None) -> VerificationReport:
    """Check disjointness, containment, shape and that each player reaches ``bound``.

    ``pieces`` may be an :class:`Allocation`; then cake, container and family
    default to its own.  ``players`` restricts the value check (e.g. to the
    honest players); structure is always checked for every piece.
    """
    if hasattr(pieces, "pieces"):
        alloc = pieces
        cake = alloc.cake if cake is None else cake
        container = alloc.container if container is None else container
        pieces = alloc.pieces
    container = cake if container is None else container
    bound = q(bound)
    failures = []
    live = [(i, p) for i, p in enumerate(pieces) if p is not None]
    for (i, a), (j, b) in itertools.combinations(live, 2):
        if a.overlaps(b):
            failures.append(f"disjointness: pieces {i} and {j} overlap")
    for i, p in live:
        if container is not None and not _inside_cake(p, container):
            failures.append(f"containment: piece {i} leaves the cake")
        if not _shape_ok(p, family, R):
            failures.append(f"shape: piece {i} is not in family {family}")
    props = []
    check = set(range(len(measures))) if players is None else set(players)
    for i, v in enumerate(measures):
        total = eval_region(v, cake)
        got = eval_region(v, pieces[i]) if i < len(pieces) else Fraction(0)
        if total == 0:
            props.append(None)
            continue
        props.append(got / total)
        if i in check and got < bound * total:
            failures.append(f"proportionality: player {i} gets {fmt(got / total)} < {fmt(bound)}")
    return VerificationReport(props, bound, failures)
