"""Exact axis-parallel geometry over the rationals.

Coordinates are :class:`fractions.Fraction`.  Unbounded sides use the
float infinities ``INF`` / ``NEG_INF`` purely as markers; no finite float
ever enters a computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

INF = math.inf
NEG_INF = -math.inf

Coordinate = Fraction
ExtCoordinate = Union[Fraction, float]


class GeometryError(ValueError):
    """Raised for malformed shapes or invalid geometric parameters."""


def q(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def ext(value) -> ExtCoordinate:
    """Like :func:`q` but also admits the two infinities."""
    if isinstance(value, float):
        if math.isinf(value):
            return value
        raise TypeError(f"finite floats are not allowed: {value!r}")
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "-inf"):
        return NEG_INF if value.strip().startswith("-") else INF
    return q(value)


def is_inf(value) -> bool:
    return isinstance(value, float) and math.isinf(value)


def fmt(value) -> str:
    """Serialize an extended rational as ``"p/q"``, ``"p"``, ``"inf"`` or ``"-inf"``."""
    if is_inf(value):
        return "inf" if value > 0 else "-inf"
    return str(q(value))


@dataclass(frozen=True)
class Rect:
    """Closed axis-parallel rectangle; any side may be unbounded."""

    x_min: ExtCoordinate
    y_min: ExtCoordinate
    x_max: ExtCoordinate
    y_max: ExtCoordinate

    def __post_init__(self) -> None:
        for name in ("x_min", "y_min", "x_max", "y_max"):
            object.__setattr__(self, name, ext(getattr(self, name)))
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise GeometryError(f"rectangle has no area: {self}")
        if self.x_min == INF or self.y_min == INF or self.x_max == NEG_INF or self.y_max == NEG_INF:
            raise GeometryError(f"rectangle is empty: {self}")

    @property
    def width(self) -> ExtCoordinate:
        return self.x_max - self.x_min

    @property
    def height(self) -> ExtCoordinate:
        return self.y_max - self.y_min

    @property
    def is_finite(self) -> bool:
        return not any(is_inf(c) for c in (self.x_min, self.y_min, self.x_max, self.y_max))

    @property
    def area(self) -> ExtCoordinate:
        return self.width * self.height if self.is_finite else INF

    @property
    def is_square(self) -> bool:
        """Finite with equal sides, or unbounded in both directions."""
        if self.is_finite:
            return self.width == self.height
        return is_inf(self.width) and is_inf(self.height)

    def intersection(self, other: "Rect") -> "Rect | None":
        """Positive-area intersection, or None."""
        x0, y0 = max(self.x_min, other.x_min), max(self.y_min, other.y_min)
        x1, y1 = min(self.x_max, other.x_max), min(self.y_max, other.y_max)
        if x0 < x1 and y0 < y1:
            return Rect(x0, y0, x1, y1)
        return None

    def overlaps(self, other: "Rect") -> bool:
        """True iff the interiors intersect."""
        return (max(self.x_min, other.x_min) < min(self.x_max, other.x_max)
                and max(self.y_min, other.y_min) < min(self.y_max, other.y_max))

    def contains(self, other: "Rect") -> bool:
        return (self.x_min <= other.x_min and self.y_min <= other.y_min
                and other.x_max <= self.x_max and other.y_max <= self.y_max)

    def contains_point(self, x, y) -> bool:
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max

    def to_json(self) -> dict:
        return {"x0": fmt(self.x_min), "y0": fmt(self.y_min),
                "x1": fmt(self.x_max), "y1": fmt(self.y_max)}

    @classmethod
    def from_json(cls, d: dict) -> "Rect":
        return cls(ext(d["x0"]), ext(d["y0"]), ext(d["x1"]), ext(d["y1"]))


@dataclass(frozen=True)
class Square:
    """Square given by its south-west corner and side (side may be infinite)."""

    corner_x: Coordinate
    corner_y: Coordinate
    side: ExtCoordinate

    def __post_init__(self) -> None:
        object.__setattr__(self, "corner_x", q(self.corner_x))
        object.__setattr__(self, "corner_y", q(self.corner_y))
        object.__setattr__(self, "side", ext(self.side))
        if not self.side > 0:
            raise GeometryError("square side must be positive")

    def to_rect(self) -> Rect:
        return Rect(self.corner_x, self.corner_y,
                    self.corner_x + self.side, self.corner_y + self.side)

    @classmethod
    def from_rect(cls, r: Rect) -> "Square":
        if not (r.is_finite and r.is_square):
            raise GeometryError(f"not a finite square: {r}")
        return cls(r.x_min, r.y_min, r.width)


# ---------------------------------------------------------------------------
# rectilinear regions

def _merge_intervals(ivs: Iterable[tuple]) -> list:
    out: list = []
    for a, b in sorted(ivs):
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return out


def _subtract_intervals(ivs: list, cuts: list) -> list:
    out = []
    for a, b in ivs:
        pieces = [(a, b)]
        for c, d in cuts:
            nxt = []
            for s, e in pieces:
                if d <= s or c >= e:
                    nxt.append((s, e))
                    continue
                if s < c:
                    nxt.append((s, c))
                if d < e:
                    nxt.append((d, e))
            pieces = nxt
        out.extend(pieces)
    return out


def _slab_intervals(rects: Sequence[Rect], a, b) -> list:
    return _merge_intervals((r.y_min, r.y_max) for r in rects
                            if r.x_min <= a and r.x_max >= b)


def _assemble(xs: list, slab_ivs: list) -> tuple:
    """Merge equal consecutive slabs and emit rectangles sorted by x then y."""
    rects = []
    i = 0
    while i < len(slab_ivs):
        ivs = slab_ivs[i]
        j = i
        while j + 1 < len(slab_ivs) and slab_ivs[j + 1] == ivs:
            j += 1
        for y0, y1 in ivs:
            rects.append(Rect(xs[i], y0, xs[j + 1], y1))
        i = j + 1
    return tuple(sorted(rects, key=lambda r: (r.x_min, r.y_min)))


@dataclass(frozen=True)
class RectilinearRegion:
    """Finite union of rectangles, stored in canonical vertical-slab form.

    The constructor accepts any finite rectangles (overlap allowed) and
    replaces them by the canonical decomposition of their union, so two
    regions compare equal exactly when they are the same point set.
    """

    rects: tuple

    def __post_init__(self) -> None:
        rects = tuple(self.rects)
        for r in rects:
            if not isinstance(r, Rect) or not r.is_finite:
                raise GeometryError("region members must be finite Rects")
        xs = sorted({c for r in rects for c in (r.x_min, r.x_max)})
        slabs = [_slab_intervals(rects, a, b) for a, b in zip(xs, xs[1:])]
        object.__setattr__(self, "rects", _assemble(xs, slabs))

    @property
    def is_empty(self) -> bool:
        return not self.rects

    @property
    def area(self) -> Fraction:
        return sum((r.area for r in self.rects), Fraction(0))

    @property
    def bbox(self) -> Rect:
        if self.is_empty:
            raise GeometryError("empty region has no bounding box")
        return Rect(min(r.x_min for r in self.rects), min(r.y_min for r in self.rects),
                    max(r.x_max for r in self.rects), max(r.y_max for r in self.rects))

    def contains_point(self, x, y) -> bool:
        return any(r.contains_point(x, y) for r in self.rects)

    def contains_rect(self, r: Rect) -> bool:
        if not r.is_finite:
            return False
        return region_subtract_region(RectilinearRegion((r,)), self).is_empty

    def intersect_rect(self, p: Rect) -> "RectilinearRegion":
        return RectilinearRegion(tuple(x for x in (r.intersection(p) for r in self.rects) if x))

    def to_json(self) -> list:
        return [r.to_json() for r in self.rects]


def region_subtract_region(c: RectilinearRegion, p: RectilinearRegion) -> RectilinearRegion:
    xs = sorted({v for r in c.rects + p.rects for v in (r.x_min, r.x_max)})
    slabs = []
    for a, b in zip(xs, xs[1:]):
        keep = _slab_intervals(c.rects, a, b)
        slabs.append(_merge_intervals(_subtract_intervals(keep, _slab_intervals(p.rects, a, b))))
    return RectilinearRegion(_assemble(xs, slabs))


def region_subtract(c: RectilinearRegion, p: Rect) -> RectilinearRegion:
    """Exact set difference ``c \\ p`` in canonical form."""
    if c.is_empty:
        return c
    clipped = p.intersection(c.bbox)
    if clipped is None:
        return c
    return region_subtract_region(c, RectilinearRegion((clipped,)))


def region_from_polygon(vertices: Sequence[tuple]) -> RectilinearRegion:
    """Region enclosed by a simple rectilinear polygon given as a vertex cycle."""
    pts = [(q(x), q(y)) for x, y in vertices]
    edges = list(zip(pts, pts[1:] + pts[:1]))
    for (x0, y0), (x1, y1) in edges:
        if x0 != x1 and y0 != y1:
            raise GeometryError("polygon edges must be axis-parallel")
    horizontal = [(min(x0, x1), max(x0, x1), y0) for (x0, y0), (x1, y1) in edges if y0 == y1 and x0 != x1]
    xs = sorted({x for x, _ in pts})
    rects = []
    for a, b in zip(xs, xs[1:]):
        ys = sorted(y for lo, hi, y in horizontal if lo <= a and hi >= b)
        if len(ys) % 2:
            raise GeometryError("polygon is not closed or not simple")
        rects.extend(Rect(a, ys[i], b, ys[i + 1]) for i in range(0, len(ys), 2))
    return RectilinearRegion(tuple(rects))


# ---------------------------------------------------------------------------
# staircases

@dataclass(frozen=True)
class Staircase:
    """Union of the north-east quadrants anchored at the given inner corners.

    Corners run with x strictly decreasing and y strictly increasing.  The
    zero-corner staircase is the empty sentinel left after an infinite
    square is carved out.
    """

    corners: tuple

    def __post_init__(self) -> None:
        cs = tuple((q(x), q(y)) for x, y in self.corners)
        for (x0, y0), (x1, y1) in zip(cs, cs[1:]):
            if not (x1 < x0 and y1 > y0):
                raise GeometryError(f"staircase corners out of order: {cs}")
        object.__setattr__(self, "corners", cs)

    @property
    def k(self) -> int:
        return len(self.corners)

    @property
    def is_empty(self) -> bool:
        return not self.corners

    def contains_point(self, x, y) -> bool:
        return any(x >= cx and y >= cy for cx, cy in self.corners)

    def contains_rect(self, r: Rect) -> bool:
        if is_inf(r.x_min) or is_inf(r.y_min):
            return False
        return self.contains_point(r.x_min, r.y_min)

    def slabs(self) -> list:
        """Disjoint decomposition into unbounded rectangles, one per corner."""
        out = []
        east = INF
        for cx, cy in self.corners:
            out.append(Rect(cx, cy, east, INF))
            east = cx
        return out

    def quadrant(self, j: int) -> Rect:
        cx, cy = self.corners[j]
        return Rect(cx, cy, INF, INF)

    def to_json(self) -> list:
        return [[fmt(x), fmt(y)] for x, y in self.corners]


def staircase_remove_shadow(s: Staircase, win: Square, j: int) -> Staircase:
    """Remove the box spanned by a winning corner square and its shadow.

    The removed set is everything south-west of the square's north-east
    corner.  The remainder is again a union of quadrants; its inner corners
    are the Pareto-minimal corners of the clipped quadrants.
    """
    if not 0 <= j < s.k:
        raise GeometryError(f"corner index {j} out of range")
    if (win.corner_x, win.corner_y) != s.corners[j]:
        raise GeometryError("winning square is not anchored at the given corner")
    if is_inf(win.side):
        return Staircase(())
    X = win.corner_x + win.side
    Y = win.corner_y + win.side
    cand = set()
    for cx, cy in s.corners:
        if cx > X or cy > Y:
            cand.add((cx, cy))
        else:
            cand.add((X, cy))
            cand.add((cx, Y))
    minimal = [p for p in cand
               if not any(o != p and o[0] <= p[0] and o[1] <= p[1] for o in cand)]
    return Staircase(tuple(sorted(minimal, key=lambda p: -p[0])))


# ---------------------------------------------------------------------------
# shape predicates and covers

def is_r_fat(r: Rect, R) -> bool:
    """True iff the longer side is at most ``R`` times the shorter side."""
    R = q(R)
    if R < 1:
        raise GeometryError("fatness parameter R must be at least 1")
    if not r.is_finite:
        raise GeometryError("fatness is defined for bounded rectangles only")
    lo, hi = sorted((r.width, r.height))
    return hi <= R * lo


def l_shape_cover(region: RectilinearRegion) -> list:
    """Three maximal squares whose union is an L-shape.

    The region must be a square minus one of its corner squares, with the
    removed square at most half the side (otherwise three squares do not
    suffice).
    """
    if region.is_empty:
        raise GeometryError("empty region is not an L-shape")
    box = region.bbox
    S = box.width
    if box.height != S:
        raise GeometryError("L-shape must have a square bounding box")
    missing = S * S - region.area
    if missing <= 0:
        raise GeometryError("region is a full square, not an L-shape")
    s = Fraction(math.isqrt(missing.numerator), math.isqrt(missing.denominator))
    if s * s != missing or s >= S:
        raise GeometryError("region is not a square minus a corner square")
    x0, y0, x1, y1 = box.x_min, box.y_min, box.x_max, box.y_max
    corners = {
        "sw": Rect(x0, y0, x0 + s, y0 + s), "se": Rect(x1 - s, y0, x1, y0 + s),
        "nw": Rect(x0, y1 - s, x0 + s, y1), "ne": Rect(x1 - s, y1 - s, x1, y1),
    }
    full = RectilinearRegion((box,))
    for name, hole in corners.items():
        if region_subtract(full, hole) == region:
            break
    else:
        raise GeometryError("region is not a square minus a corner square")
    if 2 * s > S:
        raise GeometryError("corner square exceeds half the side; three squares cannot cover")
    t = S - s
    anchors = {"sw": (x0, y0), "se": (x1 - t, y0), "nw": (x0, y1 - t), "ne": (x1 - t, y1 - t)}
    return [Square(*anchors[c], t) for c in ("sw", "se", "nw", "ne") if c != name]


Cake = Union[RectilinearRegion, Staircase, Rect]


def _piece_in_cake(p: Rect, cake) -> bool:
    if isinstance(cake, Rect):
        return cake.contains(p)
    return cake.contains_rect(p)


def disjoint_and_contained(pieces: Sequence, cake) -> bool:
    """True iff the pieces are pairwise interior-disjoint and inside the cake.

    ``None`` entries (players left without a piece) are ignored.
    """
    ps = [p for p in pieces if p is not None]
    for i, a in enumerate(ps):
        if not _piece_in_cake(a, cake):
            return False
        for b in ps[i + 1:]:
            if a.overlaps(b):
                return False
    return True


# ---------------------------------------------------------------------------
# similarity frames

_SYMMETRIES = tuple((a, b, c, d) for a, b, c, d in
                    ((1, 0, 0, 1), (-1, 0, 0, 1), (1, 0, 0, -1), (-1, 0, 0, -1),
                     (0, 1, 1, 0), (0, -1, 1, 0), (0, 1, -1, 0), (0, -1, -1, 0)))


def _affine(o, s, a, b, u, v):
    # o + s * (a*u + b*v) where exactly one of a, b is nonzero
    coef, t = (a, u) if a else (b, v)
    if is_inf(t):
        return coef * t
    return o + s * coef * t


@dataclass(frozen=True)
class Frame:
    """Map ``p -> origin + scale * M p`` from a canonical frame to the world.

    ``M`` is one of the eight axis symmetries, stored row-major.
    """

    ox: Fraction = Fraction(0)
    oy: Fraction = Fraction(0)
    scale: Fraction = Fraction(1)
    m: tuple = (1, 0, 0, 1)

    def __post_init__(self) -> None:
        if self.m not in _SYMMETRIES:
            raise GeometryError(f"not an axis symmetry: {self.m}")
        object.__setattr__(self, "ox", q(self.ox))
        object.__setattr__(self, "oy", q(self.oy))
        object.__setattr__(self, "scale", q(self.scale))
        if self.scale <= 0:
            raise GeometryError("frame scale must be positive")

    def point(self, x, y) -> tuple:
        a, b, c, d = self.m
        return (_affine(self.ox, self.scale, a, b, x, y),
                _affine(self.oy, self.scale, c, d, x, y))

    def rect(self, r: Rect) -> Rect:
        x0, y0 = self.point(r.x_min, r.y_min)
        x1, y1 = self.point(r.x_max, r.y_max)
        return Rect(min(x0, x1), min(y0, y1), max(x0, x1), max(y0, y1))

    def direction(self, dx: int, dy: int) -> tuple:
        a, b, c, d = self.m
        return (a * dx + b * dy, c * dx + d * dy)

    def line(self, axis: str, value) -> tuple:
        """World image of the canonical line ``axis = value``: (world axis, coordinate)."""
        a, b, c, d = self.m
        if axis == "x":
            return ("x", self.ox + self.scale * a * value) if a else ("y", self.oy + self.scale * c * value)
        return ("x", self.ox + self.scale * b * value) if b else ("y", self.oy + self.scale * d * value)

    def unline(self, axis: str, world_value) -> Fraction:
        """Inverse of :meth:`line` for the canonical ``axis``."""
        a, b, c, d = self.m
        if axis == "x":
            sign, o = (a, self.ox) if a else (c, self.oy)
        else:
            sign, o = (b, self.ox) if b else (d, self.oy)
        return (world_value - o) / (self.scale * sign)

    def compose(self, inner: "Frame") -> "Frame":
        """Frame equal to ``self`` applied after ``inner``."""
        a, b, c, d = self.m
        e, f, g, h = inner.m
        ox, oy = self.point(inner.ox, inner.oy)
        return Frame(ox, oy, self.scale * inner.scale,
                     (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))


def canonical_frame(r: Rect) -> tuple:
    """Frame mapping ``[0, L] x [0, 1]`` (``L >= 1``) onto the finite rect ``r``."""
    if not r.is_finite:
        raise GeometryError("canonical frames need a bounded rectangle")
    if r.width >= r.height:
        return Frame(r.x_min, r.y_min, r.height, (1, 0, 0, 1)), r.width / r.height
    return Frame(r.x_min, r.y_min, r.width, (0, 1, 1, 0)), r.height / r.width


def reflect_x(L) -> Frame:
    """Canonical self-map ``x -> L - x``."""
    return Frame(q(L), 0, 1, (-1, 0, 0, 1))


def reflect_y(H=1) -> Frame:
    """Canonical self-map ``y -> H - y``."""
    return Frame(0, q(H), 1, (1, 0, 0, -1))
