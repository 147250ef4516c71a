"""Piecewise-uniform value measures and exact mark solvers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import (INF, NEG_INF, GeometryError, Rect, RectilinearRegion, Square,
                       Staircase, ext, fmt, is_inf, q)

# value overshoot allowed when a corner-square side has no rational solution
PRECISION = Fraction(1, 2 ** 64)


class TargetExceedsValue(ValueError):
    """The requested mark value is larger than the value on offer."""


class InsufficientValue(ValueError):
    """No corner square of the requested value exists."""


@dataclass(frozen=True)
class PiecewiseUniformMeasure:
    """Finitely many interior-disjoint bounded cells, each with constant density."""

    cells: tuple

    def __post_init__(self) -> None:
        cells = tuple((r, q(d)) for r, d in self.cells)
        for i, (r, d) in enumerate(cells):
            if not r.is_finite:
                raise GeometryError("measure cells must be bounded")
            if d < 0:
                raise ValueError("densities must be non-negative")
            for s, _ in cells[i + 1:]:
                if r.overlaps(s):
                    raise GeometryError("measure cells overlap")
        object.__setattr__(self, "cells", cells)

    @property
    def total(self) -> Fraction:
        return sum((d * r.area for r, d in self.cells), Fraction(0))

    def support_bbox(self) -> Rect | None:
        live = [r for r, d in self.cells if d > 0]
        if not live:
            return None
        return Rect(min(r.x_min for r in live), min(r.y_min for r in live),
                    max(r.x_max for r in live), max(r.y_max for r in live))

    def to_json(self) -> list:
        return [dict(r.to_json(), density=fmt(d)) for r, d in self.cells]

    @classmethod
    def from_json(cls, cells: list) -> "PiecewiseUniformMeasure":
        return cls(tuple((Rect(q(c["x0"]), q(c["y0"]), q(c["x1"]), q(c["y1"])), q(c["density"]))
                         for c in cells))

    @classmethod
    def uniform(cls, r: Rect, total=None) -> "PiecewiseUniformMeasure":
        d = Fraction(1) if total is None else q(total) / r.area
        return cls(((r, d),))


def _rect_value(v: PiecewiseUniformMeasure, r: Rect) -> Fraction:
    acc = Fraction(0)
    for cell, d in v.cells:
        if d:
            x = cell.intersection(r)
            if x is not None:
                acc += d * x.area
    return acc


def eval_region(v: PiecewiseUniformMeasure, region) -> Fraction:
    """Exact value of a rectangle, region, staircase or list of disjoint rectangles."""
    if region is None:
        return Fraction(0)
    if isinstance(region, Rect):
        return _rect_value(v, region)
    if isinstance(region, RectilinearRegion):
        return sum((_rect_value(v, r) for r in region.rects), Fraction(0))
    if isinstance(region, Staircase):
        return sum((_rect_value(v, r) for r in region.slabs()), Fraction(0))
    if isinstance(region, (list, tuple)):
        return sum((eval_region(v, r) for r in region), Fraction(0))
    raise TypeError(f"cannot evaluate {type(region).__name__}")


def scale(v: PiecewiseUniformMeasure, factor) -> PiecewiseUniformMeasure:
    factor = q(factor)
    if factor <= 0:
        raise ValueError("scale factor must be positive")
    return PiecewiseUniformMeasure(tuple((r, d * factor) for r, d in v.cells))


# ---------------------------------------------------------------------------
# vertical / horizontal marks

def _profile(v, extent: Rect, axis: str) -> list:
    """Pieces (a, b, weight) of the value density projected onto ``axis``."""
    out = []
    for cell, d in v.cells:
        if not d:
            continue
        x = cell.intersection(extent)
        if x is None:
            continue
        if axis == "x":
            out.append((x.x_min, x.x_max, d * x.height))
        else:
            out.append((x.y_min, x.y_max, d * x.width))
    return out


def _solve_low(pieces: list, lo, target: Fraction):
    """Smallest c with value of (-inf, c] equal to target; ``lo`` is the extent start."""
    if target == 0:
        return lo
    pts = sorted({p for a, b, _ in pieces for p in (a, b)})

    def F(c):
        return sum((w * (min(c, b) - a) for a, b, w in pieces if c > a), Fraction(0))

    prev, fprev = None, Fraction(0)
    for p in pts:
        fp = F(p)
        if fp >= target:
            slope = sum((w for a, b, w in pieces if a <= prev and b >= p), Fraction(0))
            return prev + (target - fprev) / slope
        prev, fprev = p, fp
    raise TargetExceedsValue(f"target {target} exceeds available value {fprev}")


def mark_vertical(v: PiecewiseUniformMeasure, extent: Rect, target, direction: str):
    """Cut coordinate at which the part of ``extent`` on ``direction``'s side is worth ``target``.

    ``direction`` names the measured side: west / south measure below the
    cut, east / north above it.  When a zero-density gap makes several cuts
    valid, the one keeping the measured part smallest is returned.
    """
    target = q(target)
    if target < 0:
        raise ValueError("target must be non-negative")
    axis = "x" if direction in ("west", "east") else "y"
    if direction not in ("west", "east", "south", "north"):
        raise ValueError(f"unknown direction {direction!r}")
    pieces = _profile(v, extent, axis)
    total = sum((w * (b - a) for a, b, w in pieces), Fraction(0))
    if target > total:
        raise TargetExceedsValue(f"target {target} exceeds available value {total}")
    lo, hi = (extent.x_min, extent.x_max) if axis == "x" else (extent.y_min, extent.y_max)
    if direction in ("west", "south"):
        return _solve_low(pieces, lo, target)
    mirrored = [(-b, -a, w) for a, b, w in pieces]
    c = _solve_low(mirrored, -hi, target)
    return -c


# ---------------------------------------------------------------------------
# corner squares

def _local(a, b, x0, sgn):
    """Interval [a, b] in coordinates measured from x0 along direction sgn, clipped at 0."""
    lo, hi = (a - x0, b - x0) if sgn > 0 else (x0 - b, x0 - a)
    return max(lo, Fraction(0)), max(hi, Fraction(0))


class _SquareValue:
    """Value of the corner square as a function of its side."""

    def __init__(self, v, corner, orientation):
        x0, y0 = q(corner[0]), q(corner[1])
        sx, sy = orientation
        self.terms = []
        for cell, d in v.cells:
            if not d:
                continue
            pu, qu = _local(cell.x_min, cell.x_max, x0, sx)
            pv, qv = _local(cell.y_min, cell.y_max, y0, sy)
            if qu > pu and qv > pv:
                self.terms.append((d, pu, qu, pv, qv))
        self.breaks = sorted({Fraction(0)} | {t for _, a, b, c, e in self.terms for t in (a, b, c, e)})

    def __call__(self, l) -> Fraction:
        acc = Fraction(0)
        for d, pu, qu, pv, qv in self.terms:
            if is_inf(l):
                acc += d * (qu - pu) * (qv - pv)
            elif l > pu and l > pv:
                acc += d * (min(l, qu) - pu) * (min(l, qv) - pv)
        return acc

    def coefficients(self, lo, hi):
        """(A, B, C) with value = A l^2 + B l + C on [lo, hi]."""
        mid = (lo + hi) / 2
        A = B = C = Fraction(0)
        for d, pu, qu, pv, qv in self.terms:
            ax, bx = (1, -pu) if pu < mid < qu else (0, (qu - pu) if mid >= qu else 0)
            ay, by = (1, -pv) if pv < mid < qv else (0, (qv - pv) if mid >= qv else 0)
            A += d * ax * ay
            B += d * (ax * by + ay * bx)
            C += d * bx * by
        return A, B, C


def _simplest_between(a: Fraction, b: Fraction) -> Fraction:
    """Rational with the smallest denominator in [a, b] (a <= b)."""
    fl = math.floor(a)
    if fl == a:
        return Fraction(fl)
    if fl + 1 <= b:
        return Fraction(fl + 1)
    return fl + 1 / _simplest_between(1 / (b - fl), 1 / (a - fl))


def _exact_sqrt(x: Fraction):
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def _irrational_root(A, B, C, target, f, lo, hi, round_up: bool):
    """Simplest rational side within PRECISION of ``target`` in value.

    ``round_up`` picks a side at or above the true root (value overshoots by
    less than PRECISION); otherwise at or below it (value undershoots).
    """
    D = B * B - 4 * A * (C - target)
    N, M = D.numerator, D.denominator
    bits = 80
    while True:
        t = math.isqrt(N * M * 4 ** bits)
        unit = M * 2 ** bits
        r_lo = (-B + Fraction(t, unit)) / (2 * A)
        r_hi = (-B + Fraction(t + 1, unit)) / (2 * A)
        width = Fraction(1, 2 ** bits)
        if round_up:
            cand = min(_simplest_between(r_hi, r_hi + width), hi)
            ok = target <= f(cand) < target + PRECISION
        else:
            cand = max(_simplest_between(r_lo - width, r_lo), lo)
            ok = target - PRECISION < f(cand) <= target
        if ok:
            return cand
        bits *= 2


def corner_rect(corner, orientation, side) -> Rect:
    """Square of the given side with a corner at ``corner``, opening towards ``orientation``."""
    x0, y0 = q(corner[0]), q(corner[1])
    sx, sy = orientation
    if is_inf(side):
        xs = (x0, INF) if sx > 0 else (NEG_INF, x0)
        ys = (y0, INF) if sy > 0 else (NEG_INF, y0)
    else:
        xs = sorted((x0, x0 + sx * side))
        ys = sorted((y0, y0 + sy * side))
    return Rect(xs[0], ys[0], xs[1], ys[1])


def mark_corner_square_side(v: PiecewiseUniformMeasure, corner, orientation, target,
                            max_side=INF, round_up: bool = True):
    """Smallest side of a corner square worth ``target``.

    Exact whenever the root is rational.  Otherwise the simplest rational
    side whose value is within PRECISION of ``target``, on the side chosen by
    ``round_up``.  The side is infinite only when ``target`` is reached in
    the limit alone.
    """
    target = q(target)
    if target <= 0:
        raise ValueError("corner-square target must be positive")
    max_side = ext(max_side)
    f = _SquareValue(v, corner, orientation)
    if f(max_side) < target:
        raise InsufficientValue(f"corner region holds {f(max_side)} < {target}")
    pts = [b for b in f.breaks if b < max_side] + [max_side]
    prev = pts[0]
    for p in pts[1:]:
        if f(p) >= target:
            if is_inf(p):
                # value is constant past the last breakpoint
                return INF
            A, B, C = f.coefficients(prev, p)
            if A == 0:
                return (target - C) / B
            root = _exact_sqrt(B * B - 4 * A * (C - target))
            if root is not None:
                return (-B + root) / (2 * A)
            return _irrational_root(A, B, C, target, f, prev, p, round_up)
        prev = p
    raise InsufficientValue("target not reached")


def mark_corner_square(v: PiecewiseUniformMeasure, corner, orientation, target, max_side=INF) -> Square:
    """Corner square of value ``target``, as a south-west corner plus side."""
    side = mark_corner_square_side(v, corner, orientation, target, max_side)
    r = corner_rect(corner, orientation, side)
    if is_inf(r.x_min) or is_inf(r.y_min):
        raise GeometryError("unbounded squares must open north-east to be stored as Square")
    return Square(r.x_min, r.y_min, side)


def corner_value(v: PiecewiseUniformMeasure, corner, orientation, side) -> Fraction:
    return _SquareValue(v, corner, orientation)(ext(side))
