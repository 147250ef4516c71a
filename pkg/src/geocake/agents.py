"""Players: queries they answer, the honest safe strategies and random adversaries.

All query geometry is local to a protocol level and carries the
:class:`~geocake.geometry.Frame` that maps it to world coordinates.  Honest
agents evaluate their measure in world coordinates and translate answers
back, so no measure is ever transformed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import (INF, NEG_INF, Frame, Rect, Staircase, fmt, is_inf, q)
from .measure import (InsufficientValue, PiecewiseUniformMeasure, TargetExceedsValue,
                      eval_region, mark_corner_square_side, mark_vertical, scale)


class ProtocolRuleViolation(ValueError):
    """An answer broke the rules of the query it responds to."""

    def __init__(self, player: int, reason: str):
        super().__init__(f"player {player}: {reason}")
        self.player = player
        self.reason = reason


# ---------------------------------------------------------------------------
# answers

@dataclass(frozen=True)
class PartnerVector:
    """Partner numbers P_j, one per part of an eval query."""

    counts: tuple

    def to_json(self):
        return list(self.counts)


@dataclass(frozen=True)
class VerticalLine:
    """A cut coordinate along the query's axis (local units)."""

    x: object

    def to_json(self):
        return fmt(self.x)


@dataclass(frozen=True)
class LShape:
    """An L-shape bid: the cake minus the corner square of this side."""

    side: Fraction

    def to_json(self):
        return fmt(self.side)


@dataclass(frozen=True)
class CornerSquare:
    """A square of the given side anchored at corner ``corner``."""

    corner: int
    side: object

    def to_json(self):
        return [self.corner, fmt(self.side)]


@dataclass(frozen=True)
class CornerBids:
    """Staircase bids: one corner square per chosen corner."""

    squares: tuple

    def to_json(self):
        return [s.to_json() for s in self.squares]


@dataclass(frozen=True)
class EastOrNorthChoice:
    side: str

    def to_json(self):
        return self.side


@dataclass(frozen=True)
class PieceSelection:
    index: int

    def to_json(self):
        return self.index


Bid = VerticalLine | LShape | CornerSquare | CornerBids | EastOrNorthChoice | PieceSelection


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _rect_json(r: Rect) -> list:
    return [fmt(r.x_min), fmt(r.y_min), fmt(r.x_max), fmt(r.y_max)]


# ---------------------------------------------------------------------------
# queries

@dataclass(frozen=True)
class Query:
    """Common fields: protocol and step names, group size, local cake and frame."""

    protocol: str
    step: str
    n: int
    cake: object
    frame: Frame

    kind = "query"

    def check(self, answer) -> Optional[str]:
        raise NotImplementedError

    def _base_json(self) -> dict:
        cake = self.cake.to_json() if isinstance(self.cake, Staircase) else _rect_json(self.cake)
        f = self.frame
        return {"kind": self.kind, "protocol": self.protocol, "step": self.step, "n": self.n,
                "cake": cake, "frame": [fmt(f.ox), fmt(f.oy), fmt(f.scale), list(f.m)]}

    def to_json(self) -> dict:
        return self._base_json()


@dataclass(frozen=True)
class EvalQuery(Query):
    parts: tuple = ()

    kind = "eval"

    def check(self, answer) -> Optional[str]:
        if not isinstance(answer, PartnerVector):
            return "eval answer must be a PartnerVector"
        c = answer.counts
        if len(c) != len(self.parts):
            return f"expected {len(self.parts)} partner numbers, got {len(c)}"
        if any(not isinstance(p, int) or isinstance(p, bool) or p < 0 for p in c):
            return "partner numbers must be non-negative integers"
        if sum(c) < self.n:
            return f"partner numbers sum to {sum(c)} < {self.n}"
        return None

    def to_json(self) -> dict:
        return dict(self._base_json(), parts=[_rect_json(p) for p in self.parts])


@dataclass(frozen=True)
class LineQuery(Query):
    """Bid a cut ``axis = c``; the measured part lies on ``side`` (+1 above, -1 below)."""

    axis: str = "x"
    side: int = 1
    lo: object = NEG_INF
    hi: object = INF
    lo_open: bool = False

    kind = "line"

    def check(self, answer) -> Optional[str]:
        if not isinstance(answer, VerticalLine) or not _is_rational(answer.x):
            return "line answer must be a finite rational coordinate"
        x = answer.x
        if x < self.lo or x > self.hi or (self.lo_open and x == self.lo):
            return f"cut {x} outside the allowed range"
        return None

    def to_json(self) -> dict:
        return dict(self._base_json(), axis=self.axis, side=self.side,
                    range=[fmt(self.lo), fmt(self.hi)])


@dataclass(frozen=True)
class LShapeQuery(Query):
    """Corner square at the local origin opening north-east, side in (0, max_side]."""

    max_side: Fraction = Fraction(1, 2)

    kind = "lshape"

    def check(self, answer) -> Optional[str]:
        if not isinstance(answer, LShape) or not _is_rational(answer.side):
            return "L-shape answer must carry a rational side"
        if not 0 < answer.side <= self.max_side:
            return f"corner side {answer.side} outside (0, {self.max_side}]"
        return None

    def to_json(self) -> dict:
        return dict(self._base_json(), max_side=fmt(self.max_side))


@dataclass(frozen=True)
class ChoiceQuery(Query):
    """Pick one of ``options`` (local rectangles); ``labels`` name them."""

    options: tuple = ()
    labels: tuple = ()

    kind = "choice"

    def check(self, answer) -> Optional[str]:
        if isinstance(answer, EastOrNorthChoice):
            if answer.side not in self.labels:
                return f"unknown choice {answer.side!r}"
            return None
        if isinstance(answer, PieceSelection):
            if not isinstance(answer.index, int) or not 0 <= answer.index < len(self.options):
                return f"selection {answer.index!r} out of range"
            return None
        return "choice answer has the wrong type"

    def index_of(self, answer) -> int:
        if isinstance(answer, EastOrNorthChoice):
            return self.labels.index(answer.side)
        return answer.index

    def to_json(self) -> dict:
        return dict(self._base_json(), options=[_rect_json(o) for o in self.options],
                    labels=list(self.labels))


@dataclass(frozen=True)
class StaircaseQuery(Query):
    """Draw north-east squares at any non-empty subset of the staircase corners."""

    kind = "staircase"

    def check(self, answer) -> Optional[str]:
        if not isinstance(answer, CornerBids) or not answer.squares:
            return "staircase answer must hold at least one corner square"
        seen = set()
        for sq in answer.squares:
            if not isinstance(sq, CornerSquare) or not isinstance(sq.corner, int):
                return "malformed corner square"
            if not 0 <= sq.corner < self.cake.k:
                return f"corner {sq.corner} is not a staircase corner"
            if sq.corner in seen:
                return f"two squares at corner {sq.corner}"
            seen.add(sq.corner)
            if not (sq.side == INF or (_is_rational(sq.side) and sq.side > 0)):
                return "square side must be positive"
        return None


@dataclass(frozen=True)
class CornerSquareQuery(Query):
    """Square at one of the four cake corners (SW, SE, NW, NE), side in (0, max_side]."""

    max_side: Fraction = Fraction(1, 2)

    kind = "corner_square"

    def check(self, answer) -> Optional[str]:
        if not isinstance(answer, CornerSquare) or not _is_rational(answer.side):
            return "answer must be a finite corner square"
        if answer.corner not in range(4):
            return "corner index must be 0..3"
        if not 0 < answer.side <= self.max_side:
            return f"side {answer.side} outside (0, {self.max_side}]"
        return None

    def to_json(self) -> dict:
        return dict(self._base_json(), max_side=fmt(self.max_side))


CORNERS = (((0, 0), (1, 1)), ((1, 0), (-1, 1)), ((0, 1), (1, -1)), ((1, 1), (-1, -1)))


def square_corner(cake: Rect, index: int) -> tuple:
    """World anchor and orientation of corner ``index`` (SW, SE, NW, NE) of ``cake``."""
    (u, v), orient = CORNERS[index]
    x = cake.x_max if u else cake.x_min
    y = cake.y_max if v else cake.y_min
    return (x, y), orient


# ---------------------------------------------------------------------------
# honest strategies

def entry_value(protocol: str, n: int, query: Query) -> Fraction:
    """Value a player must hold in the level cake for the safe strategy."""
    if protocol == "square":
        return Fraction(max(1, 6 * n - 8))
    if protocol == "fat":
        return Fraction(max(1, 4 * n - 5))
    if protocol == "walls4":
        return Fraction(max(2, 4 * n - 4))
    if protocol == "walls3":
        return Fraction(max(1, 4 * n - 5))
    if protocol == "staircase":
        return Fraction(2 * n - 2 + query.cake.k)
    if protocol == "halfplane":
        return Fraction(max(2, 2 * n - 2))
    if protocol == "plane":
        return Fraction(2 * n - 4)
    if protocol == "two_square":
        return Fraction(4)
    if protocol in ("rectangle", "archipelago"):
        return Fraction(n)
    raise ValueError(f"unknown protocol {protocol!r}")


# (share threshold, lone threshold, offset, divisor) for the partner rule:
#   V_j > V(C) - share -> n;  V_j < lone -> 0;  else floor((V_j + offset) / divisor)
EVAL_RULES = {
    ("square", "quarters"): (3, 1, 8, 6),
    ("fat", "halves"): (1, 1, 5, 4),
    ("fat", "far_west"): (2, 1, 5, 4),
    ("walls4", "halves"): (2, 2, 4, 4),
    ("walls4", "far_west"): (3, 1, 5, 4),
    ("walls3", "far_west"): (2, 1, 5, 4),
}

LINE_TARGETS = {("fat", "east"): 1, ("walls4", "east"): 2, ("walls3", "east"): 1,
                ("halfplane", "west"): 1, ("rectangle", "west"): 1}

LSHAPE_BUDGETS = {"square": 3, "fat": 2, "walls4": 3, "walls3": 2}

# first option worth at least this much is chosen; None means take the best
CHOICE_THRESHOLDS = {("fat", "east_or_north"): 1, ("walls4", "east_or_north"): 2,
                     ("walls3", "east_or_north"): 1}

_WORLD_SIDE = {(1, 0): "east", (-1, 0): "west", (0, 1): "north", (0, -1): "south"}


def _world_region(frame: Frame, region) -> list:
    if isinstance(region, (list, tuple)):
        return [frame.rect(r) for r in region]
    if isinstance(region, Staircase):
        return [frame.rect(r) for r in region.slabs()]
    return [frame.rect(region)]


def world_value(v: PiecewiseUniformMeasure, frame: Frame, region) -> Fraction:
    return sum((eval_region(v, r) for r in _world_region(frame, region)), Fraction(0))


def local_line(v: PiecewiseUniformMeasure, frame: Frame, extent: Rect, axis: str,
               side: int, target) -> object:
    """Local cut whose measured part (towards ``side``) inside ``extent`` is worth ``target``."""
    wdir = frame.direction(side, 0) if axis == "x" else frame.direction(0, side)
    cw = mark_vertical(v, frame.rect(extent), target, _WORLD_SIDE[wdir])
    return frame.unline(axis, cw)


def local_corner_side(v: PiecewiseUniformMeasure, frame: Frame, corner, orientation, target,
                      max_side=INF, round_up: bool = True):
    wc = frame.point(*corner)
    wo = frame.direction(*orientation)
    ms = max_side if is_inf(max_side) else max_side * frame.scale
    side = mark_corner_square_side(v, wc, wo, target, ms, round_up)
    return side if is_inf(side) else side / frame.scale


class HonestAgent:
    """Plays the safe strategy of every protocol.

    Each query is answered in units where the level cake is worth exactly
    the entry value of the current protocol and group size.
    """

    def __init__(self, measure: PiecewiseUniformMeasure):
        self.measure = measure

    def __repr__(self) -> str:
        return "HonestAgent()"

    def answer(self, query: Query):
        v = self.measure
        total = world_value(v, query.frame, self._level(query))
        if total == 0:
            return self._passive(query)
        # rescale so the level cake is worth the entry value: answers then do not
        # depend on the scale of the measure, rounding included
        entry = entry_value(query.protocol, query.n, query)
        v = scale(v, entry / total)
        handler = getattr(self, "_" + query.kind)
        return handler(query, v, entry, Fraction(1))

    @staticmethod
    def _level(query: Query):
        if query.protocol == "archipelago":
            return query.parts
        return query.cake

    # answers when the level cake is worthless: never block anyone
    def _passive(self, query: Query):
        if isinstance(query, EvalQuery):
            return PartnerVector(tuple([query.n] * len(query.parts)))
        if isinstance(query, LineQuery):
            if not is_inf(query.hi):
                return VerticalLine(query.hi)
            return VerticalLine(query.lo if not is_inf(query.lo) else Fraction(0))
        if isinstance(query, LShapeQuery):
            return LShape(query.max_side)
        if isinstance(query, ChoiceQuery):
            return PieceSelection(0)
        if isinstance(query, StaircaseQuery):
            return CornerBids((CornerSquare(0, Fraction(1)),))
        if isinstance(query, CornerSquareQuery):
            return CornerSquare(0, query.max_side)
        raise TypeError(type(query).__name__)

    def _eval(self, query: EvalQuery, v, total, unit):
        # only value inside the level cake counts
        parts = [p.intersection(query.cake) for p in query.parts]
        vals = [world_value(v, query.frame, p) / unit if p is not None else Fraction(0) for p in parts]
        if query.protocol == "archipelago":
            m = len(query.parts)
            # unit = V(C)/n here; rescale to V(C_j)/V(C) * (n+m-1)
            return PartnerVector(tuple(math.floor(x * (query.n + m - 1) / query.n) for x in vals))
        share, lone, offset, div = EVAL_RULES[(query.protocol, query.step)]
        level = total / unit
        out = []
        for x in vals:
            if x > level - share:
                out.append(query.n)
            elif x < lone:
                out.append(0)
            else:
                out.append(math.floor((x + offset) / div))
        return PartnerVector(tuple(out))

    def _line(self, query: LineQuery, v, total, unit):
        if query.protocol == "plane":
            # south half keeps floor(n/2) players, who need 2*floor(n/2) - 2
            target = 2 * (query.n // 2) - 2
        elif query.protocol == "rectangle":
            target = 1
        else:
            target = LINE_TARGETS[(query.protocol, query.step)]
        extent = query.cake
        try:
            x = local_line(v, query.frame, extent, query.axis, query.side, target * unit)
        except TargetExceedsValue:
            x = query.lo if query.side > 0 else query.hi
        # off the honest path the solver may land outside the allowed range
        x = min(max(x, query.lo), query.hi)
        if is_inf(x):
            x = Fraction(0)
        if query.lo_open and x == query.lo:
            x = query.hi
        return VerticalLine(x)

    def _lshape(self, query: LShapeQuery, v, total, unit):
        budget = LSHAPE_BUDGETS[query.protocol]
        target = total - budget * unit
        if target <= 0:
            return LShape(query.max_side)
        try:
            # round the square up: the players left in the corner must not fall short,
            # while the winner's two overlapping options absorb the rounding
            s = local_corner_side(v, query.frame, (0, 0), (1, 1), target, query.max_side,
                                  round_up=True)
        except InsufficientValue:
            s = query.max_side
        return LShape(min(s, query.max_side))

    def _choice(self, query: ChoiceQuery, v, total, unit):
        vals = [world_value(v, query.frame, o) for o in query.options]
        th = CHOICE_THRESHOLDS.get((query.protocol, query.step))
        if th is not None:
            for i, x in enumerate(vals):
                if x >= th * unit:
                    break
            else:
                i = len(vals) - 1
        else:
            i = max(range(len(vals)), key=lambda j: (vals[j], -j))
        if query.labels:
            return EastOrNorthChoice(query.labels[i])
        return PieceSelection(i)

    def _staircase(self, query: StaircaseQuery, v, total, unit):
        bids = []
        for j, corner in enumerate(query.cake.corners):
            try:
                side = local_corner_side(v, query.frame, corner, (1, 1), unit)
            except InsufficientValue:
                continue
            bids.append(CornerSquare(j, side))
        return CornerBids(tuple(bids))

    def _corner_square(self, query: CornerSquareQuery, v, total, unit):
        best = None
        for j in range(4):
            (cx, cy), orient = CORNERS[j]
            corner = (query.cake.x_max if cx else query.cake.x_min,
                      query.cake.y_max if cy else query.cake.y_min)
            try:
                side = local_corner_side(v, query.frame, corner, orient, unit, query.max_side)
            except InsufficientValue:
                continue
            if best is None or side < best.side:
                best = CornerSquare(j, side)
        return best if best is not None else CornerSquare(0, query.max_side)


# ---------------------------------------------------------------------------
# adversaries

_GRID = 1 << 16


@dataclass
class AdversarialAgent:
    """Rule-compliant random answers, deterministic per seed.

    Parameters unbounded by the rules are drawn from ``[-span, span]``
    (cuts) or ``(0, span]`` (square sides); infinite staircase squares
    appear with small probability.
    """

    seed: int
    span: Fraction = Fraction(2)
    rng: random.Random = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.rng = random.Random(self.seed)
        self.span = q(self.span)

    def _uniform(self, lo, hi, open_lo: bool = False) -> Fraction:
        lo = lo if not is_inf(lo) else -self.span
        hi = hi if not is_inf(hi) else self.span
        if hi < lo:
            lo, hi = hi, lo
        k = self.rng.randint(1 if open_lo else 0, _GRID)
        return lo + (hi - lo) * Fraction(k, _GRID)

    def answer(self, query: Query):
        rng = self.rng
        if isinstance(query, EvalQuery):
            m = len(query.parts)
            counts = [rng.randint(0, query.n) for _ in range(m)]
            short = query.n - sum(counts)
            if short > 0:
                counts[rng.randrange(m)] += short
            return PartnerVector(tuple(counts))
        if isinstance(query, LineQuery):
            return VerticalLine(self._uniform(query.lo, query.hi, query.lo_open))
        if isinstance(query, LShapeQuery):
            return LShape(self._uniform(Fraction(0), query.max_side, True))
        if isinstance(query, ChoiceQuery):
            i = rng.randrange(len(query.options))
            return EastOrNorthChoice(query.labels[i]) if query.labels else PieceSelection(i)
        if isinstance(query, StaircaseQuery):
            k = query.cake.k
            chosen = sorted(rng.sample(range(k), rng.randint(1, k)))
            squares = []
            for j in chosen:
                side = INF if rng.random() < 0.05 else self._uniform(Fraction(0), self.span, True)
                squares.append(CornerSquare(j, side))
            return CornerBids(tuple(squares))
        if isinstance(query, CornerSquareQuery):
            return CornerSquare(rng.randrange(4), self._uniform(Fraction(0), query.max_side, True))
        raise TypeError(type(query).__name__)


def adversarial_agent(seed: int, span=2) -> AdversarialAgent:
    return AdversarialAgent(seed, q(span))


def make_agent(kind: str, measure: Optional[PiecewiseUniformMeasure] = None):
    """Build an agent from its CLI name: ``honest`` or ``adversarial:<seed>``."""
    if kind == "honest":
        if measure is None:
            raise ValueError("honest agents need a measure")
        return HonestAgent(measure)
    if kind.startswith("adversarial:"):
        return adversarial_agent(int(kind.split(":", 1)[1]))
    raise ValueError(f"unknown agent kind {kind!r}")


def honest_eval_square_to_squares(v: PiecewiseUniformMeasure, quarters: Sequence[Rect], n: int,
                                  cake: Rect) -> PartnerVector:
    """Partner numbers for the 2x2 quarter split of a square cake."""
    frame = Frame(cake.x_min, cake.y_min, cake.width)
    s = cake.width
    parts = tuple(Rect((r.x_min - cake.x_min) / s, (r.y_min - cake.y_min) / s,
                       (r.x_max - cake.x_min) / s, (r.y_max - cake.y_min) / s) for r in quarters)
    query = EvalQuery("square", "quarters", n, Rect(0, 0, 1, 1), frame, parts)
    return HonestAgent(v).answer(query)


def honest_staircase_bids(v: PiecewiseUniformMeasure, s: Staircase, n: int) -> list:
    """(corner index, side) pairs of the honest staircase bid."""
    query = StaircaseQuery("staircase", "corners", n, s, Frame())
    return [(b.corner, b.side) for b in HonestAgent(v).answer(query).squares]


def honest_bid_lshape(v: PiecewiseUniformMeasure, cake: Rect, quarter: Rect, budget) -> LShape:
    """L-shape worth ``budget`` around the cake corner shared with ``quarter``.

    Returns the side of the removed corner square in world units.  Raises
    :class:`InsufficientValue` when the quarter cannot hold ``V(cake) - budget``.
    """
    for j, (_, orient) in enumerate(CORNERS):
        corner, _ = square_corner(cake, j)
        if quarter.contains_point(*corner):
            break
    else:
        raise ValueError("quarter does not touch a corner of the cake")
    target = eval_region(v, cake) - q(budget)
    if target <= 0:
        raise InsufficientValue("budget already exceeds the cake's value")
    side = mark_corner_square_side(v, corner, orient, target, quarter.width, round_up=True)
    return LShape(side)
