"""Division protocols driven by mark and eval queries.

Every protocol works on a canonical local cake (usually ``[0, L] x [0, 1]``)
and a :class:`Frame` mapping it to the world.  Orientation cases ("assume
the group sits in the south-west") are handled by composing the frame with
a reflection, so each step has a single code path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .agents import (ChoiceQuery, CornerSquareQuery, EvalQuery, LineQuery, LShapeQuery,
                     ProtocolRuleViolation, StaircaseQuery, CORNERS)
from .geometry import (INF, NEG_INF, Frame, GeometryError, Rect, RectilinearRegion, Square,
                       Staircase, canonical_frame, fmt, is_inf, l_shape_cover, q, reflect_x,
                       reflect_y, region_subtract, staircase_remove_shadow)

HALF = Fraction(1, 2)
UNIT = Rect(0, 0, 1, 1)
PLANE = Rect(NEG_INF, NEG_INF, INF, INF)
UPPER_HALF_PLANE = Rect(NEG_INF, 0, INF, INF)


class UnsupportedPlayerCount(ValueError):
    """The protocol is not defined for this many players."""


class PreconditionError(ValueError):
    """The cake does not have the shape the protocol expects."""


# ---------------------------------------------------------------------------
# room partition

def partition_to_rooms(P: Sequence[Sequence[int]], m: Optional[int] = None) -> list:
    """Split players (rows of ``P``) into rooms so that i in G_j implies P[i][j] >= |G_j|.

    Rooms are filled from the last one backwards; within a room players are
    taken in decreasing order of their partner number, ties by index.
    """
    n = len(P)
    m = m if m is not None else (len(P[0]) if P else 0)
    for i, row in enumerate(P):
        if len(row) != m:
            raise ProtocolRuleViolation(i, f"expected {m} partner numbers")
        if sum(row) < n:
            raise ProtocolRuleViolation(i, f"partner numbers sum to {sum(row)} < {n}")
    groups: list = [[] for _ in range(m)]
    remaining = list(range(n))
    for j in reversed(range(m)):
        room: list = []
        for i in sorted(remaining, key=lambda i: (-P[i][j], i)):
            if P[i][j] > len(room):
                room.append(i)
            else:
                break
        groups[j] = sorted(room)
        taken = set(room)
        remaining = [i for i in remaining if i not in taken]
    if remaining:
        raise AssertionError("room partition left players unassigned")
    return groups


# ---------------------------------------------------------------------------
# allocation and run bookkeeping

@dataclass
class Allocation:
    """Pieces per player (world coordinates; ``None`` = no piece) plus the transcript."""

    protocol: str
    cake: object
    container: object
    shape: str
    pieces: list
    records: list = field(default_factory=list)
    forfeits: list = field(default_factory=list)

    def transcript(self) -> list:
        out = []
        for query, answers, decision in self.records:
            out.append({"query": query.to_json(),
                        "answers": {str(p): a.to_json() for p, a in answers.items()},
                        "decision": decision})
        return out

    def pieces_json(self) -> list:
        return [None if p is None else p.to_json() for p in self.pieces]

    def to_json(self) -> dict:
        return {"protocol": self.protocol, "shape": self.shape, "pieces": self.pieces_json(),
                "forfeits": sorted(self.forfeits)}


class _Run:
    def __init__(self, protocol: str, agents: Sequence, strict: bool):
        self.protocol = protocol
        self.agents = list(agents)
        self.strict = strict
        self.pieces: list = [None] * len(self.agents)
        self.records: list = []
        self.forfeits: list = []

    def ask(self, query, players: Sequence[int]) -> dict:
        answers = {}
        for p in players:
            a = self.agents[p].answer(query)
            err = query.check(a)
            if err is not None:
                if self.strict:
                    raise ProtocolRuleViolation(p, err)
                self.forfeits.append(p)
                continue
            answers[p] = a
        return answers

    def log(self, query, answers: dict, **decision) -> None:
        self.records.append((query, answers, decision))

    def give(self, player: int, frame: Frame, local: Rect) -> Rect:
        piece = frame.rect(local)
        self.pieces[player] = piece
        return piece

    def finish(self, cake, container, shape: str) -> Allocation:
        return Allocation(self.protocol, cake, container, shape, self.pieces, self.records,
                          self.forfeits)


def _rooms(answers: dict, players: list, m: int) -> list:
    groups = partition_to_rooms([list(answers[p].counts) for p in players], m)
    return [[players[i] for i in g] for g in groups]


def _sub(frame: Frame, local: Rect) -> tuple:
    """Frame and aspect of a bounded local sub-rectangle in canonical form."""
    inner, L = canonical_frame(local)
    return frame.compose(inner), L


def _square_at(frame: Frame, x, y, side) -> Frame:
    return frame.compose(Frame(x, y, side))


def _two_square_cover(r: Rect) -> list:
    """Squares at both ends of the long side of a rectangle with aspect at most 2."""
    w, h = r.width, r.height
    if w >= h:
        return [Rect(r.x_min, r.y_min, r.x_min + h, r.y_max), Rect(r.x_max - h, r.y_min, r.x_max, r.y_max)]
    return [Rect(r.x_min, r.y_min, r.x_max, r.y_min + w), Rect(r.x_min, r.y_max - w, r.x_max, r.y_max)]


def _halves(L) -> tuple:
    L = Fraction(L)
    return Rect(0, 0, L / 2, 1), Rect(L / 2, 0, L, 1)


FAR_WEST = (Rect(0, 0, HALF, HALF), Rect(0, HALF, HALF, 1))
QUARTERS = (Rect(0, 0, HALF, HALF), Rect(HALF, 0, 1, HALF), Rect(0, HALF, HALF, 1), Rect(HALF, HALF, 1, 1))


def _flip(frame: Frame, L, east: bool, north: bool) -> Frame:
    if east:
        frame = frame.compose(reflect_x(L))
    if north:
        frame = frame.compose(reflect_y(1))
    return frame


def _full_group(groups: list, n: int) -> Optional[int]:
    for j, g in enumerate(groups):
        if len(g) == n:
            return j
    return None


def _lshape_round(run: _Run, protocol: str, frame: Frame, L, players: list):
    """Mark query for L-shapes at the local origin; returns (winner, side, rest)."""
    query = LShapeQuery(protocol, "lshape", len(players), Rect(0, 0, L, 1), frame, HALF)
    answers = run.ask(query, players)
    if not answers:
        return None, None, []
    live = [p for p in players if p in answers]
    # smallest L-shape = largest corner square
    winner = max(live, key=lambda p: (answers[p].side, -p))
    s = answers[winner].side
    run.log(query, answers, winner=winner, side=fmt(s))
    return winner, s, [p for p in live if p != winner]


def _choose(run: _Run, protocol: str, step: str, frame: Frame, cake: Rect, player: int,
            options: list, labels: tuple = (), n: int = 1) -> Optional[int]:
    # n is the size of the group the choice is made in; it fixes the player's unit
    query = ChoiceQuery(protocol, step, n, cake, frame, tuple(options), labels)
    answers = run.ask(query, [player])
    if player not in answers:
        return None
    i = query.index_of(answers[player])
    run.log(query, answers, player=player, chosen=i)
    return i


def _east_line(run: _Run, protocol: str, frame: Frame, L, players: list, hi):
    """Mark query for east-anchored bids [x, L]; the largest x wins."""
    query = LineQuery(protocol, "east", len(players), Rect(0, 0, L, 1), frame, "x", 1,
                      Fraction(0), hi)
    answers = run.ask(query, players)
    live = [p for p in players if p in answers]
    if not live:
        return None, None, []
    winner = max(live, key=lambda p: (answers[p].x, -p))
    x = answers[winner].x
    run.log(query, answers, winner=winner, cut=fmt(x))
    return winner, x, [p for p in live if p != winner]


def _eval_round(run: _Run, protocol: str, step: str, frame: Frame, L, parts: tuple,
                players: list):
    query = EvalQuery(protocol, step, len(players), Rect(0, 0, L, 1), frame, parts)
    answers = run.ask(query, players)
    live = [p for p in players if p in answers]
    groups = _rooms(answers, live, len(parts)) if live else [[] for _ in parts]
    run.log(query, answers, groups=groups)
    return live, groups


# ---------------------------------------------------------------------------
# square to squares

def _square(run: _Run, frame: Frame, players: list) -> None:
    n = len(players)
    if n == 0:
        return
    if n == 1:
        run.give(players[0], frame, UNIT)
        return
    live, groups = _eval_round(run, "square", "quarters", frame, 1, QUARTERS, players)
    j = _full_group(groups, len(live))
    if j is None:
        for part, g in zip(QUARTERS, groups):
            _square(run, _square_at(frame, part.x_min, part.y_min, HALF), g)
        return
    f = _flip(frame, 1, j in (1, 3), j in (2, 3))
    winner, s, rest = _lshape_round(run, "square", f, 1, live)
    if winner is None:
        return
    options = [sq.to_rect() for sq in l_shape_cover(region_subtract(RectilinearRegion((UNIT,)),
                                                                     Rect(0, 0, s, s)))]
    i = _choose(run, "square", "cover", f, UNIT, winner, options)
    if i is not None:
        run.give(winner, f, options[i])
    _square(run, _square_at(f, 0, 0, s), rest)


# ---------------------------------------------------------------------------
# 2-fat rectangles to 2-fat rectangles

def _fat(run: _Run, frame: Frame, L, players: list) -> None:
    n = len(players)
    if n == 0:
        return
    cake = Rect(0, 0, L, 1)
    if n == 1:
        run.give(players[0], frame, cake)
        return
    halves = _halves(L)
    live, groups = _eval_round(run, "fat", "halves", frame, L, halves, players)
    j = _full_group(groups, len(live))
    if j is None:
        for part, g in zip(halves, groups):
            if g:
                _fat(run, *_sub(frame, part), g)
        return
    f = _flip(frame, L, j == 1, False)
    winner, x, rest = _east_line(run, "fat", f, L, live, L - HALF)
    if winner is None:
        return
    if x >= HALF:
        run.give(winner, f, Rect(x, 0, L, 1))
        _fat(run, *_sub(f, Rect(0, 0, x, 1)), rest)
        return
    live, groups = _eval_round(run, "fat", "far_west", f, L, FAR_WEST, live)
    j = _full_group(groups, len(live))
    if j is None:
        for part, g in zip(FAR_WEST, groups):
            _fat(run, _square_at(f, part.x_min, part.y_min, HALF), 1, g)
        return
    f = _flip(f, L, False, j == 1)
    winner, s, rest = _lshape_round(run, "fat", f, L, live)
    if winner is None:
        return
    options = [Rect(s, 0, L, 1), Rect(0, s, 1 - s, 1)]
    i = _choose(run, "fat", "east_or_north", f, cake, winner, options, ("east", "north"),
                  len(rest) + 1)
    if i is not None:
        run.give(winner, f, options[i])
    _fat(run, _square_at(f, 0, 0, s), 1, rest)


# ---------------------------------------------------------------------------
# squares out of a bounded 2-fat rectangle, and out of a rectangle with an open east side

def _take_cover_square(run: _Run, frame: Frame, cake: Rect, player: int, r: Rect) -> None:
    options = _two_square_cover(r)
    i = _choose(run, "walls4", "cover", frame, cake, player, options)
    if i is not None:
        run.give(player, frame, options[i])


def _walls4(run: _Run, frame: Frame, L, players: list) -> None:
    n = len(players)
    if n == 0:
        return
    cake = Rect(0, 0, L, 1)
    if n == 1:
        _take_cover_square(run, frame, cake, players[0], cake)
        return
    halves = _halves(L)
    live, groups = _eval_round(run, "walls4", "halves", frame, L, halves, players)
    j = _full_group(groups, len(live))
    if j is None:
        for part, g in zip(halves, groups):
            if g:
                _walls4(run, *_sub(frame, part), g)
        return
    f = _flip(frame, L, j == 1, False)
    winner, x, rest = _east_line(run, "walls4", f, L, live, L - HALF)
    if winner is None:
        return
    if x >= HALF:
        _take_cover_square(run, f, cake, winner, Rect(x, 0, L, 1))
        _walls4(run, *_sub(f, Rect(0, 0, x, 1)), rest)
        return
    live, groups = _eval_round(run, "walls4", "far_west", f, L, FAR_WEST, live)
    j = _full_group(groups, len(live))
    if j is None:
        for part, g in zip(FAR_WEST, groups):
            _walls3(run, _square_at(f, part.x_min, part.y_min, HALF), 1, g)
        return
    f = _flip(f, L, False, j == 1)
    winner, s, rest = _lshape_round(run, "walls4", f, L, live)
    if winner is None:
        return
    east, north = Rect(s, 0, L, 1), Rect(0, s, 1 - s, 1)
    i = _choose(run, "walls4", "east_or_north", f, cake, winner, [east, north], ("east", "north"),
                  len(rest) + 1)
    if i == 0:
        _take_cover_square(run, f, cake, winner, east)
    elif i == 1:
        run.give(winner, f, north)
    if i == 1:
        # the east strip next to the corner square stays free
        _walls3(run, _square_at(f, 0, 0, s), 1, rest)
    else:
        _walls3(run, f.compose(Frame(0, 0, s, (0, 1, 1, 0))), 1, rest)


def _walls3(run: _Run, frame: Frame, L, players: list) -> None:
    n = len(players)
    if n == 0:
        return
    cake = Rect(0, 0, L, 1)
    if n == 1:
        run.give(players[0], frame, UNIT)
        return
    winner, x, rest = _east_line(run, "walls3", frame, L, players, L)
    if winner is None:
        return
    if x >= HALF:
        run.give(winner, frame, Rect(x, 0, x + 1, 1))
        _walls4(run, *_sub(frame, Rect(0, 0, x, 1)), rest)
        return
    live, groups = _eval_round(run, "walls3", "far_west", frame, L, FAR_WEST, players)
    j = _full_group(groups, len(live))
    if j is None:
        for part, g in zip(FAR_WEST, groups):
            _walls3(run, _square_at(frame, part.x_min, part.y_min, HALF), 1, g)
        return
    f = _flip(frame, L, False, j == 1)
    winner, s, rest = _lshape_round(run, "walls3", f, L, live)
    if winner is None:
        return
    east, north = Rect(s, 0, s + 1, 1), Rect(0, s, 1 - s, 1)
    if s > L:
        # a corner square wider than the cake leaves no east part
        i = _choose(run, "walls3", "east_or_north", f, cake, winner, [north], ("north",),
                      len(rest) + 1)
        i = None if i is None else 1
    else:
        i = _choose(run, "walls3", "east_or_north", f, cake, winner, [east, north], ("east", "north"),
                  len(rest) + 1)
    if i is not None:
        run.give(winner, f, (east, north)[i])
    if i == 1:
        _walls3(run, _square_at(f, 0, 0, s), 1, rest)
    else:
        _walls3(run, f.compose(Frame(0, 0, s, (0, 1, 1, 0))), 1, rest)


# ---------------------------------------------------------------------------
# staircase family

def _staircase(run: _Run, frame: Frame, s: Staircase, players: list) -> None:
    players = list(players)
    while players and not s.is_empty:
        query = StaircaseQuery("staircase", "corners", len(players), s, frame)
        answers = run.ask(query, players)
        players = [p for p in players if p in answers]
        if not players:
            return
        best = None
        for p in players:
            for sq in answers[p].squares:
                cx, cy = s.corners[sq.corner]
                key = (cx + cy + sq.side, p, sq.corner)
                if best is None or key < best[0]:
                    best = (key, p, sq)
        (t, _, _), winner, sq = best
        cx, cy = s.corners[sq.corner]
        run.log(query, answers, winner=winner, corner=sq.corner, t=fmt(t))
        run.give(winner, frame, Rect(cx, cy, cx + sq.side, cy + sq.side))
        s = staircase_remove_shadow(s, Square(cx, cy, sq.side), sq.corner)
        players.remove(winner)


def _halfplane(run: _Run, frame: Frame, players: list) -> None:
    if not players:
        return
    query = LineQuery("halfplane", "west", len(players), UPPER_HALF_PLANE, frame, "x", -1)
    answers = run.ask(query, players)
    live = [p for p in players if p in answers]
    if not live:
        return
    winner = min(live, key=lambda p: (answers[p].x, p))
    x = answers[winner].x
    run.log(query, answers, winner=winner, cut=fmt(x))
    run.give(winner, frame, Rect(NEG_INF, 0, x, INF))
    _staircase(run, frame, Staircase(((x, 0),)), [p for p in live if p != winner])


def _plane(run: _Run, frame: Frame, players: list) -> None:
    n = len(players)
    query = LineQuery("plane", "split", n, PLANE, frame, "y", -1)
    answers = run.ask(query, players)
    order = sorted((p for p in players if p in answers), key=lambda p: (answers[p].x, p))
    if not order:
        return
    n_south = max(1, min(n // 2, len(order)))
    c = answers[order[n_south - 1]].x
    south, north = order[:n_south], order[n_south:]
    run.log(query, answers, cut=fmt(c), south=south, north=north)
    _halfplane(run, frame.compose(Frame(0, c, 1, (1, 0, 0, -1))), south)
    _halfplane(run, frame.compose(Frame(0, c, 1)), north)


# ---------------------------------------------------------------------------
# warm-ups

def _rectangle(run: _Run, cake: Rect, players: list) -> None:
    frame = Frame()
    cur = cake
    players = list(players)
    while players:
        if len(players) == 1:
            run.give(players[0], frame, cur)
            return
        query = LineQuery("rectangle", "west", len(players), cur, frame, "x", -1,
                          cur.x_min, cur.x_max, True)
        answers = run.ask(query, players)
        players = [p for p in players if p in answers]
        if not players:
            return
        winner = min(players, key=lambda p: (answers[p].x, p))
        x = answers[winner].x
        run.log(query, answers, winner=winner, cut=fmt(x))
        run.give(winner, frame, Rect(cur.x_min, cur.y_min, x, cur.y_max))
        players.remove(winner)
        if x == cur.x_max:
            return
        cur = Rect(x, cur.y_min, cur.x_max, cur.y_max)


# ---------------------------------------------------------------------------
# public entry points

def _check_agents(agents: Sequence, minimum: int = 1) -> None:
    if len(agents) < minimum:
        raise UnsupportedPlayerCount(f"need at least {minimum} players, got {len(agents)}")


def _fat_frame(cake: Rect) -> tuple:
    if not cake.is_finite:
        raise PreconditionError("cake must be bounded")
    frame, L = canonical_frame(cake)
    if L > 2:
        raise PreconditionError(f"cake aspect ratio {L} exceeds 2")
    return frame, L


def divide_square_to_squares(cake: Rect, agents: Sequence, strict: bool = False) -> Allocation:
    """Squares for everyone; honest players get at least 1/(6n-8) of their value."""
    _check_agents(agents)
    if not (cake.is_finite and cake.is_square):
        raise PreconditionError("cake must be a bounded square")
    run = _Run("square", agents, strict)
    _square(run, Frame(cake.x_min, cake.y_min, cake.width), list(range(len(agents))))
    return run.finish(cake, cake, "square")


def divide_2fat(cake: Rect, agents: Sequence, strict: bool = False) -> Allocation:
    """2-fat rectangles; honest players get at least 1/(4n-5) of their value."""
    _check_agents(agents)
    frame, L = _fat_frame(cake)
    run = _Run("fat", agents, strict)
    _fat(run, frame, L, list(range(len(agents))))
    return run.finish(cake, cake, "2fat")


def divide_4walls(cake: Rect, agents: Sequence, strict: bool = False) -> Allocation:
    """Squares inside a 2-fat rectangle; honest players get at least 1/(4n-4)."""
    _check_agents(agents)
    frame, L = _fat_frame(cake)
    run = _Run("walls4", agents, strict)
    _walls4(run, frame, L, list(range(len(agents))))
    return run.finish(cake, cake, "square")


def walls3_container(cake: Rect) -> Rect:
    """The box squares may use: the cake widened eastwards by its height."""
    return Rect(cake.x_min, cake.y_min, cake.x_max + cake.height, cake.y_max)


def divide_3walls(cake: Rect, agents: Sequence, strict: bool = False) -> Allocation:
    """Squares for a rectangle whose east side is open; at least 1/(4n-5) each.

    The cake must be at most as wide as it is tall.  Squares may extend east
    of the cake by up to its height.
    """
    _check_agents(agents)
    if not cake.is_finite or cake.width > cake.height:
        raise PreconditionError("open-sided cake must be bounded and no wider than tall")
    run = _Run("walls3", agents, strict)
    _walls3(run, Frame(cake.x_min, cake.y_min, cake.height), cake.width / cake.height,
            list(range(len(agents))))
    return run.finish(cake, walls3_container(cake), "square")


def divide_staircase(s: Staircase, agents: Sequence, strict: bool = False) -> Allocation:
    """Squares in a staircase with k corners; at least 1/(2n-2+k) each."""
    _check_agents(agents)
    if s.is_empty:
        raise PreconditionError("staircase has no corners")
    run = _Run("staircase", agents, strict)
    _staircase(run, Frame(), s, list(range(len(agents))))
    return run.finish(s, s, "square")


def divide_halfplane(agents: Sequence, strict: bool = False) -> Allocation:
    """Squares in the half-plane y >= 0; at least 1/(2n-2) each."""
    _check_agents(agents, 2)
    run = _Run("halfplane", agents, strict)
    _halfplane(run, Frame(), list(range(len(agents))))
    return run.finish(UPPER_HALF_PLANE, UPPER_HALF_PLANE, "square")


def divide_plane(agents: Sequence, strict: bool = False) -> Allocation:
    """Squares in the whole plane for n >= 4 players; at least 1/(2n-4) each."""
    _check_agents(agents, 4)
    run = _Run("plane", agents, strict)
    _plane(run, Frame(), list(range(len(agents))))
    return run.finish(PLANE, PLANE, "square")


def divide_rectangle_1d(cake: Rect, agents: Sequence, strict: bool = False) -> Allocation:
    """West-anchored strips; at least 1/n each."""
    _check_agents(agents)
    if not cake.is_finite:
        raise PreconditionError("cake must be bounded")
    run = _Run("rectangle", agents, strict)
    _rectangle(run, cake, list(range(len(agents))))
    return run.finish(cake, cake, "rectangle")


def divide_archipelago(islands: Sequence[Rect], agents: Sequence, strict: bool = False) -> Allocation:
    """Rectangles from m disjoint islands; at least 1/(n+m-1) each."""
    _check_agents(agents)
    islands = tuple(islands)
    if not islands:
        raise PreconditionError("archipelago needs at least one island")
    region = RectilinearRegion(islands)
    if abs(region.area - sum(r.area for r in islands)) != 0:
        raise PreconditionError("islands overlap")
    run = _Run("archipelago", agents, strict)
    players = list(range(len(agents)))
    query = EvalQuery("archipelago", "islands", len(players), region.bbox, Frame(), islands)
    answers = run.ask(query, players)
    live = [p for p in players if p in answers]
    groups = _rooms(answers, live, len(islands)) if live else [[] for _ in islands]
    run.log(query, answers, groups=groups)
    for island, g in zip(islands, groups):
        _rectangle(run, island, g)
    return run.finish(region, region, "rectangle")


def divide_two_player_square(cake: Rect, agents: Sequence, strict: bool = False) -> Allocation:
    """Two players: smallest corner square wins, the other takes a square from the L-shape."""
    if len(agents) != 2:
        raise UnsupportedPlayerCount("this protocol is for exactly two players")
    if not (cake.is_finite and cake.is_square):
        raise PreconditionError("cake must be a bounded square")
    run = _Run("two_square", agents, strict)
    frame = Frame(cake.x_min, cake.y_min, cake.width)
    query = CornerSquareQuery("two_square", "corner", 2, UNIT, frame, HALF)
    answers = run.ask(query, [0, 1])
    live = [p for p in (0, 1) if p in answers]
    if live:
        winner = min(live, key=lambda p: (answers[p].side, p))
        bid = answers[winner]
        (u, v), (sx, sy) = CORNERS[bid.corner]
        x0, x1 = sorted((Fraction(u), u + sx * bid.side))
        y0, y1 = sorted((Fraction(v), v + sy * bid.side))
        square = Rect(x0, y0, x1, y1)
        run.log(query, answers, winner=winner, corner=bid.corner, side=fmt(bid.side))
        run.give(winner, frame, square)
        for other in live:
            if other != winner:
                options = [sq.to_rect() for sq in
                           l_shape_cover(region_subtract(RectilinearRegion((UNIT,)), square))]
                i = _choose(run, "two_square", "cover", frame, UNIT, other, options)
                if i is not None:
                    run.give(other, frame, options[i])
    return run.finish(cake, cake, "square")


PROTOCOLS = {
    "square": divide_square_to_squares,
    "fat": divide_2fat,
    "walls4": divide_4walls,
    "walls3": divide_3walls,
    "staircase": divide_staircase,
    "halfplane": divide_halfplane,
    "plane": divide_plane,
    "rectangle": divide_rectangle_1d,
    "archipelago": divide_archipelago,
    "two_square": divide_two_player_square,
}


def guarantee(protocol: str, n: int, k: int = 1, m: int = 1) -> Fraction:
    """Fraction of their own total value every honest player is promised."""
    table = {
        "square": lambda: max(1, 6 * n - 8),
        "fat": lambda: max(1, 4 * n - 5),
        "walls4": lambda: max(2, 4 * n - 4),
        "walls3": lambda: max(1, 4 * n - 5),
        "staircase": lambda: 2 * n - 2 + k,
        "halfplane": lambda: 2 * n - 2,
        "plane": lambda: 2 * n - 4,
        "rectangle": lambda: n,
        "archipelago": lambda: n + m - 1,
        "two_square": lambda: 4,
    }
    if protocol not in table:
        raise ValueError(f"unknown protocol {protocol!r}")
    return Fraction(1, table[protocol]())
