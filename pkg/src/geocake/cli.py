"""Command-line front end: ``geocake divide | bounds | pools | verify``.

Exit codes: 0 success, 1 failed check, 2 malformed input, 3 unmet
protocol precondition.
"""

from __future__ import annotations

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Optional

import click

from . import bounds as B
from .agents import HonestAgent, ProtocolRuleViolation, adversarial_agent
from .geometry import (GeometryError, Rect, RectilinearRegion, Square, Staircase,
                       fmt, q, region_from_polygon)
from .measure import PiecewiseUniformMeasure
from .protocols import (PLANE, PROTOCOLS, UPPER_HALF_PLANE, PreconditionError,
                        UnsupportedPlayerCount, guarantee, walls3_container)
from .render import render_allocation, render_pools

EXIT_OK, EXIT_FAIL, EXIT_SCHEMA, EXIT_PRECONDITION = 0, 1, 2, 3

FAMILY = {"fat": "fat", "rectangle": "rectangles", "archipelago": "rectangles"}
CAKE_KINDS = {
    "square": ("square", "fat", "walls4", "two_square", "rectangle"),
    "rect": ("fat", "walls4", "walls3", "rectangle", "square", "two_square"),
    "staircase": ("staircase",),
    "halfplane": ("halfplane",),
    "plane": ("plane",),
    "islands": ("archipelago",),
    "rectilinear": ("archipelago",),
}


class SchemaError(ValueError):
    pass


# ---------------------------------------------------------------------------
# instance files

def _rect(d) -> Rect:
    if isinstance(d, dict):
        return Rect.from_json(d)
    if isinstance(d, (list, tuple)) and len(d) == 4:
        return Rect(*(q(v) for v in d))
    raise SchemaError(f"bad rectangle {d!r}")


def parse_cake(d: dict):
    """Cake object from its descriptor."""
    kind = d.get("kind")
    if kind == "square":
        if "rect" in d:
            return _rect(d["rect"])
        s = q(d.get("side", 1))
        return Rect(0, 0, s, s)
    if kind == "rect":
        if "rect" in d:
            return _rect(d["rect"])
        return Rect(0, 0, q(d["L"]), 1)
    if kind == "staircase":
        return Staircase(tuple((q(x), q(y)) for x, y in d["corners"]))
    if kind == "halfplane":
        return UPPER_HALF_PLANE
    if kind == "plane":
        return PLANE
    if kind in ("islands", "rectilinear"):
        if "polygon" in d:
            return region_from_polygon([(q(x), q(y)) for x, y in d["polygon"]]).rects
        return tuple(_rect(r) for r in d["rects"])
    raise SchemaError(f"unknown cake kind {kind!r}")


def _support_inside(m: PiecewiseUniformMeasure, cake) -> bool:
    for r, dens in m.cells:
        if not dens:
            continue
        if isinstance(cake, Rect):
            ok = cake.contains(r)
        elif isinstance(cake, tuple):
            ok = RectilinearRegion(cake).contains_rect(r)
        else:
            ok = cake.contains_rect(r)
        if not ok:
            return False
    return True


class Instance:
    """A parsed instance file."""

    def __init__(self, data: dict, seed: Optional[int] = None):
        try:
            self.protocol = data["protocol"]
            if self.protocol not in PROTOCOLS:
                raise SchemaError(f"unknown protocol {self.protocol!r}")
            self.cake_desc = data["cake"]
            self.cake = parse_cake(self.cake_desc)
            kind = self.cake_desc["kind"]
            if self.protocol not in CAKE_KINDS.get(kind, ()):
                raise SchemaError(f"protocol {self.protocol} does not take a {kind} cake")
            self.family = data.get("family", FAMILY.get(self.protocol, "squares"))
            if self.family != FAMILY.get(self.protocol, "squares"):
                raise SchemaError(f"protocol {self.protocol} produces {FAMILY.get(self.protocol, 'squares')}")
            self.seed = int(data.get("seed", 0) if seed is None else seed)
            players = data["players"]
            if not isinstance(players, list):
                raise SchemaError("players must be a list")
            self.measures, self.kinds = [], []
            for i, p in enumerate(players):
                m = PiecewiseUniformMeasure.from_json(p["measure"])
                if not self._inside(m):
                    raise SchemaError(f"player {i}'s value lies outside the cake")
                self.measures.append(m)
                self.kinds.append(p.get("agent", "honest"))
            self.agents = [self._agent(k, m, i) for i, (k, m) in enumerate(zip(self.kinds, self.measures))]
        except SchemaError:
            raise
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise SchemaError(f"malformed instance: {e}") from e

    def _inside(self, m: PiecewiseUniformMeasure) -> bool:
        return _support_inside(m, self.cake)

    def _agent(self, kind: str, m: PiecewiseUniformMeasure, i: int):
        if kind == "honest":
            return HonestAgent(m)
        if kind == "adversarial":
            return adversarial_agent(self.seed * 1000 + i)
        if kind.startswith("adversarial:"):
            return adversarial_agent(int(kind.split(":", 1)[1]) + self.seed * 1000)
        raise SchemaError(f"unknown agent kind {kind!r}")

    @property
    def honest(self) -> list:
        return [i for i, k in enumerate(self.kinds) if k == "honest"]

    @property
    def value_cake(self):
        return RectilinearRegion(self.cake) if isinstance(self.cake, tuple) else self.cake

    @property
    def container(self):
        if self.protocol == "walls3":
            return walls3_container(self.cake)
        return self.value_cake

    def bound(self) -> Fraction:
        n = len(self.measures)
        k = self.cake.k if isinstance(self.cake, Staircase) else 1
        m = len(self.cake) if isinstance(self.cake, tuple) else 1
        return guarantee(self.protocol, n, k=k, m=m)

    def run(self, strict: bool = False):
        fn = PROTOCOLS[self.protocol]
        if self.protocol in ("halfplane", "plane"):
            return fn(self.agents, strict=strict)
        return fn(self.cake, self.agents, strict=strict)


def load_instance(path: str, seed: Optional[int] = None) -> Instance:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise SchemaError(f"cannot read instance: {e}") from e
    if not isinstance(data, dict):
        raise SchemaError("instance must be a JSON object")
    return Instance(data, seed)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _fail(code: int, msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


# ---------------------------------------------------------------------------
# divide

def divide_instance(inst: Instance, strict: bool = False) -> tuple:
    """Run an instance; returns (allocation JSON, transcript JSON, exit code, allocation)."""
    alloc = inst.run(strict)
    bound = inst.bound()
    report = B.verify_allocation(alloc.pieces, inst.measures, bound, inst.family,
                                 cake=inst.value_cake, container=inst.container,
                                 players=inst.honest)
    out = {"protocol": inst.protocol, "family": inst.family, "n": len(inst.measures),
           "bound": fmt(bound), "bound_decimal": float(bound),
           "pieces": alloc.pieces_json(), "honest": inst.honest,
           "forfeits": sorted(alloc.forfeits)}
    rep = report.to_json()
    for key in ("proportions", "proportions_decimal", "pass", "failures"):
        out[key] = rep[key]
    return out, alloc.transcript(), (EXIT_OK if report.passed else EXIT_FAIL), alloc


def _write(path: str, text: str) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text)


def _parent(path: str) -> str:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    return path


def _divide_one(path: str, out: Optional[str], transcript: Optional[str], svg: Optional[str],
                seed: Optional[int], strict: bool) -> tuple:
    try:
        inst = load_instance(path, seed)
    except (SchemaError, GeometryError) as e:
        return EXIT_SCHEMA, f"{path}: {e}"
    try:
        result, trans, code, alloc = divide_instance(inst, strict)
    except (UnsupportedPlayerCount, PreconditionError) as e:
        return EXIT_PRECONDITION, f"{path}: {e}"
    except ProtocolRuleViolation as e:
        return EXIT_FAIL, f"{path}: rule violation: {e}"
    text = _dump(result)
    if out is None:
        click.echo(text, nl=False)
    else:
        _write(out, text)
        transcript = transcript or str(Path(out).with_suffix(".transcript.json"))
        svg = svg or str(Path(out).with_suffix(".svg"))
    if transcript:
        _write(transcript, _dump(trans))
    if svg:
        render_allocation(_parent(svg), inst.value_cake, alloc.pieces, inst.measures,
                          title=f"{inst.protocol}, n={len(inst.measures)}, bound {fmt(inst.bound())}")
    return code, None if code == EXIT_OK else f"{path}: guarantee not met"


def _divide_job(args: tuple) -> tuple:
    return _divide_one(*args)


@click.group()
def main() -> None:
    """Divide two-dimensional cakes into square or fat pieces and check bounds."""


@main.command()
@click.argument("instance", type=click.Path(exists=True))
@click.option("--out", "out", type=click.Path(), help="Allocation JSON (a directory for corpus runs).")
@click.option("--transcript", type=click.Path(), help="Transcript JSON path.")
@click.option("--svg", type=click.Path(), help="SVG rendering path.")
@click.option("--seed", type=int, default=None, help="Seed for adversarial agents.")
@click.option("--strict", is_flag=True, help="Abort on the first rule violation.")
@click.option("--jobs", type=int, default=1, show_default=True, help="Parallel runs for a corpus directory.")
def divide(instance, out, transcript, svg, seed, strict, jobs) -> None:
    """Run the instance's protocol and report each player's share."""
    src = Path(instance)
    if not src.is_dir():
        code, msg = _divide_one(instance, out, transcript, svg, seed, strict)
        if msg:
            click.echo(f"error: {msg}" if code != EXIT_OK else msg, err=True)
        sys.exit(code)
    if out is None:
        _fail(EXIT_SCHEMA, "corpus runs need --out DIRECTORY")
    dest = Path(out)
    dest.mkdir(parents=True, exist_ok=True)
    files = sorted(src.glob("*.json"))
    args = [(str(f), str(dest / f.name), None, None, seed, strict) for f in files]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_divide_job, args))
    else:
        results = [_divide_job(a) for a in args]
    worst = 0
    for f, (code, msg) in zip(files, results):
        click.echo(f"{f.name}: exit {code}" + (f" ({msg})" if msg else ""))
        worst = max(worst, code)
    sys.exit(worst)


# ---------------------------------------------------------------------------
# bounds

@main.command()
@click.argument("cake")
@click.argument("family")
@click.argument("n", type=int)
@click.option("--k", type=int, default=None, help="Corners / independence number.")
@click.option("--L", "L", default=None, help="Aspect of an L x 1 rectangle.")
@click.option("--R", "R", default=None, help="Fatness bound.")
@click.option("--d", type=int, default=None, help="Cube dimension.")
@click.option("--delta", type=int, default=None, help="Unbounded cube sides.")
@click.option("--json", "as_json", is_flag=True, help="Print JSON instead of text.")
def bounds(cake, family, n, k, L, R, d, delta, as_json) -> None:
    """Print the lower and upper proportionality bounds for one row."""
    try:
        pb = B.prop_bound(cake, family, n, k=k, L=None if L is None else q(L),
                          R=None if R is None else q(R), d=d, delta=delta)
    except (KeyError, ValueError) as e:
        _fail(EXIT_SCHEMA, str(e).strip("'\""))
    if as_json:
        click.echo(_dump(pb.to_json()), nl=False)
        return
    lo = "?" if pb.lower is None else fmt(pb.lower)
    click.echo(f"lower {lo} upper {fmt(pb.upper)}")
    lo_d = "?" if pb.lower is None else f"{float(pb.lower):.6f}"
    click.echo(f"decimal lower {lo_d} upper {float(pb.upper):.6f}")
    if pb.upper_only:
        click.echo("note: upper bound only; no division procedure for this row here")


# ---------------------------------------------------------------------------
# pools

LSHAPE = ((1, 0), (1, 1), (0, 1), (0, 5), (5, 5), (5, 2), (4, 2), (4, 0))
LSHAPE_POOLS = ((Fraction(11, 10), Fraction(1, 10), Fraction(1, 5)),
                (Fraction(1, 10), Fraction(11, 10), Fraction(1, 5)),
                (Fraction(47, 10), Fraction(21, 10), Fraction(1, 5)))


def lshape_instance(n: int, eps=B.DEFAULT_EPSILON) -> B.PoolInstance:
    """Built-in rectilinear example with three independent pools and a notch corner."""
    return B.pools_rectilinear(region_from_polygon(LSHAPE), n, eps,
                               [Square(*p) for p in LSHAPE_POOLS], corner=(1, 0))


@main.command()
@click.argument("cake", type=click.Choice(["quarterplane", "square", "rectilinear"]))
@click.argument("n", type=int)
@click.option("--eps", default=None, help="Relative pool size (default 1/64).")
@click.option("--region", type=click.Path(exists=True),
              help="JSON {polygon, independent_set} for rectilinear cakes (default: built-in L-shape).")
@click.option("--certify", is_flag=True, help="Count disjoint two-pool squares exactly.")
@click.option("--out", type=click.Path(), help="Instance JSON path.")
@click.option("--svg", type=click.Path(), help="SVG rendering path.")
def pools(cake, n, eps, region, certify, out, svg) -> None:
    """Generate a water-pool instance behind an upper bound."""
    eps = B.DEFAULT_EPSILON if eps is None else q(eps)
    try:
        if cake == "quarterplane":
            inst = B.pools_quarterplane(n, eps)
        elif cake == "square":
            inst = B.pools_square(n, eps)
        elif region is None:
            inst = lshape_instance(n, eps)
        else:
            desc = json.loads(Path(region).read_text())
            poly = region_from_polygon([(q(x), q(y)) for x, y in desc["polygon"]])
            ind = [Square(*(q(v) for v in p)) for p in desc["independent_set"]]
            inst = B.pools_rectilinear(poly, n, eps, ind, desc.get("corner"))
    except (KeyError, TypeError, json.JSONDecodeError) as e:
        _fail(EXIT_SCHEMA, f"malformed region file: {e}")
    except (ValueError, GeometryError) as e:
        _fail(EXIT_PRECONDITION, str(e))
    data = inst.to_json()
    data["n"] = n
    data["pool_count"] = len(inst.pools)
    code = EXIT_OK
    if certify:
        try:
            count = B.max_disjoint_two_pool_squares(inst)
        except B.SizeLimit as e:
            _fail(EXIT_PRECONDITION, f"size limit: {e}")
        data["certified_count"] = count
        data["certified"] = count <= n - 1
        code = EXIT_OK if count <= n - 1 else EXIT_FAIL
    text = _dump(data)
    if out:
        _write(out, text)
        svg = svg or str(Path(out).with_suffix(".svg"))
    else:
        click.echo(text, nl=False)
    if svg:
        render_pools(_parent(svg), inst.cake, inst.rects, title=f"{cake}, n={n}, {len(inst.pools)} pools")
    sys.exit(code)


# ---------------------------------------------------------------------------
# verify

@main.command()
@click.argument("allocation", type=click.Path(exists=True))
@click.argument("instance", type=click.Path(exists=True))
@click.option("--bound", default=None, help="Required share (default: the protocol's guarantee).")
def verify(allocation, instance, bound) -> None:
    """Re-check an allocation file against its instance."""
    try:
        inst = load_instance(instance)
        data = json.loads(Path(allocation).read_text())
        pieces = [None if p is None else _rect(p) for p in data["pieces"]]
        need = inst.bound() if bound is None else q(bound)
    except (SchemaError, GeometryError, OSError, json.JSONDecodeError, KeyError, TypeError,
            ValueError) as e:
        _fail(EXIT_SCHEMA, str(e))
    if len(pieces) != len(inst.measures):
        _fail(EXIT_SCHEMA, "allocation and instance disagree on the number of players")
    report = B.verify_allocation(pieces, inst.measures, need, inst.family, cake=inst.value_cake,
                                 container=inst.container, players=inst.honest)
    click.echo(_dump(report.to_json()), nl=False)
    for f in report.failures:
        click.echo(f, err=True)
    sys.exit(EXIT_OK if report.passed else EXIT_FAIL)


if __name__ == "__main__":
    main()
