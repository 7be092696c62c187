"""Command-line front end.

    kthresh analyze FILE --class C [--svg OUT] [--layers a,b]
    kthresh enumerate --n N --class C [--count-only]
    kthresh verify --suite NAME [--n-max N] [--seed S] [--samples K]
    kthresh family --n N [--out FILE] [--svg FILE]
    kthresh count-mts FILE --class C [--cap K]

Exit status: 0 success, 1 domain error (message on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import suites
from .classes import (
    ClassSpec,
    enumerate_class,
    essential_bruteforce,
    is_polytopal,
    minimal_teaching_sets,
)
from .core import GridFunction, GridSpec, KThreshError, dump_function, parse_function
from .geometry import POLYGON
from .svg import LAYERS, parse_layers, render_svg
from .teaching import d_set, delta_region, essential_polytopal, hull_polygon, pick_check, vertices
from .twothreshold import distinguishing_count, family_fn, g2_witness, theorem9_teaching_set


class UsageError(Exception):
    pass


def parse_class(text: str, grid: GridSpec) -> ClassSpec:
    if text == "threshold":
        return ClassSpec.threshold(grid)
    if text == "2threshold":
        return ClassSpec.kthreshold(grid, 2)
    if text == "polytopal":
        return ClassSpec.polytopal(grid)
    if text.startswith("kthreshold:"):
        try:
            k = int(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad class {text!r}: k must be an integer") from None
        if k < 1:
            raise UsageError(f"bad class {text!r}: k must be >= 1")
        return ClassSpec.kthreshold(grid, k)
    raise UsageError(f"unknown class {text!r}; use threshold, 2threshold, kthreshold:<k> or polytopal")


def _sorted_points(pts) -> list[list[int]]:
    return [list(p) for p in sorted(tuple(p) for p in pts)]


@dataclass
class AnalysisDocument:
    function: dict
    cls: str
    vertices: list = field(default_factory=list)
    d_set: list = field(default_factory=list)
    delta: list = field(default_factory=list)
    essential: list = field(default_factory=list)
    sigma: int | None = None
    j_count: int | None = None
    checks: dict = field(default_factory=dict)

    def to_json(self) -> str:
        data = asdict(self)
        data["class"] = data.pop("cls")
        return json.dumps(data, sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> AnalysisDocument:
        data = json.loads(text)
        data["cls"] = data.pop("class")
        return cls(**data)


def analyze(f: GridFunction, spec: ClassSpec) -> AnalysisDocument:
    doc = AnalysisDocument(json.loads(dump_function(f)), str(spec))
    polytopal = is_polytopal(f)
    doc.checks["is_polytopal"] = polytopal
    if len(f):
        doc.vertices = _sorted_points(vertices(f))
        doc.d_set = _sorted_points(d_set(f))
    if f.grid.d == 2 and len(f) >= 3 and hull_polygon(f).kind == POLYGON:
        doc.delta = _sorted_points(delta_region(f))
        doc.checks["d_set_equals_delta_zeros"] = set(map(tuple, doc.d_set)) == {x for x in delta_region(f) if not f(x)}
        doc.checks["pick"] = pick_check(f)
    if spec.k is None:
        if not polytopal:
            raise KThreshError(f"function is not a member of {spec}")
        rep = essential_polytopal(f)
        doc.essential = _sorted_points(rep.essential)
        doc.sigma, doc.j_count = rep.sigma, rep.j_count
        return doc
    cls = enumerate_class(spec)
    if f.mask not in cls.members:
        raise KThreshError(f"function is not a member of {spec}")
    doc.essential = _sorted_points(essential_bruteforce(f, cls))
    mts = minimal_teaching_sets(f, cls)
    doc.sigma, doc.j_count = mts.sigma, mts.j_count
    return doc


def _read_function(path: str) -> GridFunction:
    return parse_function(Path(path).read_text(encoding="utf-8"))


def cmd_analyze(args, out) -> int:
    f = _read_function(args.file)
    doc = analyze(f, parse_class(args.cls, f.grid))
    if args.svg:
        layers = parse_layers(args.layers)
        Path(args.svg).write_text(render_svg(f, layers, essential=map(tuple, doc.essential)), encoding="utf-8")
    print(doc.to_json(), file=out)
    return 0


def cmd_enumerate(args, out) -> int:
    grid = GridSpec(2, args.n)
    cls = enumerate_class(parse_class(args.cls, grid))
    if args.count_only:
        print(len(cls), file=out)
    else:
        for f in cls.functions():
            print(dump_function(f), file=out)
    return 0


def cmd_verify(args, out) -> int:
    name = args.suite
    kwargs = {}
    if args.n_max is not None:
        if name in ("m1", "perimeter", "family"):
            raise UsageError(f"--n-max does not apply to suite {name}")
        kwargs["n_max"] = args.n_max
    if name == "perimeter":
        if args.seed is None:
            raise UsageError("suite perimeter requires --seed")
        kwargs["seed"] = args.seed
        if args.samples is not None:
            kwargs["samples"] = args.samples
    elif args.seed is not None or args.samples is not None:
        raise UsageError("--seed and --samples only apply to suite perimeter")
    rep = suites.SUITES[name](**kwargs)
    print("\n".join(rep.lines()), file=out)
    return 0 if rep.ok else 1


def cmd_family(args, out) -> int:
    inst = family_fn(args.n)
    T = theorem9_teaching_set(inst.f, inst.pair)
    count = distinguishing_count(inst)
    g2_witness(inst)
    summary = {
        "n": inst.n,
        "m": inst.m,
        "s0_f1": _sorted_points(inst.s0_f1),
        "s1_f1": _sorted_points(inst.s1_f1),
        "s0_f2": _sorted_points(inst.s0_f2),
        "s1_f2": _sorted_points(inst.s1_f2),
        "teaching_set": _sorted_points(T),
        "region_R": _sorted_points(inst.region_R.vertices),
        "segment_L": _sorted_points(inst.segment_L),
        "distinguishing_count": count,
        "j_count_lower_bound": count,
    }
    if args.out:
        Path(args.out).write_text(dump_function(inst.f) + "\n", encoding="utf-8")
    if args.svg:
        Path(args.svg).write_text(render_svg(inst.f, LAYERS, essential=T), encoding="utf-8")
    print(json.dumps(summary, sort_keys=True, indent=2), file=out)
    return 0


def cmd_count_mts(args, out) -> int:
    f = _read_function(args.file)
    spec = parse_class(args.cls, f.grid)
    cls = enumerate_class(spec)
    if f.mask not in cls.members:
        raise KThreshError(f"function is not a member of {spec}")
    res = minimal_teaching_sets(f, cls, mode="enumerate", cap=args.cap)
    doc = {"class": str(spec), "j_count": res.j_count, "sigma": res.sigma,
           "witnesses": [_sorted_points(w) for w in res.witnesses]}
    print(json.dumps(doc, sort_keys=True, indent=2), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kthresh", description="Teaching sets of k-threshold functions on integer grids.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="essential points and teaching-set data of one function")
    a.add_argument("file")
    a.add_argument("--class", dest="cls", default="polytopal")
    a.add_argument("--svg")
    a.add_argument("--layers", default=",".join(LAYERS))
    a.set_defaults(run=cmd_analyze)

    e = sub.add_parser("enumerate", help="list or count the members of a class")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--class", dest="cls", required=True)
    e.add_argument("--count-only", action="store_true")
    e.set_defaults(run=cmd_enumerate)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=sorted(suites.SUITES))
    v.add_argument("--n-max", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--samples", type=int)
    v.set_defaults(run=cmd_verify)

    fam = sub.add_parser("family", help="the quadratic family f^(n)")
    fam.add_argument("--n", type=int, required=True)
    fam.add_argument("--out")
    fam.add_argument("--svg")
    fam.set_defaults(run=cmd_family)

    c = sub.add_parser("count-mts", help="count minimal teaching sets by brute force")
    c.add_argument("file")
    c.add_argument("--class", dest="cls", required=True)
    c.add_argument("--cap", type=int, default=16)
    c.set_defaults(run=cmd_count_mts)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.run(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except (KThreshError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
