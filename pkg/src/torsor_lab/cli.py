"""torsor-lab: command-line front end writing JSON reports (and CSV for counts)."""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import arithmetic_count as ac
from . import cohomology as co
from . import gamma_scheme as gs
from . import heights as ht
from . import structure as st
from .errors import BoundExceeded, ValidationError
from .model_io import Model, load_model

SUBCOMMANDS = ("h1", "connected", "invariants", "exponent", "semicommutative",
               "hypersolvable", "twist", "count", "fit")

EXIT_OK, EXIT_INVALID, EXIT_BOUND = 0, 2, 3


@dataclass
class RunConfig:
    subcommand: str
    model: Optional[str] = None
    counting: str = "natural"
    counting_file: Optional[str] = None
    cocycle: Optional[str] = None
    family: Optional[str] = None          # quadratic | kummer
    m: int = 3
    bound: Optional[str] = None
    csv_out: Optional[str] = None
    csv_in: Optional[str] = None
    output: Optional[str] = None
    timestamp: bool = True
    verbose: int = 0
    extra: dict = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        if self.subcommand not in SUBCOMMANDS:
            raise ValidationError(f"unknown subcommand {self.subcommand!r}")
        needs_model = self.subcommand not in ("count", "fit")
        if needs_model:
            if not self.model:
                raise ValidationError(f"{self.subcommand} needs --model")
            if not self.model.startswith("builtin:") and not Path(self.model).exists():
                raise ValidationError(f"model file {self.model} does not exist")
        if self.counting == "file":
            if not self.counting_file or not Path(self.counting_file).exists():
                raise ValidationError("--counting file needs an existing --counting-file")
        elif self.counting not in ("natural", "regular"):
            raise ValidationError(f"unknown counting function {self.counting!r}")
        if self.subcommand in ("connected", "twist") and self.cocycle is None:
            raise ValidationError(f"{self.subcommand} needs --cocycle")
        if self.subcommand == "count":
            if self.family not in ("quadratic", "kummer"):
                raise ValidationError("count needs 'quadratic' or 'kummer'")
            if self.bound is None:
                raise ValidationError("count needs --bound")
            try:
                positive = float(Fraction(str(self.bound))) > 0 if "e" not in str(self.bound).lower() \
                    else float(self.bound) > 0
            except (ValueError, ZeroDivisionError):
                raise ValidationError(f"--bound {self.bound!r} is not a number")
            if not positive:
                raise ValidationError("--bound must be positive")
        if self.subcommand == "fit" and (not self.csv_in or not Path(self.csv_in).exists()):
            raise ValidationError("fit needs an existing --csv file")
        return self


# serialization ------------------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}" if obj.denominator != 1 else str(obj.numerator)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item"):
        return obj.item()
    return obj


def dump_report(report: dict) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2)


def _parse_cocycle(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise ValidationError(f"cocycle {text!r} is not a comma-separated list of element ids")


def _counting(cfg: RunConfig, model: Model) -> ht.CountingFunction:
    """natural: the model's embedding, else G's own permutations, else the regular representation."""
    GG = model.gg
    if cfg.counting == "regular":
        return ht.regular_index_function(GG)
    if cfg.counting == "file":
        try:
            doc = json.loads(Path(cfg.counting_file).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValidationError(f"counting file is not valid JSON: {exc}")
        values = doc["values"] if isinstance(doc, dict) else doc
        return ht.counting_function(GG, [Fraction(str(v)) for v in values])
    if model.embedding is None and not GG.G.is_permutation_group():
        return ht.regular_index_function(GG)
    return ht.malle_index_function(GG, model.embedding)


def _star_report(GG) -> dict:
    star = gs.g_star(GG)
    return {"points": [list(p) for p in star.points], "orbits": [list(o) for o in star.orbits()]}


# subcommands ----------------------------------------------------------------------

def _cmd_h1(cfg, model):
    h = co.h1_classes(model.gg)
    return {"cocycles": len(h.cocycles), "classes": len(h),
            "class_sizes": [len(c) for c in h.classes],
            "representatives": [list(h.representative(i).values) for i in range(len(h))],
            "connected": [co.is_connected(h.representative(i)) for i in range(len(h))]}


def _cmd_connected(cfg, model):
    x = co.Cocycle(model.gg, _parse_cocycle(cfg.cocycle))
    T = co.torsor_set(x)
    return {"cocycle": list(x.values), "connected": T.is_transitive,
            "orbits": [list(o) for o in T.orbits()],
            "constant_images_generate": co.constant_images_generate(x)}


def _cmd_invariants(cfg, model):
    c = _counting(cfg, model)
    inv = ht.invariants_of(c)
    out = inv.report()
    out.update({"counting": cfg.counting, "values": list(c.values), "g_star": _star_report(model.gg)})
    return out


def _cmd_exponent(cfg, model):
    c = _counting(cfg, model)
    a, dec = st.lower_bound_exponent(model.gg, c)
    return {"exponent": a, "a": ht.invariants_of(c).a, "decomposition": dec.report(),
            "counting": cfg.counting}


def _cmd_semicommutative(cfg, model):
    w = st.is_semicommutative(model.gg)
    return {"semicommutative": w is not None, "tower": None if w is None else w.as_lists()}


def _cmd_hypersolvable(cfg, model):
    h = st.is_hypersolvable(model.gg)
    return {"hypersolvable": h is not None,
            "chain": None if h is None else h.as_lists(),
            "orders": None if h is None else list(h.orders)}


def _cmd_twist(cfg, model):
    GG = model.gg
    sigma = co.Cocycle(GG, _parse_cocycle(cfg.cocycle))
    tw = gs.twist(GG, sigma)
    before, after = co.h1_classes(GG), co.h1_classes(tw)
    out = {"sigma": list(sigma.values), "action": [list(p) for p in tw.act],
           "cocycles": [len(before.cocycles), len(after.cocycles)],
           "classes": [len(before), len(after)],
           "lambda_on_classes": list(co.lambda_sigma_on_classes(sigma))}
    if GG.G.order > 1:
        c = _counting(cfg, model)
        out["invariants"] = [ht.invariants_of(c).report(),
                             ht.invariants_of(ht.transport_to_twist(c, tw)).report()]
    return out


def _cmd_count(cfg, model):
    bounds = ac.decade_bounds(cfg.bound)
    if cfg.family == "quadratic":
        rows = ac.quadratic_counts(bounds)
    else:
        rows = ac.kummer_counts(cfg.m, bounds)
    if cfg.csv_out:
        with open(cfg.csv_out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["B", "total", "connected"])
            for r in rows:
                w.writerow([r.bound, r.total, r.connected])
    out = {"family": cfg.family,
           "rows": [{"B": r.bound, "total": r.total, "connected": r.connected} for r in rows]}
    if cfg.family == "kummer":
        out["m"] = cfg.m
    last = rows[-1]
    out.update({"bound": last.bound, "total": last.total, "connected": last.connected})
    return out


def read_count_csv(path) -> list[tuple[int, int]]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    try:
        return [(int(r["B"]), int(r["connected"])) for r in rows]
    except (KeyError, ValueError) as exc:
        raise ValidationError(f"CSV needs integer columns B, total, connected: {exc}")


def _cmd_fit(cfg, model):
    samples = [(b, n) for b, n in read_count_csv(cfg.csv_in) if b > 2]
    return ac.fit_growth(samples).report()


_DISPATCH = {"h1": _cmd_h1, "connected": _cmd_connected, "invariants": _cmd_invariants,
             "exponent": _cmd_exponent, "semicommutative": _cmd_semicommutative,
             "hypersolvable": _cmd_hypersolvable, "twist": _cmd_twist,
             "count": _cmd_count, "fit": _cmd_fit}


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute one subcommand; returns (exit status, report)."""
    try:
        cfg.validate()
        model = load_model(cfg.model) if cfg.model else None
        report = _DISPATCH[cfg.subcommand](cfg, model)
        report["command"] = cfg.subcommand
        if model is not None and model.name:
            report["model"] = model.name
        status = EXIT_OK
    except BoundExceeded as exc:
        report, status = {"error": type(exc).__name__, "message": str(exc)}, EXIT_BOUND
    except (ValidationError, KeyError, TypeError) as exc:
        report, status = {"error": type(exc).__name__, "message": str(exc)}, EXIT_INVALID
    if cfg.timestamp:
        report["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat()
    return status, report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="torsor-lab", description=__doc__)
    p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")
    p.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="subcommand", required=True)

    def with_model(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--model", required=True, help="model JSON file or builtin:NAME")
        return sp

    with_model("h1", "enumerate H¹ classes")
    for name in ("connected", "twist"):
        sp = with_model(name, "connectedness of a torsor" if name == "connected" else "twist by a cocycle")
        sp.add_argument("--cocycle", required=True, help="comma-separated values x(γ) over Γ")
        if name == "twist":
            sp.add_argument("--counting", default="natural", choices=("natural", "regular", "file"))
            sp.add_argument("--counting-file")
    for name in ("invariants", "exponent"):
        sp = with_model(name, "a and b of a counting function" if name == "invariants"
                        else "lower-bound exponent")
        sp.add_argument("--counting", default="natural", choices=("natural", "regular", "file"))
        sp.add_argument("--counting-file")
    with_model("semicommutative", "decide semicommutativity")
    with_model("hypersolvable", "decide hypersolvability")

    sp = sub.add_parser("count", help="count torsors over Q by height")
    sp.add_argument("family", choices=("quadratic", "kummer"))
    sp.add_argument("--bound", required=True)
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--csv", dest="csv_out")

    sp = sub.add_parser("fit", help="fit log N = α log B + β log log B + c to a count CSV")
    sp.add_argument("--csv", dest="csv_in", required=True)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(subcommand=ns.subcommand, model=getattr(ns, "model", None),
                     counting=getattr(ns, "counting", "natural"),
                     counting_file=getattr(ns, "counting_file", None),
                     cocycle=getattr(ns, "cocycle", None), family=getattr(ns, "family", None),
                     m=getattr(ns, "m", 3), bound=getattr(ns, "bound", None),
                     csv_out=getattr(ns, "csv_out", None), csv_in=getattr(ns, "csv_in", None),
                     output=ns.output, timestamp=not ns.no_timestamp, verbose=ns.verbose)


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    status, report = run(cfg)
    text = dump_report(report) + "\n"
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
