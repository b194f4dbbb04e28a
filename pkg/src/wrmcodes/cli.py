"""Command line front end.

Subcommands: params, zeros, capability, decode, experiment.  Every command
reads an optional JSON config (``--config``); flags given on the command
line override config keys of the same name.  The resolved config is
validated with jsonschema and hashed into the provenance header, so the
same config and seed always produce byte-identical output.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from pathlib import Path

import jsonschema
import numpy as np

from . import __version__
from .codes import (CodeSpec, PointEnsemble, dominance_check, encode, footprint_distance,
                    make_monomial_set, wrm_curve)
from .ff import field_create
from .mvdec import NoCapability, decode_mv, max_errors
from .rsdec import (RSCode, gs_decode_rs, gs_parameters, joyner_code, joyner_decode,
                    subfield_subcode_decode)
from .tables import LAYOUTS, bound_for, cell, columns, sub_value
from .zeros import BOUND_KINDS, BoundKind, improvement_rows, mean_improvement, truncate

CSV_VERSION = "1"
INDEX_CONVENTION = "B-sets summed over i = 0..t"

# ---------------------------------------------------------------------------
# schemas

_FIELD = {
    "type": "object",
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "k": {"type": "integer", "minimum": 1},
        "modulus": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
    "required": ["p", "k"],
    "additionalProperties": False,
}

_CODE = {
    "type": "object",
    "properties": {
        "field": _FIELD,
        "sizes": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "ensemble": {"enum": ["standard", "multiplicative"]},
        "kind": {"enum": ["wrm", "qary_rm", "mcj", "hyperbolic", "joyner", "custom"]},
        "params": {"type": "object"},
        "label": {"type": "string"},
    },
    "required": ["field", "sizes", "kind"],
    "additionalProperties": False,
}

_COMMON = {
    "command": {"type": "string"},
    "out": {"type": ["string", "null"]},
    "format": {"enum": ["csv", "json"]},
    "seed": {"type": "integer", "minimum": 0, "maximum": 2 ** 64 - 1},
    "threads": {"type": "integer", "minimum": 1},
    "budget": {"type": ["number", "null"], "exclusiveMinimum": 0},
}

_INTLIST = {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1}

SCHEMAS = {
    "params": {
        "properties": {
            "preset": {"enum": ["distance8", "length1024", "64x8", "256x16", "custom"]},
            "codes": {"type": "array", "items": _CODE},
            "dominance_distances": _INTLIST,
        },
    },
    "zeros": {
        "properties": {
            "m": _INTLIST,
            "r": _INTLIST,
            "q": _INTLIST,
            "dump": {"type": "boolean"},
            "floored": {"type": "boolean"},
        },
    },
    "capability": {
        "properties": {
            "preset": {"enum": sorted(LAYOUTS)},
            "rows": {"type": "array", "items": {"type": "string", "pattern": r"^[0-9]+:(S|C|D|D2)$"}},
            "order": {"enum": ["swapped", "natural"]},
            "checkpoint": {"type": ["string", "null"]},
        },
        "required": ["preset"],
    },
    "decode": {
        "properties": {
            "decoder": {"enum": ["rs", "subfield", "joyner", "mv"]},
            "code": _CODE,
            "rs": {
                "type": "object",
                "properties": {"field": _FIELD, "n": {"type": "integer", "minimum": 1},
                               "k": {"type": "integer", "minimum": 1}},
                "required": ["field", "n", "k"],
                "additionalProperties": False,
            },
            "r": {"type": "integer", "minimum": 1},
            "errors": {"type": ["integer", "null"], "minimum": 0},
            "trials": {"type": "integer", "minimum": 1},
            "bound": {"enum": list(BOUND_KINDS)},
            "order": {"enum": ["swapped", "natural"]},
            "factor_budget": {"type": "integer", "minimum": 1},
        },
        "required": ["decoder"],
    },
    "experiment": {
        "properties": {
            "preset": {"enum": ["joyner"]},
            "r": _INTLIST,
            "weights": _INTLIST,
            "trials": {"type": "integer", "minimum": 1},
        },
    },
}

for _s in SCHEMAS.values():
    _s["type"] = "object"
    _s["properties"].update(_COMMON)
    _s["additionalProperties"] = False

DEFAULTS = {
    "params": {"preset": "distance8", "format": "csv", "seed": 0, "threads": 1, "budget": None, "out": None},
    "zeros": {"m": [2], "r": [2], "q": [2, 3, 4, 5, 7, 8], "dump": False, "floored": True,
              "format": "csv", "seed": 0, "threads": 1, "budget": None, "out": None},
    "capability": {"preset": "64x8", "order": "swapped", "checkpoint": None, "format": "csv",
                   "seed": 0, "threads": 1, "budget": None, "out": None},
    "decode": {"decoder": "rs", "r": 1, "errors": None, "trials": 10, "bound": "D", "order": "natural",
               "factor_budget": 10_000, "format": "json", "seed": 0, "threads": 1, "budget": None,
               "out": None},
    "experiment": {"preset": "joyner", "r": [1, 2, 3], "weights": list(range(12, 32)), "trials": 10,
                   "format": "csv", "seed": 0, "threads": 1, "budget": None, "out": None},
}

# keys that never change the content of the output
_NOT_HASHED = {"out", "threads", "budget", "checkpoint", "format"}


class BudgetExceeded(Exception):
    pass


def resolve_config(command: str, cfg_file: dict | None, flags: dict) -> dict:
    cfg = dict(DEFAULTS[command])
    if cfg_file:
        cfg.update(cfg_file)
    cfg.update({k: v for k, v in flags.items() if v is not None})
    cfg["command"] = command
    jsonschema.validate(cfg, SCHEMAS[command])
    return cfg


def config_hash(cfg: dict) -> str:
    core = {k: v for k, v in cfg.items() if k not in _NOT_HASHED}
    blob = json.dumps(core, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def provenance(cfg: dict, **extra) -> dict:
    out = {"tool": f"wrmcodes {__version__}", "csv_version": CSV_VERSION, "config_hash": config_hash(cfg),
           "index_convention": INDEX_CONVENTION}
    out.update(extra)
    return out


# ---------------------------------------------------------------------------
# output

class Table:
    def __init__(self, columns: list[str], prov: dict):
        self.columns = columns
        self.prov = prov
        self.rows: list[list] = []
        self.complete = True

    def add(self, *row):
        self.rows.append(list(row))

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"provenance": self.prov, "complete": self.complete,
                   "rows": [dict(zip(self.columns, r)) for r in self.rows]}
            return json.dumps(doc, indent=2, sort_keys=True) + "\n"
        buf = io.StringIO()
        for k in sorted(self.prov):
            buf.write(f"# {k}: {self.prov[k]}\n")
        if not self.complete:
            buf.write("# complete: false\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow(["" if x is None else x for x in r])
        return buf.getvalue()


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# code descriptors

def build_field(desc: dict):
    return field_create(desc["p"], desc["k"], desc.get("modulus"))


def build_code(desc: dict) -> CodeSpec:
    ctx = build_field(desc["field"])
    if desc.get("ensemble", "standard") == "multiplicative":
        ens = PointEnsemble.multiplicative(ctx, len(desc["sizes"]))
    else:
        ens = PointEnsemble.standard(ctx, desc["sizes"])
    M = make_monomial_set(desc["kind"], desc.get("params", {}), ens)
    return CodeSpec(M, ens)


def _code_label(desc: dict) -> str:
    if "label" in desc:
        return desc["label"]
    return f"{desc['kind']}{json.dumps(desc.get('params', {}), sort_keys=True)}@{'x'.join(map(str, desc['sizes']))}"


# ---------------------------------------------------------------------------
# params

DISTANCE8_CODES = [
    {"label": "8x8 total degree 7", "field": {"p": 2, "k": 4}, "sizes": [8, 8], "kind": "wrm",
     "params": {"u": 7, "w": [1, 1]}},
    {"label": "16x4 total degree 11", "field": {"p": 2, "k": 4}, "sizes": [16, 4], "kind": "wrm",
     "params": {"u": 11, "w": [1, 1]}},
    {"label": "16x4 weights (1,2) u 14", "field": {"p": 2, "k": 4}, "sizes": [16, 4], "kind": "wrm",
     "params": {"u": 14, "w": [1, 2]}},
]

LENGTH1024_GRIDS = [(32, 32), (64, 16), (128, 8), (256, 4), (512, 2)]


def cmd_params(cfg: dict) -> Table:
    preset = cfg["preset"]
    if preset == "length1024":
        return _params_length1024(cfg)
    if preset in LAYOUTS:
        lay = LAYOUTS[preset]
        t = Table(["column", "u", "dimension", "distance", "exact"], provenance(cfg, preset=preset))
        for col in columns(lay):
            t.add(col.label, col.u, len(col.monomials), col.distance, col.monomials.is_divisor_closed())
        return t
    descs = DISTANCE8_CODES if preset == "distance8" else cfg.get("codes", [])
    t = Table(["code", "n", "dimension", "distance", "exact"], provenance(cfg, preset=preset))
    for desc in descs:
        sizes = tuple(desc["sizes"])
        M = make_monomial_set(desc["kind"], desc.get("params", {}), sizes)
        n = int(np.prod(sizes))
        t.add(_code_label(desc), n, len(M), footprint_distance(M, sizes), M.is_divisor_closed())
    return t


def _params_length1024(cfg: dict) -> Table:
    t = Table(["grid", "u", "dimension", "distance"], provenance(cfg, preset="length1024", weights="optimal"))
    for s1, s2 in LENGTH1024_GRIDS:
        for u, k, d in wrm_curve(s1, s2):
            t.add(f"{s1}x{s2}", u, k, d)
    for d in cfg.get("dominance_distances", []):
        res = dominance_check(32, 32, 512, 2, d)
        t.add(f"dominance d={d}", res["verdict"], *res["dims"])
    return t


# ---------------------------------------------------------------------------
# zeros

def cmd_zeros(cfg: dict) -> Table:
    if cfg["dump"]:
        t = Table(["m", "r", "q", "exponent", "sz", "d", "improvement"], provenance(cfg, bound="D", order="natural"))
        for m in cfg["m"]:
            for r in cfg["r"]:
                for q in cfg["q"]:
                    for e, sz, d, imp in improvement_rows(m, r, q, cfg["floored"]):
                        t.add(m, r, q, " ".join(map(str, e)), str(sz), d, truncate(imp))
        return t
    t = Table(["m", "r", "q", "mean_truncated", "mean_exact"], provenance(cfg, bound="D", order="natural"))
    for m in cfg["m"]:
        for r in cfg["r"]:
            for q in cfg["q"]:
                x = mean_improvement(m, r, q, cfg["floored"])
                t.add(m, r, q, truncate(x), str(x))
    return t


# ---------------------------------------------------------------------------
# capability

def _parse_rows(cfg: dict, lay) -> list[tuple[int, str]]:
    if "rows" not in cfg:
        return list(lay.rows)
    out = []
    for s in cfg["rows"]:
        r, label = s.split(":")
        out.append((int(r), label))
    return out


def _cell_job(args):
    preset, ci, r, label, order = args
    lay = LAYOUTS[preset]
    col = columns(lay)[ci]
    return cell(lay, col, r, label, order)


def _load_checkpoint(path: str | None, h: str) -> dict:
    done = {}
    if path and Path(path).exists():
        for line in Path(path).read_text().splitlines():
            rec = json.loads(line)
            if rec.get("config_hash") == h:
                done[rec["key"]] = rec["value"]
    return done


def cmd_capability(cfg: dict) -> Table:
    lay = LAYOUTS[cfg["preset"]]
    order = cfg["order"]
    cols = columns(lay)
    rows = _parse_rows(cfg, lay)
    h = config_hash(cfg)
    prov = provenance(cfg, preset=lay.name, order=order,
                      bounds="S=SZ; C=closed form; D=recursive; D2=restricted recursion",
                      axis_order_for_C_D=("(i2, i1)" if order == "swapped" else "(i1, i2)"))
    t = Table(["r", "bound"] + [c.label for c in cols], prov)
    ckpt = cfg.get("checkpoint")
    done = _load_checkpoint(ckpt, h)
    jobs = [(lay.name, ci, r, label, order) for r, label in rows for ci in range(len(cols))]
    todo = [j for j in jobs if _key(j) not in done]
    start = time.monotonic()
    budget = cfg.get("budget")

    def record(job, value):
        done[_key(job)] = value
        if ckpt:
            with open(ckpt, "a") as fh:
                fh.write(json.dumps({"config_hash": h, "key": _key(job), "value": value}) + "\n")

    try:
        if cfg["threads"] > 1 and todo:
            pool = ProcessPoolExecutor(max_workers=cfg["threads"])
            try:
                futs = [(j, pool.submit(_cell_job, j)) for j in todo]
                for j, f in futs:
                    remaining = None if budget is None else max(0.0, budget - (time.monotonic() - start))
                    try:
                        record(j, f.result(timeout=remaining))
                    except FutureTimeout:
                        raise BudgetExceeded
            finally:
                pool.shutdown(wait=False, cancel_futures=True)
        else:
            for j in todo:
                if budget is not None and time.monotonic() - start > budget:
                    raise BudgetExceeded
                record(j, _cell_job(j))
    except BudgetExceeded:
        t.complete = False
    for r, label in rows:
        t.add(r, label, *[done.get(_key((lay.name, ci, r, label, order))) for ci in range(len(cols))])
    t.add("", "Sub", *[sub_value(lay, c) for c in cols])
    t.add("", "d", *[c.distance for c in cols])
    t.add("", "Dim", *[len(c.monomials) for c in cols])
    return t


def _key(job) -> str:
    preset, ci, r, label, order = job
    return f"{preset}|{ci}|{r}|{label}|{order}"


# ---------------------------------------------------------------------------
# decode

def _random_errors(rng, n: int, weight: int, q: int) -> np.ndarray:
    e = np.zeros(n, dtype=np.int64)
    if weight:
        pos = rng.choice(n, size=weight, replace=False)
        e[pos] = rng.integers(1, q, size=weight)
    return e


def _trial_loop(cfg, n, q, encoder, decoder, weight, ctx):
    rng = np.random.default_rng(cfg["seed"])
    successes, sizes = 0, []
    for _ in range(cfg["trials"]):
        c = encoder(rng)
        rec = ctx.vadd(c, _random_errors(rng, n, weight, q))
        rep = decoder(rec)
        if rep.refused:
            return {"refused": rep.refused, "params": rep.params}
        successes += rep.contains(c)
        sizes.append(len(rep.words))
    return {"successes": successes, "list_sizes": sizes, "params": rep.params}


def cmd_decode(cfg: dict) -> dict:
    dec = cfg["decoder"]
    r = cfg["r"]
    if dec == "rs":
        desc = cfg.get("rs", {"field": {"p": 2, "k": 3}, "n": 7, "k": 2})
        ctx = build_field(desc["field"])
        pts = PointEnsemble.standard(ctx, (desc["n"],)).points()[:, 0]
        code = RSCode(ctx, pts, desc["k"])
        gp = gs_parameters(code.n, code.k, r)
        weight = gp.E_max if cfg["errors"] is None else cfg["errors"]
        res = _trial_loop(cfg, code.n, ctx.order, lambda g: code.encode(g.integers(0, ctx.order, code.k)),
                          lambda w: gs_decode_rs(w, code, r), weight, ctx)
    elif dec == "joyner":
        code = joyner_code()
        ctx = code.ctx
        gp = gs_parameters(49, 25, r)
        weight = gp.E_max if cfg["errors"] is None else cfg["errors"]
        res = _trial_loop(cfg, 49, ctx.order, lambda g: encode(code, g.integers(0, ctx.order, code.k)),
                          lambda w: joyner_decode(w, r=r, E=weight, code=code), weight, ctx)
    else:
        if "code" not in cfg:
            raise SystemExit("decode subfield|mv needs a 'code' descriptor in the config")
        code = build_code(cfg["code"])
        ctx = code.ctx
        enc = lambda g: encode(code, g.integers(0, ctx.order, code.k))  # noqa: E731
        if dec == "subfield":
            probe = subfield_subcode_decode(np.zeros(code.n, dtype=np.int64), code, r)
            if probe.refused:
                return {"provenance": provenance(cfg, decoder=dec), "refused": probe.refused,
                        "params": probe.params}
            weight = probe.params["E_max"] if cfg["errors"] is None else cfg["errors"]
            res = _trial_loop(cfg, code.n, ctx.order, enc,
                              lambda w: subfield_subcode_decode(w, code, r, radius=weight), weight, ctx)
        else:
            bound = BoundKind(cfg["bound"], (1, 0) if cfg["order"] == "swapped" else None)
            try:
                E = max_errors(code.monomials, code.ensemble.sizes, r, bound)
            except NoCapability as exc:
                return {"provenance": provenance(cfg, decoder=dec), "refused": str(exc)}
            weight = E if cfg["errors"] is None else cfg["errors"]
            res = _trial_loop(cfg, code.n, ctx.order, enc,
                              lambda w: decode_mv(w, code, r, bound, E=E, budget=cfg["factor_budget"]),
                              weight, ctx)
    out = {"provenance": provenance(cfg, decoder=dec), "error_weight": weight, "trials": cfg["trials"]}
    out.update(res)
    return out


# ---------------------------------------------------------------------------
# experiment

def cmd_experiment(cfg: dict) -> Table:
    code = joyner_code()
    ctx = code.ctx
    t = Table(["r", "E_max", "weight", "successes", "trials", "rate", "mean_list_size"],
              provenance(cfg, preset="joyner"))
    start = time.monotonic()
    budget = cfg.get("budget")
    for r in cfg["r"]:
        gp = gs_parameters(49, 25, r)
        for wgt in cfg["weights"]:
            if budget is not None and time.monotonic() - start > budget:
                t.complete = False
                return t
            # one stream per cell so that cells do not depend on each other
            rng = np.random.default_rng([cfg["seed"], r, wgt])
            ok, total = 0, 0
            for _ in range(cfg["trials"]):
                c = encode(code, rng.integers(0, ctx.order, code.k))
                rec = ctx.vadd(c, _random_errors(rng, 49, wgt, ctx.order))
                rep = joyner_decode(rec, r=r, E=wgt, code=code)
                ok += rep.contains(c)
                total += len(rep.words)
            n = cfg["trials"]
            t.add(r, gp.E_max, wgt, ok, n, f"{ok / n:.3f}", f"{total / n:.3f}")
    return t


# ---------------------------------------------------------------------------
# entry point

def _int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wrmcodes", description="Affine variety codes: parameters, zero bounds, list decoding.")
    p.add_argument("--version", action="version", version=f"wrmcodes {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="JSON config file")
        sp.add_argument("--out", help="output path (default stdout)")
        sp.add_argument("--format", choices=["csv", "json"])
        sp.add_argument("--seed", type=int)
        sp.add_argument("--threads", type=int)
        sp.add_argument("--budget", type=float, help="wall clock budget in seconds")

    sp = sub.add_parser("params", help="dimensions and distances")
    common(sp)
    sp.add_argument("--preset", choices=["distance8", "length1024", "64x8", "256x16", "custom"])
    sp.add_argument("--dominance-distances", type=_int_list, dest="dominance_distances")

    sp = sub.add_parser("zeros", help="mean improvement of D over Schwartz-Zippel")
    common(sp)
    sp.add_argument("--m", type=_int_list)
    sp.add_argument("--r", type=_int_list)
    sp.add_argument("--q", type=_int_list)
    sp.add_argument("--dump", action="store_true", default=None, help="per-monomial rows")
    sp.add_argument("--exact-sz", action="store_false", dest="floored", default=None,
                    help="use the rational SZ value instead of the floored count")

    sp = sub.add_parser("capability", help="capability tables")
    common(sp)
    sp.add_argument("--preset", choices=sorted(LAYOUTS))
    sp.add_argument("--rows", type=lambda s: s.split(","), help="e.g. 2:S,2:C,3:D")
    sp.add_argument("--order", choices=["swapped", "natural"])
    sp.add_argument("--checkpoint", help="JSON-lines file for resuming")

    sp = sub.add_parser("decode", help="seeded decoding trials")
    common(sp)
    sp.add_argument("decoder", choices=["rs", "subfield", "joyner", "mv"])
    sp.add_argument("--r", type=int)
    sp.add_argument("--errors", type=int)
    sp.add_argument("--trials", type=int)
    sp.add_argument("--bound", choices=list(BOUND_KINDS))
    sp.add_argument("--order", choices=["swapped", "natural"])
    sp.add_argument("--factor-budget", type=int, dest="factor_budget")

    sp = sub.add_parser("experiment", help="Joyner success-rate curves")
    common(sp)
    sp.add_argument("--preset", choices=["joyner"])
    sp.add_argument("--r", type=_int_list)
    sp.add_argument("--weights", type=_int_list)
    sp.add_argument("--trials", type=int)
    return p


COMMANDS = {"params": cmd_params, "zeros": cmd_zeros, "capability": cmd_capability,
            "decode": cmd_decode, "experiment": cmd_experiment}


def run(argv: list[str] | None = None) -> tuple[str, bool, dict]:
    """Execute a command; returns (rendered output, complete, resolved config)."""
    args = build_parser().parse_args(argv)
    flags = {k: v for k, v in vars(args).items() if k not in ("config", "command")}
    cfg_file = json.loads(Path(args.config).read_text()) if args.config else None
    cfg = resolve_config(args.command, cfg_file, flags)
    result = COMMANDS[args.command](cfg)
    if isinstance(result, Table):
        return result.render(cfg["format"]), result.complete, cfg
    return json.dumps(result, indent=2, sort_keys=True) + "\n", True, cfg


def main(argv: list[str] | None = None) -> int:
    try:
        text, complete, cfg = run(argv)
    except jsonschema.ValidationError as exc:
        sys.stderr.write(f"invalid config: {exc.message}\n")
        return 2
    emit(text, cfg.get("out"))
    return 0 if complete else 3


if __name__ == "__main__":
    sys.exit(main())
