"""Command-line interface.

Exit codes: 0 success, 1 domain error (invalid diagram, route disagreement,
failed check), 2 parse or IO error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd as igcd

from .alexander import (alexander, alexander_direct, alexander_formula, chain_alexander, chain_direct,
                        check_skein, twisted_alexander)
from .algebra import LaurentPoly, divides, exact_div, format_poly, gcd, lambda1
from .diagram import MixedDiagram, SurgeryChain, flux, kbar, load, validate
from .errors import LensAlexError, ParseError, RouteDisagreement
from .homology import h1_complement
from .presentation import chain_presentation, lens_presentation

COMMANDS = ("validate", "group", "h1", "alex", "talex", "skein", "batch", "props")


@dataclass
class RunConfig:
    command: str
    paths: list
    mu: int = None
    crossing: int = None
    fmt: str = "human"
    unit_bound: int = None
    seed: int = 0
    verbose: int = 0
    extra: dict = field(default_factory=dict)


class Failed(LensAlexError):
    """A check ran to completion and reported failure."""


def _emit(cfg, human, payload):
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=1))
    elif cfg.fmt == "tsv" and isinstance(payload, dict):
        print("\t".join(str(v if not isinstance(v, (dict, list)) else json.dumps(v))
                        for v in payload.values()))
    else:
        print(human)


def _one(cfg):
    if len(cfg.paths) != 1:
        raise ParseError(f"{cfg.command} takes exactly one input file")
    return load(cfg.paths[0])


def _mixed(d, cmd):
    if not isinstance(d, MixedDiagram):
        raise LensAlexError(f"{cmd} needs a single surgery unknot; chains support `alex` only")
    return d


def cmd_validate(cfg):
    d = _one(cfg)
    v = validate(d)
    lines = [f"{d.name}: {'valid' if not v else 'INVALID'}"] + [f"  {x}" for x in v]
    _emit(cfg, "\n".join(lines), {"name": d.name, "valid": not v,
                                  "violations": [{"code": x.code, "message": x.message} for x in v]})
    return 0 if not v else 1


def cmd_group(cfg):
    d = _one(cfg)
    pres = chain_presentation(d) if isinstance(d, SurgeryChain) else lens_presentation(d)
    _emit(cfg, pres.dump(), {"name": d.name, "generators": list(pres.generators),
                             "relators": [{"tag": t, "word": str(w)} for w, t in pres.relators]})
    return 0


def cmd_h1(cfg):
    d = _mixed(_one(cfg), "h1")
    h = h1_complement(d)
    _emit(cfg, str(h), {"name": d.name, "h1": h.to_json(), "display": str(h)})
    return 0


def cmd_alex(cfg):
    d = _one(cfg)
    if isinstance(d, SurgeryChain):
        a, b = chain_direct(d), chain_alexander(d)
    elif kbar(d) == 0:
        a, b = None, alexander_formula(d)
    else:
        a, b = alexander_direct(d), alexander_formula(d)
    if a is not None and not a.equivalent(b):
        _emit(cfg, f"direct:  {a}\nformula: {b}\nDISAGREE",
              {"name": d.name, "direct": a.to_json(), "formula": b.to_json(), "agree": False})
        raise RouteDisagreement(f"direct {a} vs formula {b}")
    if a is None:
        human = f"{b}\ndirect:  (kbar = 0, formula route only)\nformula: {b}"
    else:
        human = f"{a}\ndirect:  {a}\nformula: {b}"
    _emit(cfg, human, {"name": d.name, "direct": a.to_json() if a else None,
                       "formula": b.to_json(), "agree": True})
    return 0


def cmd_talex(cfg):
    d = _mixed(_one(cfg), "talex")
    if cfg.mu is None:
        raise ParseError("talex needs --mu")
    r = twisted_alexander(d, cfg.mu)
    _emit(cfg, str(r), {"name": d.name, "mu": cfg.mu, "delta": r.to_json()})
    return 0


def cmd_skein(cfg):
    d = _mixed(_one(cfg), "skein")
    if cfg.crossing is None:
        raise ParseError("skein needs --crossing")
    rep = check_skein(d, cfg.crossing, cfg.unit_bound)
    payload = {"name": d.name, "crossing": cfg.crossing,
               "plus": rep.plus.to_json(), "minus": rep.minus.to_json(), "zero": rep.zero.to_json(),
               "p_prime": rep.p_prime, "witness": list(rep.witness) if rep.witness else None,
               "ok": rep.ok}
    _emit(cfg, "\n".join(rep.lines()), payload)
    if not rep.ok:
        raise Failed("skein identity not verified")
    return 0


# batch

def _manifest(path):
    """Yield (label, loader) pairs; loaders raise on bad entries."""
    from .normalform import normalize
    from .pd import parse_pd
    base = os.path.dirname(os.path.abspath(path))
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    for n, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("pd "):
            parts = line.split(None, 5)
            if len(parts) != 6:
                raise ParseError(f"{path}:{n}: expected `pd <name> <p> <q> <component> <PD>`")
            _, name, p, q, u, code = parts
            try:
                p, q, u = int(p), int(q), int(u)
            except ValueError:
                raise ParseError(f"{path}:{n}: p, q and component must be integers") from None
            yield name, (lambda code=code, p=p, q=q, u=u, name=name:
                         normalize(parse_pd(code), p, q, u=u, name=name))
        else:
            f = line if os.path.isabs(line) else os.path.join(base, line)
            yield os.path.splitext(os.path.basename(f))[0], (lambda f=f: load(f))


def batch_row(d):
    fd = flux(d)
    h = h1_complement(d)
    delta = alexander(d)
    tw = [twisted_alexander(d, m) for m in range(fd.d)]
    return {"name": d.name, "p": d.p, "q": d.q, "kbar": fd.kbar, "h1": str(h),
            "delta": str(delta), "twisted": [str(x) for x in tw],
            "delta_value": delta.value.to_json(), "twisted_values": [x.value.to_json() for x in tw]}


def _batch_one(item):
    label, loader = item
    try:
        d = loader()
        if not isinstance(d, MixedDiagram):
            raise LensAlexError("chains are not tabulated")
        return batch_row(d), None
    except (LensAlexError, ParseError) as exc:
        return {"name": label}, f"{type(exc).__name__}: {exc}"


def cmd_batch(cfg):
    items = [it for p in cfg.paths for it in _manifest(p)]
    try:
        n = max(1, int(os.environ.get("LENSALEX_THREADS", "1")))
    except ValueError:
        n = 1
    if n > 1:
        with ThreadPoolExecutor(n) as ex:
            results = list(ex.map(_batch_one, items))
    else:
        results = [_batch_one(it) for it in items]
    bad = 0
    if cfg.fmt == "json":
        print(json.dumps([dict(r, error=e) if e else r for r, e in results], indent=1))
        return 1 if any(e for _, e in results) else 0
    print("\t".join(("name", "p", "q", "kbar", "H1", "Delta", "twisted")))
    for row, err in results:
        if err:
            bad += 1
            print(f"{row['name']}\tERROR\t{err}")
            continue
        print("\t".join([row["name"], str(row["p"]), str(row["q"]), str(row["kbar"]), row["h1"],
                         row["delta"], " | ".join(row["twisted"])]))
    return 1 if bad else 0


# randomized self-checks

def _random_poly(rng, deg):
    t = LaurentPoly.var("t")
    f = LaurentPoly.zero(("t",))
    for e in range(deg + 1):
        f = f + rng.randint(-3, 3) * t ** e
    return f


def cmd_props(cfg):
    rng = random.Random(cfg.seed)
    cases = cfg.extra.get("cases", 200)
    for _ in range(cases):
        f, g, h = (_random_poly(rng, rng.randint(0, 3)) for _ in range(3))
        if not f or not g or not h:
            continue
        if exact_div(f * g, g) != f:
            raise Failed(f"exact_div failed on {format_poly(f)}, {format_poly(g)}")
        c = gcd(f * g, f * h)
        if not (divides(f, c) and divides(c, f * g) and divides(c, f * h)):
            raise Failed(f"gcd check failed on {format_poly(f)}, {format_poly(g)}, {format_poly(h)}")
    for p in range(1, 13):
        for q in range(1, 13):
            if igcd(p, q) == 1:
                u = LaurentPoly.var("u")
                if lambda1(p, q) * (u ** p - 1) * (u ** q - 1) != (u ** (p * q) - 1) * (u - 1):
                    raise Failed(f"lambda1 identity fails at ({p}, {q})")
    _emit(cfg, f"PASS ({cases} cases, seed {cfg.seed})", {"ok": True, "cases": cases, "seed": cfg.seed})
    return 0


HANDLERS = {"validate": cmd_validate, "group": cmd_group, "h1": cmd_h1, "alex": cmd_alex,
            "talex": cmd_talex, "skein": cmd_skein, "batch": cmd_batch, "props": cmd_props}


def build_parser():
    ap = argparse.ArgumentParser(prog="lensalex",
                                 description="Alexander polynomials of links in lens spaces.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("human", "json", "tsv"), default="human")
    common.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("validate", "group", "h1", "alex"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("paths", nargs=1)
    sp = sub.add_parser("talex", parents=[common])
    sp.add_argument("paths", nargs=1)
    sp.add_argument("--mu", type=int, required=True)
    sp = sub.add_parser("skein", parents=[common])
    sp.add_argument("paths", nargs=1)
    sp.add_argument("--crossing", type=int, required=True)
    sp.add_argument("--unit-bound", type=int, default=None)
    sp = sub.add_parser("batch", parents=[common])
    sp.add_argument("paths", nargs="+")
    sp = sub.add_parser("props", parents=[common])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cases", type=int, default=200)
    sp.set_defaults(paths=[])
    return ap


def parse_config(argv):
    # argparse exits 2 on usage errors, which matches the parse-error code
    ns = build_parser().parse_args(argv)
    return RunConfig(ns.command, list(ns.paths), getattr(ns, "mu", None), getattr(ns, "crossing", None),
                     ns.fmt, getattr(ns, "unit_bound", None), getattr(ns, "seed", 0), ns.verbose,
                     {"cases": getattr(ns, "cases", 200)})


def run(cfg):
    try:
        return HANDLERS[cfg.command](cfg)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LensAlexError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main(argv=None):
    cfg = parse_config(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(level=logging.DEBUG if cfg.verbose > 1 else logging.WARNING,
                        format="%(levelname)s %(message)s")
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
