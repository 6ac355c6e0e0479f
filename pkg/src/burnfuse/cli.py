"""Batch command-line front end.

Subcommands parse groups and element JSON files, run the module operations,
and emit deterministic text or JSON. Exit status: 0 on success or a passing
verification, 1 on a verification failure, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import groups as groups_mod
from .burnside import basis, compose, restrict, single
from .completion import (complete, complete_functor_check,
                         splitting_idempotent_approx,
                         transfer_counterexample_check, verify_splitting_sum)
from .errors import BurnfuseError, InputError
from .fusion import (characteristic_idempotent, fusion_system, invert_stable,
                     stabilize, stable_basis)
from .groups import parse_group, sylow
from .padic import PadicInt, is_prime
from .serialize import (dump_json, element_to_json, load_element,
                        stable_to_json)
from .verify import DEFAULT_SEED, run_all

CONFIG_FILE = "burnfuse.toml"


@dataclass
class Config:
    precision: int = 8
    order_cap: int = 200
    schedule_cap: int = 8
    seed: int = DEFAULT_SEED
    format: str = "text"

    def __post_init__(self):
        if self.precision < 1:
            raise InputError("precision must be at least 1")
        if self.order_cap < 2:
            raise InputError("order_cap must cover the smallest examples")


def read_config_file(path: str = CONFIG_FILE) -> dict:
    if not os.path.exists(path):
        return {}
    out = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InputError(f"bad config line {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key in ("precision", "order_cap", "schedule_cap", "seed"):
                try:
                    out[key] = int(value)
                except ValueError as exc:
                    raise InputError(f"config key {key} needs an integer") from exc
            else:
                raise InputError(f"unknown config key {key!r}")
    return out


def _element_lines(x, suffix: str = "") -> list[str]:
    if x.is_zero:
        return ["0"]
    out = []
    for b, c in x.terms():
        coeff = str(c) if isinstance(c, PadicInt) else str(c)
        out.append(f"{coeff:>16}  {b.label()}{suffix}")
    return out


def _emit_element(x, cfg: Config, fusion_context=None) -> None:
    if cfg.format == "json":
        if fusion_context is not None:
            print(dump_json(stable_to_json(fusion_context)))
        else:
            print(dump_json(element_to_json(x)))
        return
    if fusion_context is not None:
        left, right = fusion_context.left_fusion, fusion_context.right_fusion
        print(f"stable element for ({left.label}, {right.label})")
        for line in _element_lines(x, suffix="_F"):
            print(line)
    else:
        print(f"element over ({x.source.label}, {x.target.label})")
        for line in _element_lines(x):
            print(line)


def _require_prime(p: int) -> int:
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    return p


def cmd_basis(args, cfg: Config) -> int:
    G, H = parse_group(args.G), parse_group(args.H)
    classes = basis(G, H)
    if cfg.format == "json":
        payload = {
            "source": G.label, "target": H.label,
            "classes": [element_to_json(single(b))["terms"][0] | {"size": b.size}
                        for b in classes],
        }
        for entry in payload["classes"]:
            del entry["coeff"]
        print(dump_json(payload))
    else:
        print(f"basis of ({G.label}, {H.label})")
        for i, b in enumerate(classes, 1):
            print(f"{i:>3}  |K|={b.K.order:<4} size={b.size:<5} {b.label()}")
        print(f"{len(classes)} classes")
    return 0


def cmd_compose(args, cfg: Config) -> int:
    x = load_element(args.left)
    y = load_element(args.right)
    _emit_element(compose(x, y), cfg)
    return 0


def cmd_restrict(args, cfg: Config) -> int:
    x = load_element(args.element)
    p = _require_prime(args.p)
    S, T = sylow(x.source, p), sylow(x.target, p)
    _emit_element(restrict(x, S, T), cfg)
    return 0


def cmd_idempotent(args, cfg: Config) -> int:
    G = parse_group(args.G)
    p = _require_prime(args.p)
    k = args.k or cfg.precision
    w = characteristic_idempotent(fusion_system(G, p), k)
    _emit_element(w.underlying, cfg, fusion_context=w)
    return 0


def cmd_invert_unit(args, cfg: Config) -> int:
    H = parse_group(args.H)
    p = _require_prime(args.p)
    k = args.k or cfg.precision
    F = fusion_system(H, p)
    T = F.sylow
    from .burnside import identity_element
    h = stabilize(restrict(identity_element(H), T, T), F, F, k)
    inv = invert_stable(h, k)
    _emit_element(inv.underlying, cfg, fusion_context=inv)
    return 0


def cmd_complete(args, cfg: Config) -> int:
    x = load_element(args.element)
    p = _require_prime(args.p)
    k = args.k or cfg.precision
    c = complete(x, p, k)
    _emit_element(c.underlying, cfg, fusion_context=c)
    return 0


def cmd_stable_basis(args, cfg: Config) -> int:
    G, H = parse_group(args.G), parse_group(args.H)
    p = _require_prime(args.p)
    k = args.k or cfg.precision
    F1, F2 = fusion_system(G, p), fusion_system(H, p)
    sb = stable_basis(F1, F2, k)
    if cfg.format == "json":
        print(dump_json({"leftFusion": {"group": G.label, "p": p},
                         "rightFusion": {"group": H.label, "p": p},
                         "elements": [stable_to_json(s) for s in sb]}))
    else:
        print(f"stable basis for ({F1.label}, {F2.label}), {len(sb)} elements")
        for i, s in enumerate(sb, 1):
            print(f"-- element {i}")
            for line in _element_lines(s.underlying, suffix="_F"):
                print(line)
    return 0


def cmd_splitting(args, cfg: Config) -> int:
    G = parse_group(args.G)
    p = _require_prime(args.p)
    x = splitting_idempotent_approx(G, p, args.n)
    _emit_element(x, cfg)
    return 0


def _finish_report(report, cfg: Config) -> int:
    if cfg.format == "json":
        print(dump_json(report.to_json()))
    else:
        print(report.to_text())
    return 0 if report.passed else 1


def cmd_verify(args, cfg: Config) -> int:
    if args.what in ("sum", "counterexample") and len(args.args) != 1:
        raise InputError(f"verify {args.what} needs exactly one group")
    if args.what == "sum":
        G = parse_group(args.args[0])
        report = verify_splitting_sum(G, args.kmax,
                                      schedule_cap=cfg.schedule_cap)
        return _finish_report(report, cfg)
    if args.what == "functor":
        if len(args.args) != 3:
            raise InputError("verify functor needs three groups: G H K")
        G, H, K = (parse_group(s) for s in args.args)
        p = _require_prime(args.p)
        k = args.k or 4
        import random
        rng = random.Random(cfg.seed)
        ok = True
        lines = []
        for i in range(args.pairs):
            x = single(rng.choice(basis(G, H)))
            y = single(rng.choice(basis(H, K)))
            rep = complete_functor_check(x, y, p, k)
            ok = ok and rep.passed
            lines.append(f"  {'PASS' if rep.passed else 'FAIL'}  pair {i + 1}")
        if cfg.format == "json":
            print(dump_json({"title": "functoriality sample",
                             "groups": [G.label, H.label, K.label],
                             "p": p, "k": k, "passed": ok}))
        else:
            print(f"functoriality over ({G.label},{H.label},{K.label}) p={p} k={k}")
            print("\n".join(lines))
            print(f"  => {'PASS' if ok else 'FAIL'}")
        return 0 if ok else 1
    if args.what == "counterexample":
        H = parse_group(args.args[0])
        p = _require_prime(args.p)
        k = args.k or cfg.precision
        report = transfer_counterexample_check(H, p, k)
        return _finish_report(report, cfg)
    if args.what == "all":
        results = run_all(cfg.seed)
        if cfg.format == "json":
            print(dump_json({"criteria": [
                {"number": r.number, "name": r.name, "passed": r.passed,
                 "elapsed": round(r.elapsed, 2), "details": r.details}
                for r in results]}))
        else:
            for r in results:
                print(r.line())
                for d in r.details:
                    print(f"        {d}")
        return 0 if all(r.passed for r in results) else 1
    raise InputError(f"unknown verify target {args.what!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="burnfuse",
        description="Burnside modules, fusion systems, and p-completion "
                    "of biset algebra for finite groups.")
    parser.add_argument("--format", choices=("text", "json"), default=None)
    parser.add_argument("--precision", type=int, default=None,
                        help="default p-adic precision k")
    parser.add_argument("--order-cap", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--config", default=CONFIG_FILE,
                        help="key=value config file (optional)")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("basis", help="list the canonical basis over (G, H)")
    sp.add_argument("G")
    sp.add_argument("H")
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("compose", help="compose two element JSON files")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.set_defaults(func=cmd_compose)

    sp = sub.add_parser("restrict", help="restrict an element to Sylow subgroups")
    sp.add_argument("element")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_restrict)

    sp = sub.add_parser("idempotent", help="characteristic idempotent of F_p(G)")
    sp.add_argument("G")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=None)
    sp.set_defaults(func=cmd_idempotent)

    sp = sub.add_parser("invert-unit",
                        help="invert the stabilized Sylow-restricted group biset")
    sp.add_argument("H")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=None)
    sp.set_defaults(func=cmd_invert_unit)

    sp = sub.add_parser("complete", help="apply the p-completion map")
    sp.add_argument("element")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=None)
    sp.set_defaults(func=cmd_complete)

    sp = sub.add_parser("stable-basis", help="stable basis for a fusion pair")
    sp.add_argument("G")
    sp.add_argument("H")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=None)
    sp.set_defaults(func=cmd_stable_basis)

    sp = sub.add_parser("splitting",
                        help="integer splitting idempotent approximant")
    sp.add_argument("G")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_splitting)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("what", choices=("sum", "functor", "counterexample", "all"))
    sp.add_argument("args", nargs="*")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--kmax", type=int, default=3)
    sp.add_argument("--pairs", type=int, default=10)
    sp.set_defaults(func=cmd_verify)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        overrides = read_config_file(args.config)
        if args.precision is not None:
            overrides["precision"] = args.precision
        if args.order_cap is not None:
            overrides["order_cap"] = args.order_cap
        if args.seed is not None:
            overrides["seed"] = args.seed
        fmt = args.format or "text"
        cfg = Config(format=fmt, **overrides)
        groups_mod.ENUM_CAP = cfg.order_cap
        return args.func(args, cfg)
    except BurnfuseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
