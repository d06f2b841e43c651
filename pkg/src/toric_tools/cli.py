"""Command-line entry point: ``toric-tools <command> ...``.

Exit codes: 0 success, 2 input error, 3 computation error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import binomial, cones, fans, jacobian, preorders, semigroup
from .errors import ComputationError, InputError
from .files import (
    FORMAT_VERSION,
    encode,
    fan_to_doc,
    load_fan,
    load_preorder,
    load_system,
    parse_terms,
    parse_vector,
)
from .series import CoefficientField, TruncatedSeries


@dataclass
class RunConfig:
    command: tuple[str, ...]
    characteristic: int | None = None
    truncation: int | None = None
    seed: int = 0
    height_cap: int = 3
    radius_cap: int = 40
    samples: int = 50
    inputs: tuple[str, ...] = ()
    output: str | None = None
    options: dict = field(default_factory=dict)


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _cone_arg(vectors: list[str]) -> cones.Cone:
    return cones.Cone.from_generators([parse_vector(v) for v in vectors])


def _fan_report(f: fans.Fan) -> dict:
    doc = fan_to_doc(f)
    doc["complete"] = f.is_complete
    doc["cone_count"] = len(f)
    return doc


# --- commands ---------------------------------------------------------------


def cmd_semigroup(cfg: RunConfig) -> dict:
    o = cfg.options
    if o.get("campillo"):
        p = o["campillo"]
        T = cfg.truncation or 4 * p**3 * (p**3 + p**2)
        x, y = semigroup.campillo_parametrization(p, T)
    else:
        if cfg.characteristic is None or not o.get("x") or not o.get("y"):
            raise InputError("give --char, --x and --y, or --campillo P")
        fld = CoefficientField(cfg.characteristic)
        xt, yt = parse_terms(o["x"]), parse_terms(o["y"])
        T = cfg.truncation or 4 * min(xt) * min(yt)
        x, y = TruncatedSeries(fld, T, xt), TruncatedSeries(fld, T, yt)
    g = semigroup.value_semigroup(x, y, T)
    try:
        beta = list(semigroup.char_exponents_from_semigroup(g).beta)
    except InputError:
        beta = None
    return {
        "characteristic": x.field.characteristic,
        "truncation": T,
        "generators": list(g.generators),
        "conductor": g.conductor,
        "multiplicity": g.multiplicity,
        "characteristic_exponents": beta,
    }


def _witness_binomial(v, names) -> str:
    pos = [(n, a) for n, a in zip(names, v) if a > 0]
    neg = [(n, -a) for n, a in zip(names, v) if a < 0]

    def mono(ts):
        return "*".join(n if a == 1 else f"{n}^{a}" for n, a in ts) or "1"

    return f"{mono(pos)} - {mono(neg)}"


def cmd_prime_check(cfg: RunConfig) -> dict:
    system, _ = load_system(cfg.inputs[0])
    rep = binomial.primality_report(system)
    ok, weights = binomial.is_overweight(system)
    out = {
        "variables": list(system.variables),
        "saturated": rep.saturated,
        "prime_on_torus": rep.prime,
        "torsion": list(rep.torsion_divisors),
        "witness": list(rep.witness) if rep.witness else None,
        "witness_multiplier": rep.witness_multiplier,
        "witness_binomial": _witness_binomial(rep.witness, system.variables) if rep.witness else None,
        "overweight": ok,
        "equation_weights": [
            {"m": w.weight_m, "n": w.weight_n, "deformation": list(w.deformation_weights)} for w in weights
        ],
        "notes": list(rep.notes),
    }
    return out


def cmd_tame(cfg: RunConfig) -> dict:
    system, gamma = load_system(cfg.inputs[0])
    p = system.field.characteristic
    if not p:
        raise InputError("tame projections need a positive characteristic")
    gamma = gamma or [(w,) for w in system.weights]
    rel = jacobian.relation_matrix(system)
    found = jacobian.find_tame_projections(rel, gamma, p)
    projections = []
    for t in found:
        entry = {
            "kept": list(t.names(system.variables)),
            "differentiated": [system.variables[j] for j in t.differentiated],
            "rows": list(t.rows),
            "minor": t.minor_value,
            "index": t.index,
        }
        if cfg.options.get("check"):
            trials = cfg.options.get("trials", 20)
            entry["congruence"] = jacobian.minor_congruence_check(
                system.undeformed(), t.differentiated, t.rows, trials, cfg.seed, gamma
            )
            entry["deformed_minor_nonvanishing"] = jacobian.minor_nonvanishing(
                system, t.differentiated, t.rows, trials, cfg.seed
            )
        projections.append(entry)
    return {"characteristic": p, "projections": projections}


def cmd_fan(cfg: RunConfig) -> dict:
    action = cfg.command[1]
    o = cfg.options
    if action == "validate":
        return _fan_report(load_fan(cfg.inputs[0]))
    if action == "dual":
        c = _cone_arg(o["rays"])
        d = cones.dual_cone(c)
        return {"cone": c, "dual": d, "dual_strictly_convex": d.is_strictly_convex}
    if action == "hilbert":
        c = _cone_arg(o["rays"])
        return {"cone": c, "hilbert_basis": [list(h) for h in cones.hilbert_basis(c)]}
    if action == "subdivide":
        f = load_fan(cfg.inputs[0])
        for v in o["at"]:
            f = fans.stellar_subdivision(f, parse_vector(v))
        return _fan_report(f)
    if action == "refine-check":
        fine, coarse = load_fan(cfg.inputs[0]), load_fan(cfg.inputs[1])
        return {"refines": fans.refine_check(fine, coarse)}
    if action == "orbits":
        f = load_fan(cfg.inputs[0])
        poset = fans.orbit_poset(f)
        return {
            "orbits": len(poset),
            "by_dimension": {str(d): len(f.cones_of_dim(d)) for d in range(f.ambient_rank + 1)},
            "closed_points": [c for c in poset.closed],
        }
    if action == "height":
        return {"height": fans.height(load_fan(cfg.inputs[0]))}
    raise InputError(f"unknown fan action {action}")


def cmd_preorder(cfg: RunConfig) -> dict:
    action = cfg.command[1]
    o = cfg.options
    w = load_preorder(cfg.inputs[0])
    if action == "compare":
        return {"result": preorders.compare(w, parse_vector(o["m"]), parse_vector(o["n"])).name}
    if action == "is-order":
        return {"is_order": preorders.is_order(w)}
    if action == "dominate":
        res = preorders.dominated_cone(w, load_fan(cfg.inputs[1]))
        return {"cone": res.cone, "dimension": res.cone.dim, "equivalence_face": res.equivalence_face}
    if action == "thread":
        tower = [load_fan(cfg.inputs[1])]
        for v in o.get("at") or []:
            tower.append(fans.stellar_subdivision(tower[-1], parse_vector(v)))
        th = preorders.thread(w, tower)
        return {"stages": [{"stage": k, "cone": c} for k, c in enumerate(th.cones)]}
    if action == "dist":
        w2 = load_preorder(cfg.inputs[1])
        if o["metric"] == "d":
            return {"metric": "d", "distance": preorders.distance_d(w, w2, cfg.height_cap)}
        return {"metric": "dtilde", "distance": preorders.distance_dtilde(w, w2, cfg.radius_cap)}
    raise InputError(f"unknown preorder action {action}")


def cmd_experiment(cfg: RunConfig) -> dict:
    action = cfg.command[1]
    if action == "cantor-fibers":
        base = load_fan(cfg.inputs[0]) if cfg.inputs else fans.quadrant_fan(2)
        tower = [base]
        for _ in range(cfg.options.get("stages", 3)):
            tower.append(fans.barycentric_stage(tower[-1]))
        rows = preorders.cantor_fiber_experiment(tower)
        return {
            "stages": len(tower),
            "fibers": rows,
            "min_fiber": min(r["fiber"] for r in rows),
            "hypothesis_holds": all(r["fiber"] >= 2 for r in rows),
        }
    if action == "metric-compare":
        return preorders.metric_comparison_experiment(cfg.samples, cfg.seed, cfg.height_cap, cfg.radius_cap)
    raise InputError(f"unknown experiment {action}")


COMMANDS = {
    "semigroup": cmd_semigroup,
    "prime-check": cmd_prime_check,
    "tame": cmd_tame,
    "fan": cmd_fan,
    "preorder": cmd_preorder,
    "experiment": cmd_experiment,
}


def run(cfg: RunConfig) -> dict:
    body = COMMANDS[cfg.command[0]](cfg)
    report = {"format": FORMAT_VERSION, "command": " ".join(cfg.command)}
    report.update(body)
    return encode(report)


# --- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="toric-tools", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the structured report only")
    common.add_argument("-o", "--output", help="also write the JSON report here")
    common.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("semigroup", parents=[common], help="value semigroup of x(t), y(t)")
    s.add_argument("--char", type=int, dest="characteristic")
    s.add_argument("--x", help="terms exponent:coeff,...")
    s.add_argument("--y", help="terms exponent:coeff,...")
    s.add_argument("--truncation", type=_positive)
    s.add_argument("--campillo", type=int, metavar="P", help="use the built-in family for prime P")

    s = sub.add_parser("prime-check", parents=[common], help="saturation and overweight report")
    s.add_argument("system")

    s = sub.add_parser("tame", parents=[common], help="tame projections of a binomial system")
    s.add_argument("system")
    s.add_argument("--check", action="store_true", help="also run the jacobian checks")
    s.add_argument("--trials", type=_positive, default=20)

    fan = sub.add_parser("fan", help="fan operations").add_subparsers(dest="action", required=True)
    for name in ("validate", "orbits", "height"):
        fan.add_parser(name, parents=[common]).add_argument("fan")
    for name in ("dual", "hilbert"):
        fan.add_parser(name, parents=[common]).add_argument("--rays", nargs="+", required=True, metavar="A,B")
    s = fan.add_parser("subdivide", parents=[common])
    s.add_argument("fan")
    s.add_argument("--at", nargs="+", required=True, metavar="A,B")
    s = fan.add_parser("refine-check", parents=[common])
    s.add_argument("fine")
    s.add_argument("coarse")

    pre = sub.add_parser("preorder", help="preorder operations").add_subparsers(dest="action", required=True)
    s = pre.add_parser("compare", parents=[common])
    s.add_argument("preorder")
    s.add_argument("--m", required=True)
    s.add_argument("--n", required=True)
    pre.add_parser("is-order", parents=[common]).add_argument("preorder")
    s = pre.add_parser("dominate", parents=[common])
    s.add_argument("preorder")
    s.add_argument("fan")
    s = pre.add_parser("thread", parents=[common])
    s.add_argument("preorder")
    s.add_argument("fan")
    s.add_argument("--at", nargs="*", metavar="A,B", help="successive stellar subdivisions")
    s = pre.add_parser("dist", parents=[common])
    s.add_argument("preorder")
    s.add_argument("other")
    s.add_argument("--metric", choices=("d", "dtilde"), required=True)
    s.add_argument("--height-cap", type=_positive, default=3)
    s.add_argument("--radius-cap", type=_positive, default=40)

    ex = sub.add_parser("experiment", help="exploratory experiments").add_subparsers(dest="action", required=True)
    s = ex.add_parser("cantor-fibers", parents=[common])
    s.add_argument("fan", nargs="?")
    s.add_argument("--stages", type=_positive, default=3)
    s = ex.add_parser("metric-compare", parents=[common])
    s.add_argument("--samples", type=_positive, default=50)
    s.add_argument("--height-cap", type=_positive, default=3)
    s.add_argument("--radius-cap", type=_positive, default=40)
    return ap


_INPUT_ARGS = ("system", "preorder", "other", "fan", "fine", "coarse")


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    command = (ns.command,) + ((ns.action,) if getattr(ns, "action", None) else ())
    inputs = tuple(getattr(ns, a) for a in _INPUT_ARGS if getattr(ns, a, None))
    options = {
        k: v
        for k, v in vars(ns).items()
        if k in ("x", "y", "campillo", "rays", "at", "m", "n", "metric", "check", "trials", "stages")
    }
    return RunConfig(
        command=command,
        characteristic=getattr(ns, "characteristic", None),
        truncation=getattr(ns, "truncation", None),
        seed=getattr(ns, "seed", 0),
        height_cap=getattr(ns, "height_cap", 3),
        radius_cap=getattr(ns, "radius_cap", 40),
        samples=getattr(ns, "samples", 50),
        inputs=inputs,
        output=getattr(ns, "output", None),
        options=options,
    )


def _summary(report: dict) -> str:
    lines = []
    for k, v in report.items():
        if k == "format":
            continue
        if isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{k}:")
            lines.extend("  " + json.dumps(row, sort_keys=True) for row in v)
        else:
            lines.append(f"{k}: {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    try:
        report = run(cfg)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ComputationError as e:
        print(f"computation failed: {e}", file=sys.stderr)
        return 3
    text = json.dumps(report, sort_keys=True)
    if cfg.output:
        Path(cfg.output).write_text(text + "\n")
    print(text if ns.json else _summary(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
