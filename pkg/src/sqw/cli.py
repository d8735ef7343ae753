"""Command-line front end: simulations, analytic tables, embeddings, validation.

Subcommands: simulate, analytic, sigma-surface, embed, validate.  Options can
come from a JSON config file (--config) with individual flags overriding it.
Angles are written as rational multiples of pi ("pi/4", "2pi/3", "-pi/2") or
as plain numbers; exact parsing keeps reproduction runs free of decimal drift.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import line_analytic
from .coined import certify_equivalence, coin_tessellation, \
    coined_walk_from_descriptor, shift_tessellation
from .errors import WalkError
from .graphs import from_document, line_tessellations, to_document, \
    union_covers_edges, validate_tessellation
from .operators import compose, reflection_from_tessellation
from .simulation import WalkState, distribution, evolve, moments, ring_labels, \
    superposition_state, wrap_check

_ANGLE_RE = re.compile(
    r"^\s*([+-]?)\s*(\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$",
    re.IGNORECASE)


def parse_angle(value) -> float:
    """Parse "pi/3", "2pi/3", "-pi/2", "pi", or a plain number, exactly."""
    if isinstance(value, (int, float)):
        return float(value)
    m = _ANGLE_RE.match(value)
    if m:
        sign = -1.0 if m.group(1) == "-" else 1.0
        coef = float(m.group(2)) if m.group(2) else 1.0
        denom = float(m.group(3)) if m.group(3) else 1.0
        return sign * coef * math.pi / denom
    try:
        return float(value)
    except ValueError:
        raise ValueError(f"cannot parse angle {value!r}") from None


@dataclass
class RunConfig:
    model: str = "line"
    theta0: float | None = None
    theta1: float | None = None
    alpha: float = math.pi / 2
    beta: float = math.pi / 2
    phi0: float = 0.0
    phi1: float = 0.0
    steps: int = 0
    ring_size: int | None = None
    graph: str | None = None
    coin: dict | None = None
    init: object = "basis:0"
    out: str = "-"


_ANGLE_KEYS = ("theta", "theta0", "theta1", "alpha", "beta", "phi0", "phi1")


def _merge_config(args) -> RunConfig:
    cfg = RunConfig()
    file_values = {}
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            file_values = json.load(fh)
    merged = dict(file_values)
    for key in ("model", "steps", "ring_size", "graph", "init", "out", *_ANGLE_KEYS):
        flag = getattr(args, key.replace("-", "_"), None)
        if flag is not None:
            merged[key] = flag
    if getattr(args, "coin", None) is not None:
        merged["coin"] = args.coin
    theta = merged.pop("theta", None)
    if theta is not None:
        merged.setdefault("theta0", theta)
        merged.setdefault("theta1", theta)
    for key, value in merged.items():
        if key in ("theta0", "theta1", "alpha", "beta", "phi0", "phi1"):
            value = parse_angle(value)
        elif key in ("steps", "ring_size"):
            value = int(value)
        elif key == "coin" and isinstance(value, str):
            value = _load_coin(value)
        if not hasattr(cfg, key):
            raise ValueError(f"unknown config key {key!r}")
        setattr(cfg, key, value)
    return cfg


def _load_coin(spec: str) -> dict:
    if spec.lstrip().startswith("{"):
        return json.loads(spec)
    with open(spec, encoding="utf-8") as fh:
        return json.load(fh)


def _parse_init(spec, dimension: int, to_index):
    """Initial state from "basis:<i>", "superpos:i,j,...", or [[pos,re,im],...].

    Returns the WalkState plus the raw (position, amplitude) entries, which
    the analytic command reuses as line coordinates.
    """
    if isinstance(spec, str):
        kind, _, rest = spec.partition(":")
        if kind == "basis":
            entries = [(int(rest), 1.0 + 0j)]
        elif kind == "superpos":
            positions = [int(s) for s in rest.split(",") if s]
            amp = 1.0 / math.sqrt(len(positions))
            entries = [(pos, complex(amp)) for pos in positions]
        else:
            raise ValueError(f"cannot parse initial state {spec!r}")
    else:
        entries = [(int(pos), complex(re, im)) for pos, re, im in spec]
    return superposition_state(dimension, [(to_index(pos), amp) for pos, amp in entries]), entries


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _line_operator(cfg: RunConfig, n: int):
    t0, t1 = line_tessellations(n, cfg.alpha, cfg.beta, cfg.phi0, cfg.phi1)
    return compose([(cfg.theta0, reflection_from_tessellation(t0)),
                    (cfg.theta1, reflection_from_tessellation(t1))])


def _require_thetas(cfg: RunConfig) -> None:
    if cfg.theta0 is None or cfg.theta1 is None:
        raise ValueError("set --theta, or both --theta0 and --theta1")


def _distribution_tsv(dist, extra_columns=None) -> str:
    order = np.argsort(dist.position_labels, kind="stable")
    header = ["position", "probability"]
    if extra_columns:
        header.extend(name for name, _ in extra_columns)
    lines = ["\t".join(header)]
    for i in order:
        p = float(dist.probabilities[i])
        extras = [float(col[i]) for _, col in extra_columns] if extra_columns else []
        if p == 0.0 and all(x == 0.0 for x in extras):
            continue
        row = [f"{int(dist.position_labels[i])}", f"{p:.17g}"]
        row.extend(f"{x:.17g}" for x in extras)
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"


def cmd_simulate(cfg: RunConfig) -> int:
    _require_thetas(cfg)
    if cfg.model == "line":
        n = cfg.ring_size if cfg.ring_size is not None else 4 * (cfg.steps + 1) + 8
        op = _line_operator(cfg, n)
        psi0, _ = _parse_init(cfg.init, n, lambda pos: pos % n)
        trajectory = evolve(op, psi0, cfg.steps)
        wrap_check(trajectory, guard_band=0)
        labels = ring_labels(n)
    elif cfg.model == "graph":
        if not cfg.graph:
            raise ValueError("graph model needs --graph FILE")
        with open(cfg.graph, encoding="utf-8") as fh:
            g, tessellations = from_document(json.load(fh))
        if len(tessellations) < 1:
            raise ValueError("graph file carries no tessellations")
        angles = [cfg.theta0, cfg.theta1] * ((len(tessellations) + 1) // 2)
        op = compose([(angles[i], reflection_from_tessellation(t))
                      for i, t in enumerate(tessellations)])
        n = g.vertex_count
        psi0, _ = _parse_init(cfg.init, n, lambda pos: pos)
        trajectory = evolve(op, psi0, cfg.steps)
        labels = np.arange(n)
    else:
        raise ValueError(f"unknown model {cfg.model!r} for simulate")
    dist = distribution(trajectory[-1], labels)
    _write(cfg.out, _distribution_tsv(dist))
    summary = moments(dist, step=cfg.steps)
    print(f"total_probability\t{float(dist.probabilities.sum()):.17g}")
    print(f"sigma\t{summary.sigma:.17g}")
    return 0


def cmd_analytic(cfg: RunConfig) -> int:
    _require_thetas(cfg)
    if cfg.model != "line":
        raise ValueError("analytic mode works on the line model only")
    if cfg.theta0 != cfg.theta1:
        raise ValueError("analytic mode needs a common theta (theta0 == theta1)")
    n = cfg.ring_size if cfg.ring_size is not None else 4 * (cfg.steps + 1) + 8
    params = line_analytic.LineParams(cfg.theta0, cfg.alpha, cfg.beta, cfg.phi0, cfg.phi1)
    psi0, entries = _parse_init(cfg.init, n, lambda pos: pos % n)
    start_nodes = int(os.environ.get("SQW_QUAD_NODES", line_analytic.QUAD_START_NODES))
    labels = ring_labels(n)
    analytic = line_analytic.wavefunction(params, cfg.steps, positions=labels,
                                          initial=entries, start_nodes=start_nodes)
    op = _line_operator(cfg, n)
    trajectory = evolve(op, psi0, cfg.steps)
    wrap_check(trajectory, guard_band=0)
    simulated = trajectory[-1].amplitudes
    deviation = np.abs(analytic - simulated)
    dist = distribution(WalkState(analytic), labels)
    sim_prob = np.abs(simulated) ** 2
    text = _distribution_tsv(dist, extra_columns=[("probability_sim", sim_prob),
                                                  ("deviation", deviation)])
    _write(cfg.out, text)
    print(f"max_deviation\t{float(deviation.max()):.17g}")
    print(f"total_probability\t{float(dist.probabilities.sum()):.17g}")
    return 0


def cmd_sigma_surface(args) -> int:
    thetas = np.linspace(args.theta_min, args.theta_max, args.theta_count)
    alphas = np.linspace(args.alpha_min, args.alpha_max, args.alpha_count)
    table = line_analytic.sigma2_surface(thetas, alphas)
    _write(args.out, line_analytic.surface_to_tsv(thetas, alphas, table))
    return 0


def cmd_embed(args) -> int:
    with open(args.graph, encoding="utf-8") as fh:
        doc = json.load(fh)
    g, _ = from_document(doc)
    coin = _load_coin(args.coin) if args.coin else doc.get("coin")
    if coin is None:
        raise ValueError("no coin descriptor: add a 'coin' key or pass --coin")
    if "theta" in coin:
        coin = dict(coin, theta=parse_angle(coin["theta"]))
    cw = coined_walk_from_descriptor(g, coin)
    rng = np.random.default_rng(0)
    raw = rng.standard_normal(cw.expansion.arc_count) \
        + 1j * rng.standard_normal(cw.expansion.arc_count)
    psi0 = WalkState(raw / np.linalg.norm(raw))
    report = certify_equivalence(cw, args.steps, psi0)
    out = to_document(cw.expansion.expanded,
                      [shift_tessellation(cw.expansion), coin_tessellation(cw.expansion)])
    out["report"] = {
        "max_state_deviation": report.max_state_deviation,
        "steps_checked": report.steps_checked,
        "arcs": [[v, j] for v, j in report.bijection_used.arcs],
    }
    _write(args.out, json.dumps(out, indent=2) + "\n")
    print(f"max_state_deviation\t{report.max_state_deviation:.17g}")
    return 0


def cmd_validate(args) -> int:
    with open(args.graph, encoding="utf-8") as fh:
        g, tessellations = from_document(json.load(fh))
    findings = []
    valid = []
    for i, t in enumerate(tessellations):
        try:
            validate_tessellation(g, t)
        except WalkError as exc:
            findings.append({"index": i, "valid": False, "error": str(exc)})
        else:
            findings.append({"index": i, "valid": True})
            valid.append(t)
    uncovered = sorted(union_covers_edges(g, valid))
    report = {
        "tessellations": findings,
        "uncovered_edges": [[u, v] for u, v in uncovered],
    }
    print(json.dumps(report, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqw",
        description="Staggered quantum walks driven by exponentials of "
                    "tessellation-induced reflections.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_flags(p):
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--model", choices=["line", "graph"])
        for name in _ANGLE_KEYS:
            p.add_argument(f"--{name}", type=parse_angle, metavar="ANGLE")
        p.add_argument("--steps", type=int)
        p.add_argument("--ring-size", type=int, dest="ring_size")
        p.add_argument("--graph", help="graph+tessellations JSON (graph model)")
        p.add_argument("--init", help='"basis:<i>" or "superpos:i,j,..."')
        p.add_argument("--out", help="output path, '-' for stdout")

    p_sim = sub.add_parser("simulate", help="evolve and write the distribution")
    add_run_flags(p_sim)
    p_sim.set_defaults(func=lambda a: cmd_simulate(_merge_config(a)))

    p_ana = sub.add_parser("analytic",
                           help="momentum-space wavefunction vs direct simulation")
    add_run_flags(p_ana)
    p_ana.set_defaults(func=lambda a: cmd_analytic(_merge_config(a)))

    p_surf = sub.add_parser("sigma-surface", help="variance-rate table over (theta, alpha)")
    p_surf.add_argument("--theta-min", type=parse_angle, default=0.0)
    p_surf.add_argument("--theta-max", type=parse_angle, default=math.pi)
    p_surf.add_argument("--theta-count", type=int, default=101)
    p_surf.add_argument("--alpha-min", type=parse_angle, default=0.0)
    p_surf.add_argument("--alpha-max", type=parse_angle, default=math.pi)
    p_surf.add_argument("--alpha-count", type=int, default=101)
    p_surf.add_argument("--out", default="-")
    p_surf.set_defaults(func=cmd_sigma_surface)

    p_embed = sub.add_parser("embed", help="convert a coined walk and certify it")
    p_embed.add_argument("--graph", required=True)
    p_embed.add_argument("--coin", help="coin descriptor: inline JSON or a path")
    p_embed.add_argument("--steps", type=int, default=16)
    p_embed.add_argument("--out", default="-")
    p_embed.set_defaults(func=cmd_embed)

    p_val = sub.add_parser("validate", help="check tessellations and edge coverage")
    p_val.add_argument("--graph", required=True)
    p_val.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (WalkError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
