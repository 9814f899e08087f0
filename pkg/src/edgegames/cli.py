"""Command-line front end.

Subcommands: play, solve, sweep, verify, constants, bounds.
Exit codes: 0 success, 2 validation error, 3 budget exhaustion.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .engine import GameRules, IllegalMoveError, play_match
from .graphs import load_graph, mask_of
from .harness import (
    SweepConfig,
    format_bounds_text,
    parse_n_range,
    parse_property,
    report_bounds,
    run_sweep,
    sweep_to_csv,
    sweep_to_json,
)
from .regularity import (
    ConstantSchedule,
    check_p1,
    check_p2,
    check_density_lemma,
    is_regular_pair,
    round_robin_partition,
    slicing_alpha,
    validate_constants,
    verify_slicing,
)
from .solver import BudgetExhausted, solve_tau
from .strategies import parse_strategy


def _write(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _vertex_mask(spec: str) -> int:
    return mask_of(int(x) for x in spec.split(","))


def cmd_play(args) -> int:
    prop = parse_property(args.property)
    rules = GameRules(n=args.n, prop=prop)
    avoider = parse_strategy(args.avoider).fork(args.seed)
    enforcer = parse_strategy(args.enforcer).fork(args.seed ^ 0x5DEECE66D)
    transcript = play_match(
        avoider, enforcer, rules, max_rounds=args.max_rounds, seed=args.seed
    )
    _write(transcript.to_jsonl(), args.out)
    return 0


def cmd_solve(args) -> int:
    prop = parse_property(args.property)
    rules = GameRules(n=args.n, prop=prop)
    start = time.perf_counter()
    result = solve_tau(rules, budget=args.budget, symmetry=not args.no_symmetry)
    elapsed_ms = int(1000 * (time.perf_counter() - start))
    payload = {
        "n": args.n,
        "property": args.property,
        "convention": rules.convention,
        "first_mover": rules.role_name(rules.first_mover),
        "value": result.t if result.value == "exact" else result.value,
        "nodes": result.nodes,
        "elapsed_ms": elapsed_ms,
    }
    _write(json.dumps(payload, sort_keys=True) + "\n", args.out)
    return 3 if result.value == "unknown" else 0


def cmd_sweep(args) -> int:
    cfg = SweepConfig(
        n_values=parse_n_range(args.n),
        trials=args.trials,
        avoider=args.avoider,
        enforcer=args.enforcer,
        property_descriptor=args.property,
        master_seed=args.seed,
        eps=Fraction(args.eps),
        max_rounds=args.max_rounds,
    )
    rows, summary = run_sweep(cfg)
    text = sweep_to_json(rows, summary) if args.format == "json" else sweep_to_csv(rows, summary)
    _write(text, args.out)
    return 0


def cmd_verify(args) -> int:
    G = load_graph(args.graph)
    if args.check == "p1":
        ok, mindeg = check_p1(G, Fraction(args.eps))
        payload = {"check": "p1", "passed": ok, "min_degree": mindeg}
    elif args.check == "p2":
        report = check_p2(
            G,
            Fraction(args.eps),
            mode=args.mode,
            trials=args.trials,
            seed=args.seed,
            set_size=args.set_size,
        )
        payload = {"check": "p2", **report.to_json()}
    elif args.check == "regular-pair":
        report = is_regular_pair(
            G,
            _vertex_mask(args.A),
            _vertex_mask(args.B),
            Fraction(args.alpha),
            mode=args.mode,
            trials=args.trials,
            seed=args.seed,
        )
        payload = {"check": "regular-pair", **report.to_json()}
    elif args.check == "density-lemma":
        outer = round_robin_partition(G.n, args.parts)
        inner = []
        for part in outer:
            chosen = 0
            for v in range(G.n):
                if part >> v & 1:
                    chosen |= 1 << v
                    if chosen.bit_count() == args.inner_size:
                        break
            inner.append(chosen)
        rep = check_density_lemma(G, outer, inner, Fraction(args.E))
        payload = {
            "check": "density-lemma",
            "hypotheses_ok": rep.hypotheses_ok,
            "lhs": rep.lhs,
            "rhs_num": rep.rhs.numerator,
            "rhs_den": rep.rhs.denominator,
            "conclusion_ok": rep.conclusion_ok,
            "deviant_pairs": rep.deviant_pairs,
            "failures": rep.failures,
        }
    elif args.check == "slicing":
        alpha = Fraction(args.alpha)
        if args.A and args.B:
            violations, trials = verify_slicing(
                G,
                _vertex_mask(args.A),
                _vertex_mask(args.B),
                alpha,
                args.Li,
                args.Lj,
                trials=args.trials,
                seed=args.seed,
            )
            payload = {
                "check": "slicing",
                "alpha_prime": str(slicing_alpha(alpha, args.L0, args.Li, args.Lj)),
                "violations": violations,
                "trials": trials,
            }
        else:
            payload = {
                "check": "slicing",
                "alpha_prime": str(slicing_alpha(alpha, args.L0, args.Li, args.Lj)),
            }
    else:
        raise ValueError("unknown check %r" % args.check)
    _write(json.dumps(payload, sort_keys=True) + "\n", args.out)
    return 0


def cmd_constants(args) -> int:
    schedule = ConstantSchedule(
        epsilon=Fraction(args.epsilon),
        E0=Fraction(args.e0),
        E1=Fraction(args.e1),
        eta=Fraction(args.eta),
        delta=Fraction(args.delta),
        gamma=Fraction(args.gamma),
        f=args.f,
        k=args.k,
        S0=args.s0,
        S1=args.s1,
        m=args.m,
    )
    valid, violations = validate_constants(
        schedule, n=args.n, strict_e1=args.strict_e1
    )
    _write(
        json.dumps({"valid": valid, "violations": violations}, sort_keys=True) + "\n",
        args.out,
    )
    return 0


def cmd_bounds(args) -> int:
    report = report_bounds(args.n, args.k, args.variant)
    if args.format == "json":
        _write(json.dumps(report, sort_keys=True) + "\n", args.out)
    else:
        _write(format_bounds_text(report), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="edgegames",
        description="Avoider-Enforcer edge games on K_n: matches, exact values, "
        "pseudo-randomness and regularity verification, bound reports.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    play = sub.add_parser("play", help="play one match and emit a JSONL transcript")
    play.add_argument("--n", type=int, required=True)
    play.add_argument("--avoider", default="first")
    play.add_argument("--enforcer", default="first")
    play.add_argument("--property", default="edge")
    play.add_argument("--seed", type=int, default=0)
    play.add_argument("--max-rounds", type=int, default=None)
    play.add_argument("--out", default=None)
    play.set_defaults(func=cmd_play)

    solve = sub.add_parser("solve", help="exact game value by minimax")
    solve.add_argument("--n", type=int, required=True)
    solve.add_argument("--property", default="edge")
    solve.add_argument("--budget", type=int, default=None)
    solve.add_argument("--no-symmetry", action="store_true")
    solve.add_argument("--out", default=None)
    solve.set_defaults(func=cmd_solve)

    sweep = sub.add_parser("sweep", help="seeded match sweep with CSV/JSON rows")
    sweep.add_argument("--n", required=True, help="e.g. 6:30, 6:30:2, or 6,10,14")
    sweep.add_argument("--trials", type=int, default=1)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--avoider", default="turan:2")
    sweep.add_argument("--enforcer", default="random")
    sweep.add_argument("--property", default="subgraph:K3")
    sweep.add_argument("--eps", default="1/10")
    sweep.add_argument("--max-rounds", type=int, default=None)
    sweep.add_argument("--out", default=None)
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep.set_defaults(func=cmd_sweep)

    verify = sub.add_parser("verify", help="pseudo-randomness / regularity checks")
    verify.add_argument(
        "check", choices=("p1", "p2", "regular-pair", "density-lemma", "slicing")
    )
    verify.add_argument("--graph", required=True, help="graph file or generator name")
    verify.add_argument("--eps", default="1/10")
    verify.add_argument("--alpha", default="1/3")
    verify.add_argument("--E", default="1/2")
    verify.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    verify.add_argument("--trials", type=int, default=1000)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--set-size", type=int, default=None)
    verify.add_argument("--A", default=None, help="comma-separated vertices")
    verify.add_argument("--B", default=None)
    verify.add_argument("--parts", type=int, default=2)
    verify.add_argument("--inner-size", type=int, default=1)
    verify.add_argument("--L0", type=int, default=1)
    verify.add_argument("--Li", type=int, default=1)
    verify.add_argument("--Lj", type=int, default=1)
    verify.add_argument("--out", default=None)
    verify.set_defaults(func=cmd_verify)

    constants = sub.add_parser("constants", help="validate a constant schedule")
    constants.add_argument("--epsilon", required=True)
    constants.add_argument("--e0", required=True)
    constants.add_argument("--e1", required=True)
    constants.add_argument("--eta", required=True)
    constants.add_argument("--delta", required=True)
    constants.add_argument("--gamma", required=True)
    constants.add_argument("--f", type=int, required=True)
    constants.add_argument("--k", type=int, required=True)
    constants.add_argument("--s0", type=int, required=True)
    constants.add_argument("--s1", type=int, required=True)
    constants.add_argument("--m", type=int, default=1)
    constants.add_argument("--n", type=int, default=None)
    constants.add_argument("--strict-e1", action="store_true")
    constants.add_argument("--out", default=None)
    constants.set_defaults(func=cmd_constants)

    bounds = sub.add_parser("bounds", help="lower/upper bound report")
    bounds.add_argument("--n", type=int, required=True)
    bounds.add_argument("--k", type=int, required=True)
    bounds.add_argument("--variant", choices=("family", "nc"), default="family")
    bounds.add_argument("--format", choices=("text", "json"), default="text")
    bounds.add_argument("--out", default=None)
    bounds.set_defaults(func=cmd_bounds)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExhausted:
        print("error: node budget exhausted", file=sys.stderr)
        return 3
    except (ValueError, IllegalMoveError, OSError, ZeroDivisionError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
