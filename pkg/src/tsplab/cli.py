"""Command-line entry point: gen, solve, bench, tune, gap, render-prompt.

JSON results go to stdout, logs and the resolved configuration to stderr.
Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bench import (
    gap_table,
    json_report,
    load_plan,
    read_csv,
    run_experiment,
    time_limit_for,
    write_csv,
    write_json_report,
    _parse_instance_line,
)
from .errors import TsplabError
from .instances import (
    ROUNDING_MODES,
    build_distance_matrix,
    generate_random_instance,
    parse_instance,
    render_instance,
)
from .refine import PromptTemplate, RefinementRequest, load_template, render_prompt
from .solvers import ALGORITHMS, SolveBudget, get_algorithm, run_solver
from .tuning import SPACES, preset, race


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; the contract here is 1."""

    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="tsplab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random instance file")
    gen.add_argument("--n", type=int, required=True, help="number of cities")
    gen.add_argument("--seed", type=int, required=True, help="generator seed")
    gen.add_argument("--lo", type=float, default=0.0, help="coordinate lower bound")
    gen.add_argument("--hi", type=float, default=100.0, help="coordinate upper bound")
    gen.add_argument("--out", default=None, help="output path (stdout when omitted)")

    solve = sub.add_parser("solve", help="run one solver on one instance")
    solve.add_argument("--instance", required=True, help="instance file path")
    solve.add_argument("--algorithm", required=True, choices=sorted(ALGORITHMS))
    solve.add_argument("--variant", default="baseline", help="solver variant")
    solve.add_argument("--preset", default=None, help="named parameter preset column")
    solve.add_argument("--config", default=None,
                       help="inline parameters, e.g. ants=7,alpha=1.3")
    solve.add_argument("--seed", type=int, default=0, help="run seed")
    solve.add_argument("--time-scale", type=float, default=1.0,
                       help="seconds of budget per city")
    solve.add_argument("--max-evaluations", type=int, default=None,
                       help="optional evaluation budget")
    solve.add_argument("--rounding", default="none", choices=sorted(ROUNDING_MODES),
                       help="distance rounding mode")

    bench = sub.add_parser("bench", help="run an experiment plan")
    bench.add_argument("--plan", required=True, help="plan file path")
    bench.add_argument("--out-csv", default=None, help="write per-run rows here")
    bench.add_argument("--out-json", default=None, help="write the JSON report here")
    bench.add_argument("--workers", type=int, default=1, help="parallel processes")

    tune = sub.add_parser("tune", help="race sampled configurations")
    tune.add_argument("--algorithm", required=True, choices=sorted(SPACES))
    tune.add_argument("--instances", nargs="+", required=True,
                      help="instance lines, e.g. 'random n=10 seed=3' or 'file x.tsp'")
    tune.add_argument("--budget", type=int, default=500, help="total run budget")
    tune.add_argument("--seed", type=int, default=0, help="race seed")
    tune.add_argument("--candidates", type=int, default=16, help="configs to sample")
    tune.add_argument("--variant", default="baseline", help="solver variant")
    tune.add_argument("--time-scale", type=float, default=1.0,
                      help="seconds of budget per city")

    gap = sub.add_parser("gap", help="variant-vs-baseline gap table from a CSV")
    gap.add_argument("--csv", required=True, help="results CSV path")
    gap.add_argument("--baseline-variant", default="baseline",
                     help="variant name treated as the baseline")

    rp = sub.add_parser("render-prompt", help="render the refinement prompt")
    rp.add_argument("--template", default=None, help="template file (default embedded)")
    rp.add_argument("--name", required=True, help="algorithm name")
    rp.add_argument("--signature", required=True, help="main function signature")
    rp.add_argument("--code-file", required=True, help="file holding the code body")

    return parser


def _echo_config(seed, time_scale, rounding) -> None:
    print(f"config: seed={seed} time_scale={time_scale} rounding={rounding}",
          file=sys.stderr)


def _parse_inline_config(text: str) -> dict:
    values = {}
    for chunk in text.split(","):
        key, sep, value = chunk.partition("=")
        if not sep:
            raise ValueError(f"expected key=value in --config, got {chunk!r}")
        values[key.strip()] = float(value)
    return values


def _cmd_gen(args) -> int:
    _echo_config(args.seed, "-", "-")
    inst = generate_random_instance(args.n, args.seed, (args.lo, args.hi))
    text = render_instance(inst)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}", file=sys.stderr)
    return 0


def _cmd_solve(args) -> int:
    if args.preset is not None and args.config is not None:
        raise _UsageError("--preset and --config are mutually exclusive")
    _echo_config(args.seed, args.time_scale, args.rounding)
    with open(args.instance, encoding="utf-8") as fh:
        inst = parse_instance(fh.read())
    matrix = build_distance_matrix(inst, rounding=args.rounding)
    info = get_algorithm(args.algorithm)
    if args.variant not in info.variants:
        raise _UsageError(f"--variant {args.variant!r} not offered by {args.algorithm}")
    if args.preset is not None:
        config_id = args.preset
        values = dict(preset(args.algorithm, args.preset).values)
    elif args.config is not None:
        config_id = "custom"
        values = _parse_inline_config(args.config)
    elif info.tunable:
        config_id = "original"
        values = dict(preset(args.algorithm, "original").values)
    else:
        config_id = "default"
        values = {}
    budget = SolveBudget(
        time_limit=float(time_limit_for(inst.dimension, args.time_scale)),
        max_evaluations=args.max_evaluations,
    )
    outcome = run_solver(args.algorithm, inst, matrix, values, args.variant,
                         budget, args.seed)
    payload = {
        "algorithm": args.algorithm,
        "variant": args.variant,
        "config_id": config_id,
        "instance": inst.name,
        "n": inst.dimension,
        "seed": args.seed,
        "best": list(outcome.best),
        "best_cost": outcome.best_cost,
        "evaluations": outcome.evaluations,
        "nodes_expanded": outcome.nodes_expanded,
        "proven_optimal": outcome.proven_optimal,
        "elapsed_s": outcome.elapsed,
        "trajectory": outcome.trajectory,
    }
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_bench(args) -> int:
    plan = load_plan(args.plan)
    _echo_config(plan.base_seed, plan.time_scale, plan.rounding)
    records = run_experiment(plan, workers=args.workers)
    if args.out_csv is not None:
        write_csv(records, args.out_csv)
        print(f"wrote {args.out_csv}", file=sys.stderr)
    if args.out_json is not None:
        write_json_report(plan, records, args.out_json)
        print(f"wrote {args.out_json}", file=sys.stderr)
    json.dump(json_report(plan, records), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_tune(args) -> int:
    _echo_config(args.seed, args.time_scale, "none")
    specs = [_parse_instance_line(line) for line in args.instances]
    instances = [spec.resolve() for spec in specs]
    config, state = race(
        args.algorithm,
        instances=instances,
        budget=args.budget,
        candidates=args.candidates,
        seed=args.seed,
        time_scale=args.time_scale,
        variant=args.variant,
        return_state=True,
    )
    json.dump({
        "algorithm": config.algorithm,
        "values": config.values,
        "provenance": config.provenance,
        "runs_spent": state.spent,
        "rounds": state.rounds,
        "survivors": len(state.alive),
    }, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_gap(args) -> int:
    _echo_config("-", "-", "-")
    with open(args.csv, encoding="utf-8") as fh:
        records = read_csv(fh.read())
    json.dump(gap_table(records, baseline_variant=args.baseline_variant),
              sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_render_prompt(args) -> int:
    _echo_config("-", "-", "-")
    template = PromptTemplate() if args.template is None else load_template(args.template)
    with open(args.code_file, encoding="utf-8") as fh:
        code = fh.read()
    request = RefinementRequest(algorithm_name=args.name,
                                main_signature=args.signature, code=code)
    sys.stdout.write(render_prompt(template, request))
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "solve": _cmd_solve,
    "bench": _cmd_bench,
    "tune": _cmd_tune,
    "gap": _cmd_gap,
    "render-prompt": _cmd_render_prompt,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help path
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (TsplabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
