"""Command-line entry points: serve, replay, simulate, experiment, analyze, stats."""

from __future__ import annotations

import argparse
import json
import sys

from .domain import canonical_json
from .service.config import ServiceConfig
from .service.events import EventLog, replay, snapshot_hash
from .simulator.experiment import ExperimentConfig, run_field_experiment_replica
from .simulator.voting import run_voting_sim, sim_inputs_from_dict
from .stats.analysis import analyze_rows, format_analysis, load_experiment_csv
from .stats.deployment import deployment_table, format_deployment_table


def _load_service_config(args) -> ServiceConfig:
    config = ServiceConfig.from_file(args.config) if args.config else ServiceConfig()
    overrides = {}
    if args.host is not None:
        overrides["host"] = args.host
    if args.port is not None:
        overrides["port"] = args.port
    if args.log_path is not None:
        overrides["log_path"] = args.log_path
    if args.shown_set_scope is not None:
        overrides["shown_set_scope"] = args.shown_set_scope
    if overrides:
        base = {
            "host": config.host,
            "port": config.port,
            "log_path": config.log_path,
            "fsync": config.fsync,
            "shown_set_scope": config.shown_set_scope,
        }
        base.update(overrides)
        config = ServiceConfig(reputation=config.reputation, **base)
    return config


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import CoachService, create_app

    config = _load_service_config(args)
    service = CoachService(config)
    app = create_app(service)
    print(f"serving on http://{config.host}:{config.port} (log: {config.log_path})")
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    return 0


def cmd_replay(args) -> int:
    events = EventLog(args.log).read()
    state = replay(events, args.shown_set_scope or "forever")
    print(f"events: {state.event_count}")
    print(f"state_hash: {snapshot_hash(state)}")
    return 0


def cmd_simulate(args) -> int:
    with open(args.config, encoding="utf-8") as handle:
        data = json.load(handle)
    workers, snippets, rounds, seed, config = sim_inputs_from_dict(data)
    report = run_voting_sim(workers, snippets, rounds, seed, config)
    if args.json:
        print(canonical_json(report.to_record()))
    else:
        print(f"rounds = {report.rounds}, votes cast = {report.votes_cast}")
        print(f"precision@4 = {report.precision_at_4:.4g}")
        print(f"kendall tau = {report.kendall_tau:.4g}")
        for k in sorted(report.coverage):
            print(f"coverage (>= {k} assessments) = {report.coverage[k]:.4g}")
    return 0


def cmd_experiment(args) -> int:
    config = ExperimentConfig.from_file(args.config)
    report = run_field_experiment_replica(config)
    if args.json:
        print(canonical_json(report.to_record()))
    else:
        print(report.format_text())
    return 0


def cmd_analyze(args) -> int:
    rows = load_experiment_csv(args.csv)
    analysis = analyze_rows(rows, alpha=args.alpha)
    if args.json:
        print(canonical_json(analysis.to_record()))
    else:
        print(format_analysis(analysis))
    return 0


def cmd_stats(args) -> int:
    events = EventLog(args.log).read()
    table = deployment_table(events)
    if args.json:
        print(canonical_json(table.to_record()))
    else:
        print(format_deployment_table(table))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coachd", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--config", help="service config JSON file")
    serve.add_argument("--host")
    serve.add_argument("--port", type=int)
    serve.add_argument("--log-path")
    serve.add_argument("--shown-set-scope", choices=("forever", "session"))
    serve.set_defaults(func=cmd_serve)

    rep = sub.add_parser("replay", help="replay an event log and print the state hash")
    rep.add_argument("log")
    rep.add_argument("--shown-set-scope", choices=("forever", "session"))
    rep.set_defaults(func=cmd_replay)

    sim = sub.add_parser("simulate", help="run the selector voting simulation")
    sim.add_argument("config")
    sim.add_argument("--json", action="store_true")
    sim.set_defaults(func=cmd_simulate)

    exp = sub.add_parser("experiment", help="run the field-experiment replica")
    exp.add_argument("config")
    exp.add_argument("--json", action="store_true")
    exp.set_defaults(func=cmd_experiment)

    ana = sub.add_parser("analyze", help="analyze an experiment CSV")
    ana.add_argument("csv")
    ana.add_argument("--alpha", type=float, default=0.05)
    ana.add_argument("--json", action="store_true")
    ana.set_defaults(func=cmd_analyze)

    st = sub.add_parser("stats", help="deployment table from an event log")
    st.add_argument("log")
    st.add_argument("--json", action="store_true")
    st.set_defaults(func=cmd_stats)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
