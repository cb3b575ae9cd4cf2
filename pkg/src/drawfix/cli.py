"""Command line interface for the drawfix toolkit.

Subcommands:

fix       find one knockout draw that makes a chosen player the champion
count     count the winning draws of every player
winprob   tournament win probabilities under a uniform random draw
scan      which upset probabilities are consistent with an observed matrix
fit       heavy-tail analysis of the win probability distribution
gen-cr    write a synthetic rank-ordered probability matrix
kings     list the kings and the beats-everyone winner, if any

Every subcommand prints a short human-readable report to stdout.  With
``--output`` it also writes a machine-readable file (JSON or CSV via
``--format``).  Machine outputs never contain wall-clock timings, so a
rerun with the same inputs and seed reproduces them byte for byte.

Exit codes: 0 success, 2 bad input, 3 negative result (e.g. no winning
draw exists), 4 instance too large for exact analysis.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

from . import __version__
from .core import (
    DeterministicTournament,
    ProbabilisticTournament,
    ResourceLimitError,
)
from .crmodel import CrParams, average_upset_probability, generate_cr
from .ingest import (
    H2H_HEADER,
    MATCHES_HEADER,
    read_h2h,
    read_matches,
    read_prob_matrix,
    read_ranks,
    soccer_to_tournaments,
    tennis_to_tournaments,
    write_prob_matrix,
)
from .solver import (
    condorcet_winner,
    count_winning_draws,
    enumerate_winning_draws,
    find_winning_draw,
    kings,
)
from .stats import (
    EmpiricalSample,
    ccdf_points,
    fit_lognormal,
    fit_power_law,
    likelihood_ratio_test,
    scan_cr,
)
from .winprob import exact_uniform_win_probs, sample_uniform_win_probs

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NEGATIVE = 3
EXIT_RESOURCE = 4


# ---------------------------------------------------------------------------
# input loading


def _load_tournaments(
    args: argparse.Namespace,
) -> tuple[DeterministicTournament, ProbabilisticTournament]:
    """Load ``--input`` in whichever of the supported formats it is in.

    Recognizes probability matrices (JSON or CSV), soccer match lists and
    tennis head-to-head lists by their leading bytes / header row.  Match
    and head-to-head files also need ``--ranks``.
    """
    path = args.input
    with open(path, encoding="utf-8") as fh:
        head = fh.read(8192)
    if head.lstrip().startswith("{"):
        prob = read_prob_matrix(path)
        return prob.to_deterministic(), prob
    first = next(csv.reader(head.splitlines()), [])
    first = [cell.strip() for cell in first]
    if first == MATCHES_HEADER or first == H2H_HEADER:
        ranks_path = getattr(args, "ranks", None)
        if not ranks_path:
            raise ValueError("--ranks is required for match or head-to-head input")
        ranking = read_ranks(ranks_path)
        if first == MATCHES_HEADER:
            det, prob = soccer_to_tournaments(
                read_matches(path), ranking, season=getattr(args, "season", None)
            )
        else:
            det, prob = tennis_to_tournaments(read_h2h(path), ranking)
        return det, prob
    if first and first[0] == "name":
        prob = read_prob_matrix(path)
        return prob.to_deterministic(), prob
    raise ValueError(f"unrecognized input format in {path!r}")


# ---------------------------------------------------------------------------
# output helpers


def _meta(args: argparse.Namespace) -> dict:
    """Run metadata embedded in JSON outputs.  Deliberately excludes the
    output path itself and anything non-reproducible."""
    skip = {"func", "command", "output"}
    config = {}
    for key, value in vars(args).items():
        if key in skip or callable(value):
            continue
        config[key] = value
    return {
        "tool": "drawfix",
        "version": __version__,
        "command": args.command,
        "config": config,
    }


def _write_machine(
    args: argparse.Namespace,
    doc: dict,
    csv_header: list[str],
    csv_rows: list[list],
) -> None:
    output = getattr(args, "output", None)
    if not output:
        return
    if args.format == "json":
        with open(output, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True, indent=2)
            fh.write("\n")
    else:
        with open(output, "w", newline="", encoding="utf-8") as fh:
            fh.write(",".join(csv_header) + "\n")
            writer = csv.writer(fh, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
            for row in csv_rows:
                writer.writerow(["" if v is None else v for v in row])


def _fmt_opt(value, fmt: str = "") -> str:
    if value is None:
        return "n/a"
    return format(value, fmt)


# ---------------------------------------------------------------------------
# subcommands


def cmd_fix(args: argparse.Namespace) -> int:
    det, _ = _load_tournaments(args)
    target = det.players.id_of(args.target)
    start = time.perf_counter()
    result = find_winning_draw(det, target)
    elapsed = time.perf_counter() - start
    found = result.draw is not None
    bracket = result.draw.bracket_text(det.players.names) if found else None
    print(f"target: {args.target}")
    if found:
        print(f"winning draw: {bracket}")
    else:
        print(f"no draw makes {args.target} the champion")
    print(f"choice points: {result.stats.choice_points}")
    print(f"elapsed: {elapsed:.3f}s")
    doc = dict(_meta(args))
    doc["data"] = {
        "target": args.target,
        "found": found,
        "draw": list(result.draw.leaves) if found else None,
        "bracket": bracket,
        "choice_points": result.stats.choice_points,
    }
    _write_machine(
        args,
        doc,
        ["target", "found", "bracket", "choice_points"],
        [[args.target, int(found), "" if bracket is None else bracket,
          result.stats.choice_points]],
    )
    return EXIT_OK if found else EXIT_NEGATIVE


def cmd_count(args: argparse.Namespace) -> int:
    det, _ = _load_tournaments(args)
    players = det.players
    start = time.perf_counter()
    report = count_winning_draws(det)
    elapsed = time.perf_counter() - start
    rows = []
    for rank, pid in enumerate(players.by_rank(), start=1):
        count = report.counts[pid]
        nodes_first = nodes_all = None
        if args.stats in ("first", "all"):
            nodes_first = find_winning_draw(det, pid).stats.choice_points
        if args.stats == "all":
            if count <= args.limit:
                stream = enumerate_winning_draws(det, pid)
                for _ in stream:
                    pass
                nodes_all = stream.stats.choice_points
        rows.append(
            {
                "rank": rank,
                "name": players.names[pid],
                "count": count,
                "share": report.shares[pid],
                "nodes_first": nodes_first,
                "nodes_all": nodes_all,
            }
        )
    print(f"draws per bracket: {report.total_draws:,}")
    print(f"counting elapsed: {elapsed:.3f}s")
    name_w = max(4, max(len(r["name"]) for r in rows))
    count_w = max(13, max(len(f"{r['count']:,}") for r in rows))
    print(f"{'rank':>4}  {'name':<{name_w}}  {'winning draws':>{count_w}}  "
          f"{'share %':>10}  {'nodes 1st':>9}  {'nodes all':>9}")
    for r in rows:
        print(
            f"{r['rank']:>4}  {r['name']:<{name_w}}  {r['count']:>{count_w},}  "
            f"{r['share'] * 100:>10.6f}  {_fmt_opt(r['nodes_first']):>9}  "
            f"{_fmt_opt(r['nodes_all']):>9}"
        )
    doc = dict(_meta(args))
    doc["data"] = {"total_draws": report.total_draws, "players": rows}
    _write_machine(
        args,
        doc,
        ["rank", "name", "count", "share", "nodes_first", "nodes_all"],
        [
            [r["rank"], r["name"], r["count"], r["share"], r["nodes_first"],
             r["nodes_all"]]
            for r in rows
        ],
    )
    return EXIT_OK


def cmd_winprob(args: argparse.Namespace) -> int:
    _, prob = _load_tournaments(args)
    players = prob.players
    start = time.perf_counter()
    if args.mode == "exact":
        vector = exact_uniform_win_probs(prob)
    else:
        vector = sample_uniform_win_probs(
            prob,
            samples=args.samples,
            rng=args.seed,
            mode=args.mode,
            workers=args.workers,
        )
    elapsed = time.perf_counter() - start
    rows = []
    for rank, pid in enumerate(players.by_rank(), start=1):
        rows.append(
            {"rank": rank, "name": players.names[pid],
             "win_prob": float(vector.entries[pid])}
        )
    print(f"method: {vector.method}"
          + (f" ({vector.samples:,} samples)" if vector.samples else ""))
    print(f"elapsed: {elapsed:.3f}s")
    name_w = max(4, max(len(r["name"]) for r in rows))
    print(f"{'rank':>4}  {'name':<{name_w}}  {'win prob %':>12}")
    for r in rows:
        print(f"{r['rank']:>4}  {r['name']:<{name_w}}  {r['win_prob'] * 100:>12.6f}")
    doc = dict(_meta(args))
    doc["data"] = {
        "method": vector.method,
        "samples": vector.samples,
        "players": rows,
    }
    _write_machine(
        args,
        doc,
        ["rank", "name", "win_prob"],
        [[r["rank"], r["name"], r["win_prob"]] for r in rows],
    )
    return EXIT_OK


def cmd_scan(args: argparse.Namespace) -> int:
    _, prob = _load_tournaments(args)
    reference = EmpiricalSample.from_win_probs(
        exact_uniform_win_probs(prob), label="reference"
    )
    avg_upset = average_upset_probability(prob)
    start = time.perf_counter()
    result = scan_cr(
        reference,
        prob.n,
        step=args.step,
        threshold=args.threshold,
        reference_avg_upset=avg_upset,
    )
    elapsed = time.perf_counter() - start
    print(f"players: {prob.n}")
    print(f"average upset probability of input: {avg_upset:.4f}")
    if result.min_accepted is None:
        print(f"no upset probability accepted at threshold {args.threshold}")
    else:
        print(
            f"accepted upset probabilities at threshold {args.threshold}: "
            f"{result.min_accepted:.2f} .. {result.max_accepted:.2f}"
        )
    print(f"elapsed: {elapsed:.3f}s")
    print(f"{'upset prob':>10}  {'KS stat':>8}  {'p value':>8}  accepted")
    for step in result.steps:
        print(
            f"{step.upset_prob:>10.2f}  {step.ks.statistic:>8.4f}  "
            f"{step.ks.p_value:>8.4f}  {'yes' if step.accepted else 'no'}"
        )
    steps = [
        {
            "upset_prob": s.upset_prob,
            "statistic": s.ks.statistic,
            "p_value": s.ks.p_value,
            "method": s.ks.method,
            "accepted": s.accepted,
        }
        for s in result.steps
    ]
    doc = dict(_meta(args))
    doc["data"] = {
        "avg_upset": avg_upset,
        "min_accepted": result.min_accepted,
        "max_accepted": result.max_accepted,
        "steps": steps,
    }
    _write_machine(
        args,
        doc,
        ["upset_prob", "statistic", "p_value", "accepted"],
        [[s["upset_prob"], s["statistic"], s["p_value"], int(s["accepted"])]
         for s in steps],
    )
    return EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    _, prob = _load_tournaments(args)
    sample = EmpiricalSample.from_win_probs(
        exact_uniform_win_probs(prob), label="win probabilities"
    )
    lognormal = fit_lognormal(sample)
    powerlaw = fit_power_law(sample, scan=args.scan_xmin)
    lrt = likelihood_ratio_test(sample, lognormal, powerlaw)
    print(f"sample: {sample.size} win probabilities")
    print(
        f"log-normal fit: mu={lognormal.mu:.4f} sigma={lognormal.sigma:.4f} "
        f"loglik={lognormal.log_likelihood:.4f}"
    )
    print(
        f"power law fit:  alpha={powerlaw.alpha:.4f} xmin={powerlaw.xmin:.6g} "
        f"loglik={powerlaw.log_likelihood:.4f} (n={powerlaw.sample_size})"
    )
    print(
        f"likelihood ratio: r={lrt.r:.4f} p={lrt.p_value:.4f} "
        f"favored: {lrt.favored or 'inconclusive'}"
    )
    points = ccdf_points(sample)
    xs = [x for x, _ in points]
    curve_ln = lognormal.survival(xs)
    curve_pl = powerlaw.survival(xs)
    ccdf_rows = [
        [float(x), float(e), float(cl), float(cp)]
        for (x, e), cl, cp in zip(points, curve_ln, curve_pl)
    ]
    doc = dict(_meta(args))
    doc["data"] = {
        "lognormal": {
            "mu": lognormal.mu,
            "sigma": lognormal.sigma,
            "log_likelihood": lognormal.log_likelihood,
        },
        "powerlaw": {
            "alpha": powerlaw.alpha,
            "xmin": powerlaw.xmin,
            "log_likelihood": powerlaw.log_likelihood,
            "sample_size": powerlaw.sample_size,
        },
        "lrt": {"r": lrt.r, "p_value": lrt.p_value, "favored": lrt.favored},
        "ccdf": {
            "convention": "P(X > x)",
            "columns": ["x", "empirical", "lognormal", "powerlaw"],
            "rows": ccdf_rows,
        },
    }
    _write_machine(
        args,
        doc,
        ["x", "empirical_ccdf", "lognormal_ccdf", "powerlaw_ccdf"],
        ccdf_rows,
    )
    return EXIT_OK


def cmd_gen_cr(args: argparse.Namespace) -> int:
    params = CrParams(n=args.players, upset_prob=args.upset_prob)
    tournament = generate_cr(params)
    write_prob_matrix(args.output, tournament, fmt=args.format)
    print(
        f"wrote {params.n}-player matrix with upset probability "
        f"{params.upset_prob} to {args.output}"
    )
    return EXIT_OK


def cmd_kings(args: argparse.Namespace) -> int:
    det, _ = _load_tournaments(args)
    players = det.players
    king_ids = kings(det)
    winner = condorcet_winner(det)
    king_names = [players.names[pid] for pid in king_ids]
    print(f"kings ({len(king_names)}): {', '.join(king_names)}")
    if winner is None:
        print("beats-everyone winner: none")
    else:
        print(f"beats-everyone winner: {players.names[winner]}")
    doc = dict(_meta(args))
    doc["data"] = {
        "kings": king_names,
        "condorcet_winner": None if winner is None else players.names[winner],
    }
    _write_machine(
        args,
        doc,
        ["name", "is_condorcet_winner"],
        [[name, int(players.id_of(name) == winner)] for name in king_names],
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_input_opts(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--input", required=True,
                    help="probability matrix (json/csv), match list or head-to-head list")
    sp.add_argument("--ranks", help="rank,name csv (required for match/h2h input)")
    sp.add_argument("--season", help="season filter for match input")


def _add_output_opts(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--output", help="write machine-readable results to this file")
    sp.add_argument("--format", choices=("json", "csv"), default="json",
                    help="machine output format (default json)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drawfix",
        description="Knockout bracket analysis: draw fixing, win probabilities "
                    "and upset statistics.",
    )
    parser.add_argument("--version", action="version",
                        version=f"drawfix {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    fix = sub.add_parser("fix", help="find one draw that crowns the target")
    _add_input_opts(fix)
    _add_output_opts(fix)
    fix.add_argument("--target", required=True, help="player name to make champion")
    fix.set_defaults(func=cmd_fix)

    count = sub.add_parser("count", help="count winning draws for every player")
    _add_input_opts(count)
    _add_output_opts(count)
    count.add_argument("--stats", choices=("first", "all", "none"), default="first",
                       help="search effort columns: first solution, full "
                            "enumeration, or neither (default first)")
    count.add_argument("--limit", type=int, default=1_000_000,
                       help="skip full enumeration for players with more "
                            "winning draws than this (default 1000000)")
    count.set_defaults(func=cmd_count)

    winprob = sub.add_parser("winprob",
                             help="win probability of each player under a uniform draw")
    _add_input_opts(winprob)
    _add_output_opts(winprob)
    winprob.add_argument("--mode",
                         choices=("exact", "per-draw-exact", "full-simulation"),
                         default="exact", help="exact dynamic program or sampling")
    winprob.add_argument("--samples", type=int, default=200_000,
                         help="number of sampled draws (default 200000)")
    winprob.add_argument("--seed", type=int, default=0, help="sampling seed")
    winprob.add_argument("--workers", type=int, default=1,
                         help="worker threads for sampling (default 1)")
    winprob.set_defaults(func=cmd_winprob)

    scan = sub.add_parser("scan",
                          help="scan upset probabilities consistent with the input")
    _add_input_opts(scan)
    _add_output_opts(scan)
    scan.add_argument("--step", type=float, default=0.01,
                      help="grid step over upset probabilities (default 0.01)")
    scan.add_argument("--threshold", type=float, default=0.05,
                      help="KS acceptance p-value threshold (default 0.05)")
    scan.set_defaults(func=cmd_scan)

    fit = sub.add_parser("fit",
                         help="power law vs log-normal fit of win probabilities")
    _add_input_opts(fit)
    _add_output_opts(fit)
    fit.add_argument("--scan-xmin", action="store_true",
                     help="choose the power law cutoff by KS scan instead of "
                          "the sample minimum")
    fit.set_defaults(func=cmd_fit)

    gen_cr = sub.add_parser("gen-cr",
                            help="generate a rank-ordered synthetic matrix")
    gen_cr.add_argument("--players", type=int, required=True,
                        help="number of players (power of two)")
    gen_cr.add_argument("--upset-prob", type=float, required=True,
                        help="probability that the lower-ranked side wins")
    gen_cr.add_argument("--output", required=True, help="matrix destination")
    gen_cr.add_argument("--format", choices=("json", "csv"), default="json",
                        help="matrix format (default json)")
    gen_cr.set_defaults(func=cmd_gen_cr)

    kings_p = sub.add_parser("kings",
                             help="kings and beats-everyone winner of the input")
    _add_input_opts(kings_p)
    _add_output_opts(kings_p)
    kings_p.set_defaults(func=cmd_kings)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
