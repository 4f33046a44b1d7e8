"""Command-line surface: build arrays, simulate retrievals, audit, compare.

Exit codes: 0 on success (and on an all-pass audit), 1 when an audit
fails, 2 on usage or parameter errors.
"""

import argparse
import json
import random
import sys
from math import gcd

from . import sda
from .audit import run_full_audit
from .scheme import (
    RetrievalTranscript,
    minimal_length,
    plan_storage,
    random_library,
    retrieve,
)
from .sfpir import random_base_vector

ANALYZE_HEADER = (
    "n,m,gcd,eta_equal,eta_greedy,eta_improved,eta_lower,"
    "f_equal,f_greedy,f_improved,f_lower,gap_bound"
)

_BUILDERS = {
    "equal": sda.build_equal_size,
    "greedy": sda.build_greedy,
    "improved": sda.build_improved,
}


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_build(args) -> int:
    array = _BUILDERS[args.method](args.n, args.m)
    eta = sda.column_profile(array).eta
    _write_or_print(sda.render_sda(array), args.out)
    print(f"eta={eta} F={eta * (args.m - 1)}")
    return 0


def transcript_record(n: int, m: int, k: int, transcript: RetrievalTranscript, match: bool) -> dict:
    """The transcript serialization emitted by `simulate`."""
    return {
        "n": n,
        "m": m,
        "k": k,
        "theta": transcript.theta,
        "groups": [
            {
                "group": g.group,
                "servers": list(g.servers),
                "base": list(g.base),
                "queries": [list(q) for q in g.queries],
                "silent": [a.silent for a in g.answers],
                "payload_len": [0 if a.silent else len(a.payload) for a in g.answers],
            }
            for g in transcript.groups
        ],
        "downloaded_symbols": transcript.downloaded_symbols,
        "decode_match": match,
    }


def cmd_simulate(args) -> int:
    if args.theta < 1 or args.theta > args.k:
        raise ValueError(f"theta must be in 1..{args.k} (indices are 1-based)")
    if args.l_mult < 1:
        raise ValueError("l-mult must be a positive integer")
    alpha = sda.alpha_from_profile(sda.column_profile(sda.build_greedy(args.n, args.m)))
    file_len = args.l_mult * minimal_length(args.n, args.m)
    layout, plan = plan_storage(alpha, args.k, file_len)
    library = random_library(args.k, file_len, args.seed)
    rng = random.Random(args.seed + 1)  # independent of the library contents
    bases = [random_base_vector(rng, args.m, args.k) for _ in layout.groups]
    transcript = retrieve(args.theta, plan, layout, library, bases)
    match = transcript.decoded_file == library.file(args.theta)
    record = transcript_record(args.n, args.m, args.k, transcript, match)
    _write_or_print(json.dumps(record, indent=2) + "\n", args.out)
    if args.out:
        print(f"downloaded_symbols={transcript.downloaded_symbols} decode_match={match}")
    return 0


def cmd_audit(args) -> int:
    if args.m == 1:
        raise ValueError("M=1 retrieval out of scope: the user would download everything")
    report = run_full_audit(args.n, args.m, args.k, seed=args.seed)
    print(report.table())
    return 0 if report.overall else 1


def analysis_row(n: int, m: int) -> dict:
    """One comparison row; improved entries are None when no d >= 2 gives
    N = d*M+1 or d*M-1, or when M < 3."""
    g = gcd(n, m)
    eta_equal = sda.column_profile(sda.build_equal_size(n, m)).eta
    eta_greedy = sda.column_profile(sda.build_greedy(n, m)).eta
    eta_improved = None
    if m >= 3 and ((n % m == 1 and n // m >= 2) or (n % m == m - 1 and (n + 1) // m >= 2)):
        eta_improved = sda.column_profile(sda.build_improved(n, m)).eta
    eta_lower = sda.eta_lower_bound(n, m)
    return {
        "n": n,
        "m": m,
        "gcd": g,
        "eta_equal": eta_equal,
        "eta_greedy": eta_greedy,
        "eta_improved": eta_improved,
        "eta_lower": eta_lower,
        "f_equal": eta_equal * (m - 1),
        "f_greedy": eta_greedy * (m - 1),
        "f_improved": None if eta_improved is None else eta_improved * (m - 1),
        "f_lower": eta_lower * (m - 1),
        "gap_bound": min(m, n - m) // g if m < n else 1,
    }


def cmd_analyze(args) -> int:
    if args.n_max < 2:
        raise ValueError("n-max must be at least 2")
    lines = [ANALYZE_HEADER]
    for n in range(2, args.n_max + 1):
        for m in range(2, n + 1):
            row = analysis_row(n, m)
            lines.append(
                ",".join("" if row[key] is None else str(row[key]) for key in ANALYZE_HEADER.split(","))
            )
    _write_or_print("\n".join(lines) + "\n", args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scpir",
        description="Storage design arrays and private retrieval: build, simulate, audit, compare.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="construct a storage design array")
    build.add_argument("--n", type=int, required=True, help="number of servers")
    build.add_argument("--m", type=int, required=True, help="per-column storage budget")
    build.add_argument("--method", choices=sorted(_BUILDERS), default="greedy")
    build.add_argument("--out", help="write the array here instead of stdout")
    build.set_defaults(handler=cmd_build)

    simulate = sub.add_parser("simulate", help="run one private retrieval end to end")
    simulate.add_argument("--n", type=int, required=True)
    simulate.add_argument("--m", type=int, required=True)
    simulate.add_argument("--k", type=int, required=True, help="number of files")
    simulate.add_argument("--theta", type=int, required=True, help="wanted file, 1-based")
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--l-mult", type=int, default=1, help="file length in minimal units")
    simulate.add_argument("--out", help="write the JSON transcript here instead of stdout")
    simulate.set_defaults(handler=cmd_simulate)

    audit = sub.add_parser("audit", help="run the full audit battery on the greedy scheme")
    audit.add_argument("--n", type=int, required=True)
    audit.add_argument("--m", type=int, required=True)
    audit.add_argument("--k", type=int, required=True)
    audit.add_argument("--seed", type=int, default=0)
    audit.set_defaults(handler=cmd_audit)

    analyze = sub.add_parser("analyze", help="emit the construction comparison table as CSV")
    analyze.add_argument("--n-max", type=int, required=True)
    analyze.add_argument("--out", help="write the CSV here instead of stdout")
    analyze.set_defaults(handler=cmd_analyze)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
