import argparse
import sys

from .curve_model import CurveError
from .pipeline import ConfigError, emit_report, load_config, run_pipeline

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INCONCLUSIVE = 3


def build_parser():
    p = argparse.ArgumentParser(prog="kumbrauer",
                                description="Effective bound for Br(X)/Br_0(X) of the Kummer surface of Jac(C).")
    p.add_argument("config", nargs="?", help="JSON or TOML config file")
    p.add_argument("--curve", help="e.g. 'y^2 = x^6+x^3+x+1'")
    p.add_argument("--degree", type=int, help="[k:Q] (default 1)")
    p.add_argument("--tau-imdet", dest="tau_imdet", help="det Im(tau) of a period matrix")
    p.add_argument("--abs-j10", dest="abs_j10", help="|J10| for the same period matrix")
    p.add_argument("--height", help="upper bound for the Faltings height (replaces the analytic inputs)")
    p.add_argument("--prime-budget", dest="prime_budget", type=int, help="largest prime used (default 200)")
    p.add_argument("--galois", help="'sampled' or 'exact:(1,2);(1,2,3,4,5,6)'")
    p.add_argument("--rank-lower-bound", dest="rank_lower_bound", type=int,
                   help="known lower bound for the NS rank (default 1)")
    p.add_argument("--format", choices=("json", "text"), default=None)
    p.add_argument("--strict", action="store_true", help="exit 3 when the rank is not certified")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config) if args.config else {}
        for key in ("curve", "degree", "tau_imdet", "abs_j10", "height", "prime_budget", "galois",
                    "rank_lower_bound"):
            value = getattr(args, key)
            if value is not None:
                config[key] = value
        fmt = args.format or config.pop("format", "json")
        strict = args.strict or bool(config.pop("strict", False))
        report = run_pipeline(config)
    except (ConfigError, CurveError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.buffer.write(emit_report(report, fmt))
    sys.stdout.flush()
    if strict and not report.rank.certified:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
