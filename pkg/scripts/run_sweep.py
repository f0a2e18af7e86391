"""Run a sweep config and summarize how tight each inequality is.

    python scripts/run_sweep.py configs/headline.cfg --output headline.csv
"""

import argparse
import sys
from pathlib import Path

from schoenberg.harness import all_pass, load_config, run_sweep, to_csv, to_json


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("config")
    p.add_argument("--output", help="write the CSV/JSON table here")
    args = p.parse_args(argv)

    cfg = load_config(args.config)
    rows = run_sweep(cfg)
    if args.output:
        text = to_json(rows) if cfg.output_format == "json" else to_csv(rows)
        Path(args.output).write_text(text, encoding="utf-8")

    print(f"{'fn':12s} {'max w2(d)/err':>14s} {'max err/(M2 w2)':>16s} {'max w2/(L err)':>15s}")
    for name in cfg.function_names:
        mine = [r for r in rows if r.fn == name and r.err_norm > 1e-12]
        if not mine:
            print(f"{name:12s} {'(exact)':>14s}")
            continue
        five = max(r.omega2_delta / r.err_norm for r in mine)
        upper = max(r.err_norm / (r.upper_const * r.omega2_t) for r in mine if r.omega2_t > 0)
        lower = max(r.omega2_t / (r.lower_const * r.err_norm) for r in mine)
        print(f"{name:12s} {five:14.4f} {upper:16.4f} {lower:15.4f}")
    ok = all_pass(rows)
    print(f"{len(rows)} rows, all checks {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
