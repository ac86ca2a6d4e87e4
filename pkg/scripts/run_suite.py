"""Run the inequality suite over the built-in families and print the tightest margin per check."""

import argparse
import time
from collections import defaultdict

from angdil import pipeline
from angdil.config import load_config
from angdil.report import write_tables


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default="configs/suite.yaml")
    ap.add_argument("--out", default="results/suite")
    args = ap.parse_args()

    cfg = load_config(args.config, {"output.directory": args.out})
    t0 = time.perf_counter()
    run = pipeline.run_check(cfg)
    elapsed = time.perf_counter() - t0
    out = cfg.output_dir()
    out.mkdir(parents=True, exist_ok=True)
    write_tables(out, "checks", run.rows, pipeline.CHECK_COLUMNS, cfg.output.formats)

    tight = defaultdict(lambda: (float("inf"), None))
    for row in run.rows:
        key = (row["inequality_id"], row["p"])
        if row["margin"] < tight[key][0]:
            tight[key] = (row["margin"], row)
    print(f"{'check':24s} {'p':>5s} {'min margin':>12s}  sharp  map")
    for (ident, p), (margin, row) in sorted(tight.items(), key=lambda kv: (kv[0][0], str(kv[0][1]))):
        print(f"{ident:24s} {p:5g} {margin:12.3e}  {str(row['sharp']):5s}  {row['map']}")
    print(run.summary())
    print(f"elapsed {elapsed:.1f}s")
    return run.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
