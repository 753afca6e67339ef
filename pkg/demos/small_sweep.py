"""Miniature end-to-end sweep through the library API.

Same pipeline as the comqel-experiments CLI, shrunk to finish in about a
minute: 5 dataset seeds on the 1-D Ackley task, plain vs conservative,
results written as CSV next to this script and a quantile summary printed.
Every row can be replayed bit-exactly from (seed, method, tau) alone.
"""

from pathlib import Path

from comqel import replay_run, run_experiment, summarize, write_csv, write_metadata
from comqel.experiments import ExperimentConfig, format_summary, rows_match


def main():
    config = ExperimentConfig(
        task="ackley1d",
        methods=("qel", "com_qel"),
        taus=(0.1,),
        n_seeds=5,
        epochs=60,
    )
    result = run_experiment(config, progress=True)

    out = Path(__file__).with_name("small_sweep_results.csv")
    write_csv(out, result)
    write_metadata(out.with_suffix(".csv.meta.json"), result)
    print(f"\nwrote {len(result)} rows to {out.name}")

    print(format_summary(summarize(result)))

    row = result.runs[-1]
    again = replay_run(config, row.seed, row.method, row.tau)
    print(f"\nreplay of seed={row.seed} method={row.method}: "
          f"{'bit-exact' if rows_match(row, again) else 'MISMATCH'}")


if __name__ == "__main__":
    main()
