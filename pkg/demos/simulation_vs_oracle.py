"""Cross-check the trajectory simulator against the exact level-chain oracle.

Runs the Metropolis algorithm on OneMax and on a cliff landscape at desk
scale, then compares the Monte Carlo means with the exact expected runtimes
via z-scores.  A healthy simulator keeps |z| well below 4.  Takes roughly
half a minute.

    python3 demos/simulation_vs_oracle.py
"""

from slslab import (
    ExperimentPlan,
    HeuristicConfig,
    compare_with_oracle,
    run_experiment,
)

PLANS = [
    ExperimentPlan(
        kind="onemax",
        n=30,
        sweep_name="alpha",
        sweep_values=(5.0, 10.0, 30.0),
        algorithms=(HeuristicConfig("ma", alpha=5.0),),
        trials=5000,
        master_seed=11,
    ),
    ExperimentPlan(
        kind="cliff",
        n=30,
        m=5,
        d=1.0,
        sweep_name="alpha",
        sweep_values=(10.0, 30.0),
        algorithms=(HeuristicConfig("ma", alpha=10.0),),
        trials=5000,
        master_seed=12,
    ),
]


def main():
    for plan in PLANS:
        print(f"{plan.kind}, n={plan.n}, sweeping alpha over {plan.sweep_values}")
        result = run_experiment(plan)
        for row, entry in zip(result.rows, compare_with_oracle(result)):
            print(
                f"  alpha={row.sweep_value:<6g} mean={row.mean_iterations:>10.1f} "
                f"exact={entry['exact']:>10.1f} z={entry['z']:+.2f} [{entry['status']}]"
            )
        print()


if __name__ == "__main__":
    main()
