"""Time-dependent birth-death chain solved through the series engine.

Rates grow linearly in time (lam(t) = lam0 + lam1 t, same for mu), the state
space is truncated, and the last row is closed so the truncated generator
keeps row sums at zero.  Compare against the raw truncation to see how much
probability a leaky boundary loses.
"""

import argparse

from evoseries.bdp import BirthDeathSpec, Boundary, solve_bdp, stochasticity_report


def run(spec: BirthDeathSpec, t_final: float, steps: int, order: int) -> None:
    traj, _ = solve_bdp(spec, t_final, steps, order)
    report = stochasticity_report(traj)
    head = 6
    for i, t in enumerate(traj.times):
        if i % max(1, steps // 4) and i != steps:
            continue
        p = traj.distributions[i]
        cells = " ".join(f"{x:.5f}" for x in p[:head])
        print(f"  t={t:<6g} p[0:{head}] = {cells} ...  leak={traj.leakage[i]:.2e}")
    print(f"  max leakage {report.max_leakage:.3e},"
          f" most negative entry {report.worst_entry:.1e},"
          f" flagged: {report.any_negative}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--states", type=int, default=60)
    ap.add_argument("--t-final", type=float, default=0.8)
    ap.add_argument("--steps", type=int, default=16)
    ap.add_argument("--order", type=int, default=30)
    args = ap.parse_args()

    print(f"closed boundary, {args.states} states:")
    run(BirthDeathSpec(lam=(1.0, 0.5), mu=(1.0, 0.5), states=args.states),
        args.t_final, args.steps, args.order)

    # shrink the truncation so mass actually reaches the open edge by t_final
    print("\nraw truncation, 6 states, faster births (probability escapes):")
    run(BirthDeathSpec(lam=(2.0, 1.0), mu=(1.0, 0.5), states=6,
                       boundary=Boundary.REFLECT_NONE),
        args.t_final, args.steps, args.order)


if __name__ == "__main__":
    main()
