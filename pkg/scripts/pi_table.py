"""Print the weight table and term counts for a restricted index set.

Usage: python scripts/pi_table.py [n] [q] [p]
"""

import sys

from evoseries.combinatorics import (
    enumerate_restricted_index_set,
    max_total_index,
    multinomial_pi_sum,
    pi_coefficient,
    pi_sum,
    term_count,
)


def main() -> None:
    n, q, p = (int(a) for a in sys.argv[1:4]) if len(sys.argv) > 3 else (7, 2, 1)
    print(f"index set for order n={n}, total q={q}, degree cap p={p}")
    total = 0
    for m in enumerate_restricted_index_set(n, q, p):
        w = pi_coefficient(m)
        total += 1
        print(f"  {m!r:>24}  pi = {w}")
    print(f"{total} indices, weight sum {pi_sum(n, q, p)}"
          f" (multinomial route: {multinomial_pi_sum(n, q, p)})")

    print()
    print(f"term counts for p={p}, n = 1..15:")
    counts = [term_count(k, p) for k in range(1, 16)]
    print("  " + " ".join(str(c) for c in counts))
    if p == 1:
        print("  (Fibonacci: each count is the sum of the previous two)")

    print()
    print(f"q may run up to floor(p*n/(p+1)) = {max_total_index(n, p)} here")


if __name__ == "__main__":
    main()
