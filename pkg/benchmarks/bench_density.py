"""Time the quartic density series with the numba kernel and with the numpy fallback.

Usage: python3 benchmarks/bench_density.py [cutoff]
"""

import sys
import time

from qdimer import _accel
from qdimer.density import green_table, quartic_sum


def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        value = fn()
        times.append(time.perf_counter() - start)
    return min(times), value


def main():
    cutoff = int(sys.argv[1]) if len(sys.argv) > 1 else 300
    table = green_table(cutoff)
    print(f"cutoff {cutoff}: table fill {table.seconds:.2f} s ({table.nodes} nodes, shared by both paths)")
    t_np, v_np = best_of(lambda: quartic_sum(table, use_numba=False))
    print(f"numpy + fsum   {t_np * 1e3:9.2f} ms   quartic sum {v_np!r}")
    if _accel.numba is None:
        print("numba not installed; kernel path skipped")
        return
    if not _accel.USING_NUMBA:
        print("QDIMER_DISABLE_NUMBA is set; kernel path skipped")
        return
    start = time.perf_counter()
    quartic_sum(table, use_numba=True)
    print(f"numba first call (compile or cache load) {time.perf_counter() - start:.2f} s")
    t_nb, v_nb = best_of(lambda: quartic_sum(table, use_numba=True))
    print(f"numba kernel   {t_nb * 1e3:9.2f} ms   quartic sum {v_nb!r}")
    print(f"speedup {t_np / t_nb:.1f}x, |difference| {abs(v_np - v_nb):.2e}")


if __name__ == "__main__":
    main()
