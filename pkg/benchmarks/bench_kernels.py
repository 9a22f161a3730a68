"""Time the numba kernels against the numpy fallback on identical inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from tightclose import _kernels as K
from tightclose.polyring import GREVLEX
from tightclose.tightclosure import DiagonalRing, tight_closure_power_diagonal


def _leads(N, p, k):
    D = DiagonalRing(N, p)
    G = D.R.lift(tight_closure_power_diagonal(D, k)).gb(GREVLEX)
    return K.as_lead_array([g.leading_monomial(GREVLEX) for g in G], 3)


def _time(fn, repeat):
    fn()  # warm-up; absorbs numba compilation
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)

    cases = []
    for N, p, k in [(3, 7, 6), (4, 5, 8), (5, 7, 12)]:
        leads = _leads(N, p, k)
        bounds = [int(leads[:, j][leads.sum(axis=1) == leads[:, j]].min()) * 4 for j in range(3)]
        cases.append((f"box N={N} k={k} bounds={bounds}",
                      lambda nb, L=leads, b=bounds: K.count_standard_box(L, b, use_numba=nb)))
        cases.append((f"degree N={N} k={k} deg=40",
                      lambda nb, L=leads: K.count_standard_degree(L, 3, 40, use_numba=nb)))
    for n in (40, 120):
        m = rng.integers(0, 101, size=(n, n))
        cases.append((f"rank {n}x{n} mod 101", lambda nb, m=m: K.rank_mod_p(m, 101, use_numba=nb)))

    print(f"{'kernel':44s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speedup':>8s}")
    for name, fn in cases:
        t_np, a = _time(lambda: fn(False), args.repeat)
        t_nb, b = _time(lambda: fn(True), args.repeat)
        assert a == b, f"{name}: numpy {a} != numba {b}"
        print(f"{name:44s} {t_np * 1e3:11.3f} {t_nb * 1e3:11.3f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
