"""Benchmark the compiled kernel against the pure-Python twin.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Covers the hot paths: enumeration, quasi-meet throughput, the exhaustive
Moebius-inversion scan and the brute-force coefficient tables.
"""

import argparse
import time

from ospart._kernels import _pure

try:
    from ospart._kernels import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench(name, pure_fn, compiled_fn, repeat):
    tp = best_of(pure_fn, repeat)
    if compiled_fn is None:
        print(f"{name:<38} pure {tp * 1e3:9.2f} ms   (no compiled backend)")
        return
    tc = best_of(compiled_fn, repeat)
    speedup = tp / tc if tc > 0 else float("inf")
    print(f"{name:<38} pure {tp * 1e3:9.2f} ms   "
          f"cython {tc * 1e3:9.2f} ms   x{speedup:6.1f}")


def quasi_meet_sweep(mod, words):
    qm = mod.quasi_meet
    for u in words:
        for v in words:
            qm(u, v)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if _ckernels is None:
        print("compiled kernel not available; showing pure timings only")

    # uncached enumeration cost
    bench("enumerate OP_7 (47293 words)",
          lambda: list(_pure.iter_osp_words(7)),
          (lambda: _ckernels.osp_words_list(7)) if _ckernels else None,
          args.repeat)

    words5 = list(_pure.iter_osp_words(5))
    bench("quasi-meet sweep over OP_5 x OP_5",
          lambda: quasi_meet_sweep(_pure, words5),
          (lambda: quasi_meet_sweep(_ckernels, words5)) if _ckernels else None,
          args.repeat)

    bench("mu~*zeta~ = delta scan, n = 6",
          lambda: _pure.mu_zeta_identity(6),
          (lambda: _ckernels.mu_zeta_identity(6)) if _ckernels else None,
          args.repeat)

    bench("beta semigroup scan, n = 5, s,t = 3,4",
          lambda: _pure.beta_semigroup_identity(5, 3, 4),
          (lambda: _ckernels.beta_semigroup_identity(5, 3, 4)) if _ckernels else None,
          args.repeat)

    bench("weisner oracle table, n = 5",
          lambda: _pure.weisner_oracle_table(5),
          (lambda: _ckernels.weisner_oracle_table(5)) if _ckernels else None,
          args.repeat)

    bench("goldberg oracle table, n = 5",
          lambda: _pure.goldberg_oracle_table(5),
          (lambda: _ckernels.goldberg_oracle_table(5)) if _ckernels else None,
          args.repeat)


if __name__ == "__main__":
    main()
