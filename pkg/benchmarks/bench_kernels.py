"""Compare the numba and numpy gate kernels, and the end-to-end pipeline per backend.

    python benchmarks/bench_kernels.py [--qubits 16 20 22] [--repeat 5]

Kernel timings call both implementations in-process. The pipeline timing
runs ``qibam.align`` in a subprocess per backend (QIBAM_DISABLE_NUMBA=1
selects numpy), after one warm-up call so JIT compilation is excluded.
"""
import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from qibam import kernels


def _state(n, rng):
    a = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return a / np.linalg.norm(a)


def _cases(n, rng):
    h = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
    z, _ = np.linalg.qr(rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16)))
    mask = sum(1 << q for q in range(1, n, 2))
    phase_qs = np.arange(0, n, 3, dtype=np.int64)
    dense_qs = np.array([0, n // 3, n // 2, n - 1], dtype=np.int64)
    return {
        "1q (H on top qubit)": lambda k, a: k.apply_1q(a, h, n - 1),
        f"mcx ({bin(mask).count('1')} controls)": lambda k, a: k.apply_mcx(a, mask, 0),
        f"phase ({len(phase_qs)} qubits)": lambda k, a: k.apply_phase(a, phase_qs, -1.0 + 0j),
        "dense 4-qubit": lambda k, a: k.apply_dense(a, z, dense_qs),
    }


def bench_kernels(sizes, repeat):
    if kernels.numba_kernels is None:
        print("numba backend disabled; kernel comparison skipped")
        return
    rng = np.random.default_rng(0)
    impls = {"numpy": kernels.numpy_kernels, "numba": kernels.numba_kernels}
    print(f"{'qubits':>6}  {'kernel':<22} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for n in sizes:
        a = _state(n, rng)
        for name, fn in _cases(n, rng).items():
            fn(impls["numba"], a.copy())  # compile
            t = {}
            for label, impl in impls.items():
                buf = a.copy()
                t[label] = min(timeit.repeat(lambda: fn(impl, buf), number=1, repeat=repeat)) * 1e3
            print(f"{n:>6}  {name:<22} {t['numpy']:>10.3f} {t['numba']:>10.3f} {t['numpy'] / t['numba']:>7.1f}x")


PIPELINE = """
import json, time, qibam
ref, q = {ref!r}, {query!r}
qibam.align(ref, q)
runs = []
for _ in range({repeat}):
    t0 = time.perf_counter(); qibam.align(ref, q); runs.append(time.perf_counter() - t0)
print(json.dumps({{"backend": qibam.BACKEND, "seconds": min(runs)}}))
"""


def bench_pipeline(reference, query, repeat):
    code = PIPELINE.format(ref=reference, query=query, repeat=repeat)
    print(f"\nalign pipeline, reference length {len(reference)}, query {query!r}")
    for flag in ("0", "1"):
        env = dict(os.environ, QIBAM_DISABLE_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        r = json.loads(out.stdout)
        print(f"  {r['backend']:<6} {r['seconds'] * 1e3:10.2f} ms")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--qubits", type=int, nargs="+", default=[14, 18, 22])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--skip-pipeline", action="store_true")
    args = p.parse_args()
    bench_kernels(args.qubits, args.repeat)
    if not args.skip_pipeline:
        rng = np.random.default_rng(1)
        reference = "".join(rng.choice(list("ACGT"), size=260))
        bench_pipeline(reference, reference[100:104], args.repeat)


if __name__ == "__main__":
    main()
