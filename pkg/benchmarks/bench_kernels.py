"""Compare the compiled tensor kernels with the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.  Each row times
the full connection -> curvature -> lowering -> Ricci pipeline on one model.
"""
import argparse
import timeit
from fractions import Fraction

from crosm import BlockParams, ComplexProjective, Sphere, build_model, metric_from_blocks
from crosm import _kernels_py

try:
    from crosm import _ckernels
except ImportError:  # extension not built
    _ckernels = None

CASES = [
    ("S^4", Sphere(4), (0.7, 1.3, 2.1)),
    ("S^8", Sphere(8), (0.7, 1.3, 2.1)),
    ("CP^2", ComplexProjective(2), (1.5, 0.8, 1.1, 0.6, 0.9)),
    ("CP^4", ComplexProjective(4), (1.5, 0.8, 1.1, 0.6, 0.9)),
]


def pipeline_inputs(kind, blocks, exact):
    model = build_model(kind)
    vals = [Fraction(b).limit_denominator(100) for b in blocks] if exact else list(blocks)
    g = metric_from_blocks(model, BlockParams(*vals), mode="exact" if exact else "float")
    C, H, adh = g.tables
    G = [list(r) for r in g.gram]
    Ginv = [list(r) for r in g.ginv]
    half = Fraction(1, 2) if exact else 0.5
    return C, H, adh, G, Ginv, half


def pipeline(impl, C, H, adh, G, Ginv, half):
    _, alpha = impl.connection(C, G, Ginv, half)
    Rop = impl.curvature_ops(C, H, adh, alpha)
    impl.lower(Rop, G)
    return impl.ricci(Rop)


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the Python timings are shown")
    print(f"{'model':6} {'mode':6} {'dim':>4} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, kind, blocks in CASES:
        for exact in (False, True):
            if exact and name in ("S^8", "CP^4"):
                continue  # exact runs on the Python path either way
            args_ = pipeline_inputs(kind, blocks, exact)
            tp = best_of(lambda: pipeline(_kernels_py, *args_), args.repeat)
            if _ckernels is None:
                tc = float("nan")
            else:
                tc = best_of(lambda: pipeline(_ckernels, *args_), args.repeat)
            mode = "exact" if exact else "float"
            print(f"{name:6} {mode:6} {len(args_[3]):4d} {tp * 1e3:10.2f} {tc * 1e3:10.2f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
