"""Compare the compiled and pure-Python enumeration kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each case is run on both backends; results must agree exactly.
"""

import argparse
import time

from beauville_wreath import _kernels_py

try:
    from beauville_wreath import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def _cases():
    # (label, function name, args)
    yield "class labels C3 wr C3", "class_labels", (3, 3, False)
    yield "class labels C5 wr C5 / Z", "class_labels", (5, 5, True)
    yield "class labels C3 wr C9 / Z", "class_labels", (3, 9, True)
    # generation closure of {x, y} in C5 wr C5 / Z (3125 elements)
    x = _kernels_py.encode(5, 5, True, [0, 0, 1, 0, 0], 0)
    y = _kernels_py.encode(5, 5, True, [0] * 5, 1)
    yield "closure <x,y> C5 wr C5 / Z", "closure_size", (5, 5, True, [x, y], 10**7)
    x = _kernels_py.encode(3, 9, True, [0] * 4 + [1] + [0] * 4, 0)
    y = _kernels_py.encode(3, 9, True, [0] * 9, 1)
    yield "closure <x,y> C3 wr C9 / Z", "closure_size", (3, 9, True, [x, y], 10**7)


def _plain(v):
    return v if isinstance(v, int) else list(v)


def _time(fn, args, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    print("%-32s %12s %12s %9s" % ("case", "python [s]", "cython [s]", "speedup"))
    for label, name, fargs in _cases():
        tp, rp = _time(getattr(_kernels_py, name), fargs, args.repeat)
        if _ckernels is None:
            print("%-32s %12.4f %12s %9s" % (label, tp, "n/a", "-"))
            continue
        tc, rc = _time(getattr(_ckernels, name), fargs, args.repeat)
        if _plain(rp) != _plain(rc):
            raise SystemExit("backends disagree on %s" % label)
        print("%-32s %12.4f %12.4f %8.1fx" % (label, tp, tc, tp / tc))


if __name__ == "__main__":
    main()
