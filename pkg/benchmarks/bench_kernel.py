"""Compare the compiled trace-trie kernel with the pure-Python fallback.

    python3 benchmarks/bench_kernel.py [--repeat N] [--max-depth D]
"""

import argparse
import time

from dioa import _pykernel, engine
from dioa.explorer import as_sioa
from dioa.modelio import load_model


def timed(kernel, a, depth, actions_only, repeat):
    enc = a.encoded
    starts = sorted(enc.index[s] for s in a.starts)
    best = float("inf")
    nodes = 0
    for _ in range(repeat):
        t = time.perf_counter()
        parent, _ = kernel(enc.offsets, enc.act, enc.tgt, enc.ext, enc.sigid, starts, depth,
                           len(enc.sigs), actions_only)
        best = min(best, time.perf_counter() - t)
        nodes = len(parent)
    return best, nodes


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--max-depth", type=int, default=12)
    args = p.parse_args()
    if engine.BACKEND != "compiled":
        raise SystemExit("compiled kernel unavailable; build with pip install -e . --no-build-isolation")

    cases = [("mobile_phone", "Phone", True, range(6, args.max_depth + 1, 2)),
             ("mobile_phone", "Phone", False, range(6, args.max_depth + 1, 2)),
             ("travel_agent", "ImplWithDBs", False, range(4, min(args.max_depth, 8) + 1, 2))]
    models = {}
    print(f"{'target':<14}{'mode':<9}{'depth':>6}{'nodes':>10}{'compiled s':>12}{'python s':>10}{'speedup':>9}")
    for model, target, actions_only, depths in cases:
        if model not in models:
            models[model] = load_model(model)
        a = as_sioa(models[model].target(target))
        mode = "words" if actions_only else "traces"
        for d in depths:
            fast, nodes = timed(engine.trace_trie, a, d, actions_only, args.repeat)
            slow, _ = timed(_pykernel.trace_trie, a, d, actions_only, args.repeat)
            print(f"{target:<14}{mode:<9}{d:>6}{nodes:>10}{fast:>12.4f}{slow:>10.4f}{slow / fast:>8.1f}x")


if __name__ == "__main__":
    main()
