"""Transform each corpus instance, decide both sides and run the gadget checks.

    python scripts/run_corpus.py [--sabotage]
"""
import argparse
import time

from seglink.corpus import CORPUS
from seglink.gadgets import transform_circuit, transform_path
from seglink.lemmas import verify_all
from seglink.linker import decide_circuit, decide_path


def _yn(w):
    return "NO" if w is None else "YES"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sabotage", action="store_true", help="inflate delta by 10(W+H) to show the checks bite")
    args = ap.parse_args()
    print(f"{'instance':9} {'mode':8} {'n':>3} {'n_out':>5} {'delta':>8} {'src':>4} {'out':>4} {'checks':>10} {'time':>7}")
    for name, make in CORPUS.items():
        src = _yn(decide_circuit(make()))
        for mode, fn, solve in (("circuit", transform_circuit, decide_circuit), ("path", transform_path, decide_path)):
            t0 = time.perf_counter()
            out, rep = fn(make())
            if args.sabotage:
                lo, hi = rep.params.bound
                out, rep = fn(make(), delta=rep.params.delta * 10 * ((hi.x - lo.x) + (hi.y - lo.y)))
            try:
                w = solve(out)
                answer = _yn(w)
            except ValueError:  # an oversized delta can make segments cross
                w, answer = None, "bad"
            results = verify_all(out, rep, w)
            bad = sum(not r.ok for r in results)
            checks = f"{len(results) - bad}/{len(results)}"
            dt = time.perf_counter() - t0
            print(f"{name:9} {mode:8} {len(make()):>3} {len(out):>5} {str(rep.params.delta):>8} "
                  f"{src:>4} {answer:>4} {checks:>10} {dt:>6.2f}s")


if __name__ == "__main__":
    main()
