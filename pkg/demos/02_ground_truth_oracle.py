"""Compute true maximum deltas on small domains and compare variants.

On a tiny input domain the maximum cost difference can be computed exactly
by brute force, which is how the fuzzer's findings are validated. This
script sweeps every benchmark pair over two-byte binary segments and prints
the unsafe/safe maxima side by side, then shows the structured oracle
reaching domain sizes brute force cannot.

Run: python3 demos/02_ground_truth_oracle.py
"""

from deltafuzz import exhaustive_max_delta, get_driver, structured_max_delta
from deltafuzz.benchmarks import BENCHMARKS


def main():
    print("exhaustive maxima, 2-byte segments, binary alphabet")
    print(f"{'benchmark':20} {'unsafe':>8} {'safe':>8}  dimension")
    print("-" * 56)
    for bench in BENCHMARKS:
        if bench.safe_variant is None:
            unsafe_name, safe_delta = bench.name, "-"
        else:
            unsafe_name = f"{bench.name}_unsafe"
            safe = exhaustive_max_delta(
                get_driver(f"{bench.name}_safe"), 2, charset="binary"
            )
            safe_delta = safe.max_delta
        unsafe = exhaustive_max_delta(get_driver(unsafe_name), 2, charset="binary")
        dim = get_driver(unsafe_name).cost_dimension
        print(f"{bench.name:20} {unsafe.max_delta:>8} {str(safe_delta):>8}  {dim}")

    print()
    print("structured oracle: full byte alphabets, segment lengths brute")
    print("force cannot enumerate (the driver declares which secret")
    print("statistic drives its cost, and only its extremes are run)")
    print()
    for name, length in (("pwcheck_unsafe", 16), ("jetty_eq_unsafe", 8),
                         ("modpow_unsafe", 8), ("pad_unsafe", 8)):
        res = structured_max_delta(get_driver(name), length)
        print(
            f"{name:20} len={length:<3} max_delta={res.max_delta:<5} "
            f"statistic={res.statistic} ({res.executions} runs)"
        )


if __name__ == "__main__":
    main()
