"""Find a timing side channel in an early-exit password check.

The unsafe check compares byte by byte and bails at the first mismatch, so
its running cost reveals how long a matching prefix the guess shares with
the stored password. This script runs a short reproducible campaign against
it, shows the witness, then replays that same witness against the repaired
constant-cost variant to confirm the fix.

Run: python3 demos/01_find_a_timing_leak.py
"""

import tempfile
from pathlib import Path

from deltafuzz import CampaignConfig, replay, run_campaign


def main():
    workdir = Path(tempfile.mkdtemp(prefix="deltafuzz-demo-"))
    seeds = workdir / "seeds"
    seeds.mkdir()
    # one bland seed is enough; the mutation stages do the exploring
    (seeds / "zeros").write_bytes(b"\x00" * 48)

    config = CampaignConfig(
        driver_name="pwcheck_unsafe",
        seed_dir=str(seeds),
        out_dir=str(workdir / "out"),
        timeout_seconds=30.0,
        rng_seed=1,
        pace=2000,  # virtual clock: the run is reproducible bit for bit
        stop_on_delta=30,  # known maximum for 16-byte secrets
    )
    report = run_campaign(config)

    print(f"verdict:     {report.verdict}")
    print(f"max delta:   {report.max_delta} ops")
    print(f"executions:  {report.executions}")
    print(f"stopped:     {report.stop_reason}")
    pub, sec1, sec2 = report.witness_decoded
    print(f"witness pub:   {pub.hex()}")
    print(f"witness sec_1: {sec1.hex()}")
    print(f"witness sec_2: {sec2.hex()}")
    print()

    # the witness is an ordinary input file; replay it anywhere
    unsafe = replay("pwcheck_unsafe", report.witness_data)
    fixed = replay("pwcheck_safe", report.witness_data)
    print(f"replayed on pwcheck_unsafe: delta = {unsafe.delta.ops} ops")
    print(f"replayed on pwcheck_safe:   delta = {fixed.delta.ops} ops")
    print()
    print(f"campaign artifacts in {workdir}/out (stats.csv, witness.*, report.txt)")


if __name__ == "__main__":
    main()
