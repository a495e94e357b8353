"""Password check with an early-exit byte compare, plus the repaired variant.

Cost model (ops): 1 tick for the length check (its reject path returns with
no further charge), 2 ticks per executed loop iteration (guard + compare),
1 tick for the early return taken inside the loop. The unsafe cost therefore
grows with the length of the matching prefix; the safe variant always scans
the full public length at uniform cost.
"""

from __future__ import annotations

from ..metering import Meter

COST_MODEL = (
    "tick(1) length check; the length-mismatch return is not charged further",
    "tick(2) per executed loop iteration: guard + byte compare",
    "tick(1) early return on the first mismatching byte (unsafe only)",
)


def pwcheck_unsafe(pub: bytes, sec: bytes, meter: Meter) -> bool:
    """True iff pub == sec; bails out at the first difference."""
    meter.tick(1)
    if len(pub) != len(sec):
        return False
    for i in range(len(pub)):
        meter.tick(2)
        if pub[i] != sec[i]:
            meter.tick(1)
            return False
    return True


def pwcheck_safe(pub: bytes, sec: bytes, meter: Meter) -> bool:
    """Same answer, but the loop always runs over the full public input and
    folds the verdict without branching out."""
    meter.tick(1)
    matches = len(pub) == len(sec)
    for i in range(len(pub)):
        meter.tick(2)
        if i < len(sec):
            matches = (pub[i] == sec[i]) and matches
        else:
            matches = False
    return matches
