"""Jetty-style "constant-time" string compare whose accumulate step is not.

The repair avoids early returns by AND-folding per-position comparisons,
but the fold itself is cheaper when the comparison is false, so the total
still reveals how many positions match; the gap scales with input length.
The _const variant charges the fold uniformly and is actually constant.

Cost model (ops): 1 tick for the length compare, then per position 1 tick
for the loop guard plus 3 ticks for an equal fold or 2 for an unequal one
(_const: always 3).
"""

from __future__ import annotations

from ..metering import Meter

COST_MODEL = (
    "tick(1) length compare",
    "tick(1) loop guard per position",
    "leaky: tick(3) fold when bytes equal, tick(2) when they differ",
    "const: tick(3) fold regardless of outcome",
)


def _string_eq(pub: bytes, sec: bytes, meter: Meter, ne_cost: int) -> bool:
    meter.tick(1)
    result = len(pub) == len(sec)
    for i in range(min(len(pub), len(sec))):
        meter.tick(1)
        same = pub[i] == sec[i]
        meter.tick(3 if same else ne_cost)
        result = result and same
    return result


def string_eq_leaky(pub: bytes, sec: bytes, meter: Meter) -> bool:
    return _string_eq(pub, sec, meter, ne_cost=2)


def string_eq_const(pub: bytes, sec: bytes, meter: Meter) -> bool:
    return _string_eq(pub, sec, meter, ne_cost=3)
