"""Four small secret-conditioned loop-count programs.

Each pairs an unsafe variant whose loop count follows the secret with a
repaired variant whose count depends only on public data. Loop costs are
charged in closed form (see charge_loop): counts reach 2**32 and could not
execute concretely, and the branch structure stays in real code so coverage
still sees which path ran. Secrets and publics decode as little-endian
32-bit words from the first 4 segment bytes.

loop_and_branch_safe carries a deliberate hazard: its guard computes
secret + 10 in wrapping signed 32-bit arithmetic, so the ten largest
non-negative secrets wrap negative and skip the equalizing loop entirely,
collapsing the cost for exactly those secrets.
"""

from __future__ import annotations

from ..metering import Meter
from .support import MASK32, charge_loop, to_signed32, u32le, wrap_add32

COST_MODEL = (
    "loops charged in closed form: tick(1 + 2*iterations)",
    "array walks its loop concretely: tick(1) setup, tick(2) per element",
    "straightline: tick(1) branch, tick(8) for the conditional block",
)

# smallest non-negative signed-32 secret for which secret + 10 wraps negative
WRAP_WINDOW_MIN = 2**31 - 10

_TABLE = tuple((i * 31 + 7) & 0xFF for i in range(256))


def wraps_to_negative(sec: bytes) -> bool:
    """True when the decoded secret falls in loop_and_branch_safe's hazard
    window (adding 10 overflows the signed 32-bit range)."""
    s = to_signed32(u32le(sec))
    return s >= WRAP_WINDOW_MIN


def array_unsafe(pub: bytes, sec: bytes, meter: Meter) -> int:
    steps = u32le(sec) % 256
    meter.tick(1)
    total = 0
    for i in range(steps):
        meter.tick(2)
        total = (total + _TABLE[i]) & MASK32
    return total


def array_safe(pub: bytes, sec: bytes, meter: Meter) -> int:
    steps = u32le(sec) % 256
    meter.tick(1)
    total = 0
    burn = 0
    for i in range(256):
        meter.tick(2)
        if i < steps:
            total = (total + _TABLE[i]) & MASK32
        else:
            burn = (burn + _TABLE[i]) & MASK32
    return total


def loop_and_branch_unsafe(pub: bytes, sec: bytes, meter: Meter) -> int:
    # odd public words take the secret-bounded loop; even ones a public-
    # bounded loop, so the leak is expressible even in tiny input domains
    word = u32le(pub)
    high = u32le(sec)
    if word & 1:
        charge_loop(meter, high)
    else:
        charge_loop(meter, word & 0xFF)
    return (word + high) & 0xFF


def loop_and_branch_safe(pub: bytes, sec: bytes, meter: Meter) -> int:
    high = u32le(sec)
    s = to_signed32(high)
    bound = wrap_add32(s, 10)
    if s >= 0 and bound <= 0:
        charge_loop(meter, 0)  # wrapped negative: equalizing loop skipped
    else:
        charge_loop(meter, u32le(pub) & 0xFFFF)
    return (u32le(pub) + high) & 0xFF


def sanity_unsafe(pub: bytes, sec: bytes, meter: Meter) -> int:
    n = u32le(sec)
    charge_loop(meter, n)
    return (n * 31) & MASK32


def sanity_safe(pub: bytes, sec: bytes, meter: Meter) -> int:
    n = u32le(sec)
    charge_loop(meter, u32le(pub) & 0xFFFF)
    return (n * 31) & MASK32


def straightline_unsafe(pub: bytes, sec: bytes, meter: Meter) -> int:
    bit = u32le(sec) & 1
    meter.tick(1)
    if bit:
        meter.tick(8)
    return bit


def straightline_safe(pub: bytes, sec: bytes, meter: Meter) -> int:
    bit = u32le(sec) & 1
    meter.tick(1)
    meter.tick(8)
    return bit
