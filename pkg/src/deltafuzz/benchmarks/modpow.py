"""Square-and-multiply modular exponentiation with a secret exponent.

The unsafe form multiplies only on set exponent bits and stops at the top
bit, so the op count tracks both the exponent's bit length and popcount.
The safe form runs a fixed number of rounds for the declared width and
multiplies every round, discarding the product on zero bits.

Decoding: pub -> modulus (first 4 bytes LE) and base (next 4); sec -> the
exponent, little-endian, with width = 8 * len(sec) bits. The multiplies
themselves are arbitrary-precision library arithmetic and are not ticked;
the documented unit costs below are the whole model.

Cost model (ops): 1 tick modulus validation, then per loop round 1 tick
guard + 1 tick square, plus 1 tick per multiply (unsafe: set bits only;
safe: every round).
"""

from __future__ import annotations

from ..metering import HarnessError, Meter
from .support import u32le

COST_MODEL = (
    "tick(1) modulus validation",
    "tick(1) loop guard and tick(1) square per round",
    "tick(1) per multiply: set bits only (unsafe), every round (safe)",
    "big-int multiply/mod library internals not ticked",
)


def _decode(pub: bytes, sec: bytes) -> tuple[int, int, int, int]:
    modulus = u32le(pub[:4])
    base = int.from_bytes(pub[4:8], "little")
    exponent = int.from_bytes(sec, "little")
    return base, exponent, modulus, 8 * len(sec)


def mod_pow_unsafe(base: int, exponent: int, modulus: int, meter: Meter) -> int:
    """base**exponent mod modulus, right-to-left, multiply on set bits only."""
    if modulus < 2:
        raise HarnessError("modulus must be >= 2")
    meter.tick(1)
    result = 1 % modulus
    acc = base % modulus
    e = exponent
    while e > 0:
        meter.tick(1)
        if e & 1:
            meter.tick(1)
            result = (result * acc) % modulus
        meter.tick(1)
        acc = (acc * acc) % modulus
        e >>= 1
    return result


def mod_pow_safe(base: int, exponent: int, modulus: int, width: int, meter: Meter) -> int:
    """Same result over `width` fixed rounds; zero bits get a dummy multiply."""
    if modulus < 2:
        raise HarnessError("modulus must be >= 2")
    meter.tick(1)
    result = 1 % modulus
    dummy = 1 % modulus
    acc = base % modulus
    for i in range(width):
        meter.tick(1)
        meter.tick(1)
        if (exponent >> i) & 1:
            result = (result * acc) % modulus
        else:
            dummy = (dummy * acc) % modulus
        meter.tick(1)
        acc = (acc * acc) % modulus
    return result


def modpow_unsafe_target(pub: bytes, sec: bytes, meter: Meter) -> int:
    base, exponent, modulus, _ = _decode(pub, sec)
    return mod_pow_unsafe(base, exponent, modulus, meter)


def modpow_safe_target(pub: bytes, sec: bytes, meter: Meter) -> int:
    base, exponent, modulus, width = _decode(pub, sec)
    return mod_pow_safe(base, exponent, modulus, width, meter)
