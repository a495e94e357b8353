"""Shared decode and cost helpers for the benchmark targets."""

from __future__ import annotations

from ..metering import Meter

MASK32 = 0xFFFFFFFF


def u32le(data: bytes) -> int:
    """Unsigned 32-bit value from up to the first 4 bytes, little-endian."""
    return int.from_bytes(data[:4], "little")


def to_signed32(value: int) -> int:
    value &= MASK32
    return value - 0x100000000 if value & 0x80000000 else value


def wrap_add32(a: int, b: int) -> int:
    """Signed 32-bit addition with wraparound instead of promotion."""
    return to_signed32((a + b) & MASK32)


def charge_loop(meter: Meter, iterations: int, per_iter: int = 2, setup: int = 1) -> None:
    """Charge a counting loop in closed form: setup plus per_iter ticks per
    iteration. Counts can reach 2**32, far beyond what an interpreted loop
    could execute, so the cost is computed rather than stepped."""
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    meter.tick(setup + per_iter * iterations)
