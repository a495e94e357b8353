"""Fixed-width string padding that works harder for shorter inputs.

The secret models a variable-length name stored in a fixed buffer: bytes up
to the first NUL are the name. The unsafe padder returns early for full
buffers and loops only over the missing width, so both its op count and its
builder allocation reveal the name's length; the safe padder always builds
the full width. Leaks on both the ops and peak_mem dimensions.

Cost model: 1 tick for the width check, 1 tick per appended pad byte;
record_alloc of the builder size (pad length unsafe, full width safe).
"""

from __future__ import annotations

from ..metering import Meter

PAD_TOTAL = 16  # target width; twice the default segment cap

COST_MODEL = (
    "tick(1) width check; full-buffer early return not charged further",
    "tick(1) per appended pad byte",
    "record_alloc(builder size): pad length unsafe, PAD_TOTAL safe",
)


def _name_of(sec: bytes) -> bytes:
    cut = sec.find(0)
    return sec if cut < 0 else sec[:cut]


def _pad_char(pub: bytes) -> int:
    return pub[0] if pub else 0x20


def pad_unsafe(pub: bytes, sec: bytes, meter: Meter) -> bytes:
    src = _name_of(sec)
    meter.tick(1)
    if len(src) >= PAD_TOTAL:
        return src
    pad_len = PAD_TOTAL - len(src)
    meter.record_alloc(pad_len)
    filler = bytearray()
    for _ in range(pad_len):
        meter.tick(1)
        filler.append(_pad_char(pub))
    meter.record_free(pad_len)
    return src + bytes(filler)


def pad_safe(pub: bytes, sec: bytes, meter: Meter) -> bytes:
    src = _name_of(sec)
    meter.tick(1)
    meter.record_alloc(PAD_TOTAL)
    filler = bytearray()
    for _ in range(PAD_TOTAL):
        meter.tick(1)
        filler.append(_pad_char(pub))
    meter.record_free(PAD_TOTAL)
    if len(src) >= PAD_TOTAL:
        return src
    return src + bytes(filler[: PAD_TOTAL - len(src)])
