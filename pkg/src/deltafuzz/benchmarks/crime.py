"""Compression-size channel: a request body compressed before sending.

The target compresses pub ++ sec with a byte-oriented LZ77 and declares the
compressed size as its response. A secret that shares a substring of
MIN_MATCH or more bytes with the public part (or with itself) gets
back-referenced instead of spelled out, so the response size reveals
overlap with attacker-controlled data. There is no safe variant; the leak
is the compression itself.

Stream format: 0x00 <runlen> <raw bytes> literal runs, 0x01 <offset:2 BE>
<length> matches (offset within a 4096-byte window, length 3..255).
"""

from __future__ import annotations

from ..metering import Meter

WINDOW = 4096
MIN_MATCH = 3  # same floor as DEFLATE; short enough to act inside tiny domains
MAX_MATCH = 255
_MAX_RUN = 255
_CHAIN = 32  # candidate positions kept per 4-gram

COST_MODEL = (
    "tick(1) per compression step (one literal byte or one match)",
    "record_response(len(compressed)) - the observable channel",
)


def lz77_compress(data: bytes, meter: Meter | None = None) -> bytes:
    out = bytearray()
    lits = bytearray()
    index: dict[bytes, list[int]] = {}
    n = len(data)

    def flush() -> None:
        pos = 0
        while pos < len(lits):
            chunk = lits[pos : pos + _MAX_RUN]
            out.append(0)
            out.append(len(chunk))
            out.extend(chunk)
            pos += len(chunk)
        lits.clear()

    def remember(pos: int) -> None:
        if pos + MIN_MATCH <= n:
            chain = index.setdefault(data[pos : pos + MIN_MATCH], [])
            chain.append(pos)
            if len(chain) > _CHAIN:
                del chain[0]

    i = 0
    while i < n:
        if meter is not None:
            meter.tick(1)
        best_len = 0
        best_off = 0
        if i + MIN_MATCH <= n:
            limit = min(MAX_MATCH, n - i)
            for pos in reversed(index.get(data[i : i + MIN_MATCH], ())):
                if i - pos > WINDOW:
                    break
                length = MIN_MATCH
                while length < limit and data[pos + length] == data[i + length]:
                    length += 1
                if length > best_len:
                    best_len = length
                    best_off = i - pos
                if length == limit:
                    break
        if best_len >= MIN_MATCH:
            flush()
            out.append(1)
            out.extend(best_off.to_bytes(2, "big"))
            out.append(best_len)
            for j in range(i, i + best_len):
                remember(j)
            i += best_len
        else:
            lits.append(data[i])
            if len(lits) == _MAX_RUN:
                flush()
            remember(i)
            i += 1
    flush()
    return bytes(out)


def lz77_decompress(blob: bytes) -> bytes:
    out = bytearray()
    i = 0
    n = len(blob)
    while i < n:
        tag = blob[i]
        i += 1
        if tag == 0:
            if i >= n:
                raise ValueError("truncated literal header")
            run = blob[i]
            i += 1
            if run < 1 or i + run > n:
                raise ValueError("corrupt literal run")
            out.extend(blob[i : i + run])
            i += run
        elif tag == 1:
            if i + 3 > n:
                raise ValueError("truncated match")
            offset = int.from_bytes(blob[i : i + 2], "big")
            length = blob[i + 2]
            i += 3
            start = len(out) - offset
            if offset < 1 or start < 0 or length < MIN_MATCH:
                raise ValueError("corrupt match")
            for k in range(length):  # byte-wise: matches may self-overlap
                out.append(out[start + k])
        else:
            raise ValueError(f"unknown token tag {tag}")
    return bytes(out)


def crime_compress_target(pub: bytes, sec: bytes, meter: Meter) -> bytes:
    compressed = lz77_compress(pub + sec, meter)
    meter.record_response(len(compressed))
    return compressed
