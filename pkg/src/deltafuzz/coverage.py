"""Edge coverage in a fixed 65,536-entry hit-count bitmap.

Each traced source line gets a pseudo-random site id; an edge is the pair of
consecutive sites hashed as (site XOR prev) with prev shifted right one bit,
so A->B and B->A land in different cells. Raw hit counts are compressed into
nine coarse classes before novelty checks, which keeps loop-count noise from
flooding the queue while still rewarding order-of-magnitude escalation.
"""

from __future__ import annotations

import sys
import zlib
from dataclasses import dataclass

MAP_SIZE = 65536

# hit-count partition: 0, 1, 2, 3, 4-7, 8-15, 16-31, 32-127, >=128
_BUCKET_LIMITS = (0, 1, 2, 3, 7, 15, 31, 127)


def bucketize(raw: int) -> int:
    """Map a raw hit count to its bucket class (0..8)."""
    if raw < 0:
        raise ValueError("raw hit count must be >= 0")
    for cls, limit in enumerate(_BUCKET_LIMITS):
        if raw <= limit:
            return cls
    return 8


# raw counters saturate at 255, so a 256-entry table covers every stored value
_BUCKET_OF_BYTE = bytes(bucketize(n) for n in range(256))


@dataclass
class EdgeProbe:
    """Rolling (current site, shifted previous site) pair."""

    location_id: int = 0
    prev_location: int = 0


class CoverageMap:
    """Raw saturating hit counts for one candidate's executions."""

    __slots__ = ("raw", "touched")

    def __init__(self) -> None:
        self.raw = bytearray(MAP_SIZE)
        self.touched: list[int] = []  # first-touch order, no duplicates

    def class_at(self, index: int) -> int:
        return _BUCKET_OF_BYTE[self.raw[index]]

    def nonzero_items(self) -> list[tuple[int, int]]:
        """(index, bucket class) for every touched edge."""
        raw = self.raw
        return [(i, _BUCKET_OF_BYTE[raw[i]]) for i in self.touched]

    def nonzero_count(self) -> int:
        return len(self.touched)


def record_edge(cov_map: CoverageMap, probe: EdgeProbe) -> None:
    """Credit the edge ending at probe.location_id and roll the probe."""
    loc = probe.location_id
    if not 0 <= loc < MAP_SIZE:
        raise ValueError("location_id out of range")
    index = (loc ^ probe.prev_location) % MAP_SIZE
    raw = cov_map.raw
    count = raw[index]
    if count == 0:
        cov_map.touched.append(index)
    if count != 255:
        raw[index] = count + 1
    probe.prev_location = loc >> 1


class GlobalCoverage:
    """Campaign-wide record of which bucket classes each edge has shown.

    One bitmask byte per edge index, bit (class-1) set once that class has
    been observed there; class 0 (never hit) needs no bit.
    """

    __slots__ = ("seen", "_touched")

    def __init__(self) -> None:
        self.seen = bytearray(MAP_SIZE)
        self._touched = 0

    def absorb(self, run: CoverageMap) -> list[tuple[int, int]]:
        """Fold a run map in; returns the (index, class) pairs never seen before."""
        new: list[tuple[int, int]] = []
        seen = self.seen
        raw = run.raw
        for i in run.touched:
            cls = _BUCKET_OF_BYTE[raw[i]]
            bit = 1 << (cls - 1)
            have = seen[i]
            if not have & bit:
                if not have:
                    self._touched += 1
                seen[i] = have | bit
                new.append((i, cls))
        return new

    def nonzero_count(self) -> int:
        return self._touched


def has_new_coverage(global_cov: GlobalCoverage, run: CoverageMap) -> bool:
    """True iff the run shows some (edge, class) pair the campaign has not;
    the global map absorbs all new pairs as a side effect."""
    return bool(global_cov.absorb(run))


def site_id(module: str, lineno: int) -> int:
    """Stable pseudo-random id for a source site; survives file relocation
    because it hashes the module name, not the file path."""
    return zlib.crc32(f"{module}:{lineno}".encode()) % MAP_SIZE


class EdgeTracer:
    """Records line-to-line edges of in-scope frames into a CoverageMap.

    Scope is a set of directory prefixes; frames whose code lives elsewhere
    (the fuzzer itself, the stdlib) produce no events. Installed around each
    target execution, so identical executions yield identical maps.
    """

    def __init__(self, cov_map: CoverageMap, scope_prefixes: tuple[str, ...]):
        self.cov_map = cov_map
        self.probe = EdgeProbe()
        self._scope = tuple(scope_prefixes)
        self._in_scope: dict[str, bool] = {}
        self._sites: dict[tuple[str, int], int] = {}
        self._modnames: dict[str, str] = {}
        self._prior = None

    def _scoped(self, filename: str) -> bool:
        verdict = self._in_scope.get(filename)
        if verdict is None:
            verdict = filename.startswith(self._scope)
            self._in_scope[filename] = verdict
        return verdict

    def _trace_call(self, frame, event, arg):
        if self._scoped(frame.f_code.co_filename):
            return self._trace_line
        return None

    def _trace_line(self, frame, event, arg):
        if event == "line":
            key = (frame.f_code.co_filename, frame.f_lineno)
            loc = self._sites.get(key)
            if loc is None:
                filename = key[0]
                modname = self._modnames.get(filename)
                if modname is None:
                    modname = frame.f_globals.get("__name__", filename)
                    self._modnames[filename] = modname
                loc = site_id(modname, key[1])
                self._sites[key] = loc
            self.probe.location_id = loc
            record_edge(self.cov_map, self.probe)
        return self._trace_line

    def __enter__(self) -> "EdgeTracer":
        self.probe.location_id = 0
        self.probe.prev_location = 0
        self._prior = sys.gettrace()
        sys.settrace(self._trace_call)
        return self

    def __exit__(self, *exc) -> None:
        sys.settrace(self._prior)
