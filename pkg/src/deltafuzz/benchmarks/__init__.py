"""Metered reference targets with known leaks and their repaired variants.

Every benchmark registers one driver per variant (NAME_unsafe / NAME_safe,
or just NAME when there is no repaired form). Where a target's cost depends
on a single simple statistic of the secret (match prefix, effective length,
exponent bit pattern, parity), the driver declares it so the structured
oracle can enumerate that statistic instead of the raw byte domain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from ..driver import ConfigError, Constraints, DriverSpec, Statistic, register_driver
from ..metering import Meter
from . import crime, jetty_eq, login, micro, modpow, pad, pwcheck

Triple = tuple[bytes, bytes, bytes]


def _two_symbols(alphabet: bytes) -> tuple[int, int]:
    if len(alphabet) < 2:
        raise ConfigError("statistic needs an alphabet with >= 2 symbols")
    return alphabet[0], alphabet[-1]


def _pairs(pub: bytes, secs: list[bytes]) -> Iterator[Triple]:
    for s1 in secs:
        for s2 in secs:
            yield pub, s1, s2


def prefix_witnesses(segment_len: int, alphabet: bytes) -> Iterator[Triple]:
    """Secrets matching the public input on exactly 0..L leading bytes."""
    low, high = _two_symbols(alphabet)
    pub = bytes([high]) * segment_len
    secs = [
        bytes([high]) * k + bytes([low]) * (segment_len - k)
        for k in range(segment_len + 1)
    ]
    return _pairs(pub, secs)


def efflen_witnesses(segment_len: int, alphabet: bytes) -> Iterator[Triple]:
    """Secrets whose NUL-terminated effective length spans 0..L."""
    if 0 not in alphabet:
        raise ConfigError("statistic needs the NUL symbol in the alphabet")
    fillers = [s for s in alphabet if s != 0]
    if not fillers:
        raise ConfigError("statistic needs a non-NUL symbol in the alphabet")
    fill = fillers[-1]
    pub = bytes([fill]) * segment_len
    secs = [
        bytes([fill]) * k + b"\x00" * (segment_len - k)
        for k in range(segment_len + 1)
    ]
    return _pairs(pub, secs)


def exponent_witnesses(segment_len: int, alphabet: bytes) -> Iterator[Triple]:
    """Exponents extremizing bit length and popcount within the alphabet."""
    allowed = set(alphabet)
    width = 8 * segment_len
    exps = {0}
    exps.update((1 << w) - 1 for w in range(1, width + 1))
    exps.update(1 << (w - 1) for w in range(1, width + 1))
    top = max(alphabet)
    if top:
        for k in range(1, segment_len + 1):
            exps.add(int.from_bytes(bytes([top] * k), "little"))
    secs = []
    for e in sorted(exps):
        raw = e.to_bytes(segment_len, "little")
        if all(b in allowed for b in raw):
            secs.append(raw)
    if len(secs) < 2:
        raise ConfigError("alphabet cannot express exponent witnesses")
    pub = bytes([max(alphabet)]) * segment_len
    return _pairs(pub, secs)


def parity_witnesses(segment_len: int, alphabet: bytes) -> Iterator[Triple]:
    """One even and one odd secret (cost branches on the low bit)."""
    evens = [s for s in alphabet if s % 2 == 0]
    odds = [s for s in alphabet if s % 2 == 1]
    if not evens or not odds:
        raise ConfigError("statistic needs both an even and an odd symbol")
    pub = bytes([alphabet[-1]]) * segment_len
    secs = [
        bytes([evens[0]]) * segment_len,
        bytes([odds[0]]) + bytes([evens[0]]) * (segment_len - 1),
    ]
    return _pairs(pub, secs)


@dataclass(frozen=True)
class BenchmarkTarget:
    name: str
    unsafe_variant: Callable[[bytes, bytes, Meter], object]
    safe_variant: Callable[[bytes, bytes, Meter], object] | None
    description: str
    cost_model_doc: tuple[str, ...]
    cost_dimension: str = "ops"
    constraints: Constraints = field(default_factory=Constraints)
    statistic: Statistic | None = None


BENCHMARKS: tuple[BenchmarkTarget, ...] = (
    BenchmarkTarget(
        name="pwcheck",
        unsafe_variant=pwcheck.pwcheck_unsafe,
        safe_variant=pwcheck.pwcheck_safe,
        description="byte-compare password check; unsafe exits at first mismatch",
        cost_model_doc=pwcheck.COST_MODEL,
        constraints=Constraints(max_segment_len=16),
        statistic=Statistic("match-prefix-length", prefix_witnesses),
    ),
    BenchmarkTarget(
        name="jetty_eq",
        unsafe_variant=jetty_eq.string_eq_leaky,
        safe_variant=jetty_eq.string_eq_const,
        description="AND-folded string compare; unsafe fold is cheaper on mismatch",
        cost_model_doc=jetty_eq.COST_MODEL,
        constraints=Constraints(max_segment_len=16),
        statistic=Statistic("matching-positions", prefix_witnesses),
    ),
    BenchmarkTarget(
        name="pad",
        unsafe_variant=pad.pad_unsafe,
        safe_variant=pad.pad_safe,
        description="fixed-width padder; unsafe work shrinks with name length",
        cost_model_doc=pad.COST_MODEL,
        constraints=Constraints(max_segment_len=8),
        statistic=Statistic("effective-length", efflen_witnesses),
    ),
    BenchmarkTarget(
        name="modpow",
        unsafe_variant=modpow.modpow_unsafe_target,
        safe_variant=modpow.modpow_safe_target,
        description="square-and-multiply modular exponentiation, secret exponent",
        cost_model_doc=modpow.COST_MODEL,
        constraints=Constraints(max_segment_len=8),
        statistic=Statistic("exponent-bit-pattern", exponent_witnesses),
    ),
    BenchmarkTarget(
        name="array",
        unsafe_variant=micro.array_unsafe,
        safe_variant=micro.array_safe,
        description="table walk of secret-bounded length",
        cost_model_doc=micro.COST_MODEL,
        constraints=Constraints(max_segment_len=4),
    ),
    BenchmarkTarget(
        name="loop_and_branch",
        unsafe_variant=micro.loop_and_branch_unsafe,
        safe_variant=micro.loop_and_branch_safe,
        description="branchy loops; the repaired guard wraps at secret+10",
        cost_model_doc=micro.COST_MODEL,
        constraints=Constraints(max_segment_len=4),
    ),
    BenchmarkTarget(
        name="sanity",
        unsafe_variant=micro.sanity_unsafe,
        safe_variant=micro.sanity_safe,
        description="loop of secret-many iterations vs a public-bounded loop",
        cost_model_doc=micro.COST_MODEL,
        constraints=Constraints(max_segment_len=4),
    ),
    BenchmarkTarget(
        name="straightline",
        unsafe_variant=micro.straightline_unsafe,
        safe_variant=micro.straightline_safe,
        description="constant-size extra block guarded by the secret's low bit",
        cost_model_doc=micro.COST_MODEL,
        constraints=Constraints(max_segment_len=4),
        statistic=Statistic("low-bit-parity", parity_witnesses),
    ),
    BenchmarkTarget(
        name="crime_compress",
        unsafe_variant=crime.crime_compress_target,
        safe_variant=None,
        description="compressed size of pub++sec reveals shared substrings",
        cost_model_doc=crime.COST_MODEL,
        cost_dimension="response_bytes",
        constraints=Constraints(max_segment_len=16),
    ),
    BenchmarkTarget(
        name="login",
        unsafe_variant=login.login_unsafe,
        safe_variant=login.login_safe,
        description="salted-digest credential check; unsafe compare short-circuits",
        cost_model_doc=login.COST_MODEL,
        constraints=Constraints(max_segment_len=8),
    ),
)


def _register_all() -> dict[str, BenchmarkTarget]:
    by_driver: dict[str, BenchmarkTarget] = {}
    for bench in BENCHMARKS:
        variants = [("unsafe", bench.unsafe_variant)]
        if bench.safe_variant is not None:
            variants.append(("safe", bench.safe_variant))
        for label, fn in variants:
            name = bench.name if bench.safe_variant is None else f"{bench.name}_{label}"
            register_driver(
                DriverSpec(
                    name=name,
                    target=fn,
                    description=bench.description,
                    cost_dimension=bench.cost_dimension,
                    constraints=bench.constraints,
                    statistic=bench.statistic,
                )
            )
            by_driver[name] = bench
    return by_driver


BENCHMARK_BY_DRIVER = _register_all()
