"""Campaign orchestration: seeds in, mutants through the harness, report out.

One campaign is one thread owning the queue, coverage, high score, and RNG.
Inputs cycle round-robin; each entry gets the deterministic stage on its
first visit, then bounded havoc and splice passes. Every candidate runs
through the two-execution harness and is kept iff it reaches new coverage
or strictly raises the delta high score. Progress lands in stats.csv at one
row per second; the final report carries the verdict, the witness triple,
and the reminder that finding nothing proves nothing.

The clock is swappable: wall mode times out on real seconds, while paced
mode derives time from the evaluation count, making an entire campaign a
pure function of (config, seeds, rng_seed).
"""

from __future__ import annotations

import csv
import logging
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from .corpus import FuzzQueue, HighScore, consider, load_seeds
from .coverage import CoverageMap, GlobalCoverage
from .driver import (
    OUTCOME_PARSE_REJECT,
    ConfigError,
    DiffResult,
    DriverSpec,
    get_driver,
    run_driver,
    with_domain,
)
from .metering import DIMENSION_ALIASES, DIMENSIONS
from .mutation import MutationBudget, deterministic_stage, havoc, splice

log = logging.getLogger(__name__)

VERDICT_NO_DIFFERENCE = "no-difference-found"
VERDICT_BELOW_EPSILON = "below-epsilon"
VERDICT_LEAK = "leak-indicated"

STATS_HEADER = ("seconds", "executions", "max_delta", "coverage_count", "queue_size")

# stating this in every report is part of the output contract
NO_PROOF_NOTE = (
    "A verdict of no-difference-found means no cost difference was observed\n"
    "within this campaign's budget; it does not prove the absence of side\n"
    "channels."
)


def canonical_dimension(name: str) -> str:
    """Accept CLI aliases (ops/mem/response) and canonical names alike."""
    if name in DIMENSION_ALIASES:
        return DIMENSION_ALIASES[name]
    if name in DIMENSIONS:
        return name
    known = ", ".join(sorted(set(DIMENSION_ALIASES) | set(DIMENSIONS)))
    raise ConfigError(f"unknown cost dimension {name!r}; known: {known}")


def verdict(max_delta: int, report_epsilon: Optional[float] = None) -> str:
    if max_delta < 0:
        raise ValueError("max_delta must be >= 0")
    if max_delta == 0:
        return VERDICT_NO_DIFFERENCE
    if report_epsilon is not None and max_delta < report_epsilon:
        return VERDICT_BELOW_EPSILON
    return VERDICT_LEAK


class CampaignClock:
    """Campaign time source.

    Wall mode (pace=None) reports real elapsed seconds. Paced mode reports
    evaluations/pace, so timeouts, stats rows, and every downstream artifact
    depend only on the evaluation sequence, never on host speed.
    """

    def __init__(self, pace: Optional[int] = None):
        if pace is not None and pace < 1:
            raise ConfigError("pace must be >= 1 evaluations per second")
        self._pace = pace
        self._evals = 0
        self._start = time.monotonic()

    def on_evaluation(self) -> None:
        self._evals += 1

    def now(self) -> float:
        if self._pace is None:
            return time.monotonic() - self._start
        return self._evals / self._pace


@dataclass(frozen=True)
class CampaignConfig:
    driver_name: str
    seed_dir: str
    out_dir: str
    timeout_seconds: float = 30.0
    cost_dimension: Optional[str] = None  # None: the driver's default
    max_input_len: int = 48
    rng_seed: int = 0
    report_epsilon: Optional[float] = None
    segment_cap: Optional[int] = None
    charset: Optional[str] = None
    havoc_iterations: int = 256
    splice_iterations: int = 32
    deterministic_stage_enabled: bool = True
    pace: Optional[int] = None
    stop_on_delta: Optional[int] = None
    # library-only early stop; not reachable from the CLI and not picklable
    stop_condition: Optional[Callable[[DiffResult], bool]] = None

    def validate(self) -> None:
        if self.timeout_seconds < 1:
            raise ConfigError("timeout must be >= 1 second")
        if self.report_epsilon is not None and self.report_epsilon < 0:
            raise ConfigError("epsilon must be >= 0")
        if self.max_input_len < 1:
            raise ConfigError("max input length must be >= 1")
        if self.havoc_iterations < 1:
            raise ConfigError("havoc iterations must be >= 1")
        if self.splice_iterations < 0:
            raise ConfigError("splice iterations must be >= 0")
        if self.stop_on_delta is not None and self.stop_on_delta < 1:
            raise ConfigError("stop-delta must be >= 1")


@dataclass(frozen=True)
class CampaignReport:
    driver: str
    dimension: str
    verdict: str
    max_delta: int
    witness_data: bytes
    witness_decoded: tuple[bytes, bytes, bytes] | None
    first_positive_at: Optional[float]
    executions: int
    coverage_count: int
    queue_size: int
    harness_error_count: int
    harness_error_notes: tuple[str, ...]
    duration: float
    stop_reason: str
    report_epsilon: Optional[float]
    out_dir: str
    stats_rows: tuple[tuple[int, int, int, int, int], ...] = field(repr=False, default=())


class _Stop(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def _hex_triple(decoded: tuple[bytes, bytes, bytes] | None) -> tuple[str, str, str]:
    if decoded is None:
        return ("", "", "")
    return tuple(part.hex() for part in decoded)  # type: ignore[return-value]


def _resolve_spec(config: CampaignConfig) -> DriverSpec:
    spec = get_driver(config.driver_name)
    dimension = (
        canonical_dimension(config.cost_dimension)
        if config.cost_dimension is not None
        else None
    )
    return with_domain(
        spec,
        segment_cap=config.segment_cap,
        charset=config.charset,
        dimension=dimension,
    )


def run_campaign(config: CampaignConfig) -> CampaignReport:
    config.validate()
    spec = _resolve_spec(config)
    dim = spec.cost_dimension
    seeds = load_seeds(config.seed_dir, config.max_input_len)

    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    queue = FuzzQueue(out_dir / "queue")
    global_cov = GlobalCoverage()
    high = HighScore()
    rng = random.Random(config.rng_seed)
    budget = MutationBudget(
        havoc_iterations=config.havoc_iterations,
        max_input_len=config.max_input_len,
        rng_seed=config.rng_seed,
    )
    clock = CampaignClock(config.pace)

    executions = 0
    first_positive: Optional[float] = None
    harness_errors = 0
    error_notes: dict[str, None] = {}  # insertion-ordered de-dup
    stats_rows: list[tuple[int, int, int, int, int]] = []
    next_row_second = 0

    def emit_rows() -> None:
        nonlocal next_row_second
        current = int(clock.now())
        while next_row_second <= current:
            stats_rows.append(
                (
                    next_row_second,
                    executions,
                    high.value,
                    global_cov.nonzero_count(),
                    len(queue),
                )
            )
            next_row_second += 1

    def evaluate(data: bytes, parent_id: Optional[int]) -> DiffResult:
        nonlocal executions, first_positive, harness_errors
        cov = CoverageMap()
        result = run_driver(spec, data, cov)
        executions += 1
        clock.on_evaluation()
        now = clock.now()
        if result.outcome != OUTCOME_PARSE_REJECT:
            consider(queue, data, result, cov, global_cov, high, dim, now, parent_id)
            if result.delta_of(dim) > 0 and first_positive is None:
                first_positive = now
            if result.note is not None:
                harness_errors += 1
                if len(error_notes) < 8:
                    error_notes.setdefault(result.note)
        emit_rows()
        if config.stop_condition is not None and config.stop_condition(result):
            raise _Stop("stop-condition")
        if config.stop_on_delta is not None and high.value >= config.stop_on_delta:
            raise _Stop("delta-target-reached")
        if clock.now() >= config.timeout_seconds:
            raise _Stop("timeout")
        return result

    log.info(
        "campaign start: driver=%s dimension=%s timeout=%ss seeds=%d",
        spec.name,
        dim,
        config.timeout_seconds,
        len(seeds),
    )

    stop_reason = "timeout"
    det_done: set[int] = set()
    try:
        for name, data in seeds:
            result = evaluate(data, None)
            if result.outcome == OUTCOME_PARSE_REJECT:
                raise ConfigError(f"seed {name!r} does not parse: {result.note}")
            if not queue.seen(data):
                # seeds are enqueued even when boring; they anchor the corpus
                queue.add(
                    data,
                    best_delta=result.delta_of(dim),
                    discovered_at=clock.now(),
                )
        while True:
            entry = queue.next()
            if entry.entry_id not in det_done:
                det_done.add(entry.entry_id)
                if config.deterministic_stage_enabled:
                    for mutant in deterministic_stage(entry.data):
                        evaluate(mutant[: config.max_input_len], entry.entry_id)
            for _ in range(config.havoc_iterations):
                evaluate(havoc(entry.data, budget, rng), entry.entry_id)
            for _ in range(config.splice_iterations):
                partner = rng.choice(queue.entries).data
                mutant = splice(entry.data, partner, budget, rng)
                if mutant is not None:
                    evaluate(mutant, entry.entry_id)
    except _Stop as stop:
        stop_reason = stop.reason

    emit_rows()
    duration = clock.now()
    # final snapshot row, even when the campaign ended mid-second
    stats_rows.append(
        (
            int(duration),
            executions,
            high.value,
            global_cov.nonzero_count(),
            len(queue),
        )
    )

    witness_data = high.witness_data
    witness_decoded = high.witness_decoded
    if witness_data is None:
        # no positive delta: fall back to the first seed as the exhibit
        witness_data = seeds[0][1]
        witness_decoded = run_driver(spec, witness_data).decoded

    report = CampaignReport(
        driver=spec.name,
        dimension=dim,
        verdict=verdict(high.value, config.report_epsilon),
        max_delta=high.value,
        witness_data=witness_data,
        witness_decoded=witness_decoded,
        first_positive_at=first_positive,
        executions=executions,
        coverage_count=global_cov.nonzero_count(),
        queue_size=len(queue),
        harness_error_count=harness_errors,
        harness_error_notes=tuple(error_notes),
        duration=duration,
        stop_reason=stop_reason,
        report_epsilon=config.report_epsilon,
        out_dir=str(out_dir),
        stats_rows=tuple(stats_rows),
    )
    _write_outputs(out_dir, report)
    log.info(
        "campaign done: verdict=%s max_delta=%d executions=%d (%s)",
        report.verdict,
        report.max_delta,
        report.executions,
        stop_reason,
    )
    return report


def _write_outputs(out_dir: Path, report: CampaignReport) -> None:
    with open(out_dir / "stats.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(STATS_HEADER)
        writer.writerows(report.stats_rows)

    (out_dir / "witness.bin").write_bytes(report.witness_data)

    pub, sec1, sec2 = _hex_triple(report.witness_decoded)
    witness_lines = [
        f"driver: {report.driver}",
        f"dimension: {report.dimension}",
        f"delta: {report.max_delta}",
        f"pub:   {pub}",
        f"sec_1: {sec1}",
        f"sec_2: {sec2}",
        "",
    ]
    (out_dir / "witness.txt").write_text("\n".join(witness_lines))

    first = (
        f"{report.first_positive_at:.3f} s"
        if report.first_positive_at is not None
        else "never"
    )
    epsilon = (
        f"{report.report_epsilon:g}" if report.report_epsilon is not None else "(not set)"
    )
    lines = [
        "differential fuzzing report",
        "===========================",
        f"driver:            {report.driver}",
        f"cost dimension:    {report.dimension}",
        f"verdict:           {report.verdict}",
        f"max delta:         {report.max_delta}",
        f"epsilon:           {epsilon}",
        f"first positive:    {first}",
        f"executions:        {report.executions}",
        f"edges covered:     {report.coverage_count}",
        f"queue size:        {report.queue_size}",
        f"harness errors:    {report.harness_error_count}",
        f"stop reason:       {report.stop_reason}",
        f"duration:          {report.duration:.3f} s",
        f"witness pub:   {pub}",
        f"witness sec_1: {sec1}",
        f"witness sec_2: {sec2}",
    ]
    for note in report.harness_error_notes:
        lines.append(f"harness error note: {note}")
    lines += ["", NO_PROOF_NOTE, ""]
    (out_dir / "report.txt").write_text("\n".join(lines))


def replay(
    driver_name: str,
    data: bytes,
    dimension: Optional[str] = None,
    segment_cap: Optional[int] = None,
    charset: Optional[str] = None,
) -> DiffResult:
    """One harness pass over raw input bytes, under the same domain knobs
    the campaign used; replaying a campaign witness reproduces its delta."""
    spec = with_domain(
        get_driver(driver_name),
        segment_cap=segment_cap,
        charset=charset,
        dimension=canonical_dimension(dimension) if dimension is not None else None,
    )
    return run_driver(spec, data)
