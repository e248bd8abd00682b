"""The LPT variants: naive scan, envelope-based fast path, restricted
eligibility, and the battery-aware pointer sweep for drone instances.

Every variant assigns jobs in non-increasing length order (ties by ascending
job id) to the machine minimizing the resulting finish time, with one shared
tie rule: least finish value, then greatest speed, then least machine id.
The fast path and the drone path share a single loop parameterized by the
machine admission stream; the fast path simply admits every machine up front.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

from .envelope import Line, LowerEnvelope
from .errors import InfeasibleError, UsageError
from .model import Instance, Kind, Schedule, build_schedule, feasibility_check
from .numeric import Scalar, scalar_to_str


class Decision(NamedTuple):
    job: int
    machine: int
    before: Scalar
    after: Scalar


@dataclass
class LptTrace:
    """Per-job decision log plus the final schedule and operation counters."""

    algorithm: str
    job_ids: list = field(default_factory=list)
    machine_ids: list = field(default_factory=list)
    before: list = field(default_factory=list)
    after: list = field(default_factory=list)
    schedule: Optional[Schedule] = None
    counters: dict = field(default_factory=dict)

    def decisions(self) -> Iterator[Decision]:
        return (Decision(*t) for t in
                zip(self.job_ids, self.machine_ids, self.before, self.after))

    def decisions_json(self) -> list:
        return [
            {"job": i, "machine": j,
             "before": scalar_to_str(b), "after": scalar_to_str(a)}
            for i, j, b, a in zip(self.job_ids, self.machine_ids,
                                  self.before, self.after)
        ]


def _job_order(instance: Instance) -> list:
    # sorted() is stable, so equal lengths stay in ascending id order
    return sorted(range(instance.n), key=instance.lengths.__getitem__, reverse=True)


def _zero(instance: Instance) -> Scalar:
    return instance.lengths[0] - instance.lengths[0]


def _finalize(trace: LptTrace, instance: Instance, assignment) -> LptTrace:
    trace.schedule = build_schedule(instance, assignment)
    return trace


def lpt_naive(instance: Instance, record_trace: bool = True) -> LptTrace:
    """Textbook LPT for uniform machines: scan all m machines per job, O(mn).

    One code path for both numeric modes; this is the quadratic-ish baseline
    the envelope implementation is benchmarked against.
    """
    if instance.kind is not Kind.USP:
        raise UsageError("lpt_naive expects a USP instance")
    m, speeds, lengths = instance.m, instance.speeds, instance.lengths
    # Scanning machines in (speed desc, id asc) order lets a plain strict
    # compare implement the canonical tie rule.
    perm = sorted(range(m), key=lambda j: (-speeds[j], j))
    inv = [1 / speeds[j] for j in perm]
    T = [_zero(instance)] * m
    assignment = [[] for _ in range(m)]
    trace = LptTrace(algorithm="lpt-naive")
    scans = 0
    for i in _job_order(instance):
        l = lengths[i]
        best, bval = 0, T[0] + l * inv[0]
        for k in range(1, m):
            val = T[k] + l * inv[k]
            if val < bval:
                best, bval = k, val
        scans += m
        j = perm[best]
        if record_trace:
            trace.job_ids.append(i)
            trace.machine_ids.append(j)
            trace.before.append(T[best])
            trace.after.append(bval)
        T[best] = bval
        assignment[j].append(i)
    trace.counters = {"machine_scans": scans}
    return _finalize(trace, instance, assignment)


def _envelope_lpt(instance: Instance, admission_order: list, name: str,
                  record_trace: bool) -> LptTrace:
    """Shared core of the fast and drone paths.

    Machines enter the envelope in ``admission_order`` as soon as their
    battery covers the current job; since jobs shrink monotonically, the
    admission pointer only advances. Each job is placed by one envelope
    query, then the winner's line is replaced with its raised load-time.
    """
    m, speeds, lengths = instance.m, instance.speeds, instance.lengths
    batteries = instance.batteries
    inv = [1 / v for v in speeds]
    T = [_zero(instance)] * m
    assignment = [[] for _ in range(m)]
    trace = LptTrace(algorithm=name)
    env = LowerEnvelope()
    ptr = 0
    for i in _job_order(instance):
        l = lengths[i]
        while ptr < m:
            j = admission_order[ptr]
            d = batteries[j]
            if d is not None and d < l:
                break
            env.insert(Line(inv[j], T[j], j))
            ptr += 1
        if len(env) == 0:
            raise InfeasibleError(
                f"no admitted machine can carry job {i} (length {scalar_to_str(l)})")
        j, after = env.query_min(l)
        env.delete(j)
        env.insert(Line(inv[j], after, j))
        if record_trace:
            trace.job_ids.append(i)
            trace.machine_ids.append(j)
            trace.before.append(T[j])
            trace.after.append(after)
        T[j] = after
        assignment[j].append(i)
    trace.counters = dict(env.counters)
    return _finalize(trace, instance, assignment)


def lpt_fast(instance: Instance, record_trace: bool = True) -> LptTrace:
    """Envelope-based LPT for uniform machines.

    One line per machine, h_j(x) = x/v_j + T_j; each job costs one envelope
    query plus a delete/insert pair, giving O((n+m)(log^2 m + log n)) overall.
    In rational mode the assignment is identical to lpt_naive decision for
    decision.
    """
    if instance.kind is not Kind.USP:
        raise UsageError("lpt_fast expects a USP instance")
    return _envelope_lpt(instance, list(range(instance.m)), "lpt-fast", record_trace)


def dwp_lpt(instance: Instance, record_trace: bool = True) -> LptTrace:
    """Battery-constrained LPT for drone instances.

    Drones sorted by non-increasing battery are admitted by a pointer sweep
    (ties admitted together, ascending id); every produced schedule respects
    all battery limits by construction.
    """
    if instance.kind is not Kind.DWP:
        raise UsageError("dwp_lpt expects a DWP instance")
    if not feasibility_check(instance):
        raise InfeasibleError("no drone can carry the longest parcel")

    def battery_key(j):
        d = instance.batteries[j]
        return math.inf if d is None else d

    order = sorted(range(instance.m), key=battery_key, reverse=True)
    return _envelope_lpt(instance, order, "dwp-lpt", record_trace)


def lpt_restricted(instance: Instance, record_trace: bool = True) -> LptTrace:
    """LPT over arbitrary per-job eligibility sets (naive scan per job)."""
    if instance.kind is not Kind.RESTRICTED:
        raise UsageError("lpt_restricted expects a RESTRICTED instance")
    if not feasibility_check(instance):
        raise InfeasibleError("a job has no eligible machine")

    speeds, lengths = instance.speeds, instance.lengths
    inv = [1 / v for v in speeds]
    T = [_zero(instance)] * instance.m
    assignment = [[] for _ in range(instance.m)]
    trace = LptTrace(algorithm="lpt-restricted")
    scans = 0
    for i in _job_order(instance):
        l = lengths[i]
        best = None
        bval = bspeed = None
        for j in sorted(instance.eligibility[i]):
            val = T[j] + l * inv[j]
            if best is None or val < bval or (val == bval and speeds[j] > bspeed):
                best, bval, bspeed = j, val, speeds[j]
            scans += 1
        if record_trace:
            trace.job_ids.append(i)
            trace.machine_ids.append(best)
            trace.before.append(T[best])
            trace.after.append(bval)
        T[best] = bval
        assignment[best].append(i)
    trace.counters = {"machine_scans": scans}
    return _finalize(trace, instance, assignment)


SCHEDULERS = {
    "lpt-naive": lpt_naive,
    "lpt-fast": lpt_fast,
    "lpt-restricted": lpt_restricted,
    "dwp-lpt": dwp_lpt,
}


def run_scheduler(name: str, instance: Instance, record_trace: bool = True) -> LptTrace:
    try:
        fn = SCHEDULERS[name]
    except KeyError:
        raise UsageError(f"unknown scheduler {name!r}; pick one of {sorted(SCHEDULERS)}")
    return fn(instance, record_trace=record_trace)
