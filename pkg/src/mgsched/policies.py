"""Online policies (MG, EDF_alpha, Greedy) and the discrete-time simulator.

MG recomputes the optimal provisional schedule each step and sends the first
packet f in canonical order with v_f >= max(v_h / alpha, beta * v_e), where e
is the schedule's first packet and h its first highest-value packet; if
v_e >= v_h / alpha it sends e outright.  EDF_alpha works on the raw buffer,
Greedy is MG with alpha = beta = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import IO, Sequence

from .model import UNBOUNDED, Instance, Packet, require_valid
from .provisional import (
    EmptyScheduleError,
    ProvisionalSchedule,
    canonical_key,
    optimal_provisional_schedule,
    select_e_h,
)


class PolicyKind(str, Enum):
    MG = "mg"
    EDF_ALPHA = "edf"
    GREEDY = "greedy"


@dataclass(frozen=True)
class PolicyParams:
    """Selector choice plus (alpha, beta); alpha may be UNBOUNDED (math.inf)."""

    kind: PolicyKind
    alpha: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        if self.beta < 1 or not math.isfinite(self.beta):
            raise ValueError(f"beta must be a finite real >= 1, got {self.beta}")
        if self.kind is PolicyKind.MG and self.beta > self.alpha:
            raise ValueError(f"MG requires beta <= alpha, got beta={self.beta} > alpha={self.alpha}")
        if self.kind is PolicyKind.GREEDY and (self.alpha != 1 or self.beta != 1):
            raise ValueError("greedy is MG with alpha = beta = 1")

    @classmethod
    def mg(cls, alpha: float, beta: float = 1.0) -> "PolicyParams":
        return cls(PolicyKind.MG, alpha, beta)

    @classmethod
    def edf(cls, alpha: float) -> "PolicyParams":
        return cls(PolicyKind.EDF_ALPHA, alpha, 1.0)

    @classmethod
    def greedy(cls) -> "PolicyParams":
        return cls(PolicyKind.GREEDY, 1.0, 1.0)

    def describe(self) -> str:
        a = "inf" if self.alpha == UNBOUNDED else repr(self.alpha)
        return f"{self.kind.value}(alpha={a}, beta={self.beta!r})"


class EmptyBufferError(ValueError):
    pass


@dataclass(frozen=True)
class StepRecord:
    t: int
    sent_id: int | None
    sent_value: float
    buffer_size: int
    schedule_value: float


@dataclass(frozen=True)
class SimulationTrace:
    steps: tuple[StepRecord, ...]
    total_value: float
    dropped_expired: tuple[int, ...]

    @property
    def sent_ids(self) -> tuple[int, ...]:
        return tuple(s.sent_id for s in self.steps if s.sent_id is not None)

    @property
    def sent_count(self) -> int:
        return sum(1 for s in self.steps if s.sent_id is not None)


def mg_select(s: ProvisionalSchedule, params: PolicyParams) -> Packet:
    """Apply the MG send rule to a non-empty provisional schedule."""
    e, h = select_e_h(s)
    h_over_alpha = 0.0 if params.alpha == UNBOUNDED else h.value / params.alpha
    if e.value >= h_over_alpha:
        return e
    threshold = max(h_over_alpha, params.beta * e.value)
    for p, _ in s.entries:
        if p.value >= threshold:
            return p
    # alpha >= beta guarantees h itself qualifies.
    raise AssertionError("no qualifying packet; alpha/beta invariant broken")


def edf_alpha_select(pending: Sequence[Packet], t: int, alpha: float) -> Packet:
    """Earliest-deadline pending packet with value >= (max pending value) / alpha.

    Ties by decreasing value, then id.  Operates on the raw buffer, not the
    provisional schedule.
    """
    if not pending:
        raise EmptyBufferError(f"no pending packets at t={t}")
    top = max(p.value for p in pending)
    threshold = 0.0 if alpha == UNBOUNDED else top / alpha
    eligible = [p for p in pending if p.value >= threshold]
    return min(eligible, key=canonical_key)


def greedy_select(pending: Sequence[Packet], t: int) -> Packet:
    """Maximum-value pending packet; ties by earlier deadline, then id."""
    if not pending:
        raise EmptyBufferError(f"no pending packets at t={t}")
    return min(pending, key=lambda p: (-p.value, p.deadline, p.id))


class SlackValuePropertyError(AssertionError):
    """A provisional schedule was not value-nonincreasing in canonical order."""


def simulate(
    inst: Instance,
    params: PolicyParams,
    check_slack_value_property: bool = False,
) -> SimulationTrace:
    """Run one policy over an instance and record the per-step trace.

    Each step t: admit arrivals with release == t, drop packets whose bounded
    deadline has passed, then (buffer permitting) compute the optimal
    provisional schedule and send the selector's packet.  Work-conserving and
    fully deterministic.  With `check_slack_value_property` the schedule is
    asserted value-nonincreasing in canonical order each step (the invariant
    of anti-agreeable slack/value instances).
    """
    require_valid(inst)
    arrivals: dict[int, list[Packet]] = {}
    for p in inst.packets:
        arrivals.setdefault(p.release, []).append(p)
    for group in arrivals.values():
        group.sort(key=lambda p: p.id)

    horizon = inst.horizon()
    buffer: list[Packet] = []
    steps: list[StepRecord] = []
    dropped: list[int] = []
    total = 0.0
    remaining_arrivals = len(inst.packets)

    t = 1
    while t <= horizon:
        for p in arrivals.get(t, ()):
            buffer.append(p)
            remaining_arrivals -= 1
        if buffer:
            kept = [p for p in buffer if p.deadline >= t]
            if len(kept) != len(buffer):
                dropped.extend(sorted(p.id for p in buffer if p.deadline < t))
                buffer = kept
        if not buffer and remaining_arrivals == 0:
            break
        if not buffer:
            steps.append(StepRecord(t, None, 0.0, 0, 0.0))
            t += 1
            continue

        schedule = optimal_provisional_schedule(buffer, t)
        if check_slack_value_property:
            values = [p.value for p, _ in schedule.entries]
            if any(a < b for a, b in zip(values, values[1:])):
                raise SlackValuePropertyError(f"value order broken at t={t}")

        if params.kind is PolicyKind.MG:
            chosen = mg_select(schedule, params)
        elif params.kind is PolicyKind.EDF_ALPHA:
            chosen = edf_alpha_select(buffer, t, params.alpha)
        else:
            chosen = greedy_select(buffer, t)

        buffer.remove(chosen)
        total += chosen.value
        steps.append(StepRecord(t, chosen.id, chosen.value, len(buffer) + 1, schedule.total_value))
        t += 1

    dropped.extend(sorted(p.id for p in buffer))  # anything still stuck past horizon
    return SimulationTrace(tuple(steps), total, tuple(dropped))


def dump_trace(trace: SimulationTrace, fp: IO[str]) -> None:
    """JSON-lines trace: one record per step, then a summary line."""
    import json

    for s in trace.steps:
        fp.write(
            json.dumps(
                {
                    "t": s.t,
                    "sent_id": s.sent_id,
                    "sent_value": s.sent_value,
                    "buffer_size": s.buffer_size,
                    "schedule_value": s.schedule_value,
                },
                sort_keys=True,
            )
            + "\n"
        )
    fp.write(
        json.dumps(
            {
                "summary": {
                    "totalValue": trace.total_value,
                    "sentCount": trace.sent_count,
                    "droppedCount": len(trace.dropped_expired),
                }
            },
            sort_keys=True,
        )
        + "\n"
    )
