"""Optimal provisional schedules over the pending buffer at a time step.

A provisional schedule at time t assigns pending packets to the slots
t, t+1, ... assuming no further arrivals; the optimal one maximizes total
value.  Packets are kept in canonical order: increasing deadline, ties broken
by decreasing value, then by id for full determinism.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import UNBOUNDED, Packet


class EmptyScheduleError(ValueError):
    pass


@dataclass(frozen=True)
class ProvisionalSchedule:
    """Canonically ordered slot assignment of a value-maximal pending subset."""

    time: int
    entries: tuple[tuple[Packet, int], ...]  # (packet, slot), slot = time + index

    @property
    def total_value(self) -> float:
        return sum(p.value for p, _ in self.entries)

    @property
    def packets(self) -> tuple[Packet, ...]:
        return tuple(p for p, _ in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def canonical_key(p: Packet) -> tuple[float, float, int]:
    # UNBOUNDED sorts after every bounded deadline; within it, by -value, id.
    return (p.deadline, -p.value, p.id)


def feasible(packets: Iterable[Packet], t: int) -> bool:
    """Slot-feasibility of a set at time t: after sorting by deadline, the
    i-th packet (1-indexed) must satisfy deadline >= t + i - 1."""
    deadlines = sorted(p.deadline for p in packets)
    return all(d >= t + i for i, d in enumerate(deadlines))


def _latest_free(parent: list[int], s: int) -> int:
    """Latest free slot index <= s, or -1; path-compressed chase."""
    root = s
    while parent[root] != root:
        root = parent[root]
    while parent[s] != root:
        parent[s], s = root, parent[s]
    return root


def optimal_provisional_schedule(pending: Sequence[Packet], t: int) -> ProvisionalSchedule:
    """Value-maximal slot-feasible subset of `pending` at time t, canonical order.

    Greedy by decreasing value (ties by earlier deadline then smaller id) with
    an incremental feasibility test: each accepted packet takes the latest
    free slot not after its deadline.  All pending packets must already be
    released (release <= t) and unexpired (deadline >= t).
    """
    n = len(pending)
    if n == 0:
        return ProvisionalSchedule(t, ())
    # Slot indices 0..n-1 stand for t..t+n-1; index n is the "no slot" root.
    parent = list(range(n + 1))
    accepted: list[Packet] = []
    for p in sorted(pending, key=lambda p: (-p.value, p.deadline, p.id)):
        limit = n - 1 if p.deadline == UNBOUNDED else min(int(p.deadline) - t, n - 1)
        slot = _latest_free(parent, limit + 1) - 1  # parent[i+1] tracks slot i
        if slot >= 0:
            parent[slot + 1] = slot
            accepted.append(p)
    accepted.sort(key=canonical_key)
    return ProvisionalSchedule(t, tuple((p, t + i) for i, p in enumerate(accepted)))


def select_e_h(s: ProvisionalSchedule) -> tuple[Packet, Packet]:
    """First packet e and first highest-value packet h, in canonical order."""
    if not s.entries:
        raise EmptyScheduleError("provisional schedule is empty")
    e = s.entries[0][0]
    top = max(p.value for p, _ in s.entries)
    h = next(p for p, _ in s.entries if p.value == top)
    return e, h
