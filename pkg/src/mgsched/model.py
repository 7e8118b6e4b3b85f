"""Core domain types for the bounded-delay packet scheduling model.

Unit-length packets arrive over discrete time; packet p carries an integer
release time r_p >= 1, a deadline d_p (integer >= r_p, or UNBOUNDED), and a
positive real value v_p.  At most one packet is sent per step, and a packet
sent at step t counts iff r_p <= t <= d_p.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

#: Deadline sentinel.  Compares strictly greater than every bounded deadline,
#: so an UNBOUNDED packet can never expire by accident.
UNBOUNDED = math.inf

#: Golden ratio, (1 + sqrt(5)) / 2.  Satisfies PHI + 1/PHI**2 == 2.
PHI = (1.0 + math.sqrt(5.0)) / 2.0

VARIANT_GENERAL = "general"
VARIANT_AGREEABLE_DEADLINE = "agreeable-deadline"
VARIANT_ANTI_AGREEABLE_DEADLINE = "anti-agreeable-deadline"
VARIANT_AGREEABLE_VALUE = "agreeable-value"
VARIANT_ANTI_AGREEABLE_VALUE = "anti-agreeable-value"
VARIANT_AGREEABLE_DEADLINE_VALUE = "agreeable-deadline-value"
VARIANT_ANTI_AGREEABLE_DEADLINE_VALUE = "anti-agreeable-deadline-value"
VARIANT_AGREEABLE_SLACK_VALUE = "agreeable-slack-value"
VARIANT_ANTI_AGREEABLE_SLACK_VALUE = "anti-agreeable-slack-value"

#: The eight pairwise-constrained settings, in a fixed reporting order.
CONSTRAINED_VARIANTS = (
    VARIANT_AGREEABLE_DEADLINE,
    VARIANT_ANTI_AGREEABLE_DEADLINE,
    VARIANT_AGREEABLE_VALUE,
    VARIANT_ANTI_AGREEABLE_VALUE,
    VARIANT_AGREEABLE_DEADLINE_VALUE,
    VARIANT_ANTI_AGREEABLE_DEADLINE_VALUE,
    VARIANT_AGREEABLE_SLACK_VALUE,
    VARIANT_ANTI_AGREEABLE_SLACK_VALUE,
)

ALL_VARIANTS = (VARIANT_GENERAL,) + CONSTRAINED_VARIANTS


@dataclass(frozen=True, slots=True)
class Packet:
    """A unit job: identity, release step, deadline step (or UNBOUNDED), value."""

    id: int
    release: int
    deadline: float  # integer-valued, or UNBOUNDED
    value: float

    @property
    def slack(self) -> float:
        """d_p - r_p; UNBOUNDED deadline gives unbounded slack."""
        return self.deadline - self.release

    @property
    def has_bounded_deadline(self) -> bool:
        return self.deadline != UNBOUNDED

    def alive_at(self, t: int) -> bool:
        return self.release <= t <= self.deadline


@dataclass(frozen=True)
class Instance:
    """A finite multiset of packets, plus optional generator metadata."""

    packets: tuple[Packet, ...]
    meta: dict | None = None

    def __len__(self) -> int:
        return len(self.packets)

    def __iter__(self) -> Iterator[Packet]:
        return iter(self.packets)

    @property
    def max_release(self) -> int:
        return max((p.release for p in self.packets), default=0)

    def slot_cap(self) -> int:
        """Last slot any schedule needs: max release plus packet count.

        Sending is work-conserving past the last arrival, so every schedulable
        packet (bounded or not) fits within this cap.
        """
        return self.max_release + len(self.packets)

    def horizon(self) -> int:
        """Last step at which any packet can still be alive, capped losslessly."""
        if not self.packets:
            return 0
        cap = self.slot_cap()
        if any(not p.has_bounded_deadline for p in self.packets):
            return cap
        return min(int(max(p.deadline for p in self.packets)), cap)


@dataclass(frozen=True)
class Violation:
    """A broken invariant: which packet (None for instance-level) and which rule."""

    packet_id: int | None
    rule: str
    detail: str


@dataclass(frozen=True)
class VariantClass:
    """Truth value of each pairwise variant condition for an instance."""

    agreeable_deadline: bool
    anti_agreeable_deadline: bool
    agreeable_value: bool
    anti_agreeable_value: bool
    agreeable_deadline_value: bool
    anti_agreeable_deadline_value: bool
    agreeable_slack_value: bool
    anti_agreeable_slack_value: bool

    def as_dict(self) -> dict[str, bool]:
        return {
            VARIANT_AGREEABLE_DEADLINE: self.agreeable_deadline,
            VARIANT_ANTI_AGREEABLE_DEADLINE: self.anti_agreeable_deadline,
            VARIANT_AGREEABLE_VALUE: self.agreeable_value,
            VARIANT_ANTI_AGREEABLE_VALUE: self.anti_agreeable_value,
            VARIANT_AGREEABLE_DEADLINE_VALUE: self.agreeable_deadline_value,
            VARIANT_ANTI_AGREEABLE_DEADLINE_VALUE: self.anti_agreeable_deadline_value,
            VARIANT_AGREEABLE_SLACK_VALUE: self.agreeable_slack_value,
            VARIANT_ANTI_AGREEABLE_SLACK_VALUE: self.anti_agreeable_slack_value,
        }

    def satisfies(self, variant: str) -> bool:
        if variant == VARIANT_GENERAL:
            return True
        return self.as_dict()[variant]


def validate_instance(inst: Instance) -> list[Violation]:
    """Check packet and instance invariants; an empty list means valid."""
    violations: list[Violation] = []
    seen: set[int] = set()
    for p in inst.packets:
        if p.id in seen:
            violations.append(Violation(p.id, "duplicate-id", f"id {p.id} appears more than once"))
        seen.add(p.id)
        if not isinstance(p.release, int) or p.release < 1:
            violations.append(Violation(p.id, "release-before-one", f"release {p.release} < 1"))
        if not (isinstance(p.value, (int, float)) and math.isfinite(p.value) and p.value > 0):
            violations.append(Violation(p.id, "non-positive-value", f"value {p.value} not a positive finite real"))
        if p.deadline != UNBOUNDED:
            if p.deadline != int(p.deadline):
                violations.append(Violation(p.id, "non-integer-deadline", f"deadline {p.deadline} not an integer"))
            if p.deadline < p.release:
                violations.append(
                    Violation(p.id, "deadline-before-release", f"deadline {p.deadline} < release {p.release}")
                )
    return violations


class InvalidInstanceError(ValueError):
    """Raised when an operation requires a valid instance and gets violations."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(f"[{v.packet_id}] {v.rule}: {v.detail}" for v in violations))


def require_valid(inst: Instance) -> None:
    violations = validate_instance(inst)
    if violations:
        raise InvalidInstanceError(violations)


def _pairwise_monotone(pairs: list[tuple[float, float]], increasing: bool) -> bool:
    """True iff for every two items, a_p <= a_q implies b_p <= b_q (>= if not increasing).

    Equivalent check on the (a, b)-sorted sequence: items sharing an a must
    share b, and b must move with a across strict a-increases.
    """
    if len(pairs) < 2:
        return True
    pairs = sorted(pairs)
    prev_a, prev_b = pairs[0]
    for a, b in pairs[1:]:
        if a == prev_a:
            if b != prev_b:
                return False
        else:
            if increasing and b < prev_b:
                return False
            if not increasing and b > prev_b:
                return False
        prev_a, prev_b = a, b
    return True


def classify_variants(inst: Instance) -> VariantClass:
    """Evaluate all eight pairwise variant conditions.

    UNBOUNDED deadlines (and the unbounded slacks they induce) compare as
    larger than every bounded counterpart; ties satisfy both directions.
    """
    rd = [(float(p.release), float(p.deadline)) for p in inst.packets]
    rv = [(float(p.release), p.value) for p in inst.packets]
    dv = [(float(p.deadline), p.value) for p in inst.packets]
    sv = [(float(p.slack), p.value) for p in inst.packets]
    return VariantClass(
        agreeable_deadline=_pairwise_monotone(rd, True),
        anti_agreeable_deadline=_pairwise_monotone(rd, False),
        agreeable_value=_pairwise_monotone(rv, True),
        anti_agreeable_value=_pairwise_monotone(rv, False),
        agreeable_deadline_value=_pairwise_monotone(dv, True),
        anti_agreeable_deadline_value=_pairwise_monotone(dv, False),
        agreeable_slack_value=_pairwise_monotone(sv, True),
        anti_agreeable_slack_value=_pairwise_monotone(sv, False),
    )


# ---------------------------------------------------------------------------
# JSON-lines serialization: one packet per line, optional leading meta line.
# {"meta": {...}}
# {"id": 0, "release": 1, "deadline": 3, "value": 2.5}   (null deadline = UNBOUNDED)
# ---------------------------------------------------------------------------

def packet_to_obj(p: Packet) -> dict:
    return {
        "id": p.id,
        "release": p.release,
        "deadline": None if not p.has_bounded_deadline else int(p.deadline),
        "value": p.value,
    }


def packet_from_obj(obj: dict) -> Packet:
    deadline = obj["deadline"]
    return Packet(
        id=int(obj["id"]),
        release=int(obj["release"]),
        deadline=UNBOUNDED if deadline is None else int(deadline),
        value=float(obj["value"]),
    )


def dump_instance(inst: Instance, fp: IO[str]) -> None:
    if inst.meta is not None:
        fp.write(json.dumps({"meta": inst.meta}, sort_keys=True) + "\n")
    for p in inst.packets:
        fp.write(json.dumps(packet_to_obj(p), sort_keys=True) + "\n")


def dumps_instance(inst: Instance) -> str:
    import io

    buf = io.StringIO()
    dump_instance(inst, buf)
    return buf.getvalue()


def load_instance(fp: IO[str]) -> Instance:
    meta: dict | None = None
    packets: list[Packet] = []
    for line in fp:
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        if "meta" in obj and "id" not in obj:
            meta = obj["meta"]
        else:
            packets.append(packet_from_obj(obj))
    return Instance(tuple(packets), meta)


def loads_instance(text: str) -> Instance:
    import io

    return load_instance(io.StringIO(text))
