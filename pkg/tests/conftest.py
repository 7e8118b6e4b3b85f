from __future__ import annotations

import math

from mgsched.model import UNBOUNDED, Instance, Packet


def mk(pid: int, release: int, deadline: float, value: float) -> Packet:
    return Packet(pid, release, deadline, value)


def inst_of(*packets: Packet) -> Instance:
    return Instance(tuple(packets))


def brute_best_pending_value(pending, t: int) -> float:
    """Independent oracle: max total value over all slot-feasible subsets."""
    n = len(pending)
    best = 0.0
    for mask in range(1 << n):
        subset = [pending[i] for i in range(n) if mask >> i & 1]
        deadlines = sorted(p.deadline for p in subset)
        if all(d >= t + i for i, d in enumerate(deadlines)):
            best = max(best, sum(p.value for p in subset))
    return best


def naive_pairwise_flags(inst: Instance) -> dict[str, bool]:
    """Quadratic re-derivation of all eight variant conditions."""

    def holds(key_a, key_b, increasing):
        for p in inst.packets:
            for q in inst.packets:
                if key_a(p) <= key_a(q):
                    if increasing and not key_b(p) <= key_b(q):
                        return False
                    if not increasing and not key_b(p) >= key_b(q):
                        return False
        return True

    r = lambda p: p.release
    d = lambda p: p.deadline
    v = lambda p: p.value
    s = lambda p: p.slack
    return {
        "agreeable-deadline": holds(r, d, True),
        "anti-agreeable-deadline": holds(r, d, False),
        "agreeable-value": holds(r, v, True),
        "anti-agreeable-value": holds(r, v, False),
        "agreeable-deadline-value": holds(d, v, True),
        "anti-agreeable-deadline-value": holds(d, v, False),
        "agreeable-slack-value": holds(s, v, True),
        "anti-agreeable-slack-value": holds(s, v, False),
    }
