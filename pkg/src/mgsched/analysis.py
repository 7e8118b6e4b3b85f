"""Numeric bound checks and competitive-ratio sweeps.

chain_bound evaluates the closed-form cap on how much a charging chain can
award the adversary relative to the algorithm; check_chain tests concrete
chains against it.  sweep runs seeded generate/simulate/ratio grids and
aggregates a per-cell report with a reproducible argmax seed.
"""

from __future__ import annotations

import hashlib
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from random import Random
from typing import Iterable, Sequence

from .generators import GenSpec, generate
from .model import PHI, UNBOUNDED
from .offline import empirical_ratio
from .policies import PolicyKind, PolicyParams


class PremiseError(ValueError):
    pass


@dataclass(frozen=True)
class ChainInstance:
    """A charging chain: adversary values q_1..q_k vs algorithm values p_1..p_k.

    Premises: q_i <= alpha * p_i and q_i <= p_{i+1} for i < k, and q_k <= p_k.
    """

    alpha: float
    q_values: tuple[float, ...]
    p_values: tuple[float, ...]

    @property
    def k(self) -> int:
        return len(self.q_values)

    def check_premises(self) -> None:
        if len(self.q_values) != len(self.p_values) or not self.q_values:
            raise PremiseError("q and p must be equal-length, non-empty")
        if any(v <= 0 for v in self.q_values + self.p_values):
            raise PremiseError("chain values must be positive")
        k = self.k
        for i in range(k - 1):
            if self.q_values[i] > self.alpha * self.p_values[i]:
                raise PremiseError(f"q_{i+1} > alpha * p_{i+1}")
            if self.q_values[i] > self.p_values[i + 1]:
                raise PremiseError(f"q_{i+1} > p_{i+2}")
        if self.q_values[-1] > self.p_values[-1]:
            raise PremiseError("q_k > p_k")


def chain_bound(alpha: float, k: int) -> float:
    """((2 - 1/alpha) * alpha^k - alpha) / (alpha^k - 1); increasing in k,
    bounded above by 2 - 1/alpha."""
    if alpha <= 1:
        raise ValueError("chain_bound requires alpha > 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    a_k = alpha**k
    return ((2.0 - 1.0 / alpha) * a_k - alpha) / (a_k - 1.0)


def check_chain(chain: ChainInstance) -> bool:
    """True iff sum(q) <= chain_bound(alpha, k) * sum(p)."""
    chain.check_premises()
    return math.fsum(chain.q_values) <= chain_bound(chain.alpha, chain.k) * math.fsum(chain.p_values)


def random_chain(rng: Random, alpha: float, k: int) -> ChainInstance:
    """Premise-satisfying chain: draw p freely, derive q below its caps."""
    p = [rng.uniform(0.1, 10.0) for _ in range(k)]
    q = []
    for i in range(k - 1):
        q.append(min(alpha * p[i], p[i + 1]) * rng.uniform(0.05, 1.0))
    q.append(p[-1] * rng.uniform(0.05, 1.0))
    return ChainInstance(alpha, tuple(q), tuple(p))


def extremal_chain(alpha: float, k: int, shrink: float = 1e-9) -> ChainInstance:
    """Chain built from the bound's tight pattern; ratio approaches the bound."""
    p = [1.0]
    q = []
    for _ in range(k - 1):
        q.append(alpha * p[-1] * (1.0 - shrink))
        p.append(q[-1])
    q.append(p[-1])
    return ChainInstance(alpha, tuple(q), tuple(p))


# ---------------------------------------------------------------------------
# Ratio sweeps.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepCell:
    variant: str
    params: PolicyParams
    n: int = 40
    max_slack: int = 8


@dataclass(frozen=True)
class SweepRow:
    variant: str
    kind: str
    alpha: float
    beta: float
    trials: int
    max_ratio: float
    mean_ratio: float
    argmax_seed: int


@dataclass(frozen=True)
class SweepReport:
    rows: tuple[SweepRow, ...]

    CSV_HEADER = "variant,kind,alpha,beta,trials,max_ratio,mean_ratio,argmax_seed"

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for r in self.rows:
            alpha = "inf" if r.alpha == UNBOUNDED else repr(r.alpha)
            lines.append(
                ",".join(
                    [
                        r.variant,
                        r.kind,
                        alpha,
                        repr(r.beta),
                        str(r.trials),
                        repr(r.max_ratio),
                        repr(r.mean_ratio),
                        str(r.argmax_seed),
                    ]
                )
            )
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        widths = (32, 28, 12, 12)
        header = f"{'variant':<{widths[0]}}{'policy':<{widths[1]}}{'max ratio':>{widths[2]}}{'mean ratio':>{widths[3]}}"
        lines = [header, "-" * len(header)]
        for r in self.rows:
            alpha = "inf" if r.alpha == UNBOUNDED else f"{r.alpha:.6g}"
            policy = f"{r.kind}(a={alpha}, b={r.beta:.6g})"
            lines.append(
                f"{r.variant:<{widths[0]}}{policy:<{widths[1]}}{r.max_ratio:>{widths[2]}.6f}{r.mean_ratio:>{widths[3]}.6f}"
            )
        return "\n".join(lines) + "\n"


def derive_seed(base_seed: int, label: str, trial: int) -> int:
    """Stable 64-bit per-trial seed; independent of execution order."""
    digest = hashlib.sha256(f"{base_seed}:{label}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _run_trial(cell: SweepCell, base_seed: int, trial: int) -> tuple[float, int]:
    seed = derive_seed(base_seed, cell.variant, trial)
    size_rng = Random(seed)
    n = size_rng.randint(1, cell.n)
    inst = generate(GenSpec(cell.variant, n, max_slack=cell.max_slack, seed=seed))
    report = empirical_ratio(inst, cell.params)
    return report.ratio, seed


def _run_chunk(args: tuple[SweepCell, int, int, int]) -> list[tuple[int, float, int]]:
    cell, base_seed, lo, hi = args
    return [(trial, *_run_trial(cell, base_seed, trial)) for trial in range(lo, hi)]


def sweep(
    cells: Sequence[SweepCell],
    trials: int,
    seed: int,
    jobs: int = 1,
) -> SweepReport:
    """Run every cell for `trials` seeded instances; deterministic for any jobs."""
    rows = []
    for cell in cells:
        results: list[tuple[int, float, int]] = []
        if jobs <= 1:
            results = _run_chunk((cell, seed, 0, trials))
        else:
            chunk = max(1, (trials + jobs - 1) // jobs)
            tasks = [(cell, seed, lo, min(lo + chunk, trials)) for lo in range(0, trials, chunk)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for part in pool.map(_run_chunk, tasks):
                    results.extend(part)
        results.sort(key=lambda r: r[0])
        ratios = [r[1] for r in results]
        max_ratio = max(ratios) if ratios else 1.0
        argmax_seed = next((s for _, r, s in results if r == max_ratio), seed)
        mean_ratio = (sum(ratios) / len(ratios)) if ratios else 1.0
        rows.append(
            SweepRow(
                variant=cell.variant,
                kind=cell.params.kind.value,
                alpha=cell.params.alpha,
                beta=cell.params.beta,
                trials=trials,
                max_ratio=max_ratio,
                mean_ratio=mean_ratio,
                argmax_seed=argmax_seed,
            )
        )
    return SweepReport(tuple(rows))


def table1_cells(n: int = 40, max_slack: int = 8) -> list[SweepCell]:
    """One representative policy cell per variant: the parameterization whose
    bound the sweep probes (phi-style settings where those apply, the
    earliest-deadline limit where the policy is value-optimal)."""
    from .model import (
        CONSTRAINED_VARIANTS,
        VARIANT_AGREEABLE_DEADLINE,
        VARIANT_AGREEABLE_DEADLINE_VALUE,
        VARIANT_AGREEABLE_SLACK_VALUE,
        VARIANT_ANTI_AGREEABLE_DEADLINE_VALUE,
        VARIANT_ANTI_AGREEABLE_SLACK_VALUE,
        VARIANT_ANTI_AGREEABLE_VALUE,
        VARIANT_GENERAL,
    )

    phi_cells = {
        VARIANT_AGREEABLE_DEADLINE: PolicyParams.mg(PHI, PHI),
        VARIANT_AGREEABLE_DEADLINE_VALUE: PolicyParams.mg(PHI**2, PHI**2),
        VARIANT_AGREEABLE_SLACK_VALUE: PolicyParams.mg(PHI, PHI),
        VARIANT_ANTI_AGREEABLE_VALUE: PolicyParams.mg(UNBOUNDED, 1.0),
        VARIANT_ANTI_AGREEABLE_DEADLINE_VALUE: PolicyParams.mg(UNBOUNDED, 1.0),
        VARIANT_ANTI_AGREEABLE_SLACK_VALUE: PolicyParams.mg(UNBOUNDED, 1.0),
    }
    default = PolicyParams.mg(PHI, PHI)
    cells = [SweepCell(VARIANT_GENERAL, phi_cells.get(VARIANT_GENERAL, default), n, max_slack)]
    for variant in CONSTRAINED_VARIANTS:
        cells.append(SweepCell(variant, phi_cells.get(variant, default), n, max_slack))
    return cells
