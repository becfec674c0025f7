"""Tractability of every RCC-5 subclass, its machine check, and the C1-to-C2 reduction."""
from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from . import kernels
from .algebra import CompositionTable, Relation, Subclass, closure_mask, default_table
from .catalog import C1, KERNELS, MAXIMAL_TRACTABLE
from .models import Interpretation
from .network import Formula, Network, relation_set

__all__ = ["Complexity", "Classification", "ClassificationGap", "classify", "enumerate_small_subsets",
           "verify_theorem_4_2", "verify_maximality", "EnumerationReport", "MaximalityReport",
           "reduce_c1_to_c2", "lift_c2_model"]

PO_MASK = Relation.of("PO").mask
DR_PO_MASK = Relation.of("DR", "PO").mask


class Complexity(enum.Enum):
    POLYNOMIAL = "POLYNOMIAL"
    NP_COMPLETE = "NP-COMPLETE"


class ClassificationGap(RuntimeError):
    """Neither a tractable superset nor a hardness kernel was found."""


@dataclass(frozen=True)
class Classification:
    verdict: Complexity
    algebras: tuple[str, ...] = ()
    kernels: tuple[str, ...] = ()

    def render(self) -> str:
        names = self.algebras if self.verdict is Complexity.POLYNOMIAL else self.kernels
        return f"{self.verdict.value} ({', '.join(names)})" if names else self.verdict.value


def _containing(mask: int) -> tuple[str, ...]:
    return tuple(name for name, m in MAXIMAL_TRACTABLE.items() if mask & ~m.mask == 0)


def _kernels_in(closed: int) -> tuple[str, ...]:
    return tuple(name for name, k in KERNELS.items() if k.mask & ~closed == 0)


def classify(s: Subclass, table: CompositionTable | None = None) -> Classification:
    algebras = _containing(s.mask)
    if algebras:
        return Classification(Complexity.POLYNOMIAL, algebras=algebras)
    found = _kernels_in(closure_mask(s.mask, table))
    if not found:
        raise ClassificationGap(f"{s} is in no tractable algebra yet its closure has no kernel")
    return Classification(Complexity.NP_COMPLETE, kernels=found)


def enumerate_small_subsets(max_size: int = 4) -> np.ndarray:
    """All subclass masks of at most ``max_size`` relations, by size then lexicographically."""
    out = [0]
    for k in range(1, max_size + 1):
        out.extend(sum(1 << r for r in c) for c in combinations(range(32), k))
    return np.array(out, dtype=np.uint32)


@dataclass
class EnumerationReport:
    total: int = 0
    failures: list[int] = field(default_factory=list)
    tallies: dict[str, int] = field(default_factory=dict)
    rows: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        lines = [f"{self.total} subsets checked, {len(self.failures)} failures"]
        lines += [f"  branch {k}: {v}" for k, v in self.tallies.items()]
        return "\n".join(lines)


def _closures(masks: np.ndarray, table: CompositionTable, workers: int) -> np.ndarray:
    if workers <= 1 or len(masks) < 1000:
        return kernels.closure_masks(masks, table)
    chunks = np.array_split(masks, workers)
    with ProcessPoolExecutor(workers) as pool:
        parts = list(pool.map(kernels.closure_masks, chunks, [table] * len(chunks)))
    return np.concatenate(parts)


def verify_theorem_4_2(table: CompositionTable | None = None, workers: int = 1,
                       keep_rows: bool = False) -> EnumerationReport:
    """Check every subclass of at most four relations against the classification test.

    A subset passes if it lies inside a maximal tractable algebra or its
    closure contains C1 or C2. Closures are only computed, in one batch, for
    subsets that miss every algebra.
    """
    table = table or default_table()
    masks = enumerate_small_subsets(4)
    assert len(masks) == sum(comb(32, i) for i in range(5))
    tallies = {f"subset:{name}": 0 for name in MAXIMAL_TRACTABLE} | {f"kernel:{k}": 0 for k in KERNELS}
    pending = [m for m in masks.tolist() if not _containing(m)]
    closed = dict(zip(pending, _closures(np.array(pending, dtype=np.uint32), table, workers).tolist()))
    report = EnumerationReport(total=len(masks), tallies=tallies)
    for m in masks.tolist():
        algebras = _containing(m)
        if algebras:
            branch = f"subset:{algebras[0]}"
        else:
            ks = _kernels_in(closed[m])
            if not ks:
                report.failures.append(m)
                branch = "FAIL"
            else:
                branch = f"kernel:{ks[0]}"
        if branch != "FAIL":
            tallies[branch] += 1
        if keep_rows:
            report.rows.append(f"subset [{Subclass(m)}] ; branch {branch}")
    return report


@dataclass
class MaximalityReport:
    results: list[tuple[str, Relation, Classification]] = field(default_factory=list)

    @property
    def exceptions(self) -> list[tuple[str, Relation, Classification]]:
        return [t for t in self.results if t[2].verdict is not Complexity.NP_COMPLETE]

    @property
    def ok(self) -> bool:
        return not self.exceptions

    def summary(self) -> str:
        lines = [f"maximality: {len(self.results)} one-relation extensions, "
                 f"{len(self.exceptions)} not NP-complete"]
        for name, m in MAXIMAL_TRACTABLE.items():
            n = sum(1 for a, _, _ in self.results if a == name)
            lines.append(f"  {name}: |M| = {len(m)}, {n} extensions")
        return "\n".join(lines)


def verify_maximality(table: CompositionTable | None = None) -> MaximalityReport:
    report = MaximalityReport()
    for name, m in MAXIMAL_TRACTABLE.items():
        for r in Relation.all():
            if r not in m:
                report.results.append((name, r, classify(m | Subclass([r]), table)))
    return report


# --- hardness reduction -------------------------------------------------------------

def reduce_c1_to_c2(net: Network) -> Network:
    """Relabel every {PO} formula as {DR,PO}; {PP,PPI} formulas are copied."""
    if not relation_set(net) <= C1:
        raise ValueError("reduction input must only use {PO} and {PP,PPI}")
    return Network(Formula(f.x, Relation(DR_PO_MASK) if f.rel.mask == PO_MASK else f.rel, f.y)
                   for f in net.formulas)


def lift_c2_model(model: Interpretation) -> Interpretation:
    """Turn a model of the reduced instance into one of the original.

    Adding one shared fresh element to every region turns DR into PO and
    keeps PO, PP and PPI as they were.
    """
    alpha = max((e for s in model.values() for e in s), default=0) + 1
    return Interpretation({v: s | {alpha} for v, s in model.items()})
