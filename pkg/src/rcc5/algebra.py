"""The RCC-5 relation algebra.

Basic relations are indexed 0..4 in the order DR, PO, PP, PPI, EQ; a relation
is a 5-bit mask over them and a subclass is a 32-bit mask over relations.
The composition table is derived from three-variable Venn-cell models rather
than typed in, and a frozen copy ships in ``data/composition_table.json``.
"""
from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from importlib import resources
from itertools import product
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "BasicRelation", "Relation", "Subclass", "CompositionTable", "DerivedRelation",
    "BOTTOM", "TOP", "EQ_REL", "PP_PPI", "converse", "intersect", "compose", "closure", "closure_mask",
    "is_subalgebra", "derive_composition_table", "default_table", "basic_from_cells",
    "RelationSyntaxError",
]


class RelationSyntaxError(ValueError):
    """Raised for malformed relation text or an unknown basic-relation name."""


class BasicRelation(IntEnum):
    DR = 0
    PO = 1
    PP = 2
    PPI = 3
    EQ = 4

    @property
    def bit(self) -> int:
        return 1 << self.value

    @property
    def converse(self) -> "BasicRelation":
        return _BASIC_CONVERSE[self]

    def __str__(self) -> str:
        return self.name


_BASIC_CONVERSE = {
    BasicRelation.DR: BasicRelation.DR,
    BasicRelation.PO: BasicRelation.PO,
    BasicRelation.PP: BasicRelation.PPI,
    BasicRelation.PPI: BasicRelation.PP,
    BasicRelation.EQ: BasicRelation.EQ,
}


class Relation:
    """A disjunction of basic relations, stored as a 5-bit mask.

    Instances are interned, so ``Relation(3) is Relation(3)``.
    """

    __slots__ = ("mask",)
    _cache: dict[int, "Relation"] = {}

    def __new__(cls, mask: int) -> "Relation":
        try:
            return cls._cache[mask]
        except KeyError:
            pass
        if not 0 <= mask < 32:
            raise ValueError(f"relation mask out of range: {mask}")
        obj = super().__new__(cls)
        object.__setattr__(obj, "mask", mask)
        cls._cache[mask] = obj
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Relation is immutable")

    def __reduce__(self):
        return (Relation, (self.mask,))

    @classmethod
    def of(cls, *basics: BasicRelation | str) -> "Relation":
        mask = 0
        for b in basics:
            if isinstance(b, str):
                b = _basic_from_name(b)
            mask |= 1 << int(b)
        return cls(mask)

    @classmethod
    def parse(cls, text: str) -> "Relation":
        """Parse ``{DR,PO}``, ``{}`` or ``TOP`` (case-insensitive)."""
        s = text.strip()
        if s.upper() == "TOP":
            return TOP
        if len(s) < 2 or s[0] != "{" or s[-1] != "}":
            raise RelationSyntaxError(f"malformed relation: {text!r}")
        body = s[1:-1].strip()
        if not body:
            return BOTTOM
        return cls.of(*(_basic_from_name(tok) for tok in body.split(",")))

    @classmethod
    def all(cls) -> list["Relation"]:
        return [cls(m) for m in range(32)]

    @property
    def members(self) -> tuple[BasicRelation, ...]:
        return tuple(b for b in BasicRelation if self.mask >> b & 1)

    def __iter__(self) -> Iterator[BasicRelation]:
        return iter(self.members)

    def __contains__(self, b: BasicRelation) -> bool:
        return bool(self.mask >> int(b) & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __bool__(self) -> bool:
        return self.mask != 0

    def __or__(self, other: "Relation") -> "Relation":
        return Relation(self.mask | other.mask)

    def __and__(self, other: "Relation") -> "Relation":
        return Relation(self.mask & other.mask)

    def __le__(self, other: "Relation") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Relation") -> bool:
        return self <= other and self.mask != other.mask

    def __eq__(self, other) -> bool:
        return isinstance(other, Relation) and other.mask == self.mask

    def __hash__(self) -> int:
        return hash(("Relation", self.mask))

    def __str__(self) -> str:
        return "{" + ",".join(b.name for b in self.members) + "}"

    def __repr__(self) -> str:
        return f"Relation({self})"


def _basic_from_name(tok: str) -> BasicRelation:
    name = tok.strip().upper()
    try:
        return BasicRelation[name]
    except KeyError:
        raise RelationSyntaxError(f"unknown basic relation: {tok.strip()!r}") from None


BOTTOM = Relation(0)
TOP = Relation(31)
EQ_REL = Relation(1 << 4)
PP_PPI = Relation((1 << 2) | (1 << 3))

_RELATION_TOKEN = re.compile(r"\{[^{}]*\}|\bTOP\b", re.IGNORECASE)


class Subclass:
    """A set of relations, stored as a 32-bit mask indexed by relation mask."""

    __slots__ = ("mask",)

    def __init__(self, relations: Iterable[Relation] | int = ()):
        if isinstance(relations, int):
            if not 0 <= relations < 1 << 32:
                raise ValueError("subclass mask out of range")
            mask = relations
        else:
            mask = 0
            for r in relations:
                mask |= 1 << r.mask
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("Subclass is immutable")

    def __reduce__(self):
        return (Subclass, (self.mask,))

    @classmethod
    def parse(cls, text: str) -> "Subclass":
        """Parse a run of relations such as ``{PO} {PP,PPI}`` or ``{PO},{PP,PPI}``."""
        leftover = _RELATION_TOKEN.sub("", text).replace(",", "").strip()
        if leftover:
            raise RelationSyntaxError(f"unexpected text in subclass: {leftover!r}")
        return cls(Relation.parse(tok) for tok in _RELATION_TOKEN.findall(text))

    def relations(self) -> list[Relation]:
        return [Relation(m) for m in range(32) if self.mask >> m & 1]

    def __iter__(self) -> Iterator[Relation]:
        return iter(self.relations())

    def __contains__(self, r: Relation) -> bool:
        return bool(self.mask >> r.mask & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __or__(self, other: "Subclass") -> "Subclass":
        return Subclass(self.mask | other.mask)

    def __and__(self, other: "Subclass") -> "Subclass":
        return Subclass(self.mask & other.mask)

    def __le__(self, other: "Subclass") -> bool:
        return self.mask & ~other.mask == 0

    def __ge__(self, other: "Subclass") -> bool:
        return other <= self

    def __eq__(self, other) -> bool:
        return isinstance(other, Subclass) and other.mask == self.mask

    def __hash__(self) -> int:
        return hash(("Subclass", self.mask))

    def __str__(self) -> str:
        return " ".join(str(r) for r in self.relations())

    def __repr__(self) -> str:
        return f"Subclass([{', '.join(str(r) for r in self.relations())}])"


# --- composition table -----------------------------------------------------

def basic_from_cells(cells: Iterable[int], i: int, j: int) -> BasicRelation:
    """Basic relation between variables ``i`` and ``j`` given occupied Venn cells.

    Each cell is a bitmask of the variables it lies inside.
    """
    only_i = both = only_j = False
    bi, bj = 1 << i, 1 << j
    for c in cells:
        a, b = bool(c & bi), bool(c & bj)
        if a and b:
            both = True
        elif a:
            only_i = True
        elif b:
            only_j = True
    if not both:
        return BasicRelation.DR
    if only_i and only_j:
        return BasicRelation.PO
    if only_j:
        return BasicRelation.PP
    if only_i:
        return BasicRelation.PPI
    return BasicRelation.EQ


class CompositionTable:
    """Composition of basic relations, with mask-level lookup arrays."""

    def __init__(self, entries: dict[tuple[BasicRelation, BasicRelation], Relation]):
        if len(entries) != 25:
            raise ValueError("composition table must cover all 25 basic pairs")
        self.entries = dict(entries)
        rel = np.zeros((32, 32), dtype=np.uint8)
        for a, b in product(range(32), repeat=2):
            m = 0
            for x in BasicRelation:
                if not a >> x & 1:
                    continue
                for y in BasicRelation:
                    if b >> y & 1:
                        m |= self.entries[x, y].mask
            rel[a, b] = m
        rel.setflags(write=False)
        self.compose_array = rel
        self.converse_array = np.array([converse(Relation(m)).mask for m in range(32)], dtype=np.uint8)
        self.converse_array.setflags(write=False)
        # plain lists are much faster than numpy scalars for Python-level loops
        self.compose_rows = rel.tolist()
        self.converse_list = self.converse_array.tolist()

    def entry(self, a: BasicRelation, b: BasicRelation) -> Relation:
        return self.entries[a, b]

    def compose_mask(self, a: int, b: int) -> int:
        return self.compose_rows[a][b]

    def to_json(self) -> dict:
        return {
            "order": [b.name for b in BasicRelation],
            "entries": {
                a.name: {b.name: str(self.entries[a, b]) for b in BasicRelation}
                for a in BasicRelation
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "CompositionTable":
        entries = {}
        for a, row in data["entries"].items():
            for b, text in row.items():
                entries[BasicRelation[a], BasicRelation[b]] = Relation.parse(text)
        return cls(entries)

    def render(self) -> str:
        width = max(len(str(r)) for r in self.entries.values())
        lines = [("o".ljust(4) + " ".join(b.name.ljust(width) for b in BasicRelation)).rstrip()]
        for a in BasicRelation:
            lines.append(a.name.ljust(4) + " ".join(str(self.entries[a, b]).ljust(width)
                                                      for b in BasicRelation).rstrip())
        return "\n".join(lines)

    def __eq__(self, other) -> bool:
        return isinstance(other, CompositionTable) and self.entries == other.entries


def derive_composition_table() -> CompositionTable:
    """Derive every basic composition from three-variable cell models.

    Variables are X=0, Z=1, Y=2. Every occupancy pattern of the seven
    non-empty cells in which all three regions are non-empty contributes
    ``rel(X, Y)`` to the entry for ``(rel(X, Z), rel(Z, Y))``.
    """
    acc = {(a, b): 0 for a in BasicRelation for b in BasicRelation}
    cells = range(1, 8)
    for pattern in range(1 << 7):
        occupied = [c for c in cells if pattern >> (c - 1) & 1]
        if any(not any(c >> v & 1 for c in occupied) for v in range(3)):
            continue
        xz = basic_from_cells(occupied, 0, 1)
        zy = basic_from_cells(occupied, 1, 2)
        xy = basic_from_cells(occupied, 0, 2)
        acc[xz, zy] |= xy.bit
    return CompositionTable({k: Relation(v) for k, v in acc.items()})


@lru_cache(maxsize=None)
def default_table() -> CompositionTable:
    """The frozen composition table shipped with the package."""
    text = resources.files("rcc5").joinpath("data/composition_table.json").read_text("utf-8")
    return CompositionTable.from_json(json.loads(text))


# --- operations ------------------------------------------------------------

def converse(r: Relation) -> Relation:
    m = 0
    for b in r.members:
        m |= b.converse.bit
    return Relation(m)


def intersect(r: Relation, s: Relation) -> Relation:
    return Relation(r.mask & s.mask)


def compose(r: Relation, s: Relation, table: CompositionTable | None = None) -> Relation:
    table = table or default_table()
    return Relation(table.compose_mask(r.mask, s.mask))


@dataclass(frozen=True)
class DerivedRelation:
    """A closure member together with one way of building it from the base set.

    ``op`` is one of ``given``, ``converse``, ``intersect``, ``compose``.
    """

    relation: Relation
    op: str = "given"
    args: tuple["DerivedRelation", ...] = ()

    def evaluate(self, table: CompositionTable | None = None) -> Relation:
        if self.op == "given":
            return self.relation
        vals = [a.evaluate(table) for a in self.args]
        if self.op == "converse":
            return converse(vals[0])
        if self.op == "intersect":
            return intersect(vals[0], vals[1])
        if self.op == "compose":
            return compose(vals[0], vals[1], table)
        raise ValueError(f"unknown derivation op {self.op!r}")

    def leaves(self) -> Iterator[Relation]:
        if self.op == "given":
            yield self.relation
        for a in self.args:
            yield from a.leaves()

    def size(self) -> int:
        return 1 + sum(a.size() for a in self.args)

    def __str__(self) -> str:
        if self.op == "given":
            return str(self.relation)
        if self.op == "converse":
            return f"~{self.args[0]}"
        sym = " & " if self.op == "intersect" else " o "
        return f"({self.args[0]}{sym}{self.args[1]})"


def closure(s: Subclass, table: CompositionTable | None = None) -> dict[Relation, DerivedRelation]:
    """Least subalgebra containing ``s``, each member with its first-found derivation.

    The worklist visits relations in discovery order, seeded in mask order,
    so the derivations are reproducible.
    """
    table = table or default_table()
    comp = table.compose_rows
    conv = table.converse_list
    known: dict[int, DerivedRelation] = {}
    queue: deque[int] = deque()

    def add(mask: int, d: DerivedRelation) -> None:
        if mask not in known:
            known[mask] = d
            queue.append(mask)

    for r in s.relations():
        add(r.mask, DerivedRelation(r))
    while queue:
        m = queue.popleft()
        dm = known[m]
        c = conv[m]
        add(c, DerivedRelation(Relation(c), "converse", (dm,)))
        for t in sorted(known):
            dt = known[t]
            i = m & t
            add(i, DerivedRelation(Relation(i), "intersect", (dm, dt)))
            a = comp[m][t]
            add(a, DerivedRelation(Relation(a), "compose", (dm, dt)))
            b = comp[t][m]
            add(b, DerivedRelation(Relation(b), "compose", (dt, dm)))
    return {Relation(m): known[m] for m in sorted(known)}


def closure_mask(mask: int, table: CompositionTable | None = None) -> int:
    """Closure of a subclass given and returned as a 32-bit mask."""
    from . import kernels

    table = table or default_table()
    return int(kernels.closure_masks(np.array([mask], dtype=np.uint32), table)[0])


def is_subalgebra(s: Subclass, table: CompositionTable | None = None) -> bool:
    return closure_mask(s.mask, table) == s.mask
