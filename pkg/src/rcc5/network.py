"""Constraint networks: sets of formulas ``X R Y`` and their text format.

One formula per line, ``<var> <relation> <var>``; ``#`` starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .algebra import EQ_REL, Relation, RelationSyntaxError, Subclass, converse

__all__ = ["Formula", "Network", "GraphView", "NetworkSyntaxError",
           "parse", "serialize", "normalize", "relation_set"]

_NAME = r"[^\s{}#]+"
_NAME_RE = re.compile(rf"{_NAME}\Z")
_LINE_RE = re.compile(rf"\s*({_NAME})\s*(\{{[^{{}}]*\}}|\S+)\s*({_NAME})\s*\Z")


class NetworkSyntaxError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Formula:
    x: str
    rel: Relation
    y: str

    def __post_init__(self):
        for name in (self.x, self.y):
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name: {name!r}")

    def __str__(self) -> str:
        return f"{self.x} {self.rel} {self.y}"


@dataclass(frozen=True)
class GraphView:
    nodes: tuple[str, ...]
    arcs: tuple[tuple[str, str, Relation], ...]


class Network:
    """A finite set of formulas.

    Identical formulas collapse; parallel formulas with different labels, or
    the same pair in both orientations, are kept as given. Input order is
    remembered for deterministic iteration but plays no part in equality.
    """

    __slots__ = ("formulas", "variables")

    def __init__(self, formulas: Iterable[Formula] = ()):
        seen: dict[Formula, None] = {}
        for f in formulas:
            seen.setdefault(f, None)
        self.formulas: tuple[Formula, ...] = tuple(seen)
        names: dict[str, None] = {}
        for f in self.formulas:
            names.setdefault(f.x, None)
            names.setdefault(f.y, None)
        self.variables: tuple[str, ...] = tuple(names)

    @classmethod
    def of(cls, *triples: tuple[str, Relation | str, str]) -> "Network":
        return cls(Formula(x, r if isinstance(r, Relation) else Relation.parse(r), y)
                   for x, r, y in triples)

    def __iter__(self) -> Iterator[Formula]:
        return iter(self.formulas)

    def __len__(self) -> int:
        return len(self.formulas)

    def __eq__(self, other) -> bool:
        return isinstance(other, Network) and set(self.formulas) == set(other.formulas)

    def __hash__(self) -> int:
        return hash(frozenset(self.formulas))

    def __repr__(self) -> str:
        return f"Network([{'; '.join(map(str, self.formulas))}])"

    def graph(self) -> GraphView:
        return GraphView(self.variables, tuple((f.x, f.y, f.rel) for f in self.formulas))


def parse(text: str) -> Network:
    formulas = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE_RE.match(line)
        if m is None:
            raise NetworkSyntaxError(lineno, f"expected '<var> <relation> <var>', got {line!r}")
        x, rel, y = m.groups()
        try:
            formulas.append(Formula(x, Relation.parse(rel), y))
        except RelationSyntaxError as exc:
            raise NetworkSyntaxError(lineno, str(exc)) from None
    return Network(formulas)


def serialize(net: Network) -> str:
    rows = sorted(net.formulas, key=lambda f: (f.x, f.y, f.rel.mask))
    return "".join(f"{f}\n" for f in rows)


def normalize(net: Network) -> Network | None:
    """Merge parallel formulas and settle reflexive ones; None when a rejection rule fires.

    Formulas over the same unordered pair are intersected (the reversed
    orientation through its converse) and keep the orientation seen first.
    Reflexive formulas are dropped if their label holds EQ and reject
    otherwise; any empty label rejects. Equality substitution is left to
    the solvers.
    """
    pairs: dict[tuple[str, str], int] = {}
    for f in net.formulas:
        if f.x == f.y:
            if not f.rel.mask & EQ_REL.mask:
                return None
            continue
        if (f.x, f.y) in pairs:
            pairs[f.x, f.y] &= f.rel.mask
        elif (f.y, f.x) in pairs:
            pairs[f.y, f.x] &= converse(f.rel).mask
        else:
            pairs[f.x, f.y] = f.rel.mask
    if any(m == 0 for m in pairs.values()):
        return None
    return Network(Formula(x, Relation(m), y) for (x, y), m in pairs.items())


def relation_set(net: Network) -> Subclass:
    mask = 0
    for f in net.formulas:
        mask |= 1 << f.rel.mask
    return Subclass(mask)
