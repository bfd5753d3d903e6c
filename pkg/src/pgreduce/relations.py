"""Coinductive/fixpoint computation of the simulation preorders and bisimulations.

The simulation preorders are greatest fixpoints computed by pair deletion;
the stuttering-style equivalences are computed by signature-based partition
refinement over forcing and divergence predicates.  The delayed simulation
family lives in :mod:`pgreduce.simgames` because its natural home is the
obligation game.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .forcing import VertexSet, attractor
from .game import ParityGame, Player

__all__ = [
    "VertexRelation",
    "Partition",
    "direct_sim",
    "strong_direct_sim",
    "governed_bisim",
    "strong_bisim",
    "gstut_bisim",
    "stut_bisim",
    "equivalence_from_preorder",
]


@dataclass(frozen=True)
class VertexRelation:
    """A binary relation over vertices, one bit-row per left element.

    ``rows[v]`` is the bitmask of all ``w`` with ``v R w``.  The ``kind``
    tag states the intended shape; :meth:`validate` checks it.
    """

    universe: int
    rows: tuple[int, ...]
    kind: str = "preorder"

    def __post_init__(self) -> None:
        if self.kind not in ("preorder", "equivalence"):
            raise ValueError(f"unknown relation kind {self.kind!r}")
        if len(self.rows) != self.universe:
            raise ValueError("one row per vertex required")
        full = (1 << self.universe) - 1
        if any(row & ~full for row in self.rows):
            raise ValueError("row has bits outside the universe")

    def holds(self, v: int, w: int) -> bool:
        return self.rows[v] >> w & 1 == 1

    def pairs(self) -> Iterator[tuple[int, int]]:
        for v in range(self.universe):
            row = self.rows[v]
            while row:
                low = row & -row
                yield v, low.bit_length() - 1
                row ^= low

    def right_set(self, v: int) -> int:
        """Bitmask of ``{w | v R w}``."""
        return self.rows[v]

    def transpose(self) -> "VertexRelation":
        rows = [0] * self.universe
        for v, w in self.pairs():
            rows[w] |= 1 << v
        return VertexRelation(self.universe, tuple(rows), self.kind)

    def intersection(self, other: "VertexRelation", kind: str | None = None) -> "VertexRelation":
        rows = tuple(a & b for a, b in zip(self.rows, other.rows))
        return VertexRelation(self.universe, rows, kind or self.kind)

    def is_subrelation(self, other: "VertexRelation") -> bool:
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def validate(self) -> None:
        """Check reflexivity and transitivity, plus symmetry for equivalences."""
        for v in range(self.universe):
            if not self.holds(v, v):
                raise ValueError(f"relation not reflexive at {v}")
        for v, w in self.pairs():
            if self.rows[w] & ~self.rows[v]:
                raise ValueError(f"relation not transitive through ({v}, {w})")
        if self.kind == "equivalence":
            for v, w in self.pairs():
                if not self.holds(w, v):
                    raise ValueError(f"relation not symmetric at ({v}, {w})")


@dataclass(frozen=True)
class Partition:
    """Disjoint non-empty classes covering the vertex set.

    Classes are indexed by their least member, ascending, so equal
    partitions have equal representations.
    """

    class_of: tuple[int, ...]
    classes: tuple[VertexSet, ...]

    @classmethod
    def from_class_of(cls, n: int, class_of: Iterable[int]) -> "Partition":
        raw = list(class_of)
        if len(raw) != n:
            raise ValueError("class_of must cover every vertex")
        order: dict[int, int] = {}
        for v in range(n):
            if raw[v] not in order:
                order[raw[v]] = len(order)
        canonical = [order[c] for c in raw]
        masks = [0] * len(order)
        for v, c in enumerate(canonical):
            masks[c] |= 1 << v
        classes = tuple(VertexSet(n, m) for m in masks)
        return cls(tuple(canonical), classes)

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        class_of = [-1] * n
        for i, block in enumerate(blocks):
            for v in block:
                if class_of[v] != -1:
                    raise ValueError(f"vertex {v} in two blocks")
                class_of[v] = i
        if any(c == -1 for c in class_of):
            raise ValueError("blocks do not cover the vertex set")
        return cls.from_class_of(n, class_of)

    @property
    def universe(self) -> int:
        return len(self.class_of)

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def same_class(self, v: int, w: int) -> bool:
        return self.class_of[v] == self.class_of[w]

    def class_containing(self, v: int) -> VertexSet:
        return self.classes[self.class_of[v]]

    def as_relation(self) -> VertexRelation:
        rows = tuple(self.classes[self.class_of[v]].mask for v in range(self.universe))
        return VertexRelation(self.universe, rows, "equivalence")

    def refines(self, other: "Partition") -> bool:
        return self.as_relation().is_subrelation(other.as_relation())


def _succ_masks(game: ParityGame) -> list[int]:
    masks = []
    for row in game.successors:
        m = 0
        for u in row:
            m |= 1 << u
        masks.append(m)
    return masks


def _steps_even_mask(game: ParityGame, succ_masks: list[int], w: int, target_mask: int) -> bool:
    # One-step controlled move for player even, on bitmasks.
    if game.owners[w] is Player.EVEN:
        return succ_masks[w] & target_mask != 0
    return succ_masks[w] & ~target_mask == 0


def _direct_sim_fixpoint(game: ParityGame, rows: list[int], symmetric: bool) -> tuple[int, ...]:
    """Delete pairs violating the direct-simulation transfer until stable.

    With ``symmetric`` set, a pair is also deleted when its mirror pair is,
    which yields the largest symmetric direct simulation.
    """
    succ_masks = _succ_masks(game)
    n = game.vertex_count
    changed = True
    while changed:
        changed = False
        for v in range(n):
            row = rows[v]
            w_bits = row
            while w_bits:
                low = w_bits & -w_bits
                w = low.bit_length() - 1
                w_bits ^= low
                ok = True
                if game.owners[v] is Player.EVEN:
                    for vp in game.successors[v]:
                        if not _steps_even_mask(game, succ_masks, w, rows[vp]):
                            ok = False
                            break
                else:
                    target = 0
                    for vp in game.successors[v]:
                        target |= rows[vp]
                    ok = _steps_even_mask(game, succ_masks, w, target)
                if not ok:
                    rows[v] &= ~(1 << w)
                    if symmetric:
                        rows[w] &= ~(1 << v)
                    changed = True
    return tuple(rows)


def direct_sim(game: ParityGame) -> VertexRelation:
    """Greatest direct simulation preorder: even helps the simulating side."""
    n = game.vertex_count
    by_prio: dict[int, int] = {}
    for v in game.vertices:
        by_prio.setdefault(game.priorities[v], 0)
        by_prio[game.priorities[v]] |= 1 << v
    rows = [by_prio[game.priorities[v]] for v in game.vertices]
    return VertexRelation(n, _direct_sim_fixpoint(game, rows, symmetric=False), "preorder")


def strong_direct_sim(game: ParityGame) -> VertexRelation:
    """Direct simulation that never relates vertices owned by different players."""
    n = game.vertex_count
    by_key: dict[tuple[int, Player], int] = {}
    for v in game.vertices:
        key = (game.priorities[v], game.owners[v])
        by_key.setdefault(key, 0)
        by_key[key] |= 1 << v
    rows = [by_key[(game.priorities[v], game.owners[v])] for v in game.vertices]
    return VertexRelation(n, _direct_sim_fixpoint(game, rows, symmetric=False), "preorder")


def _symmetric_direct_sim_partition(game: ParityGame, rows: list[int]) -> Partition:
    fixed = _direct_sim_fixpoint(game, rows, symmetric=True)
    rel = VertexRelation(game.vertex_count, fixed, "equivalence")
    rel.validate()
    class_of = [min(iter_bits(fixed[v])) for v in game.vertices]
    return Partition.from_class_of(game.vertex_count, class_of)


def governed_bisim(game: ParityGame) -> Partition:
    """Partition induced by the largest symmetric direct simulation."""
    by_prio: dict[int, int] = {}
    for v in game.vertices:
        by_prio.setdefault(game.priorities[v], 0)
        by_prio[game.priorities[v]] |= 1 << v
    rows = [by_prio[game.priorities[v]] for v in game.vertices]
    return _symmetric_direct_sim_partition(game, rows)


def strong_bisim(game: ParityGame) -> Partition:
    """Governed bisimulation restricted to same-owner pairs."""
    by_key: dict[tuple[int, Player], int] = {}
    for v in game.vertices:
        key = (game.priorities[v], game.owners[v])
        by_key.setdefault(key, 0)
        by_key[key] |= 1 << v
    rows = [by_key[(game.priorities[v], game.owners[v])] for v in game.vertices]
    return _symmetric_direct_sim_partition(game, rows)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _gstut_refine(game: ParityGame, initial: Partition) -> Partition:
    """Signature-based partition refinement for governed stuttering bisimilarity.

    A vertex's signature collects, per player, the reachable other classes
    (forcing through the vertex's own class) and a divergence flag.  Classes
    are split by signature until stable; splitting only ever separates
    vertices that no governed stuttering bisimulation within the initial
    partition can relate, so the result is the largest one.
    """
    n = game.vertex_count
    part = initial
    while True:
        # forces(i, v, [v], C) for all members of a class at once, one
        # attractor per (class, player, target class).
        sigs: list[tuple] = [() for _ in range(n)]
        items: list[list] = [[] for _ in range(n)]
        for ci, cls in enumerate(part.classes):
            if len(cls) == 1:
                # singleton classes cannot split; their signature is moot
                continue
            for player in (Player.EVEN, Player.ODD):
                for cj, target in enumerate(part.classes):
                    if ci == cj:
                        continue
                    attr = attractor(game, player, cls, target)
                    for v in cls:
                        if v in attr:
                            items[v].append((int(player), cj))
                # diverges(i, v, [v]) through the forcing duality.
                esc = attractor(game, player.opponent, cls, cls.complement())
                for v in cls:
                    if v not in esc:
                        items[v].append((int(player), -1))
        for v in range(n):
            sigs[v] = tuple(sorted(items[v]))
        keys = [(part.class_of[v], sigs[v]) for v in range(n)]
        distinct: dict[tuple, int] = {}
        class_of = []
        for v in range(n):
            class_of.append(distinct.setdefault(keys[v], len(distinct)))
        new = Partition.from_class_of(n, class_of)
        if new.class_count == part.class_count:
            return new
        part = new


def gstut_bisim(game: ParityGame) -> Partition:
    """Governed stuttering bisimilarity, starting from the priority partition."""
    initial = Partition.from_class_of(
        game.vertex_count,
        _dense_keys(game.priorities),
    )
    return _gstut_refine(game, initial)


def stut_bisim(game: ParityGame) -> Partition:
    """Stuttering bisimilarity: the initial partition is additionally split by owner."""
    initial = Partition.from_class_of(
        game.vertex_count,
        _dense_keys([(p, int(o)) for p, o in zip(game.priorities, game.owners)]),
    )
    return _gstut_refine(game, initial)


def _dense_keys(keys: Iterable) -> list[int]:
    seen: dict = {}
    out = []
    for k in keys:
        out.append(seen.setdefault(k, len(seen)))
    return out


def equivalence_from_preorder(relation: VertexRelation) -> Partition:
    """Kernel of a preorder: the classes of ``R`` intersected with its converse."""
    if relation.kind != "preorder":
        raise ValueError("kernel is only defined for preorders")
    relation.validate()
    kernel = relation.intersection(relation.transpose(), kind="equivalence")
    class_of = [min(iter_bits(kernel.rows[v])) for v in range(relation.universe)]
    return Partition.from_class_of(relation.universe, class_of)
