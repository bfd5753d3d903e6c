"""Quotient constructions, isomorphism checking and winner preservation.

Three quotients have unique results: by direct simulation equivalence
(little-brother pruning through minimal/maximal successors), by governed
bisimilarity and by governed stuttering bisimilarity.  The delayed
simulation family admits no unique quotient and is deliberately absent.
"""
from __future__ import annotations

from dataclasses import dataclass

from .forcing import VertexSet, attractor, diverges, steps
from .game import ParityGame, Player, disjoint_union
from .relations import (
    Partition,
    VertexRelation,
    direct_sim,
    equivalence_from_preorder,
    governed_bisim,
    gstut_bisim,
    strong_bisim,
    stut_bisim,
)
from .solver import solve_zielonka

__all__ = [
    "QuotientResult",
    "min_successors",
    "max_successors",
    "quotient_direct_sim",
    "quotient_governed_bisim",
    "quotient_gstut",
    "quotient_strong_bisim",
    "quotient_stut",
    "iso_check",
    "find_isomorphism",
    "verify_preservation",
    "quotient_equivalent",
    "serialize_class_map",
]

ISO_SIZE_LIMIT = 64


@dataclass(frozen=True)
class QuotientResult:
    """A quotient game plus the map from original vertices to quotient vertices."""

    quotient: ParityGame
    class_map: tuple[int, ...]
    kind: str


def min_successors(game: ParityGame, preorder: VertexRelation, v: int) -> VertexSet:
    """Successors of ``v`` minimal in the given direct-simulation preorder."""
    return _extremal_successors(game, preorder, v, minimal=True)


def max_successors(game: ParityGame, preorder: VertexRelation, v: int) -> VertexSet:
    """Successors of ``v`` maximal in the given direct-simulation preorder."""
    return _extremal_successors(game, preorder, v, minimal=False)


def _extremal_successors(
    game: ParityGame, preorder: VertexRelation, v: int, minimal: bool
) -> VertexSet:
    succs = game.successors[v]
    out = []
    for cand in succs:
        ok = True
        for other in succs:
            if minimal:
                if preorder.holds(other, cand) and not preorder.holds(cand, other):
                    ok = False
                    break
            else:
                if preorder.holds(cand, other) and not preorder.holds(other, cand):
                    ok = False
                    break
        if ok:
            out.append(cand)
    return VertexSet.from_indices(game.vertex_count, out)


def _class_priorities(game: ParityGame, part: Partition) -> tuple[int, ...]:
    prios = []
    for cls in part.classes:
        members = list(cls)
        p = min(game.priorities[v] for v in members)
        if any(game.priorities[v] != p for v in members):
            raise RuntimeError("equivalence class mixes priorities; refinement bug")
        prios.append(p)
    return tuple(prios)


def quotient_direct_sim(game: ParityGame) -> QuotientResult:
    """Quotient by direct simulation equivalence.

    Odd-only classes whose members all see more than one class of minimal
    successors stay odd and keep edges to the minimal successor classes;
    every other class is assigned even and keeps the edges to the maximal
    successor classes of its even members.  Mixed-owner classes provably
    have a unique successor class, so the owner choice is immaterial.
    """
    preorder = direct_sim(game)
    part = equivalence_from_preorder(preorder)
    n_classes = part.class_count
    priorities = _class_priorities(game, part)
    min_cls: dict[int, frozenset[int]] = {}
    max_cls: dict[int, frozenset[int]] = {}
    for v in game.vertices:
        min_cls[v] = frozenset(part.class_of[u] for u in min_successors(game, preorder, v))
        max_cls[v] = frozenset(part.class_of[u] for u in max_successors(game, preorder, v))

    owners = []
    succs: list[tuple[int, ...]] = []
    for ci, cls in enumerate(part.classes):
        members = list(cls)
        all_odd = all(game.owners[v] is Player.ODD for v in members)
        if all_odd and all(len(min_cls[v]) > 1 for v in members):
            owners.append(Player.ODD)
        else:
            owners.append(Player.EVEN)
        if all_odd:
            targets = min_cls[members[0]]
            if any(min_cls[v] != targets for v in members):
                raise RuntimeError("minimal successor classes differ inside a class")
        else:
            evens = [v for v in members if game.owners[v] is Player.EVEN]
            targets = max_cls[evens[0]]
            if any(max_cls[v] != targets for v in evens):
                raise RuntimeError("maximal successor classes differ inside a class")
            if len(evens) != len(members) and len(targets) != 1:
                raise RuntimeError("mixed-owner class without unique successor class")
        if not targets:
            raise RuntimeError("quotient class without successors")
        succs.append(tuple(sorted(targets)))

    quotient = ParityGame(priorities, tuple(owners), tuple(succs))
    assert quotient.vertex_count == n_classes
    return QuotientResult(quotient, part.class_of, "direct-sim")


def _governed_quotient_from_partition(game: ParityGame, part: Partition, kind: str) -> QuotientResult:
    priorities = _class_priorities(game, part)
    owners = []
    succs = []
    for cls in part.classes:
        members = list(cls)
        succ_classes: dict[int, frozenset[int]] = {
            v: frozenset(part.class_of[u] for u in game.successors[v]) for v in members
        }
        targets = succ_classes[members[0]]
        # Members of a (governed) bisimulation class reach the same classes.
        if any(succ_classes[v] != targets for v in members):
            raise RuntimeError("successor classes differ inside a bisimulation class")
        all_odd = all(game.owners[v] is Player.ODD for v in members)
        if all_odd and len(targets) > 1:
            owners.append(Player.ODD)
        else:
            owners.append(Player.EVEN)
        succs.append(tuple(sorted(targets)))
    quotient = ParityGame(priorities, tuple(owners), tuple(succs))
    return QuotientResult(quotient, part.class_of, kind)


def quotient_governed_bisim(game: ParityGame) -> QuotientResult:
    """Quotient by governed bisimilarity: classes keep their successor classes."""
    return _governed_quotient_from_partition(game, governed_bisim(game), "governed-bisim")


def quotient_strong_bisim(game: ParityGame) -> QuotientResult:
    """Classic bisimulation quotient: classes are single-owner and keep it."""
    part = strong_bisim(game)
    priorities = _class_priorities(game, part)
    owners = []
    succs = []
    for cls in part.classes:
        members = list(cls)
        owner = game.owners[members[0]]
        if any(game.owners[v] is not owner for v in members):
            raise RuntimeError("strong bisimulation class mixes owners")
        targets = {part.class_of[u] for v in members for u in game.successors[v]}
        for v in members:
            if {part.class_of[u] for u in game.successors[v]} != targets:
                raise RuntimeError("successor classes differ inside a class")
        owners.append(owner)
        succs.append(tuple(sorted(targets)))
    quotient = ParityGame(priorities, tuple(owners), tuple(succs))
    return QuotientResult(quotient, part.class_of, "strong-bisim")


def _gstut_quotient_from_partition(game: ParityGame, part: Partition, kind: str) -> QuotientResult:
    priorities = _class_priorities(game, part)
    n = game.vertex_count
    owners = []
    succs = []
    for ci, cls in enumerate(part.classes):
        members = list(cls)
        even_divergent = all(diverges(game, Player.EVEN, v, cls) for v in members)
        even_escape = any(
            steps(game, Player.EVEN, v, part.classes[cj])
            for v in members
            for cj in range(part.class_count)
            if cj != ci
        )
        owners.append(Player.EVEN if even_divergent or even_escape else Player.ODD)

        targets = []
        for cj, target in enumerate(part.classes):
            if cj == ci:
                if any(
                    all(diverges(game, player, v, cls) for v in members)
                    for player in (Player.EVEN, Player.ODD)
                ):
                    targets.append(cj)
            else:
                if any(
                    all(v in attractor(game, player, cls, target) for v in members)
                    for player in (Player.EVEN, Player.ODD)
                ):
                    targets.append(cj)
        if not targets:
            raise RuntimeError("stuttering quotient class without successors")
        succs.append(tuple(targets))
    quotient = ParityGame(priorities, tuple(owners), tuple(succs))
    assert quotient.vertex_count == part.class_count and n == len(part.class_of)
    return QuotientResult(quotient, part.class_of, kind)


def quotient_gstut(game: ParityGame) -> QuotientResult:
    """Quotient by governed stuttering bisimilarity.

    A class carries a self-loop only when one player can force divergence
    from all members, and an edge to another class only when one player can
    force every member there through the class.
    """
    return _gstut_quotient_from_partition(game, gstut_bisim(game), "gstut")


def quotient_stut(game: ParityGame) -> QuotientResult:
    """Stuttering-bisimilarity quotient.

    Edges follow the same forcing conditions as the governed stuttering
    quotient, but classes are single-owner here and keep that owner, which
    makes the construction idempotent.
    """
    part = stut_bisim(game)
    base = _gstut_quotient_from_partition(game, part, "stut")
    owners = tuple(game.owners[next(iter(cls))] for cls in part.classes)
    quotient = ParityGame(base.quotient.priorities, owners, base.quotient.successors)
    return QuotientResult(quotient, base.class_map, "stut")


def _iso_invariants(game: ParityGame) -> list[tuple]:
    preds = game.predecessors()
    base = [
        (
            game.priorities[v],
            int(game.owners[v]),
            len(game.successors[v]),
            len(preds[v]),
        )
        for v in game.vertices
    ]
    # One refinement round over neighbour invariants prunes most candidates.
    refined = []
    for v in game.vertices:
        succ_sig = tuple(sorted(base[u] for u in game.successors[v]))
        pred_sig = tuple(sorted(base[u] for u in preds[v]))
        refined.append((base[v], succ_sig, pred_sig))
    return refined


def find_isomorphism(
    g1: ParityGame, g2: ParityGame, pin: tuple[int, int] | None = None
) -> dict[int, int] | None:
    """Backtracking search for a priority/owner/edge-preserving bijection.

    ``pin`` forces a single vertex assignment, which turns the game-level
    check into the vertex-level isomorphism relation.
    """
    if g1.vertex_count != g2.vertex_count:
        return None
    if g1.vertex_count > ISO_SIZE_LIMIT:
        raise ValueError(f"isomorphism check limited to {ISO_SIZE_LIMIT} vertices")
    inv1 = _iso_invariants(g1)
    inv2 = _iso_invariants(g2)
    if sorted(inv1) != sorted(inv2):
        return None
    candidates = [
        [w for w in g2.vertices if inv2[w] == inv1[v]] for v in g1.vertices
    ]
    if pin is not None:
        v0, w0 = pin
        if w0 not in candidates[v0]:
            return None
        candidates[v0] = [w0]
    order = sorted(g1.vertices, key=lambda v: len(candidates[v]))
    succ1 = [set(row) for row in g1.successors]
    succ2 = [set(row) for row in g2.successors]
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int, w: int) -> bool:
        for u, x in mapping.items():
            if (v in succ1[u]) != (w in succ2[x]):
                return False
            if (u in succ1[v]) != (x in succ2[w]):
                return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in candidates[v]:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if search(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    if search(0):
        return dict(mapping)
    return None


def iso_check(g1: ParityGame, g2: ParityGame) -> bool:
    """True iff the two games are isomorphic.  Intended for quotient-sized games."""
    return find_isomorphism(g1, g2) is not None


def verify_preservation(game: ParityGame, result: QuotientResult) -> bool:
    """Winners survive quotienting: each vertex and its class share a winner."""
    original = solve_zielonka(game)
    reduced = solve_zielonka(result.quotient)
    return all(
        original.winner(v) == reduced.winner(result.class_map[v]) for v in game.vertices
    )


def quotient_equivalent(game: ParityGame, result: QuotientResult) -> bool:
    """Each vertex is equivalent to its class in the disjoint union of both games,
    under the defining equivalence of the quotient kind."""
    union = disjoint_union(game, result.quotient)
    off = game.vertex_count
    if result.kind == "direct-sim":
        rel = direct_sim(union)
        return all(
            rel.holds(v, off + result.class_map[v]) and rel.holds(off + result.class_map[v], v)
            for v in game.vertices
        )
    by_kind = {
        "governed-bisim": governed_bisim,
        "strong-bisim": strong_bisim,
        "gstut": gstut_bisim,
        "stut": stut_bisim,
    }
    if result.kind not in by_kind:
        raise ValueError(f"unknown quotient kind {result.kind!r}")
    part = by_kind[result.kind](union)
    return all(part.same_class(v, off + result.class_map[v]) for v in game.vertices)


def serialize_class_map(result: QuotientResult) -> bytes:
    """Sidecar class-map format: one ``<original-id> <class-id>`` line per vertex."""
    lines = [f"{v} {c}" for v, c in enumerate(result.class_map)]
    return ("\n".join(lines) + "\n").encode("ascii")
