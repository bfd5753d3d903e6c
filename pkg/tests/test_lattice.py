from conftest import small_random_games
from pgreduce import random_game
from pgreduce.lattice import (
    COINCIDENCE_NOTIONS,
    LATTICE_EDGES,
    RELATION_ORDER,
    check_lattice,
    compute_relations,
)


def test_relation_order_covers_every_computed_relation(escape_edge):
    rels = compute_relations(escape_edge)
    assert set(RELATION_ORDER) == set(rels)
    assert {name for edge in LATTICE_EDGES for name in edge} <= set(rels)


def test_edges_never_point_against_the_order():
    for finer, coarser in LATTICE_EDGES:
        assert RELATION_ORDER.index(finer) < RELATION_ORDER.index(coarser)


def test_check_lattice_result_count(escape_edge):
    results = check_lattice(escape_edge)
    assert len(results) == len(LATTICE_EDGES) + len(COINCIDENCE_NOTIONS)
    assert all(r.passed for r in results)


def test_inclusion_edges_on_random_games_up_to_ten_vertices():
    for seed in range(200):
        n = 2 + seed % 9
        game = random_game(n, 3, (1, min(3, n)), 31_000 + seed)
        for result in check_lattice(game, coincidences=False):
            assert result.passed, (seed, result.name)


def test_full_check_on_larger_game():
    game = small_random_games(1, max_n=12, start_n=12)[0]
    assert all(r.passed for r in check_lattice(game))
